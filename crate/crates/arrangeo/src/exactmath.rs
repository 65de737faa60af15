//! Exact rational arithmetic: scalars, vectors, matrices and fraction-free
//! linear algebra.
//!
//! All computation in this crate bottoms out here. Scalars are
//! arbitrary-precision rationals kept in canonical form (reduced, positive
//! denominator); determinants, ranks and linear solves use fraction-free
//! Bareiss elimination over big integers so intermediate values stay bounded;
//! kernels come from an exact reduced row echelon form.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::{Error, Result};

/// Arbitrary-precision rational number in canonical form: reduced to lowest
/// terms with a positive denominator. The textual form is `p` for integers
/// and `p/q` (with `q > 0`) otherwise.
pub type Rational = num_rational::BigRational;

/// Builds the rational `numer/denom`.
///
/// # Panics
/// Panics if `denom == 0`.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds the rational `n/1`.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn parse_decimal_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses the textual rational form `p` or `p/q`, where `p` and `q` are
/// decimal integers, `p` may carry a leading `-`, and `q > 0`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let mut parts = input.splitn(2, '/');
    let numer = parts
        .next()
        .and_then(parse_decimal_int)
        .ok_or_else(|| err("numerator must be a decimal integer"))?;
    match parts.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(d) => {
            let denom = parse_decimal_int(d)
                .ok_or_else(|| err("denominator must be a decimal integer"))?;
            if denom <= BigInt::zero() {
                return Err(err("denominator must be positive"));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Sign of a nonzero exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign of a rational, or `None` if it is zero.
    pub fn of(r: &Rational) -> Option<Sign> {
        if r.is_zero() {
            None
        } else if r.is_positive() {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }

    /// The opposite sign.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `+1` or `-1`.
    pub fn to_rational(self) -> Rational {
        match self {
            Sign::Plus => integer(1),
            Sign::Minus => integer(-1),
        }
    }

    /// Applies the sign to a value (negates it under `Minus`).
    pub fn apply(self, r: &Rational) -> Rational {
        match self {
            Sign::Plus => r.clone(),
            Sign::Minus => -r.clone(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Vector with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QVector {
    entries: Vec<Rational>,
}

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector { entries }
    }

    /// All-zero vector of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        QVector {
            entries: vec![Rational::zero(); dim],
        }
    }

    /// Standard basis vector `e_i` (0-based coordinate `i`).
    pub fn standard_basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = Rational::one();
        v
    }

    /// Builds a vector from machine integers.
    pub fn from_ints(entries: &[i64]) -> Self {
        QVector {
            entries: entries.iter().map(|&n| integer(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    /// Exact inner product. Dimensions must agree.
    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot product dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "vector sum dimension mismatch");
        QVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "vector diff dimension mismatch");
        QVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> QVector {
        QVector::new(self.entries.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector::new(self.entries.iter().map(|a| a * c).collect())
    }

    /// Index of the first nonzero coordinate, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|e| !e.is_zero())
    }

    /// Canonical representative of the ray/line spanned by this vector:
    /// scaled so all entries are integers with content 1 (gcd of entries) and
    /// the first nonzero entry is positive. The zero vector is unchanged.
    pub fn normalized(&self) -> QVector {
        let Some(first) = self.first_nonzero() else {
            return self.clone();
        };
        let denom_lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| e.numer() * (&denom_lcm / e.denom()))
            .collect();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let flip = ints[first].is_negative();
        QVector::new(
            ints.into_iter()
                .map(|n| {
                    let reduced = &n / &content;
                    Rational::from_integer(if flip { -reduced } else { reduced })
                })
                .collect(),
        )
    }
}

impl std::ops::Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QVector{self}")
    }
}

/// Dense matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors, which must all have
    /// dimension `cols`.
    pub fn from_rows(cols: usize, rows: &[QVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.dim(),
                });
            }
            for (j, e) in r.iter().enumerate() {
                *m.get_mut(i, j) = e.clone();
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[QVector]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    /// Builds a matrix from machine-integer rows (for tests and examples).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<QVector> = rows.iter().map(|r| QVector::from_ints(r)).collect();
        Self::from_rows(cols, &vecs).expect("integer rows must be rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> QVector {
        QVector::new(self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> QVector {
        QVector::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok(QVector::new((0..self.rows).map(|i| self.row(i).dot(v)).collect()))
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        Ok(out)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Clears denominators in one row of rationals, returning integer entries
/// and the positive scale factor that was applied.
fn integerize_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let scale = row
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let ints = row.iter().map(|e| e.numer() * (&scale / e.denom())).collect();
    (ints, scale)
}

/// Fraction-free (Bareiss) echelon form over the integers with row pivoting
/// and column skipping. Only the first `pivot_col_limit` columns are eligible
/// to hold pivots; later columns are carried along (used for augmented
/// systems). Returns the reduced rows, the pivot positions and the sign of
/// the row permutation.
fn bareiss_echelon(
    mut m: Vec<Vec<BigInt>>,
    pivot_col_limit: usize,
) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>, i8) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    let mut pr = 0usize;
    for col in 0..pivot_col_limit.min(ncols) {
        if pr >= nrows {
            break;
        }
        let Some(pivot_row) = (pr..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if pivot_row != pr {
            m.swap(pivot_row, pr);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(pr + 1);
        let pivot = &top[pr];
        for row in rest.iter_mut() {
            for j in col + 1..ncols {
                let num = &pivot[col] * &row[j] - &row[col] * &pivot[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[pr][col].clone();
        pivots.push((pr, col));
        pr += 1;
    }
    (m, pivots, sign)
}

/// Exact determinant via fraction-free elimination.
///
/// Errors if the matrix is not square. The determinant of the empty `0x0`
/// matrix is 1.
pub fn det(m: &QMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut int_rows = Vec::with_capacity(n);
    let mut scale_product = BigInt::one();
    for r in 0..n {
        let (ints, scale) = integerize_row(m.row(r).entries());
        scale_product *= scale;
        int_rows.push(ints);
    }
    let (ech, pivots, sign) = bareiss_echelon(int_rows, n);
    if pivots.len() < n {
        return Ok(Rational::zero());
    }
    let last = ech[n - 1][n - 1].clone();
    let signed = if sign < 0 { -last } else { last };
    Ok(Rational::new(signed, scale_product))
}

/// Exact rank via fraction-free elimination.
pub fn rank(m: &QMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let int_rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| integerize_row(m.row(r).entries()).0)
        .collect();
    let (_, pivots, _) = bareiss_echelon(int_rows, m.cols());
    pivots.len()
}

/// Solves `a * x = b` for the unique solution of a square invertible system.
///
/// Errors with [`Error::NotSquare`] for non-square `a` and
/// [`Error::SingularMatrix`] when no unique solution exists.
pub fn solve_unique(a: &QMatrix, b: &QVector) -> Result<QVector> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    if n == 0 {
        return Ok(QVector::zeros(0));
    }
    let mut aug = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = a.row(r).entries().to_vec();
        row.push(b[r].clone());
        aug.push(integerize_row(&row).0);
    }
    let (ech, pivots, _) = bareiss_echelon(aug, n);
    if pivots.len() < n {
        return Err(Error::SingularMatrix);
    }
    // Full rank ensures pivot k sits at position (k, k); back-substitute.
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(ech[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(ech[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(ech[i][i].clone());
    }
    Ok(QVector::new(x))
}

/// Exact reduced row echelon form over the rationals. Returns the reduced
/// rows and the pivot column indices.
fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut pr = 0usize;
    for col in 0..ncols {
        if pr >= nrows {
            break;
        }
        let Some(pivot_row) = (pr..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, pr);
        let inv = rows[pr][col].recip();
        for e in rows[pr].iter_mut() {
            *e *= &inv;
        }
        for r in 0..nrows {
            if r != pr && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let (pivot_row, target) = if r < pr {
                    let (lo, hi) = rows.split_at_mut(pr);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&lo[pr], &mut hi[0])
                };
                for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                    *t -= &factor * p;
                }
            }
        }
        pivot_cols.push(col);
        pr += 1;
    }
    (rows, pivot_cols)
}

/// Basis of the kernel (null space) of `m`, one generator per free column in
/// ascending column order. Each generator is normalized to integer entries
/// with content 1 and positive first nonzero entry. Returns `cols - rank(m)`
/// vectors; a full-rank-by-columns matrix yields the empty list.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVector> {
    let ncols = m.cols();
    let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).entries().to_vec()).collect();
    let (red, pivot_cols) = rref(rows);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -red[row][free].clone();
        }
        basis.push(QVector::new(v).normalized());
    }
    basis
}

/// Exact orthogonal projector pair for the span of `basis` in the standard
/// inner product: returns `(P, Q)` with `P` projecting onto the span and
/// `Q = I - P` onto its orthogonal complement. Both matrices are rational —
/// the construction `P = Tᵗ(TTᵗ)⁻¹T` never leaves the field.
///
/// Errors if `basis` is empty or linearly dependent.
pub fn projector_pair(basis: &[QVector]) -> Result<(QMatrix, QMatrix)> {
    let k = basis.len();
    if k == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let n = basis[0].dim();
    let t = QMatrix::from_rows(n, basis)?;
    if rank(&t) < k {
        return Err(Error::DependentVectors);
    }
    let gram = t.mul(&t.transpose())?;
    // Solve gram * y = t column-by-column to avoid forming the inverse.
    let mut y = QMatrix::zeros(k, n);
    for j in 0..n {
        let col = solve_unique(&gram, &t.col(j))?;
        for i in 0..k {
            *y.get_mut(i, j) = col[i].clone();
        }
    }
    let p = t.transpose().mul(&y)?;
    let q = QMatrix::identity(n).sub(&p)?;
    Ok((p, q))
}

/// Binomial coefficient `C(n, k)` with the convention `C(n, k) = 0` for
/// `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    /// Independent determinant oracle: recursive cofactor expansion along the
    /// first row.
    fn cofactor_det(m: &QMatrix) -> Rational {
        let n = m.rows();
        assert!(m.is_square());
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let mut minor = QMatrix::zeros(n - 1, n - 1);
            for r in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    *minor.get_mut(r - 1, cc) = m.get(r, c).clone();
                    cc += 1;
                }
            }
            let term = m.get(0, j) * &cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), integer(3));
        assert_eq!(parse_rational("-7").unwrap(), integer(-7));
        assert_eq!(parse_rational("1/2").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("0").unwrap(), Rational::zero());
        assert_eq!(parse_rational("007").unwrap(), integer(7));
        // Canonical form is maintained by construction.
        assert_eq!(parse_rational("2/4").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("9/3").unwrap(), integer(3));
    }

    #[test]
    fn rejects_malformed_rationals() {
        for bad in ["", "1/0", "3/0", "1/-2", "+1", " 1", "1 ", "a", "1/2/3", "1.5", "--2", "1/"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn displays_canonical_text_form() {
        assert_eq!(parse_rational("-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(parse_rational("8/2").unwrap().to_string(), "4");
        assert_eq!(integer(0).to_string(), "0");
    }

    #[test]
    fn normalizes_to_integer_content_one_first_positive() {
        let v = QVector::new(vec![rational(1, 2), rational(-1, 3)]);
        assert_eq!(v.normalized(), qv(&[3, -2]));
        let w = QVector::new(vec![rational(-1, 2), integer(-2)]);
        assert_eq!(w.normalized(), qv(&[1, 4]));
        let zero = QVector::zeros(3);
        assert_eq!(zero.normalized(), zero);
        // A leading zero entry: sign comes from the first *nonzero* entry.
        let u = QVector::new(vec![integer(0), integer(-4), integer(6)]);
        assert_eq!(u.normalized(), qv(&[0, 2, -3]));
    }

    #[test]
    fn determinant_of_small_examples() {
        assert_eq!(det(&QMatrix::identity(3)).unwrap(), integer(1));
        assert_eq!(
            det(&QMatrix::from_int_rows(&[&[1, 2], &[3, 4]])).unwrap(),
            integer(-2)
        );
        assert_eq!(
            det(&QMatrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]])).unwrap(),
            integer(1)
        );
        // Duplicate rows collapse the determinant.
        assert_eq!(
            det(&QMatrix::from_int_rows(&[&[2, 5], &[2, 5]])).unwrap(),
            integer(0)
        );
        // Empty matrix: the empty product.
        assert_eq!(det(&QMatrix::zeros(0, 0)).unwrap(), integer(1));
        assert!(matches!(
            det(&QMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn determinant_with_rational_entries() {
        let m = QMatrix::from_rows(
            2,
            &[
                QVector::new(vec![rational(1, 2), rational(1, 3)]),
                QVector::new(vec![rational(1, 5), rational(1, 7)]),
            ],
        )
        .unwrap();
        // 1/2*1/7 - 1/3*1/5 = 1/14 - 1/15 = 1/210
        assert_eq!(det(&m).unwrap(), rational(1, 210));
        assert_eq!(cofactor_det(&m), rational(1, 210));
    }

    #[test]
    fn rank_of_examples() {
        let m = QMatrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&QMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&QMatrix::identity(5)), 5);
        // A column of zeros in the middle exercises column skipping.
        let s = QMatrix::from_int_rows(&[&[0, 0, 1, 2], &[0, 0, 2, 4], &[0, 0, 0, 3]]);
        assert_eq!(rank(&s), 2);
    }

    #[test]
    fn solves_unique_systems() {
        // Decompose (1/9, 4/9, 8/9) over the base {e2, e3, (1/3, 2/3, 2/3)}.
        let base = QMatrix::from_cols(
            3,
            &[
                qv(&[0, 1, 0]),
                qv(&[0, 0, 1]),
                QVector::new(vec![rational(1, 3), rational(2, 3), rational(2, 3)]),
            ],
        )
        .unwrap();
        let target = QVector::new(vec![rational(1, 9), rational(4, 9), rational(8, 9)]);
        let x = solve_unique(&base, &target).unwrap();
        assert_eq!(
            x,
            QVector::new(vec![rational(2, 9), rational(2, 3), rational(1, 3)])
        );
        assert_eq!(base.mul_vec(&x).unwrap(), target);

        let singular = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            solve_unique(&singular, &qv(&[1, 1])),
            Err(Error::SingularMatrix)
        ));
        assert!(matches!(
            solve_unique(&QMatrix::zeros(2, 3), &qv(&[1, 1])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn kernel_of_known_matrices() {
        // Columns (-u1, u2, -u4, u6) of the six-line family: the kernel
        // encodes 5*(-u1) + 2*u2 - 21*u4 + 22*u6 = 0.
        let u1 = qv(&[1, 0, 0]);
        let u2 = qv(&[0, 1, 0]);
        let u4 = QVector::new(vec![rational(1, 3), rational(2, 3), rational(2, 3)]);
        let u6 = QVector::new(vec![rational(6, 11), rational(6, 11), rational(7, 11)]);
        let m = QMatrix::from_cols(3, &[u1.neg(), u2, u4.neg(), u6]).unwrap();
        let kernel = kernel_basis(&m);
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], qv(&[5, 2, 21, 22]));

        // Kernel of a single row (1, 1, 1): two normalized generators.
        let row = QMatrix::from_int_rows(&[&[1, 1, 1]]);
        let k = kernel_basis(&row);
        assert_eq!(k, vec![qv(&[1, -1, 0]), qv(&[1, 0, -1])]);

        // Zero-row matrix: the kernel is everything.
        let empty = QMatrix::zeros(0, 2);
        assert_eq!(kernel_basis(&empty), vec![qv(&[1, 0]), qv(&[0, 1])]);

        // Full column rank: trivial kernel.
        assert!(kernel_basis(&QMatrix::identity(3)).is_empty());
    }

    #[test]
    fn projector_for_a_diagonal_line() {
        let (p, q) = projector_pair(&[qv(&[1, 1])]).unwrap();
        let half = rational(1, 2);
        let expected = QMatrix::from_rows(
            2,
            &[
                QVector::new(vec![half.clone(), half.clone()]),
                QVector::new(vec![half.clone(), half]),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.add(&q).unwrap(), QMatrix::identity(2));
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(p.transpose(), p);
    }

    #[test]
    fn projector_rejects_bad_bases() {
        assert!(matches!(
            projector_pair(&[qv(&[1, 2]), qv(&[2, 4])]),
            Err(Error::DependentVectors)
        ));
        assert!(projector_pair(&[]).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(7, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(20, 10), BigUint::from(184756u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rational(n, d))
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = QMatrix> {
        (1..=max).prop_flat_map(|n| {
            proptest::collection::vec(small_rational(), n * n).prop_map(move |entries| {
                let mut m = QMatrix::zeros(n, n);
                for r in 0..n {
                    for c in 0..n {
                        *m.get_mut(r, c) = entries[r * n + c].clone();
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_det_matches_cofactor_oracle(m in small_matrix(4)) {
            prop_assert_eq!(det(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn rank_plus_nullity_is_cols(
            rows in 1usize..=4,
            cols in 1usize..=4,
            seed in proptest::collection::vec((-9i64..=9, 1i64..=3), 16),
        ) {
            let mut m = QMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let (n, d) = seed[r * 4 + c];
                    *m.get_mut(r, c) = rational(n, d);
                }
            }
            let kernel = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + kernel.len(), cols);
            for v in &kernel {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
                // Normalization: integer entries, content 1, first nonzero positive.
                let norm = v.normalized();
                prop_assert_eq!(&norm, v);
            }
        }

        #[test]
        fn solve_round_trips(
            n in 1usize..=4,
            entries in proptest::collection::vec(-9i64..=9, 16),
            rhs in proptest::collection::vec(-9i64..=9, 4),
        ) {
            let mut m = QMatrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    *m.get_mut(r, c) = integer(entries[r * 4 + c]);
                }
            }
            let b = QVector::from_ints(&rhs[..n]);
            match solve_unique(&m, &b) {
                Ok(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
                Err(Error::SingularMatrix) => prop_assert_eq!(det(&m).unwrap(), Rational::zero()),
                Err(e) => prop_assert!(false, "unexpected error {e:?}"),
            }
        }

        #[test]
        fn projectors_satisfy_algebraic_identities(
            n in 2usize..=4,
            k in 1usize..=2,
            entries in proptest::collection::vec(-6i64..=6, 8),
        ) {
            let basis: Vec<QVector> = (0..k)
                .map(|i| QVector::from_ints(&entries[i * n..(i + 1) * n]))
                .collect();
            let t = QMatrix::from_rows(n, &basis).unwrap();
            prop_assume!(rank(&t) == k);
            let (p, q) = projector_pair(&basis).unwrap();
            prop_assert_eq!(p.add(&q).unwrap(), QMatrix::identity(n));
            prop_assert_eq!(p.mul(&p).unwrap(), p.clone());
            prop_assert_eq!(p.transpose(), p.clone());
            for v in &basis {
                prop_assert_eq!(p.mul_vec(v).unwrap(), v.clone());
                prop_assert!(q.mul_vec(v).unwrap().is_zero());
            }
        }
    }
}
