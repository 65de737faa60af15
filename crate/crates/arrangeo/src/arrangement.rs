//! Hyperplane arrangements in general position: construction, validation,
//! vertices, flats and orders along lines.
//!
//! An arrangement lives in `Q^m` and consists of `n` hyperplanes
//! `{x : a_i . x = b_i}` with nonzero normals `a_i`. Throughout the public
//! API hyperplanes are identified by their 1-based subscript `i` in
//! `1..=n`, and subsets of hyperplanes are strictly increasing lists of
//! subscripts.
//!
//! General position means two things at once:
//!
//! 1. the normals are *maximally linearly independent*: every subset of at
//!    most `m` of them is linearly independent, and
//! 2. no `m + 1` hyperplanes share a point, i.e. every `(m+1)`-subset has a
//!    nonzero bordered determinant `det[A_S | b_S]`.
//!
//! Under these conditions every `m`-subset of hyperplanes meets in exactly
//! one point (a *vertex*), every `(m-1)`-subset meets in a line carrying one
//! vertex per remaining hyperplane, and the combinatorics downstream (region
//! counts, betweenness, concurrency) are well defined.

use itertools::Itertools;
use num_traits::Zero;
use std::fmt;

use crate::exactmath::{
    det, kernel_basis, rank, solve_unique, QMatrix, QVector, Rational, Sign,
};
use crate::{Error, Result};

/// One hyperplane `{x : a . x = b}` with a nonzero normal `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    normal: QVector,
    offset: Rational,
}

impl Hyperplane {
    /// Errors with [`Error::ZeroVector`] if the normal is zero.
    pub fn new(normal: QVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Evaluates `a . x - b`, the signed affine functional of the hyperplane.
    pub fn eval(&self, x: &QVector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    /// Which open side of the hyperplane `x` lies on, or `None` if on it.
    pub fn side(&self, x: &QVector) -> Option<Sign> {
        Sign::of(&self.eval(x))
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.eval(x).is_zero()
    }
}

/// Strict sign vector recording a side for every hyperplane of an
/// arrangement, in subscript order. The textual form is one `+` or `-` per
/// hyperplane, e.g. `++-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<Sign>);

impl Signature {
    pub fn new(signs: Vec<Sign>) -> Self {
        Signature(signs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign at the 1-based subscript `i`.
    pub fn sign(&self, i: usize) -> Sign {
        self.0[i - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// Copy with the sign at 1-based subscript `i` flipped.
    pub fn flipped(&self, i: usize) -> Signature {
        let mut signs = self.0.clone();
        signs[i - 1] = signs[i - 1].flip();
        Signature(signs)
    }

    /// 1-based subscripts where the two signatures differ.
    pub fn diff(&self, other: &Signature) -> Vec<usize> {
        assert_eq!(self.len(), other.len(), "signature length mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Parses a string of `+`/`-` characters.
    pub fn parse(s: &str) -> Result<Signature> {
        s.chars()
            .map(|c| {
                Sign::from_char(c).ok_or_else(|| Error::InvalidFile(format!(
                    "signature must consist of '+' and '-' characters, found {c:?}"
                )))
            })
            .collect::<Result<Vec<_>>>()
            .map(Signature)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// An affine flat cut out by a subset of hyperplanes: the defining
/// subscripts, a point on the flat, and a basis of its direction space
/// (`m - |subscripts|` vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub subscripts: Vec<usize>,
    pub point: QVector,
    pub directions: Vec<QVector>,
}

/// Index (0, 1 or 2) of whichever of three pairwise distinct collinear
/// points lies between the other two. The answer does not depend on the
/// order of the arguments or on how the common line is parametrized.
pub fn central_of_three(p: &QVector, q: &QVector, r: &QVector) -> Result<usize> {
    if p == q || p == r || q == r {
        return Err(Error::CoincidentPoints);
    }
    let d = q.sub(p);
    let e = r.sub(p);
    let span = QMatrix::from_rows(p.dim(), &[d.clone(), e.clone()])?;
    if rank(&span) != 1 {
        return Err(Error::NotCollinear);
    }
    // Affine parameters along d: p at 0, q at d.d > 0, r at d.e.
    let mut stations = [
        (Rational::zero(), 0usize),
        (d.dot(&d), 1),
        (d.dot(&e), 2),
    ];
    stations.sort();
    Ok(stations[1].1)
}

/// Whether every subset of at most `dim` of the given vectors is linearly
/// independent ("maximally linearly independent").
pub fn is_maximally_independent(vectors: &[QVector], dim: usize) -> bool {
    mli_violation(vectors, dim).is_none()
}

/// First (lexicographically by position) subset violating maximal linear
/// independence, as 0-based positions, or `None` if none does. It suffices
/// to test subsets of size `min(n, dim)`: smaller subsets sit inside one of
/// those.
pub fn mli_violation(vectors: &[QVector], dim: usize) -> Option<Vec<usize>> {
    for v in vectors {
        assert_eq!(v.dim(), dim, "vector dimension must match the ambient dimension");
    }
    let r = vectors.len().min(dim);
    if r == 0 {
        return None;
    }
    (0..vectors.len()).combinations(r).find(|subset| {
        let rows: Vec<QVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
        let m = QMatrix::from_rows(dim, &rows).expect("dimensions checked above");
        rank(&m) < r
    })
}

/// A finite list of hyperplanes in `Q^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Errors if `dim == 0` or some normal has the wrong dimension.
    /// (Zero normals are already rejected by [`Hyperplane::new`].)
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::WrongDimension {
                what: "ambient space",
                expected: 1,
                found: 0,
            });
        }
        for h in &hyperplanes {
            if h.normal().dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.normal().dim(),
                });
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    /// Ambient dimension `m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of hyperplanes `n`.
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// The hyperplane with 1-based subscript `i`.
    ///
    /// # Panics
    /// Panics if `i` is outside `1..=len()`.
    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        assert!(
            (1..=self.len()).contains(&i),
            "hyperplane subscript {i} outside 1..={}",
            self.len()
        );
        &self.hyperplanes[i - 1]
    }

    /// All hyperplanes in subscript order (slice position `i - 1` holds
    /// subscript `i`).
    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Validates that `subset` is a strictly increasing list of subscripts in
    /// `1..=n` with the expected size (any size if `None`).
    pub fn check_subset(&self, subset: &[usize], expected_size: Option<usize>) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::InvalidSubset {
                subset: subset.to_vec(),
                reason: reason.to_string(),
            })
        };
        if let Some(size) = expected_size {
            if subset.len() != size {
                return fail(&format!("expected exactly {size} subscripts"));
            }
        }
        if subset.iter().any(|&i| i < 1 || i > self.len()) {
            return fail(&format!("subscripts must lie in 1..={}", self.len()));
        }
        if !subset.windows(2).all(|w| w[0] < w[1]) {
            return fail("subscripts must be strictly increasing");
        }
        Ok(())
    }

    /// The rows `A_S` and right-hand sides `b_S` for a validated subset.
    fn system_for(&self, subset: &[usize]) -> (QMatrix, QVector) {
        let rows: Vec<QVector> = subset
            .iter()
            .map(|&i| self.hyperplanes[i - 1].normal().clone())
            .collect();
        let rhs = QVector::new(
            subset
                .iter()
                .map(|&i| self.hyperplanes[i - 1].offset().clone())
                .collect(),
        );
        let mat = QMatrix::from_rows(self.dim, &rows).expect("normals validated on construction");
        (mat, rhs)
    }

    /// First subset witnessing a violation of general position (1-based,
    /// lexicographic), or `None` if the arrangement is in general position.
    /// Independence violations are reported before shared-point violations.
    pub fn general_position_witness(&self) -> Option<Vec<usize>> {
        let normals: Vec<QVector> = self.hyperplanes.iter().map(|h| h.normal().clone()).collect();
        if let Some(subset) = mli_violation(&normals, self.dim) {
            return Some(subset.into_iter().map(|i| i + 1).collect());
        }
        let n = self.len();
        let m = self.dim;
        if n > m {
            for subset in (1..=n).combinations(m + 1) {
                if self.bordered_det(&subset).is_zero() {
                    return Some(subset);
                }
            }
        }
        None
    }

    /// Determinant of the `(m+1) x (m+1)` matrix `[A_S | b_S]` for an
    /// `(m+1)`-subset; nonzero exactly when the hyperplanes of `S` do not
    /// share a point (given independent normals).
    pub fn bordered_det(&self, subset: &[usize]) -> Rational {
        let rows: Vec<QVector> = subset
            .iter()
            .map(|&i| {
                let h = &self.hyperplanes[i - 1];
                let mut entries = h.normal().entries().to_vec();
                entries.push(h.offset().clone());
                QVector::new(entries)
            })
            .collect();
        let m = QMatrix::from_rows(self.dim + 1, &rows).expect("row width is dim + 1");
        det(&m).expect("matrix is square by construction")
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position_witness().is_none()
    }

    /// Errors with [`Error::NotGeneralPosition`] carrying the first witness
    /// subset if the arrangement is not in general position.
    pub fn require_general_position(&self) -> Result<()> {
        match self.general_position_witness() {
            None => Ok(()),
            Some(witness) => Err(Error::NotGeneralPosition { witness }),
        }
    }

    /// The unique common point of the `m` hyperplanes in `subset`.
    pub fn vertex_point(&self, subset: &[usize]) -> Result<QVector> {
        self.check_subset(subset, Some(self.dim))?;
        let (a, b) = self.system_for(subset);
        solve_unique(&a, &b)
    }

    /// All vertices, keyed by their `m`-subsets in lexicographic order.
    pub fn vertices(&self) -> Result<Vec<(Vec<usize>, QVector)>> {
        (1..=self.len())
            .combinations(self.dim)
            .map(|subset| {
                let point = self.vertex_point(&subset)?;
                Ok((subset, point))
            })
            .collect()
    }

    /// The affine flat cut out by a nonempty subset of hyperplanes: a point
    /// on it (the minimum-norm solution, which is rational) together with a
    /// normalized basis of its direction space. A subset of size `m` yields
    /// a vertex with no directions.
    pub fn flat(&self, subset: &[usize]) -> Result<Flat> {
        self.check_subset(subset, None)?;
        if subset.is_empty() || subset.len() > self.dim {
            return Err(Error::InvalidSubset {
                subset: subset.to_vec(),
                reason: format!("flats come from 1..={} hyperplanes", self.dim),
            });
        }
        let (a, b) = self.system_for(subset);
        let gram = a.mul(&a.transpose())?;
        let y = solve_unique(&gram, &b).map_err(|e| match e {
            Error::SingularMatrix => Error::DependentVectors,
            other => other,
        })?;
        let point = a.transpose().mul_vec(&y)?;
        Ok(Flat {
            subscripts: subset.to_vec(),
            point,
            directions: kernel_basis(&a),
        })
    }

    /// All `C(n, k)` flats cut out by `k`-subsets, in lexicographic subset
    /// order. Requires general position (so every subset is independent and
    /// the flat dimensions are uniform `m - k`).
    pub fn skeleton(&self, k: usize) -> Result<Vec<Flat>> {
        if k == 0 || k > self.dim {
            return Err(Error::InvalidSubset {
                subset: vec![k],
                reason: format!("skeleton level must lie in 1..={}", self.dim),
            });
        }
        self.require_general_position()?;
        (1..=self.len())
            .combinations(k)
            .map(|subset| self.flat(&subset))
            .collect()
    }

    /// Canonical direction of the line cut out by an `(m-1)`-subset: the
    /// normalized kernel generator of its normals.
    pub fn line_direction(&self, subset: &[usize]) -> Result<QVector> {
        self.check_subset(subset, Some(self.dim - 1))?;
        let (a, _) = self.system_for(subset);
        let kernel = kernel_basis(&a);
        if kernel.len() != 1 {
            return Err(Error::DependentVectors);
        }
        Ok(kernel.into_iter().next().expect("length checked"))
    }

    /// The `n - m + 1` vertices on the line cut out by an `(m-1)`-subset
    /// `A`, as `m`-subsets `A + {j}`, sorted by position along the line
    /// (traversed in its canonical direction). Errors if some hyperplane
    /// never meets the line; ties (coincident vertices, impossible in
    /// general position) fall back to subscript order.
    pub fn order_on_line(&self, subset: &[usize]) -> Result<Vec<Vec<usize>>> {
        let direction = self.line_direction(subset)?;
        let mut stations: Vec<(Rational, usize, Vec<usize>)> = Vec::new();
        for j in 1..=self.len() {
            if subset.contains(&j) {
                continue;
            }
            let mut vertex_subset = subset.to_vec();
            vertex_subset.push(j);
            vertex_subset.sort_unstable();
            let point = self.vertex_point(&vertex_subset)?;
            stations.push((direction.dot(&point), j, vertex_subset));
        }
        stations.sort();
        Ok(stations.into_iter().map(|(_, _, s)| s).collect())
    }

    /// Sides of all hyperplanes at `x` (`None` where `x` lies on one).
    pub fn signs_at(&self, x: &QVector) -> Vec<Option<Sign>> {
        self.hyperplanes.iter().map(|h| h.side(x)).collect()
    }

    /// Strict signature of a point lying on no hyperplane.
    pub fn signature_at(&self, x: &QVector) -> Result<Signature> {
        self.signs_at(x)
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| Error::NotGeneric {
                    reason: format!("point lies on hyperplane {}", i + 1),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Signature::new)
    }

    /// Same normals with new offsets (a translation of every hyperplane).
    pub fn with_offsets(&self, offsets: Vec<Rational>) -> Result<Arrangement> {
        if offsets.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: offsets.len(),
            });
        }
        let hyperplanes = self
            .hyperplanes
            .iter()
            .zip(offsets)
            .map(|(h, b)| Hyperplane::new(h.normal().clone(), b))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.dim, hyperplanes)
    }

    /// The sub-arrangement consisting of the hyperplanes in `subset`
    /// (renumbered 1..=|subset| in the given order's sorted form).
    pub fn restriction(&self, subset: &[usize]) -> Result<Arrangement> {
        self.check_subset(subset, None)?;
        let hyperplanes = subset
            .iter()
            .map(|&i| self.hyperplanes[i - 1].clone())
            .collect();
        Arrangement::new(self.dim, hyperplanes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{integer, rational};

    fn hp(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::new(QVector::from_ints(normal), integer(offset)).unwrap()
    }

    /// x = 0, y = 0, x + y = 3: a triangle.
    fn triangle() -> Arrangement {
        Arrangement::new(2, vec![hp(&[1, 0], 0), hp(&[0, 1], 0), hp(&[1, 1], 3)]).unwrap()
    }

    /// x = 0, y = 0, y = 1, x + y = 3. Not in general position (lines 2 and
    /// 3 are parallel), but every line except 2 and 3 still meets all
    /// others, so per-line orders remain well defined.
    fn four_lines() -> Arrangement {
        Arrangement::new(
            2,
            vec![hp(&[1, 0], 0), hp(&[0, 1], 0), hp(&[0, 1], 1), hp(&[1, 1], 3)],
        )
        .unwrap()
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(
            Arrangement::new(0, vec![]),
            Err(Error::WrongDimension { .. })
        ));
        assert!(matches!(
            Arrangement::new(2, vec![hp(&[1, 0, 0], 1)]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(matches!(
            Hyperplane::new(QVector::zeros(2), integer(1)),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn triangle_is_general_position_with_known_vertices() {
        let arr = triangle();
        assert!(arr.is_general_position());
        let vertices = arr.vertices().unwrap();
        assert_eq!(
            vertices,
            vec![
                (vec![1, 2], QVector::from_ints(&[0, 0])),
                (vec![1, 3], QVector::from_ints(&[0, 3])),
                (vec![2, 3], QVector::from_ints(&[3, 0])),
            ]
        );
    }

    #[test]
    fn parallel_normals_are_detected_with_first_witness() {
        let arr =
            Arrangement::new(2, vec![hp(&[1, 0], 0), hp(&[2, 0], 5), hp(&[0, 1], 0)]).unwrap();
        assert_eq!(arr.general_position_witness(), Some(vec![1, 2]));
        assert!(matches!(
            arr.require_general_position(),
            Err(Error::NotGeneralPosition { witness }) if witness == vec![1, 2]
        ));
    }

    #[test]
    fn concurrent_lines_are_detected() {
        // Three lines through the origin: independent normals, shared point.
        let arr =
            Arrangement::new(2, vec![hp(&[1, 0], 0), hp(&[0, 1], 0), hp(&[1, 1], 0)]).unwrap();
        assert_eq!(arr.general_position_witness(), Some(vec![1, 2, 3]));
        assert_eq!(arr.bordered_det(&[1, 2, 3]), integer(0));
        assert!(!triangle().bordered_det(&[1, 2, 3]).is_zero());
    }

    #[test]
    fn vertex_subset_validation() {
        let arr = triangle();
        for bad in [vec![1], vec![1, 2, 3], vec![2, 1], vec![1, 1], vec![0, 1], vec![1, 4]] {
            assert!(
                matches!(arr.vertex_point(&bad), Err(Error::InvalidSubset { .. })),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn orders_vertices_along_lines() {
        let arr = four_lines();
        // Line 1 is x = 0 with canonical direction (0, 1): vertices at
        // y = 0, 1, 3 for subscripts 2, 3, 4.
        assert_eq!(arr.line_direction(&[1]).unwrap(), QVector::from_ints(&[0, 1]));
        assert_eq!(
            arr.order_on_line(&[1]).unwrap(),
            vec![vec![1, 2], vec![1, 3], vec![1, 4]]
        );
        // Line 4 is x + y = 3 with canonical direction (1, -1): vertices
        // (0,3), (2,1), (3,0) come in subscript order 1, 3, 2.
        assert_eq!(arr.line_direction(&[4]).unwrap(), QVector::from_ints(&[1, -1]));
        assert_eq!(
            arr.order_on_line(&[4]).unwrap(),
            vec![vec![1, 4], vec![3, 4], vec![2, 4]]
        );
        // Line 2 (y = 0) never meets the parallel line 3 (y = 1).
        assert!(matches!(
            arr.order_on_line(&[2]),
            Err(Error::SingularMatrix)
        ));
        // The parallel pair is also the general-position witness.
        assert_eq!(arr.general_position_witness(), Some(vec![2, 3]));
    }

    #[test]
    fn order_on_line_with_minimal_arrangement() {
        // n = m: a single vertex on each line.
        let arr = Arrangement::new(2, vec![hp(&[1, 0], 0), hp(&[0, 1], 0)]).unwrap();
        assert_eq!(arr.order_on_line(&[1]).unwrap(), vec![vec![1, 2]]);
    }

    #[test]
    fn central_of_three_picks_the_middle_point() {
        let p = |xs: &[i64]| QVector::from_ints(xs);
        assert_eq!(
            central_of_three(&p(&[0, 0]), &p(&[1, 1]), &p(&[2, 2])).unwrap(),
            1
        );
        assert_eq!(
            central_of_three(&p(&[0, 1]), &p(&[0, 5]), &p(&[0, 2])).unwrap(),
            2
        );
        // Invariant under permuting the arguments.
        let (a, b, c) = (p(&[3, 0, 1]), p(&[5, 0, 3]), p(&[9, 0, 7]));
        for (x, y, z, mid) in [
            (&a, &b, &c, 1),
            (&b, &a, &c, 0),
            (&c, &b, &a, 1),
            (&a, &c, &b, 2),
        ] {
            assert_eq!(central_of_three(x, y, z).unwrap(), mid);
        }
        let tri = triangle();
        let vs = tri.vertices().unwrap();
        assert!(matches!(
            central_of_three(&vs[0].1, &vs[1].1, &vs[2].1),
            Err(Error::NotCollinear)
        ));
        assert!(matches!(
            central_of_three(&p(&[1, 1]), &p(&[1, 1]), &p(&[2, 2])),
            Err(Error::CoincidentPoints)
        ));
    }

    #[test]
    fn skeleton_lists_all_flats_per_level() {
        let arr = triangle();
        let vertices = arr.skeleton(2).unwrap();
        assert_eq!(vertices.len(), 3);
        assert_eq!(vertices[0].subscripts, vec![1, 2]);
        assert_eq!(vertices[0].point, QVector::from_ints(&[0, 0]));
        assert!(vertices[0].directions.is_empty());
        let lines = arr.skeleton(1).unwrap();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|f| f.directions.len() == 1));
        // Every listed hyperplane contains its flat's point.
        for f in lines.iter().chain(&vertices) {
            for &i in &f.subscripts {
                assert!(arr.hyperplane(i).contains(&f.point));
            }
        }
        assert!(arr.skeleton(0).is_err());
        assert!(arr.skeleton(3).is_err());
        // Skeletons demand general position.
        assert!(matches!(
            four_lines().skeleton(1),
            Err(Error::NotGeneralPosition { .. })
        ));
    }

    #[test]
    fn general_position_is_scale_invariant() {
        let arr = triangle();
        // Rescale hyperplane 3 by -5/7: same geometric arrangement.
        let scaled = Arrangement::new(
            2,
            vec![
                hp(&[1, 0], 0),
                hp(&[0, 1], 0),
                Hyperplane::new(
                    QVector::new(vec![rational(-5, 7), rational(-5, 7)]),
                    rational(-15, 7),
                )
                .unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            arr.general_position_witness(),
            scaled.general_position_witness()
        );
        assert!(scaled.is_general_position());
    }

    #[test]
    fn flats_carry_minimum_norm_points_and_directions() {
        let arr = four_lines();
        let flat = arr.flat(&[4]).unwrap();
        assert_eq!(
            flat.point,
            QVector::new(vec![rational(3, 2), rational(3, 2)])
        );
        assert_eq!(flat.directions, vec![QVector::from_ints(&[1, -1])]);
        // A full m-subset is a vertex: no directions left.
        let vertex = arr.flat(&[2, 4]).unwrap();
        assert_eq!(vertex.point, QVector::from_ints(&[3, 0]));
        assert!(vertex.directions.is_empty());
        assert!(arr.flat(&[]).is_err());
        assert!(arr.flat(&[1, 2, 3]).is_err());
    }

    #[test]
    fn signatures_classify_points() {
        let arr = triangle();
        let inside = QVector::from_ints(&[1, 1]);
        assert_eq!(arr.signature_at(&inside).unwrap().to_string(), "++-");
        let on_line = QVector::from_ints(&[0, 1]);
        assert!(matches!(arr.signature_at(&on_line), Err(Error::NotGeneric { .. })));
        assert_eq!(
            arr.signs_at(&on_line),
            vec![None, Some(Sign::Plus), Some(Sign::Minus)]
        );
    }

    #[test]
    fn signature_utilities() {
        let sig = Signature::parse("++-").unwrap();
        assert_eq!(sig.sign(3), Sign::Minus);
        assert_eq!(sig.flipped(1).to_string(), "-+-");
        assert_eq!(sig.diff(&Signature::parse("+--").unwrap()), vec![2]);
        assert!(Signature::parse("+0-").is_err());
    }

    #[test]
    fn one_dimensional_arrangements_work() {
        // Points x = 2 and x = 5 on the line.
        let arr = Arrangement::new(1, vec![hp(&[1], 2), hp(&[1], 5)]).unwrap();
        assert!(arr.is_general_position());
        assert_eq!(arr.vertex_point(&[1]).unwrap(), QVector::from_ints(&[2]));
        // The empty subset cuts out the whole line; both vertices sit on it.
        assert_eq!(arr.order_on_line(&[]).unwrap(), vec![vec![1], vec![2]]);
        // Coincident points violate general position.
        let dup = Arrangement::new(1, vec![hp(&[1], 2), hp(&[2], 4)]).unwrap();
        assert_eq!(dup.general_position_witness(), Some(vec![1, 2]));
    }

    #[test]
    fn translation_keeps_normals() {
        let arr = triangle();
        let moved = arr
            .with_offsets(vec![integer(1), integer(1), integer(4)])
            .unwrap();
        assert_eq!(moved.hyperplane(1).normal(), arr.hyperplane(1).normal());
        assert_eq!(moved.vertex_point(&[1, 2]).unwrap(), QVector::from_ints(&[1, 1]));
        assert!(arr.with_offsets(vec![integer(1)]).is_err());
    }

    #[test]
    fn restriction_renumbers_hyperplanes() {
        let arr = four_lines();
        let sub = arr.restriction(&[1, 3, 4]).unwrap();
        assert_eq!(sub.len(), 3);
        assert_eq!(sub.hyperplane(2), arr.hyperplane(3));
        assert!(sub.is_general_position());
    }
}
