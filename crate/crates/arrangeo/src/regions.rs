//! Exact enumeration and classification of the open regions of an
//! arrangement.
//!
//! A sign vector assigns each hyperplane a strict side; the corresponding
//! open region is `{x : sign_i * (a_i . x - b_i) > 0 for all i}`. Feasibility
//! of such strict systems is decided by exact Fourier-Motzkin elimination
//! over the rationals, which also produces an interior witness point.
//! Boundedness is decided through the recession cone: a nonempty region is
//! unbounded exactly when some nonzero direction `d` satisfies
//! `sign_i * (a_i . d) >= 0` for all `i`, and any such `d` can be scaled so
//! one coordinate is +1 or -1, giving `2m` complete feasibility probes.
//!
//! For arrangements in general position the counts obey exact closed forms:
//! `sum_{i=0}^{m} C(n, i)` regions, of which `C(n-1, m)` are bounded.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, Signature};
use crate::exactmath::{binomial, QVector, Rational, Sign};
use crate::{Error, Result};

/// Most hyperplanes an arrangement may have before region enumeration
/// refuses to sweep sign vectors.
pub const MAX_ENUMERATION_HYPERPLANES: usize = 20;

/// One linear constraint `coeffs . x < rhs` (strict) or `coeffs . x <= rhs`
/// (weak), the internal currency of the elimination engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

impl Constraint {
    pub fn strict_lt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            rhs,
            strict: true,
        }
    }

    pub fn weak_le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            rhs,
            strict: false,
        }
    }

    /// Pins variable `j` to `value`: the coefficient moves to the right-hand
    /// side and the column becomes structurally zero.
    pub fn substitute(&self, j: usize, value: &Rational) -> Constraint {
        let mut out = self.clone();
        let c = std::mem::replace(&mut out.coeffs[j], Rational::zero());
        out.rhs -= c * value;
        out
    }

    fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.eval(x);
        if self.strict {
            lhs < self.rhs
        } else {
            lhs <= self.rhs
        }
    }
}

/// Scales to integer coefficients with content 1 (a positive scaling, so
/// the inequality is unchanged), then deduplicates identical coefficient
/// rows keeping the strongest bound. Zero rows are resolved on the spot:
/// returns `None` if one of them is unsatisfiable.
fn simplify(constraints: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut best: Vec<Constraint> = Vec::with_capacity(constraints.len());
    let mut index: std::collections::HashMap<Vec<Rational>, usize> =
        std::collections::HashMap::new();
    for c in constraints {
        let coeffs = QVector::new(c.coeffs.clone());
        let Some(first) = coeffs.first_nonzero() else {
            let ok = if c.strict {
                c.rhs > Rational::zero()
            } else {
                c.rhs >= Rational::zero()
            };
            if ok {
                continue;
            }
            return None;
        };
        // normalized() may flip the overall sign (it makes the first nonzero
        // entry positive); undo that so the scaling stays positive and the
        // inequality keeps its meaning.
        let normal = coeffs.normalized();
        let same_orientation =
            (normal[first] > Rational::zero()) == (coeffs[first] > Rational::zero());
        let scaled_coeffs = if same_orientation {
            normal.clone()
        } else {
            normal.neg()
        };
        let factor = &scaled_coeffs[first] / &coeffs[first];
        debug_assert!(factor > Rational::zero());
        let scaled = Constraint {
            coeffs: scaled_coeffs.entries().to_vec(),
            rhs: &c.rhs * &factor,
            strict: c.strict,
        };
        match index.entry(scaled.coeffs.clone()) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(best.len());
                best.push(scaled);
            }
            std::collections::hash_map::Entry::Occupied(e) => {
                let kept = &mut best[*e.get()];
                let stronger = scaled.rhs < kept.rhs
                    || (scaled.rhs == kept.rhs && scaled.strict && !kept.strict);
                if stronger {
                    *kept = scaled;
                }
            }
        }
    }
    Some(best)
}

/// Fourier-Motzkin feasibility with witness extraction. Returns a rational
/// point satisfying every constraint, or `None` if the system is infeasible.
pub(crate) fn fm_witness(dim: usize, constraints: Vec<Constraint>) -> Option<Vec<Rational>> {
    debug_assert!(constraints.iter().all(|c| c.coeffs.len() == dim));
    #[cfg(debug_assertions)]
    let originals = constraints.clone();
    let witness = eliminate(dim, constraints)?;
    #[cfg(debug_assertions)]
    debug_assert!(
        originals.iter().all(|c| c.satisfied_by(&witness)),
        "elimination witness must satisfy the input system"
    );
    Some(witness)
}

fn eliminate(dim: usize, constraints: Vec<Constraint>) -> Option<Vec<Rational>> {
    let cons = simplify(constraints)?;
    if cons.is_empty() {
        return Some(vec![Rational::zero(); dim]);
    }
    // Greedy pivot: the column whose elimination creates the fewest
    // combination rows (ties to the smallest index, for determinism).
    let mut pivot: Option<(usize, usize)> = None;
    for j in 0..dim {
        let pos = cons.iter().filter(|c| c.coeffs[j] > Rational::zero()).count();
        let neg = cons.iter().filter(|c| c.coeffs[j] < Rational::zero()).count();
        if pos + neg == 0 {
            continue;
        }
        let cost = pos * neg;
        if pivot.is_none_or(|(_, best)| cost < best) {
            pivot = Some((j, cost));
        }
    }
    let (j, _) = pivot.expect("nonempty simplified system touches some column");
    let mut uppers = Vec::new(); // coeff_j > 0
    let mut lowers = Vec::new(); // coeff_j < 0
    let mut rest = Vec::new();
    for c in cons {
        match c.coeffs[j].cmp(&Rational::zero()) {
            std::cmp::Ordering::Greater => uppers.push(c),
            std::cmp::Ordering::Less => lowers.push(c),
            std::cmp::Ordering::Equal => rest.push(c),
        }
    }
    // All sign-correct combinations eliminate column j.
    for u in &uppers {
        for l in &lowers {
            let (cu, cl) = (&u.coeffs[j], &l.coeffs[j]);
            let coeffs: Vec<Rational> = u
                .coeffs
                .iter()
                .zip(&l.coeffs)
                .map(|(a, b)| a * &(-cl.clone()) + b * cu)
                .collect();
            debug_assert!(coeffs[j].is_zero());
            rest.push(Constraint {
                coeffs,
                rhs: &u.rhs * &(-cl.clone()) + &l.rhs * cu,
                strict: u.strict || l.strict,
            });
        }
    }
    let mut witness = eliminate(dim, rest)?;
    // Back-substitute a value for x_j between the binding bounds. Each row
    // with coeff_j != 0 reduces, under the witness for the other variables,
    // to a bound (rhs - j-free part) / coeff_j on x_j; `tighter` keeps the
    // binding one, remembering whether any binding row is strict.
    let bound_of = |r: &Constraint| -> (Rational, bool) {
        let free: Rational = r
            .coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(k, c)| c * &witness[k])
            .sum();
        ((&r.rhs - free) / &r.coeffs[j], r.strict)
    };
    let tighter = |rows: &[Constraint], keep_min: bool| -> Option<(Rational, bool)> {
        rows.iter().map(bound_of).fold(None, |acc, (v, s)| {
            Some(match acc {
                None => (v, s),
                Some((bv, bs)) if v == bv => (bv, bs || s),
                Some((bv, bs)) => {
                    if (v < bv) == keep_min {
                        (v, s)
                    } else {
                        (bv, bs)
                    }
                }
            })
        })
    };
    let upper = tighter(&uppers, true);
    let lower = tighter(&lowers, false);
    witness[j] = match (lower, upper) {
        (None, None) => Rational::zero(),
        (Some((l, _)), None) => l + Rational::one(),
        (None, Some((u, _))) => u - Rational::one(),
        (Some((l, ls)), Some((u, us))) => {
            debug_assert!(l < u || (l == u && !ls && !us), "bounds certified by combination rows");
            let _ = (ls, us);
            if l == u {
                l
            } else {
                (l + u) / crate::exactmath::integer(2)
            }
        }
    };
    Some(witness)
}

/// Builds the strict constraint rows of a sign vector over an arrangement.
fn region_constraints(arr: &Arrangement, signature: &Signature) -> Vec<Constraint> {
    arr.hyperplanes()
        .iter()
        .zip(signature.signs())
        .map(|(h, s)| {
            // +: a.x > b  <=>  -a.x < -b;  -: a.x < b.
            match s {
                Sign::Plus => Constraint::strict_lt(
                    h.normal().neg().entries().to_vec(),
                    -h.offset().clone(),
                ),
                Sign::Minus => {
                    Constraint::strict_lt(h.normal().entries().to_vec(), h.offset().clone())
                }
            }
        })
        .collect()
}

/// Decides a strict system `sign * (a . x - b) > 0` row by row, returning an
/// interior witness if the open polyhedron is nonempty. `dim` is the common
/// dimension of the row vectors.
pub fn feasible_strict(dim: usize, rows: &[(QVector, Rational, Sign)]) -> Option<QVector> {
    let cons = rows
        .iter()
        .map(|(a, b, s)| match s {
            Sign::Plus => Constraint::strict_lt(a.neg().entries().to_vec(), -b.clone()),
            Sign::Minus => Constraint::strict_lt(a.entries().to_vec(), b.clone()),
        })
        .collect();
    fm_witness(dim, cons).map(QVector::new)
}

/// Interior witness of the open region with the given sign vector, if the
/// region is nonempty.
pub fn region_witness(arr: &Arrangement, signature: &Signature) -> Option<QVector> {
    assert_eq!(signature.len(), arr.len(), "signature length mismatch");
    fm_witness(arr.dim(), region_constraints(arr, signature)).map(QVector::new)
}

/// Recession-cone rows `sign_i * (a_i . d) >= 0` as weak `<=` constraints.
fn recession_constraints(arr: &Arrangement, signature: &Signature) -> Vec<Constraint> {
    arr.hyperplanes()
        .iter()
        .zip(signature.signs())
        .map(|(h, s)| {
            let coeffs = match s {
                Sign::Plus => h.normal().neg(),
                Sign::Minus => h.normal().clone(),
            };
            Constraint::weak_le(coeffs.entries().to_vec(), Rational::zero())
        })
        .collect()
}

/// Whether the recession cone of the (nonempty) region is `{0}`, i.e. the
/// region contains no ray.
fn recession_cone_trivial(arr: &Arrangement, signature: &Signature) -> bool {
    let rows = recession_constraints(arr, signature);
    for j in 0..arr.dim() {
        for unit in [Rational::one(), -Rational::one()] {
            let probe: Vec<Constraint> =
                rows.iter().map(|c| c.substitute(j, &unit)).collect();
            if fm_witness(arr.dim(), probe).is_some() {
                return false;
            }
        }
    }
    true
}

/// Whether the open region with the given sign vector is bounded.
///
/// Errors with [`Error::EmptyRegion`] if the region is empty.
pub fn region_bounded(arr: &Arrangement, signature: &Signature) -> Result<bool> {
    if region_witness(arr, signature).is_none() {
        return Err(Error::EmptyRegion {
            sign: signature.to_string(),
        });
    }
    Ok(recession_cone_trivial(arr, signature))
}

/// One nonempty open region: its sign vector, boundedness, and an interior
/// witness point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub signature: Signature,
    pub bounded: bool,
    pub witness: QVector,
}

fn enumerate_into(
    arr: &Arrangement,
    prefix: &mut Vec<Sign>,
    constraints: &[Constraint],
    out: &mut Vec<Region>,
) {
    let depth = prefix.len();
    if depth == arr.len() {
        let signature = Signature::new(prefix.clone());
        let witness = QVector::new(
            fm_witness(arr.dim(), constraints.to_vec()).expect("prefix was checked feasible"),
        );
        let bounded = recession_cone_trivial(arr, &signature);
        out.push(Region {
            signature,
            bounded,
            witness,
        });
        return;
    }
    let h = &arr.hyperplanes()[depth];
    for sign in [Sign::Plus, Sign::Minus] {
        let row = match sign {
            Sign::Plus => {
                Constraint::strict_lt(h.normal().neg().entries().to_vec(), -h.offset().clone())
            }
            Sign::Minus => {
                Constraint::strict_lt(h.normal().entries().to_vec(), h.offset().clone())
            }
        };
        let mut extended = constraints.to_vec();
        extended.push(row);
        if fm_witness(arr.dim(), extended.clone()).is_some() {
            prefix.push(sign);
            enumerate_into(arr, prefix, &extended, out);
            prefix.pop();
        }
    }
}

/// Splits the sign-vector sweep across threads for the first levels of the
/// prefix tree, then descends sequentially.
fn enumerate_parallel(
    arr: &Arrangement,
    prefix: Vec<Sign>,
    constraints: Vec<Constraint>,
) -> Vec<Region> {
    const PARALLEL_DEPTH: usize = 5;
    let depth = prefix.len();
    if depth >= PARALLEL_DEPTH || depth == arr.len() {
        let mut out = Vec::new();
        let mut prefix = prefix;
        enumerate_into(arr, &mut prefix, &constraints, &mut out);
        return out;
    }
    let h = &arr.hyperplanes()[depth];
    let branch = |sign: Sign| {
        let row = match sign {
            Sign::Plus => {
                Constraint::strict_lt(h.normal().neg().entries().to_vec(), -h.offset().clone())
            }
            Sign::Minus => {
                Constraint::strict_lt(h.normal().entries().to_vec(), h.offset().clone())
            }
        };
        let mut extended = constraints.clone();
        extended.push(row);
        if fm_witness(arr.dim(), extended.clone()).is_none() {
            return Vec::new();
        }
        let mut longer = prefix.clone();
        longer.push(sign);
        enumerate_parallel(arr, longer, extended)
    };
    let (mut plus, minus) = rayon::join(|| branch(Sign::Plus), || branch(Sign::Minus));
    plus.extend(minus);
    plus
}

/// All nonempty open regions of an arrangement in general position, in
/// lexicographic sign-vector order with `+` before `-`.
///
/// Errors with [`Error::TooLarge`] beyond
/// [`MAX_ENUMERATION_HYPERPLANES`] hyperplanes and propagates the
/// general-position check.
pub fn enumerate_regions(arr: &Arrangement) -> Result<Vec<Region>> {
    if arr.len() > MAX_ENUMERATION_HYPERPLANES {
        return Err(Error::TooLarge {
            what: "hyperplanes for region enumeration",
            limit: MAX_ENUMERATION_HYPERPLANES,
            requested: arr.len(),
        });
    }
    arr.require_general_position()?;
    Ok(enumerate_parallel(arr, Vec::new(), Vec::new()))
}

/// Closed-form region counts for an arrangement of `n` hyperplanes in
/// general position in dimension `m`: `(total, bounded, unbounded)` with
/// `total = sum_{i=0}^{m} C(n, i)` and `bounded = C(n-1, m)`.
pub fn count_formula(n: usize, m: usize) -> (BigUint, BigUint, BigUint) {
    let total: BigUint = (0..=m as u64).map(|i| binomial(n as u64, i)).sum();
    let bounded = if n == 0 {
        BigUint::zero()
    } else {
        binomial(n as u64 - 1, m as u64)
    };
    let unbounded = &total - &bounded;
    (total, bounded, unbounded)
}
