//! Hyperplanes at infinity: far hyperplanes that see every vertex of an
//! arrangement on one side, the co-dimension-one arrangements they induce by
//! intersection, and the arrangements that can be built from nothing by
//! repeatedly adding a hyperplane at infinity.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactmath::{kernel_basis, rank, QMatrix, QVector, Rational, Sign};
use crate::regions::MAX_ENUMERATION_HYPERPLANES;
use crate::{Error, Result};

/// The vertices that exist, skipping subsets whose normals are singular
/// (tolerates arrangements that are not in general position).
fn vertex_points(arr: &Arrangement) -> Vec<QVector> {
    (1..=arr.len())
        .combinations(arr.dim())
        .filter_map(|subset| arr.vertex_point(&subset).ok())
        .collect()
}

/// Whether every vertex of the arrangement lies weakly on one side of `h`
/// (vertices on `h` itself do not spoil one-sidedness). An arrangement with
/// no vertices is one-sided for every hyperplane.
///
/// # Panics
/// Panics if `h` does not live in the arrangement's dimension.
pub fn is_at_infinity(arr: &Arrangement, h: &Hyperplane) -> bool {
    assert_eq!(
        h.normal().dim(),
        arr.dim(),
        "hyperplane dimension must match the arrangement"
    );
    let mut positive = false;
    let mut negative = false;
    for v in vertex_points(arr) {
        match h.side(&v) {
            Some(Sign::Plus) => positive = true,
            Some(Sign::Minus) => negative = true,
            None => {}
        }
        if positive && negative {
            return false;
        }
    }
    true
}

/// The hyperplane `direction . x = b` with `b` one more than the largest
/// value of `direction` at a vertex (or `b = 1` when there are no
/// vertices), so every vertex lies strictly below it. The direction must
/// stay maximally independent with the existing normals.
pub fn add_at_infinity(arr: &Arrangement, direction: &QVector) -> Result<Hyperplane> {
    if direction.dim() != arr.dim() {
        return Err(Error::DimensionMismatch {
            expected: arr.dim(),
            found: direction.dim(),
        });
    }
    if direction.is_zero() {
        return Err(Error::ZeroVector);
    }
    let k = arr.dim().min(arr.len() + 1);
    for subset in (1..=arr.len()).combinations(k - 1) {
        let mut rows: Vec<QVector> = subset
            .iter()
            .map(|&i| arr.hyperplane(i).normal().clone())
            .collect();
        rows.push(direction.clone());
        let mat = QMatrix::from_rows(arr.dim(), &rows)?;
        if rank(&mat) < k {
            return Err(Error::NotGeneric {
                reason: format!("direction is linearly dependent with the normals of {subset:?}"),
            });
        }
    }
    let mut best: Option<Rational> = None;
    for v in vertex_points(arr) {
        let value = direction.dot(&v);
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    let offset = best.map_or_else(Rational::one, |b| b + Rational::one());
    Hyperplane::new(direction.clone(), offset)
}

/// [`add_at_infinity`] with the new hyperplane appended as subscript
/// `n + 1`.
pub fn extend_at_infinity(arr: &Arrangement, direction: &QVector) -> Result<Arrangement> {
    let far = add_at_infinity(arr, direction)?;
    let mut hyperplanes = arr.hyperplanes().to_vec();
    hyperplanes.push(far);
    Arrangement::new(arr.dim(), hyperplanes)
}

/// An exact affine coordinate system on a hyperplane `a . x = b` in `Q^m`:
/// a base point on the hyperplane and a basis of its direction space, so
/// chart coordinates `y` name the point `base + sum_k y_k d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    base: QVector,
    directions: Vec<QVector>,
}

impl Chart {
    /// The deterministic chart: base point `(b / a_c) e_c` on the first
    /// coordinate axis the normal touches, directions the normalized kernel
    /// basis of the normal.
    pub fn canonical(h: &Hyperplane) -> Chart {
        let a = h.normal();
        let c = a.first_nonzero().expect("hyperplane normals are nonzero");
        let mut entries = vec![Rational::zero(); a.dim()];
        entries[c] = h.offset() / &a.entries()[c];
        let row = QMatrix::from_rows(a.dim(), std::slice::from_ref(a))
            .expect("normal dimension is the row width");
        Chart {
            base: QVector::new(entries),
            directions: kernel_basis(&row),
        }
    }

    /// A user-supplied chart, validated: the base point must lie on the
    /// hyperplane and the directions must be a basis of its direction
    /// space.
    pub fn new(h: &Hyperplane, base: QVector, directions: Vec<QVector>) -> Result<Chart> {
        let m = h.normal().dim();
        if base.dim() != m || directions.iter().any(|d| d.dim() != m) {
            return Err(Error::InvalidChart(format!(
                "chart coordinates must live in dimension {m}"
            )));
        }
        if !h.contains(&base) {
            return Err(Error::InvalidChart(
                "base point does not lie on the hyperplane".to_string(),
            ));
        }
        if directions.len() != m - 1 {
            return Err(Error::InvalidChart(format!(
                "expected {} directions, got {}",
                m - 1,
                directions.len()
            )));
        }
        if directions.iter().any(|d| !h.normal().dot(d).is_zero()) {
            return Err(Error::InvalidChart(
                "directions must be parallel to the hyperplane".to_string(),
            ));
        }
        let span = QMatrix::from_rows(m, &directions)?;
        if rank(&span) != m - 1 {
            return Err(Error::InvalidChart(
                "directions are linearly dependent".to_string(),
            ));
        }
        Ok(Chart { base, directions })
    }

    pub fn base(&self) -> &QVector {
        &self.base
    }

    pub fn directions(&self) -> &[QVector] {
        &self.directions
    }

    /// The ambient point named by chart coordinates `y`.
    pub fn embed(&self, y: &QVector) -> QVector {
        assert_eq!(y.dim(), self.directions.len(), "chart coordinate count");
        let mut point = self.base.clone();
        for (c, d) in y.iter().zip(&self.directions) {
            point = point.add(&d.scale(c));
        }
        point
    }
}

/// The arrangement cut on the hyperplane `h` by intersecting every
/// hyperplane of `arr` with it, written in the chart's coordinates: one
/// hyperplane of `Q^(m-1)` per hyperplane of `arr`, validated to be in
/// general position.
pub fn induced_with_chart(
    arr: &Arrangement,
    h: &Hyperplane,
    chart: &Chart,
) -> Result<Arrangement> {
    let m = arr.dim();
    if m < 2 {
        return Err(Error::WrongDimension {
            what: "induced arrangement",
            expected: 2,
            found: m,
        });
    }
    if h.normal().dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: h.normal().dim(),
        });
    }
    if chart.base.dim() != m || chart.directions.len() != m - 1 {
        return Err(Error::InvalidChart(format!(
            "chart does not parameterize a hyperplane of dimension {m}"
        )));
    }
    let hyperplanes = arr
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(idx, hi)| {
            let normal = QVector::new(
                chart
                    .directions
                    .iter()
                    .map(|d| hi.normal().dot(d))
                    .collect(),
            );
            let offset = hi.offset() - hi.normal().dot(&chart.base);
            Hyperplane::new(normal, offset).map_err(|e| match e {
                Error::ZeroVector => Error::NotGeneric {
                    reason: format!("hyperplane {} is parallel to the section", idx + 1),
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let induced = Arrangement::new(m - 1, hyperplanes)?;
    if let Some(witness) = induced.general_position_witness() {
        return Err(Error::NotGeneralPosition { witness });
    }
    Ok(induced)
}

/// [`induced_with_chart`] in the canonical chart of `h`.
pub fn induced_arrangement(arr: &Arrangement, h: &Hyperplane) -> Result<Arrangement> {
    induced_with_chart(arr, h, &Chart::canonical(h))
}

/// Whether `order` (a permutation of `1..=n`) builds the arrangement by
/// far additions: each hyperplane in turn must be at infinity with respect
/// to the sub-arrangement of the hyperplanes placed before it.
pub fn check_build_order(arr: &Arrangement, order: &[usize]) -> Result<bool> {
    let n = arr.len();
    let mut seen = vec![false; n];
    for &i in order {
        if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
            return Err(Error::NotAPermutation {
                perm: order.to_vec(),
                n,
            });
        }
    }
    if order.len() != n {
        return Err(Error::NotAPermutation {
            perm: order.to_vec(),
            n,
        });
    }
    for l in 1..n {
        let mut prefix: Vec<usize> = order[..l].to_vec();
        prefix.sort_unstable();
        let before = arr.restriction(&prefix)?;
        if !is_at_infinity(&before, arr.hyperplane(order[l])) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Signs of every hyperplane at every existing vertex, with the vertex's
/// defining subset as a bitmask — the data the build-order search consumes.
fn vertex_sign_table(arr: &Arrangement) -> Vec<(u64, Vec<Option<Sign>>)> {
    (1..=arr.len())
        .combinations(arr.dim())
        .filter_map(|subset| {
            let v = arr.vertex_point(&subset).ok()?;
            let mask = subset.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1));
            let signs = arr.hyperplanes().iter().map(|h| h.side(&v)).collect();
            Some((mask, signs))
        })
        .collect()
}

/// Whether hyperplane `h` (0-based) sees every vertex of the sub-arrangement
/// `mask` weakly on one side.
fn one_sided(table: &[(u64, Vec<Option<Sign>>)], mask: u64, h: usize) -> bool {
    let mut positive = false;
    let mut negative = false;
    for (vmask, signs) in table {
        if vmask & !mask != 0 {
            continue;
        }
        match signs[h] {
            Some(Sign::Plus) => positive = true,
            Some(Sign::Minus) => negative = true,
            None => {}
        }
        if positive && negative {
            return false;
        }
    }
    true
}

/// Depth-first search for a peelable last hyperplane of every sub-arrangement
/// reached from the full set, memoizing the choice (`None` = dead end).
fn search_order(
    mask: u64,
    n: usize,
    table: &[(u64, Vec<Option<Sign>>)],
    memo: &mut HashMap<u64, Option<usize>>,
) -> bool {
    if mask == 0 {
        return true;
    }
    if let Some(cached) = memo.get(&mask) {
        return cached.is_some();
    }
    for h in 0..n {
        let bit = 1u64 << h;
        if mask & bit == 0 {
            continue;
        }
        let rest = mask & !bit;
        if one_sided(table, rest, h) && search_order(rest, n, table, memo) {
            memo.insert(mask, Some(h));
            return true;
        }
    }
    memo.insert(mask, None);
    false
}

/// A build order realizing the arrangement by repeated far additions
/// (1-based subscripts, first-added first), or `None` if no order exists.
/// The search peels the arrangement back to front — the last hyperplane of
/// a valid order must already see every other vertex on one side — and
/// memoizes sub-arrangements by bitmask.
pub fn is_infinity_arrangement(arr: &Arrangement) -> Result<Option<Vec<usize>>> {
    let n = arr.len();
    if n > MAX_ENUMERATION_HYPERPLANES {
        return Err(Error::TooLarge {
            what: "build-order search",
            limit: MAX_ENUMERATION_HYPERPLANES,
            requested: n,
        });
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let table = vertex_sign_table(arr);
    let full = (1u64 << n) - 1;
    let mut memo = HashMap::new();
    if !search_order(full, n, &table, &mut memo) {
        return Ok(None);
    }
    let mut mask = full;
    let mut reversed = Vec::with_capacity(n);
    while mask != 0 {
        let h = memo[&mask].expect("the winning path recorded a peel for every mask");
        reversed.push(h + 1);
        mask &= !(1u64 << h);
    }
    reversed.reverse();
    debug_assert_eq!(check_build_order(arr, &reversed), Ok(true));
    Ok(Some(reversed))
}
