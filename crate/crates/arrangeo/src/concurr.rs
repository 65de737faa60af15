//! The concurrency arrangement: hyperplanes through the origin of offset
//! space that record when m+1 hyperplanes of the base arrangement become
//! concurrent.
//!
//! Fix the coefficient rows `a_1, ..., a_n` of an arrangement in `Q^m`. For
//! every (m+1)-subset `S` of subscripts, the hyperplanes of `S` share a
//! point exactly when the bordered determinant `det [A_S | b_S]` vanishes —
//! a linear condition on the offset vector `b = (b_1, ..., b_n)`. These
//! `C(n, m+1)` linear forms cut `Q^n` into open cones; arrangements whose
//! offset vectors share a cone are isomorphic by the identity relabeling,
//! and moving `b` across a single facet of its cone swaps one pair of
//! vertices on each line of the facet's subset while leaving every other
//! line's order unchanged. The number of cone facets equals the number of
//! (m+1)-subsets whose simplex is a region of the full arrangement.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::exactmath::{binomial, det, rational, QMatrix, QVector, Rational, Sign};
use crate::regions::{count_formula, feasible_strict};
use crate::{Error, Result};

/// One hyperplane of the concurrency arrangement: the linear form on offset
/// vectors that vanishes exactly when the (m+1) hyperplanes of `subset` are
/// concurrent. The normal lives in `Q^n` and is supported exactly on the
/// subset's coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcurrencyHyperplane {
    subset: Vec<usize>,
    normal: QVector,
}

impl ConcurrencyHyperplane {
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }
}

/// Which side of every concurrency hyperplane the offset vector lies on.
/// Valid signatures contain no zero sign: a vanishing form means m+1
/// concurrent hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSignature {
    signs: BTreeMap<Vec<usize>, Sign>,
    b: QVector,
}

impl ConeSignature {
    /// The offset vector the signature was computed from.
    pub fn offsets(&self) -> &QVector {
        &self.b
    }

    pub fn sign(&self, subset: &[usize]) -> Option<Sign> {
        self.signs.get(subset).copied()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Subset/sign entries in lexicographic subset order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, Sign)> {
        self.signs.iter().map(|(s, &sign)| (s, sign))
    }

    /// The subsets whose signs differ from `other`'s.
    pub fn diff(&self, other: &ConeSignature) -> Vec<Vec<usize>> {
        self.signs
            .iter()
            .filter(|(subset, &sign)| other.sign(subset) != Some(sign))
            .map(|(subset, _)| subset.clone())
            .collect()
    }
}

/// The concurrency normal of an (m+1)-subset: the coefficient of `b_{i_k}`
/// in the bordered determinant is the k-th cofactor along its last column,
/// `(-1)^(k+m+1) det(A_S without row k)` with `k` 1-based. Every m-subset
/// of the rows must be invertible.
pub fn concurrency_normal(arr: &Arrangement, subset: &[usize]) -> Result<QVector> {
    let m = arr.dim();
    arr.check_subset(subset, Some(m + 1))?;
    let mut entries = vec![Rational::zero(); arr.len()];
    for k in 0..=m {
        let rows: Vec<QVector> = subset
            .iter()
            .enumerate()
            .filter(|&(pos, _)| pos != k)
            .map(|(_, &i)| arr.hyperplane(i).normal().clone())
            .collect();
        let minor = det(&QMatrix::from_rows(m, &rows)?)?;
        if minor.is_zero() {
            return Err(Error::NotMaximallyIndependent {
                witness: subset
                    .iter()
                    .enumerate()
                    .filter(|&(pos, _)| pos != k)
                    .map(|(_, &i)| i)
                    .collect(),
            });
        }
        entries[subset[k] - 1] = if (k + m) % 2 == 0 { minor } else { -minor };
    }
    Ok(QVector::new(entries))
}

/// All `C(n, m+1)` concurrency hyperplanes in lexicographic subset order.
pub fn concurrency_hyperplanes(arr: &Arrangement) -> Result<Vec<ConcurrencyHyperplane>> {
    (1..=arr.len())
        .combinations(arr.dim() + 1)
        .map(|subset| {
            let normal = concurrency_normal(arr, &subset)?;
            Ok(ConcurrencyHyperplane { subset, normal })
        })
        .collect()
}

fn offsets_vector(arr: &Arrangement) -> QVector {
    QVector::new(arr.hyperplanes().iter().map(|h| h.offset().clone()).collect())
}

/// The strict sign of every concurrency form at the arrangement's offset
/// vector. A zero sign means m+1 hyperplanes are concurrent and is reported
/// as a degeneracy.
pub fn cone_signature(arr: &Arrangement) -> Result<ConeSignature> {
    let b = offsets_vector(arr);
    let mut signs = BTreeMap::new();
    for hyperplane in concurrency_hyperplanes(arr)? {
        match Sign::of(&hyperplane.normal.dot(&b)) {
            Some(sign) => {
                signs.insert(hyperplane.subset, sign);
            }
            None => {
                return Err(Error::DegenerateOffsets {
                    subset: hyperplane.subset,
                })
            }
        }
    }
    Ok(ConeSignature { signs, b })
}

/// The m+1 vertices of the sub-arrangement of `subset` (each obtained by
/// dropping one hyperplane), or `None` when the sub-arrangement has no
/// nondegenerate simplex.
fn simplex_vertices(arr: &Arrangement, subset: &[usize]) -> Option<Vec<QVector>> {
    let mut vertices = Vec::with_capacity(subset.len());
    for drop in 0..subset.len() {
        let rest: Vec<usize> = subset
            .iter()
            .enumerate()
            .filter(|&(pos, _)| pos != drop)
            .map(|(_, &i)| i)
            .collect();
        vertices.push(arr.vertex_point(&rest).ok()?);
    }
    for [i, j] in (0..vertices.len()).array_combinations() {
        if vertices[i] == vertices[j] {
            return None;
        }
    }
    Some(vertices)
}

/// Whether no hyperplane outside `subset` strictly separates the given
/// points (a hyperplane meets the interior of their hull exactly when some
/// point lies strictly on each side).
fn nothing_separates(arr: &Arrangement, subset: &[usize], points: &[QVector]) -> bool {
    for j in 1..=arr.len() {
        if subset.contains(&j) {
            continue;
        }
        let h = arr.hyperplane(j);
        let values = points.iter().map(|p| h.normal().dot(p) - h.offset());
        let mut positive = false;
        let mut negative = false;
        for value in values {
            match Sign::of(&value) {
                Some(Sign::Plus) => positive = true,
                Some(Sign::Minus) => negative = true,
                None => {}
            }
        }
        if positive && negative {
            return false;
        }
    }
    true
}

/// The (m+1)-subsets whose sub-arrangement simplex survives as a region of
/// the full arrangement, in lexicographic order.
pub fn simplex_polyhedralities(arr: &Arrangement) -> Result<Vec<Vec<usize>>> {
    let subsets: Vec<Vec<usize>> = (1..=arr.len()).combinations(arr.dim() + 1).collect();
    let kept: Vec<Option<Vec<usize>>> = subsets
        .into_par_iter()
        .map(|subset| match simplex_vertices(arr, &subset) {
            Some(vertices) if nothing_separates(arr, &subset, &vertices) => Some(subset),
            _ => None,
        })
        .collect();
    Ok(kept.into_iter().flatten().collect())
}

/// Interior witness of the cone obtained by flipping exactly the sign at
/// `flip_idx` while keeping every other sign, if that open cone is
/// nonempty.
fn flip_cone_witness(
    dim: usize,
    forms: &[(Vec<usize>, QVector, Sign)],
    flip_idx: usize,
) -> Option<QVector> {
    let rows: Vec<(QVector, Rational, Sign)> = forms
        .iter()
        .enumerate()
        .map(|(i, (_, normal, sign))| {
            let target = if i == flip_idx { sign.flip() } else { *sign };
            (normal.clone(), Rational::zero(), target)
        })
        .collect();
    feasible_strict(dim, &rows)
}

fn signed_forms(arr: &Arrangement) -> Result<Vec<(Vec<usize>, QVector, Sign)>> {
    let signature = cone_signature(arr)?;
    concurrency_hyperplanes(arr)?
        .into_iter()
        .map(|h| {
            let sign = signature
                .sign(&h.subset)
                .expect("signature covers every subset");
            Ok((h.subset, h.normal, sign))
        })
        .collect()
}

/// The subsets whose concurrency hyperplane bounds the cone of the offset
/// vector along a co-dimension-one face: flipping that sign alone leaves a
/// nonempty open cone. Equals [`simplex_polyhedralities`] for valid
/// arrangements.
pub fn cone_facets(arr: &Arrangement) -> Result<Vec<Vec<usize>>> {
    let forms = signed_forms(arr)?;
    let n = arr.len();
    let kept: Vec<Option<Vec<usize>>> = (0..forms.len())
        .into_par_iter()
        .map(|idx| flip_cone_witness(n, &forms, idx).map(|_| forms[idx].0.clone()))
        .collect();
    Ok(kept.into_iter().flatten().collect())
}

/// Moves the offset vector across the facet of its cone named by `subset`,
/// returning the arrangement re-offset strictly inside the adjacent cone:
/// the sign of `subset` flips, every other sign is unchanged. The offset is
/// first reflected across the facet hyperplane; if the reflection overshoots
/// past some other hyperplane it is halved toward an interior witness of
/// the adjacent cone until all signs match.
pub fn cross_facet(arr: &Arrangement, subset: &[usize]) -> Result<Arrangement> {
    arr.check_subset(subset, Some(arr.dim() + 1))?;
    let forms = signed_forms(arr)?;
    let flip_idx = forms
        .iter()
        .position(|(s, _, _)| s == subset)
        .expect("validated subsets are enumerated");
    let witness = flip_cone_witness(arr.len(), &forms, flip_idx).ok_or(Error::NotAFacet {
        subset: subset.to_vec(),
    })?;
    let b = offsets_vector(arr);
    let facet_normal = &forms[flip_idx].1;
    let scale = rational(2, 1) * facet_normal.dot(&b) / facet_normal.dot(facet_normal);
    let mut candidate = b.sub(&facet_normal.scale(&scale));
    let on_target = |c: &QVector| {
        forms.iter().enumerate().all(|(i, (_, normal, sign))| {
            let want = if i == flip_idx { sign.flip() } else { *sign };
            Sign::of(&normal.dot(c)) == Some(want)
        })
    };
    let mut halvings = 0;
    while !on_target(&candidate) {
        halvings += 1;
        if halvings > 64 {
            candidate = witness.clone();
            break;
        }
        candidate = candidate.add(&witness).scale(&rational(1, 2));
    }
    debug_assert!(on_target(&candidate));
    arr.with_offsets(candidate.entries().to_vec())
}

/// The upper bound on the number of cones of a concurrency arrangement
/// with `n` hyperplanes in dimension `m`: the unbounded-region count for
/// `C(n, m+1)` hyperplanes in `Q^n`.
pub fn cone_count_bound(n: usize, m: usize) -> BigUint {
    let hyperplanes = binomial(n as u64, (m + 1) as u64);
    let hyperplanes: usize = hyperplanes
        .try_into()
        .expect("hyperplane count fits a machine word at supported sizes");
    let (_, _, unbounded) = count_formula(hyperplanes, n);
    unbounded
}
