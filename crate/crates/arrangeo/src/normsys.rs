//! Normal systems: maximally independent line systems through the origin,
//! normal simple bases, and convex positive bijections (CPBs).
//!
//! A normal system in `Q^m` is a set of `n` lines through the origin, each
//! carried by an antipodal vector pair `{v, -v}` and stored as one
//! normalized representative, such that every subset of at most `m` of the
//! vectors is linearly independent. The *signed vectors* of the system are
//! all `2n` choices `(i, sign)`.
//!
//! An antipodal bijection between two systems sends signed vectors to signed
//! vectors while commuting with negation; it is a *convex positive
//! bijection* when it preserves, for every basis made of `m` signed vectors
//! and every signed vector `u`, whether `u` is a strictly positive linear
//! combination of the basis. Two arrangements have translate-equivalent
//! combinatorics exactly when their normal systems are related by a CPB,
//! which makes [`is_cpb`] and [`find_cpb`] the decision procedures behind
//! the main classification results. In dimension 3 the search is powered by
//! the compatible-pairs graph (see [`crate::compat3d`]), which is a complete
//! invariant there.

use itertools::Itertools;
use num_traits::Zero;
use std::collections::{HashMap, HashSet};

use crate::arrangement::Arrangement;
pub use crate::arrangement::{is_maximally_independent, mli_violation};
use crate::exactmath::{solve_unique, QMatrix, QVector, Rational, Sign};
use crate::{Error, Result};

/// A signed vector of a normal system: 1-based line subscript plus the side
/// of the antipodal pair.
pub type SignedVector = (usize, Sign);

/// A set of lines through the origin with maximally independent normalized
/// representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSystem {
    dim: usize,
    reps: Vec<QVector>,
}

impl NormalSystem {
    /// Normalizes the representatives (integer entries, content 1, first
    /// nonzero entry positive) and validates the system: nonzero vectors of
    /// the right dimension, pairwise distinct lines, and maximal linear
    /// independence.
    pub fn new(dim: usize, reps: Vec<QVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::WrongDimension {
                what: "normal system",
                expected: 1,
                found: 0,
            });
        }
        let mut normalized = Vec::with_capacity(reps.len());
        for r in &reps {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
            if r.is_zero() {
                return Err(Error::ZeroVector);
            }
            normalized.push(r.normalized());
        }
        for [i, j] in (0..normalized.len()).array_combinations() {
            if normalized[i] == normalized[j] {
                return Err(Error::NotMaximallyIndependent {
                    witness: vec![i + 1, j + 1],
                });
            }
        }
        if let Some(witness) = mli_violation(&normalized, dim) {
            return Err(Error::NotMaximallyIndependent {
                witness: witness.into_iter().map(|i| i + 1).collect(),
            });
        }
        Ok(NormalSystem {
            dim,
            reps: normalized,
        })
    }

    /// The normal system of an arrangement: the lines spanned by its
    /// hyperplane normals, in subscript order.
    pub fn from_arrangement(arr: &Arrangement) -> Result<Self> {
        Self::new(
            arr.dim(),
            arr.hyperplanes().iter().map(|h| h.normal().clone()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of lines `n`.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// The normalized representative of the line with 1-based subscript `i`.
    ///
    /// # Panics
    /// Panics if `i` is outside `1..=len()`.
    pub fn rep(&self, i: usize) -> &QVector {
        assert!(
            (1..=self.len()).contains(&i),
            "line subscript {i} outside 1..={}",
            self.len()
        );
        &self.reps[i - 1]
    }

    pub fn reps(&self) -> &[QVector] {
        &self.reps
    }

    /// Materializes a signed vector.
    pub fn vector(&self, v: SignedVector) -> QVector {
        let (i, s) = v;
        match s {
            Sign::Plus => self.rep(i).clone(),
            Sign::Minus => self.rep(i).neg(),
        }
    }

    /// All `2n` signed vectors in `(subscript, +/-)` lexicographic order.
    pub fn signed_vectors(&self) -> impl Iterator<Item = SignedVector> + '_ {
        (1..=self.len()).flat_map(|i| [(i, Sign::Plus), (i, Sign::Minus)])
    }

    /// Whether `base` (exactly `m` signed vectors) is a *normal simple
    /// base*: a linear basis such that no other signed vector of the system
    /// is a non-negative linear combination of it.
    pub fn is_normal_simple_base(&self, base: &[SignedVector]) -> Result<bool> {
        if base.len() != self.dim {
            return Err(Error::InvalidSubset {
                subset: base.iter().map(|&(i, _)| i).collect(),
                reason: format!("a base needs exactly {} signed vectors", self.dim),
            });
        }
        for &(i, _) in base {
            if i < 1 || i > self.len() {
                return Err(Error::InvalidSubset {
                    subset: base.iter().map(|&(i, _)| i).collect(),
                    reason: format!("line subscripts must lie in 1..={}", self.len()),
                });
            }
        }
        let vectors: Vec<QVector> = base.iter().map(|&v| self.vector(v)).collect();
        let matrix = QMatrix::from_cols(self.dim, &vectors)?;
        if crate::exactmath::rank(&matrix) < self.dim {
            return Ok(false);
        }
        for u in self.signed_vectors() {
            if base.contains(&u) {
                continue;
            }
            let coeffs = solve_unique(&matrix, &self.vector(u))?;
            if coeffs.iter().all(|c| c >= &Rational::zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Coefficients of `u` in the given basis when they are all strictly
/// positive, `None` otherwise.
///
/// Errors if the base is not square with `u`'s dimension or is singular.
pub fn positive_combo(base: &[QVector], u: &QVector) -> Result<Option<Vec<Rational>>> {
    let matrix = QMatrix::from_cols(u.dim(), base)?;
    let coeffs = solve_unique(&matrix, u)?;
    if coeffs.iter().all(|c| c > &Rational::zero()) {
        Ok(Some(coeffs.entries().to_vec()))
    } else {
        Ok(None)
    }
}

/// A bijection between the signed vectors of two equal-size normal systems
/// commuting with negation: line `i` maps to line `perm[i-1]`, with the
/// representative negated when `flips[i-1]` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodalMap {
    perm: Vec<usize>,
    flips: Vec<bool>,
}

impl AntipodalMap {
    /// Errors if `perm` is not a permutation of `1..=n` or the flip list has
    /// a different length.
    pub fn new(perm: Vec<usize>, flips: Vec<bool>) -> Result<Self> {
        let n = perm.len();
        if flips.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: flips.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p < 1 || p > n || seen[p - 1] {
                return Err(Error::NotAPermutation { perm: perm.clone(), n });
            }
            seen[p - 1] = true;
        }
        Ok(AntipodalMap { perm, flips })
    }

    pub fn identity(n: usize) -> Self {
        AntipodalMap {
            perm: (1..=n).collect(),
            flips: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// 1-based line images: line `i` maps to `perm()[i-1]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Whether line `i`'s representative is negated: `flips()[i-1]`.
    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    /// Image of a signed vector.
    pub fn image(&self, v: SignedVector) -> SignedVector {
        let (i, s) = v;
        let j = self.perm[i - 1];
        (j, if self.flips[i - 1] { s.flip() } else { s })
    }

    /// The map with every image negated (also a CPB whenever this one is).
    pub fn negated(&self) -> Self {
        AntipodalMap {
            perm: self.perm.clone(),
            flips: self.flips.iter().map(|f| !f).collect(),
        }
    }

    /// Composition: first this map, then `other`.
    pub fn then(&self, other: &AntipodalMap) -> Result<AntipodalMap> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let perm = self.perm.iter().map(|&j| other.perm[j - 1]).collect();
        let flips = self
            .perm
            .iter()
            .zip(&self.flips)
            .map(|(&j, &f)| f != other.flips[j - 1])
            .collect();
        Ok(AntipodalMap { perm, flips })
    }

    pub fn inverse(&self) -> AntipodalMap {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut flips = vec![false; n];
        for i in 1..=n {
            let j = self.perm[i - 1];
            perm[j - 1] = i;
            flips[j - 1] = self.flips[i - 1];
        }
        AntipodalMap { perm, flips }
    }
}

/// Outcome of a CPB check: either the map preserves positive-combination
/// membership everywhere, or a witnessing basis and signed vector where the
/// two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CpbVerdict {
    Holds,
    Fails {
        base: Vec<SignedVector>,
        vector: SignedVector,
    },
}

impl CpbVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CpbVerdict::Holds)
    }
}

fn check_same_shape(ns1: &NormalSystem, ns2: &NormalSystem) -> Result<()> {
    if ns1.dim() != ns2.dim() {
        return Err(Error::WrongDimension {
            what: "normal system",
            expected: ns1.dim(),
            found: ns2.dim(),
        });
    }
    if ns1.len() != ns2.len() {
        return Err(Error::DimensionMismatch {
            expected: ns1.len(),
            found: ns2.len(),
        });
    }
    Ok(())
}

/// Whether `map` is a convex positive bijection from `ns1` to `ns2`: for
/// every basis `B` of `m` signed vectors of `ns1` (enumerated modulo global
/// negation of `B`, which yields an equivalent condition) and every signed
/// vector `u`, `u` is a strictly positive combination of `B` exactly when
/// the image of `u` is one of the image of `B`. On failure the first
/// witnessing `(B, u)` in enumeration order is returned.
pub fn is_cpb(ns1: &NormalSystem, ns2: &NormalSystem, map: &AntipodalMap) -> Result<CpbVerdict> {
    check_same_shape(ns1, ns2)?;
    let n = ns1.len();
    let m = ns1.dim();
    if map.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: map.len(),
        });
    }
    for lines in (1..=n).combinations(m) {
        // Fix the first sign to + : (B, u) and (-B, u) impose equivalent
        // conditions because the -B cases are covered with u negated.
        for bits in 0..(1u32 << (m - 1)) {
            let base: Vec<SignedVector> = lines
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let s = if k > 0 && (bits >> (k - 1)) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    };
                    (i, s)
                })
                .collect();
            let base_vecs: Vec<QVector> = base.iter().map(|&v| ns1.vector(v)).collect();
            let image_vecs: Vec<QVector> = base
                .iter()
                .map(|&v| ns2.vector(map.image(v)))
                .collect();
            for u in ns1.signed_vectors() {
                let inside = positive_combo(&base_vecs, &ns1.vector(u))?.is_some();
                let image_inside =
                    positive_combo(&image_vecs, &ns2.vector(map.image(u)))?.is_some();
                if inside != image_inside {
                    return Ok(CpbVerdict::Fails { base, vector: u });
                }
            }
        }
    }
    Ok(CpbVerdict::Holds)
}

/// All positive-combination relations of a system: the set of
/// `(lines, signs, u)` with `lines` a sorted `m`-subset, `signs` aligned to
/// it (all `2^m` choices), and `u` a signed vector strictly inside the
/// positive cone of that signed basis.
type Relation = (Vec<usize>, Vec<Sign>, usize, Sign);

fn relation_set(ns: &NormalSystem) -> Result<HashSet<Relation>> {
    let n = ns.len();
    let m = ns.dim();
    let mut rel = HashSet::new();
    for lines in (1..=n).combinations(m) {
        for bits in 0..(1u32 << m) {
            let signs: Vec<Sign> = (0..m)
                .map(|k| {
                    if (bits >> k) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect();
            let base_vecs: Vec<QVector> = lines
                .iter()
                .zip(&signs)
                .map(|(&i, &s)| ns.vector((i, s)))
                .collect();
            for (u, us) in ns.signed_vectors() {
                if positive_combo(&base_vecs, &ns.vector((u, us)))?.is_some() {
                    rel.insert((lines.clone(), signs.clone(), u, us));
                }
            }
        }
    }
    Ok(rel)
}

/// How often each signed vector lies strictly inside a signed-basis cone —
/// a CPB invariant used to filter candidate images.
fn cone_counts(rel: &HashSet<Relation>, n: usize) -> HashMap<SignedVector, usize> {
    let mut counts: HashMap<SignedVector, usize> = HashMap::new();
    for i in 1..=n {
        counts.insert((i, Sign::Plus), 0);
        counts.insert((i, Sign::Minus), 0);
    }
    for (_, _, u, us) in rel {
        *counts.get_mut(&(*u, *us)).expect("all signed vectors preseeded") += 1;
    }
    counts
}

/// Partial-assignment state of the backtracking search.
struct CpbSearch<'a> {
    m: usize,
    rel1: &'a HashSet<Relation>,
    rel2: &'a HashSet<Relation>,
    /// 0-based line -> (0-based image line, flip).
    assign: Vec<Option<(usize, bool)>>,
    used: Vec<bool>,
    assigned: Vec<usize>, // 1-based lines in assignment order
}

impl CpbSearch<'_> {
    /// Translates a relation of system 1 through the partial map. All lines
    /// involved must be assigned.
    fn translate(&self, rel: &Relation) -> Relation {
        let (lines, signs, u, us) = rel;
        let mut mapped: Vec<(usize, Sign)> = lines
            .iter()
            .zip(signs)
            .map(|(&l, &s)| {
                let (img, flip) = self.assign[l - 1].expect("line must be assigned");
                (img + 1, if flip { s.flip() } else { s })
            })
            .collect();
        mapped.sort_unstable_by_key(|&(l, _)| l);
        let (img_u, flip_u) = self.assign[u - 1].expect("line must be assigned");
        (
            mapped.iter().map(|&(l, _)| l).collect(),
            mapped.iter().map(|&(_, s)| s).collect(),
            img_u + 1,
            if flip_u { us.flip() } else { *us },
        )
    }

    /// Checks every relation triple that became fully assigned when `fresh`
    /// was added: bases containing `fresh` against all assigned signed
    /// vectors, and bases avoiding it against `fresh`'s two signed vectors.
    fn consistent_after(&self, fresh: usize) -> bool {
        let m = self.m;
        if self.assigned.len() < m {
            return true;
        }
        let others: Vec<usize> = self
            .assigned
            .iter()
            .copied()
            .filter(|&l| l != fresh)
            .collect();
        let sign_patterns: Vec<Vec<Sign>> = (0..(1u32 << m))
            .map(|bits| {
                (0..m)
                    .map(|k| {
                        if (bits >> k) & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect()
            })
            .collect();
        let check = |lines: &[usize], us: &[SignedVector]| -> bool {
            let mut sorted = lines.to_vec();
            sorted.sort_unstable();
            for signs in &sign_patterns {
                for &(u, usign) in us {
                    let key = (sorted.clone(), signs.clone(), u, usign);
                    let image = self.translate(&key);
                    if self.rel1.contains(&key) != self.rel2.contains(&image) {
                        return false;
                    }
                }
            }
            true
        };
        // Bases containing the fresh line, probed with every assigned signed
        // vector.
        let all_signed: Vec<SignedVector> = self
            .assigned
            .iter()
            .flat_map(|&l| [(l, Sign::Plus), (l, Sign::Minus)])
            .collect();
        for rest in others.iter().copied().combinations(m - 1) {
            let mut lines = rest;
            lines.push(fresh);
            if !check(&lines, &all_signed) {
                return false;
            }
        }
        // Bases avoiding the fresh line, probed with its two signed vectors.
        let fresh_signed = [(fresh, Sign::Plus), (fresh, Sign::Minus)];
        for lines in others.iter().copied().combinations(m) {
            if !check(&lines, &fresh_signed) {
                return false;
            }
        }
        true
    }

    fn search(
        &mut self,
        order: &[usize],
        candidates: &HashMap<usize, Vec<(usize, bool)>>,
        depth: usize,
    ) -> Option<(Vec<usize>, Vec<bool>)> {
        if depth == order.len() {
            let perm = self
                .assign
                .iter()
                .map(|a| a.expect("full assignment").0 + 1)
                .collect();
            let flips = self.assign.iter().map(|a| a.expect("full").1).collect();
            return Some((perm, flips));
        }
        let line = order[depth];
        for &(img, flip) in &candidates[&line] {
            if self.used[img] {
                continue;
            }
            self.assign[line - 1] = Some((img, flip));
            self.used[img] = true;
            self.assigned.push(line);
            if self.consistent_after(line) {
                if let Some(found) = self.search(order, candidates, depth + 1) {
                    return Some(found);
                }
            }
            self.assigned.pop();
            self.used[img] = false;
            self.assign[line - 1] = None;
        }
        None
    }
}

/// Searches for a convex positive bijection from `ns1` to `ns2`.
///
/// In dimension 3 (with enough lines for bases to exist) the compatible-pairs
/// graph is a complete invariant, so the search runs over graph isomorphisms
/// induced by antipodal bijections, pruned by degree data. Otherwise a
/// backtracking search over line images and flips prunes with positive-cone
/// membership counts and incremental relation checks. Either way a returned
/// map is certified by [`is_cpb`] before being handed out; `None` means no
/// CPB exists.
pub fn find_cpb(ns1: &NormalSystem, ns2: &NormalSystem) -> Result<Option<AntipodalMap>> {
    check_same_shape(ns1, ns2)?;
    let n = ns1.len();
    let m = ns1.dim();
    if n == 0 {
        return Ok(Some(AntipodalMap::identity(0)));
    }
    if m == 3 && n > m {
        let g1 = crate::compat3d::build_graph(ns1)?;
        let g2 = crate::compat3d::build_graph(ns2)?;
        if g1.degree_profile() != g2.degree_profile() {
            return Ok(None);
        }
        let found = crate::compat3d::find_induced_isomorphism(&g1, &g2, |map| {
            matches!(is_cpb(ns1, ns2, map), Ok(CpbVerdict::Holds))
        });
        return Ok(found);
    }

    let rel1 = relation_set(ns1)?;
    let rel2 = relation_set(ns2)?;
    if rel1.len() != rel2.len() {
        return Ok(None);
    }
    let counts1 = cone_counts(&rel1, n);
    let counts2 = cone_counts(&rel2, n);
    let mut candidates: HashMap<usize, Vec<(usize, bool)>> = HashMap::new();
    for i in 1..=n {
        let mut list = Vec::new();
        for j in 1..=n {
            for flip in [false, true] {
                let (tp, tm) = if flip {
                    ((j, Sign::Minus), (j, Sign::Plus))
                } else {
                    ((j, Sign::Plus), (j, Sign::Minus))
                };
                if counts1[&(i, Sign::Plus)] == counts2[&tp]
                    && counts1[&(i, Sign::Minus)] == counts2[&tm]
                {
                    list.push((j - 1, flip));
                }
            }
        }
        if list.is_empty() {
            return Ok(None);
        }
        candidates.insert(i, list);
    }
    // Most constrained line first; ties by subscript for determinism.
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|i| (candidates[i].len(), *i));

    let run = |first_choice: Option<(usize, bool)>| -> Option<(Vec<usize>, Vec<bool>)> {
        let mut state = CpbSearch {
            m,
            rel1: &rel1,
            rel2: &rel2,
            assign: vec![None; n],
            used: vec![false; n],
            assigned: Vec::new(),
        };
        match first_choice {
            None => state.search(&order, &candidates, 0),
            Some((img, flip)) => {
                let line = order[0];
                state.assign[line - 1] = Some((img, flip));
                state.used[img] = true;
                state.assigned.push(line);
                if state.consistent_after(line) {
                    state.search(&order, &candidates, 1)
                } else {
                    None
                }
            }
        }
    };
    // Parallel fan-out over the first line's candidates; `find_map_first`
    // keeps the result deterministic.
    use rayon::prelude::*;
    let first_line = order[0];
    let found = candidates[&first_line]
        .par_iter()
        .find_map_first(|&choice| run(Some(choice)));
    match found {
        None => Ok(None),
        Some((perm, flips)) => {
            let map = AntipodalMap::new(perm, flips)?;
            debug_assert!(is_cpb(ns1, ns2, &map)?.holds());
            Ok(Some(map))
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::exactmath::{integer, rational};

    fn qv(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    /// The six-line 3D system whose compatible-pairs graph has vertices of
    /// degree 1 and 5.
    pub(crate) fn system_one() -> NormalSystem {
        NormalSystem::new(
            3,
            vec![
                qv(&[1, 0, 0]),
                qv(&[0, 1, 0]),
                qv(&[0, 0, 1]),
                qv(&[1, 2, 2]),
                qv(&[1, 4, 8]),
                qv(&[6, 6, 7]),
            ],
        )
        .unwrap()
    }

    /// The six-line companion system distinguishable from [`system_one`]
    /// only through cone combinatorics.
    pub(crate) fn system_two() -> NormalSystem {
        NormalSystem::new(
            3,
            vec![
                qv(&[1, 0, 0]),
                qv(&[0, 1, 0]),
                qv(&[0, 0, 1]),
                qv(&[1, 2, 2]),
                qv(&[1, 4, 8]),
                qv(&[2, 6, 9]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn constructor_normalizes_and_validates() {
        let ns = NormalSystem::new(
            3,
            vec![
                qv(&[1, 0, 0]),
                QVector::new(vec![rational(1, 3), rational(2, 3), rational(2, 3)]),
            ],
        )
        .unwrap();
        assert_eq!(ns.rep(2), &qv(&[1, 2, 2]));
        // Proportional vectors describe the same line.
        assert!(matches!(
            NormalSystem::new(3, vec![qv(&[1, 0, 0]), qv(&[2, 0, 0])]),
            Err(Error::NotMaximallyIndependent { witness }) if witness == vec![1, 2]
        ));
        // Distinct lines that are not maximally independent.
        assert!(matches!(
            NormalSystem::new(3, vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[1, 1, 0])]),
            Err(Error::NotMaximallyIndependent { witness }) if witness == vec![1, 2, 3]
        ));
        assert!(matches!(
            NormalSystem::new(2, vec![QVector::zeros(2)]),
            Err(Error::ZeroVector)
        ));
        // The standard basis plus the all-ones vector is maximally
        // independent in dimension 3.
        assert!(NormalSystem::new(
            3,
            vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1]), qv(&[1, 1, 1])]
        )
        .is_ok());
        assert!(is_maximally_independent(system_one().reps(), 3));
    }

    #[test]
    fn extraction_ignores_hyperplane_scaling() {
        let arr = Arrangement::new(
            2,
            vec![
                Hyperplane::new(qv(&[1, 0]), integer(0)).unwrap(),
                Hyperplane::new(qv(&[0, -3]), integer(2)).unwrap(),
                Hyperplane::new(qv(&[1, 1]), integer(1)).unwrap(),
            ],
        )
        .unwrap();
        let ns = NormalSystem::from_arrangement(&arr).unwrap();
        assert_eq!(ns.reps(), &[qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]);
    }

    #[test]
    fn normal_simple_base_examples() {
        let ns = NormalSystem::new(2, vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]).unwrap();
        // (1,1) is a positive combination of the standard basis.
        assert!(!ns
            .is_normal_simple_base(&[(1, Sign::Plus), (2, Sign::Plus)])
            .unwrap());
        // {(1,0), (0,-1)}: every other signed vector needs a negative
        // coefficient somewhere.
        assert!(ns
            .is_normal_simple_base(&[(1, Sign::Plus), (2, Sign::Minus)])
            .unwrap());
        // An antipodal pair is not a basis.
        assert!(!ns
            .is_normal_simple_base(&[(1, Sign::Plus), (1, Sign::Minus)])
            .unwrap());
        assert!(ns.is_normal_simple_base(&[(1, Sign::Plus)]).is_err());
        assert!(ns
            .is_normal_simple_base(&[(1, Sign::Plus), (7, Sign::Plus)])
            .is_err());
    }

    #[test]
    fn positive_combo_reference_values() {
        let u = system_one();
        let base: Vec<QVector> = (1..=3).map(|i| u.rep(i).clone()).collect();
        // 3 u4 = u1 + 2 u2 + 2 u3, on normalized representatives: u4
        // normalizes to 3 u4, so the coefficients triple.
        let combo = positive_combo(&base, u.rep(4)).unwrap().unwrap();
        assert_eq!(combo, vec![integer(1), integer(2), integer(2)]);
        assert!(positive_combo(&base, &u.rep(4).neg()).unwrap().is_none());
        let v = system_two();
        let vbase: Vec<QVector> = (1..=3).map(|i| v.rep(i).clone()).collect();
        // 11 v6 = 2 v1 + 6 v2 + 9 v3 on normalized representatives.
        assert_eq!(
            positive_combo(&vbase, v.rep(6)).unwrap().unwrap(),
            vec![integer(2), integer(6), integer(9)]
        );
        // Singular base.
        assert!(positive_combo(&[qv(&[1, 0]), qv(&[2, 0])], &qv(&[1, 1])).is_err());
        // Negating base and target together changes nothing.
        let neg_base: Vec<QVector> = base.iter().map(QVector::neg).collect();
        assert_eq!(
            positive_combo(&base, u.rep(5)).unwrap(),
            positive_combo(&neg_base, &u.rep(5).neg()).unwrap()
        );
    }

    #[test]
    fn antipodal_map_algebra() {
        let map = AntipodalMap::new(vec![2, 3, 1], vec![true, false, true]).unwrap();
        assert_eq!(map.image((1, Sign::Plus)), (2, Sign::Minus));
        assert_eq!(map.image((2, Sign::Minus)), (3, Sign::Minus));
        let inv = map.inverse();
        for i in 1..=3 {
            for s in [Sign::Plus, Sign::Minus] {
                assert_eq!(inv.image(map.image((i, s))), (i, s));
            }
        }
        let composed = map.then(&inv).unwrap();
        assert_eq!(composed, AntipodalMap::identity(3));
        assert!(matches!(
            AntipodalMap::new(vec![1, 1], vec![false, false]),
            Err(Error::NotAPermutation { .. })
        ));
        assert!(AntipodalMap::new(vec![1, 3], vec![false, false]).is_err());
        assert!(AntipodalMap::new(vec![1, 2], vec![false]).is_err());
    }

    #[test]
    fn identity_is_a_cpb() {
        let u = system_one();
        let verdict = is_cpb(&u, &u, &AntipodalMap::identity(6)).unwrap();
        assert!(verdict.holds());
    }

    #[test]
    fn two_lines_in_the_plane_are_always_cpb_related() {
        let a = NormalSystem::new(2, vec![qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        let b = NormalSystem::new(2, vec![qv(&[2, 1]), qv(&[1, -3])]).unwrap();
        for flips in [[false, false], [true, false], [false, true], [true, true]] {
            let map = AntipodalMap::new(vec![1, 2], flips.to_vec()).unwrap();
            assert!(is_cpb(&a, &b, &map).unwrap().holds());
        }
    }

    #[test]
    fn subscript_preserving_maps_between_the_reference_pair_fail() {
        let u = system_one();
        let v = system_two();
        for bits in 0u32..64 {
            let flips: Vec<bool> = (0..6).map(|k| (bits >> k) & 1 == 1).collect();
            let map = AntipodalMap::new((1..=6).collect(), flips).unwrap();
            let verdict = is_cpb(&u, &v, &map).unwrap();
            assert!(
                !verdict.holds(),
                "flip pattern {bits:06b} should not give a CPB"
            );
        }
    }

    /// The copy of `ns` with line `i` stored at position `perm[i-1]`; the
    /// flip-free map with that permutation is a CPB by construction.
    pub(crate) fn permuted_copy(ns: &NormalSystem, perm: &[usize]) -> NormalSystem {
        let mut images = vec![QVector::zeros(ns.dim()); ns.len()];
        for i in 1..=ns.len() {
            images[perm[i - 1] - 1] = ns.rep(i).clone();
        }
        NormalSystem::new(ns.dim(), images).unwrap()
    }

    #[test]
    fn negating_a_cpb_gives_a_cpb() {
        let u = system_one();
        let perm = vec![3, 1, 2, 4, 6, 5];
        let relabeled = permuted_copy(&u, &perm);
        let map = AntipodalMap::new(perm, vec![false; 6]).unwrap();
        assert!(is_cpb(&u, &relabeled, &map).unwrap().holds());
        assert!(is_cpb(&u, &relabeled, &map.negated()).unwrap().holds());
        // Composition with the inverse returns home.
        let back = map.then(&map.inverse()).unwrap();
        assert!(is_cpb(&u, &u, &back).unwrap().holds());
    }

    #[test]
    fn cpb_failure_reports_a_witness() {
        let u = system_one();
        let v = system_two();
        let map = AntipodalMap::identity(6);
        match is_cpb(&u, &v, &map).unwrap() {
            CpbVerdict::Holds => panic!("the reference pair must not be CPB-related"),
            CpbVerdict::Fails { base, vector } => {
                // Re-check the witness by hand.
                let base_vecs: Vec<QVector> = base.iter().map(|&b| u.vector(b)).collect();
                let image_vecs: Vec<QVector> =
                    base.iter().map(|&b| v.vector(map.image(b))).collect();
                let p1 = positive_combo(&base_vecs, &u.vector(vector))
                    .unwrap()
                    .is_some();
                let p2 = positive_combo(&image_vecs, &v.vector(map.image(vector)))
                    .unwrap()
                    .is_some();
                assert_ne!(p1, p2);
            }
        }
    }

    #[test]
    fn find_cpb_recovers_a_relabeling() {
        let u = system_one();
        let relabeled = permuted_copy(&u, &[4, 2, 6, 1, 3, 5]);
        let found = find_cpb(&u, &relabeled).unwrap().expect("a CPB exists");
        assert!(is_cpb(&u, &relabeled, &found).unwrap().holds());
    }

    #[test]
    fn find_cpb_separates_the_reference_pair() {
        assert_eq!(find_cpb(&system_one(), &system_two()).unwrap(), None);
    }

    #[test]
    fn find_cpb_always_succeeds_in_the_plane() {
        let a = NormalSystem::new(
            2,
            vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1]), qv(&[1, -1]), qv(&[2, 1])],
        )
        .unwrap();
        let b = NormalSystem::new(
            2,
            vec![qv(&[3, 1]), qv(&[1, 5]), qv(&[1, -2]), qv(&[0, 1]), qv(&[7, -3])],
        )
        .unwrap();
        let map = find_cpb(&a, &b).unwrap().expect("planar systems of equal size");
        assert!(is_cpb(&a, &b, &map).unwrap().holds());
    }

    #[test]
    fn shape_mismatches_are_reported() {
        let a = NormalSystem::new(2, vec![qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        let b = NormalSystem::new(3, vec![qv(&[1, 0, 0])]).unwrap();
        assert!(is_cpb(&a, &b, &AntipodalMap::identity(2)).is_err());
        let c = NormalSystem::new(2, vec![qv(&[1, 0])]).unwrap();
        assert!(find_cpb(&a, &c).is_err());
        assert!(is_cpb(&a, &a, &AntipodalMap::identity(3)).is_err());
    }
}
