//! The compatible-pairs graph of a three-dimensional normal system.
//!
//! For a normal system in `Q^3`, take as graph vertices all unordered pairs
//! `{x, y}` of signed vectors lying on two *distinct* lines (`2n(n-1)`
//! vertices). Two pairs `{x1, y1}` and `{x2, y2}` are *compatible* — joined
//! by an edge — when some vector is simultaneously a strictly positive
//! combination of `x1, y1` and of `x2, y2`; equivalently, when the linear
//! system `a x1 + b y1 - c x2 - d y2 = 0` has a solution with
//! `a, b, c, d > 0`.
//!
//! The resulting graph, considered together with the pairing of antipodal
//! signed vectors, is a complete invariant for convex positive bijections in
//! dimension 3: an antipodal bijection is a CPB exactly when it induces a
//! graph isomorphism. [`find_induced_isomorphism`] searches for such induced
//! isomorphisms and powers [`crate::normsys::find_cpb`] in dimension 3.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::exactmath::{integer, kernel_basis, QMatrix, QVector, Rational, Sign};
use crate::normsys::{AntipodalMap, NormalSystem, SignedVector};
use crate::regions::feasible_strict;
use crate::{Error, Result};

/// An unordered pair of signed vectors on two distinct lines, stored with
/// the smaller line subscript first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    first: SignedVector,
    second: SignedVector,
}

impl Pair {
    /// Canonicalizes the pair; the two signed vectors must use distinct
    /// lines (a vector may not be paired with itself or its antipode).
    pub fn new(a: SignedVector, b: SignedVector) -> Result<Pair> {
        if a.0 == b.0 {
            return Err(Error::InvalidSubset {
                subset: vec![a.0, b.0],
                reason: "a pair uses two distinct lines".into(),
            });
        }
        let (first, second) = if a.0 < b.0 { (a, b) } else { (b, a) };
        Ok(Pair { first, second })
    }

    pub fn first(&self) -> SignedVector {
        self.first
    }

    pub fn second(&self) -> SignedVector {
        self.second
    }

    /// The pair of antipodes `{-x, -y}`.
    pub fn antipode(&self) -> Pair {
        Pair {
            first: (self.first.0, self.first.1.flip()),
            second: (self.second.0, self.second.1.flip()),
        }
    }

    /// Image under an antipodal bijection (line images keep the pair's
    /// lines distinct).
    pub fn map_through(&self, map: &AntipodalMap) -> Pair {
        Pair::new(map.image(self.first), map.image(self.second))
            .expect("a bijection keeps the lines distinct")
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}{},{}{}}}",
            self.first.1.as_char(),
            self.first.0,
            self.second.1.as_char(),
            self.second.0
        )
    }
}

/// The compatible-pairs graph of a 3-dimensional normal system.
#[derive(Debug, Clone)]
pub struct CompatGraph {
    lines: usize,
    vertices: Vec<Pair>,
    index: HashMap<Pair, usize>,
    adjacency: Vec<Vec<bool>>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl CompatGraph {
    /// Number of lines `n` of the underlying system.
    pub fn lines(&self) -> usize {
        self.lines
    }

    /// All `2n(n-1)` vertices in `(i, sign, j, sign)` lexicographic order.
    pub fn vertices(&self) -> &[Pair] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Position of a pair in [`Self::vertices`].
    pub fn vertex_index(&self, p: &Pair) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Degrees aligned with [`Self::vertices`].
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, p: &Pair) -> Result<usize> {
        let idx = self.vertex_index(p).ok_or_else(|| Error::InvalidSubset {
            subset: vec![p.first.0, p.second.0],
            reason: "pair is not a vertex of this graph".into(),
        })?;
        Ok(self.degrees[idx])
    }

    /// Adjacency by vertex indices.
    ///
    /// # Panics
    /// Panics if an index is out of range.
    pub fn edge_between(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn has_edge(&self, p: &Pair, q: &Pair) -> Result<bool> {
        let a = self.vertex_index(p).ok_or_else(|| Error::InvalidSubset {
            subset: vec![p.first.0, p.second.0],
            reason: "pair is not a vertex of this graph".into(),
        })?;
        let b = self.vertex_index(q).ok_or_else(|| Error::InvalidSubset {
            subset: vec![q.first.0, q.second.0],
            reason: "pair is not a vertex of this graph".into(),
        })?;
        Ok(self.adjacency[a][b])
    }

    pub fn neighbors(&self, p: &Pair) -> Result<Vec<Pair>> {
        let a = self.vertex_index(p).ok_or_else(|| Error::InvalidSubset {
            subset: vec![p.first.0, p.second.0],
            reason: "pair is not a vertex of this graph".into(),
        })?;
        Ok((0..self.vertices.len())
            .filter(|&b| self.adjacency[a][b])
            .map(|b| self.vertices[b])
            .collect())
    }

    /// Edges as vertex pairs in lexicographic index order.
    pub fn edges(&self) -> Vec<(Pair, Pair)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for a in 0..self.vertices.len() {
            for b in (a + 1)..self.vertices.len() {
                if self.adjacency[a][b] {
                    out.push((self.vertices[a], self.vertices[b]));
                }
            }
        }
        out
    }

    /// The sorted multiset of vertex degrees.
    pub fn degree_profile(&self) -> Vec<usize> {
        let mut profile = self.degrees.clone();
        profile.sort_unstable();
        profile
    }

    /// For each signed vector, the sorted multiset of degrees of the
    /// vertices containing it — invariant data used to prune isomorphism
    /// searches.
    fn signed_vector_fingerprints(&self) -> HashMap<SignedVector, Vec<usize>> {
        let mut fp: HashMap<SignedVector, Vec<usize>> = HashMap::new();
        for i in 1..=self.lines {
            fp.insert((i, Sign::Plus), Vec::new());
            fp.insert((i, Sign::Minus), Vec::new());
        }
        for (idx, p) in self.vertices.iter().enumerate() {
            let d = self.degrees[idx];
            fp.get_mut(&p.first).expect("preseeded").push(d);
            fp.get_mut(&p.second).expect("preseeded").push(d);
        }
        for list in fp.values_mut() {
            list.sort_unstable();
        }
        fp
    }
}

/// Whether some vector is a strictly positive combination of both pairs,
/// computed from the sign structure of the kernel of
/// `[x1  y1  -x2  -y2]`.
fn compatible_vectors(x1: &QVector, y1: &QVector, x2: &QVector, y2: &QVector) -> bool {
    let columns = [
        x1.clone(),
        y1.clone(),
        x2.neg(),
        y2.neg(),
    ];
    let matrix =
        QMatrix::from_cols(3, &columns).expect("vectors of a 3D system have dimension 3");
    let kernel = kernel_basis(&matrix);
    if kernel.is_empty() {
        return false;
    }
    // Is some kernel combination strictly positive in all four coordinates?
    let rows: Vec<(QVector, Rational, Sign)> = (0..4)
        .map(|c| {
            let coeffs: Vec<Rational> = kernel.iter().map(|g| g[c].clone()).collect();
            (QVector::new(coeffs), integer(0), Sign::Plus)
        })
        .collect();
    feasible_strict(kernel.len(), &rows).is_some()
}

fn require_three_dimensional(ns: &NormalSystem) -> Result<()> {
    if ns.dim() != 3 {
        return Err(Error::WrongDimension {
            what: "compatible-pairs graph",
            expected: 3,
            found: ns.dim(),
        });
    }
    Ok(())
}

fn check_pair_range(ns: &NormalSystem, p: &Pair) -> Result<()> {
    for line in [p.first.0, p.second.0] {
        if line < 1 || line > ns.len() {
            return Err(Error::InvalidSubset {
                subset: vec![p.first.0, p.second.0],
                reason: format!("line subscripts must lie in 1..={}", ns.len()),
            });
        }
    }
    Ok(())
}

/// Whether two distinct pairs of a 3-dimensional system are compatible. The
/// result is symmetric in the two pairs and does not depend on the scaling
/// of the underlying vectors.
pub fn are_compatible(ns: &NormalSystem, p1: &Pair, p2: &Pair) -> Result<bool> {
    require_three_dimensional(ns)?;
    check_pair_range(ns, p1)?;
    check_pair_range(ns, p2)?;
    if p1 == p2 {
        return Err(Error::InvalidSubset {
            subset: vec![p1.first.0, p1.second.0],
            reason: "compatibility is a relation between distinct pairs".into(),
        });
    }
    Ok(compatible_vectors(
        &ns.vector(p1.first),
        &ns.vector(p1.second),
        &ns.vector(p2.first),
        &ns.vector(p2.second),
    ))
}

/// Builds the full compatible-pairs graph, testing all vertex pairs (in
/// parallel) with exact arithmetic.
pub fn build_graph(ns: &NormalSystem) -> Result<CompatGraph> {
    require_three_dimensional(ns)?;
    let n = ns.len();
    let mut vertices = Vec::with_capacity(2 * n * n.saturating_sub(1));
    for i in 1..=n {
        for s in [Sign::Plus, Sign::Minus] {
            for j in (i + 1)..=n {
                for t in [Sign::Plus, Sign::Minus] {
                    vertices.push(Pair::new((i, s), (j, t)).expect("distinct lines"));
                }
            }
        }
    }
    vertices.sort_unstable();
    let index: HashMap<Pair, usize> = vertices
        .iter()
        .enumerate()
        .map(|(idx, p)| (*p, idx))
        .collect();
    let materialized: Vec<(QVector, QVector)> = vertices
        .iter()
        .map(|p| (ns.vector(p.first), ns.vector(p.second)))
        .collect();
    let count = vertices.len();
    let index_pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|a| ((a + 1)..count).map(move |b| (a, b)))
        .collect();
    let edges: Vec<(usize, usize)> = index_pairs
        .into_par_iter()
        .filter(|&(a, b)| {
            let (x1, y1) = &materialized[a];
            let (x2, y2) = &materialized[b];
            compatible_vectors(x1, y1, x2, y2)
        })
        .collect();
    let mut adjacency = vec![vec![false; count]; count];
    let mut degrees = vec![0usize; count];
    for &(a, b) in &edges {
        adjacency[a][b] = true;
        adjacency[b][a] = true;
        degrees[a] += 1;
        degrees[b] += 1;
    }
    Ok(CompatGraph {
        lines: n,
        vertices,
        index,
        adjacency,
        degrees,
        edge_count: edges.len(),
    })
}

/// Whether an antipodal bijection induces a graph isomorphism: every pair
/// of vertices of `g1` is joined exactly when their images in `g2` are.
pub fn induces_isomorphism(
    g1: &CompatGraph,
    g2: &CompatGraph,
    map: &AntipodalMap,
) -> Result<bool> {
    if g1.lines != g2.lines {
        return Err(Error::DimensionMismatch {
            expected: g1.lines,
            found: g2.lines,
        });
    }
    if map.len() != g1.lines {
        return Err(Error::DimensionMismatch {
            expected: g1.lines,
            found: map.len(),
        });
    }
    let image_index: Vec<usize> = g1
        .vertices
        .iter()
        .map(|p| {
            g2.vertex_index(&p.map_through(map))
                .expect("graphs over equally many lines share their vertex sets")
        })
        .collect();
    for a in 0..g1.vertices.len() {
        for b in (a + 1)..g1.vertices.len() {
            if g1.adjacency[a][b] != g2.adjacency[image_index[a]][image_index[b]] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Backtracking state for the induced-isomorphism search.
struct IsoSearch<'a> {
    g1: &'a CompatGraph,
    g2: &'a CompatGraph,
    /// 0-based line -> (0-based image line, flip).
    assign: Vec<Option<(usize, bool)>>,
    used: Vec<bool>,
    /// Vertices of `g1` whose two lines are both assigned, with their image
    /// indices in `g2`.
    covered: Vec<(usize, usize)>,
}

impl IsoSearch<'_> {
    fn image_index(&self, vertex: usize) -> usize {
        let p = &self.g1.vertices[vertex];
        let map_one = |(line, sign): SignedVector| -> SignedVector {
            let (img, flip) = self.assign[line - 1].expect("line assigned");
            (img + 1, if flip { sign.flip() } else { sign })
        };
        let image = Pair::new(map_one(p.first), map_one(p.second)).expect("distinct lines");
        self.g2
            .vertex_index(&image)
            .expect("graphs over equally many lines share their vertex sets")
    }

    /// Adds every vertex that became fully assigned with `line` and checks
    /// all edges between covered vertices that involve a new one.
    fn extend_and_check(&mut self, line: usize) -> bool {
        let start = self.covered.len();
        for (idx, p) in self.g1.vertices.iter().enumerate() {
            let (a, b) = (p.first.0, p.second.0);
            let fresh = (a == line && self.assign[b - 1].is_some())
                || (b == line && self.assign[a - 1].is_some());
            if fresh {
                let img = self.image_index(idx);
                self.covered.push((idx, img));
            }
        }
        for new_pos in start..self.covered.len() {
            let (v, iv) = self.covered[new_pos];
            for old_pos in 0..new_pos {
                let (w, iw) = self.covered[old_pos];
                if self.g1.adjacency[v][w] != self.g2.adjacency[iv][iw] {
                    return false;
                }
            }
        }
        true
    }

    fn search<F>(
        &mut self,
        order: &[usize],
        candidates: &HashMap<usize, Vec<(usize, bool)>>,
        depth: usize,
        accept: &F,
    ) -> Option<AntipodalMap>
    where
        F: Fn(&AntipodalMap) -> bool,
    {
        if depth == order.len() {
            let perm = self
                .assign
                .iter()
                .map(|a| a.expect("full assignment").0 + 1)
                .collect();
            let flips = self.assign.iter().map(|a| a.expect("full").1).collect();
            let map = AntipodalMap::new(perm, flips).expect("search tracks a bijection");
            return if accept(&map) { Some(map) } else { None };
        }
        let line = order[depth];
        for &(img, flip) in &candidates[&line] {
            if self.used[img] {
                continue;
            }
            self.assign[line - 1] = Some((img, flip));
            self.used[img] = true;
            let mark = self.covered.len();
            if self.extend_and_check(line) {
                if let Some(found) = self.search(order, candidates, depth + 1, accept) {
                    return Some(found);
                }
            }
            self.covered.truncate(mark);
            self.used[img] = false;
            self.assign[line - 1] = None;
        }
        None
    }
}

/// Searches for an antipodal bijection inducing a graph isomorphism from
/// `g1` to `g2` and satisfying `accept`, returning the first such map in
/// the deterministic candidate order. Candidates are pruned by per-signed-
/// vector degree data, and the top level fans out in parallel.
pub fn find_induced_isomorphism<F>(
    g1: &CompatGraph,
    g2: &CompatGraph,
    accept: F,
) -> Option<AntipodalMap>
where
    F: Fn(&AntipodalMap) -> bool + Sync,
{
    if g1.lines != g2.lines
        || g1.vertex_count() != g2.vertex_count()
        || g1.edge_count != g2.edge_count
        || g1.degree_profile() != g2.degree_profile()
    {
        return None;
    }
    let n = g1.lines;
    if n == 0 {
        let map = AntipodalMap::identity(0);
        return accept(&map).then_some(map);
    }
    let fp1 = g1.signed_vector_fingerprints();
    let fp2 = g2.signed_vector_fingerprints();
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
                if fp1[&(i, Sign::Plus)] == fp2[&tp] && fp1[&(i, Sign::Minus)] == fp2[&tm] {
                    list.push((j - 1, flip));
                }
            }
        }
        if list.is_empty() {
            return None;
        }
        candidates.insert(i, list);
    }
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|i| (candidates[i].len(), *i));
    let first_line = order[0];

    let run = |first_choice: (usize, bool)| -> Option<AntipodalMap> {
        let mut state = IsoSearch {
            g1,
            g2,
            assign: vec![None; n],
            used: vec![false; n],
            covered: Vec::new(),
        };
        let (img, flip) = first_choice;
        state.assign[first_line - 1] = Some((img, flip));
        state.used[img] = true;
        if state.extend_and_check(first_line) {
            state.search(&order, &candidates, 1, &accept)
        } else {
            None
        }
    };
    candidates[&first_line]
        .par_iter()
        .find_map_first(|&choice| run(choice))
}

/// Whether some antipodal bijection induces an isomorphism between the two
/// graphs. In dimension 3 this decides CPB-relatedness of the underlying
/// systems.
pub fn graphs_compatible(g1: &CompatGraph, g2: &CompatGraph) -> bool {
    find_induced_isomorphism(g1, g2, |_| true).is_some()
}
