//! Arrangement isomorphism through betweenness data, and the coarser
//! translation-class equivalence.
//!
//! Two arrangements with the same subscript set are isomorphic when some
//! relabeling of the hyperplanes preserves the order of vertices along
//! every line; preserving order is equivalent to preserving, for every
//! three vertices on a common line, which of them lies between the other
//! two. This module records that betweenness data ([`betweenness_table`]),
//! decides whether a given relabeling is an isomorphism
//! ([`is_isomorphism`]), searches for one ([`find_isomorphism`]), and
//! decides the weaker relation "isomorphic after translating hyperplanes"
//! ([`translation_equivalent`]), which depends only on the normal systems
//! and is decided by the convex-positive-bijection search.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use crate::arrangement::Arrangement;
use crate::normsys::{find_cpb, AntipodalMap, NormalSystem};
use crate::{Error, Result};

/// Hyperplane-count cap for the exhaustive isomorphism search.
pub const MAX_ISOMORPHISM_HYPERPLANES: usize = 9;

/// One betweenness fact: on the line shared by the hyperplanes in `line`
/// (an (m-1)-subset), among the three vertices named by the m-subsets in
/// `triple`, the vertex `middle` lies between the other two.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Betweenness {
    pub line: Vec<usize>,
    /// The three vertex subsets in lexicographic order.
    pub triple: [Vec<usize>; 3],
    pub middle: Vec<usize>,
}

/// Betweenness records carried by a single line, given as a strictly
/// increasing (m-1)-subset of 1-based subscripts. Errors when some
/// hyperplane never meets the line.
pub fn line_records(arr: &Arrangement, line: &[usize]) -> Result<Vec<Betweenness>> {
    let vertices = arr.order_on_line(line)?;
    let mut records = Vec::new();
    for positions in (0..vertices.len()).combinations(3) {
        let (a, mid, c) = (positions[0], positions[1], positions[2]);
        let mut triple = [
            vertices[a].clone(),
            vertices[mid].clone(),
            vertices[c].clone(),
        ];
        let middle = vertices[mid].clone();
        triple.sort();
        records.push(Betweenness {
            line: line.to_vec(),
            triple,
            middle,
        });
    }
    Ok(records)
}

/// All betweenness records of the arrangement, across every line. Empty
/// when fewer than three vertices share a line (in particular whenever
/// n <= m + 1).
pub fn betweenness_table(arr: &Arrangement) -> Result<BTreeSet<Betweenness>> {
    let m = arr.dim();
    let mut table = BTreeSet::new();
    for line in (1..=arr.len()).combinations(m - 1) {
        for record in line_records(arr, &line)? {
            table.insert(record);
        }
    }
    Ok(table)
}

/// Outcome of checking a relabeling: either every betweenness record maps
/// to a record of the target, or a witnessing record of the source whose
/// image has a different middle vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Holds,
    Fails { record: Betweenness },
}

impl IsoVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IsoVerdict::Holds)
    }
}

fn check_same_shape(arr1: &Arrangement, arr2: &Arrangement) -> Result<()> {
    if arr1.dim() != arr2.dim() {
        return Err(Error::WrongDimension {
            what: "arrangement",
            expected: arr1.dim(),
            found: arr2.dim(),
        });
    }
    if arr1.len() != arr2.len() {
        return Err(Error::DimensionMismatch {
            expected: arr1.len(),
            found: arr2.len(),
        });
    }
    Ok(())
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::NotAPermutation {
            perm: perm.to_vec(),
            n,
        });
    }
    for &p in perm {
        if p < 1 || p > n || seen[p - 1] {
            return Err(Error::NotAPermutation {
                perm: perm.to_vec(),
                n,
            });
        }
        seen[p - 1] = true;
    }
    Ok(())
}

fn map_subset(perm: &[usize], subset: &[usize]) -> Vec<usize> {
    let mut mapped: Vec<usize> = subset.iter().map(|&s| perm[s - 1]).collect();
    mapped.sort_unstable();
    mapped
}

fn map_record_key(perm: &[usize], record: &Betweenness) -> (Vec<usize>, [Vec<usize>; 3]) {
    let line = map_subset(perm, &record.line);
    let mut triple: Vec<Vec<usize>> = record
        .triple
        .iter()
        .map(|v| map_subset(perm, v))
        .collect();
    triple.sort();
    let triple: [Vec<usize>; 3] = triple.try_into().expect("three entries");
    (line, triple)
}

type MiddleLookup = HashMap<(Vec<usize>, [Vec<usize>; 3]), Vec<usize>>;

fn middle_lookup(table: &BTreeSet<Betweenness>) -> MiddleLookup {
    table
        .iter()
        .map(|r| ((r.line.clone(), r.triple.clone()), r.middle.clone()))
        .collect()
}

/// Whether the relabeling `perm` (1-based images, `perm[i-1]` is the image
/// of subscript `i`) is an isomorphism: every betweenness record of `arr1`
/// maps onto a record of `arr2` with the matching middle vertex.
pub fn is_isomorphism(arr1: &Arrangement, arr2: &Arrangement, perm: &[usize]) -> Result<IsoVerdict> {
    check_same_shape(arr1, arr2)?;
    check_permutation(perm, arr1.len())?;
    let table1 = betweenness_table(arr1)?;
    let lookup2 = middle_lookup(&betweenness_table(arr2)?);
    for record in table1 {
        let key = map_record_key(perm, &record);
        let middle2 = lookup2
            .get(&key)
            .expect("complete tables cover the same vertex triples");
        if middle2 != &map_subset(perm, &record.middle) {
            return Ok(IsoVerdict::Fails { record });
        }
    }
    Ok(IsoVerdict::Holds)
}

/// How often a subscript plays each role across a betweenness table:
/// member of the line subset, middle vertex, member of any triple vertex.
/// Any isomorphism must preserve these counts.
fn role_counts(table: &BTreeSet<Betweenness>, n: usize) -> Vec<[usize; 3]> {
    let mut counts = vec![[0usize; 3]; n + 1];
    for record in table {
        for &s in &record.line {
            counts[s][0] += 1;
        }
        for &s in &record.middle {
            counts[s][1] += 1;
        }
        for vertex in &record.triple {
            for &s in vertex {
                counts[s][2] += 1;
            }
        }
    }
    counts
}

/// Searches for an isomorphism between two arrangements with at most
/// [`MAX_ISOMORPHISM_HYPERPLANES`] hyperplanes, returning the first
/// relabeling (in image-lexicographic order) that preserves all
/// betweenness records.
pub fn find_isomorphism(arr1: &Arrangement, arr2: &Arrangement) -> Result<Option<Vec<usize>>> {
    check_same_shape(arr1, arr2)?;
    let n = arr1.len();
    if n > MAX_ISOMORPHISM_HYPERPLANES {
        return Err(Error::TooLarge {
            what: "isomorphism search",
            limit: MAX_ISOMORPHISM_HYPERPLANES,
            requested: n,
        });
    }
    let table1 = betweenness_table(arr1)?;
    let table2 = betweenness_table(arr2)?;
    if table1.len() != table2.len() {
        return Ok(None);
    }
    let lookup2 = middle_lookup(&table2);
    // Records become checkable once their largest participating subscript
    // is assigned (subscripts are assigned in increasing order).
    let mut buckets: Vec<Vec<&Betweenness>> = vec![Vec::new(); n + 1];
    for record in &table1 {
        let support_max = record
            .line
            .iter()
            .chain(record.triple.iter().flatten())
            .max()
            .copied()
            .expect("records involve at least one subscript");
        buckets[support_max].push(record);
    }
    let roles1 = role_counts(&table1, n);
    let roles2 = role_counts(&table2, n);
    let candidates: Vec<Vec<usize>> = (0..=n)
        .map(|i| {
            if i == 0 {
                Vec::new()
            } else {
                (1..=n).filter(|&j| roles1[i] == roles2[j]).collect()
            }
        })
        .collect();
    if candidates.iter().skip(1).any(Vec::is_empty) {
        return Ok(None);
    }

    struct Search<'a> {
        n: usize,
        buckets: &'a [Vec<&'a Betweenness>],
        lookup2: &'a MiddleLookup,
        candidates: &'a [Vec<usize>],
    }

    impl Search<'_> {
        fn consistent(&self, perm: &[usize], subscript: usize) -> bool {
            for record in &self.buckets[subscript] {
                let key = map_record_key(perm, record);
                match self.lookup2.get(&key) {
                    Some(middle2) if *middle2 == map_subset(perm, &record.middle) => {}
                    _ => return false,
                }
            }
            true
        }

        fn run(&self, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> Option<Vec<usize>> {
            let depth = perm.len();
            if depth == self.n {
                return Some(perm.clone());
            }
            let subscript = depth + 1;
            for &image in &self.candidates[subscript] {
                if used[image - 1] {
                    continue;
                }
                perm.push(image);
                used[image - 1] = true;
                if self.consistent(perm, subscript) {
                    if let Some(found) = self.run(perm, used) {
                        return Some(found);
                    }
                }
                used[image - 1] = false;
                perm.pop();
            }
            None
        }
    }

    let search = Search {
        n,
        buckets: &buckets,
        lookup2: &lookup2,
        candidates: &candidates,
    };
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // Fan out over the image of subscript 1; find_map_first keeps the
    // image-lexicographic answer deterministic.
    use rayon::prelude::*;
    let found = candidates[1]
        .par_iter()
        .find_map_first(|&first| {
            let mut perm = vec![first];
            let mut used = vec![false; n];
            used[first - 1] = true;
            if search.consistent(&perm, 1) {
                search.run(&mut perm, &mut used)
            } else {
                None
            }
        });
    Ok(found)
}

/// Whether the two arrangements are isomorphic after translating hyperplanes
/// freely: true exactly when their normal systems are related by a convex
/// positive bijection, which is returned as the certificate.
pub fn translation_equivalent(
    arr1: &Arrangement,
    arr2: &Arrangement,
) -> Result<Option<AntipodalMap>> {
    let ns1 = NormalSystem::from_arrangement(arr1)?;
    let ns2 = NormalSystem::from_arrangement(arr2)?;
    find_cpb(&ns1, &ns2)
}
