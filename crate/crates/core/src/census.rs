//! Exhaustive census of small r-graphs and q-graphs and of their homology.
//!
//! An r-graph on `V` is the same as a choice, for every label `a`, of a
//! partial injection `x -> a·x` of `V`; in a q-graph each of these fixes `a`.
//! All labeled structures are generated and reduced by canonical key.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{canonical_form, classify, Arrow, CanonicalKey, GraphClass, SelfIndexedGraph};
use crate::homology::{homology_range, HomologyError, HomologyGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{family}-graph census supports 1..={max} vertices, got {n}")]
    Size { family: Family, n: usize, max: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    R,
    Q,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::R => "r",
            Family::Q => "q",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, crate::Error> {
        match s {
            "r" => Ok(Family::R),
            "q" => Ok(Family::Q),
            _ => Err(crate::Error::Parse(format!("unknown graph family {s:?}, expected r or q"))),
        }
    }
}

/// `map[x] = Some(y)` for a partial map.
pub type PartialMap = Vec<Option<usize>>;

/// All partial injections of `{0, .., n-1}`; with `fixed = Some(a)` only those
/// sending `a` to itself.
pub fn partial_injections(n: usize, fixed: Option<usize>) -> Vec<PartialMap> {
    let mut out = Vec::new();
    let mut cur = vec![None; n];
    let mut used = vec![false; n];
    fn rec(x: usize, n: usize, fixed: Option<usize>, cur: &mut PartialMap, used: &mut [bool], out: &mut Vec<PartialMap>) {
        if x == n {
            out.push(cur.clone());
            return;
        }
        if fixed == Some(x) {
            if !used[x] {
                used[x] = true;
                cur[x] = Some(x);
                rec(x + 1, n, fixed, cur, used, out);
                used[x] = false;
                cur[x] = None;
            }
            return;
        }
        rec(x + 1, n, fixed, cur, used, out);
        for y in 0..n {
            if !used[y] && fixed != Some(y) {
                used[y] = true;
                cur[x] = Some(y);
                rec(x + 1, n, fixed, cur, used, out);
                used[y] = false;
                cur[x] = None;
            }
        }
    }
    rec(0, n, fixed, &mut cur, &mut used, &mut out);
    out
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(crate::link::arc_name).collect()
}

/// The graph with arrows `x --a--> maps[a][x]`.
pub fn graph_of_structure(maps: &[PartialMap]) -> SelfIndexedGraph {
    let n = maps.len();
    let mut arrows = Vec::new();
    for (a, m) in maps.iter().enumerate() {
        for (x, y) in m.iter().enumerate() {
            if let Some(y) = *y {
                arrows.push(Arrow::new(x, y, a));
            }
        }
    }
    SelfIndexedGraph::new(names(n), arrows).expect("indices in range")
}

fn max_size(family: Family) -> usize {
    match family {
        Family::R => 3,
        Family::Q => 4,
    }
}

fn structures(family: Family, n: usize) -> Result<Vec<Vec<PartialMap>>, CensusError> {
    if n == 0 || n > max_size(family) {
        return Err(CensusError::Size { family, n, max: max_size(family) });
    }
    let choices: Vec<Vec<PartialMap>> = (0..n)
        .map(|a| partial_injections(n, if family == Family::Q { Some(a) } else { None }))
        .collect();
    let mut out = vec![Vec::new()];
    for c in &choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for m in c {
                let mut p: Vec<PartialMap> = prefix.clone();
                p.push(m.clone());
                next.push(p);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Number of labeled structures before symmetry reduction.
pub fn labeled_count(family: Family, n: usize) -> Result<usize, CensusError> {
    if n == 0 || n > max_size(family) {
        return Err(CensusError::Size { family, n, max: max_size(family) });
    }
    let per_label = partial_injections(n, if family == Family::Q { Some(0) } else { None }).len();
    Ok(per_label.pow(n as u32))
}

/// One representative per isomorphism class, renumbered into canonical
/// order, sorted by canonical key.
pub fn enumerate(family: Family, n: usize) -> Result<Vec<(CanonicalKey, SelfIndexedGraph)>, CensusError> {
    let found: BTreeMap<CanonicalKey, SelfIndexedGraph> = structures(family, n)?
        .par_iter()
        .map(|s| {
            let g = graph_of_structure(s);
            let form = canonical_form(&g, None);
            (form.key, g.relabel(&form.position))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(found
        .into_iter()
        .map(|(k, g)| {
            let mut arrows = g.arrows().to_vec();
            arrows.sort();
            (k, SelfIndexedGraph::new(names(n), arrows).expect("indices in range"))
        })
        .collect())
}

pub fn enumerate_r_graphs(n: usize) -> Result<Vec<(CanonicalKey, SelfIndexedGraph)>, CensusError> {
    enumerate(Family::R, n)
}

pub fn enumerate_q_graphs(n: usize) -> Result<Vec<(CanonicalKey, SelfIndexedGraph)>, CensusError> {
    enumerate(Family::Q, n)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Orbit count by Burnside's lemma: the average number of labeled structures
/// fixed by a vertex permutation. Independent of canonical forms.
pub fn burnside_count(family: Family, n: usize) -> Result<usize, CensusError> {
    let all = structures(family, n)?;
    let perms = permutations(n);
    let mut fixed = 0usize;
    for p in &perms {
        fixed += all
            .iter()
            .filter(|s| {
                (0..n).all(|a| (0..n).all(|x| s[p[a]][p[x]] == s[a][x].map(|y| p[y])))
            })
            .count();
    }
    Ok(fixed / perms.len())
}

/// How signatures are compared when counting distinct values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `H_1 .. H_d` with torsion
    Full,
    /// Betti numbers of `H_1 .. H_d`
    Betti,
    /// `H_0 .. H_d` with torsion (`H_0 = Z` throughout)
    FromZero,
}

impl Convention {
    pub const ALL: [Convention; 3] = [Convention::Full, Convention::Betti, Convention::FromZero];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Full => "torsion, degrees 1-d",
            Convention::Betti => "betti only, degrees 1-d",
            Convention::FromZero => "torsion, degrees 0-d",
        }
    }

    fn key(self, sig: &[HomologyGroup]) -> Vec<HomologyGroup> {
        match self {
            Convention::Full => sig.to_vec(),
            Convention::Betti => sig.iter().map(|h| HomologyGroup { betti: h.betti, torsion: Vec::new() }).collect(),
            Convention::FromZero => {
                let mut v = vec![HomologyGroup { betti: 1, torsion: Vec::new() }];
                v.extend_from_slice(sig);
                v
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub key: CanonicalKey,
    pub graph: SelfIndexedGraph,
    pub class: GraphClass,
    /// `H_1 .. H_d` without the q-quotient
    pub plain: Vec<HomologyGroup>,
    /// `H_1 .. H_d` of the q-quotient, for q-graphs
    pub quotient: Option<Vec<HomologyGroup>>,
}

impl CensusEntry {
    pub fn has_arrows(&self) -> bool {
        self.graph.arrow_count() > 0
    }
}

#[derive(Clone, Debug)]
pub struct SignatureCensus {
    pub family: Family,
    pub vertices: usize,
    pub max_degree: usize,
    pub entries: Vec<CensusEntry>,
}

/// One line of the distinct-count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctCount {
    pub convention: Convention,
    pub quotient: bool,
    pub with_arrows_only: bool,
    pub count: usize,
}

pub fn signature_census(family: Family, n: usize, max_degree: usize) -> Result<SignatureCensus, CensusError> {
    let reps = enumerate(family, n)?;
    let entries = reps
        .into_par_iter()
        .map(|(key, graph)| {
            let class = classify(&graph);
            let plain = homology_range(&graph, max_degree, false)?;
            let quotient =
                if class == GraphClass::QGraph { Some(homology_range(&graph, max_degree, true)?) } else { None };
            Ok(CensusEntry { key, graph, class, plain, quotient })
        })
        .collect::<Result<Vec<_>, HomologyError>>()?;
    Ok(SignatureCensus { family, vertices: n, max_degree, entries })
}

impl SignatureCensus {
    pub fn distinct(&self, convention: Convention, quotient: bool, with_arrows_only: bool) -> usize {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if with_arrows_only && !e.has_arrows() {
                continue;
            }
            let sig = if quotient {
                match &e.quotient {
                    Some(q) => q,
                    None => continue,
                }
            } else {
                &e.plain
            };
            seen.insert(convention.key(sig));
        }
        seen.len()
    }

    /// Every convention the census can be read under.
    pub fn distinct_counts(&self) -> Vec<DistinctCount> {
        let mut out = Vec::new();
        for quotient in [false, true] {
            if quotient && self.family == Family::R {
                continue;
            }
            for with_arrows_only in [true, false] {
                for convention in Convention::ALL {
                    let count = self.distinct(convention, quotient, with_arrows_only);
                    out.push(DistinctCount { convention, quotient, with_arrows_only, count });
                }
            }
        }
        out
    }

    /// Tab-separated `key class H_1 .. H_d` lines, then a summary block.
    pub fn report(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let sig = e.quotient.as_ref().unwrap_or(&e.plain);
            let hs: Vec<String> = sig.iter().map(|h| h.to_string()).collect();
            let _ = writeln!(s, "{}\t{}\t{}", e.key, e.class, hs.join("\t"));
        }
        let with_arrows = self.entries.iter().filter(|e| e.has_arrows()).count();
        let _ = writeln!(s, "# {}-graphs on {} vertices: {} classes, {} with arrows", self.family, self.vertices, self.entries.len(), with_arrows);
        for d in self.distinct_counts() {
            let _ = writeln!(
                s,
                "# distinct signatures ({}; {}; {}): {}",
                d.convention.name(),
                if d.quotient { "q-quotient" } else { "plain" },
                if d.with_arrows_only { "graphs with arrows" } else { "all graphs" },
                d.count
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_injection_counts() {
        assert_eq!(partial_injections(1, None).len(), 2);
        assert_eq!(partial_injections(2, None).len(), 7);
        assert_eq!(partial_injections(3, None).len(), 34);
        assert_eq!(partial_injections(3, Some(1)).len(), 7);
        assert_eq!(labeled_count(Family::R, 3).unwrap(), 39304);
    }

    #[test]
    fn small_censuses() {
        assert_eq!(enumerate_r_graphs(1).unwrap().len(), 2);
        assert_eq!(enumerate_q_graphs(1).unwrap().len(), 1);
        let r2 = enumerate_r_graphs(2).unwrap();
        assert_eq!(r2.len(), burnside_count(Family::R, 2).unwrap());
        let q2 = enumerate_q_graphs(2).unwrap();
        assert_eq!(q2.len(), burnside_count(Family::Q, 2).unwrap());
        assert!(q2.iter().all(|(_, g)| classify(g) == GraphClass::QGraph));
        assert!(matches!(enumerate_r_graphs(4), Err(CensusError::Size { .. })));
        assert!(matches!(enumerate_q_graphs(0), Err(CensusError::Size { .. })));
    }
}
