//! Enumeration of homomorphisms between self-indexed graphs.
//!
//! Vertices are assigned one at a time, most constrained first. An arrow of
//! the source graph becomes a constraint as soon as two of its three
//! endpoints are fixed, and is checked once all three are.

use std::collections::HashMap;

use super::{GraphHomomorphism, SelfIndexedGraph};

/// Index of the target graph's arrows by endpoint pattern.
struct TargetIndex {
    exact: HashMap<(usize, usize, usize), Vec<usize>>,
    by_source_label: HashMap<(usize, usize), Vec<usize>>,
    by_target_label: HashMap<(usize, usize), Vec<usize>>,
    by_source_target: HashMap<(usize, usize), Vec<usize>>,
}

impl TargetIndex {
    fn new(g: &SelfIndexedGraph) -> Self {
        let mut idx = TargetIndex {
            exact: HashMap::new(),
            by_source_label: HashMap::new(),
            by_target_label: HashMap::new(),
            by_source_target: HashMap::new(),
        };
        for (e, a) in g.arrows().iter().enumerate() {
            idx.exact.entry((a.source, a.target, a.label)).or_default().push(e);
            push_unique(idx.by_source_label.entry((a.source, a.label)).or_default(), a.target);
            push_unique(idx.by_target_label.entry((a.target, a.label)).or_default(), a.source);
            push_unique(idx.by_source_target.entry((a.source, a.target)).or_default(), a.label);
        }
        idx
    }
}

fn push_unique(v: &mut Vec<usize>, x: usize) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Search state shared by the enumerators.
struct Search<'a> {
    src: &'a SelfIndexedGraph,
    tgt: &'a SelfIndexedGraph,
    idx: TargetIndex,
    /// arrows of `src` incident to each vertex
    incident: Vec<Vec<usize>>,
    assign: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(src: &'a SelfIndexedGraph, tgt: &'a SelfIndexedGraph, fixed: &[(usize, usize)]) -> Self {
        let mut incident = vec![Vec::new(); src.vertex_count()];
        for (e, a) in src.arrows().iter().enumerate() {
            for v in [a.source, a.target, a.label] {
                if !incident[v].contains(&e) {
                    incident[v].push(e);
                }
            }
        }
        let mut assign = vec![None; src.vertex_count()];
        for &(v, w) in fixed {
            assign[v] = Some(w);
        }
        Search { src, tgt, idx: TargetIndex::new(tgt), incident, assign }
    }

    /// Candidate images for `v` given the current partial assignment, or
    /// `None` when nothing constrains it yet.
    fn candidates(&self, v: usize) -> Option<Vec<usize>> {
        let mut cand: Option<Vec<usize>> = None;
        let mut narrow = |list: Vec<usize>| {
            cand = Some(match cand.take() {
                None => list,
                Some(prev) => prev.into_iter().filter(|x| list.contains(x)).collect(),
            });
        };
        for &e in &self.incident[v] {
            let a = self.src.arrow(e);
            let (s, t, l) = (self.assign[a.source], self.assign[a.target], self.assign[a.label]);
            let empty = Vec::new();
            if a.target == v && a.source != v && a.label != v {
                if let (Some(s), Some(l)) = (s, l) {
                    narrow(self.idx.by_source_label.get(&(s, l)).unwrap_or(&empty).clone());
                }
            } else if a.source == v && a.target != v && a.label != v {
                if let (Some(t), Some(l)) = (t, l) {
                    narrow(self.idx.by_target_label.get(&(t, l)).unwrap_or(&empty).clone());
                }
            } else if a.label == v && a.source != v && a.target != v {
                if let (Some(s), Some(t)) = (s, t) {
                    narrow(self.idx.by_source_target.get(&(s, t)).unwrap_or(&empty).clone());
                }
            }
        }
        cand
    }

    fn arrows_ok(&self, v: usize) -> bool {
        self.incident[v].iter().all(|&e| {
            let a = self.src.arrow(e);
            match (self.assign[a.source], self.assign[a.target], self.assign[a.label]) {
                (Some(s), Some(t), Some(l)) => self.idx.exact.contains_key(&(s, t, l)),
                _ => true,
            }
        })
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        // pick the unassigned vertex with the fewest candidates
        let mut pick: Option<(usize, Option<Vec<usize>>)> = None;
        for v in 0..self.src.vertex_count() {
            if self.assign[v].is_some() {
                continue;
            }
            let c = self.candidates(v);
            let size = c.as_ref().map_or(usize::MAX, |c| c.len());
            let better = match &pick {
                None => true,
                Some((_, pc)) => size < pc.as_ref().map_or(usize::MAX, |c| c.len()),
            };
            if better {
                let done = size == 0;
                pick = Some((v, c));
                if done {
                    break;
                }
            }
        }
        let Some((v, cand)) = pick else {
            let full: Vec<usize> = self.assign.iter().map(|x| x.unwrap()).collect();
            return visit(&full);
        };
        let cand = cand.unwrap_or_else(|| (0..self.tgt.vertex_count()).collect());
        for w in cand {
            self.assign[v] = Some(w);
            if self.arrows_ok(v) && !self.run(visit) {
                self.assign[v] = None;
                return false;
            }
        }
        self.assign[v] = None;
        true
    }
}

/// Calls `visit` with every vertex map that extends to a homomorphism. The
/// visitor returns `false` to stop early.
pub fn for_each_vertex_map(
    src: &SelfIndexedGraph,
    tgt: &SelfIndexedGraph,
    fixed: &[(usize, usize)],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let mut search = Search::new(src, tgt, fixed);
    for &(v, _) in fixed {
        if !search.arrows_ok(v) {
            return;
        }
    }
    search.run(visit);
}

/// All vertex maps extending to a homomorphism, in lexicographic order.
pub fn vertex_maps(src: &SelfIndexedGraph, tgt: &SelfIndexedGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_vertex_map(src, tgt, &[], &mut |m| {
        out.push(m.to_vec());
        true
    });
    out.sort();
    out
}

/// Number of homomorphisms, counting every choice among parallel target arrows.
pub fn count_homomorphisms(src: &SelfIndexedGraph, tgt: &SelfIndexedGraph) -> u128 {
    let idx = TargetIndex::new(tgt);
    let mut total = 0u128;
    for_each_vertex_map(src, tgt, &[], &mut |m| {
        total += src
            .arrows()
            .iter()
            .map(|a| idx.exact[&(m[a.source], m[a.target], m[a.label])].len() as u128)
            .product::<u128>();
        true
    });
    total
}

/// All homomorphisms with explicit arrow maps.
pub fn homomorphisms(src: &SelfIndexedGraph, tgt: &SelfIndexedGraph) -> Vec<GraphHomomorphism> {
    let idx = TargetIndex::new(tgt);
    let mut out = Vec::new();
    for m in vertex_maps(src, tgt) {
        let choices: Vec<&Vec<usize>> = src
            .arrows()
            .iter()
            .map(|a| &idx.exact[&(m[a.source], m[a.target], m[a.label])])
            .collect();
        let mut pick = vec![0usize; choices.len()];
        loop {
            out.push(GraphHomomorphism {
                vertex_map: m.clone(),
                arrow_map: pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect(),
            });
            let mut k = 0;
            while k < pick.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Arrow;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(src: &SelfIndexedGraph, tgt: &SelfIndexedGraph) -> Vec<Vec<usize>> {
        let n = src.vertex_count();
        let k = tgt.vertex_count();
        let mut out = Vec::new();
        let total = k.pow(n as u32);
        for code in 0..total {
            let mut m = vec![0; n];
            let mut c = code;
            for slot in m.iter_mut().rev() {
                *slot = c % k;
                c /= k;
            }
            let ok = src.arrows().iter().all(|a| {
                tgt.arrows()
                    .iter()
                    .any(|b| b.source == m[a.source] && b.target == m[a.target] && b.label == m[a.label])
            });
            if ok {
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let n = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=3);
            let src = SelfIndexedGraph::with_indices(
                n,
                (0..rng.gen_range(0..4))
                    .map(|_| Arrow::new(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                    .collect(),
            )
            .unwrap();
            let tgt = SelfIndexedGraph::with_indices(
                k,
                (0..rng.gen_range(0..8))
                    .map(|_| Arrow::new(rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k)))
                    .collect(),
            )
            .unwrap();
            assert_eq!(vertex_maps(&src, &tgt), brute_force(&src, &tgt));
        }
    }

    #[test]
    fn parallel_targets_multiply() {
        let src = SelfIndexedGraph::from_names(&["x"], &[("x", "x", "x")]).unwrap();
        let tgt = SelfIndexedGraph::from_names(&["a"], &[("a", "a", "a"), ("a", "a", "a")]).unwrap();
        assert_eq!(count_homomorphisms(&src, &tgt), 2);
        let homs = homomorphisms(&src, &tgt);
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().all(|h| h.is_valid(&src, &tgt)));
    }

    #[test]
    fn fixed_vertices_are_respected() {
        let src = SelfIndexedGraph::from_names(&["x", "y"], &[]).unwrap();
        let tgt = SelfIndexedGraph::from_names(&["a", "b", "c"], &[]).unwrap();
        let mut seen = Vec::new();
        for_each_vertex_map(&src, &tgt, &[(0, 2)], &mut |m| {
            seen.push(m.to_vec());
            true
        });
        assert_eq!(seen.len(), 3);
        assert!(seen.iter().all(|m| m[0] == 2));
    }
}
