//! Exact canonical labeling by colour refinement plus individualization.
//!
//! The canonical form is the lexicographically smallest sorted arrow list over
//! all vertex orderings reachable as leaves of the refinement tree. Subtrees
//! that are images of explored ones under a discovered automorphism are
//! skipped, which keeps highly symmetric inputs (many isolated vertices) cheap.

use std::fmt;

use num_bigint::BigInt;

use super::{Comte, SelfIndexedGraph, UnionFind};

/// Byte encoding of an isomorphism class. Equal keys iff isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
}

pub fn graph_key(g: &SelfIndexedGraph) -> CanonicalKey {
    canonical_form(g, None).key
}

pub fn comte_key(c: &Comte) -> CanonicalKey {
    canonical_form(c.graph(), Some(c.flows())).key
}

type Tuple = (u32, u32, u32, u32);

pub fn canonical_form(g: &SelfIndexedGraph, flows: Option<&[BigInt]>) -> CanonicalForm {
    let n = g.vertex_count();
    // flows enter the search only through their rank among distinct values
    let flow_rank: Vec<u32> = match flows {
        None => vec![0; g.arrow_count()],
        Some(fl) => {
            let mut distinct: Vec<&BigInt> = fl.iter().collect();
            distinct.sort();
            distinct.dedup();
            fl.iter().map(|x| distinct.binary_search(&x).unwrap() as u32).collect()
        }
    };
    let mut search = Search { g, flow_rank: &flow_rank, first: None, best: None, autos: Vec::new() };
    let mut prefix = Vec::new();
    search.visit(vec![0; n], &mut prefix);
    let (tuples, perm, _) = search.best.expect("search visits at least one leaf");

    let mut bytes = Vec::new();
    push_u32(&mut bytes, n as u32);
    push_u32(&mut bytes, tuples.len() as u32);
    for t in &tuples {
        push_u32(&mut bytes, t.0);
        push_u32(&mut bytes, t.1);
        push_u32(&mut bytes, t.2);
    }
    if let Some(fl) = flows {
        bytes.push(1);
        let mut distinct: Vec<&BigInt> = fl.iter().collect();
        distinct.sort();
        distinct.dedup();
        for t in &tuples {
            let raw = distinct[t.3 as usize].to_signed_bytes_le();
            push_u32(&mut bytes, raw.len() as u32);
            bytes.extend_from_slice(&raw);
        }
    } else {
        bytes.push(0);
    }
    let mut position = vec![0; n];
    for (p, &v) in perm.iter().enumerate() {
        position[v] = p;
    }
    CanonicalForm { key: CanonicalKey(bytes), position }
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

struct Search<'a> {
    g: &'a SelfIndexedGraph,
    flow_rank: &'a [u32],
    /// encoding, canonical position -> vertex, individualization path
    first: Option<(Vec<Tuple>, Vec<usize>, Vec<usize>)>,
    best: Option<(Vec<Tuple>, Vec<usize>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(d)` when the caller chain should unwind to depth `d`.
    fn visit(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, self.flow_rank, &mut colors);
        let n = colors.len();
        let cells = cell_list(&colors);
        let Some(cell) = cells.into_iter().find(|c| c.len() > 1) else {
            return self.leaf(&colors, prefix);
        };
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() && self.equivalent_to_explored(w, &explored, prefix, n) {
                continue;
            }
            let mut child = colors.iter().map(|&c| 2 * c + 1).collect::<Vec<_>>();
            child[w] -= 1;
            prefix.push(w);
            let r = self.visit(child, prefix);
            prefix.pop();
            explored.push(w);
            if let Some(d) = r {
                if d < prefix.len() {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, colors: &[u32], prefix: &[usize]) -> Option<usize> {
        let n = colors.len();
        let mut perm = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            perm[c as usize] = v;
        }
        let mut tuples: Vec<Tuple> = self
            .g
            .arrows()
            .iter()
            .zip(self.flow_rank)
            .map(|(a, &f)| (colors[a.source], colors[a.target], colors[a.label], f))
            .collect();
        tuples.sort_unstable();

        let Some((first_enc, first_perm, first_path)) = &self.first else {
            self.first = Some((tuples.clone(), perm.clone(), prefix.to_vec()));
            self.best = Some((tuples, perm, prefix.to_vec()));
            return None;
        };
        if tuples == *first_enc {
            self.autos.push(automorphism(first_perm, &perm));
            let d = first_path.iter().zip(prefix).take_while(|(a, b)| a == b).count();
            return Some(d);
        }
        let best = self.best.as_ref().unwrap();
        match tuples.cmp(&best.0) {
            std::cmp::Ordering::Less => self.best = Some((tuples, perm, prefix.to_vec())),
            std::cmp::Ordering::Equal => {
                let gamma = automorphism(&best.1, &perm);
                self.autos.push(gamma);
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    /// Whether `w` lies in the orbit of an explored sibling under the known
    /// automorphisms that fix the current path pointwise.
    fn equivalent_to_explored(&self, w: usize, explored: &[usize], prefix: &[usize], n: usize) -> bool {
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for v in 0..n {
                    uf.union(v, gamma[v]);
                }
            }
        }
        if !any {
            return false;
        }
        let rw = uf.find(w);
        explored.iter().any(|&v| uf.find(v) == rw)
    }
}

/// The vertex map sending leaf `a` onto leaf `b`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; a.len()];
    for (p, &v) in a.iter().enumerate() {
        gamma[v] = b[p];
    }
    gamma
}

fn cell_list(colors: &[u32]) -> Vec<Vec<usize>> {
    let k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut cells = vec![Vec::new(); k];
    for (v, &c) in colors.iter().enumerate() {
        cells[c as usize].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

/// Equitable refinement. Colours are renumbered to dense ranks that respect
/// the old order, so individualized vertices keep their place.
fn refine(g: &SelfIndexedGraph, flow_rank: &[u32], colors: &mut [u32]) {
    let n = colors.len();
    let mut count = usize::MAX;
    loop {
        let mut sig: Vec<Vec<(u8, u32, u32, u32, u32)>> = vec![Vec::new(); n];
        for (a, &f) in g.arrows().iter().zip(flow_rank) {
            let role = |v: usize| (a.source == v) as u8 | ((a.target == v) as u8) << 1 | ((a.label == v) as u8) << 2;
            let entry = |v: usize| (role(v), colors[a.source], colors[a.target], colors[a.label], f);
            sig[a.source].push(entry(a.source));
            if a.target != a.source {
                sig[a.target].push(entry(a.target));
            }
            if a.label != a.source && a.label != a.target {
                sig[a.label].push(entry(a.label));
            }
        }
        for s in &mut sig {
            s.sort_unstable();
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| colors[x].cmp(&colors[y]).then_with(|| sig[x].cmp(&sig[y])));
        let mut fresh = vec![0u32; n];
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 {
                let (p, q) = (order[i - 1], order[i]);
                if colors[p] != colors[q] || sig[p] != sig[q] {
                    rank += 1;
                }
            }
            fresh[order[i]] = rank;
        }
        colors.copy_from_slice(&fresh);
        let new_count = if n == 0 { 0 } else { rank as usize + 1 };
        if new_count == count {
            return;
        }
        count = new_count;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Arrow, Comte};
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn trefoil(sign: i64) -> Comte {
        Comte::from_names(&["a", "b", "c"], &[("a", "c", "b", sign), ("b", "a", "c", sign), ("c", "b", "a", sign)])
            .unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> SelfIndexedGraph {
        let arrows = (0..m)
            .map(|_| Arrow::new(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        SelfIndexedGraph::with_indices(n, arrows).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn trefoils_differ_only_by_flow() {
        assert_ne!(comte_key(&trefoil(1)), comte_key(&trefoil(-1)));
        assert_eq!(graph_key(trefoil(1).graph()), graph_key(trefoil(-1).graph()));
    }

    #[test]
    fn exhaustive_renaming_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5 {
            let perms = permutations(n);
            for _ in 0..4 {
                let m = rng.gen_range(0..=2 * n);
                let g = random_graph(&mut rng, n, m);
                let k = graph_key(&g);
                for p in &perms {
                    assert_eq!(graph_key(&g.relabel(p)), k);
                }
            }
        }
    }

    #[test]
    fn keys_separate_non_isomorphic_graphs() {
        // brute-force oracle: isomorphic iff some bijection maps arrow multisets
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let perms = permutations(4);
        for _ in 0..200 {
            let g = random_graph(&mut rng, 4, 3);
            let h = random_graph(&mut rng, 4, 3);
            let mut target: Vec<Arrow> = h.arrows().to_vec();
            target.sort();
            let iso = perms.iter().any(|p| {
                let mut img: Vec<Arrow> = g.relabel(p).arrows().to_vec();
                img.sort();
                img == target
            });
            assert_eq!(iso, graph_key(&g) == graph_key(&h));
        }
    }

    #[test]
    fn symmetric_inputs_stay_fast() {
        let g = SelfIndexedGraph::with_indices(40, Vec::new()).unwrap();
        let k = graph_key(&g);
        let mut perm: Vec<usize> = (0..40).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(graph_key(&g.relabel(&perm)), k);

        let cycle: Vec<Arrow> = (0..30).map(|i| Arrow::new(i, (i + 1) % 30, (i + 2) % 30)).collect();
        let c = SelfIndexedGraph::with_indices(30, cycle).unwrap();
        let mut perm: Vec<usize> = (0..30).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(2));
        assert_eq!(graph_key(&c.relabel(&perm)), graph_key(&c));
    }

    #[test]
    fn arrow_order_does_not_matter() {
        let c = trefoil(1);
        let (g, flows) = c.clone().into_parts();
        let mut arrows = g.arrows().to_vec();
        arrows.reverse();
        let mut fl = flows;
        fl.reverse();
        let d = Comte::new(SelfIndexedGraph::new(g.vertices().to_vec(), arrows).unwrap(), fl).unwrap();
        assert_eq!(comte_key(&c), comte_key(&d));
    }

    #[test]
    fn position_is_a_permutation() {
        let form = canonical_form(trefoil(1).graph(), None);
        let mut p = form.position.clone();
        p.sort();
        assert_eq!(p, vec![0, 1, 2]);
    }
}
