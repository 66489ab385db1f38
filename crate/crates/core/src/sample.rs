//! Seeded random graphs and comtes for property checks.

use num_bigint::BigInt;
use rand::Rng;

use crate::graph::{Arrow, Comte, SelfIndexedGraph};

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> SelfIndexedGraph {
    let arrows = (0..m)
        .map(|_| Arrow::new(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    SelfIndexedGraph::new((0..n).map(|i| format!("v{i}")).collect(), arrows).expect("indices in range")
}

/// A random graph with a conserved flow: a sum of multiples of directed cycles
/// found by random walks.
pub fn random_comte<R: Rng>(rng: &mut R, n: usize, m: usize) -> Comte {
    let g = random_graph(rng, n, m);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, a) in g.arrows().iter().enumerate() {
        out[a.source].push(e);
    }
    let mut flows = vec![BigInt::default(); m];
    for _ in 0..3 {
        let mut v = rng.gen_range(0..n);
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut seen_at = vec![usize::MAX; n];
        loop {
            if seen_at[v] != usize::MAX {
                let coeff = BigInt::from(rng.gen_range(-2i64..=2));
                for &(_, e) in &path[seen_at[v]..] {
                    flows[e] += &coeff;
                }
                break;
            }
            if out[v].is_empty() {
                break;
            }
            seen_at[v] = path.len();
            let e = out[v][rng.gen_range(0..out[v].len())];
            path.push((v, e));
            v = g.arrow(e).target;
        }
    }
    Comte::new(g, flows).expect("cycle sums are conserved")
}
