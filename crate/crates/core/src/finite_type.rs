//! Semi-virtual arrows and the bracket `[G, S] = ∑_(T ⊆ S) (-1)^|T| G/T`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{contract, graph_key, CanonicalKey, SelfIndexedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvaluateError {
    #[error("no value for class {key} (representative {graph})")]
    MissingKey { key: CanonicalKey, graph: String },
}

/// A graph with a set of semi-virtual arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiVirtualGraph {
    pub graph: SelfIndexedGraph,
    pub semivirtual: BTreeSet<usize>,
}

impl SemiVirtualGraph {
    pub fn new(graph: SelfIndexedGraph, semivirtual: BTreeSet<usize>) -> Result<Self, crate::GraphError> {
        if let Some(&e) = semivirtual.iter().find(|&&e| e >= graph.arrow_count()) {
            return Err(crate::GraphError::ArrowOutOfRange(e));
        }
        Ok(SemiVirtualGraph { graph, semivirtual })
    }
}

/// A finite integer combination of isomorphism classes.
#[derive(Clone, Debug, Default)]
pub struct GraphFormalSum {
    terms: BTreeMap<CanonicalKey, (i64, SelfIndexedGraph)>,
}

/// Equal as combinations of classes, whatever the representatives.
impl PartialEq for GraphFormalSum {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((k1, t1), (k2, t2))| k1 == k2 && t1.0 == t2.0)
    }
}

impl Eq for GraphFormalSum {}

impl GraphFormalSum {
    pub fn add_graph(&mut self, g: SelfIndexedGraph, k: i64) {
        let key = graph_key(&g);
        let entry = self.terms.entry(key.clone()).or_insert((0, g));
        entry.0 += k;
        if entry.0 == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &GraphFormalSum) -> GraphFormalSum {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &GraphFormalSum) -> GraphFormalSum {
        self.combine(other, -1)
    }

    fn combine(&self, other: &GraphFormalSum, sign: i64) -> GraphFormalSum {
        let mut out = self.clone();
        for (c, g) in other.terms.values() {
            out.add_graph(g.clone(), sign * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(key, coefficient, representative)` in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalKey, i64, &SelfIndexedGraph)> {
        self.terms.iter().map(|(k, (c, g))| (k, *c, g))
    }

    pub fn coefficient(&self, key: &CanonicalKey) -> i64 {
        self.terms.get(key).map_or(0, |t| t.0)
    }
}

/// `coefficient  canonical_key` lines.
impl fmt::Display for GraphFormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c, _) in self.terms() {
            writeln!(f, "{c}\t{k}")?;
        }
        Ok(())
    }
}

pub fn bracket(gs: &SemiVirtualGraph) -> GraphFormalSum {
    let s: Vec<usize> = gs.semivirtual.iter().copied().collect();
    let mut out = GraphFormalSum::default();
    for bits in 0..1u64 << s.len() {
        let t: BTreeSet<usize> = s.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let sign = if t.len() % 2 == 0 { 1 } else { -1 };
        out.add_graph(contract(&gs.graph, &t).expect("semi-virtual arrows are in range"), sign);
    }
    out
}

/// `∑ coefficient · ν(class)` for an additive `ν`; `ν` is asked for every
/// class in the sum and must answer for all of them.
pub fn evaluate<V, A>(nu: V, fs: &GraphFormalSum) -> Result<A, EvaluateError>
where
    V: Fn(&CanonicalKey, &SelfIndexedGraph) -> Option<A>,
    A: Default + std::ops::Add<Output = A> + std::ops::Mul<i64, Output = A>,
{
    let mut acc = A::default();
    for (k, c, g) in fs.terms() {
        let v = nu(k, g).ok_or_else(|| EvaluateError::MissingKey { key: k.clone(), graph: g.to_string() })?;
        acc = acc + v * c;
    }
    Ok(acc)
}

/// `ν` given as a table of values per class.
pub fn table_lookup<A: Clone>(table: &BTreeMap<CanonicalKey, A>) -> impl Fn(&CanonicalKey, &SelfIndexedGraph) -> Option<A> + '_ {
    move |k, _| table.get(k).cloned()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeCheck {
    Vanishes,
    Counterexample(SemiVirtualGraph),
}

/// Whether `ν` vanishes on the bracket of every member of `family`. Only a
/// statement about that family.
pub fn is_degree_at_most<V, A>(nu: V, n: usize, family: &[SemiVirtualGraph]) -> Result<DegreeCheck, EvaluateError>
where
    V: Fn(&CanonicalKey, &SelfIndexedGraph) -> Option<A>,
    A: Default + PartialEq + std::ops::Add<Output = A> + std::ops::Mul<i64, Output = A>,
{
    for gs in family.iter().filter(|gs| gs.semivirtual.len() == n) {
        if evaluate(&nu, &bracket(gs))? != A::default() {
            return Ok(DegreeCheck::Counterexample(gs.clone()));
        }
    }
    Ok(DegreeCheck::Vanishes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> SelfIndexedGraph {
        // a -> b and c -> d, both labeled a
        SelfIndexedGraph::from_names(&["a", "b", "c", "d"], &[("a", "a", "b"), ("c", "a", "d")]).unwrap()
    }

    fn vertex_count(_: &CanonicalKey, g: &SelfIndexedGraph) -> Option<i64> {
        Some(g.vertex_count() as i64)
    }

    fn sv(g: SelfIndexedGraph, s: &[usize]) -> SemiVirtualGraph {
        SemiVirtualGraph::new(g, s.iter().copied().collect()).unwrap()
    }

    #[test]
    fn empty_set_is_the_graph() {
        let b = bracket(&sv(path(), &[]));
        assert_eq!(b.terms().count(), 1);
        assert_eq!(b.coefficient(&graph_key(&path())), 1);
    }

    #[test]
    fn one_arrow_is_solid_minus_contracted() {
        let g = path();
        let b = bracket(&sv(g.clone(), &[1]));
        let mut expect = GraphFormalSum::default();
        expect.add_graph(g.clone(), 1);
        expect.add_graph(contract(&g, &[1].into()).unwrap(), -1);
        assert_eq!(b, expect);
        assert_eq!(evaluate(vertex_count, &b).unwrap(), 1);
    }

    #[test]
    fn vertex_count_has_degree_two_on_non_loops() {
        let b = bracket(&sv(path(), &[0, 1]));
        assert_eq!(evaluate(vertex_count, &b).unwrap(), 0);
        assert_eq!(evaluate(|_: &CanonicalKey, _: &SelfIndexedGraph| Some(7i64), &b).unwrap(), 0);
        let fam = vec![sv(path(), &[0]), sv(path(), &[0, 1])];
        assert!(matches!(is_degree_at_most(vertex_count, 1, &fam).unwrap(), DegreeCheck::Counterexample(_)));
        assert_eq!(is_degree_at_most(vertex_count, 2, &fam).unwrap(), DegreeCheck::Vanishes);
    }

    #[test]
    fn missing_key_names_representative() {
        let b = bracket(&sv(path(), &[0]));
        let table = BTreeMap::from([(graph_key(&path()), 1i64)]);
        let err = evaluate(table_lookup(&table), &b).unwrap_err();
        assert!(err.to_string().contains("->"), "{err}");
    }

    #[test]
    fn recursive_expansion() {
        let g = SelfIndexedGraph::from_names(&["a", "b", "c"], &[("a", "c", "b"), ("b", "a", "c"), ("c", "b", "a")])
            .unwrap();
        let full = bracket(&sv(g.clone(), &[0, 2]));
        let ga = contract(&g, &[0].into()).unwrap();
        // arrow 2 keeps index 1 once arrow 0 is gone
        let rest = bracket(&sv(g.clone(), &[2])).sub(&bracket(&sv(ga, &[1])));
        assert_eq!(full, rest);
    }
}
