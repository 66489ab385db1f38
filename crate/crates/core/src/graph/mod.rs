//! Self-indexed graphs, comtes, and the structural operations on them.
//!
//! A self-indexed graph is a finite directed multigraph `(V, E, s, t, l)` whose
//! arrows carry a *label* `l(e)` that is itself a vertex. A comte adds an
//! integral flow on the arrows that is conserved at every vertex.
//!
//! Vertices are addressed by position; their names are opaque strings kept
//! only for display and serialization. Arrows are addressed by position in the
//! owning graph, which is what gives multi-edges an identity.

pub mod canonical;
pub mod document;
pub mod hom;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::GraphError;

pub use canonical::{canonical_form, comte_key, graph_key, CanonicalForm, CanonicalKey};

/// One arrow `source --label--> target`, by vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: usize,
}

impl Arrow {
    pub fn new(source: usize, target: usize, label: usize) -> Self {
        Arrow { source, target, label }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SelfIndexedGraph {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl SelfIndexedGraph {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(vertices.len());
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        for (i, a) in arrows.iter().enumerate() {
            for (field, idx) in [("source", a.source), ("target", a.target), ("label", a.label)] {
                if idx >= n {
                    return Err(GraphError::VertexOutOfRange { arrow: i, field, index: idx });
                }
            }
        }
        Ok(SelfIndexedGraph { vertices, arrows })
    }

    /// Builds a graph from vertex names and `(source, label, target)` name triples,
    /// the order in which arrows are usually written down (`b --a--> c`).
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (s, l, t) in arrows {
            out.push(Arrow::new(lookup(s)?, lookup(t)?, lookup(l)?));
        }
        SelfIndexedGraph::new(names, out)
    }

    /// A graph on `n` vertices named `v0, v1, ...`.
    pub fn with_indices(n: usize, arrows: Vec<Arrow>) -> Result<Self, GraphError> {
        SelfIndexedGraph::new((0..n).map(|i| format!("v{i}")).collect(), arrows)
    }

    pub fn empty() -> Self {
        SelfIndexedGraph { vertices: Vec::new(), arrows: Vec::new() }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, e: usize) -> Arrow {
        self.arrows[e]
    }

    /// Number of arrow ends at `v`; a loop contributes two.
    pub fn valence(&self, v: usize) -> usize {
        self.arrows
            .iter()
            .map(|a| (a.source == v) as usize + (a.target == v) as usize)
            .sum()
    }

    pub fn labels_something(&self, v: usize) -> bool {
        self.arrows.iter().any(|a| a.label == v)
    }

    /// Finds a vertex name not yet in use, based on `hint`.
    pub fn fresh_name(&self, hint: &str) -> String {
        if self.vertex_index(hint).is_none() {
            return hint.to_string();
        }
        (1..)
            .map(|k| format!("{hint}{k}"))
            .find(|cand| self.vertex_index(cand).is_none())
            .expect("unbounded search")
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        debug_assert!(arrows
            .iter()
            .all(|a| a.source < vertices.len() && a.target < vertices.len() && a.label < vertices.len()));
        SelfIndexedGraph { vertices, arrows }
    }

    /// Adds a loop `v -> v` labeled `v` at every vertex lacking one.
    pub fn with_tautological_loops(&self) -> SelfIndexedGraph {
        let mut arrows = self.arrows.clone();
        for v in 0..self.vertices.len() {
            let l = Arrow::new(v, v, v);
            if !arrows.contains(&l) {
                arrows.push(l);
            }
        }
        SelfIndexedGraph { vertices: self.vertices.clone(), arrows }
    }

    /// Renames vertices through `perm`, where `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> SelfIndexedGraph {
        let n = self.vertices.len();
        assert_eq!(perm.len(), n);
        let mut names = vec![String::new(); n];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.vertices[old].clone();
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(perm[a.source], perm[a.target], perm[a.label]))
            .collect();
        SelfIndexedGraph { vertices: names, arrows }
    }
}

impl fmt::Display for SelfIndexedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.vertices.join(", "))?;
        for a in &self.arrows {
            write!(f, " {}-{}->{}", self.vertices[a.source], self.vertices[a.label], self.vertices[a.target])?;
        }
        Ok(())
    }
}

/// A self-indexed graph with an integral flow, one value per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comte {
    graph: SelfIndexedGraph,
    flows: Vec<BigInt>,
}

impl Comte {
    /// Builds a comte, rejecting flows that violate conservation.
    pub fn new(graph: SelfIndexedGraph, flows: Vec<BigInt>) -> Result<Self, GraphError> {
        let c = Comte::new_unchecked(graph, flows)?;
        let report = validate(&c);
        if let Some(v) = report.conservation.first() {
            return Err(GraphError::NotConserved {
                vertex: v.vertex.clone(),
                outgoing: v.outgoing.clone(),
                incoming: v.incoming.clone(),
            });
        }
        Ok(c)
    }

    /// Builds a comte without checking conservation; only the flow count is checked.
    pub fn new_unchecked(graph: SelfIndexedGraph, flows: Vec<BigInt>) -> Result<Self, GraphError> {
        if flows.len() != graph.arrow_count() {
            return Err(GraphError::FlowCount { arrows: graph.arrow_count(), flows: flows.len() });
        }
        Ok(Comte { graph, flows })
    }

    pub fn from_names(
        vertices: &[&str],
        arrows: &[(&str, &str, &str, i64)],
    ) -> Result<Self, GraphError> {
        let triples: Vec<(&str, &str, &str)> = arrows.iter().map(|(s, l, t, _)| (*s, *l, *t)).collect();
        let g = SelfIndexedGraph::from_names(vertices, &triples)?;
        Comte::new(g, arrows.iter().map(|a| BigInt::from(a.3)).collect())
    }

    /// The same graph with zero flow everywhere.
    pub fn zero_flow(graph: SelfIndexedGraph) -> Self {
        let flows = vec![BigInt::zero(); graph.arrow_count()];
        Comte { graph, flows }
    }

    pub fn graph(&self) -> &SelfIndexedGraph {
        &self.graph
    }

    pub fn flows(&self) -> &[BigInt] {
        &self.flows
    }

    pub fn flow(&self, e: usize) -> &BigInt {
        &self.flows[e]
    }

    pub fn into_parts(self) -> (SelfIndexedGraph, Vec<BigInt>) {
        (self.graph, self.flows)
    }

    pub fn relabel(&self, perm: &[usize]) -> Comte {
        Comte { graph: self.graph.relabel(perm), flows: self.flows.clone() }
    }
}

impl fmt::Display for Comte {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.graph;
        write!(f, "{{{}}}", g.vertices.join(", "))?;
        for (a, i) in g.arrows.iter().zip(&self.flows) {
            write!(f, " {}-({},{})->{}", g.vertices[a.source], g.vertices[a.label], i, g.vertices[a.target])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationViolation {
    pub vertex: String,
    pub outgoing: BigInt,
    pub incoming: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DanglingReference {
    pub arrow: usize,
    pub field: &'static str,
    pub name: String,
}

/// Everything wrong with a candidate comte. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub conservation: Vec<ConservationViolation>,
    pub dangling: Vec<DanglingReference>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.conservation.is_empty() && self.dangling.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for d in &self.dangling {
            writeln!(f, "arrow {}: {} references unknown vertex {:?}", d.arrow, d.field, d.name)?;
        }
        for v in &self.conservation {
            writeln!(f, "vertex {:?}: outgoing flow {} != incoming flow {}", v.vertex, v.outgoing, v.incoming)?;
        }
        Ok(())
    }
}

pub fn validate(c: &Comte) -> ValidationReport {
    let g = c.graph();
    let n = g.vertex_count();
    let mut out = vec![BigInt::zero(); n];
    let mut inc = vec![BigInt::zero(); n];
    for (a, i) in g.arrows().iter().zip(c.flows()) {
        out[a.source] += i;
        inc[a.target] += i;
    }
    let conservation = (0..n)
        .filter(|&v| out[v] != inc[v])
        .map(|v| ConservationViolation {
            vertex: g.name(v).to_string(),
            outgoing: out[v].clone(),
            incoming: inc[v].clone(),
        })
        .collect();
    ValidationReport { conservation, dangling: Vec::new() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphClass {
    General,
    RGraph,
    QGraph,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::General => "general",
            GraphClass::RGraph => "r-graph",
            GraphClass::QGraph => "q-graph",
        })
    }
}

pub fn is_r_graph(g: &SelfIndexedGraph) -> bool {
    let mut out = HashSet::new();
    let mut inc = HashSet::new();
    g.arrows()
        .iter()
        .all(|a| out.insert((a.source, a.label)) && inc.insert((a.target, a.label)))
}

pub fn classify(g: &SelfIndexedGraph) -> GraphClass {
    if !is_r_graph(g) {
        return GraphClass::General;
    }
    let mut looped = vec![false; g.vertex_count()];
    for a in g.arrows() {
        if a.source == a.target && a.label == a.source {
            looped[a.source] = true;
        }
    }
    if looped.iter().all(|&x| x) {
        GraphClass::QGraph
    } else {
        GraphClass::RGraph
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes; the smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Components of the relation generated by `source ~ target` for each arrow.
/// Labels do not join components. Classes are listed by their smallest vertex.
pub fn components(g: &SelfIndexedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for a in g.arrows() {
        uf.union(a.source, a.target);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let r = uf.find(v);
        let k = *slot.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(v);
    }
    classes
}

/// Component index of every vertex, numbered as in [`components`].
pub fn component_of(g: &SelfIndexedGraph) -> Vec<usize> {
    let mut out = vec![0; g.vertex_count()];
    for (k, class) in components(g).iter().enumerate() {
        for &v in class {
            out[v] = k;
        }
    }
    out
}

/// `g/T`: identify source and target of every arrow in `T`, then drop those arrows.
/// Each merged class keeps the name of its first vertex.
pub fn contract(g: &SelfIndexedGraph, arrows: &BTreeSet<usize>) -> Result<SelfIndexedGraph, GraphError> {
    if let Some(&bad) = arrows.iter().find(|&&e| e >= g.arrow_count()) {
        return Err(GraphError::ArrowOutOfRange(bad));
    }
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for &e in arrows {
        let a = g.arrow(e);
        uf.union(a.source, a.target);
    }
    let mut new_index = vec![usize::MAX; n];
    let mut names = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if r == v {
            new_index[v] = names.len();
            names.push(g.name(v).to_string());
        }
    }
    let map: Vec<usize> = (0..n).map(|v| new_index[uf.find(v)]).collect();
    let kept = g
        .arrows()
        .iter()
        .enumerate()
        .filter(|(e, _)| !arrows.contains(e))
        .map(|(_, a)| Arrow::new(map[a.source], map[a.target], map[a.label]))
        .collect();
    Ok(SelfIndexedGraph::from_parts_unchecked(names, kept))
}

/// A pair of maps commuting with source, target and label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphHomomorphism {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl GraphHomomorphism {
    pub fn is_valid(&self, from: &SelfIndexedGraph, to: &SelfIndexedGraph) -> bool {
        if self.vertex_map.len() != from.vertex_count() || self.arrow_map.len() != from.arrow_count() {
            return false;
        }
        if self.vertex_map.iter().any(|&v| v >= to.vertex_count())
            || self.arrow_map.iter().any(|&e| e >= to.arrow_count())
        {
            return false;
        }
        from.arrows().iter().zip(&self.arrow_map).all(|(a, &e)| {
            let b = to.arrow(e);
            b.source == self.vertex_map[a.source]
                && b.target == self.vertex_map[a.target]
                && b.label == self.vertex_map[a.label]
        })
    }

    pub fn compose(&self, then: &GraphHomomorphism) -> GraphHomomorphism {
        GraphHomomorphism {
            vertex_map: self.vertex_map.iter().map(|&v| then.vertex_map[v]).collect(),
            arrow_map: self.arrow_map.iter().map(|&e| then.arrow_map[e]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn right_trefoil() -> Comte {
        Comte::from_names(&["a", "b", "c"], &[("a", "c", "b", 1), ("b", "a", "c", 1), ("c", "b", "a", 1)]).unwrap()
    }

    #[test]
    fn trefoil_is_valid() {
        assert!(validate(&right_trefoil()).is_valid());
    }

    #[test]
    fn single_vertex_is_valid() {
        let g = SelfIndexedGraph::from_names(&["a"], &[]).unwrap();
        assert!(validate(&Comte::zero_flow(g)).is_valid());
    }

    #[test]
    fn unbalanced_arrow_flags_both_ends() {
        let g = SelfIndexedGraph::from_names(&["a", "b"], &[("a", "a", "b")]).unwrap();
        let c = Comte::new_unchecked(g, vec![BigInt::from(1)]).unwrap();
        let report = validate(&c);
        let bad: Vec<&str> = report.conservation.iter().map(|v| v.vertex.as_str()).collect();
        assert_eq!(bad, ["a", "b"]);
        assert!(Comte::new(c.graph().clone(), c.flows().to_vec()).is_err());
    }

    #[test]
    fn loops_are_balanced() {
        let c = Comte::from_names(&["a"], &[("a", "a", "a", 7)]).unwrap();
        assert!(validate(&c).is_valid());
    }

    #[test]
    fn classification() {
        let parallel = SelfIndexedGraph::from_names(&["a", "b", "c"], &[("a", "c", "b"), ("a", "c", "b")]).unwrap();
        assert_eq!(classify(&parallel), GraphClass::General);
        let lp = SelfIndexedGraph::from_names(&["a"], &[("a", "a", "a")]).unwrap();
        assert_eq!(classify(&lp), GraphClass::QGraph);
        assert_eq!(classify(right_trefoil().graph()), GraphClass::RGraph);
    }

    #[test]
    fn components_ignore_labels() {
        let g = SelfIndexedGraph::from_names(&["a", "b", "c", "d"], &[("a", "c", "b"), ("b", "c", "a")]).unwrap();
        assert_eq!(components(&g), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(components(right_trefoil().graph()).len(), 1);
        assert!(components(&SelfIndexedGraph::empty()).is_empty());
    }

    #[test]
    fn contract_single_arrow_and_loop() {
        let g = SelfIndexedGraph::from_names(&["a", "b"], &[("a", "a", "b")]).unwrap();
        let h = contract(&g, &[0].into()).unwrap();
        assert_eq!((h.vertex_count(), h.arrow_count()), (1, 0));

        let lp = SelfIndexedGraph::from_names(&["a", "b"], &[("a", "b", "a"), ("a", "a", "b")]).unwrap();
        let h = contract(&lp, &[0].into()).unwrap();
        assert_eq!((h.vertex_count(), h.arrow_count()), (2, 1));
        assert!(contract(&lp, &[5].into()).is_err());
    }

    #[test]
    fn contraction_rewrites_labels() {
        let g = SelfIndexedGraph::from_names(&["a", "b", "c"], &[("a", "c", "b"), ("c", "b", "c")]).unwrap();
        let h = contract(&g, &[0].into()).unwrap();
        assert_eq!(h.vertices(), ["a", "c"]);
        assert_eq!(h.arrows(), [Arrow::new(1, 1, 0)]);
    }

    #[test]
    fn homomorphism_validity() {
        let g = right_trefoil().graph().clone();
        let rot = GraphHomomorphism { vertex_map: vec![1, 2, 0], arrow_map: vec![1, 2, 0] };
        assert!(rot.is_valid(&g, &g));
        let bad = GraphHomomorphism { vertex_map: vec![1, 0, 2], arrow_map: vec![0, 1, 2] };
        assert!(!bad.is_valid(&g, &g));
    }
}
