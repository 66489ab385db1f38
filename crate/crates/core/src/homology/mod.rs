//! Cubical homology of self-indexed graphs.
//!
//! `Y_n` is the disjoint union of the labeled cube skeleta `y_1, .., y_n`.
//! A vertex of `y_m` is a subset `J` of `{1, .., m-1}` (a bit mask) and
//! carries the label `J + {m}`; the arrow leaving `J` in direction `d` ends at
//! `J + {d}` and is labeled by the vertex `J ∩ {1, .., d-1}` of `y_d`.
//! `C_n(G)` is free on the homomorphisms `Y_n -> G`; `C_0` is `Z` on the empty
//! map and `∂_1 = 0`.
//!
//! For r-graphs a homomorphism is fixed by the images `<a_1, .., a_n>` of the
//! cube origins, and the boundary has the closed form
//! `∑_s (-1)^s (<.., â_s, ..> - <a_1, .., a_(s-1), a_s·a_(s+1), .., a_s·a_n>)`.

mod snf;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::hom::{count_homomorphisms, homomorphisms};
use crate::graph::{classify, Arrow, Comte, GraphClass, GraphHomomorphism, SelfIndexedGraph};
use crate::quandle::{graph_of_rack, AbelianGroup, Cocycle2, FiniteRack};

pub use snf::{smith_normal_form, smith_normal_form_sparse, SmithForm, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("the q-quotient needs a q-graph, this graph is {0}")]
    NotQGraph(GraphClass),
    #[error("cocycles are computed over prime orders only, got {0}")]
    UnsupportedOrder(u64),
    #[error("degree must be at least {min}, got {got}")]
    Degree { min: usize, got: usize },
    #[error("C_{degree} would have rank {rank}, above the limit {MAX_CHAIN_RANK}")]
    TooLarge { degree: usize, rank: u128 },
}

/// Largest chain group the general (non r-graph) path will build.
pub const MAX_CHAIN_RANK: u128 = 2_000_000;

fn vertex_index(m: usize, mask: usize) -> usize {
    (1 << (m - 1)) - 1 + mask
}

/// `Y_n` with the bookkeeping needed for faces.
#[derive(Clone, Debug)]
pub struct CubeGraph {
    pub n: usize,
    pub graph: SelfIndexedGraph,
    /// label sequence of each vertex
    pub vertex_labels: Vec<Vec<usize>>,
    /// label sequence of each arrow
    pub arrow_labels: Vec<Vec<usize>>,
    /// `(m, mask)` of each vertex
    cells: Vec<(usize, usize)>,
    /// arrow index of `(m, mask, direction)`
    arrow_at: HashMap<(usize, usize, usize), usize>,
    /// `(m, mask, direction)` of each arrow
    arrow_cells: Vec<(usize, usize, usize)>,
}

fn mask_label(m: usize, mask: usize) -> Vec<usize> {
    let mut l: Vec<usize> = (1..m).filter(|j| mask >> (j - 1) & 1 == 1).collect();
    l.push(m);
    l
}

fn label_text(l: &[usize]) -> String {
    l.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(".")
}

pub fn build_yn(n: usize) -> CubeGraph {
    let mut cells = Vec::new();
    let mut vertex_labels = Vec::new();
    for m in 1..=n {
        for mask in 0..1usize << (m - 1) {
            cells.push((m, mask));
            vertex_labels.push(mask_label(m, mask));
        }
    }
    let mut arrows = Vec::new();
    let mut arrow_labels = Vec::new();
    let mut arrow_at = HashMap::new();
    let mut arrow_cells = Vec::new();
    for m in 1..=n {
        for mask in 0..1usize << (m - 1) {
            for d in 1..m {
                if mask >> (d - 1) & 1 == 1 {
                    continue;
                }
                let low = mask & ((1 << (d - 1)) - 1);
                let label = vertex_index(d, low);
                arrow_at.insert((m, mask, d), arrows.len());
                arrow_cells.push((m, mask, d));
                arrows.push(Arrow::new(vertex_index(m, mask), vertex_index(m, mask | 1 << (d - 1)), label));
                arrow_labels.push(mask_label(d, low));
            }
        }
    }
    let names = vertex_labels.iter().map(|l| label_text(l)).collect();
    let graph = SelfIndexedGraph::new(names, arrows).expect("cube indices in range");
    CubeGraph { n, graph, vertex_labels, arrow_labels, cells, arrow_at, arrow_cells }
}

impl CubeGraph {
    /// Vertex of `Y_n` that is the origin of `y_m`.
    pub fn origin(&self, m: usize) -> usize {
        vertex_index(m, 0)
    }

    /// The face `D_s^eps: Y_n -> Y_(n+1)` for `1 <= s <= n`, with `bigger`
    /// being `Y_(n+1)`.
    pub fn face(&self, bigger: &CubeGraph, s: usize, eps: bool) -> GraphHomomorphism {
        assert!(bigger.n == self.n + 1 && (1..=self.n).contains(&s));
        let insert = |mask: usize| {
            let low = mask & ((1 << (s - 1)) - 1);
            let high = (mask >> (s - 1)) << s;
            low | high | if eps { 1 << (s - 1) } else { 0 }
        };
        let vertex_map = self
            .cells
            .iter()
            .map(|&(m, mask)| if m < s { vertex_index(m, mask) } else { vertex_index(m + 1, insert(mask)) })
            .collect();
        let arrow_map = self
            .arrow_cells
            .iter()
            .map(|&(m, mask, d)| {
                if m < s {
                    bigger.arrow_at[&(m, mask, d)]
                } else {
                    let d2 = if d < s { d } else { d + 1 };
                    bigger.arrow_at[&(m + 1, insert(mask), d2)]
                }
            })
            .collect();
        GraphHomomorphism { vertex_map, arrow_map }
    }
}

/// Partial product `a·x`: target of the arrow labeled `a` leaving `x`.
struct Product {
    n: usize,
    table: Vec<Option<usize>>,
}

impl Product {
    fn new(g: &SelfIndexedGraph) -> Self {
        let n = g.vertex_count();
        let mut table = vec![None; n * n];
        for a in g.arrows() {
            table[a.label * n + a.source] = Some(a.target);
        }
        Product { n, table }
    }

    fn get(&self, a: usize, x: usize) -> Option<usize> {
        self.table[a * self.n + x]
    }
}

/// Values of a tuple on all vertices of `y_1 .. y_k`, indexed like `Y_k`.
fn extend_values(p: &Product, vals: &[usize], m: usize, a_m: usize) -> Option<Vec<usize>> {
    let mut out = vals.to_vec();
    out.push(a_m);
    for mask in 1..1usize << (m - 1) {
        let s = usize::BITS as usize - mask.leading_zeros() as usize; // largest element of J
        let rest = mask & !(1 << (s - 1));
        let label = out[vertex_index(s, rest & ((1 << (s - 1)) - 1))];
        let v = p.get(label, out[vertex_index(m, rest)])?;
        out.push(v);
    }
    for mask in 0..1usize << (m - 1) {
        for d in 1..m {
            if mask >> (d - 1) & 1 == 1 {
                continue;
            }
            let label = out[vertex_index(d, mask & ((1 << (d - 1)) - 1))];
            if p.get(label, out[vertex_index(m, mask)]) != Some(out[vertex_index(m, mask | 1 << (d - 1))]) {
                return None;
            }
        }
    }
    Some(out)
}

/// Tuples `<a_1, .., a_k>` that are homomorphisms, for `k = 0 ..= max`,
/// each list in lexicographic order, with the full vertex values.
fn r_tuples(g: &SelfIndexedGraph, max: usize) -> Vec<Vec<(Vec<usize>, Vec<usize>)>> {
    let p = Product::new(g);
    let mut levels: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![vec![(Vec::new(), Vec::new())]];
    for m in 1..=max {
        let mut next = Vec::new();
        for (tuple, vals) in &levels[m - 1] {
            for a in 0..g.vertex_count() {
                if let Some(v) = extend_values(&p, vals, m, a) {
                    let mut t = tuple.clone();
                    t.push(a);
                    next.push((t, v));
                }
            }
        }
        levels.push(next);
    }
    levels
}

fn degenerate(t: &[usize]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

/// Basis of `C_n(G)`: homomorphisms `Y_n -> G` in lexicographic order of the
/// origin images, then of the vertex and arrow maps.
pub fn enumerate_homs(n: usize, g: &SelfIndexedGraph) -> Vec<GraphHomomorphism> {
    if n == 0 {
        return vec![GraphHomomorphism { vertex_map: Vec::new(), arrow_map: Vec::new() }];
    }
    if classify(g) != GraphClass::General {
        let cube = build_yn(n);
        let mut by_edge = HashMap::new();
        for (e, a) in g.arrows().iter().enumerate() {
            by_edge.insert((a.source, a.label), e);
        }
        return r_tuples(g, n)
            .pop()
            .unwrap()
            .into_iter()
            .map(|(_, vals)| {
                let arrow_map =
                    cube.graph.arrows().iter().map(|a| by_edge[&(vals[a.source], vals[a.label])]).collect();
                GraphHomomorphism { vertex_map: vals, arrow_map }
            })
            .collect();
    }
    let cube = build_yn(n);
    let origins: Vec<usize> = (1..=n).map(|m| cube.origin(m)).collect();
    let mut homs = homomorphisms(&cube.graph, g);
    homs.sort_by(|x, y| {
        let kx: Vec<usize> = origins.iter().map(|&o| x.vertex_map[o]).collect();
        let ky: Vec<usize> = origins.iter().map(|&o| y.vertex_map[o]).collect();
        (kx, &x.vertex_map, &x.arrow_map).cmp(&(ky, &y.vertex_map, &y.arrow_map))
    });
    homs
}

/// Origin images `<f(1), .., f(n)>` of a homomorphism from `Y_n`.
pub fn tuple_of(h: &GraphHomomorphism) -> Vec<usize> {
    let n = (h.vertex_map.len() + 1).trailing_zeros() as usize;
    (1..=n).map(|m| h.vertex_map[vertex_index(m, 0)]).collect()
}

fn check_q(g: &SelfIndexedGraph, q: bool) -> Result<(), HomologyError> {
    let class = classify(g);
    if q && class != GraphClass::QGraph {
        return Err(HomologyError::NotQGraph(class));
    }
    Ok(())
}

/// `∂_n` for `n = 1 ..= max` as matrices whose row `i` is the boundary of the
/// `i`-th basis element; entry `k` is the basis size in degree `k`.
fn r_complex(g: &SelfIndexedGraph, max: usize, q: bool) -> (Vec<usize>, Vec<SparseMatrix>) {
    let p = Product::new(g);
    let levels = r_tuples(g, max);
    let bases: Vec<Vec<Vec<usize>>> = levels
        .into_iter()
        .map(|l| l.into_iter().map(|(t, _)| t).filter(|t| !q || !degenerate(t)).collect())
        .collect();
    let sizes = bases.iter().map(|b| b.len()).collect();
    let mut mats = vec![SparseMatrix::zero(0, 0)];
    for n in 1..=max {
        let index: HashMap<&[usize], usize> = bases[n - 1].iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let mut rows = Vec::with_capacity(bases[n].len());
        for t in &bases[n] {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for s in 1..n {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let mut f0 = t[..s - 1].to_vec();
                f0.extend_from_slice(&t[s..]);
                let mut f1 = t[..s - 1].to_vec();
                f1.extend(t[s..].iter().map(|&x| p.get(t[s - 1], x).expect("faces of homomorphisms exist")));
                for (face, c) in [(f0, sign), (f1, -sign)] {
                    if q && degenerate(&face) {
                        continue;
                    }
                    *acc.entry(index[face.as_slice()]).or_default() += c;
                }
            }
            let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
            row.sort_unstable();
            rows.push(row);
        }
        mats.push(SparseMatrix { nrows: bases[n].len(), ncols: bases[n - 1].len(), rows });
    }
    (sizes, mats)
}

fn general_complex(g: &SelfIndexedGraph, max: usize) -> (Vec<usize>, Vec<SparseMatrix>) {
    let bases: Vec<Vec<GraphHomomorphism>> = (0..=max).map(|n| enumerate_homs(n, g)).collect();
    let cubes: Vec<CubeGraph> = (0..=max).map(build_yn).collect();
    let sizes = bases.iter().map(|b| b.len()).collect();
    let mut mats = vec![SparseMatrix::zero(0, 0)];
    for n in 1..=max {
        let index: HashMap<&GraphHomomorphism, usize> = bases[n - 1].iter().enumerate().map(|(i, h)| (h, i)).collect();
        let faces: Vec<(GraphHomomorphism, i64)> = (1..n)
            .flat_map(|s| {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                [(cubes[n - 1].face(&cubes[n], s, false), sign), (cubes[n - 1].face(&cubes[n], s, true), -sign)]
            })
            .collect();
        let rows = bases[n]
            .iter()
            .map(|h| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (face, c) in &faces {
                    *acc.entry(index[&face.compose(h)]).or_default() += c;
                }
                let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
                row.sort_unstable();
                row
            })
            .collect();
        mats.push(SparseMatrix { nrows: bases[n].len(), ncols: bases[n - 1].len(), rows });
    }
    (sizes, mats)
}

fn complex(g: &SelfIndexedGraph, max: usize, q: bool) -> Result<(Vec<usize>, Vec<SparseMatrix>), HomologyError> {
    check_q(g, q)?;
    if classify(g) != GraphClass::General {
        return Ok(r_complex(g, max, q));
    }
    let rank = count_homomorphisms(&build_yn(max).graph, g);
    if rank > MAX_CHAIN_RANK {
        return Err(HomologyError::TooLarge { degree: max, rank });
    }
    Ok(general_complex(g, max))
}

/// Ranks of `C_0 ..= C_max` and the matrices `∂_1 ..= ∂_max`, stored at their
/// degree (index 0 holds an empty placeholder).
pub fn chain_complex(
    g: &SelfIndexedGraph,
    max: usize,
    q_quotient: bool,
) -> Result<(Vec<usize>, Vec<SparseMatrix>), HomologyError> {
    complex(g, max, q_quotient)
}

/// `∂_n: C_n -> C_(n-1)`, row `i` being the boundary of basis element `i`.
pub fn boundary_matrix(n: usize, g: &SelfIndexedGraph, q_quotient: bool) -> Result<SparseMatrix, HomologyError> {
    if n == 0 {
        return Err(HomologyError::Degree { min: 1, got: 0 });
    }
    Ok(complex(g, n, q_quotient)?.1.pop().unwrap())
}

/// Basis of `C_n` as tuples, used by the r-graph formula (and by the
/// q-quotient, which drops degenerate tuples).
pub fn r_basis(n: usize, g: &SelfIndexedGraph, q_quotient: bool) -> Result<Vec<Vec<usize>>, HomologyError> {
    check_q(g, q_quotient)?;
    Ok(r_tuples(g, n).pop().unwrap().into_iter().map(|(t, _)| t).filter(|t| !q_quotient || !degenerate(t)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `H_1 .. H_max`.
pub fn homology_range(g: &SelfIndexedGraph, max: usize, q_quotient: bool) -> Result<Vec<HomologyGroup>, HomologyError> {
    let (sizes, mats) = complex(g, max + 1, q_quotient)?;
    let forms: Vec<SmithForm> = mats.iter().map(smith_normal_form_sparse).collect();
    Ok((1..=max)
        .map(|n| HomologyGroup {
            betti: sizes[n] - forms[n].rank() - forms[n + 1].rank(),
            torsion: forms[n + 1].torsion(),
        })
        .collect())
}

pub fn homology(g: &SelfIndexedGraph, n: usize, q_quotient: bool) -> Result<HomologyGroup, HomologyError> {
    if n == 0 {
        return Err(HomologyError::Degree { min: 1, got: 0 });
    }
    Ok(homology_range(g, n, q_quotient)?.pop().unwrap())
}

/// `H_n = ...` lines.
pub fn homology_report(groups: &[HomologyGroup]) -> String {
    groups.iter().enumerate().map(|(i, h)| format!("H_{} = {h}\n", i + 1)).collect()
}

/// An integral chain: homomorphisms from `Y_degree` with coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub terms: Vec<(GraphHomomorphism, BigInt)>,
}

impl Chain {
    fn collect(degree: usize, acc: HashMap<GraphHomomorphism, BigInt>) -> Chain {
        let mut terms: Vec<(GraphHomomorphism, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| (tuple_of(&a.0), &a.0.vertex_map, &a.0.arrow_map).cmp(&(tuple_of(&b.0), &b.0.vertex_map, &b.0.arrow_map)));
        Chain { degree, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn boundary(&self) -> Chain {
        if self.degree == 0 {
            return Chain { degree: 0, terms: Vec::new() };
        }
        let big = build_yn(self.degree);
        let small = build_yn(self.degree - 1);
        let mut acc: HashMap<GraphHomomorphism, BigInt> = HashMap::new();
        for s in 1..self.degree {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            for (eps, c) in [(false, sign), (true, -sign)] {
                let face = small.face(&big, s, eps);
                for (h, k) in &self.terms {
                    *acc.entry(face.compose(h)).or_default() += k * c;
                }
            }
        }
        Chain::collect(self.degree - 1, acc)
    }
}

/// The degree-2 chain of a flow: arrow `e` is the homomorphism sending the
/// arrow of `y_2` to `e`.
pub fn flow_to_cycle(c: &Comte) -> Chain {
    let g = c.graph();
    let mut acc = HashMap::new();
    for (e, (a, flow)) in g.arrows().iter().zip(c.flows()).enumerate() {
        if !flow.is_zero() {
            let h = GraphHomomorphism { vertex_map: vec![a.label, a.source, a.target], arrow_map: vec![e] };
            acc.insert(h, flow.clone());
        }
    }
    Chain::collect(2, acc)
}

/// An `A`-valued cochain; homomorphisms not listed are sent to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub group: AbelianGroup,
    pub values: HashMap<GraphHomomorphism, Vec<i64>>,
}

impl Cochain {
    pub fn value(&self, h: &GraphHomomorphism) -> Vec<i64> {
        self.values.get(h).cloned().unwrap_or_else(|| self.group.zero())
    }

    /// The cocycle of a rack on the graph of that rack.
    pub fn from_cocycle2(rack: &FiniteRack, f: &Cocycle2) -> Cochain {
        let n = rack.size();
        let mut values = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                let h = GraphHomomorphism { vertex_map: vec![x, y, rack.op(x, y)], arrow_map: vec![x * n + y] };
                values.insert(h, f.value(x, y).to_vec());
            }
        }
        Cochain { degree: 2, group: f.group.clone(), values }
    }

    /// `δg`, evaluated on every homomorphism `Y_(degree+1) -> target`.
    pub fn coboundary(&self, target: &SelfIndexedGraph) -> Cochain {
        let n = self.degree + 1;
        let big = build_yn(n);
        let small = build_yn(self.degree);
        let mut values = HashMap::new();
        for h in enumerate_homs(n, target) {
            let mut acc = self.group.zero();
            for s in 1..n {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                for (eps, c) in [(false, sign), (true, -sign)] {
                    let v = self.value(&small.face(&big, s, eps).compose(&h));
                    acc = self.group.add(&acc, &self.group.scale(&v, &BigInt::from(c)));
                }
            }
            if acc.iter().any(|&x| x != 0) {
                values.insert(h, acc);
            }
        }
        Cochain { degree: n, group: self.group.clone(), values }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut values = self.values.clone();
        for (h, v) in &other.values {
            let sum = self.group.add(&self.value(h), v);
            values.insert(h.clone(), sum);
        }
        values.retain(|_, v| v.iter().any(|&x| x != 0));
        Cochain { degree: self.degree, group: self.group.clone(), values }
    }
}

/// Dense linear algebra over `F_p`.
mod modp {
    pub fn reduce(rows: &mut Vec<Vec<i64>>, p: i64) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, i);
            let inv = pow(rows[r][c], p - 2, p);
            for x in rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let k = rows[i][c];
                    for j in 0..ncols {
                        rows[i][j] = (rows[i][j] - k * rows[r][j]).rem_euclid(p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    pub fn pow(mut b: i64, mut e: i64, p: i64) -> i64 {
        let mut r = 1;
        b = b.rem_euclid(p);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    /// Basis of `{x : M x = 0}` for `M` with `ncols` columns.
    pub fn kernel(m: &[Vec<i64>], ncols: usize, p: i64) -> Vec<Vec<i64>> {
        let mut rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
        let pivots = if rows.is_empty() { Vec::new() } else { reduce(&mut rows, p) };
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; ncols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (-rows[r][f]).rem_euclid(p);
                }
                v
            })
            .collect()
    }

    pub fn rank(m: &[Vec<i64>], p: i64) -> usize {
        let mut rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
        if rows.is_empty() {
            return 0;
        }
        reduce(&mut rows, p).len()
    }
}

/// Quandle 2-cocycles and 2-coboundaries of a q-graph with coefficients in
/// `Z/p`, over the non-degenerate pairs.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub p: u64,
    /// the non-degenerate pairs `<a_1, a_2>`, indexing the vectors below
    pub pairs: Vec<Vec<usize>>,
    pub cocycles: Vec<Vec<i64>>,
    pub coboundaries: Vec<Vec<i64>>,
    boundary3: SparseMatrix,
}

impl CocycleSpace {
    /// Dimension of `H^2_Q` over `Z/p`.
    pub fn cohomology_dim(&self) -> usize {
        self.cocycles.len() - self.coboundaries.len()
    }

    pub fn is_cocycle(&self, v: &[i64]) -> bool {
        let p = self.p as i64;
        self.boundary3.rows.iter().all(|r| r.iter().map(|&(c, x)| x * v[c]).sum::<i64>().rem_euclid(p) == 0)
    }

    pub fn is_coboundary(&self, v: &[i64]) -> bool {
        let p = self.p as i64;
        let mut m = self.coboundaries.clone();
        let base = modp::rank(&m, p);
        m.push(v.to_vec());
        modp::rank(&m, p) == base
    }

    /// Values of a rack cocycle on the pairs, for membership tests.
    pub fn vector_of(&self, f: &Cocycle2) -> Vec<i64> {
        self.pairs.iter().map(|t| f.value(t[0], t[1])[0]).collect()
    }

    /// A vector as a cochain on `g` (degenerate pairs get 0).
    pub fn cochain(&self, g: &SelfIndexedGraph, v: &[i64]) -> Cochain {
        let homs = enumerate_homs(2, g);
        let index: HashMap<&[usize], usize> = self.pairs.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let mut values = HashMap::new();
        for h in homs {
            if let Some(&i) = index.get(tuple_of(&h).as_slice()) {
                if v[i] != 0 {
                    values.insert(h, vec![v[i]]);
                }
            }
        }
        Cochain { degree: 2, group: AbelianGroup::cyclic(self.p), values }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn q2_cocycles(g: &SelfIndexedGraph, p: u64) -> Result<CocycleSpace, HomologyError> {
    check_q(g, true)?;
    if !is_prime(p) || p > 1 << 31 {
        return Err(HomologyError::UnsupportedOrder(p));
    }
    let (sizes, mats) = r_complex(g, 3, true);
    let pairs = r_basis(2, g, true)?;
    let pi = p as i64;
    let cocycles = modp::kernel(&dense_i64(&mats[3]), sizes[2], pi);
    // coboundaries: the image of g -> g∘∂_2, spanned by the columns of ∂_2
    let mut cols = transpose(&mats[2]);
    let mut coboundaries = Vec::new();
    if !cols.is_empty() {
        for r in cols.iter_mut() {
            for x in r.iter_mut() {
                *x = x.rem_euclid(pi);
            }
        }
        modp::reduce(&mut cols, pi);
        coboundaries = cols;
    }
    Ok(CocycleSpace { p, pairs, cocycles, coboundaries, boundary3: mats[3].clone() })
}

fn dense_i64(m: &SparseMatrix) -> Vec<Vec<i64>> {
    m.rows
        .iter()
        .map(|r| {
            let mut d = vec![0; m.ncols];
            for &(c, v) in r {
                d[c] = v;
            }
            d
        })
        .collect()
}

fn transpose(m: &SparseMatrix) -> Vec<Vec<i64>> {
    let mut t = vec![vec![0; m.nrows]; m.ncols];
    for (i, r) in m.rows.iter().enumerate() {
        for &(c, v) in r {
            t[c][i] = v;
        }
    }
    t
}

/// Cohomology class test helper: `g` as a degree-1 cochain on a rack graph.
pub fn rack_one_cochain(rack: &FiniteRack, group: AbelianGroup, g: &[Vec<i64>]) -> Cochain {
    let graph = graph_of_rack(rack);
    let mut values = HashMap::new();
    for (h, v) in enumerate_homs(1, &graph).into_iter().zip(g) {
        values.insert(h, v.clone());
    }
    Cochain { degree: 1, group, values }
}

/// `∂_(n-1) ∂_n`, exactly.
pub fn boundary_squared(g: &SelfIndexedGraph, n: usize, q_quotient: bool) -> Result<Vec<Vec<BigInt>>, HomologyError> {
    let (_, mats) = complex(g, n, q_quotient)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    Ok(mats[n].mul(&mats[n - 1]))
}

pub fn is_zero_matrix(m: &[Vec<BigInt>]) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hoc() -> SelfIndexedGraph {
        SelfIndexedGraph::from_names(
            &["a", "b", "c"],
            &[
                ("a", "a", "a"),
                ("b", "b", "b"),
                ("c", "c", "c"),
                ("b", "a", "b"),
                ("c", "a", "c"),
                ("a", "b", "c"),
                ("c", "b", "a"),
                ("a", "c", "b"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn cube_sizes_and_labels() {
        let y = build_yn(4);
        for m in 1..=4 {
            let nv = y.cells.iter().filter(|c| c.0 == m).count();
            let na = y.arrow_cells.iter().filter(|c| c.0 == m).count();
            assert_eq!(nv, 1 << (m - 1));
            assert_eq!(na, if m == 1 { 0 } else { (m - 1) << (m - 2) });
        }
        let y3: Vec<String> = (3..7).map(|v| label_text(&y.vertex_labels[v])).collect();
        assert_eq!(y3, ["3", "1.3", "2.3", "1.2.3"]);
        let y3_arrows: Vec<String> = y
            .arrow_cells
            .iter()
            .zip(&y.arrow_labels)
            .filter(|(c, _)| c.0 == 3)
            .map(|(_, l)| label_text(l))
            .collect();
        assert_eq!(y3_arrows, ["1", "2", "1.2", "1"]);
        assert_eq!(build_yn(1).graph.vertex_count(), 1);
        assert_eq!(build_yn(1).graph.arrow_count(), 0);
    }

    #[test]
    fn faces_are_homomorphisms_with_rear_face_example() {
        for n in 1..5 {
            let (small, big) = (build_yn(n), build_yn(n + 1));
            for s in 1..=n {
                for eps in [false, true] {
                    assert!(small.face(&big, s, eps).is_valid(&small.graph, &big.graph));
                }
            }
        }
        let (y3, y4) = (build_yn(3), build_yn(4));
        let d = y3.face(&y4, 2, true);
        let label = |v: usize| label_text(&y4.vertex_labels[d.vertex_map[v]]);
        // 3 -> 2.4, 1.3 -> 1.2.4, 2.3 -> 2.3.4, 1.2.3 -> 1.2.3.4; y1 fixed
        assert_eq!([label(3), label(4), label(5), label(6), label(0)], ["2.4", "1.2.4", "2.3.4", "1.2.3.4", "1"]);
    }

    #[test]
    fn degree_two_homs_are_arrows() {
        let g = hoc();
        assert_eq!(enumerate_homs(2, &g).len(), 8);
        let t = graph_of_rack(&FiniteRack::tetrahedron());
        assert_eq!(enumerate_homs(2, &t).len(), 16);
        let multi = SelfIndexedGraph::from_names(&["a", "b"], &[("a", "b", "b"), ("a", "b", "b")]).unwrap();
        assert_eq!(enumerate_homs(2, &multi).len(), 2);
    }

    #[test]
    fn r_path_matches_general_path() {
        for g in [hoc(), graph_of_rack(&FiniteRack::dihedral(3))] {
            let (s1, m1) = r_complex(&g, 4, false);
            let (s2, m2) = general_complex(&g, 4);
            assert_eq!(s1, s2);
            assert_eq!(m1, m2);
            let cube = build_yn(4);
            assert_eq!(enumerate_homs(4, &g), {
                let mut v = homomorphisms(&cube.graph, &g);
                v.sort_by_key(tuple_of);
                v
            });
        }
    }

    #[test]
    fn hoc_homology() {
        let h = homology_range(&hoc(), 5, false).unwrap();
        let betti: Vec<usize> = h.iter().map(|x| x.betti).collect();
        assert_eq!(betti, [1, 2, 4, 7, 11]);
        assert!(h.iter().all(|x| x.torsion.is_empty()));
        assert_eq!(homology_report(&h[..2]), "H_1 = Z\nH_2 = Z^2\n");
    }

    #[test]
    fn boundary_n2_formula() {
        let g = hoc();
        let m = boundary_matrix(2, &g, false).unwrap();
        let b1 = r_basis(1, &g, false).unwrap();
        let b2 = r_basis(2, &g, false).unwrap();
        let p = Product::new(&g);
        for (row, t) in m.rows.iter().zip(&b2) {
            // -(<a2> - <a1·a2>)
            let mut expect: HashMap<usize, i64> = HashMap::new();
            *expect.entry(b1.iter().position(|x| x == &vec![t[1]]).unwrap()).or_default() -= 1;
            let prod = p.get(t[0], t[1]).unwrap();
            *expect.entry(b1.iter().position(|x| x == &vec![prod]).unwrap()).or_default() += 1;
            let mut e: Vec<(usize, i64)> = expect.into_iter().filter(|&(_, v)| v != 0).collect();
            e.sort_unstable();
            assert_eq!(row, &e);
        }
    }

    #[test]
    fn parallel_loops_hit_the_size_limit() {
        let g = SelfIndexedGraph::from_names(&["a"], &[("a", "a", "a"); 4]).unwrap();
        assert!(homology(&g, 2, false).is_ok());
        assert!(matches!(homology(&g, 3, false), Err(HomologyError::TooLarge { degree: 4, .. })));
    }

    #[test]
    fn q_quotient_needs_q_graph() {
        let g = SelfIndexedGraph::from_names(&["a", "b"], &[("a", "b", "b")]).unwrap();
        assert!(matches!(homology(&g, 1, true), Err(HomologyError::NotQGraph(_))));
        assert!(homology(&g, 1, false).is_ok());
    }

    #[test]
    fn flow_chain_boundaries() {
        let tre = Comte::from_names(&["a", "b", "c"], &[("a", "c", "b", 1), ("b", "a", "c", 1), ("c", "b", "a", 1)])
            .unwrap();
        assert!(flow_to_cycle(&tre).boundary().is_zero());
        let g = SelfIndexedGraph::from_names(&["a", "b"], &[("a", "b", "b")]).unwrap();
        let c = Comte::new_unchecked(g, vec![BigInt::from(1)]).unwrap();
        let b = flow_to_cycle(&c).boundary();
        let terms: Vec<(Vec<usize>, BigInt)> = b.terms.iter().map(|(h, k)| (tuple_of(h), k.clone())).collect();
        assert_eq!(terms, vec![(vec![0], BigInt::from(-1)), (vec![1], BigInt::from(1))]);
        assert!(flow_to_cycle(&Comte::zero_flow(hoc())).is_zero());
    }

    #[test]
    fn tetrahedron_has_nontrivial_h2q() {
        let t = FiniteRack::tetrahedron();
        let g = graph_of_rack(&t);
        let space = q2_cocycles(&g, 2).unwrap();
        assert!(space.cocycles.len() > space.coboundaries.len());
        let v = space.vector_of(&crate::quandle::tetrahedron_cocycle());
        assert!(space.is_cocycle(&v));
        assert!(!space.is_coboundary(&v));
        let one = graph_of_rack(&FiniteRack::trivial(1));
        assert_eq!(q2_cocycles(&one, 2).unwrap().cohomology_dim(), 0);
        assert!(matches!(q2_cocycles(&g, 4), Err(HomologyError::UnsupportedOrder(4))));
    }
}
