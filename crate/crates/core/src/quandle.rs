//! Finite racks and quandles, their 2-cocycles, colorings and state sums.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::hom::{homomorphisms, vertex_maps};
use crate::graph::{Arrow, Comte, GraphHomomorphism, SelfIndexedGraph};
use crate::homology::{Chain, Cochain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("not a rack: {0}")]
    NotRack(RackViolation),
    #[error("not a quandle: {0} |> {0} != {0}")]
    NotQuandle(usize),
    #[error("not a 2-cocycle: fails at ({0}, {1}, {2})")]
    NotCocycle(usize, usize, usize),
    #[error("cocycle is not normalized: f({0}, {0}) != 0")]
    NotNormalized(usize),
    #[error("chain has degree {chain} but cochain has degree {cochain}")]
    DegreeMismatch { chain: usize, cochain: usize },
    #[error("group element {element:?} does not fit orders {orders:?}")]
    BadElement { element: Vec<i64>, orders: Vec<u64> },
    #[error("unknown quandle {0:?}; builtins are trivial<n>, dihedral3, tetrahedron")]
    UnknownBuiltin(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// First failing axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RackViolation {
    Shape { row: usize, len: usize, n: usize },
    OutOfRange { x: usize, y: usize, value: usize },
    /// `x |> ?` hits `value` twice
    NotBijective { x: usize, value: usize },
    /// `x |> (y |> z) != (x |> y) |> (x |> z)`
    NotDistributive { x: usize, y: usize, z: usize },
}

impl fmt::Display for RackViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RackViolation::Shape { row, len, n } => write!(f, "row {row} has {len} entries, expected {n}"),
            RackViolation::OutOfRange { x, y, value } => write!(f, "{x} |> {y} = {value} is out of range"),
            RackViolation::NotBijective { x, value } => write!(f, "row {x} is not a bijection (repeats {value})"),
            RackViolation::NotDistributive { x, y, z } => {
                write!(f, "{x} |> ({y} |> {z}) != ({x} |> {y}) |> ({x} |> {z})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RackCheck {
    NotRack(RackViolation),
    Rack,
    Quandle,
}

pub fn check_rack(table: &[Vec<usize>]) -> RackCheck {
    let n = table.len();
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return RackCheck::NotRack(RackViolation::Shape { row: x, len: row.len(), n });
        }
        let mut seen = vec![false; n];
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                return RackCheck::NotRack(RackViolation::OutOfRange { x, y, value: v });
            }
            if seen[v] {
                return RackCheck::NotRack(RackViolation::NotBijective { x, value: v });
            }
            seen[v] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]] {
                    return RackCheck::NotRack(RackViolation::NotDistributive { x, y, z });
                }
            }
        }
    }
    if (0..n).all(|x| table[x][x] == x) {
        RackCheck::Quandle
    } else {
        RackCheck::Rack
    }
}

/// `table[x][y] = x |> y` on `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRack {
    table: Vec<Vec<usize>>,
    quandle: bool,
}

impl FiniteRack {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        match check_rack(&table) {
            RackCheck::NotRack(w) => Err(QuandleError::NotRack(w)),
            RackCheck::Rack => Ok(FiniteRack { table, quandle: false }),
            RackCheck::Quandle => Ok(FiniteRack { table, quandle: true }),
        }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn is_quandle(&self) -> bool {
        self.quandle
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn trivial(n: usize) -> Self {
        FiniteRack { table: (0..n).map(|_| (0..n).collect()).collect(), quandle: true }
    }

    /// `x |> y = 2x - y mod n`.
    pub fn dihedral(n: usize) -> Self {
        let table = (0..n).map(|x| (0..n).map(|y| (2 * x + n - y) % n).collect()).collect();
        FiniteRack::new(table).expect("dihedral quandle")
    }

    /// The affine quandle over `F_4`: `x |> y = (1 + w) x + w y`. Element
    /// `i` is the field element with bits `i` in the basis `1, w`.
    pub fn tetrahedron() -> Self {
        let table = (0..4).map(|x| (0..4).map(|y| f4_add(f4_mul(3, x), f4_mul(2, y))).collect()).collect();
        FiniteRack::new(table).expect("tetrahedron quandle")
    }

    /// `trivial<n>`, `dihedral3` or `tetrahedron`.
    pub fn builtin(name: &str) -> Result<Self, QuandleError> {
        if let Some(n) = name.strip_prefix("trivial").and_then(|s| s.parse::<usize>().ok()) {
            return Ok(Self::trivial(n));
        }
        match name {
            "dihedral3" => Ok(Self::dihedral(3)),
            "tetrahedron" => Ok(Self::tetrahedron()),
            _ => Err(QuandleError::UnknownBuiltin(name.to_string())),
        }
    }

    /// First line `n`, then `n` rows of `n` integers.
    pub fn parse(text: &str) -> Result<Self, QuandleError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, message: String| QuandleError::Format { line: line + 1, message };
        let (l0, first) = lines.next().ok_or_else(|| bad(0, "empty rack file".into()))?;
        let n: usize = first.trim().parse().map_err(|_| bad(l0, format!("expected size, got {first:?}")))?;
        let mut table = Vec::with_capacity(n);
        for (i, line) in lines {
            let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            table.push(row.map_err(|_| bad(i, format!("bad row {line:?}")))?);
        }
        if table.len() != n {
            return Err(bad(l0, format!("expected {n} rows, found {}", table.len())));
        }
        FiniteRack::new(table)
    }
}

impl fmt::Display for FiniteRack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size())?;
        for row in &self.table {
            let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", r.join(" "))?;
        }
        Ok(())
    }
}

fn f4_add(x: usize, y: usize) -> usize {
    x ^ y
}

fn f4_mul(x: usize, y: usize) -> usize {
    // carry-less product reduced by w^2 = w + 1
    let mut p = 0;
    for i in 0..2 {
        if y >> i & 1 == 1 {
            p ^= x << i;
        }
    }
    if p & 4 != 0 {
        p ^= 0b111;
    }
    p
}

/// A finite abelian group `Z/o_1 x .. x Z/o_k`; order 0 stands for `Z`.
/// Elements are residue vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn cyclic(order: u64) -> Self {
        AbelianGroup { orders: vec![order] }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.orders.len()]
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (v, &o) in x.iter_mut().zip(&self.orders) {
            if o > 0 {
                *v = v.rem_euclid(o as i64);
            }
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut z: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&mut z);
        z
    }

    pub fn scale(&self, x: &[i64], k: &BigInt) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(&v, &o)| {
                let prod = BigInt::from(v) * k;
                if o == 0 {
                    i64::try_from(prod).expect("integer coefficient fits in i64")
                } else {
                    let r = ((prod % o) + o) % o;
                    i64::try_from(r).unwrap()
                }
            })
            .collect()
    }

    pub fn check(&self, x: &[i64]) -> Result<(), QuandleError> {
        let ok = x.len() == self.orders.len() && x.iter().zip(&self.orders).all(|(&v, &o)| o == 0 || (0..o as i64).contains(&v));
        if ok {
            Ok(())
        } else {
            Err(QuandleError::BadElement { element: x.to_vec(), orders: self.orders.clone() })
        }
    }
}

/// An element of the group ring `ZA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    pub group: AbelianGroup,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl GroupRingElement {
    pub fn zero(group: AbelianGroup) -> Self {
        GroupRingElement { group, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, element: Vec<i64>, k: BigInt) {
        let e = self.terms.entry(element.clone()).or_default();
        *e += k;
        if e.is_zero() {
            self.terms.remove(&element);
        }
    }

    /// The augmentation: sum of all multiplicities.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn coefficient(&self, element: &[i64]) -> BigInt {
        self.terms.get(element).cloned().unwrap_or_default()
    }
}

/// `4 + 12*s` style: the generator of a cyclic group is `s`, of a product
/// `s1, s2, ..`; the identity is written as a bare coefficient.
impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let k = self.group.orders.len();
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &r)| r != 0)
                .map(|(i, &r)| {
                    let s = if k == 1 { "s".to_string() } else { format!("s{}", i + 1) };
                    if r == 1 {
                        s
                    } else {
                        format!("{s}^{r}")
                    }
                })
                .collect();
            parts.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{c}*{}", mono.join("*"))
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `f(x, y)` in `A` for each pair; `x` is the acting element (the label).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub group: AbelianGroup,
    pub values: Vec<Vec<Vec<i64>>>,
}

impl Cocycle2 {
    pub fn zero(n: usize, group: AbelianGroup) -> Self {
        let z = group.zero();
        Cocycle2 { values: vec![vec![z; n]; n], group }
    }

    pub fn value(&self, x: usize, y: usize) -> &[i64] {
        &self.values[x][y]
    }

    /// Checks `f(x|>y, x|>z) + f(x, z) = f(x, y|>z) + f(y, z)` and `f(x, x) = 0`.
    pub fn check(&self, rack: &FiniteRack) -> Result<(), QuandleError> {
        let n = rack.size();
        let g = &self.group;
        for x in 0..n {
            if self.values[x][x].iter().any(|&v| v != 0) {
                return Err(QuandleError::NotNormalized(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = g.add(self.value(rack.op(x, y), rack.op(x, z)), self.value(x, z));
                    let r = g.add(self.value(x, rack.op(y, z)), self.value(y, z));
                    if l != r {
                        return Err(QuandleError::NotCocycle(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Lines `x y -> a` with `a` as comma-separated residues; the first
    /// non-empty line gives the orders, `orders 2` or `orders 2,3`. Pairs
    /// not listed are 0.
    pub fn parse(text: &str, n: usize) -> Result<Self, QuandleError> {
        let bad = |line: usize, message: String| QuandleError::Format { line: line + 1, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (l0, head) = lines.next().ok_or_else(|| bad(0, "empty cocycle file".into()))?;
        let orders: Vec<u64> = head
            .trim()
            .strip_prefix("orders")
            .ok_or_else(|| bad(l0, "expected `orders ...`".into()))?
            .trim()
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(l0, format!("bad orders {head:?}")))?;
        let group = AbelianGroup { orders };
        let mut f = Cocycle2::zero(n, group.clone());
        for (i, line) in lines {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| bad(i, format!("missing `->` in {line:?}")))?;
            let xy: Vec<usize> = lhs
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| bad(i, format!("bad pair {lhs:?}")))?;
            let [x, y] = xy[..] else { return Err(bad(i, format!("expected two elements in {lhs:?}"))) };
            if x >= n || y >= n {
                return Err(bad(i, format!("element out of range in {lhs:?}")));
            }
            let a: Vec<i64> = rhs
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| bad(i, format!("bad group element {rhs:?}")))?;
            group.check(&a)?;
            f.values[x][y] = a;
        }
        Ok(f)
    }
}

impl fmt::Display for Cocycle2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o: Vec<String> = self.group.orders.iter().map(|o| o.to_string()).collect();
        writeln!(f, "orders {}", o.join(","))?;
        for (x, row) in self.values.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                if v.iter().any(|&r| r != 0) {
                    let a: Vec<String> = v.iter().map(|r| r.to_string()).collect();
                    writeln!(f, "{x} {y} -> {}", a.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// The cocycle of the tetrahedron quandle with values in `C_2`: the
/// generator unless `x = 0`, `y = 0` or `x = y`.
pub fn tetrahedron_cocycle() -> Cocycle2 {
    let group = AbelianGroup::cyclic(2);
    let values = (0..4)
        .map(|x| (0..4).map(|y| vec![i64::from(x != 0 && y != 0 && x != y)]).collect())
        .collect();
    Cocycle2 { group, values }
}

/// Arrows `y --x--> x |> y`, arrow `x * n + y` for the pair `(x, y)`.
pub fn graph_of_rack(rack: &FiniteRack) -> SelfIndexedGraph {
    let n = rack.size();
    let mut arrows = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            arrows.push(Arrow::new(y, rack.op(x, y), x));
        }
    }
    SelfIndexedGraph::new((0..n).map(|i| i.to_string()).collect(), arrows).expect("indices in range")
}

/// Maps `C: V -> X` with `C(label) |> C(source) = C(target)` on every arrow,
/// in lexicographic order.
pub fn colorings(g: &SelfIndexedGraph, rack: &FiniteRack) -> Vec<Vec<usize>> {
    vertex_maps(g, &graph_of_rack(rack))
}

/// Sum over colorings of the product over arrows of `f(C(label), C(source))`
/// raised to the flow.
pub fn phi_invariant(c: &Comte, rack: &FiniteRack, f: &Cocycle2) -> GroupRingElement {
    let g = c.graph();
    let mut out = GroupRingElement::zero(f.group.clone());
    for col in colorings(g, rack) {
        let mut acc = f.group.zero();
        for (a, flow) in g.arrows().iter().zip(c.flows()) {
            if !flow.is_zero() {
                acc = f.group.add(&acc, &f.group.scale(f.value(col[a.label], col[a.source]), flow));
            }
        }
        out.add_term(acc, BigInt::one());
    }
    out
}

/// `<I, f>`: over all homomorphisms `s: source -> target`, the element
/// `sum_t I_t f(s . t)` of `A`, collected in `ZA`.
pub fn state_sum(
    source: &SelfIndexedGraph,
    chain: &Chain,
    target: &SelfIndexedGraph,
    f: &Cochain,
) -> Result<GroupRingElement, QuandleError> {
    if chain.degree != f.degree {
        return Err(QuandleError::DegreeMismatch { chain: chain.degree, cochain: f.degree });
    }
    let group = &f.group;
    let mut out = GroupRingElement::zero(group.clone());
    let mut cache: HashMap<GraphHomomorphism, Vec<i64>> = HashMap::new();
    for sigma in homomorphisms(source, target) {
        let mut acc = group.zero();
        for (tau, coeff) in &chain.terms {
            let composed = tau.compose(&sigma);
            let v = cache.entry(composed.clone()).or_insert_with(|| f.value(&composed));
            acc = group.add(&acc, &group.scale(v, coeff));
        }
        out.add_term(acc, BigInt::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{classify, GraphClass};

    #[test]
    fn builtins_are_quandles() {
        for name in ["trivial1", "trivial3", "dihedral3", "tetrahedron"] {
            let q = FiniteRack::builtin(name).unwrap();
            assert_eq!(check_rack(q.table()), RackCheck::Quandle, "{name}");
        }
        assert!(FiniteRack::builtin("cube").is_err());
    }

    #[test]
    fn tetrahedron_rotations_fix_their_vertex() {
        let t = FiniteRack::tetrahedron();
        for x in 0..4 {
            assert_eq!(t.op(x, x), x);
            let row = t.table()[x].clone();
            let moved: Vec<usize> = (0..4).filter(|&y| row[y] != y).collect();
            assert_eq!(moved.len(), 3);
            // a 3-cycle on the other vertices
            let y = moved[0];
            assert_eq!(row[row[row[y]]], y);
        }
    }

    #[test]
    fn non_bijective_row_is_named() {
        let table = vec![vec![0, 0], vec![0, 1]];
        assert_eq!(check_rack(&table), RackCheck::NotRack(RackViolation::NotBijective { x: 0, value: 0 }));
    }

    #[test]
    fn rack_that_is_not_quandle() {
        // x |> y = y + 1 mod 2
        let r = FiniteRack::new(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(!r.is_quandle());
        assert_eq!(classify(&graph_of_rack(&r)), GraphClass::RGraph);
        assert_eq!(classify(&graph_of_rack(&FiniteRack::tetrahedron())), GraphClass::QGraph);
    }

    #[test]
    fn tetrahedron_cocycle_checks() {
        let f = tetrahedron_cocycle();
        f.check(&FiniteRack::tetrahedron()).unwrap();
        let mut broken = f.clone();
        broken.values[1][2] = vec![0];
        assert!(broken.check(&FiniteRack::tetrahedron()).is_err());
    }

    #[test]
    fn file_formats_round_trip() {
        let t = FiniteRack::tetrahedron();
        assert_eq!(FiniteRack::parse(&t.to_string()).unwrap(), t);
        let f = tetrahedron_cocycle();
        assert_eq!(Cocycle2::parse(&f.to_string(), 4).unwrap(), f);
        assert!(matches!(Cocycle2::parse("orders 2\n0 1 -> 5\n", 4), Err(QuandleError::BadElement { .. })));
        assert!(matches!(FiniteRack::parse("2\n0 1\n"), Err(QuandleError::Format { .. })));
    }

    #[test]
    fn display_group_ring() {
        let mut e = GroupRingElement::zero(AbelianGroup::cyclic(2));
        e.add_term(vec![0], BigInt::from(4));
        e.add_term(vec![1], BigInt::from(12));
        assert_eq!(e.to_string(), "4 + 12*s");
        assert_eq!(e.augmentation(), BigInt::from(16));
    }
}
