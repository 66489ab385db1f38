//! The moves R0–R3 on comtes, their inverses, and a bounded equivalence search.
//!
//! Every `apply` returns the resulting comte together with a move instance
//! that undoes it on that result. Vertex and arrow indices refer to the comte
//! a move is applied to; removals shift later indices down, additions append.

mod search;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{Arrow, Comte, SelfIndexedGraph};

pub use search::{equivalent_bounded, transport, Budget, MoveTrace, SearchOutcome, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("stale site: {0}")]
    StaleSite(String),
    #[error("move does not apply: {0}")]
    NotApplicable(String),
    #[error("cannot parse move {0:?}")]
    Parse(String),
}

fn stale(what: &str, index: usize) -> MoveError {
    MoveError::StaleSite(format!("{what} {index} does not exist"))
}

fn not_applicable(msg: impl Into<String>) -> MoveError {
    MoveError::NotApplicable(msg.into())
}

/// One end of an arrow at a vertex, or the arrow's label occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Source,
    Target,
    Label,
}

impl End {
    fn of(self, a: &Arrow) -> usize {
        match self {
            End::Source => a.source,
            End::Target => a.target,
            End::Label => a.label,
        }
    }

    fn set(self, a: &mut Arrow, v: usize) {
        match self {
            End::Source => a.source = v,
            End::Target => a.target = v,
            End::Label => a.label = v,
        }
    }
}

/// Everything attached to `v`: arrow ends and label occurrences, by arrow index.
pub fn split_items(g: &SelfIndexedGraph, v: usize) -> Vec<(usize, End)> {
    let mut out = Vec::new();
    for (e, a) in g.arrows().iter().enumerate() {
        for end in [End::Source, End::Target, End::Label] {
            if end.of(a) == v {
                out.push((e, end));
            }
        }
    }
    out
}

/// A witness arrow `b --a--> t` and the four sides of its square:
/// `c --a--> u`, `u --t--> s`, `c --b--> r`, `r --a--> s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub witness: usize,
    pub sides: [usize; 4],
}

/// How an arrow splits in an inverse R2: into two parallel arrows (the new
/// one taking `flow`), or by also splitting its merged endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Split {
    Parallel { flow: BigInt },
    Vertex { assignment: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    R0 { vertex: usize },
    R0Inv { anchor: usize, label: usize, outward: bool },
    R1Contract { arrow: usize },
    /// New vertex `w` receives the items whose bit is set, joined by `vertex -> w`
    /// labeled `vertex` (`label_old`) or `w`.
    R1Split { vertex: usize, assignment: u64, label_old: bool },
    R1LoopDelete { arrow: usize },
    R1LoopAdd { vertex: usize, flow: BigInt },
    R2a { first: usize, second: usize },
    R2aSplit { arrow: usize, split: Split },
    R2b { first: usize, second: usize },
    R2bSplit { arrow: usize, split: Split },
    R3aRemove { square: Square, side: usize },
    R3aAdd { witness: usize, sides: [Option<usize>; 4] },
    R3bShift { square: Square, shift: BigInt },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R0,
    R0Inv,
    R1Contract,
    R1Split,
    R1LoopDelete,
    R1LoopAdd,
    R2a,
    R2aSplit,
    R2b,
    R2bSplit,
    R3aRemove,
    R3aAdd,
    R3bShift,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R0 => "R0",
            MoveKind::R0Inv => "R0inv",
            MoveKind::R1Contract => "R1contract",
            MoveKind::R1Split => "R1split",
            MoveKind::R1LoopDelete => "R1loopdel",
            MoveKind::R1LoopAdd => "R1loopadd",
            MoveKind::R2a => "R2a",
            MoveKind::R2aSplit => "R2a_split",
            MoveKind::R2b => "R2b",
            MoveKind::R2bSplit => "R2b_split",
            MoveKind::R3aRemove => "R3a_remove",
            MoveKind::R3aAdd => "R3a_add",
            MoveKind::R3bShift => "R3b_shift",
        }
    }

    /// The move family (R0, R1, R2, R3(a), R3(b)) of this instance.
    pub fn family(self) -> &'static str {
        match self {
            MoveKind::R0 | MoveKind::R0Inv => "R0",
            MoveKind::R1Contract | MoveKind::R1Split | MoveKind::R1LoopDelete | MoveKind::R1LoopAdd => "R1",
            MoveKind::R2a | MoveKind::R2aSplit | MoveKind::R2b | MoveKind::R2bSplit => "R2",
            MoveKind::R3aRemove | MoveKind::R3aAdd => "R3(a)",
            MoveKind::R3bShift => "R3(b)",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R0 { .. } => MoveKind::R0,
            Move::R0Inv { .. } => MoveKind::R0Inv,
            Move::R1Contract { .. } => MoveKind::R1Contract,
            Move::R1Split { .. } => MoveKind::R1Split,
            Move::R1LoopDelete { .. } => MoveKind::R1LoopDelete,
            Move::R1LoopAdd { .. } => MoveKind::R1LoopAdd,
            Move::R2a { .. } => MoveKind::R2a,
            Move::R2aSplit { .. } => MoveKind::R2aSplit,
            Move::R2b { .. } => MoveKind::R2b,
            Move::R2bSplit { .. } => MoveKind::R2bSplit,
            Move::R3aRemove { .. } => MoveKind::R3aRemove,
            Move::R3aAdd { .. } => MoveKind::R3aAdd,
            Move::R3bShift { .. } => MoveKind::R3bShift,
        }
    }
}

/// Knobs for enumerating move instances.
#[derive(Clone, Debug)]
pub struct MoveOptions {
    /// Work with the underlying graph: flows are zero and R3(b) is skipped.
    pub ignore_flows: bool,
    /// R3(b) shifts `J` with `1 <= |J| <= r3b_range`.
    pub r3b_range: i64,
    /// Flows tried for added loops and for the first arrow of a parallel split.
    pub flow_range: (i64, i64),
    /// Vertices with more items than this are not split.
    pub max_split_items: usize,
    /// Moves that would exceed these sizes are not enumerated.
    pub max_vertices: usize,
    pub max_arrows: usize,
}

impl Default for MoveOptions {
    fn default() -> Self {
        MoveOptions {
            ignore_flows: false,
            r3b_range: 3,
            flow_range: (-1, 1),
            max_split_items: 6,
            max_vertices: usize::MAX,
            max_arrows: usize::MAX,
        }
    }
}

/// The comte produced by a move and the instance that undoes it.
#[derive(Clone, Debug)]
pub struct Applied {
    pub comte: Comte,
    pub inverse: Move,
}

struct Work {
    names: Vec<String>,
    arrows: Vec<Arrow>,
    flows: Vec<BigInt>,
}

fn shift(x: usize, removed: usize) -> usize {
    if x > removed {
        x - 1
    } else {
        x
    }
}

impl Work {
    fn new(c: &Comte) -> Self {
        Work {
            names: c.graph().vertices().to_vec(),
            arrows: c.graph().arrows().to_vec(),
            flows: c.flows().to_vec(),
        }
    }

    fn remove_arrow(&mut self, e: usize) {
        self.arrows.remove(e);
        self.flows.remove(e);
    }

    fn remove_vertex(&mut self, v: usize) {
        self.names.remove(v);
        for a in &mut self.arrows {
            debug_assert!(a.source != v && a.target != v && a.label != v);
            a.source = shift(a.source, v);
            a.target = shift(a.target, v);
            a.label = shift(a.label, v);
        }
    }

    /// Replaces `gone` by `keep` everywhere, then drops `gone`.
    fn merge(&mut self, keep: usize, gone: usize) {
        if keep == gone {
            return;
        }
        for a in &mut self.arrows {
            for end in [End::Source, End::Target, End::Label] {
                if end.of(a) == gone {
                    end.set(a, keep);
                }
            }
        }
        self.remove_vertex(gone);
    }

    fn add_vertex(&mut self) -> usize {
        let mut k = self.names.len();
        let name = loop {
            let cand = format!("v{k}");
            if !self.names.contains(&cand) {
                break cand;
            }
            k += 1;
        };
        self.names.push(name);
        self.names.len() - 1
    }

    fn add_arrow(&mut self, a: Arrow, flow: BigInt) -> usize {
        self.arrows.push(a);
        self.flows.push(flow);
        self.arrows.len() - 1
    }

    /// Net flow (out minus in) at `v`.
    fn net(&self, v: usize) -> BigInt {
        let mut d = BigInt::zero();
        for (a, i) in self.arrows.iter().zip(&self.flows) {
            if a.source == v {
                d += i;
            }
            if a.target == v {
                d -= i;
            }
        }
        d
    }

    fn finish(self) -> Comte {
        let g = SelfIndexedGraph::from_parts_unchecked(self.names, self.arrows);
        let c = Comte::new_unchecked(g, self.flows).expect("one flow per arrow");
        debug_assert!(crate::graph::validate(&c).is_valid(), "move broke conservation: {c}");
        c
    }
}

fn check_arrow(c: &Comte, e: usize) -> Result<Arrow, MoveError> {
    if e >= c.graph().arrow_count() {
        return Err(stale("arrow", e));
    }
    Ok(c.graph().arrow(e))
}

fn check_vertex(c: &Comte, v: usize) -> Result<(), MoveError> {
    if v >= c.graph().vertex_count() {
        return Err(stale("vertex", v));
    }
    Ok(())
}

fn check_mask(mask: u64, items: usize) -> Result<(), MoveError> {
    if items < 64 && mask >> items != 0 {
        return Err(not_applicable(format!("assignment {mask:#b} exceeds {items} items")));
    }
    if items > 64 {
        return Err(not_applicable("too many items to split"));
    }
    Ok(())
}

/// Whether `sq` is a witness plus a well-formed square of five distinct arrows.
pub fn square_ok(g: &SelfIndexedGraph, sq: &Square) -> bool {
    let m = g.arrow_count();
    let ids = [sq.witness, sq.sides[0], sq.sides[1], sq.sides[2], sq.sides[3]];
    if ids.iter().any(|&e| e >= m) {
        return false;
    }
    for i in 0..5 {
        for j in 0..i {
            if ids[i] == ids[j] {
                return false;
            }
        }
    }
    let w = g.arrow(sq.witness);
    let [e1, e2, e3, e4] = sq.sides.map(|e| g.arrow(e));
    side_fits(&w, [Some(e1), Some(e2), Some(e3), Some(e4)])
}

/// Consistency of the sides that are present.
fn side_fits(w: &Arrow, s: [Option<Arrow>; 4]) -> bool {
    let (a, b, t) = (w.label, w.source, w.target);
    let label_ok = s[0].is_none_or(|e| e.label == a)
        && s[1].is_none_or(|e| e.label == t)
        && s[2].is_none_or(|e| e.label == b)
        && s[3].is_none_or(|e| e.label == a);
    let join = |x: Option<Arrow>, fx: End, y: Option<Arrow>, fy: End| match (x, y) {
        (Some(x), Some(y)) => fx.of(&x) == fy.of(&y),
        _ => true,
    };
    label_ok
        && join(s[0], End::Source, s[2], End::Source)
        && join(s[0], End::Target, s[1], End::Source)
        && join(s[2], End::Target, s[3], End::Source)
        && join(s[1], End::Target, s[3], End::Target)
}

/// Endpoints of the missing side `k` determined by the other three.
fn completion(w: &Arrow, s: [Option<Arrow>; 4], k: usize) -> Option<Arrow> {
    let (a, b, t) = (w.label, w.source, w.target);
    let arrow = match k {
        0 => Arrow::new(s[2]?.source, s[1]?.source, a),
        1 => Arrow::new(s[0]?.target, s[3]?.target, t),
        2 => Arrow::new(s[0]?.source, s[3]?.source, b),
        3 => Arrow::new(s[2]?.target, s[1]?.target, a),
        _ => return None,
    };
    Some(arrow)
}

/// Labels required on the four sides of the square of witness `w`.
fn side_labels(w: &Arrow) -> [usize; 4] {
    [w.label, w.target, w.source, w.label]
}

/// Calls `f` for every assignment of sides (with side `missing` left empty,
/// if given) that fits witness `w`. Sides are distinct from each other and
/// from the witness.
fn for_each_square(
    g: &SelfIndexedGraph,
    by_label: &[Vec<usize>],
    witness: usize,
    missing: Option<usize>,
    f: &mut dyn FnMut([Option<usize>; 4]),
) {
    let w = g.arrow(witness);
    let labels = side_labels(&w);
    let mut chosen: [Option<usize>; 4] = [None; 4];
    fn rec(
        g: &SelfIndexedGraph,
        by_label: &[Vec<usize>],
        w: &Arrow,
        witness: usize,
        labels: &[usize; 4],
        missing: Option<usize>,
        k: usize,
        chosen: &mut [Option<usize>; 4],
        f: &mut dyn FnMut([Option<usize>; 4]),
    ) {
        if k == 4 {
            f(*chosen);
            return;
        }
        if missing == Some(k) {
            rec(g, by_label, w, witness, labels, missing, k + 1, chosen, f);
            return;
        }
        for &e in &by_label[labels[k]] {
            if e == witness || chosen[..k].contains(&Some(e)) {
                continue;
            }
            chosen[k] = Some(e);
            let arrows = chosen.map(|x| x.map(|e| g.arrow(e)));
            if side_fits(w, arrows) {
                rec(g, by_label, w, witness, labels, missing, k + 1, chosen, f);
            }
            chosen[k] = None;
        }
    }
    rec(g, by_label, &w, witness, &labels, missing, 0, &mut chosen, f);
}

fn arrows_by_label(g: &SelfIndexedGraph) -> Vec<Vec<usize>> {
    let mut by_label = vec![Vec::new(); g.vertex_count()];
    for (e, a) in g.arrows().iter().enumerate() {
        by_label[a.label].push(e);
    }
    by_label
}

/// All complete squares, in lexicographic order.
pub fn squares(g: &SelfIndexedGraph) -> Vec<Square> {
    let by_label = arrows_by_label(g);
    let mut out = Vec::new();
    for w in 0..g.arrow_count() {
        for_each_square(g, &by_label, w, None, &mut |s| {
            out.push(Square { witness: w, sides: s.map(|x| x.unwrap()) });
        });
    }
    out
}

fn flow_range(lo: i64, hi: i64) -> impl Iterator<Item = BigInt> {
    (lo..=hi).map(BigInt::from)
}

/// All forward instances: R0, R1 contractions and loop deletions, R2 merges,
/// R3(a) removals and R3(b) shifts.
pub fn enumerate_moves(c: &Comte, opts: &MoveOptions) -> Vec<Move> {
    let g = c.graph();
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if g.valence(v) == 1 && !g.labels_something(v) {
            let e = g.arrows().iter().position(|a| a.source == v || a.target == v).unwrap();
            if c.flow(e).is_zero() {
                out.push(Move::R0 { vertex: v });
            }
        }
    }
    for (e, a) in g.arrows().iter().enumerate() {
        if a.is_loop() {
            if a.label == a.source {
                out.push(Move::R1LoopDelete { arrow: e });
            }
        } else if a.label == a.source || a.label == a.target {
            out.push(Move::R1Contract { arrow: e });
        }
    }
    let arrows = g.arrows();
    for e1 in 0..arrows.len() {
        for e2 in e1 + 1..arrows.len() {
            let (x, y) = (arrows[e1], arrows[e2]);
            if x.label == y.label && x.source == y.source {
                out.push(Move::R2a { first: e1, second: e2 });
            }
            if x.label == y.label && x.target == y.target {
                out.push(Move::R2b { first: e1, second: e2 });
            }
        }
    }
    let sq = squares(g);
    let mut removable = std::collections::BTreeSet::new();
    for s in &sq {
        for k in 0..4 {
            if c.flow(s.sides[k]).is_zero() && removable.insert(s.sides[k]) {
                out.push(Move::R3aRemove { square: s.clone(), side: k });
            }
        }
    }
    if !opts.ignore_flows {
        for s in &sq {
            for j in 1..=opts.r3b_range {
                for shift in [BigInt::from(j), BigInt::from(-j)] {
                    out.push(Move::R3bShift { square: s.clone(), shift });
                }
            }
        }
    }
    out
}

/// Inverse instances: added pendant vertices, vertex splits, loop additions,
/// arrow splits, and R3(a) completions of squares.
pub fn inverse_instances(c: &Comte, opts: &MoveOptions) -> Vec<Move> {
    let g = c.graph();
    let n = g.vertex_count();
    let m = g.arrow_count();
    let room_v = n < opts.max_vertices;
    let room_e = m < opts.max_arrows;
    let mut out = Vec::new();
    if room_v && room_e {
        for anchor in 0..n {
            for label in 0..n {
                for outward in [true, false] {
                    out.push(Move::R0Inv { anchor, label, outward });
                }
            }
        }
        for v in 0..n {
            let k = split_items(g, v).len();
            if k > opts.max_split_items {
                continue;
            }
            for assignment in 0..(1u64 << k) {
                for label_old in [true, false] {
                    out.push(Move::R1Split { vertex: v, assignment, label_old });
                }
            }
        }
    }
    if room_e {
        let (lo, hi) = if opts.ignore_flows { (0, 0) } else { opts.flow_range };
        for v in 0..n {
            for flow in flow_range(lo, hi) {
                out.push(Move::R1LoopAdd { vertex: v, flow });
            }
        }
        for (e, a) in g.arrows().iter().enumerate() {
            for flow in flow_range(lo, hi) {
                let rest = c.flow(e) - &flow;
                if opts.ignore_flows && !rest.is_zero() {
                    continue;
                }
                out.push(Move::R2aSplit { arrow: e, split: Split::Parallel { flow: rest.clone() } });
                out.push(Move::R2bSplit { arrow: e, split: Split::Parallel { flow: rest } });
            }
            if room_v {
                for (end, v) in [(End::Target, a.target), (End::Source, a.source)] {
                    let k = split_items(g, v).len() - 1;
                    if k > opts.max_split_items {
                        continue;
                    }
                    for assignment in 0..(1u64 << k) {
                        let split = Split::Vertex { assignment };
                        out.push(if end == End::Target {
                            Move::R2aSplit { arrow: e, split }
                        } else {
                            Move::R2bSplit { arrow: e, split }
                        });
                    }
                }
            }
        }
        let by_label = arrows_by_label(g);
        for w in 0..m {
            for k in 0..4 {
                for_each_square(g, &by_label, w, Some(k), &mut |s| {
                    out.push(Move::R3aAdd { witness: w, sides: s });
                });
            }
        }
    }
    out
}

/// Applies `m`, checking its preconditions against `c`.
pub fn apply_move(c: &Comte, m: &Move) -> Result<Applied, MoveError> {
    let g = c.graph();
    match m {
        Move::R0 { vertex } => {
            let v = *vertex;
            check_vertex(c, v)?;
            if g.valence(v) != 1 {
                return Err(not_applicable(format!("vertex {v} has valence {}", g.valence(v))));
            }
            if g.labels_something(v) {
                return Err(not_applicable(format!("vertex {v} labels an arrow")));
            }
            let e = g.arrows().iter().position(|a| a.source == v || a.target == v).unwrap();
            if !c.flow(e).is_zero() {
                return Err(not_applicable(format!("arrow {e} carries flow {}", c.flow(e))));
            }
            let a = g.arrow(e);
            let outward = a.target == v;
            let anchor = if outward { a.source } else { a.target };
            let mut w = Work::new(c);
            w.remove_arrow(e);
            w.remove_vertex(v);
            Ok(Applied {
                comte: w.finish(),
                inverse: Move::R0Inv { anchor: shift(anchor, v), label: shift(a.label, v), outward },
            })
        }
        Move::R0Inv { anchor, label, outward } => {
            check_vertex(c, *anchor)?;
            check_vertex(c, *label)?;
            let mut w = Work::new(c);
            let p = w.add_vertex();
            let arrow = if *outward { Arrow::new(*anchor, p, *label) } else { Arrow::new(p, *anchor, *label) };
            w.add_arrow(arrow, BigInt::zero());
            Ok(Applied { comte: w.finish(), inverse: Move::R0 { vertex: p } })
        }
        Move::R1Contract { arrow } => {
            let e = *arrow;
            let a = check_arrow(c, e)?;
            if a.is_loop() || (a.label != a.source && a.label != a.target) {
                return Err(not_applicable(format!("arrow {e} is not labeled by exactly one of its ends")));
            }
            let (s, t) = (a.source, a.target);
            let mut w = Work::new(c);
            w.remove_arrow(e);
            w.merge(s, t);
            let comte = w.finish();
            let s2 = shift(s, t);
            let items = split_items(comte.graph(), s2);
            let mut mask = 0u64;
            for (i, (j, end)) in items.iter().enumerate() {
                let orig = if *j >= e { j + 1 } else { *j };
                if end.of(&g.arrow(orig)) == t {
                    mask |= 1 << i;
                }
            }
            let inverse = Move::R1Split { vertex: s2, assignment: mask, label_old: a.label == s };
            Ok(Applied { comte, inverse })
        }
        Move::R1Split { vertex, assignment, label_old } => {
            let v = *vertex;
            check_vertex(c, v)?;
            let items = split_items(g, v);
            check_mask(*assignment, items.len())?;
            let mut w = Work::new(c);
            let nv = w.add_vertex();
            for (i, (e, end)) in items.iter().enumerate() {
                if assignment >> i & 1 == 1 {
                    end.set(&mut w.arrows[*e], nv);
                }
            }
            let flow = w.net(nv);
            let label = if *label_old { v } else { nv };
            let e = w.add_arrow(Arrow::new(v, nv, label), flow);
            Ok(Applied { comte: w.finish(), inverse: Move::R1Contract { arrow: e } })
        }
        Move::R1LoopDelete { arrow } => {
            let e = *arrow;
            let a = check_arrow(c, e)?;
            if !a.is_loop() || a.label != a.source {
                return Err(not_applicable(format!("arrow {e} is not a self-labeled loop")));
            }
            let mut w = Work::new(c);
            w.remove_arrow(e);
            Ok(Applied { comte: w.finish(), inverse: Move::R1LoopAdd { vertex: a.source, flow: c.flow(e).clone() } })
        }
        Move::R1LoopAdd { vertex, flow } => {
            check_vertex(c, *vertex)?;
            let mut w = Work::new(c);
            let e = w.add_arrow(Arrow::new(*vertex, *vertex, *vertex), flow.clone());
            Ok(Applied { comte: w.finish(), inverse: Move::R1LoopDelete { arrow: e } })
        }
        Move::R2a { first, second } => merge_pair(c, *first, *second, End::Target),
        Move::R2b { first, second } => merge_pair(c, *first, *second, End::Source),
        Move::R2aSplit { arrow, split } => split_arrow(c, *arrow, split, End::Target),
        Move::R2bSplit { arrow, split } => split_arrow(c, *arrow, split, End::Source),
        Move::R3aRemove { square, side } => {
            if *side > 3 {
                return Err(not_applicable(format!("side {side} out of range")));
            }
            for e in std::iter::once(square.witness).chain(square.sides) {
                check_arrow(c, e)?;
            }
            if !square_ok(g, square) {
                return Err(not_applicable("arrows do not form a square with the witness"));
            }
            let e = square.sides[*side];
            if !c.flow(e).is_zero() {
                return Err(not_applicable(format!("arrow {e} carries flow {}", c.flow(e))));
            }
            let mut w = Work::new(c);
            w.remove_arrow(e);
            let mut sides = square.sides.map(|x| Some(shift(x, e)));
            sides[*side] = None;
            Ok(Applied { comte: w.finish(), inverse: Move::R3aAdd { witness: shift(square.witness, e), sides } })
        }
        Move::R3aAdd { witness, sides } => {
            check_arrow(c, *witness)?;
            let missing: Vec<usize> = (0..4).filter(|&k| sides[k].is_none()).collect();
            if missing.len() != 1 {
                return Err(not_applicable("exactly one side must be missing"));
            }
            for e in sides.iter().flatten() {
                check_arrow(c, *e)?;
            }
            let k = missing[0];
            let wa = g.arrow(*witness);
            let arrows = sides.map(|x| x.map(|e| g.arrow(e)));
            let new = completion(&wa, arrows, k).expect("three sides present");
            let mut w = Work::new(c);
            let e = w.add_arrow(new, BigInt::zero());
            let full = Square { witness: *witness, sides: std::array::from_fn(|i| sides[i].unwrap_or(e)) };
            let comte = w.finish();
            if !square_ok(comte.graph(), &full) {
                return Err(not_applicable("sides do not fit the witness"));
            }
            Ok(Applied { comte, inverse: Move::R3aRemove { square: full, side: k } })
        }
        Move::R3bShift { square, shift: j } => {
            for e in std::iter::once(square.witness).chain(square.sides) {
                check_arrow(c, e)?;
            }
            if !square_ok(g, square) {
                return Err(not_applicable("arrows do not form a square with the witness"));
            }
            let mut w = Work::new(c);
            w.flows[square.sides[0]] += j;
            w.flows[square.sides[1]] += j;
            w.flows[square.sides[2]] -= j;
            w.flows[square.sides[3]] -= j;
            Ok(Applied { comte: w.finish(), inverse: Move::R3bShift { square: square.clone(), shift: -j } })
        }
    }
}

/// R2(a) (`end` = Target) or R2(b) (`end` = Source).
fn merge_pair(c: &Comte, e1: usize, e2: usize, end: End) -> Result<Applied, MoveError> {
    let g = c.graph();
    let a1 = check_arrow(c, e1)?;
    let a2 = check_arrow(c, e2)?;
    let fixed = if end == End::Target { End::Source } else { End::Target };
    if e1 == e2 || a1.label != a2.label || fixed.of(&a1) != fixed.of(&a2) {
        return Err(not_applicable(format!("arrows {e1} and {e2} do not share label and {fixed:?}")));
    }
    let (t1, t2) = (end.of(&a1), end.of(&a2));
    let mut w = Work::new(c);
    let total = c.flow(e1) + c.flow(e2);
    w.flows[e1] = total;
    w.remove_arrow(e2);
    w.merge(t1, t2);
    let comte = w.finish();
    let e1n = shift(e1, e2);
    let split = if t1 == t2 {
        Split::Parallel { flow: c.flow(e2).clone() }
    } else {
        let t1n = shift(t1, t2);
        let items: Vec<(usize, End)> =
            split_items(comte.graph(), t1n).into_iter().filter(|&(j, x)| !(j == e1n && x == end)).collect();
        let mut mask = 0u64;
        for (i, (j, x)) in items.iter().enumerate() {
            let orig = if *j >= e2 { j + 1 } else { *j };
            if x.of(&g.arrow(orig)) == t2 {
                mask |= 1 << i;
            }
        }
        Split::Vertex { assignment: mask }
    };
    let inverse = if end == End::Target {
        Move::R2aSplit { arrow: e1n, split }
    } else {
        Move::R2bSplit { arrow: e1n, split }
    };
    Ok(Applied { comte, inverse })
}

fn split_arrow(c: &Comte, e: usize, split: &Split, end: End) -> Result<Applied, MoveError> {
    let g = c.graph();
    let a = check_arrow(c, e)?;
    let mut w = Work::new(c);
    match split {
        Split::Parallel { flow } => {
            w.flows[e] = c.flow(e) - flow;
            w.add_arrow(a, flow.clone());
        }
        Split::Vertex { assignment } => {
            let t = end.of(&a);
            let items: Vec<(usize, End)> = split_items(g, t).into_iter().filter(|&(j, x)| !(j == e && x == end)).collect();
            check_mask(*assignment, items.len())?;
            let nv = w.add_vertex();
            for (i, (j, x)) in items.iter().enumerate() {
                if assignment >> i & 1 == 1 {
                    x.set(&mut w.arrows[*j], nv);
                }
            }
            let mut b = w.arrows[e];
            end.set(&mut b, nv);
            let idx = w.add_arrow(b, BigInt::zero());
            let x = w.net(nv);
            // the new arrow's end at nv contributes -x (target) or +x (source)
            let x = if end == End::Target { x } else { -x };
            w.flows[e] -= &x;
            w.flows[idx] = x;
        }
    }
    let second = w.arrows.len() - 1;
    let inverse = if end == End::Target {
        Move::R2a { first: e, second }
    } else {
        Move::R2b { first: e, second }
    };
    Ok(Applied { comte: w.finish(), inverse })
}

/// Forward and inverse instances together.
pub fn all_instances(c: &Comte, opts: &MoveOptions) -> Vec<Move> {
    let mut v = enumerate_moves(c, opts);
    v.extend(inverse_instances(c, opts));
    v
}

/// Every instance applied; instances whose checks fail are skipped.
pub fn neighbours(c: &Comte, opts: &MoveOptions) -> Vec<(Move, Applied)> {
    all_instances(c, opts)
        .into_iter()
        .filter_map(|m| apply_move(c, &m).ok().map(|a| (m, a)))
        .filter(|(_, a)| {
            a.comte.graph().vertex_count() <= opts.max_vertices && a.comte.graph().arrow_count() <= opts.max_arrows
        })
        .collect()
}

#[cfg(test)]
mod tests;
