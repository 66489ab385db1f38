//! Bidirectional breadth-first search for move sequences between comtes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{apply_move, neighbours, split_items, Applied, End, Move, MoveError, MoveOptions, Split, Square};
use crate::graph::{canonical_form, comte_key, graph_key, CanonicalKey, Comte};

#[derive(Clone, Debug)]
pub struct Budget {
    /// Total states stored on both sides before giving up.
    pub max_states: usize,
    /// Size caps for intermediate comtes; `None` means two more than the larger input.
    pub max_vertices: Option<usize>,
    pub max_arrows: Option<usize>,
    pub r3b_range: i64,
    /// Flows tried for added loops and parallel arrow splits.
    pub flow_split_range: (i64, i64),
    pub max_split_items: usize,
    /// Longest trace considered.
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 200_000,
            max_vertices: None,
            max_arrows: None,
            r3b_range: 3,
            flow_split_range: (-1, 1),
            max_split_items: 6,
            max_depth: 8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub mv: Move,
    pub before: CanonicalKey,
    pub after: CanonicalKey,
}

/// A replayable witness of equivalence.
#[derive(Clone, Debug)]
pub struct MoveTrace {
    pub start: Comte,
    pub steps: Vec<TraceStep>,
    /// The comte reached by replaying; isomorphic to the search target.
    pub end: Comte,
    pub ignore_flows: bool,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Move families along the trace, e.g. `R1, R3(a), R3(b)`.
    pub fn families(&self) -> Vec<&'static str> {
        self.steps.iter().map(|s| s.mv.kind().family()).collect()
    }

    /// Replays every step from `start`, checking the recorded keys.
    pub fn replay(&self) -> Result<Comte, MoveError> {
        let mut c = self.start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if key(&c, self.ignore_flows) != step.before {
                return Err(MoveError::NotApplicable(format!("step {i}: unexpected starting state")));
            }
            c = apply_move(&c, &step.mv)?.comte;
            if key(&c, self.ignore_flows) != step.after {
                return Err(MoveError::NotApplicable(format!("step {i}: unexpected result")));
            }
        }
        Ok(c)
    }
}

impl fmt::Display for MoveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{}", s.mv)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Equivalent(MoveTrace),
    /// No trace within the budget. This is not a proof of inequivalence.
    Unknown { states: usize },
}

fn key(c: &Comte, ignore_flows: bool) -> CanonicalKey {
    if ignore_flows {
        graph_key(c.graph())
    } else {
        comte_key(c)
    }
}

struct Node {
    comte: Comte,
    depth: usize,
    /// parent key, move applied to the parent, inverse instance on this comte
    parent: Option<(CanonicalKey, Move, Move)>,
}

/// Searches for a sequence of moves and inverse moves from `c1` to `c2`.
pub fn equivalent_bounded(c1: &Comte, c2: &Comte, budget: &Budget, ignore_flows: bool) -> SearchOutcome {
    let prep = |c: &Comte| if ignore_flows { Comte::zero_flow(c.graph().clone()) } else { c.clone() };
    let (c1, c2) = (prep(c1), prep(c2));
    let n = c1.graph().vertex_count().max(c2.graph().vertex_count());
    let m = c1.graph().arrow_count().max(c2.graph().arrow_count());
    let opts = MoveOptions {
        ignore_flows,
        r3b_range: budget.r3b_range,
        flow_range: budget.flow_split_range,
        max_split_items: budget.max_split_items,
        max_vertices: budget.max_vertices.unwrap_or(n + 2),
        max_arrows: budget.max_arrows.unwrap_or(m + 2),
    };
    let roots = [c1, c2];
    let keys = [key(&roots[0], ignore_flows), key(&roots[1], ignore_flows)];
    if keys[0] == keys[1] {
        return SearchOutcome::Equivalent(MoveTrace {
            start: roots[0].clone(),
            steps: Vec::new(),
            end: roots[0].clone(),
            ignore_flows,
        });
    }
    let mut maps: [HashMap<CanonicalKey, Node>; 2] = [HashMap::new(), HashMap::new()];
    let mut frontiers: [Vec<CanonicalKey>; 2] = [vec![keys[0].clone()], vec![keys[1].clone()]];
    let mut depths = [0usize; 2];
    for s in 0..2 {
        maps[s].insert(keys[s].clone(), Node { comte: roots[s].clone(), depth: 0, parent: None });
    }
    let mut states = 2;
    loop {
        if depths[0] + depths[1] >= budget.max_depth || states >= budget.max_states {
            return SearchOutcome::Unknown { states };
        }
        let side = if frontiers[1].len() < frontiers[0].len() { 1 } else { 0 };
        if frontiers[side].is_empty() {
            return SearchOutcome::Unknown { states };
        }
        let map = &maps[side];
        let expanded: Vec<Vec<(CanonicalKey, Move, Applied)>> = frontiers[side]
            .par_iter()
            .map(|k| {
                let node = &map[k];
                let mut seen: HashMap<CanonicalKey, ()> = HashMap::new();
                let mut out = Vec::new();
                for (mv, applied) in neighbours(&node.comte, &opts) {
                    let nk = key(&applied.comte, ignore_flows);
                    if map.contains_key(&nk) || seen.insert(nk.clone(), ()).is_some() {
                        continue;
                    }
                    out.push((nk, mv, applied));
                }
                out
            })
            .collect();
        depths[side] += 1;
        let mut fresh = Vec::new();
        for (parent, children) in frontiers[side].iter().zip(expanded) {
            for (nk, mv, applied) in children {
                if maps[side].contains_key(&nk) {
                    continue;
                }
                maps[side].insert(
                    nk.clone(),
                    Node {
                        comte: applied.comte,
                        depth: depths[side],
                        parent: Some((parent.clone(), mv, applied.inverse)),
                    },
                );
                fresh.push(nk);
            }
        }
        states += fresh.len();
        let other = &maps[1 - side];
        let meet = fresh
            .iter()
            .filter_map(|k| other.get(k).map(|node| (node.depth, k)))
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
        if let Some((_, k)) = meet {
            return match build_trace(&maps, k, &roots[0], ignore_flows) {
                Some(t) => SearchOutcome::Equivalent(t),
                None => SearchOutcome::Unknown { states },
            };
        }
        fresh.sort();
        frontiers[side] = fresh;
    }
}

fn build_trace(
    maps: &[HashMap<CanonicalKey, Node>; 2],
    meet: &CanonicalKey,
    start: &Comte,
    ignore_flows: bool,
) -> Option<MoveTrace> {
    let mut forward = Vec::new();
    let mut k = meet.clone();
    while let Some((p, mv, _)) = &maps[0][&k].parent {
        forward.push(mv.clone());
        k = p.clone();
    }
    forward.reverse();
    let mut steps = Vec::new();
    let mut actual = start.clone();
    for mv in forward {
        let before = key(&actual, ignore_flows);
        actual = apply_move(&actual, &mv).ok()?.comte;
        steps.push(TraceStep { mv, before, after: key(&actual, ignore_flows) });
    }
    let mut k = meet.clone();
    while let Some((p, _, inv)) = &maps[1][&k].parent {
        let node = &maps[1][&k];
        let mv = transport(inv, &node.comte, &actual, ignore_flows)?;
        let before = key(&actual, ignore_flows);
        actual = apply_move(&actual, &mv).ok()?.comte;
        steps.push(TraceStep { mv, before, after: key(&actual, ignore_flows) });
        k = p.clone();
    }
    Some(MoveTrace { start: start.clone(), steps, end: actual, ignore_flows })
}

/// Rewrites a move instance on `from` as the same move on the isomorphic `to`.
pub fn transport(m: &Move, from: &Comte, to: &Comte, ignore_flows: bool) -> Option<Move> {
    let flows = |c: &Comte| if ignore_flows { None } else { Some(c.flows().to_vec()) };
    let (ff, tf) = (flows(from), flows(to));
    let cf = canonical_form(from.graph(), ff.as_deref());
    let ct = canonical_form(to.graph(), tf.as_deref());
    if cf.key != ct.key {
        return None;
    }
    let n = from.graph().vertex_count();
    let mut at_position = vec![0; n];
    for (v, &p) in ct.position.iter().enumerate() {
        at_position[p] = v;
    }
    let phi: Vec<usize> = (0..n).map(|v| at_position[cf.position[v]]).collect();
    let mut buckets: HashMap<(usize, usize, usize, BigInt), Vec<usize>> = HashMap::new();
    for (e, a) in to.graph().arrows().iter().enumerate().rev() {
        let f = if ignore_flows { BigInt::default() } else { to.flow(e).clone() };
        buckets.entry((a.source, a.target, a.label, f)).or_default().push(e);
    }
    let mut psi = Vec::with_capacity(from.graph().arrow_count());
    for (e, a) in from.graph().arrows().iter().enumerate() {
        let f = if ignore_flows { BigInt::default() } else { from.flow(e).clone() };
        psi.push(buckets.get_mut(&(phi[a.source], phi[a.target], phi[a.label], f))?.pop()?);
    }
    let remask = |v: usize, mask: u64, skip: Option<(usize, End)>| -> Option<u64> {
        let src: Vec<(usize, End)> = split_items(from.graph(), v).into_iter().filter(|x| Some(*x) != skip).collect();
        let skip_to = skip.map(|(e, end)| (psi[e], end));
        let dst: Vec<(usize, End)> =
            split_items(to.graph(), phi[v]).into_iter().filter(|x| Some(*x) != skip_to).collect();
        let mut out = 0u64;
        for (i, (e, end)) in src.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let j = dst.iter().position(|&x| x == (psi[*e], *end))?;
                out |= 1 << j;
            }
        }
        Some(out)
    };
    let sq = |s: &Square| Square { witness: psi[s.witness], sides: s.sides.map(|e| psi[e]) };
    let split = |e: usize, s: &Split, end: End| -> Option<Split> {
        Some(match s {
            Split::Parallel { flow } => Split::Parallel { flow: flow.clone() },
            Split::Vertex { assignment } => {
                let a = from.graph().arrow(e);
                Split::Vertex { assignment: remask(end.of(&a), *assignment, Some((e, end)))? }
            }
        })
    };
    Some(match m {
        Move::R0 { vertex } => Move::R0 { vertex: phi[*vertex] },
        Move::R0Inv { anchor, label, outward } => {
            Move::R0Inv { anchor: phi[*anchor], label: phi[*label], outward: *outward }
        }
        Move::R1Contract { arrow } => Move::R1Contract { arrow: psi[*arrow] },
        Move::R1Split { vertex, assignment, label_old } => Move::R1Split {
            vertex: phi[*vertex],
            assignment: remask(*vertex, *assignment, None)?,
            label_old: *label_old,
        },
        Move::R1LoopDelete { arrow } => Move::R1LoopDelete { arrow: psi[*arrow] },
        Move::R1LoopAdd { vertex, flow } => Move::R1LoopAdd { vertex: phi[*vertex], flow: flow.clone() },
        Move::R2a { first, second } => Move::R2a { first: psi[*first], second: psi[*second] },
        Move::R2b { first, second } => Move::R2b { first: psi[*first], second: psi[*second] },
        Move::R2aSplit { arrow, split: s } => {
            Move::R2aSplit { arrow: psi[*arrow], split: split(*arrow, s, End::Target)? }
        }
        Move::R2bSplit { arrow, split: s } => {
            Move::R2bSplit { arrow: psi[*arrow], split: split(*arrow, s, End::Source)? }
        }
        Move::R3aRemove { square, side } => Move::R3aRemove { square: sq(square), side: *side },
        Move::R3aAdd { witness, sides } => Move::R3aAdd { witness: psi[*witness], sides: sides.map(|x| x.map(|e| psi[e])) },
        Move::R3bShift { square, shift } => Move::R3bShift { square: sq(square), shift: shift.clone() },
    })
}
