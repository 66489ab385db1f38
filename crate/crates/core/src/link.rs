//! Signed Gauss codes and PD codes, and the comtes of the diagrams they describe.
//!
//! Gauss code: `O<k><sign>` is the tail (overpass) of chord `k`, `U<k><sign>`
//! its head (underpass); components are separated by `/`. Cutting every circle
//! at its heads gives the comte's vertices. A positive chord gives an arrow
//! from the arc entering its head to the arc leaving it; a negative chord the
//! reverse. The label is the arc holding the tail and the flow is the sign.
//!
//! PD code: `X[i,j,k,l]` lists the four arc ends counterclockwise starting from
//! the incoming under-strand, so the under-strand runs `i -> k`. The over-strand
//! runs `l -> j` at a positive crossing and `j -> l` at a negative one. Its
//! direction is propagated from the under-strand slots; arcs never seen as an
//! under-strand fall back to consecutive numbering (`j -> j+1`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::{Arrow, Comte, SelfIndexedGraph, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("gauss code, component {component}: {message}")]
    GaussSyntax { component: usize, message: String },
    #[error("gauss code: empty component {0}")]
    EmptyComponent(usize),
    #[error("gauss code: chord {0} must occur once as O and once as U")]
    UnmatchedChord(u32),
    #[error("gauss code: sign mismatch on chord {0}")]
    SignMismatch(u32),
    #[error("positions {position} and {next} of circle {circle} are not two adjacent tails")]
    NotAdjacentTails { circle: usize, position: usize, next: usize },
    #[error("pd code: {0}")]
    PdSyntax(String),
    #[error("pd code: arc {0} must occur in exactly two crossing slots")]
    PdArc(u32),
    #[error("pd code: cannot orient the over-strand at crossing {0}")]
    PdOrientation(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub chord: u32,
    pub head: bool,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    pub circles: Vec<Vec<Endpoint>>,
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.circles.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for e in c {
                write!(f, "{}{}{}", if e.head { 'U' } else { 'O' }, e.chord, if e.sign > 0 { '+' } else { '-' })?;
            }
        }
        Ok(())
    }
}

pub fn parse_gauss(text: &str) -> Result<GaussDiagram, LinkError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut circles = Vec::new();
    for (ci, comp) in compact.split('/').enumerate() {
        if comp.is_empty() {
            return Err(LinkError::EmptyComponent(ci));
        }
        let bytes = comp.as_bytes();
        let mut i = 0;
        let mut circle = Vec::new();
        while i < bytes.len() {
            let syntax = |message: String| LinkError::GaussSyntax { component: ci, message };
            let head = match bytes[i] {
                b'O' | b'o' => false,
                b'U' | b'u' => true,
                other => return Err(syntax(format!("expected O or U, found {:?}", other as char))),
            };
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let chord: u32 = comp[start..i].parse().map_err(|_| syntax(format!("missing chord number at {start}")))?;
            let sign = match bytes.get(i) {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Err(syntax(format!("missing sign after chord {chord}"))),
            };
            i += 1;
            circle.push(Endpoint { chord, head, sign });
        }
        circles.push(circle);
    }
    let d = GaussDiagram { circles };
    check_gauss(&d)?;
    Ok(d)
}

fn check_gauss(d: &GaussDiagram) -> Result<(), LinkError> {
    let mut seen: BTreeMap<u32, (u8, u8, Option<i8>)> = BTreeMap::new();
    for e in d.circles.iter().flatten() {
        let entry = seen.entry(e.chord).or_insert((0, 0, None));
        if e.head {
            entry.0 += 1;
        } else {
            entry.1 += 1;
        }
        match entry.2 {
            None => entry.2 = Some(e.sign),
            Some(s) if s != e.sign => return Err(LinkError::SignMismatch(e.chord)),
            _ => {}
        }
    }
    for (chord, (h, t, _)) in seen {
        if h != 1 || t != 1 {
            return Err(LinkError::UnmatchedChord(chord));
        }
    }
    Ok(())
}

/// Vertex names `a..z, aa, ab, ...`.
pub fn arc_name(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

pub fn comte_of_gauss(d: &GaussDiagram) -> Result<Comte, LinkError> {
    check_gauss(d)?;
    // arc of each position; an arc is named after the head it leaves
    let mut arc_at: Vec<Vec<usize>> = Vec::with_capacity(d.circles.len());
    let mut n = 0;
    for circle in &d.circles {
        let heads: Vec<usize> = (0..circle.len()).filter(|&p| circle[p].head).collect();
        if heads.is_empty() {
            arc_at.push(vec![n; circle.len()]);
            n += 1;
            continue;
        }
        let first = n;
        let mut at = vec![0; circle.len()];
        let last = heads.len() - 1;
        for p in 0..circle.len() {
            // index of the last head at or before p, cyclically
            let k = match heads.iter().rposition(|&h| h <= p) {
                Some(k) => k,
                None => last,
            };
            at[p] = first + k;
        }
        n += heads.len();
        arc_at.push(at);
    }
    let mut tail_arc: HashMap<u32, usize> = HashMap::new();
    for (ci, circle) in d.circles.iter().enumerate() {
        for (p, e) in circle.iter().enumerate() {
            if !e.head {
                tail_arc.insert(e.chord, arc_at[ci][p]);
            }
        }
    }
    let mut chords: Vec<(u32, Arrow, i8)> = Vec::new();
    for (ci, circle) in d.circles.iter().enumerate() {
        let len = circle.len();
        for (p, e) in circle.iter().enumerate() {
            if !e.head {
                continue;
            }
            let outgoing = arc_at[ci][p];
            let incoming = arc_at[ci][(p + len - 1) % len];
            let label = tail_arc[&e.chord];
            let arrow = if e.sign > 0 {
                Arrow::new(incoming, outgoing, label)
            } else {
                Arrow::new(outgoing, incoming, label)
            };
            chords.push((e.chord, arrow, e.sign));
        }
    }
    chords.sort_by_key(|c| c.0);
    let names = (0..n).map(arc_name).collect();
    let g = SelfIndexedGraph::new(names, chords.iter().map(|c| c.1).collect()).expect("arcs in range");
    Ok(Comte::new(g, chords.iter().map(|c| BigInt::from(c.2)).collect()).expect("diagram flows are conserved"))
}

/// Exchanges the endpoints at `position` and the next one on `circle`; both
/// must be tails.
pub fn swap_arrowtails(d: &GaussDiagram, circle: usize, position: usize) -> Result<GaussDiagram, LinkError> {
    let c = d.circles.get(circle).ok_or(LinkError::NotAdjacentTails { circle, position, next: position + 1 })?;
    let len = c.len();
    let next = if len == 0 { 0 } else { (position + 1) % len };
    if len < 2 || position >= len || c[position].head || c[next].head {
        return Err(LinkError::NotAdjacentTails { circle, position, next });
    }
    let mut out = d.clone();
    out.circles[circle].swap(position, next);
    Ok(out)
}

/// Positions `(circle, position)` where two tails are adjacent.
pub fn adjacent_tails(d: &GaussDiagram) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (ci, c) in d.circles.iter().enumerate() {
        let len = c.len();
        if len < 2 {
            continue;
        }
        for p in 0..len {
            if !c[p].head && !c[(p + 1) % len].head && (len > 2 || p == 0) {
                out.push((ci, p));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    pub crossings: Vec<[u32; 4]>,
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.crossings.iter().map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3])).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn parse_pd(text: &str) -> Result<PlanarDiagram, LinkError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut crossings = Vec::new();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("X[")
            .ok_or_else(|| LinkError::PdSyntax(format!("expected X[ at {:?}", short(rest))))?;
        let end = body.find(']').ok_or_else(|| LinkError::PdSyntax("unclosed X[".into()))?;
        let nums: Vec<u32> = body[..end]
            .split(',')
            .map(|s| s.parse::<u32>().map_err(|_| LinkError::PdSyntax(format!("bad arc {s:?}"))))
            .collect::<Result<_, _>>()?;
        if nums.len() != 4 {
            return Err(LinkError::PdSyntax(format!("crossing with {} entries", nums.len())));
        }
        crossings.push([nums[0], nums[1], nums[2], nums[3]]);
        rest = &body[end + 1..];
    }
    let d = PlanarDiagram { crossings };
    check_pd(&d)?;
    Ok(d)
}

fn short(s: &str) -> &str {
    &s[..s.len().min(12)]
}

fn check_pd(d: &PlanarDiagram) -> Result<(), LinkError> {
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for x in &d.crossings {
        for &a in x {
            *count.entry(a).or_default() += 1;
        }
    }
    match count.into_iter().find(|&(_, c)| c != 2) {
        Some((arc, _)) => Err(LinkError::PdArc(arc)),
        None => Ok(()),
    }
}

/// Crossing signs of a PD code, +1 or -1 per crossing.
pub fn pd_signs(d: &PlanarDiagram) -> Result<Vec<i8>, LinkError> {
    check_pd(d)?;
    // outgoing[c][slot]: whether that slot is where the arc leaves crossing c
    let mut occurrences: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in d.crossings.iter().enumerate() {
        for (slot, &a) in x.iter().enumerate() {
            occurrences.entry(a).or_default().push((c, slot));
        }
    }
    let mut out: Vec<[Option<bool>; 4]> = vec![[Some(false), None, Some(true), None]; d.crossings.len()];
    let total = occurrences.len() as u32;
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for (c, x) in d.crossings.iter().enumerate() {
                for slot in 0..4 {
                    if let Some(dir) = out[c][slot] {
                        // the other end of the same arc is the opposite
                        let a = x[slot];
                        for &(c2, s2) in &occurrences[&a] {
                            if (c2, s2) != (c, slot) && out[c2][s2].is_none() {
                                out[c2][s2] = Some(!dir);
                                changed = true;
                            }
                        }
                        // over-strand slots 1 and 3 point opposite ways
                        if slot % 2 == 1 {
                            let other = 4 - slot;
                            if out[c][other].is_none() {
                                out[c][other] = Some(!dir);
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        let Some(c) = (0..d.crossings.len()).find(|&c| out[c][1].is_none()) else { break };
        let x = d.crossings[c];
        let (j, l) = (x[1], x[3]);
        let next = |a: u32| if a == total { 1 } else { a + 1 };
        if next(j) == l {
            out[c][1] = Some(false);
        } else if next(l) == j {
            out[c][1] = Some(true);
        } else {
            return Err(LinkError::PdOrientation(c));
        }
    }
    // positive when the over-strand leaves through slot 1 (l -> j)
    Ok(out.iter().map(|o| if o[1] == Some(true) { 1 } else { -1 }).collect())
}

pub fn comte_of_diagram(d: &PlanarDiagram) -> Result<Comte, LinkError> {
    if d.crossings.is_empty() {
        let g = SelfIndexedGraph::new(vec![arc_name(0)], Vec::new()).expect("one vertex");
        return Ok(Comte::zero_flow(g));
    }
    let signs = pd_signs(d)?;
    let mut segs: Vec<u32> = d.crossings.iter().flatten().copied().collect();
    segs.sort_unstable();
    segs.dedup();
    let idx: HashMap<u32, usize> = segs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut uf = UnionFind::new(segs.len());
    for x in &d.crossings {
        uf.union(idx[&x[1]], idx[&x[3]]);
    }
    let mut class_of = vec![usize::MAX; segs.len()];
    let mut n = 0;
    for s in 0..segs.len() {
        let r = uf.find(s);
        if class_of[r] == usize::MAX {
            class_of[r] = n;
            n += 1;
        }
        class_of[s] = class_of[r];
    }
    let v = |a: u32| class_of[idx[&a]];
    let mut arrows = Vec::new();
    let mut flows = Vec::new();
    for (x, &sign) in d.crossings.iter().zip(&signs) {
        let (inc, out, over) = (v(x[0]), v(x[2]), v(x[1]));
        arrows.push(if sign > 0 { Arrow::new(inc, out, over) } else { Arrow::new(out, inc, over) });
        flows.push(BigInt::from(sign));
    }
    let g = SelfIndexedGraph::new((0..n).map(arc_name).collect(), arrows).expect("arcs in range");
    Ok(Comte::new(g, flows).expect("diagram flows are conserved"))
}

/// A link stored both ways.
#[derive(Clone, Copy, Debug)]
pub struct CorpusLink {
    pub name: &'static str,
    pub gauss: &'static str,
    pub pd: &'static str,
    pub components: usize,
}

pub const CORPUS: &[CorpusLink] = &[
    CorpusLink {
        name: "right-trefoil",
        gauss: "O1+U2+O3+U1+O2+U3+",
        pd: "X[3,1,4,6] X[1,5,2,4] X[5,3,6,2]",
        components: 1,
    },
    CorpusLink {
        name: "left-trefoil",
        gauss: "O1-U2-O3-U1-O2-U3-",
        pd: "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
        components: 1,
    },
    CorpusLink {
        name: "figure-eight",
        gauss: "O3+U1+O4-U2-O1+U3+O2-U4-",
        pd: "X[1,5,2,4] X[3,6,4,7] X[5,1,6,8] X[7,2,8,3]",
        components: 1,
    },
    CorpusLink { name: "hopf", gauss: "O1-U2-/U1-O2-", pd: "X[4,1,3,2] X[2,3,1,4]", components: 2 },
    CorpusLink {
        name: "borromean",
        gauss: "O4+U1-O3-U2+/O5-U4+O6+U3-/O1-U6+O2+U5-",
        pd: "X[1,12,2,9] X[3,11,4,10] X[7,2,8,3] X[5,1,6,4] X[11,8,12,5] X[9,7,10,6]",
        components: 3,
    },
];

/// Gauss codes related by one oriented Reidemeister move.
#[derive(Clone, Copy, Debug)]
pub struct ReidemeisterPair {
    pub name: &'static str,
    pub before: &'static str,
    pub after: &'static str,
}

pub const REIDEMEISTER_PAIRS: &[ReidemeisterPair] = &[
    ReidemeisterPair { name: "R1 positive kink", before: "O1+U2+O3+U1+O2+U3+", after: "O1+U2+O3+U1+O2+U3+O4+U4+" },
    ReidemeisterPair { name: "R1 negative kink", before: "O1+U2+O3+U1+O2+U3+", after: "U4-O4-O1+U2+O3+U1+O2+U3+" },
    ReidemeisterPair {
        name: "R2 same direction",
        before: "O1+U2+O3+U1+O2+U3+",
        after: "O1+U2+O5+O6-O3+U1+U5+U6-O2+U3+",
    },
    ReidemeisterPair { name: "R2 two circles", before: "O1-U2-/U1-O2-", after: "O1-O3+O4-U2-/U1-U3+U4-O2-" },
    ReidemeisterPair { name: "R3 braid", before: "O1+O2+U1+O3+U2+U3+", after: "O2+O1+O3+U1+U3+U2+" },
];
