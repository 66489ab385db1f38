//! Text form of move instances: `KIND site=... params=...`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{Move, MoveError, MoveKind, Split, Square};

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn square(sq: &Square) -> String {
    format!("w{},{}", sq.witness, list(&sq.sides))
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = self.kind();
        let (site, params) = match self {
            Move::R0 { vertex } => (format!("v{vertex}"), String::new()),
            Move::R0Inv { anchor, label, outward } => (
                format!("v{anchor}"),
                format!("label={label},dir={}", if *outward { "out" } else { "in" }),
            ),
            Move::R1Contract { arrow } | Move::R1LoopDelete { arrow } => (format!("e{arrow}"), String::new()),
            Move::R1Split { vertex, assignment, label_old } => (
                format!("v{vertex}"),
                format!("mask={assignment},label={}", if *label_old { "old" } else { "new" }),
            ),
            Move::R1LoopAdd { vertex, flow } => (format!("v{vertex}"), format!("flow={flow}")),
            Move::R2a { first, second } | Move::R2b { first, second } => (format!("e{first},e{second}"), String::new()),
            Move::R2aSplit { arrow, split } | Move::R2bSplit { arrow, split } => (
                format!("e{arrow}"),
                match split {
                    Split::Parallel { flow } => format!("flow={flow}"),
                    Split::Vertex { assignment } => format!("mask={assignment}"),
                },
            ),
            Move::R3aRemove { square: sq, side } => (square(sq), format!("side={side}")),
            Move::R3aAdd { witness, sides } => {
                let s: Vec<String> = sides.iter().map(|x| x.map_or("-".to_string(), |e| e.to_string())).collect();
                (format!("w{witness},{}", s.join(",")), String::new())
            }
            Move::R3bShift { square: sq, shift } => (square(sq), format!("J={shift}")),
        };
        write!(f, "{kind} site={site} params={params}")
    }
}

fn bad(s: &str) -> MoveError {
    MoveError::Parse(s.to_string())
}

fn num<T: FromStr>(s: &str, whole: &str) -> Result<T, MoveError> {
    s.parse().map_err(|_| bad(whole))
}

fn prefixed(s: &str, p: char, whole: &str) -> Result<usize, MoveError> {
    num(s.strip_prefix(p).ok_or_else(|| bad(whole))?, whole)
}

fn param<'a>(params: &'a [(&'a str, &'a str)], key: &str, whole: &str) -> Result<&'a str, MoveError> {
    params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).ok_or_else(|| bad(whole))
}

fn parse_square(site: &[&str], whole: &str) -> Result<Square, MoveError> {
    if site.len() != 5 {
        return Err(bad(whole));
    }
    let witness = prefixed(site[0], 'w', whole)?;
    let mut sides = [0; 4];
    for k in 0..4 {
        sides[k] = num(site[k + 1], whole)?;
    }
    Ok(Square { witness, sides })
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(whole: &str) -> Result<Self, MoveError> {
        let mut parts = whole.split_whitespace();
        let kind_s = parts.next().ok_or_else(|| bad(whole))?;
        let mut site_s = "";
        let mut params_s = "";
        for p in parts {
            if let Some(x) = p.strip_prefix("site=") {
                site_s = x;
            } else if let Some(x) = p.strip_prefix("params=") {
                params_s = x;
            } else {
                return Err(bad(whole));
            }
        }
        let site: Vec<&str> = site_s.split(',').filter(|s| !s.is_empty()).collect();
        let params: Vec<(&str, &str)> = params_s
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|kv| kv.split_once('=').ok_or_else(|| bad(whole)))
            .collect::<Result<_, _>>()?;
        let kinds = [
            MoveKind::R0,
            MoveKind::R0Inv,
            MoveKind::R1Contract,
            MoveKind::R1Split,
            MoveKind::R1LoopDelete,
            MoveKind::R1LoopAdd,
            MoveKind::R2a,
            MoveKind::R2aSplit,
            MoveKind::R2b,
            MoveKind::R2bSplit,
            MoveKind::R3aRemove,
            MoveKind::R3aAdd,
            MoveKind::R3bShift,
        ];
        let kind = kinds.into_iter().find(|k| k.name() == kind_s).ok_or_else(|| bad(whole))?;
        let one = |p: char| -> Result<usize, MoveError> {
            if site.len() != 1 {
                return Err(bad(whole));
            }
            prefixed(site[0], p, whole)
        };
        let two = || -> Result<(usize, usize), MoveError> {
            if site.len() != 2 {
                return Err(bad(whole));
            }
            Ok((prefixed(site[0], 'e', whole)?, prefixed(site[1], 'e', whole)?))
        };
        let split = || -> Result<Split, MoveError> {
            if let Ok(m) = param(&params, "mask", whole) {
                Ok(Split::Vertex { assignment: num(m, whole)? })
            } else {
                Ok(Split::Parallel { flow: num::<BigInt>(param(&params, "flow", whole)?, whole)? })
            }
        };
        Ok(match kind {
            MoveKind::R0 => Move::R0 { vertex: one('v')? },
            MoveKind::R0Inv => Move::R0Inv {
                anchor: one('v')?,
                label: num(param(&params, "label", whole)?, whole)?,
                outward: match param(&params, "dir", whole)? {
                    "out" => true,
                    "in" => false,
                    _ => return Err(bad(whole)),
                },
            },
            MoveKind::R1Contract => Move::R1Contract { arrow: one('e')? },
            MoveKind::R1LoopDelete => Move::R1LoopDelete { arrow: one('e')? },
            MoveKind::R1Split => Move::R1Split {
                vertex: one('v')?,
                assignment: num(param(&params, "mask", whole)?, whole)?,
                label_old: match param(&params, "label", whole)? {
                    "old" => true,
                    "new" => false,
                    _ => return Err(bad(whole)),
                },
            },
            MoveKind::R1LoopAdd => Move::R1LoopAdd { vertex: one('v')?, flow: num(param(&params, "flow", whole)?, whole)? },
            MoveKind::R2a => {
                let (first, second) = two()?;
                Move::R2a { first, second }
            }
            MoveKind::R2b => {
                let (first, second) = two()?;
                Move::R2b { first, second }
            }
            MoveKind::R2aSplit => Move::R2aSplit { arrow: one('e')?, split: split()? },
            MoveKind::R2bSplit => Move::R2bSplit { arrow: one('e')?, split: split()? },
            MoveKind::R3aRemove => Move::R3aRemove {
                square: parse_square(&site, whole)?,
                side: num(param(&params, "side", whole)?, whole)?,
            },
            MoveKind::R3aAdd => {
                if site.len() != 5 {
                    return Err(bad(whole));
                }
                let witness = prefixed(site[0], 'w', whole)?;
                let mut sides = [None; 4];
                for k in 0..4 {
                    if site[k + 1] != "-" {
                        sides[k] = Some(num(site[k + 1], whole)?);
                    }
                }
                Move::R3aAdd { witness, sides }
            }
            MoveKind::R3bShift => Move::R3bShift {
                square: parse_square(&site, whole)?,
                shift: num(param(&params, "J", whole)?, whole)?,
            },
        })
    }
}
