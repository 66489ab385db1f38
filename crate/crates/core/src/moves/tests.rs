use super::*;
use crate::graph::{comte_key, validate};
use crate::sample::random_comte;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn count(moves: &[Move], kind: MoveKind) -> usize {
    moves.iter().filter(|m| m.kind() == kind).count()
}

#[test]
fn pendant_vertex_gives_one_r0() {
    let c = Comte::from_names(&["a", "b", "t"], &[("a", "t", "b", 0), ("a", "a", "a", 0)]).unwrap();
    let moves = enumerate_moves(&c, &MoveOptions::default());
    assert_eq!(count(&moves, MoveKind::R0), 1);
    let r = apply_move(&c, &Move::R0 { vertex: 1 }).unwrap();
    assert_eq!(r.comte.graph().vertex_count(), 2);
    let back = apply_move(&r.comte, &r.inverse).unwrap();
    assert_eq!(comte_key(&back.comte), comte_key(&c));
}

#[test]
fn self_labeled_arrow_gives_one_contraction() {
    let c = Comte::from_names(&["a", "b"], &[("a", "a", "b", 0)]).unwrap();
    let moves = enumerate_moves(&c, &MoveOptions::default());
    assert_eq!(count(&moves, MoveKind::R1Contract), 1);
    let r = apply_move(&c, &Move::R1Contract { arrow: 0 }).unwrap();
    assert_eq!((r.comte.graph().vertex_count(), r.comte.graph().arrow_count()), (1, 0));
    assert!(validate(&r.comte).is_valid());
}

#[test]
fn r2a_adds_flows() {
    let c = Comte::from_names(
        &["a", "b", "c", "d"],
        &[("a", "b", "c", 2), ("a", "b", "d", 3), ("c", "c", "a", 2), ("d", "d", "a", 3)],
    )
    .unwrap();
    let moves = enumerate_moves(&c, &MoveOptions::default());
    assert_eq!(count(&moves, MoveKind::R2a), 1);
    let r = apply_move(&c, &Move::R2a { first: 0, second: 1 }).unwrap();
    assert_eq!(r.comte.flow(0), &BigInt::from(5));
    assert!(validate(&r.comte).is_valid());
    let back = apply_move(&r.comte, &r.inverse).unwrap();
    assert_eq!(comte_key(&back.comte), comte_key(&c));
}

fn square_comte() -> Comte {
    // witness b -a-> t, square c -a-> u -t-> s, c -b-> r -a-> s
    Comte::from_names(
        &["a", "b", "t", "c", "u", "r", "s"],
        &[
            ("b", "a", "t", 0),
            ("c", "a", "u", 1),
            ("u", "t", "s", 1),
            ("c", "b", "r", 0),
            ("r", "a", "s", 0),
            ("s", "s", "c", 1),
        ],
    )
    .unwrap()
}

#[test]
fn r3b_shift_round_trip() {
    let c = square_comte();
    let sq = squares(c.graph());
    assert_eq!(sq, vec![Square { witness: 0, sides: [1, 2, 3, 4] }]);
    let j = BigInt::from(2);
    let r = apply_move(&c, &Move::R3bShift { square: sq[0].clone(), shift: j.clone() }).unwrap();
    assert_eq!(r.comte.flow(1), &BigInt::from(3));
    assert_eq!(r.comte.flow(3), &BigInt::from(-2));
    let back = apply_move(&r.comte, &Move::R3bShift { square: sq[0].clone(), shift: -j }).unwrap();
    assert_eq!(back.comte, c);
}

#[test]
fn r3a_removes_only_zero_sides() {
    let c = square_comte();
    let moves = enumerate_moves(&c, &MoveOptions::default());
    let removed: Vec<usize> = moves
        .iter()
        .filter_map(|m| match m {
            Move::R3aRemove { square, side } => Some(square.sides[*side]),
            _ => None,
        })
        .collect();
    assert_eq!(removed, vec![3, 4]);
    let r = apply_move(&c, &Move::R3aRemove { square: Square { witness: 0, sides: [1, 2, 3, 4] }, side: 3 }).unwrap();
    assert_eq!(r.comte.graph().arrow_count(), 5);
    let back = apply_move(&r.comte, &r.inverse).unwrap();
    assert_eq!(comte_key(&back.comte), comte_key(&c));
    let stale = apply_move(&r.comte, &Move::R3aRemove { square: Square { witness: 0, sides: [1, 2, 3, 9] }, side: 3 });
    assert!(matches!(stale, Err(MoveError::StaleSite(s)) if s.contains('9')));
}

#[test]
fn single_vertex_has_two_r0_inverses() {
    let c = Comte::from_names(&["a"], &[]).unwrap();
    let inv = inverse_instances(&c, &MoveOptions::default());
    assert_eq!(count(&inv, MoveKind::R0Inv), 2);
}

#[test]
fn parallel_split_flow_pairs() {
    let c = Comte::from_names(&["a"], &[("a", "a", "a", 1)]).unwrap();
    let opts = MoveOptions { flow_range: (-1, 2), ..MoveOptions::default() };
    let pairs: Vec<(BigInt, BigInt)> = inverse_instances(&c, &opts)
        .into_iter()
        .filter_map(|m| match m {
            Move::R2aSplit { split: Split::Parallel { flow }, .. } => Some(flow),
            _ => None,
        })
        .map(|f2| (BigInt::from(1) - &f2, f2))
        .collect();
    let expect: Vec<(BigInt, BigInt)> =
        [(-1, 2), (0, 1), (1, 0), (2, -1)].iter().map(|&(a, b)| (BigInt::from(a), BigInt::from(b))).collect();
    assert_eq!(pairs, expect);
}

#[test]
fn text_form_round_trips() {
    let c = square_comte();
    let opts = MoveOptions::default();
    for m in all_instances(&c, &opts) {
        let s = m.to_string();
        assert_eq!(s.parse::<Move>().unwrap(), m, "{s}");
    }
    assert!("R9 site=v0 params=".parse::<Move>().is_err());
}

#[test]
fn random_walks_stay_valid_and_invert() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let opts = MoveOptions { max_split_items: 5, max_vertices: 7, max_arrows: 9, ..MoveOptions::default() };
    let mut steps = 0;
    while steps < 1200 {
        let mut c = random_comte(&mut rng, 4, 5);
        for _ in 0..30 {
            let moves = all_instances(&c, &opts);
            let m = &moves[rng.gen_range(0..moves.len())];
            let Ok(r) = apply_move(&c, m) else { continue };
            assert!(validate(&r.comte).is_valid(), "{m} broke {c}");
            let back = apply_move(&r.comte, &r.inverse).unwrap_or_else(|e| panic!("{m} inverse {}: {e}", r.inverse));
            assert_eq!(comte_key(&back.comte), comte_key(&c), "{m} then {}", r.inverse);
            if r.comte.graph().vertex_count() <= opts.max_vertices && r.comte.graph().arrow_count() <= opts.max_arrows {
                c = r.comte;
            }
            steps += 1;
        }
    }
}

#[test]
fn search_finds_identity_and_short_paths() {
    let c = square_comte();
    let SearchOutcome::Equivalent(t) = equivalent_bounded(&c, &c, &Budget::default(), false) else {
        panic!("self search failed")
    };
    assert!(t.is_empty());

    let shifted = apply_move(&c, &Move::R3bShift { square: squares(c.graph())[0].clone(), shift: BigInt::from(1) })
        .unwrap()
        .comte;
    let mut renamed = shifted.relabel(&[6, 5, 4, 3, 2, 1, 0]);
    renamed = Comte::new(renamed.graph().clone(), renamed.flows().to_vec()).unwrap();
    let SearchOutcome::Equivalent(t) = equivalent_bounded(&c, &renamed, &Budget::default(), false) else {
        panic!("one-step search failed")
    };
    assert_eq!(t.len(), 1);
    assert_eq!(comte_key(&t.replay().unwrap()), comte_key(&renamed));
}
