mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use comte::alexander::{alexander_polynomial, laurent_gcd, LaurentPolynomial};
use comte::graph::document::{decode_comte, encode_comte};
use comte::graph::hom::count_homomorphisms;
use comte::graph::{comte_key, components, graph_key};
use comte::homology::{
    boundary_squared, build_yn, is_zero_matrix, smith_normal_form, smith_normal_form_sparse, SparseMatrix,
};
use comte::invariants::{abelianization_rank, linking_matrix};
use comte::link::{adjacent_tails, comte_of_diagram, comte_of_gauss, parse_gauss, parse_pd, swap_arrowtails, CORPUS};
use comte::moves::{all_instances, apply_move, MoveOptions};
use comte::quandle::{colorings, FiniteRack};
use comte::sample::{random_comte, random_graph};
use comte::suite::random_gauss;
use comte::{contract, validate};

use common::fox::alexander_from_gauss;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() }
}

fn poly(coeffs: &[i64]) -> LaurentPolynomial {
    LaurentPolynomial::from_coeffs(0, coeffs)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn moves_preserve_invariants(seed in any::<u64>(), n in 1usize..=4, m in 0usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_comte(&mut rng, n, m);
        let opts = MoveOptions { max_split_items: 5, max_vertices: 6, max_arrows: 8, ..MoveOptions::default() };
        let moves = all_instances(&c, &opts);
        let Some(mv) = moves.choose(&mut rng) else { return Ok(()) };
        let Ok(applied) = apply_move(&c, mv) else { return Ok(()) };
        let d = applied.comte;
        let tet = FiniteRack::tetrahedron();
        prop_assert!(validate(&d).is_valid());
        prop_assert_eq!(components(c.graph()).len(), components(d.graph()).len());
        prop_assert_eq!(abelianization_rank(c.graph()), abelianization_rank(d.graph()));
        prop_assert_eq!(
            alexander_polynomial(c.graph(), 1).unit_normalize(),
            alexander_polynomial(d.graph(), 1).unit_normalize()
        );
        prop_assert_eq!(linking_matrix(&c).normal_form(), linking_matrix(&d).normal_form());
        prop_assert_eq!(colorings(c.graph(), &tet).len(), colorings(d.graph(), &tet).len());
        // the recorded inverse undoes the move
        let back = apply_move(&d, &applied.inverse).unwrap();
        prop_assert_eq!(comte_key(&back.comte), comte_key(&c));
    }

    #[test]
    fn elementary_ideals_are_nested(seed in any::<u64>(), n in 1usize..=4, m in 0usize..=5) {
        let g = random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, m);
        let d1 = alexander_polynomial(&g, 1);
        let d2 = alexander_polynomial(&g, 2);
        prop_assert!(d2.divides(&d1) || d1.is_zero(), "{} does not divide {}", d2, d1);
    }

    #[test]
    fn gcd_divides_and_scales(a in prop::collection::vec(-4i64..=4, 1..5),
                              b in prop::collection::vec(-4i64..=4, 1..5),
                              r in prop::collection::vec(-3i64..=3, 1..4)) {
        let (a, b, r) = (poly(&a), poly(&b), poly(&r));
        let g = laurent_gcd(&a, &b);
        if !g.is_zero() {
            prop_assert!(g.divides(&a) && g.divides(&b));
        }
        if !r.is_zero() {
            let scaled = laurent_gcd(&(&a * &r), &(&b * &r));
            prop_assert_eq!(scaled, (&g * &r).unit_normalize());
        }
    }

    #[test]
    fn smith_form_ignores_row_and_column_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (nr, nc) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let rows: Vec<Vec<i64>> =
            (0..nr).map(|_| (0..nc).map(|_| if rng.gen_bool(0.5) { rng.gen_range(-5..=5) } else { 0 }).collect()).collect();
        let mut rp: Vec<usize> = (0..nr).collect();
        let mut cp: Vec<usize> = (0..nc).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let permuted: Vec<Vec<i64>> = rp.iter().map(|&i| cp.iter().map(|&j| rows[i][j]).collect()).collect();
        let a = smith_normal_form_sparse(&SparseMatrix::from_dense(&rows, nc));
        let b = smith_normal_form_sparse(&SparseMatrix::from_dense(&permuted, nc));
        prop_assert_eq!(&a, &b);
        // |det| of a square matrix is the product of the factors
        if nr == nc {
            let dense = SparseMatrix::from_dense(&rows, nc).to_dense();
            let prod: BigInt = if a.rank() == nr { a.factors.iter().product() } else { BigInt::from(0) };
            prop_assert_eq!(prod, num_traits::Signed::abs(&integer_det(&dense)));
            prop_assert_eq!(&smith_normal_form(&dense, nc), &a);
        }
    }

    #[test]
    fn canonical_key_ignores_vertex_names_and_order(seed in any::<u64>(), n in 1usize..=5, m in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_comte(&mut rng, n, m);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(comte_key(&c), comte_key(&c.relabel(&perm)));
        prop_assert_eq!(graph_key(c.graph()), graph_key(c.relabel(&perm).graph()));
    }

    #[test]
    fn contraction_order_does_not_matter(seed in any::<u64>(), n in 1usize..=4, m in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, m);
        let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
        prop_assume!(a != b);
        let both = contract(&g, &BTreeSet::from([a, b])).unwrap();
        // after removing arrow `a`, arrow `b` moves down by one if it came later
        let first = contract(&g, &BTreeSet::from([a])).unwrap();
        let then = contract(&first, &BTreeSet::from([if b > a { b - 1 } else { b }])).unwrap();
        prop_assert_eq!(graph_key(&both), graph_key(&then));
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>(), n in 1usize..=3, m in 0usize..=4) {
        let g = random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, m);
        // parallel loops give exponentially many homomorphisms from Y_4
        for d in 2..=4 {
            if count_homomorphisms(&build_yn(d).graph, &g) > 20_000 {
                break;
            }
            prop_assert!(is_zero_matrix(&boundary_squared(&g, d, false).unwrap()), "degree {} on {}", d, g);
        }
    }

    #[test]
    fn document_round_trip(seed in any::<u64>(), n in 1usize..=5, m in 0usize..=6) {
        let c = random_comte(&mut ChaCha8Rng::seed_from_u64(seed), n, m);
        let text = encode_comte(&c);
        prop_assert_eq!(&decode_comte(&text).unwrap(), &c);
    }

    #[test]
    fn tail_swaps_leave_the_comte_alone(seed in any::<u64>(), chords in 1usize..=6, circles in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_gauss(&mut rng, chords, circles.min(2 * chords));
        let c = comte_of_gauss(&d).unwrap();
        prop_assert!(validate(&c).is_valid());
        for (ci, p) in adjacent_tails(&d) {
            let s = comte_of_gauss(&swap_arrowtails(&d, ci, p).unwrap()).unwrap();
            prop_assert_eq!(comte_key(&s), comte_key(&c));
        }
    }

    /// Δ_1 is the gcd of all maximal minors, so it divides the Fox minor.
    #[test]
    fn alexander_divides_fox_minor(seed in any::<u64>(), chords in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_gauss(&mut rng, chords, 1);
        let code = d.to_string();
        let fox = alexander_from_gauss(&code);
        let fox = LaurentPolynomial::from_coeffs(0, &fox);
        let lib = alexander_polynomial(comte_of_gauss(&d).unwrap().graph(), 1);
        prop_assert!(fox.is_zero() || lib.divides(&fox), "{}: {} vs {}", code, lib, fox);
    }
}

fn integer_det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut acc = BigInt::from(0);
    for j in 0..m.len() {
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * integer_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

#[test]
fn corpus_routes_and_fox_oracle() {
    for l in CORPUS {
        let g = comte_of_gauss(&parse_gauss(l.gauss).unwrap()).unwrap();
        let p = comte_of_diagram(&parse_pd(l.pd).unwrap()).unwrap();
        assert_eq!(comte_key(&g), comte_key(&p), "{}", l.name);
        if l.components == 1 {
            let fox = poly(&alexander_from_gauss(l.gauss)).unit_normalize();
            assert_eq!(alexander_polynomial(g.graph(), 1).unit_normalize(), fox, "{}", l.name);
        }
    }
}
