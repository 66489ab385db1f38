//! Acceptance suite: one outcome per criterion, shared by `comte paper-suite`
//! and the `acceptance` test target.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alexander::{alexander_polynomial, LaurentPolynomial};
use crate::census::{enumerate_q_graphs, enumerate_r_graphs, signature_census, Convention, Family};
use crate::graph::{comte_key, components, validate, Comte, SelfIndexedGraph};
use crate::homology::{
    chain_complex, flow_to_cycle, homology, homology_range, r_basis, smith_normal_form_sparse, Cochain,
    HomologyGroup, SparseMatrix,
};
use crate::invariants::{abelianization_rank, linking_matrix};
use crate::link::{
    adjacent_tails, comte_of_diagram, comte_of_gauss, parse_gauss, parse_pd, swap_arrowtails, GaussDiagram, CORPUS,
    REIDEMEISTER_PAIRS,
};
use crate::moves::{all_instances, apply_move, equivalent_bounded, Budget, MoveOptions, SearchOutcome};
use crate::quandle::{
    colorings, graph_of_rack, phi_invariant, state_sum, tetrahedron_cocycle, AbelianGroup, FiniteRack,
};
use crate::sample::random_comte;

pub const DEFAULT_SEED: u64 = 20_160_817;
/// Randomized cases per property suite.
pub const MIN_CASES: usize = 500;
pub const CENSUS_SECONDS: f64 = 60.0;
pub const HOC_SECONDS: f64 = 30.0;
/// Highest degree checked for `∂² = 0` on census graphs.
pub const CENSUS_BOUNDARY_DEGREE: usize = 5;
pub const RACK_DEGREE: usize = 4;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cases: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: DEFAULT_SEED, cases: MIN_CASES }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:<3} {}: {}", self.id, self.title, self.detail)
    }
}

type Check = fn(&SuiteOptions) -> (bool, String);

pub const CRITERIA: &[(&str, &str, Check)] = &[
    ("1", "census counts", census_counts),
    ("2", "homology of the five-arrow example", hoc_homology),
    ("3", "homology is not an isotopy invariant", non_invariance),
    ("4", "tetrahedron state sums", state_sums),
    ("5", "Alexander polynomials", alexander),
    ("6", "linking numbers", linking),
    ("7", "homology signature census", signatures),
    ("8a", "moves preserve invariants", moves_preserve),
    ("8b", "boundary squares to zero on census graphs", census_boundary),
    ("8c", "q-quotient boundary is well defined", q_quotient),
    ("8d", "cube complex agrees with rack homology", rack_agreement),
    ("8e", "state sums are coboundary invariant", coboundary_invariance),
    ("8f", "Gauss and PD routes agree", gauss_pd),
    ("8g", "Reidemeister pairs are found", reidemeister_pairs),
];

pub fn ids() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.0).collect()
}

pub fn run_one(id: &str, opts: &SuiteOptions) -> Option<Outcome> {
    let &(id, title, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (pass, detail) = check(opts);
    Some(Outcome { id, title, pass, detail, elapsed: start.elapsed() })
}

pub fn run(opts: &SuiteOptions) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run_one(c.0, opts).expect("listed id")).collect()
}

fn comte(vertices: &[&str], arrows: &[(&str, &str, &str, i64)]) -> Comte {
    Comte::from_names(vertices, arrows).expect("example comtes are valid")
}

/// The right trefoil.
pub fn g1() -> Comte {
    comte(&["a", "b", "c"], &[("a", "c", "b", 1), ("b", "a", "c", 1), ("c", "b", "a", 1)])
}

/// The trefoil with an extra zero-flow arrow.
pub fn g2() -> Comte {
    comte(&["a", "b", "c"], &[("a", "c", "b", 1), ("b", "a", "c", 1), ("c", "b", "a", 1), ("a", "b", "c", 0)])
}

pub fn g3() -> Comte {
    comte(&["a", "b", "c"], &[("a", "c", "b", 1), ("b", "c", "a", 1), ("c", "b", "a", 0), ("a", "b", "c", 0)])
}

/// Loops at every vertex plus five arrows.
pub fn hoc() -> SelfIndexedGraph {
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
    .expect("valid example")
}

fn z(betti: usize) -> HomologyGroup {
    HomologyGroup { betti, torsion: Vec::new() }
}

fn census_counts(_: &SuiteOptions) -> (bool, String) {
    let start = Instant::now();
    let (r, q) = match (enumerate_r_graphs(3), enumerate_q_graphs(3)) {
        (Ok(r), Ok(q)) => (r, q),
        (Err(e), _) | (_, Err(e)) => return (false, e.to_string()),
    };
    let secs = start.elapsed().as_secs_f64();
    let with_arrows = r.iter().filter(|(_, g)| g.arrow_count() > 0).count();
    let pass = with_arrows == 6663 && q.len() == 70 && secs < CENSUS_SECONDS;
    let detail = format!(
        "r-graphs with arrows {with_arrows} ({} counting the arrowless graph), q-graphs {}, under {CENSUS_SECONDS} s: {}",
        r.len(),
        q.len(),
        secs < CENSUS_SECONDS
    );
    (pass, detail)
}

fn hoc_homology(_: &SuiteOptions) -> (bool, String) {
    let start = Instant::now();
    let groups = match homology_range(&hoc(), 5, false) {
        Ok(g) => g,
        Err(e) => return (false, e.to_string()),
    };
    let secs = start.elapsed().as_secs_f64();
    let expect: Vec<HomologyGroup> = [1, 2, 4, 7, 11].into_iter().map(z).collect();
    let shown: Vec<String> = groups.iter().map(|h| h.to_string()).collect();
    (groups == expect && secs < HOC_SECONDS, format!("H_1..H_5 = {}, under {HOC_SECONDS} s: {}", shown.join(", "), secs < HOC_SECONDS))
}

fn non_invariance(_: &SuiteOptions) -> (bool, String) {
    let (c2, c3) = (g2(), g3());
    let bar = |c: &Comte| c.graph().with_tautological_loops();
    let (h2, h3) = match (homology(&bar(&c2), 3, false), homology(&bar(&c3), 3, false)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return (false, e.to_string()),
    };
    let budget = Budget { max_vertices: Some(3), max_arrows: Some(6), ..Budget::default() };
    let (trace_ok, trace) = match equivalent_bounded(&c2, &c3, &budget, false) {
        SearchOutcome::Equivalent(t) => {
            let fam = t.families();
            let replayed = t.replay().is_ok_and(|end| comte_key(&end) == comte_key(&c3));
            let pattern = fam == ["R1", "R3(a)", "R3(b)", "R3(a)", "R1"];
            (replayed && pattern && t.len() <= 5, fam.join(", "))
        }
        SearchOutcome::Unknown { states } => (false, format!("no trace within {states} states")),
    };
    let pass = h2 == z(4) && h3 == z(5) && trace_ok;
    (pass, format!("H_3(G2 with loops) = {h2}, H_3(G3 with loops) = {h3}, trace {trace}"))
}

fn state_sums(_: &SuiteOptions) -> (bool, String) {
    let tet = FiniteRack::tetrahedron();
    let f = tetrahedron_cocycle();
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, c, phi, count) in [("G1", g1(), "4 + 12*s", 16), ("G2", g2(), "4", 4), ("G3", g3(), "4", 4)] {
        let got = phi_invariant(&c, &tet, &f);
        let n = colorings(c.graph(), &tet).len();
        pass &= got.to_string() == phi && got.augmentation() == BigInt::from(count) && n == count;
        parts.push(format!("{name}: {got} ({n} colorings)"));
    }
    (pass, parts.join("; "))
}

/// The single-variable example of a two-arrow graph.
pub fn alexander_example() -> SelfIndexedGraph {
    SelfIndexedGraph::from_names(&["a", "b", "c"], &[("a", "b", "c"), ("a", "c", "b")]).expect("valid example")
}

fn alexander(_: &SuiteOptions) -> (bool, String) {
    let d = alexander_polynomial(&alexander_example(), 1).unit_normalize();
    let t = alexander_polynomial(g1().graph(), 1).unit_normalize();
    let want_d = LaurentPolynomial::from_coeffs(0, &[-2, 1]).unit_normalize();
    let want_t = LaurentPolynomial::from_coeffs(0, &[1, -1, 1]).unit_normalize();
    (d == want_d && t == want_t, format!("example {d}, trefoil {t}"))
}

/// Two arrows labeled by an isolated vertex, plus a fourth vertex.
pub fn linking_example() -> Comte {
    comte(&["a", "b", "c", "d"], &[("a", "c", "b", 1), ("b", "c", "a", 1)])
}

fn linking(_: &SuiteOptions) -> (bool, String) {
    let c = linking_example();
    let lk = linking_matrix(&c);
    let (ab, cc) = (lk.component_of_vertex(0).unwrap(), lk.component_of_vertex(2).unwrap());
    let mut pass = lk.size() == 3;
    for i in 0..lk.size() {
        for j in 0..lk.size() {
            if let Some(v) = lk.get(i, j) {
                let want = if (i, j) == (cc, ab) { 2 } else { 0 };
                pass &= *v == BigInt::from(want);
            }
        }
    }
    let lk_c_ab = lk.get(cc, ab).cloned().unwrap_or_default();
    let detail = if pass { format!("lk(c, ab) = {lk_c_ab}, other entries 0") } else { format!("matrix\n{lk}") };
    (pass, detail)
}

fn signatures(_: &SuiteOptions) -> (bool, String) {
    let (r, q) = match (signature_census(Family::R, 3, 5), signature_census(Family::Q, 3, 5)) {
        (Ok(r), Ok(q)) => (r, q),
        (Err(e), _) | (_, Err(e)) => return (false, e.to_string()),
    };
    let mut matched = Vec::new();
    let mut parts = Vec::new();
    for conv in Convention::ALL {
        for quotient in [false, true] {
            let nr = if quotient { None } else { Some(r.distinct(conv, false, true)) };
            let nq = q.distinct(conv, quotient, true);
            let label = format!("{}{}", conv.name(), if quotient { "/q" } else { "" });
            match nr {
                Some(nr) => {
                    parts.push(format!("{label}: r {nr} q {nq}"));
                    if nr == 280 && nq == 28 {
                        matched.push(label);
                    }
                }
                None => parts.push(format!("{label}: q {nq}")),
            }
        }
    }
    let pass = !matched.is_empty();
    let verdict = if pass { format!("280/28 under {}", matched.join(", ")) } else { "no convention gives 280/28".into() };
    (pass, format!("{verdict} [{}]", parts.join("; ")))
}

/// Everything the move calculus must preserve.
#[derive(Debug, PartialEq, Eq)]
struct Fingerprint {
    valid: bool,
    components: usize,
    rank: usize,
    delta1: LaurentPolynomial,
    linking: Vec<Vec<Option<BigInt>>>,
    colorings: usize,
}

fn fingerprint(c: &Comte, tet: &FiniteRack) -> Fingerprint {
    Fingerprint {
        valid: validate(c).is_valid(),
        components: components(c.graph()).len(),
        rank: abelianization_rank(c.graph()),
        delta1: alexander_polynomial(c.graph(), 1).unit_normalize(),
        linking: linking_matrix(c).normal_form(),
        colorings: colorings(c.graph(), tet).len(),
    }
}

fn moves_preserve(opts: &SuiteOptions) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tet = FiniteRack::tetrahedron();
    let mopts = MoveOptions { max_split_items: 5, max_vertices: 6, max_arrows: 8, ..MoveOptions::default() };
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    let mut done = 0;
    while done < opts.cases {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=5);
        let c = random_comte(&mut rng, n, m);
        let before = fingerprint(&c, &tet);
        let moves = all_instances(&c, &mopts);
        let Some(m) = moves.choose(&mut rng) else { continue };
        let Ok(applied) = apply_move(&c, m) else { continue };
        let after = fingerprint(&applied.comte, &tet);
        if after != before {
            return (false, format!("{m} on {c} changed {before:?} to {after:?}"));
        }
        *kinds.entry(m.kind().name()).or_default() += 1;
        done += 1;
    }
    let mix: Vec<String> = kinds.iter().map(|(k, n)| format!("{k} {n}")).collect();
    (true, format!("{done} moves ({})", mix.join(", ")))
}

fn census_boundary(_: &SuiteOptions) -> (bool, String) {
    let graphs = match enumerate_r_graphs(3) {
        Ok(g) => g,
        Err(e) => return (false, e.to_string()),
    };
    for (_, g) in &graphs {
        let (_, mats) = chain_complex(g, CENSUS_BOUNDARY_DEGREE, false).expect("r-graphs have complexes");
        for n in 2..=CENSUS_BOUNDARY_DEGREE {
            if !product_is_zero(&mats[n], &mats[n - 1]) {
                return (false, format!("∂_{}∂_{n} ≠ 0 on {g}", n - 1));
            }
        }
    }
    (true, format!("{} graphs, degrees 2..{CENSUS_BOUNDARY_DEGREE}", graphs.len()))
}

fn product_is_zero(a: &SparseMatrix, b: &SparseMatrix) -> bool {
    a.mul(b).iter().all(|r| r.iter().all(|x| *x == BigInt::default()))
}

fn is_degenerate(t: &[usize]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

fn q_quotient(_: &SuiteOptions) -> (bool, String) {
    let graphs = match enumerate_q_graphs(3) {
        Ok(g) => g,
        Err(e) => return (false, e.to_string()),
    };
    let max = CENSUS_BOUNDARY_DEGREE;
    for (_, g) in &graphs {
        let (_, mats) = chain_complex(g, max, false).expect("q-graphs are r-graphs");
        let bases: Vec<Vec<Vec<usize>>> =
            (1..=max).map(|n| r_basis(n, g, false).expect("q-graphs are r-graphs")).collect();
        for n in 2..=max {
            let (rows, cols) = (&bases[n - 1], &bases[n - 2]);
            for (i, row) in mats[n].rows.iter().enumerate() {
                if is_degenerate(&rows[i]) && row.iter().any(|&(j, _)| !is_degenerate(&cols[j])) {
                    return (false, format!("∂ of degenerate {:?} leaves the subcomplex on {g}", rows[i]));
                }
            }
        }
        let (_, quot) = chain_complex(g, max, true).expect("q-graph");
        for n in 2..=max {
            if !product_is_zero(&quot[n], &quot[n - 1]) {
                return (false, format!("quotient ∂² ≠ 0 in degree {n} on {g}"));
            }
        }
    }
    (true, format!("{} q-graphs, degrees 2..{max}", graphs.len()))
}

/// Rack homology from the textbook complex on `X^n`, written for the right
/// operation `x * y = y |> x`:
/// `∂(x_1..x_n) = ∑_(i≥2) (-1)^i ((.., x̂_i, ..) - (x_1*x_i, .., x_(i-1)*x_i, x_(i+1), ..))`.
pub fn rack_homology_oracle(rack: &FiniteRack, max: usize, quandle: bool) -> Vec<HomologyGroup> {
    let k = rack.size();
    let star = |x: usize, y: usize| rack.op(y, x);
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            out = out.into_iter().flat_map(|t| (0..k).map(move |x| [t.clone(), vec![x]].concat())).collect();
        }
        out.retain(|t| !quandle || !is_degenerate(t));
        out
    };
    let bases: Vec<Vec<Vec<usize>>> = (0..=max + 1).map(tuples).collect();
    let mut mats = vec![SparseMatrix::zero(0, 0), SparseMatrix::zero(bases[1].len(), 1)];
    for n in 2..=max + 1 {
        let index: HashMap<&Vec<usize>, usize> = bases[n - 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let rows = bases[n]
            .iter()
            .map(|t| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for i in 1..n {
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    let mut d0 = t.clone();
                    d0.remove(i);
                    let mut d1: Vec<usize> = t[..i].iter().map(|&x| star(x, t[i])).collect();
                    d1.extend_from_slice(&t[i + 1..]);
                    for (face, c) in [(d0, sign), (d1, -sign)] {
                        if let Some(&j) = index.get(&face) {
                            *acc.entry(j).or_default() += c;
                        }
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        mats.push(SparseMatrix { nrows: bases[n].len(), ncols: bases[n - 1].len(), rows });
    }
    let forms: Vec<_> = mats.iter().map(smith_normal_form_sparse).collect();
    (1..=max)
        .map(|n| HomologyGroup {
            betti: bases[n].len() - if n == 1 { 0 } else { forms[n].rank() } - forms[n + 1].rank(),
            torsion: forms[n + 1].torsion(),
        })
        .collect()
}

fn rack_agreement(_: &SuiteOptions) -> (bool, String) {
    let racks = [
        ("trivial2", FiniteRack::trivial(2)),
        ("dihedral3", FiniteRack::dihedral(3)),
        ("dihedral4", FiniteRack::dihedral(4)),
        ("dihedral5", FiniteRack::dihedral(5)),
        ("tetrahedron", FiniteRack::tetrahedron()),
    ];
    let mut parts = Vec::new();
    for (name, rack) in &racks {
        let g = graph_of_rack(rack);
        for quandle in [false, true] {
            let cube = homology_range(&g, RACK_DEGREE, quandle).expect("rack graphs are q-graphs");
            let oracle = rack_homology_oracle(rack, RACK_DEGREE, quandle);
            if cube != oracle {
                let show = |v: &[HomologyGroup]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ");
                return (false, format!("{name} (quandle {quandle}): cube {} vs rack {}", show(&cube), show(&oracle)));
            }
        }
        if *name == "tetrahedron" {
            let h = homology_range(&g, RACK_DEGREE, true).expect("q-graph");
            parts.push(format!("{name} H^Q = {}", h.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")));
        }
    }
    (true, format!("{} racks through degree {RACK_DEGREE}, both complexes; {}", racks.len(), parts.join("")))
}

fn coboundary_invariance(opts: &SuiteOptions) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xe);
    let tet = FiniteRack::tetrahedron();
    let f = tetrahedron_cocycle();
    let target = graph_of_rack(&tet);
    let base = Cochain::from_cocycle2(&tet, &f);
    let c2 = AbelianGroup::cyclic(2);
    for case in 0..opts.cases {
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(0..=5));
        let c = random_comte(&mut rng, n, m);
        let g: Vec<Vec<i64>> = (0..tet.size()).map(|_| vec![rng.gen_range(0..2)]).collect();
        let shifted = base.add(&crate::homology::rack_one_cochain(&tet, c2.clone(), &g).coboundary(&target));
        let chain = flow_to_cycle(&c);
        let (a, b) = match (state_sum(c.graph(), &chain, &target, &base), state_sum(c.graph(), &chain, &target, &shifted)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return (false, e.to_string()),
        };
        let phi = phi_invariant(&c, &tet, &f);
        if a != b || a != phi {
            return (false, format!("case {case}: {c} gives {a} / {b} / phi {phi}"));
        }
    }
    (true, format!("{} comtes, state sum = Φ and unchanged by δg", opts.cases))
}

/// A random (virtual) Gauss code on `1..=k` chords over `circles` circles.
pub fn random_gauss<R: Rng>(rng: &mut R, chords: usize, circles: usize) -> GaussDiagram {
    let mut ends: Vec<(u32, bool)> = (1..=chords as u32).flat_map(|c| [(c, false), (c, true)]).collect();
    ends.shuffle(rng);
    let signs: Vec<i8> = (0..=chords).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let mut cuts: Vec<usize> = (1..ends.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(circles.saturating_sub(1)).collect();
    cuts.sort_unstable();
    let mut text = String::new();
    for (i, &(c, head)) in ends.iter().enumerate() {
        if cuts.contains(&i) {
            text.push('/');
        }
        text.push_str(&format!("{}{c}{}", if head { 'U' } else { 'O' }, if signs[c as usize] > 0 { '+' } else { '-' }));
    }
    parse_gauss(&text).expect("generated codes parse")
}

fn gauss_pd(opts: &SuiteOptions) -> (bool, String) {
    for l in CORPUS {
        let (g, p) = match (parse_gauss(l.gauss), parse_pd(l.pd)) {
            (Ok(g), Ok(p)) => (g, p),
            _ => return (false, format!("{} does not parse", l.name)),
        };
        match (comte_of_gauss(&g), comte_of_diagram(&p)) {
            (Ok(a), Ok(b)) if comte_key(&a) == comte_key(&b) => {}
            _ => return (false, format!("{}: Gauss and PD comtes differ", l.name)),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xf);
    let mut swaps = 0;
    let mut diagrams = 0;
    while diagrams < opts.cases {
        let chords = rng.gen_range(1..=6);
        let circles = rng.gen_range(1..=2);
        let d = random_gauss(&mut rng, chords, circles);
        let Ok(c) = comte_of_gauss(&d) else { continue };
        diagrams += 1;
        for (circle, pos) in adjacent_tails(&d) {
            let swapped = swap_arrowtails(&d, circle, pos).expect("listed tails are adjacent");
            match comte_of_gauss(&swapped) {
                Ok(s) if comte_key(&s) == comte_key(&c) => swaps += 1,
                _ => return (false, format!("tail swap at {circle}:{pos} of {d} changes the comte")),
            }
        }
    }
    (true, format!("{} corpus links agree; {swaps} tail swaps on {diagrams} random codes", CORPUS.len()))
}

fn reidemeister_pairs(_: &SuiteOptions) -> (bool, String) {
    let mut parts = Vec::new();
    for p in REIDEMEISTER_PAIRS {
        let parse = |s: &str| parse_gauss(s).ok().and_then(|d| comte_of_gauss(&d).ok());
        let (Some(a), Some(b)) = (parse(p.before), parse(p.after)) else {
            return (false, format!("{}: bad code", p.name));
        };
        match equivalent_bounded(&a, &b, &Budget::default(), false) {
            SearchOutcome::Equivalent(t) if t.replay().is_ok_and(|e| comte_key(&e) == comte_key(&b)) => {
                parts.push(format!("{} [{}]", p.name, t.families().join(" ")));
            }
            SearchOutcome::Equivalent(_) => return (false, format!("{}: trace does not replay", p.name)),
            SearchOutcome::Unknown { states } => {
                return (false, format!("{}: nothing within {states} states", p.name));
            }
        }
    }
    (true, parts.join("; "))
}
