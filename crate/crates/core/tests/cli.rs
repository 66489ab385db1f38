use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("comte").chain(args.iter().copied()).collect();
    let code = comte::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn trefoil() -> String {
    let (code, doc, _) = run(&["import", "--gauss", "O1+U2+O3+U1+O2+U3+"]);
    assert_eq!(code, 0);
    file("cli_trefoil.json", &doc)
}

const G2: &str = r#"{"vertices": ["a", "b", "c"], "arrows": [
  {"source": "a", "target": "b", "label": "c", "flow": 1},
  {"source": "b", "target": "c", "label": "a", "flow": 1},
  {"source": "c", "target": "a", "label": "b", "flow": 1},
  {"source": "a", "target": "c", "label": "b", "flow": 0}]}"#;

const G3: &str = r#"{"vertices": ["a", "b", "c"], "arrows": [
  {"source": "a", "target": "b", "label": "c", "flow": 1},
  {"source": "b", "target": "a", "label": "c", "flow": 1},
  {"source": "c", "target": "a", "label": "b", "flow": 0},
  {"source": "a", "target": "c", "label": "b", "flow": 0}]}"#;

#[test]
fn import_gives_trefoil_document() {
    let (code, doc, _) = run(&["import", "--gauss", "O1+U2+O3+U1+O2+U3+"]);
    assert_eq!(code, 0);
    let c = comte::graph::document::decode_comte(&doc).unwrap();
    assert_eq!((c.graph().vertex_count(), c.graph().arrow_count()), (3, 3));
    let (code, pd, _) = run(&["import", "--pd", "X[3,1,4,6] X[1,5,2,4] X[5,3,6,2]"]);
    assert_eq!(code, 0);
    let p = comte::graph::document::decode_comte(&pd).unwrap();
    assert_eq!(comte::graph::comte_key(&c), comte::graph::comte_key(&p));
}

#[test]
fn statesum_of_trefoil() {
    let t = trefoil();
    let (code, out, _) = run(&["statesum", "--comte", &t, "--quandle", "tetrahedron", "--cocycle", "builtin"]);
    assert_eq!((code, out.as_str()), (0, "4 + 12*s\n"));
    let (code, out, _) = run(&["colorings", &t, "--quandle", "tetrahedron"]);
    assert_eq!((code, out.as_str()), (0, "16 colorings\n"));
}

#[test]
fn census_counts() {
    let (code, out, _) = run(&["census", "--class", "q", "--vertices", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("70 classes"), "{out}");
    let (code, out, _) = run(&["census", "--class", "r", "--vertices", "2", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("# distinct signatures"), "{out}");
}

#[test]
fn invariants_and_homology() {
    let t = trefoil();
    let (code, out, _) = run(&["invariants", &t, "--delta", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("components 1\n") && out.contains("Delta_1 = t^2 - t + 1\n") && out.contains("Delta_2 = 1\n"), "{out}");
    let (code, out, _) = run(&["homology", &t, "--degree", "2"]);
    assert_eq!((code, out.as_str()), (0, "H_1 = Z\nH_2 = Z\n"));
}

#[test]
fn moves_search_and_apply() {
    let (a, b) = (file("cli_g2.json", G2), file("cli_g3.json", G3));
    let (code, out, _) = run(&["moves", "search", &a, &b, "--max-vertices", "3", "--max-arrows", "6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("equivalent in 5 moves: R1, R3(a), R3(b), R3(a), R1"), "{out}");
    let first = out.lines().nth(1).unwrap().to_string();
    let (code, doc, _) = run(&["moves", "apply", &a, "--move", &first]);
    assert_eq!(code, 0);
    assert_eq!(comte::graph::document::decode_comte(&doc).unwrap().graph().arrow_count(), 5);
}

#[test]
fn bracket_of_one_arrow() {
    let t = trefoil();
    let (code, out, _) = run(&["bracket", &t, "--semivirtual", "0"]);
    assert_eq!(code, 0);
    let coefs: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(coefs.len(), 2);
    assert!(coefs.contains(&"1") && coefs.contains(&"-1"));
}

#[test]
fn exit_codes() {
    let t = trefoil();
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["census", "--class", "x", "--vertices", "3"]).0, 2);
    assert_eq!(run(&["census", "--class", "r", "--vertices", "9"]).0, 2);
    assert_eq!(run(&["colorings", &t, "--quandle", "nonesuch"]).0, 2);
    assert_eq!(run(&["homology", "/nonexistent/file.json"]).0, 2);
    // q-quotient on an r-graph is a computation-level failure
    let (code, _, err) = run(&["homology", &t, "--q"]);
    assert_eq!(code, 1);
    assert!(err.contains("cli_trefoil.json"), "{err}");
    let broken = file("cli_broken.json", r#"{"vertices": ["a"], "arrows": [{"source": "a", "target": "b", "label": "a"}]}"#);
    let (code, out, _) = run(&["validate", &broken]);
    assert_eq!(code, 1);
    assert!(out.contains("\"b\""), "{out}");
    let unbalanced = file(
        "cli_unbalanced.json",
        r#"{"vertices": ["a", "b"], "arrows": [{"source": "a", "target": "b", "label": "a", "flow": 2}]}"#,
    );
    assert_eq!(run(&["statesum", "--comte", &unbalanced, "--quandle", "tetrahedron", "--cocycle", "builtin"]).0, 1);
    assert_eq!(run(&["statesum", "--comte", &t, "--quandle", "dihedral3", "--cocycle", "builtin"]).0, 2);
    assert_eq!(run(&["import", "--gauss", "O1+U1-"]).0, 1);
}

#[test]
fn cocycle_and_quandle_files() {
    let t = trefoil();
    let q = file("cli_d3.txt", &comte::quandle::FiniteRack::dihedral(3).to_string());
    let (code, out, _) = run(&["colorings", &t, "--quandle", &q]);
    assert_eq!((code, out.as_str()), (0, "9 colorings\n"));
    let tq = file("cli_tet.txt", &comte::quandle::FiniteRack::tetrahedron().to_string());
    let f = file("cli_tet_cocycle.txt", &comte::quandle::tetrahedron_cocycle().to_string());
    let (code, out, _) = run(&["statesum", "--comte", &t, "--quandle", &tq, "--cocycle", &f]);
    assert_eq!((code, out.as_str()), (0, "4 + 12*s\n"));
    // not a cocycle: a single nonzero value
    let bad = file("cli_bad_cocycle.txt", "orders 2\n1 2 -> 1\n");
    assert_eq!(run(&["statesum", "--comte", &t, "--quandle", "tetrahedron", "--cocycle", &bad]).0, 1);
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_comte");
    let go = |jobs: &str| {
        Command::new(exe).args(["--jobs", jobs, "census", "--class", "r", "--vertices", "2", "--max-degree", "3"]).output().unwrap()
    };
    let (a, b) = (go("1"), go("2"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(exe).arg("--nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn paper_suite_subset() {
    let (code, out, _) = run(&["paper-suite", "--only", "4", "--only", "6"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    assert_eq!(run(&["paper-suite", "--only", "99"]).0, 2);
}
