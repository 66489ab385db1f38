//! Command-line interface.
//!
//! Exit codes: 0 success, 1 a computation-level failure (bad file contents,
//! invalid comte, failed acceptance line), 2 a usage error (bad flags,
//! unknown builtin, unreadable path).

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::alexander::{alexander_polynomial, multivariable_relation_matrix, RelationSign};
use crate::census::{enumerate, signature_census, CensusError, Family};
use crate::finite_type::{bracket, SemiVirtualGraph};
use crate::graph::document::{decode, decode_raw, encode_comte, validate_document, Document};
use crate::graph::{classify, components, validate, Comte};
use crate::homology::{homology_range, homology_report};
use crate::invariants::{abelianization_rank, group_presentation, linking_matrix, quandle_presentation};
use crate::link::{comte_of_diagram, comte_of_gauss, parse_gauss, parse_pd};
use crate::moves::{
    all_instances, apply_move, enumerate_moves, equivalent_bounded, Budget, Move, MoveOptions, SearchOutcome,
};
use crate::quandle::{colorings, phi_invariant, tetrahedron_cocycle, Cocycle2, FiniteRack, QuandleError};
use crate::suite::{self, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "comte", version, about = "Self-indexed graphs, comtes and their invariants")]
struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = suite::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Converts a Gauss code or PD code into a comte document.
    Import(ImportArgs),
    /// Checks references and flow conservation of a document.
    Validate { file: PathBuf },
    /// Components, abelianization rank, linking matrix and Alexander polynomials.
    Invariants(InvariantsArgs),
    /// Colorings by a finite quandle.
    Colorings(ColoringsArgs),
    /// The cocycle invariant Φ.
    Statesum(StatesumArgs),
    /// Cubical homology H_1 .. H_degree.
    Homology(HomologyArgs),
    /// Move enumeration, application and bounded search.
    Moves {
        #[command(subcommand)]
        action: MovesCommand,
    },
    /// Isomorphism classes of r- or q-graphs and their homology signatures.
    Census(CensusArgs),
    /// The bracket [G, S] as a combination of classes.
    Bracket(BracketArgs),
    /// Runs every acceptance check and prints one line each.
    PaperSuite(SuiteArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ImportArgs {
    #[arg(long)]
    gauss: Option<String>,
    #[arg(long)]
    pd: Option<String>,
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    file: PathBuf,
    /// Print Δ_1 .. Δ_i.
    #[arg(long, default_value_t = 1)]
    delta: usize,
    /// Also print the group and quandle presentations.
    #[arg(long)]
    presentations: bool,
    /// Also print the multivariable relation matrix.
    #[arg(long)]
    multivariable: bool,
}

#[derive(Args, Debug)]
struct ColoringsArgs {
    file: PathBuf,
    /// Builtin name (`trivial<n>`, `dihedral3`, `tetrahedron`) or table file.
    #[arg(long)]
    quandle: String,
    /// List the colorings, not just their number.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct StatesumArgs {
    #[arg(long)]
    comte: PathBuf,
    #[arg(long)]
    quandle: String,
    /// `builtin` (tetrahedron only) or a cocycle file.
    #[arg(long)]
    cocycle: String,
}

#[derive(Args, Debug)]
struct HomologyArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    /// Use the quotient by degenerate chains (q-graphs only).
    #[arg(long)]
    q: bool,
}

#[derive(Subcommand, Debug)]
enum MovesCommand {
    /// Lists applicable move instances.
    Enumerate {
        file: PathBuf,
        /// Only moves that shrink or rewrite, no inverse instances.
        #[arg(long)]
        forward_only: bool,
    },
    /// Applies one move, given in the form printed by `enumerate`.
    Apply {
        file: PathBuf,
        #[arg(long = "move")]
        mv: String,
    },
    /// Bidirectional search for a move sequence.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
struct SearchArgs {
    from: PathBuf,
    to: PathBuf,
    #[arg(long, default_value_t = Budget::default().max_states)]
    max_states: usize,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    max_arrows: Option<usize>,
    #[arg(long, default_value_t = Budget::default().max_depth)]
    max_depth: usize,
    #[arg(long, default_value_t = Budget::default().r3b_range)]
    r3b_range: i64,
    /// Compare underlying graphs only.
    #[arg(long)]
    ignore_flows: bool,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    class: Family,
    #[arg(long)]
    vertices: usize,
    /// Compute homology signatures through this degree.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Print each class with a representative.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct BracketArgs {
    file: PathBuf,
    /// Comma-separated indices of the semi-virtual arrows.
    #[arg(long, value_delimiter = ',')]
    semivirtual: Vec<usize>,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Run only these criteria, e.g. `--only 3 --only 8a`.
    #[arg(long)]
    only: Vec<String>,
    /// Randomized cases per property suite.
    #[arg(long, default_value_t = suite::MIN_CASES)]
    cases: usize,
}

enum Failure {
    Usage(String),
    Compute(String),
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn compute(m: impl Into<String>) -> Failure {
    Failure::Compute(m.into())
}

type Out<'a> = &'a mut dyn Write;

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // a pool already built by an earlier call in this process is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<Document, Failure> {
    decode(&read(path)?).map_err(|e| compute(format!("{}: {e}", path.display())))
}

/// A document whose flows are conserved.
fn load_comte(path: &PathBuf) -> Result<Comte, Failure> {
    let c = load(path)?.into_comte();
    let report = validate(&c);
    if !report.is_valid() {
        return Err(compute(format!("{}: not a comte\n{report}", path.display()).trim_end().to_string()));
    }
    Ok(c)
}

fn load_rack(spec: &str) -> Result<FiniteRack, Failure> {
    match FiniteRack::builtin(spec) {
        Ok(r) => Ok(r),
        Err(QuandleError::UnknownBuiltin(_)) => {
            let path = PathBuf::from(spec);
            if !path.exists() {
                return Err(usage(format!("{spec:?} is neither a builtin quandle nor a file")));
            }
            FiniteRack::parse(&read(&path)?).map_err(|e| compute(format!("{spec}: {e}")))
        }
        Err(e) => Err(compute(format!("{spec}: {e}"))),
    }
}

fn load_cocycle(spec: &str, rack: &FiniteRack) -> Result<Cocycle2, Failure> {
    let f = if spec == "builtin" {
        if rack != &FiniteRack::tetrahedron() {
            return Err(usage("the builtin cocycle belongs to the tetrahedron quandle"));
        }
        tetrahedron_cocycle()
    } else {
        let path = PathBuf::from(spec);
        Cocycle2::parse(&read(&path)?, rack.size()).map_err(|e| compute(format!("{spec}: {e}")))?
    };
    f.check(rack).map_err(|e| compute(format!("{spec}: {e}")))?;
    Ok(f)
}

fn w(out: Out, s: impl std::fmt::Display) -> Result<(), Failure> {
    write!(out, "{s}").map_err(|e| compute(format!("writing output: {e}")))
}

fn dispatch(cli: &Cli, out: Out) -> Result<i32, Failure> {
    match &cli.command {
        Command::Import(a) => {
            let c = if let Some(code) = &a.gauss {
                let d = parse_gauss(code).map_err(|e| compute(format!("{code:?}: {e}")))?;
                comte_of_gauss(&d).map_err(|e| compute(format!("{code:?}: {e}")))?
            } else {
                let code = a.pd.as_deref().unwrap_or_default();
                let d = parse_pd(code).map_err(|e| compute(format!("{code:?}: {e}")))?;
                comte_of_diagram(&d).map_err(|e| compute(format!("{code:?}: {e}")))?
            };
            w(out, encode_comte(&c))?;
        }
        Command::Validate { file } => {
            let raw = decode_raw(&read(file)?).map_err(|e| compute(format!("{}: {e}", file.display())))?;
            let report = validate_document(&raw);
            w(out, &report)?;
            if !report.is_valid() {
                return Ok(1);
            }
        }
        Command::Invariants(a) => invariants(a, out)?,
        Command::Colorings(a) => {
            let g = load(&a.file)?;
            let rack = load_rack(&a.quandle)?;
            let cols = colorings(g.graph(), &rack);
            w(out, format!("{} colorings\n", cols.len()))?;
            if a.list {
                let names = g.graph().vertices();
                for col in &cols {
                    let pairs: Vec<String> = names.iter().zip(col).map(|(v, x)| format!("{v}={x}")).collect();
                    w(out, format!("{}\n", pairs.join(" ")))?;
                }
            }
        }
        Command::Statesum(a) => {
            let c = load_comte(&a.comte)?;
            let rack = load_rack(&a.quandle)?;
            let f = load_cocycle(&a.cocycle, &rack)?;
            w(out, format!("{}\n", phi_invariant(&c, &rack, &f)))?;
        }
        Command::Homology(a) => {
            let g = load(&a.file)?;
            if a.degree == 0 {
                return Err(usage("--degree must be at least 1"));
            }
            let hs = homology_range(g.graph(), a.degree, a.q).map_err(|e| compute(format!("{}: {e}", a.file.display())))?;
            w(out, homology_report(&hs))?;
        }
        Command::Moves { action } => moves(action, out)?,
        Command::Census(a) => census(a, out)?,
        Command::Bracket(a) => {
            let g = load(&a.file)?.graph().clone();
            let sv = SemiVirtualGraph::new(g, a.semivirtual.iter().copied().collect::<BTreeSet<_>>())
                .map_err(|e| usage(format!("--semivirtual: {e}")))?;
            for (key, coef, rep) in bracket(&sv).terms() {
                w(out, format!("{coef}\t{key}\t{rep}\n"))?;
            }
        }
        Command::PaperSuite(a) => {
            let known = suite::ids();
            if let Some(bad) = a.only.iter().find(|id| !known.contains(&id.as_str())) {
                return Err(usage(format!("unknown criterion {bad:?}; known: {}", known.join(" "))));
            }
            let opts = SuiteOptions { seed: cli.seed, cases: a.cases };
            let mut failed = 0;
            let mut total = 0;
            for id in known.iter().filter(|id| a.only.is_empty() || a.only.iter().any(|o| o == *id)) {
                let o = suite::run_one(id, &opts).expect("known id");
                total += 1;
                failed += usize::from(!o.pass);
                w(out, format!("{o}\n"))?;
            }
            w(out, format!("{}/{total} passed\n", total - failed))?;
            if failed > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn invariants(a: &InvariantsArgs, out: Out) -> Result<(), Failure> {
    let c = load_comte(&a.file)?;
    let g = c.graph();
    w(out, format!("vertices {}\narrows {}\nclass {}\n", g.vertex_count(), g.arrow_count(), classify(g)))?;
    w(out, format!("components {}\nabelianization rank {}\n", components(g).len(), abelianization_rank(g)))?;
    let lk = linking_matrix(&c);
    let names: Vec<String> = lk
        .components
        .iter()
        .map(|class| class.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(","))
        .collect();
    w(out, format!("linking matrix (rows label, columns source; components {})\n{lk}", names.join(" | ")))?;
    for i in 1..=a.delta.max(1) {
        w(out, format!("Delta_{i} = {}\n", alexander_polynomial(g, i).unit_normalize()))?;
    }
    if a.presentations {
        w(out, format!("group\n{}quandle\n{}", group_presentation(g), quandle_presentation(g)))?;
    }
    if a.multivariable {
        w(out, "relation matrix\n")?;
        for row in multivariable_relation_matrix(g, RelationSign::default()) {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            w(out, format!("{}\n", cells.join("\t")))?;
        }
    }
    Ok(())
}

fn moves(action: &MovesCommand, out: Out) -> Result<(), Failure> {
    match action {
        MovesCommand::Enumerate { file, forward_only } => {
            let c = load_comte(file)?;
            let opts = MoveOptions::default();
            let list = if *forward_only { enumerate_moves(&c, &opts) } else { all_instances(&c, &opts) };
            for m in list {
                w(out, format!("{m}\n"))?;
            }
        }
        MovesCommand::Apply { file, mv } => {
            let c = load_comte(file)?;
            let m: Move = mv.parse().map_err(|e| usage(format!("--move {mv:?}: {e}")))?;
            let applied = apply_move(&c, &m).map_err(|e| compute(format!("{mv}: {e}")))?;
            w(out, encode_comte(&applied.comte))?;
        }
        MovesCommand::Search(a) => {
            let (c1, c2) = (load_comte(&a.from)?, load_comte(&a.to)?);
            let budget = Budget {
                max_states: a.max_states,
                max_vertices: a.max_vertices,
                max_arrows: a.max_arrows,
                max_depth: a.max_depth,
                r3b_range: a.r3b_range,
                ..Budget::default()
            };
            match equivalent_bounded(&c1, &c2, &budget, a.ignore_flows) {
                SearchOutcome::Equivalent(t) => {
                    w(out, format!("equivalent in {} moves: {}\n{t}", t.len(), t.families().join(", ")))?;
                }
                SearchOutcome::Unknown { states } => {
                    w(out, format!("unknown: no trace within the budget ({states} states)\n"))?;
                }
            }
        }
    }
    Ok(())
}

fn census(a: &CensusArgs, out: Out) -> Result<(), Failure> {
    let size = |e: CensusError| match e {
        CensusError::Size { .. } => usage(format!("--vertices: {e}")),
        CensusError::Homology(_) => compute(e.to_string()),
    };
    match a.max_degree {
        None => {
            let classes = enumerate(a.class, a.vertices).map_err(size)?;
            let with_arrows = classes.iter().filter(|(_, g)| g.arrow_count() > 0).count();
            w(out, format!("{} classes ({with_arrows} with arrows)\n", classes.len()))?;
            if a.list {
                for (key, g) in &classes {
                    w(out, format!("{key}\t{g}\n"))?;
                }
            }
        }
        Some(d) => {
            let s = signature_census(a.class, a.vertices, d).map_err(size)?;
            w(out, s.report())?;
        }
    }
    Ok(())
}
