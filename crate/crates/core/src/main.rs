use clap::{Parser, Subcommand, ValueEnum};
use matroid_iso::acceptance::{self, Fault, Options};
use matroid_iso::corpus::random_connected;
use matroid_iso::field::PrimeField;
use matroid_iso::gi::{graph_isomorphism, ColoredGraph};
use matroid_iso::gmi::{gmi_test_with, GmiOptions, GmiStats};
use matroid_iso::graph::{gen_modk_gadget, is_matroid_automorphism, random_2iso_pair, Multigraph};
use matroid_iso::linear::{
    gi_to_lmib, linear_circuits, lmib_to_gi, uniform_representation, ColumnColoring, PrimeFieldMatrix,
};
use matroid_iso::matroid::{
    circuits, family_iso, family_iso_colored, is_uniform, matroid_rank, IsoWitness, ListMatroid, MatroidOracle,
};
use matroid_iso::reductions::{gma_generators, lma_generators, mib_to_gmi, GeneratorSet};
use matroid_iso::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const CIRCUIT_CANDIDATES: usize = 1 << 22;

#[derive(Parser)]
#[command(name = "matroid-iso", version, about = "Isomorphism testing for graphic, linear and listed matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graphic matroid isomorphism of two graph files (edge colours respected).
    Gmi {
        first: PathBuf,
        second: PathBuf,
        /// Write the edge bijection here when isomorphic.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Print refinement statistics after the verdict.
        #[arg(long)]
        stats: bool,
        /// Route every component comparison through the colour gadget and plain GI.
        #[arg(long)]
        strict: bool,
    },
    /// Linear matroid isomorphism of two matrix files over the same field.
    Lmi {
        first: PathBuf,
        second: PathBuf,
        /// Column colouring of the first matrix.
        #[arg(long, requires = "colors2")]
        colors1: Option<PathBuf>,
        /// Column colouring of the second matrix.
        #[arg(long, requires = "colors1")]
        colors2: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Isomorphism of two matroids given as graph, matrix or basis-list files.
    Mi {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Graph isomorphism with vertex and edge colours; the witness maps vertices.
    Gi {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Automorphism group generators and order of a graphic or linear matroid.
    Aut { input: PathBuf },
    /// Whether a permutation is an automorphism of the matroid.
    AutMember { input: PathBuf, perm: PathBuf },
    /// Write generated instances plus a key=value manifest.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        ops: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path prefix; defaults to the kind name.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the instance pair produced by a reduction.
    Reduce {
        kind: ReduceKind,
        first: PathBuf,
        second: PathBuf,
        /// Rank bound.
        #[arg(long)]
        b: Option<usize>,
        /// Field size for gi-lmi; the smallest admissible prime by default.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selfcheck {
        /// Run a single criterion, e.g. A4.
        #[arg(long)]
        criterion: Option<String>,
        #[arg(long)]
        fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    WhitneyPair,
    ModkGadget,
    UniformRep,
    RandomGraph,
    RandomMatrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    MibGmi,
    GiLmi,
    LmiGi,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    GadgetLength,
}

/// Any matroid file, told apart by its header word.
enum Instance {
    Graph(Multigraph),
    Matrix(PrimeFieldMatrix),
    List(ListMatroid),
}

impl Instance {
    fn oracle(&self) -> &dyn MatroidOracle {
        match self {
            Instance::Graph(g) => g,
            Instance::Matrix(a) => a,
            Instance::List(l) => l,
        }
    }

    fn circuits(&self) -> Result<matroid_iso::matroid::CircuitFamily> {
        match self {
            Instance::Matrix(a) => linear_circuits(a, CIRCUIT_CANDIDATES),
            other => circuits(other.oracle()),
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_with<T>(path: &Path, text: &str, f: impl Fn(&str) -> Result<T>) -> std::result::Result<T, Failure> {
    f(text).map_err(|e| Failure::at(path, e))
}

fn load_instance(path: &Path, text: &str) -> std::result::Result<Instance, Failure> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    match header {
        "graph" => parse_with(path, text, Multigraph::parse).map(Instance::Graph),
        "matrix" => parse_with(path, text, PrimeFieldMatrix::parse).map(Instance::Matrix),
        "matroid" => parse_with(path, text, ListMatroid::parse).map(Instance::List),
        _ => Err(Failure::at(
            path,
            Error::Parse { line: 1, msg: "expected a `graph`, `matrix` or `matroid` header".into() },
        )),
    }
}

/// A failed run: message for stderr plus exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn from_error(e: Error) -> Self {
        let code = if matches!(e, Error::Integrity(_)) { 3 } else { 2 };
        Failure { code, msg: e.to_string() }
    }

    fn at(path: &Path, e: Error) -> Self {
        let mut f = Failure::from_error(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    }

    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from_error(e)
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn write_file(path: &Path, content: &impl Display) -> std::result::Result<(), Failure> {
    fs::write(path, content.to_string()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn verdict(witness: Option<IsoWitness>, out: Option<&Path>) -> Outcome {
    match witness {
        Some(w) => {
            println!("ISO");
            if let Some(path) = out {
                write_file(path, &w)?;
            }
            Ok(0)
        }
        None => {
            println!("NONISO");
            Ok(1)
        }
    }
}

/// Reads every path up front so that a missing file fails before any work starts.
fn read_all(paths: &[&Path]) -> std::result::Result<Vec<String>, Failure> {
    paths.iter().map(|p| read(p).map_err(Failure::usage)).collect()
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

struct Manifest(Vec<(String, String)>);

impl Manifest {
    fn new(kind: &str) -> Self {
        Manifest(vec![("kind".into(), kind.into())])
    }

    fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }
}

impl Display for Manifest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, v) in &self.0 {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

fn need<T>(value: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("missing --{flag}")))
}

fn gmi(first: &Path, second: &Path, witness: Option<&Path>, show_stats: bool, strict: bool) -> Outcome {
    let texts = read_all(&[first, second])?;
    let g1 = parse_with(first, &texts[0], Multigraph::parse)?;
    let g2 = parse_with(second, &texts[1], Multigraph::parse)?;
    let mut stats = GmiStats::default();
    let w = gmi_test_with(&g1, &g2, GmiOptions { strict }, &mut stats)?;
    let code = verdict(w, witness)?;
    if show_stats {
        println!("stats {stats}");
    }
    Ok(code)
}

fn lmi(first: &Path, second: &Path, colors: Option<(&Path, &Path)>, witness: Option<&Path>) -> Outcome {
    let texts = read_all(&[first, second])?;
    let a = parse_with(first, &texts[0], PrimeFieldMatrix::parse)?;
    let b = parse_with(second, &texts[1], PrimeFieldMatrix::parse)?;
    if a.field() != b.field() {
        return Err(Failure::usage("matrices live over different fields"));
    }
    let colorings = match colors {
        Some((c1, c2)) => {
            let ct = read_all(&[c1, c2])?;
            let x = parse_with(c1, &ct[0], ColumnColoring::parse)?;
            let y = parse_with(c2, &ct[1], ColumnColoring::parse)?;
            if x.len() != a.cols() || y.len() != b.cols() {
                return Err(Failure::usage("colouring length differs from the column count"));
            }
            Some((x, y))
        }
        None => None,
    };
    if a.cols() != b.cols() || a.rank() != b.rank() {
        return verdict(None, witness);
    }
    let fa = linear_circuits(&a, CIRCUIT_CANDIDATES)?;
    let fb = linear_circuits(&b, CIRCUIT_CANDIDATES)?;
    let w = match &colorings {
        Some((x, y)) => family_iso_colored(&fa, Some(x.labels()), &fb, Some(y.labels()))?,
        None => family_iso(&fa, &fb)?,
    };
    verdict(w, witness)
}

fn mi(first: &Path, second: &Path, witness: Option<&Path>) -> Outcome {
    let texts = read_all(&[first, second])?;
    let a = load_instance(first, &texts[0])?;
    let b = load_instance(second, &texts[1])?;
    if a.oracle().ground_size() != b.oracle().ground_size() || matroid_rank(a.oracle()) != matroid_rank(b.oracle()) {
        return verdict(None, witness);
    }
    let w = family_iso(&a.circuits()?, &b.circuits()?)?;
    verdict(w, witness)
}

fn gi(first: &Path, second: &Path, witness: Option<&Path>) -> Outcome {
    let texts = read_all(&[first, second])?;
    let g1 = parse_with(first, &texts[0], ColoredGraph::parse)?;
    let g2 = parse_with(second, &texts[1], ColoredGraph::parse)?;
    let w = graph_isomorphism(&g1, &g2).map(IsoWitness::new).transpose()?;
    verdict(w, witness)
}

fn print_generators(gens: &GeneratorSet) -> Outcome {
    print!("{gens}");
    match gens.order() {
        Some(order) => println!("order {order}"),
        None => println!("order overflow"),
    }
    Ok(0)
}

fn aut(input: &Path) -> Outcome {
    let text = read(input).map_err(Failure::usage)?;
    match load_instance(input, &text)? {
        Instance::Graph(g) => print_generators(&gma_generators(&g)?),
        Instance::Matrix(a) => print_generators(&lma_generators(&a)?),
        Instance::List(_) => Err(Failure::usage("aut takes a graph or matrix file")),
    }
}

fn aut_member(input: &Path, perm: &Path) -> Outcome {
    let texts = read_all(&[input, perm])?;
    let m = load_instance(input, &texts[0])?;
    let p = parse_with(perm, &texts[1], IsoWitness::parse)?;
    if p.len() != m.oracle().ground_size() {
        return Err(Failure::usage(format!(
            "permutation has degree {} but the ground set has {} elements",
            p.len(),
            m.oracle().ground_size()
        )));
    }
    let member = match &m {
        Instance::Graph(g) => is_matroid_automorphism(g, &p)?,
        other => {
            let family = other.circuits()?;
            p.validates(&family, &family)
        }
    };
    println!("{}", if member { "MEMBER" } else { "NONMEMBER" });
    Ok(if member { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn gen(
    kind: GenKind,
    n: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    p: Option<u64>,
    ops: Option<usize>,
    seed: u64,
    out: Option<PathBuf>,
) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let prefix = out.unwrap_or_else(|| PathBuf::from(&name));
    let mut manifest = Manifest::new(&name);
    manifest.set("seed", seed);
    match kind {
        GenKind::WhitneyPair | GenKind::RandomGraph => {
            let n = need(n, "n")?;
            let m = m.unwrap_or(2 * n);
            if n < 2 || m + 1 < n {
                return Err(Failure::usage("need n >= 2 and m >= n - 1"));
            }
            let g = random_connected(&mut rng, n, m);
            manifest.set("vertices", n).set("edges", m).set("connected", true);
            if let GenKind::WhitneyPair = kind {
                let ops = ops.unwrap_or(n.saturating_sub(2).max(1));
                let (h, log) = random_2iso_pair(&g, ops, rng.gen());
                write_file(&with_suffix(&prefix, ".1.g"), &g)?;
                write_file(&with_suffix(&prefix, ".2.g"), &h)?;
                let log: String = log.iter().map(|op| format!("{op}\n")).collect();
                write_file(&with_suffix(&prefix, ".log"), &log)?;
                manifest.set("ops", ops).set("two_isomorphic", true).set("identity_witness", true);
            } else {
                write_file(&with_suffix(&prefix, ".g"), &g)?;
            }
        }
        GenKind::ModkGadget => {
            let k = need(k, "k")?;
            let g = gen_modk_gadget(k)?;
            write_file(&with_suffix(&prefix, ".g"), &g)?;
            manifest
                .set("k", k)
                .set("vertices", g.vertex_count())
                .set("edges", g.edge_count())
                .set("shift_automorphisms", k * k);
        }
        GenKind::UniformRep => {
            let (k, m) = (need(k, "k")?, need(m, "m")?);
            let f = PrimeField::new(need(p, "p")?)?;
            let a = uniform_representation(k, m, f)?;
            write_file(&with_suffix(&prefix, ".mat"), &a)?;
            manifest.set("k", k).set("m", m).set("p", f.modulus()).set("uniform", is_uniform(&a, k)?);
        }
        GenKind::RandomMatrix => {
            let (rows, m) = (need(k, "k")?, need(m, "m")?);
            let f = PrimeField::new(need(p, "p")?)?;
            let mut a = PrimeFieldMatrix::zeros(f, rows, m);
            for r in 0..rows {
                for c in 0..m {
                    a.set(r, c, rng.gen_range(0..f.modulus()));
                }
            }
            write_file(&with_suffix(&prefix, ".mat"), &a)?;
            manifest.set("rows", rows).set("m", m).set("p", f.modulus()).set("rank", a.rank());
        }
    }
    write_file(&with_suffix(&prefix, ".manifest"), &manifest)?;
    Ok(0)
}

fn reduce(
    kind: ReduceKind,
    first: &Path,
    second: &Path,
    b: Option<usize>,
    p: Option<u64>,
    out: Option<PathBuf>,
) -> Outcome {
    let texts = read_all(&[first, second])?;
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let prefix = out.unwrap_or_else(|| PathBuf::from(&name));
    let mut manifest = Manifest::new(&name);
    match kind {
        ReduceKind::MibGmi => {
            let m1 = load_instance(first, &texts[0])?;
            let m2 = load_instance(second, &texts[1])?;
            let b = match b {
                Some(b) => b,
                None => matroid_rank(m1.oracle()).max(matroid_rank(m2.oracle())),
            };
            let (x1, x2) = mib_to_gmi(m1.oracle(), m2.oracle(), b)?;
            let base = x1.graph.vertex_count().max(x2.graph.vertex_count());
            write_file(&with_suffix(&prefix, ".1.g"), &x1.folded(base)?)?;
            write_file(&with_suffix(&prefix, ".2.g"), &x2.folded(base)?)?;
            manifest
                .set("b", b)
                .set("loops_1", x1.loops)
                .set("coloops_1", x1.coloops)
                .set("loops_2", x2.loops)
                .set("coloops_2", x2.coloops)
                .set("counts_match", (x1.loops, x1.coloops) == (x2.loops, x2.coloops));
        }
        ReduceKind::GiLmi => {
            let g1 = parse_with(first, &texts[0], Multigraph::parse)?;
            let g2 = parse_with(second, &texts[1], Multigraph::parse)?;
            let field = p.map(PrimeField::new).transpose()?;
            let (a1, a2) = gi_to_lmib(&g1, &g2, field)?;
            write_file(&with_suffix(&prefix, ".1.mat"), &a1)?;
            write_file(&with_suffix(&prefix, ".2.mat"), &a2)?;
            manifest.set("p", a1.field().modulus()).set("rank", 3);
        }
        ReduceKind::LmiGi => {
            let a1 = parse_with(first, &texts[0], PrimeFieldMatrix::parse)?;
            let a2 = parse_with(second, &texts[1], PrimeFieldMatrix::parse)?;
            let b = b.unwrap_or(a1.rows().max(a2.rows()));
            let (g1, g2) = lmib_to_gi(&a1, &a2, b)?;
            write_file(&with_suffix(&prefix, ".1.g"), &g1)?;
            write_file(&with_suffix(&prefix, ".2.g"), &g2)?;
            manifest.set("b", b).set("ranks_match", a1.rank() == a2.rank());
        }
    }
    write_file(&with_suffix(&prefix, ".manifest"), &manifest)?;
    Ok(0)
}

fn selfcheck(criterion: Option<String>, fault: Option<FaultArg>) -> Outcome {
    let opts = Options { fault: fault.map(|FaultArg::GadgetLength| Fault::GadgetLength) };
    let outcomes = match criterion {
        Some(id) => {
            let out = acceptance::run(&id, opts).ok_or_else(|| Failure::usage(format!("unknown criterion {id}")))?;
            println!("{out}");
            vec![out]
        }
        None => acceptance::run_all(opts, |o| println!("{o}")),
    };
    Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 1 })
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gmi { first, second, witness, stats, strict } => {
            gmi(&first, &second, witness.as_deref(), stats, strict)
        }
        Command::Lmi { first, second, colors1, colors2, witness } => {
            let colors = colors1.as_deref().zip(colors2.as_deref());
            lmi(&first, &second, colors, witness.as_deref())
        }
        Command::Mi { first, second, witness } => mi(&first, &second, witness.as_deref()),
        Command::Gi { first, second, witness } => gi(&first, &second, witness.as_deref()),
        Command::Aut { input } => aut(&input),
        Command::AutMember { input, perm } => aut_member(&input, &perm),
        Command::Gen { kind, n, m, k, p, ops, seed, out } => gen(kind, n, m, k, p, ops, seed, out),
        Command::Reduce { kind, first, second, b, p, out } => reduce(kind, &first, &second, b, p, out),
        Command::Selfcheck { criterion, fault } => selfcheck(criterion, fault),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
