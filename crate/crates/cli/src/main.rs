//! `vcblocks`: vertex-resilient, 2-edge-connected and 2-vertex-connected
//! blocks of directed graphs from the command line.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use vcblocks::oracle::{brute_2e_matrix, brute_2v_matrix, brute_vr_matrix};
use vcblocks::random::random_strongly_connected;
use vcblocks::{
    certify, compute_blocks, parse_graph, split_components, strong_cut_set, validate_witness, verify_certificate,
    Algorithm, CertificateCheck, Digraph, Error, Format, Mode, PairOracle, PairStatus,
};

#[derive(Parser)]
#[command(name = "vcblocks", version, about = "Connectivity blocks of directed graphs")]
struct Cli {
    #[command(flatten)]
    input: InputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file; standard input when absent or `-`.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Input format.
    #[arg(short, long, global = true, value_enum, default_value_t = FormatArg::EdgeList)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Dimacs,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => Format::EdgeList,
            FormatArg::Dimacs => Format::Dimacs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Vrb,
    #[value(name = "2ecb")]
    Ecb,
    #[value(name = "2vcb")]
    Vcb,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Fast,
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Vr,
    #[value(name = "2e")]
    TwoEdge,
    #[value(name = "2v")]
    TwoVertex,
}

#[derive(Subcommand)]
enum Command {
    /// Print the blocks of every strongly connected component.
    Blocks {
        #[arg(long, value_enum, default_value_t = ModeArg::Vrb)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = AlgoArg::Fast)]
        algo: AlgoArg,
        /// Report block and auxiliary graph counts on standard error.
        #[arg(long)]
        stats: bool,
        /// One JSON object per component instead of one block per line.
        #[arg(long)]
        json: bool,
    },
    /// Classify a pair of vertices.
    Query { u: usize, w: usize },
    /// Classify a pair and print a witness when it is not 2-vertex-connected.
    Witness {
        u: usize,
        w: usize,
        /// Confirm the witness by removing it and recomputing components.
        #[arg(long)]
        check: bool,
    },
    /// Print the strong articulation points.
    Saps,
    /// Print the strong bridges as `u v` lines.
    Bridges,
    /// Print a sparse certificate in edge-list format.
    Certify,
    /// Check a certificate against the input graph.
    VerifyCertificate {
        /// The certificate, in the input format.
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Definition-level reference relations (slow).
    #[command(hide = true)]
    Oracle {
        #[arg(long, value_enum, default_value_t = Relation::Vr)]
        relation: Relation,
    },
    /// Time the block algorithms on random strongly connected graphs.
    Bench {
        #[arg(long, default_value_t = 10)]
        min_log_n: u32,
        #[arg(long, default_value_t = 16)]
        max_log_n: u32,
        /// Edges per vertex.
        #[arg(long, default_value_t = 8)]
        density: usize,
        #[arg(long, default_value_t = 3)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also time the simple algorithm.
        #[arg(long)]
        simple: bool,
    },
}

/// Failure with its exit status.
enum Failure {
    Usage(String),
    Input(String),
    Contract(String),
    /// A negative verification verdict, printed on standard output.
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Contract(_) | Failure::Rejected(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Contract(m) | Failure::Rejected(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            Error::VertexOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Contract(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_graph(path: Option<&PathBuf>, format: Format) -> Result<Digraph, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        }
    }
    let parsed = parse_graph(&text, format).map_err(|e| Failure::Input(e.to_string()))?;
    info!("read {} vertices, {} edges, dropped {} self-loops", parsed.graph.n(), parsed.graph.m(), parsed.self_loops);
    Ok(parsed.graph)
}

#[derive(Serialize)]
struct ComponentJson<'a> {
    scc: usize,
    blocks: &'a [Vec<usize>],
}

fn cmd_blocks(g: &Digraph, mode: ModeArg, algo: AlgoArg, stats: bool, json: bool) -> Outcome {
    let mode = match mode {
        ModeArg::Vrb => Mode::Vrb,
        ModeArg::Ecb => Mode::Ecb,
        ModeArg::Vcb => Mode::Vcb,
    };
    let algo = match algo {
        AlgoArg::Fast => Algorithm::Fast,
        AlgoArg::Simple => Algorithm::Simple,
    };
    let (comps, st) = compute_blocks(g, mode, algo)?;
    if stats {
        eprintln!(
            "components={} blocks={} memberships={} aux1: graphs={} vertices={} edges={} aux2: graphs={} vertices={} edges={}",
            comps.len(),
            st.blocks,
            st.memberships,
            st.aux.first_level_graphs,
            st.aux.first_level_vertices,
            st.aux.first_level_edges,
            st.aux.second_level_graphs,
            st.aux.second_level_vertices,
            st.aux.second_level_edges,
        );
    }
    let mut out = String::new();
    if json {
        let items: Vec<ComponentJson> = comps.iter().map(|c| ComponentJson { scc: c.scc, blocks: &c.blocks }).collect();
        out = serde_json::to_string(&items).map_err(|e| Failure::Contract(e.to_string()))?;
        out.push('\n');
    } else {
        let mut all: Vec<&Vec<usize>> = comps.iter().flat_map(|c| &c.blocks).collect();
        all.sort();
        for b in all {
            let line: Vec<String> = b.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    Ok(out)
}

fn status_line(status: PairStatus) -> String {
    match status {
        PairStatus::SameVertex => "same-vertex".into(),
        PairStatus::DifferentScc => "different-scc".into(),
        PairStatus::TwoVertexConnected => "2vc".into(),
        PairStatus::VertexResilientOnly(a, b) => format!("vr-only bridge ({a},{b})"),
        PairStatus::Separated(x) => format!("separated vertex {x}"),
    }
}

fn pair_status(g: &Digraph, u: usize, w: usize) -> Result<(PairOracle, PairStatus), Failure> {
    for v in [u, w] {
        if v >= g.n() {
            return Err(Failure::Usage(format!("vertex {v} out of range for a graph with {} vertices", g.n())));
        }
    }
    if u == w {
        return Err(Failure::Usage("the two vertices must differ".into()));
    }
    let oracle = PairOracle::new(g)?;
    let status = oracle.query(u, w)?;
    Ok((oracle, status))
}

fn cmd_query(g: &Digraph, u: usize, w: usize) -> Outcome {
    Ok(status_line(pair_status(g, u, w)?.1) + "\n")
}

fn cmd_witness(g: &Digraph, u: usize, w: usize, check: bool) -> Outcome {
    let (oracle, status) = pair_status(g, u, w)?;
    let mut line = status_line(status);
    if check {
        if let Some(wit) = oracle.witness(u, w)? {
            if !validate_witness(g, u, w, wit) {
                return Err(Failure::Contract(format!("{line}: witness does not separate {u} and {w}")));
            }
            line.push_str(" (checked)");
        }
    }
    Ok(line + "\n")
}

fn cmd_saps(g: &Digraph) -> Outcome {
    let (_, comps) = split_components(g);
    let mut points = Vec::new();
    for c in &comps {
        points.extend(strong_cut_set(&c.graph)?.articulation_points.iter().map(|&v| c.vertices[v]));
    }
    points.sort_unstable();
    Ok(points.iter().map(|v| format!("{v}\n")).collect())
}

fn cmd_bridges(g: &Digraph) -> Outcome {
    let (_, comps) = split_components(g);
    let mut edges = Vec::new();
    for c in &comps {
        edges.extend(strong_cut_set(&c.graph)?.strong_bridges.iter().map(|&e| g.edge(c.edges[e])));
    }
    edges.sort_unstable();
    Ok(edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect())
}

fn cmd_certify(g: &Digraph) -> Outcome {
    let ids = certify(g)?;
    let mut out = format!("{} {}\n", g.n(), ids.len());
    for e in ids {
        let (u, v) = g.edge(e);
        let _ = writeln!(out, "{u} {v}");
    }
    Ok(out)
}

fn cmd_verify(g: &Digraph, cert: &Digraph) -> Outcome {
    match verify_certificate(g, cert)? {
        CertificateCheck::Ok { ratio } => Ok(format!("OK ratio={ratio:?}\n")),
        CertificateCheck::Fail(reason) => Err(Failure::Rejected(format!("FAIL {reason}"))),
    }
}

fn cmd_oracle(g: &Digraph, relation: Relation) -> Outcome {
    let matrix = match relation {
        Relation::Vr => brute_vr_matrix(g),
        Relation::TwoEdge => brute_2e_matrix(g),
        Relation::TwoVertex => brute_2v_matrix(g),
    };
    let mut out = String::new();
    for u in 0..g.n() {
        for w in u + 1..g.n() {
            if matrix[u][w] {
                let _ = writeln!(out, "{u} {w}");
            }
        }
    }
    Ok(out)
}

fn best_of(runs: usize, mut f: impl FnMut() -> Result<(), Error>) -> Result<Duration, Failure> {
    let mut best = Duration::MAX;
    for _ in 0..runs.max(1) {
        let t = Instant::now();
        f()?;
        best = best.min(t.elapsed());
    }
    Ok(best)
}

fn cmd_bench(min: u32, max: u32, density: usize, runs: usize, seed: u64, simple: bool) -> Outcome {
    if min > max || max > 26 {
        return Err(Failure::Usage("need min-log-n <= max-log-n <= 26".into()));
    }
    let mut out = String::from("log_n n m fast_ms simple_ms\n");
    for k in min..=max {
        let n = 1usize << k;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(k));
        let g = random_strongly_connected(&mut rng, n, density * n);
        let fast = best_of(runs, || vcblocks::fast_vrb(&g).map(drop))?;
        let slow = if simple {
            format!("{:.3}", best_of(runs, || vcblocks::simple_vrb(&g).map(drop))?.as_secs_f64() * 1e3)
        } else {
            "-".into()
        };
        let _ = writeln!(out, "{k} {n} {} {:.3} {slow}", g.m(), fast.as_secs_f64() * 1e3);
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    let format = Format::from(cli.input.format);
    let input = cli.input.input.as_ref();
    match cli.command {
        Command::Bench { min_log_n, max_log_n, density, runs, seed, simple } => {
            cmd_bench(min_log_n, max_log_n, density, runs, seed, simple)
        }
        Command::Blocks { mode, algo, stats, json } => cmd_blocks(&read_graph(input, format)?, mode, algo, stats, json),
        Command::Query { u, w } => cmd_query(&read_graph(input, format)?, u, w),
        Command::Witness { u, w, check } => cmd_witness(&read_graph(input, format)?, u, w, check),
        Command::Saps => cmd_saps(&read_graph(input, format)?),
        Command::Bridges => cmd_bridges(&read_graph(input, format)?),
        Command::Certify => cmd_certify(&read_graph(input, format)?),
        Command::VerifyCertificate { certificate } => {
            let g = read_graph(input, format)?;
            let c = read_graph(Some(&certificate), format)?;
            cmd_verify(&g, &c)
        }
        Command::Oracle { relation } => cmd_oracle(&read_graph(input, format)?, relation),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("VCBLOCKS_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Failure::Rejected(m) = &f {
                println!("{m}");
                return ExitCode::from(f.code());
            }
            eprintln!("vcblocks: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
