//! Command-line surface: construct subdivision products, compute exact
//! characteristic polynomials, coronals and numeric spectra, and run the
//! verification sweeps.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use subspectra::digraph::DigraphMatrixKind;
use subspectra::harness::{self, Bounds, VerificationReport, THEOREM_IDS};
use subspectra::products::{self, ProductKind};
use subspectra::roots::poly_roots;
use subspectra::{matrix, Digraph, Graph};

#[derive(Parser)]
#[command(
    name = "subspectra",
    about = "Exact spectra of subdivision products of digraphs and graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    #[value(alias = "A")]
    A,
    #[value(alias = "L")]
    L,
    #[value(alias = "Q")]
    Q,
}

impl From<MatrixArg> for DigraphMatrixKind {
    fn from(m: MatrixArg) -> Self {
        match m {
            MatrixArg::A => DigraphMatrixKind::Adjacency,
            MatrixArg::L => DigraphMatrixKind::Laplacian,
            MatrixArg::Q => DigraphMatrixKind::SignlessLaplacian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Svj,
    Saj,
    Svc,
    Sac,
}

impl From<KindArg> for ProductKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Svj => ProductKind::SubdivisionVertexJoin,
            KindArg::Saj => ProductKind::SubdivisionArcJoin,
            KindArg::Svc => ProductKind::SubdivisionVertexCorona,
            KindArg::Sac => ProductKind::SubdivisionArcCorona,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact characteristic polynomial of a digraph matrix
    Charpoly {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        /// Emit the coefficient list as JSON instead of a formula
        #[arg(long)]
        json: bool,
    },
    /// Exact coronal (entry sum of (λI−M)⁻¹) as a reduced rational function
    Coronal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[arg(long)]
        json: bool,
    },
    /// Build a subdivision product and write it in the text format
    Product {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        d1: PathBuf,
        #[arg(long)]
        d2: PathBuf,
        /// Treat the inputs as undirected graphs
        #[arg(long)]
        graph: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Numeric spectrum via simultaneous root iteration
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[arg(long)]
        tol: f64,
    },
    /// Strong-connectivity verdict for a digraph
    Connectivity {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run verification sweeps; exit 0 only when every trial agrees
    Verify {
        /// Sweep id (see --list)
        #[arg(long, conflicts_with = "all", conflicts_with = "list")]
        theorem: Option<String>,
        /// Run every sweep
        #[arg(long)]
        all: bool,
        /// List sweep ids and what they check
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_n1: usize,
        #[arg(long, default_value_t = 4)]
        max_n2: usize,
        /// Also write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read_digraph(path: &PathBuf) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Digraph::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Verification worker threads from SUBSPECTRA_THREADS (0 or unset = auto).
fn thread_cap() -> Result<usize> {
    match std::env::var("SUBSPECTRA_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .with_context(|| format!("SUBSPECTRA_THREADS must be a number, got `{v}`")),
        Err(_) => Ok(0),
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Charpoly { input, matrix, json } => {
            let d = read_digraph(&input)?;
            let f = matrix::charpoly(&d.matrix(matrix.into())?)?;
            if json {
                println!("{}", serde_json::to_string(&f)?);
            } else {
                println!("{f}");
            }
            Ok(true)
        }
        Command::Coronal { input, matrix, json } => {
            let d = read_digraph(&input)?;
            let chi = matrix::coronal(&d.matrix(matrix.into())?)?;
            if json {
                println!("{}", serde_json::to_string(&chi)?);
            } else {
                println!("{chi}");
            }
            Ok(true)
        }
        Command::Product { kind, d1, d2, graph, out } => {
            let text = if graph {
                let g1 = read_graph(&d1)?;
                let g2 = read_graph(&d2)?;
                products::graph_product(kind.into(), &g1, &g2)?.to_text()
            } else {
                let a = read_digraph(&d1)?;
                let b = read_digraph(&d2)?;
                products::digraph_product(kind.into(), &a, &b)?.to_text()
            };
            fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            Ok(true)
        }
        Command::Spectrum { input, matrix, tol } => {
            let d = read_digraph(&input)?;
            let f = matrix::charpoly(&d.matrix(matrix.into())?)?;
            let roots = poly_roots(&f, tol)?;
            for z in roots {
                println!("{:+.12e} {:+.12e}", z.re, z.im);
            }
            Ok(true)
        }
        Command::Connectivity { input } => {
            let d = read_digraph(&input)?;
            if d.is_strongly_connected() {
                println!("strongly connected");
            } else {
                println!("not strongly connected");
            }
            Ok(true)
        }
        Command::Verify {
            theorem,
            all,
            list,
            trials,
            seed,
            max_n1,
            max_n2,
            report,
        } => {
            if list {
                for id in THEOREM_IDS {
                    println!("{id:18} {}", harness::theorem_description(id).unwrap_or(""));
                }
                return Ok(true);
            }
            let bounds = Bounds { max_n1, max_n2 };
            let threads = thread_cap()?;
            let reports: Vec<VerificationReport> = if all {
                harness::verify_all(trials, seed, &bounds, threads)?
            } else {
                let Some(id) = theorem else {
                    bail!("pass --theorem ID, --all, or --list");
                };
                vec![harness::verify(&id, trials, seed, &bounds, threads)?]
            };
            let rendered = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])?
            } else {
                serde_json::to_string_pretty(&reports)?
            };
            println!("{rendered}");
            if let Some(path) = report {
                fs::write(&path, format!("{rendered}\n"))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let clean = reports.iter().all(|r| r.passed());
            if !clean {
                for r in reports.iter().filter(|r| !r.passed()) {
                    eprintln!("{}: {} failure(s)", r.theorem, r.failures.len());
                }
            }
            Ok(clean)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
