use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use treenest::complex::{nested_set_complex, order_complex, subdivide_to_order_complex};
use treenest::lattice::{build_k_equal_lattice, build_partition_lattice, Payload};
use treenest::suites::{run_suite, Suite, SuiteParams};
use treenest::tree::{enumerate_hanlon_k_trees, enumerate_k_equal_trees, enumerate_tn};
use treenest::{BuildingSet, Error, FieldChoice, FiniteLattice, SimplicialComplex};

#[derive(Parser)]
#[command(name = "treenest", version, about = "Nested set complexes, complexes of trees and their subdivisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lattice or complex and write it as JSON.
    Build {
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Output file (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and write its JSON report.
    Verify {
        /// One of thm31, cor32, prop44, prop46, prop48, remark3, prop56, q52-evidence, betti.
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// `rational` or `prime:<p>`.
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the stellar subdivision trace from the complex of trees to the
    /// order complex of the partition lattice.
    Trace {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    PartitionLattice,
    KEqualLattice,
    TreeComplex,
    NestedComplex,
    KTrees,
    KEqualTrees,
    OrderComplex,
}

#[derive(Serialize)]
struct LatticeJson {
    elements: Vec<String>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
}

impl LatticeJson {
    fn new<P: Payload>(l: &FiniteLattice<P>) -> Self {
        LatticeJson {
            elements: (0..l.len()).map(|x| l.label(x)).collect(),
            ranks: (0..l.len()).map(|x| l.rank(x)).collect(),
            covers: (0..l.len())
                .flat_map(|x| l.upper_covers(x).into_iter().map(move |y| (x, y)))
                .collect(),
        }
    }
}

enum Failure {
    Usage(String),
    Checks,
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn require_k(k: Option<usize>, kind: &str) -> Result<usize, Failure> {
    k.ok_or_else(|| Failure::Usage(format!("{kind} needs --k")))
}

/// Writes `value` as JSON; reports are indented, bulk data is compact.
fn emit(out: Option<&PathBuf>, value: &impl Serialize, pretty: bool) -> Result<(), Failure> {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    let mut text = text.map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn complex_summary(k: &SimplicialComplex) -> String {
    let dim = k.dimension().map_or("empty".to_string(), |d| d.to_string());
    format!(
        "{} vertices, {} facets, dimension {dim}, f-vector {:?}",
        k.num_vertices(),
        k.num_facets(),
        k.f_vector()
    )
}

fn build(kind: Kind, n: usize, k: Option<usize>, out: Option<&PathBuf>) -> Result<(), Failure> {
    let complex = match kind {
        Kind::PartitionLattice | Kind::KEqualLattice => {
            let l = match kind {
                Kind::PartitionLattice => build_partition_lattice(n)?,
                _ => build_k_equal_lattice(n, require_k(k, "k-equal-lattice")?)?,
            };
            emit(out, &LatticeJson::new(&l), false)?;
            eprintln!("{} elements, graded {}", l.len(), l.is_graded());
            return Ok(());
        }
        Kind::TreeComplex => enumerate_tn(n)?,
        Kind::NestedComplex => {
            let l = match k {
                Some(k) => build_k_equal_lattice(n, k)?,
                None => build_partition_lattice(n)?,
            };
            nested_set_complex(&l, &BuildingSet::irreducibles(&l)?, true)?
        }
        Kind::KTrees => enumerate_hanlon_k_trees(n, require_k(k, "k-trees")?)?,
        Kind::KEqualTrees => enumerate_k_equal_trees(n, require_k(k, "k-equal-trees")?)?,
        Kind::OrderComplex => match k {
            Some(k) => order_complex(&build_k_equal_lattice(n, k)?),
            None => order_complex(&build_partition_lattice(n)?),
        },
    };
    emit(out, &complex, false)?;
    eprintln!("{}", complex_summary(&complex));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { kind, n, k, out } => build(kind, n, k, out.as_ref()),
        Command::Verify {
            suite,
            n,
            k,
            field,
            max_n,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let field: FieldChoice = field.parse()?;
            let params = SuiteParams { n, k, field, max_n };
            let report = run_suite(suite, &params)?;
            emit(out.as_ref(), &report, true)?;
            let failed = report.failed().count();
            eprintln!(
                "{suite}: {} ({} checks, {failed} failed)",
                if report.passed { "pass" } else { "FAIL" },
                report.checks.len()
            );
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Trace { n, out } => {
            if !(3..=5).contains(&n) {
                return Err(Failure::Usage(format!("trace supports 3 <= n <= 5, got {n}")));
            }
            let (_, trace) = subdivide_to_order_complex(&build_partition_lattice(n)?)?;
            emit(out.as_ref(), &trace, false)?;
            eprintln!(
                "{} steps, end: {}",
                trace.steps.len(),
                complex_summary(&trace.end)
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg) | Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
