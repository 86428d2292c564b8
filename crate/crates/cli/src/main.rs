//! `loci` command-line tool.
//!
//! Exit codes: 0 success, 1 negative answer (not representable, no extension,
//! algorithms disagree), 2 input error, 3 contract violation.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use loci::experiment::{run_experiment_with, write_csv, Execution, ExperimentConfig};
use loci::{
    check_k0_equivalence, consistent_extension, decide_representable, io as text, run_loci,
    CISet, Error, VertexNames,
};

#[derive(Parser)]
#[command(name = "loci", version, about = "Causal structure from low-order conditional independencies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write every order-≤k statement implied by d-separation in a DAG.
    Oracle {
        #[arg(long)]
        dag: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated vertex names for the output.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// Run LOCI on a statement file and write the resulting graph.
    Learn {
        #[arg(long)]
        ci: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also decide representability; exit 1 if not representable.
        #[arg(long)]
        decide: bool,
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// Write a consistent extension of a partially directed graph.
    Extend {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// Random-DAG study; writes per-trial records and a mean row as CSV.
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run trials on the current thread only.
        #[arg(long)]
        serial: bool,
    },
    /// Compare LOCI with the boundary algorithm on a k = 0 statement file.
    CompareK0 {
        #[arg(long)]
        ci: PathBuf,
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn contract(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(e.to_string())),
    }
}

fn names_or(default: &VertexNames, names: Option<Vec<String>>) -> Result<VertexNames, Failure> {
    let Some(names) = names else {
        return Ok(default.clone());
    };
    if names.len() != default.len() {
        return Err(Failure::input(format!(
            "--names lists {} names for {} vertices",
            names.len(),
            default.len()
        )));
    }
    VertexNames::new(names).map_err(|e| Failure::input(e.to_string()))
}

fn parse_ci_file(path: &Path) -> Result<CISet, Failure> {
    text::parse_ci(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn oracle(dag: &Path, k: usize, out: Option<&Path>, names: Option<Vec<String>>) -> CmdResult {
    let (g, parsed) =
        text::parse_graph(&read(dag)?).map_err(|e| Failure::input(format!("{}: {e}", dag.display())))?;
    let names = names_or(&parsed, names)?;
    let mut s = CISet::from_dag(&g, k).map_err(|e| match e {
        Error::NotADag => Failure::contract(format!("{}: not a DAG", dag.display())),
        other => Failure::contract(other.to_string()),
    })?;
    s.set_names(names).map_err(|e| Failure::input(e.to_string()))?;
    emit(out, &text::write_ci(&s))?;
    Ok(ExitCode::SUCCESS)
}

fn learn(ci: &Path, out: Option<&Path>, decide: bool, names: Option<Vec<String>>) -> CmdResult {
    let s = parse_ci_file(ci)?;
    let names = names_or(s.names(), names)?;
    let (verdict, rep) = if decide {
        let (ok, rep) = decide_representable(&s);
        (Some(ok), rep)
    } else {
        (None, run_loci(&s))
    };
    let graph_text = text::write_graph(&rep.graph, &names).map_err(|e| Failure::input(e.to_string()))?;
    emit(out, &graph_text)?;
    match verdict {
        Some(ok) => {
            println!("representable: {ok}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        None => Ok(ExitCode::SUCCESS),
    }
}

fn extend(graph: &Path, out: Option<&Path>, names: Option<Vec<String>>) -> CmdResult {
    let (g, parsed) = text::parse_graph(&read(graph)?)
        .map_err(|e| Failure::input(format!("{}: {e}", graph.display())))?;
    let names = names_or(&parsed, names)?;
    match consistent_extension(&g) {
        Some(dag) => {
            let body = text::write_graph(&dag, &names).map_err(|e| Failure::input(e.to_string()))?;
            emit(out, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            eprintln!("no consistent extension exists");
            Ok(ExitCode::from(1))
        }
    }
}

fn experiment(cfg: ExperimentConfig, out: Option<&Path>, serial: bool) -> CmdResult {
    cfg.validate().map_err(|e| Failure::input(e.to_string()))?;
    let exec = if serial { Execution::Serial } else { Execution::Parallel };
    let result = run_experiment_with(&cfg, exec).map_err(|e| Failure::contract(e.to_string()))?;
    let mut buf = Vec::new();
    write_csv(&result, &mut buf).map_err(|e| Failure::input(e.to_string()))?;
    emit(out, &String::from_utf8_lossy(&buf))?;
    Ok(ExitCode::SUCCESS)
}

fn compare_k0(ci: &Path, names: Option<Vec<String>>) -> CmdResult {
    let s = parse_ci_file(ci)?;
    names_or(s.names(), names)?;
    let same = check_k0_equivalence(&s).map_err(|e| Failure::contract(e.to_string()))?;
    println!("equivalent: {same}");
    Ok(if same { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Oracle { dag, k, out, names } => oracle(&dag, k, out.as_deref(), names),
        Command::Learn {
            ci,
            out,
            decide,
            names,
        } => learn(&ci, out.as_deref(), decide, names),
        Command::Extend { graph, out, names } => extend(&graph, out.as_deref(), names),
        Command::Experiment {
            n,
            d,
            k,
            trials,
            seed,
            out,
            serial,
        } => experiment(
            ExperimentConfig {
                n,
                d,
                k,
                trials,
                seed,
            },
            out.as_deref(),
            serial,
        ),
        Command::CompareK0 { ci, names } => compare_k0(&ci, names),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
