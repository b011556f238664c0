use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qudit_core::circuit::{compile, parse_circuit, run_program, CircuitProgram};
use qudit_core::deutsch::{run_deutsch, DeutschReport};
use qudit_core::gates::{catalog, verify_gate};
use qudit_core::linalg::PHYSICS_TOL;
use qudit_core::search::{brute_force_search, SearchSpace};
use qudit_core::Matrix;
use serde_json::json;

#[derive(Parser)]
#[command(name = "qudit", version, about = "Pulse-level two-qubit gates on a single five-level qudit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every library gate against its reference matrix.
    VerifyGates {
        #[arg(long, default_value_t = PHYSICS_TOL)]
        tol: f64,
    },
    /// Run the Deutsch algorithm with oracle 1..4.
    RunDeutsch {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        oracle: u8,
        /// Suppress the human summary on stderr.
        #[arg(long)]
        json: bool,
    },
    /// Compile a circuit file to a pulse schedule.
    Compile {
        file: PathBuf,
        /// Replace every Y pulse by three X pulses.
        #[arg(long)]
        lower_y: bool,
        /// Write the schedule here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run a circuit file on a basis state.
    Apply {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..5))]
        input: u64,
        #[arg(long)]
        lower_y: bool,
        /// Emit the full run report instead of the bare final state.
        #[arg(long)]
        report: bool,
        #[arg(long, default_value_t = PHYSICS_TOL)]
        tol: f64,
    },
    /// Exhaustive search for a short pulse program realizing a matrix.
    Search {
        /// Matrix JSON file.
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        depth: u64,
        /// Comma-separated angles in units of π.
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2,2.5,3,3.5")]
        grid: Vec<f64>,
        /// Require equality without a global phase.
        #[arg(long)]
        exact_phase: bool,
        #[arg(long, default_value_t = PHYSICS_TOL)]
        tol: f64,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_program(path: &PathBuf) -> Result<CircuitProgram, Failure> {
    let text = read(path)?;
    parse_circuit(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn verify_gates(tol: f64) -> Outcome {
    let mut all_pass = true;
    for spec in catalog() {
        let report = verify_gate(&spec, tol);
        all_pass &= report.pass;
        let line = json!({
            "name": spec.name,
            "schedule": spec.sequence,
            "reference": spec.reference,
            "report": report,
        });
        println!("{}", serde_json::to_string(&line).expect("serializable"));
        eprintln!(
            "{:<8} exact {:9.2e}  aligned {:9.2e}  {}",
            spec.name.to_string(),
            report.residual_exact,
            report.residual_phase_aligned,
            if report.pass { "ok" } else { "FAIL" }
        );
    }
    Ok(all_pass)
}

fn deutsch(oracle: u8, quiet: bool) -> Outcome {
    let result = run_deutsch(oracle).map_err(Failure::input)?;
    let report = DeutschReport::from_result(&result).map_err(Failure::input)?;
    if !quiet {
        eprintln!(
            "oracle {oracle}: {} (p_low {:.6}, p_high {:.6}, {} pulses, {} oracle query)",
            report.verdict, report.p_low, report.p_high, report.pulse_count, result.oracle_queries
        );
    }
    println!("{}", pretty(&report));
    Ok(true)
}

fn compile_file(file: &PathBuf, lower_y: bool, emit: Option<&PathBuf>) -> Outcome {
    let program = read_program(file)?;
    let schedule = compile(&program, lower_y).map_err(Failure::input)?;
    let text = schedule.to_json();
    match emit {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(true)
}

fn apply(file: &PathBuf, input: usize, lower_y: bool, report: bool, tol: f64) -> Outcome {
    let program = read_program(file)?;
    let run = run_program(&program, input, lower_y, tol).map_err(Failure::input)?;
    if report {
        println!("{}", pretty(&run));
    } else {
        println!("{}", pretty(&run.final_state));
    }
    Ok(run.exit_status == 0)
}

fn search(target: &PathBuf, depth: usize, grid: Vec<f64>, exact_phase: bool, tol: f64) -> Outcome {
    let matrix: Matrix = serde_json::from_str(&read(target)?)
        .map_err(|e| Failure::input(format!("{}: {e}", target.display())))?;
    let space = SearchSpace::all_pairs(matrix.dim(), grid, depth).map_err(Failure::input)?;
    let result = brute_force_search(&matrix, &space, tol, !exact_phase).map_err(Failure::input)?;
    eprintln!(
        "{} after {} candidates, residual {:.2e}: {}",
        if result.found { "found" } else { "no match" },
        result.candidates_examined,
        result.residual,
        result.sequence
    );
    println!("{}", pretty(&result));
    Ok(result.found)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::VerifyGates { tol } => verify_gates(*tol),
        Command::RunDeutsch { oracle, json } => deutsch(*oracle, *json),
        Command::Compile {
            file,
            lower_y,
            emit,
        } => compile_file(file, *lower_y, emit.as_ref()),
        Command::Apply {
            file,
            input,
            lower_y,
            report,
            tol,
        } => apply(file, *input as usize, *lower_y, *report, *tol),
        Command::Search {
            target,
            depth,
            grid,
            exact_phase,
            tol,
        } => search(target, *depth as usize, grid.clone(), *exact_phase, *tol),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
