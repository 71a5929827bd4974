//! Command-line surface for the zero-locus library.
//!
//! Exit codes: 0 success, 1 bad input, 2 internal invariant violation,
//! 3 oracle mismatch found by `fuzz`. Data goes to stdout (or `--output`),
//! diagnostics to stderr.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zeroloc::{
    oracle_equivalence_run, parse_constant, quadric_example_checks, ChartConnection,
    ConstructibleSet, Error, GaussianRational, ModulePresentation, Poly, PolyMatrix, PolyRing,
    Result,
};

#[derive(Parser)]
#[command(
    name = "zeroloc",
    version,
    about = "Exact constructible zero loci of sheaf sections over Q(i)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the zero locus of a presented section as a constructible set
    ZeroLocus {
        /// Presentation file: {"variables", "A", "y"} with polynomial strings
        #[arg(long)]
        input: PathBuf,
        /// Keep cells that are empty over the complex numbers
        #[arg(long)]
        no_prune: bool,
        /// Write the resulting set here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Test whether a point lies in a serialized constructible set
    Member {
        /// Constructible-set file: {"variables", "cells"}
        #[arg(long)]
        cells: PathBuf,
        /// Comma-separated coordinates, e.g. "0,1", "-2,0" or "1/2,2-3*i"
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Decide solvability of y = A·x at a point by exact rank comparison
    Oracle {
        /// Presentation file: {"variables", "A", "y"}
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Compute the tangent-space solvability locus of a chart
    InfLocus {
        /// Chart file: {"n", "p", "q", "a", "f"} over x1..xn
        #[arg(long)]
        chart: PathBuf,
        /// Keep cells that are empty over the complex numbers
        #[arg(long)]
        no_prune: bool,
        /// Write the resulting set here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare constructible-set membership against the rank oracle on
    /// random presentations and points
    Fuzz {
        /// Number of random presentations to try
        #[arg(long)]
        trials: u64,
        /// Seed for the random stream (printed in the report)
        #[arg(long)]
        seed: u64,
    },
    /// Run a built-in example
    Example {
        #[command(subcommand)]
        which: ExampleKind,
    },
}

#[derive(Subcommand)]
enum ExampleKind {
    /// The ideal (x, y) in Q(i)[x, y] with section x: prints the pruned
    /// cells and a membership grid
    PaperIdeal,
    /// Symbolic incidence checks for two rulings and an involution on the
    /// quadric surface x0^2 + x1^2 + x2^2 + x3^2 = 0
    Quadric,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let ok = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(code)) => code,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
        Err(_) => {
            eprintln!("error: internal invariant violation");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::ZeroLocus {
            input,
            no_prune,
            output,
        } => {
            let pres = ModulePresentation::from_json_str(&read_file(&input)?)?;
            let locus = pres.zero_locus(!no_prune);
            emit(output.as_deref(), &locus.to_json_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Member { cells, point } => {
            let set = ConstructibleSet::from_json_str(&read_file(&cells)?)?;
            let point = parse_point(&point)?;
            println!("{}", set.contains_point(&point)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { input, point } => {
            let pres = ModulePresentation::from_json_str(&read_file(&input)?)?;
            let point = parse_point(&point)?;
            println!("{}", pres.solvable_at_point(&point)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::InfLocus {
            chart,
            no_prune,
            output,
        } => {
            let chart = ChartConnection::from_json_str(&read_file(&chart)?)?;
            let locus = chart.infinitesimal_locus(!no_prune);
            emit(output.as_deref(), &locus.to_json_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuzz { trials, seed } => {
            let report = oracle_equivalence_run(seed, trials, 25);
            println!("seed: {}", report.seed);
            println!("trials: {}", report.trials);
            println!("points per trial: {}", report.points_per_trial);
            println!("checks: {}", report.checks);
            println!("mismatches: {}", report.mismatches);
            if report.passed() {
                println!("result: pass");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("result: fail");
                Ok(ExitCode::from(3))
            }
        }
        Command::Example { which } => match which {
            ExampleKind::PaperIdeal => example_paper_ideal(),
            ExampleKind::Quadric => example_quadric(),
        },
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, data: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, data)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn parse_point(text: &str) -> Result<Vec<GaussianRational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|c| parse_constant(c.trim())).collect()
}

/// The section x of the ideal (x, y) ⊂ Q(i)[x, y], presented by the Koszul
/// relation column (−y, x)ᵀ with lift (1, 0). Its zero locus is the y-axis
/// minus the origin.
fn example_paper_ideal() -> Result<ExitCode> {
    let ring = PolyRing::new(vec!["x", "y"])?;
    let y_var = Poly::variable(&ring, 1);
    let x_var = Poly::variable(&ring, 0);
    let a = PolyMatrix::new(&ring, 2, 1, vec![-&y_var, x_var])?;
    let lift = vec![Poly::one(&ring), Poly::zero(&ring)];
    let pres = ModulePresentation::new(a, lift)?;
    let locus = pres.zero_locus(true);
    print!("{}", locus.to_json_string());
    println!("membership on {{-2..2}}^2 ('*' member, '.' not):");
    let mut members = 0;
    for b in (-2..=2).rev() {
        let mut row = String::new();
        for a in -2..=2 {
            let point = vec![
                GaussianRational::from_integer(a),
                GaussianRational::from_integer(b),
            ];
            if locus.contains_point(&point)? {
                members += 1;
                row.push_str(" *");
            } else {
                row.push_str(" .");
            }
        }
        println!("y={b:>2} |{row}");
    }
    println!("       x=-2..2 left to right");
    println!("members: {members}");
    Ok(ExitCode::SUCCESS)
}

fn example_quadric() -> Result<ExitCode> {
    let checks = quadric_example_checks();
    let mut failed = 0;
    for check in &checks {
        println!(
            "{}: {}",
            check.name,
            if check.passed { "pass" } else { "fail" }
        );
        if !check.passed {
            failed += 1;
        }
    }
    println!("checks: {}, failed: {}", checks.len(), failed);
    if failed > 0 {
        // Hard-coded identities failing means the engine itself is broken.
        panic!("built-in symbolic identities failed");
    }
    Ok(ExitCode::SUCCESS)
}
