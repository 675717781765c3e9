use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::warn;
use qcurve_cli::format::write_csv;
use qcurve_cli::report::{build_report, render};
use qcurve_cli::validate::{self, Fixtures};
use qcurve_cli::{sweep, trajectory, CliError, Problem, Result};

#[derive(Parser)]
#[command(name = "qcurve", version, about = "Curvature and torsion of quantum evolutions")]
struct Cli {
    /// Fubini–Study scale γ used by the finite-difference oracle.
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// Add the finite-difference oracle to reports.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a JSON geometry report for one problem.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
    /// Sample ψ(t) on an even time grid and write it as CSV.
    Trajectory {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Vary one parameter and write κ², τ², η, α₄, α₃² as CSV.
    Sweep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run the built-in validation suite.
    Validate {
        /// Read fixtures from this directory instead of the built-in copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Perturb one amplitude of the named fixture (negative control).
        #[arg(long)]
        perturb: Option<String>,
        /// Write the built-in fixtures to this directory and exit.
        #[arg(long, conflicts_with_all = ["fixtures", "perturb"])]
        export_fixtures: Option<PathBuf>,
    },
}

fn load(path: &std::path::Path, gamma: Option<f64>) -> Result<Problem> {
    let mut problem = Problem::load(path)?;
    if let Some(g) = gamma {
        if !(g.is_finite() && g > 0.0) {
            return Err(CliError::schema("--gamma", "must be positive"));
        }
        problem.options.gamma = g;
    }
    Ok(problem)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Report { input } => {
            let problem = load(&input, cli.gamma)?;
            let report = build_report(&problem.instance()?, &problem.options, cli.oracle)?;
            for w in &report.warnings {
                warn!("{w}");
            }
            print!("{}", render(&report));
        }
        Command::Trajectory { input, t_max, steps, output } => {
            let problem = load(&input, cli.gamma)?;
            let tr = trajectory::sample(&problem.instance()?, t_max, steps)?;
            tr.warnings.iter().for_each(|w| warn!("{w}"));
            write_csv(&output, &tr.header, &tr.rows)?;
        }
        Command::Sweep { input, param, from, to, points, output } => {
            let problem = load(&input, cli.gamma)?;
            let values = sweep::grid(from, to, points)?;
            let s = sweep::run(&problem, &param, &values)?;
            s.warnings.iter().for_each(|w| warn!("{w}"));
            let header: Vec<String> = sweep::HEADER.iter().map(|h| h.to_string()).collect();
            write_csv(&output, &header, &s.rows)?;
        }
        Command::Validate { fixtures, perturb, export_fixtures } => {
            if let Some(dir) = export_fixtures {
                return Fixtures::export(&dir);
            }
            let mut fx = match fixtures {
                Some(dir) => Fixtures::from_dir(&dir),
                None => Fixtures::embedded(),
            };
            if let Some(name) = perturb {
                fx.perturb(&name)?;
            }
            let results = validate::run(&fx);
            for r in &results {
                println!("{}", r.line());
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            println!("{} of {} cases passed", results.len() - failed, results.len());
            if failed > 0 {
                return Err(CliError::Validation { failed, total: results.len() });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
