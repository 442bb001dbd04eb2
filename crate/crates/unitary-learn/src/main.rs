use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use unitary_learn::harness::{self, ComparisonReport, ExperimentReport};
use unitary_learn::quantum::{benchmark_circuit, fidelity, unitary_error};
use unitary_learn::{io, Error};

/// Learn quantum-circuit unitaries from state pairs on the Stiefel manifold.
#[derive(Parser)]
#[command(name = "unitary-learn", version, about)]
struct Cli {
    /// Override the config's output directory.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// Override the config's training seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress the human-readable summary on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment described by a JSON config file.
    Run { config: PathBuf },
    /// Train the Cayley method and the Gram-Schmidt baseline on the same
    /// dataset and print a side-by-side table.
    Compare { config: PathBuf },
    /// Emit a built-in circuit file (currently: `bench5`).
    GenCircuit { name: String },
    /// Print the unitarity defect of a saved matrix, and the fidelity
    /// against a second matrix when given.
    Verify {
        matrix: PathBuf,
        other: Option<PathBuf>,
    },
}

fn load_with_overrides(cli: &Cli, path: &PathBuf) -> Result<harness::ExperimentConfig, Error> {
    let mut cfg = harness::load_config(path)?;
    if let Some(dir) = &cli.output_dir {
        cfg.output_dir = dir.clone();
    }
    if let Some(seed) = cli.seed {
        cfg.train.seed = seed;
    }
    Ok(cfg)
}

fn print_report(report: &ExperimentReport) {
    println!("epochs_run        {}", report.epochs_run);
    println!("final_loss        {:e}", report.final_loss);
    println!("final_fidelity    {:.12}", report.final_fidelity);
    println!("final_unitary_error {:e}", report.final_unitary_error);
    println!("wall_time_ms      {}", report.wall_time_ms);
    println!("output_dir        {}", report.config_echo.output_dir.display());
}

fn print_comparison(cmp: &ComparisonReport) {
    println!(
        "{:<14} {:>12} {:>10} {:>16} {:>12}",
        "method", "final_loss", "fidelity", "max_unitary_err", "loss_increases"
    );
    for s in [&cmp.cayley, &cmp.gram_schmidt] {
        println!(
            "{:<14} {:>12.3e} {:>10.6} {:>16.3e} {:>12}",
            s.method.name(),
            s.final_loss,
            s.final_fidelity,
            s.max_unitary_error,
            s.loss_increase_epochs
        );
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Run { config } => {
            let cfg = load_with_overrides(cli, config)?;
            let report = harness::run_experiment(&cfg)?;
            if !cli.quiet {
                print_report(&report);
            }
        }
        Command::Compare { config } => {
            let cfg = load_with_overrides(cli, config)?;
            let cmp = harness::compare_methods(&cfg)?;
            if !cli.quiet {
                print_comparison(&cmp);
            }
        }
        Command::GenCircuit { name } => {
            let circuit = match name.as_str() {
                "bench5" => benchmark_circuit(),
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown circuit name `{other}` (available: bench5)"
                    )))
                }
            };
            let dir = cli.output_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir).map_err(|source| Error::Io {
                op: "create",
                path: dir.clone(),
                source,
            })?;
            let path = dir.join(format!("{name}.circuit.json"));
            io::write_circuit(&path, &circuit)?;
            if !cli.quiet {
                println!("wrote {}", path.display());
            }
        }
        Command::Verify { matrix, other } => {
            let w = io::read_matrix(matrix)?;
            if !w.is_square() {
                return Err(Error::DimMismatch {
                    op: "verify",
                    details: format!("{}x{} matrix is not square", w.rows(), w.cols()),
                });
            }
            println!("unitary_error {:e}", unitary_error(&w));
            if let Some(other) = other {
                let u = io::read_matrix(other)?;
                println!("fidelity {:.12}", fidelity(&u, &w)?);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::FAILURE
        }
    }
}
