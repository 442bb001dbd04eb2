//! Run a full experiment through the harness, then reload the persisted
//! matrix and check it against the target — the same loop the `run` and
//! `verify` CLI subcommands drive.

use unitary_learn::harness::{run_experiment, ExperimentConfig, TargetSpec};
use unitary_learn::io::{read_matrix, read_trace_csv};
use unitary_learn::model::TrainConfig;
use unitary_learn::quantum::{fidelity, unitary_error};

fn main() {
    let out = std::env::temp_dir().join(format!("unitary-learn-demo-{}", std::process::id()));
    let cfg = ExperimentConfig {
        target: TargetSpec::Haar { n_qubits: 2, seed: 4 },
        n_pairs: 16,
        train: TrainConfig {
            epochs: 1500,
            ..TrainConfig::default()
        },
        output_dir: out.clone(),
        emit_plot_data: true,
    };

    let report = run_experiment(&cfg).unwrap();
    println!("run finished in {} ms, {} epochs", report.wall_time_ms, report.epochs_run);
    println!("reported final loss      {:.3e}", report.final_loss);
    println!("reported final fidelity  {:.12}", report.final_fidelity);

    // Reload what the run persisted.
    let w = read_matrix(&out.join("w_final.json")).unwrap();
    let trace = read_trace_csv(&out.join("trace.csv")).unwrap();
    let target = cfg.target_unitary().unwrap();

    println!("\nreloaded from {}:", out.display());
    println!("unitary_error(w_final)   {:.3e}", unitary_error(&w));
    println!("fidelity(target, w)      {:.12}", fidelity(&target, &w).unwrap());
    println!("trace rows               {}", trace.rows.len());
    println!(
        "last row matches report  {}",
        trace.last().loss == report.final_loss
    );

    std::fs::remove_dir_all(&out).unwrap();
}
