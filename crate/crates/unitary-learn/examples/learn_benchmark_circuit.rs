//! Learn the 5-qubit benchmark circuit's unitary from 64 state pairs.
//!
//! Same training loop as the 2-qubit example, at 32x32. Prints a sparse
//! view of the trace; expect fidelity above 0.99 well before the epoch
//! budget runs out while the unitarity defect stays around 1e-23.

use unitary_learn::harness::{generate_dataset, ExperimentConfig, TargetSpec};
use unitary_learn::model::{train_cayley, TrainConfig};
use unitary_learn::quantum::benchmark_circuit;

fn main() {
    let cfg = ExperimentConfig {
        target: TargetSpec::Circuit {
            spec: Some(benchmark_circuit()),
            spec_path: None,
        },
        n_pairs: 64,
        train: TrainConfig {
            epochs: 2000,
            ..TrainConfig::default()
        },
        output_dir: "unused".into(),
        emit_plot_data: false,
    };
    let data = generate_dataset(&cfg).unwrap();

    let started = std::time::Instant::now();
    let (_, trace) = train_cayley(&data, &cfg.train).unwrap();
    let elapsed = started.elapsed();

    println!("{:>6} {:>14} {:>12} {:>14}", "epoch", "loss", "fidelity", "unitary_err");
    for row in trace.rows.iter().filter(|r| r.epoch % 200 == 0) {
        println!(
            "{:>6} {:>14.3e} {:>12.8} {:>14.3e}",
            row.epoch,
            row.loss,
            row.fidelity.unwrap(),
            row.unitary_error
        );
    }
    let last = trace.last();
    println!(
        "\n{} epochs in {elapsed:.2?}: loss {:.3e}, fidelity {:.10}, unitary error {:.3e}",
        last.epoch,
        last.loss,
        last.fidelity.unwrap(),
        last.unitary_error
    );
}
