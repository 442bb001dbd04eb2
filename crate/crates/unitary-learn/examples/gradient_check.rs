//! Finite-difference validation of the Wirtinger gradient and of the
//! descent derivative along the Cayley curve.
//!
//! Two checks, both against central differences with h = 1e-6:
//!   1. the directional derivative Re tr(G'Z) of the mean-squared loss,
//!   2. d/dlambda f(Y(lambda)) at lambda = 0, which should equal
//!      -||AW||_c^2 and is never positive.

use unitary_learn::harness::{generate_dataset, ExperimentConfig, TargetSpec};
use unitary_learn::linalg::{haar_unitary, CMatrix};
use unitary_learn::model::{euclid_gradient, mse_loss, TrainConfig};
use unitary_learn::stiefel::{cayley_step, descent_derivative, skew_from_gradient};

fn main() {
    let cfg = ExperimentConfig {
        target: TargetSpec::Haar { n_qubits: 2, seed: 5 },
        n_pairs: 8,
        train: TrainConfig::default(),
        output_dir: "unused".into(),
        emit_plot_data: false,
    };
    let data = generate_dataset(&cfg).unwrap();
    let h = 1e-6;

    println!("directional derivative vs central differences:");
    println!("{:>6} {:>16} {:>16} {:>12}", "trial", "Re tr(G'Z)", "finite diff", "rel err");
    for trial in 0..5u64 {
        let w = haar_unitary(4, 100 + trial);
        let z = haar_unitary(4, 200 + trial);
        let g = euclid_gradient(&w, &data).unwrap();
        let analytic = g.dagger().matmul(&z).unwrap().trace().unwrap().re;
        let plus = mse_loss(&(&w + &z.scale_re(h)), &data).unwrap();
        let minus = mse_loss(&(&w - &z.scale_re(h)), &data).unwrap();
        let fd = (plus - minus) / (2.0 * h);
        let rel = (analytic - fd).abs() / analytic.abs();
        println!("{:>6} {:>16.8e} {:>16.8e} {:>12.2e}", trial, analytic, fd, rel);
    }

    println!("\ndescent derivative along the Cayley curve:");
    println!("{:>6} {:>16} {:>16} {:>12}", "trial", "-||AW||_c^2", "finite diff", "rel err");
    for trial in 0..5u64 {
        let w = haar_unitary(4, 300 + trial);
        let g = euclid_gradient(&w, &data).unwrap();
        let a = skew_from_gradient(&g, &w).unwrap();
        let analytic = descent_derivative(&g, &w).unwrap();
        let f = |m: &CMatrix| mse_loss(m, &data).unwrap();
        let fd = (f(&cayley_step(&w, &a, h).unwrap()) - f(&cayley_step(&w, &a, -h).unwrap()))
            / (2.0 * h);
        let rel = (analytic - fd).abs() / analytic.abs();
        println!("{:>6} {:>16.8e} {:>16.8e} {:>12.2e}", trial, analytic, fd, rel);
        assert!(analytic <= 0.0);
    }
}
