//! The Cayley curve stays on the manifold for any step size.
//!
//! Starting from a unitary W and a skew-Hermitian direction A, the point
//! Y(lambda) = (I + lambda/2 A)^{-1} (I - lambda/2 A) W is unitary for every
//! real lambda — including step sizes far beyond anything a line search
//! would accept. This sweeps lambda over eight orders of magnitude and
//! prints the unitarity defect of the result.

use unitary_learn::linalg::{haar_unitary, CMatrix};
use unitary_learn::quantum::unitary_error;
use unitary_learn::stiefel::{cayley_step, skew_from_gradient};

fn main() {
    let n = 16;
    let w = haar_unitary(n, 1);
    // Any matrix works as a "gradient"; skew_from_gradient makes it a
    // valid direction.
    let g = haar_unitary(n, 2);
    let a = skew_from_gradient(&g, &w).unwrap();
    let skew_defect = (&a + &a.dagger()).frobenius_norm_sq().sqrt();
    println!("direction skew defect ||A + A'||_F = {skew_defect:.3e}\n");

    println!("{:>12} {:>22}", "lambda", "unitary_error(Y)");
    for k in -4..=4i32 {
        let lambda = 10f64.powi(k);
        let y = cayley_step(&w, &a, lambda).unwrap();
        println!("{:>12.4e} {:>22.3e}", lambda, unitary_error(&y));
    }

    // lambda = 0 is the identity map.
    let y0 = cayley_step(&w, &a, 0.0).unwrap();
    let drift: CMatrix = &y0 - &w;
    println!("\nlambda = 0 drift: {:.3e}", drift.frobenius_norm_sq().sqrt());
}
