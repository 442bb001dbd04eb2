//! Learn the unitary matrix of a quantum circuit from input/output state
//! pairs.
//!
//! A single-layer complex-valued model `|psi'> = W |psi>` is trained while
//! the weight matrix `W` is kept exactly unitary: the Euclidean gradient is
//! turned into a skew-Hermitian search direction and the update follows a
//! Cayley-transform curve on the complex Stiefel manifold, so every iterate
//! satisfies `W† W = I` up to floating-point rounding. A Gram-Schmidt
//! reprojection baseline (plain gradient descent, periodically
//! re-orthonormalized) is included for comparison; it neither maintains
//! unitarity between reprojections nor decreases the loss monotonically.
//!
//! The crate is organized in five modules:
//!
//! - [`linalg`]: dense complex matrices, LU solves, QR, Gram-Schmidt,
//!   Haar-random unitaries.
//! - [`quantum`]: gate set, circuit-to-unitary construction, state sampling,
//!   fidelity and unitarity metrics.
//! - [`stiefel`]: the manifold machinery — skew-Hermitian directions, the
//!   Cayley retraction, canonical inner product, and a monotone
//!   backtracking step.
//! - [`model`]: forward map, mean-squared loss, its Wirtinger gradient, and
//!   the two trainers.
//! - [`harness`]: experiment configs, dataset generation, result
//!   persistence, and the Cayley-vs-baseline comparison.
//!
//! [`io`] holds the file formats these share: the matrix interchange
//! document, circuit files, the trace CSV, and plot series.
//!
//! See the `examples/` directory for runnable walkthroughs of each piece,
//! and the `unitary-learn` binary for the file-driven CLI.

pub mod error;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod model;
pub mod quantum;
mod rng;
pub mod stiefel;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use model::{Dataset, TrainConfig, TrainMethod, TrainTrace};
pub use quantum::{CircuitSpec, Gate, GateApp, StatePair};
