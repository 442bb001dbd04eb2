//! Optimization machinery on the complex Stiefel manifold of unitary
//! matrices.
//!
//! A Euclidean gradient G at a unitary point W is turned into the
//! skew-Hermitian direction `A = G·W† - W·G†`; the update moves along the
//! Cayley curve `Y(λ) = (I + λ/2·A)^{-1} (I - λ/2·A) W`, which stays exactly
//! unitary for every real λ and decreases the loss for all sufficiently
//! small λ > 0. [`backtracking_step`] picks such a λ by halving against an
//! Armijo-style sufficient-decrease bound.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, CMatrix};
use crate::quantum::unitary_error;

/// A direction `z` tangent to the manifold at the unitary point `base`,
/// i.e. satisfying `base†·z + z†·base = 0`.
#[derive(Debug, Clone)]
pub struct TangentVector {
    pub z: CMatrix,
    pub base: CMatrix,
}

impl TangentVector {
    /// Validates the tangency condition to 1e-8 before wrapping.
    pub fn new(z: CMatrix, base: CMatrix) -> Result<Self> {
        if z.rows() != base.rows() || z.cols() != base.cols() || !z.is_square() {
            return Err(Error::dim(
                "tangent_vector",
                format!("z {}x{} vs base {}x{}", z.rows(), z.cols(), base.rows(), base.cols()),
            ));
        }
        let defect = (&base.dagger().matmul(&z)? + &z.dagger().matmul(&base)?)
            .frobenius_norm_sq()
            .sqrt();
        if defect > 1e-8 {
            return Err(Error::InvalidConfig(format!(
                "direction is not tangent: defect {defect:e}"
            )));
        }
        Ok(Self { z, base })
    }
}

/// Outcome of one accepted descent step.
#[derive(Debug, Clone)]
pub struct StepResult {
    pub w_next: CMatrix,
    pub lambda_used: f64,
    pub loss_before: f64,
    pub loss_after: f64,
    pub n_backtracks: u32,
}

fn check_same_square(op: &'static str, a: &CMatrix, b: &CMatrix) -> Result<()> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::dim(
            op,
            format!("{}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        ));
    }
    Ok(())
}

/// Skew-Hermitian search direction `A = g·w† - w·g†`.
///
/// The result is explicitly re-skewed, `A <- (A - A†)/2`, which is a
/// mathematical no-op but pins `A† = -A` against rounding drift.
pub fn skew_from_gradient(g: &CMatrix, w: &CMatrix) -> Result<CMatrix> {
    check_same_square("skew_from_gradient", g, w)?;
    let a = &g.matmul(&w.dagger())? - &w.matmul(&g.dagger())?;
    Ok((&a - &a.dagger()).scale_re(0.5))
}

/// One point on the Cayley curve:
/// `Y(λ) = (I + λ/2·a)^{-1} (I - λ/2·a) w`.
///
/// The linear system is solved rather than inverting; for skew-Hermitian `a`
/// the coefficient matrix `I + λ/2·a` has eigenvalues `1 + iλμ/2` with real
/// μ, so it is never singular and the result is unitary for every real λ.
pub fn cayley_step(w: &CMatrix, a: &CMatrix, lambda: f64) -> Result<CMatrix> {
    check_same_square("cayley_step", a, w)?;
    let n = w.rows();
    let half = a.scale_re(lambda / 2.0);
    let identity = CMatrix::identity(n);
    let lhs = &identity + &half;
    let rhs = (&identity - &half).matmul(w)?;
    solve_linear(&lhs, &rhs)
}

/// Canonical inner product `<z1, z2>_c = tr(z1† (I - ½·w·w†) z2)`.
pub fn canonical_inner(z1: &CMatrix, z2: &CMatrix, w: &CMatrix) -> Result<Complex64> {
    check_same_square("canonical_inner", z1, z2)?;
    check_same_square("canonical_inner", z1, w)?;
    let n = w.rows();
    let proj = &CMatrix::identity(n) - &w.matmul(&w.dagger())?.scale_re(0.5);
    z1.dagger().matmul(&proj)?.matmul(z2)?.trace()
}

/// Riemannian gradient at `w`: the tangent-space projection `A·w` with
/// `A = g·w† - w·g†`.
pub fn riemannian_grad(g: &CMatrix, w: &CMatrix) -> Result<CMatrix> {
    skew_from_gradient(g, w)?.matmul(w)
}

/// Directional derivative of the loss along the Cayley curve at λ = 0:
/// `-||A·w||_c^2`, never positive.
pub fn descent_derivative(g: &CMatrix, w: &CMatrix) -> Result<f64> {
    let aw = riemannian_grad(g, w)?;
    Ok(-canonical_inner(&aw, &aw, w)?.re)
}

const MAX_HALVINGS: u32 = 40;
const ARMIJO_FACTOR: f64 = 0.5;

/// Backtracking step: halves λ from `lambda0` until the sufficient-decrease
/// bound `f(Y(λ)) <= f(w) - (λ/2)·||A·w||_c^2 · 0.5` holds.
///
/// Returns `w` unchanged when the Riemannian gradient vanishes. Errors after
/// 40 halvings — at that point λ has shrunk by 1e12 and the gradient is
/// presumed inconsistent with the loss.
pub fn backtracking_step<F>(
    w: &CMatrix,
    g: &CMatrix,
    loss_fn: F,
    lambda0: f64,
) -> Result<StepResult>
where
    F: Fn(&CMatrix) -> f64,
{
    if lambda0 <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "lambda0 must be positive, got {lambda0}"
        )));
    }
    let a = skew_from_gradient(g, w)?;
    let aw = a.matmul(w)?;
    let grad_norm_sq = canonical_inner(&aw, &aw, w)?.re;
    let loss_before = loss_fn(w);

    if grad_norm_sq <= 0.0 {
        // Stationary point: Y(lambda) = w for every lambda.
        return Ok(StepResult {
            w_next: w.clone(),
            lambda_used: lambda0,
            loss_before,
            loss_after: loss_before,
            n_backtracks: 0,
        });
    }

    let mut lambda = lambda0;
    for halvings in 0..=MAX_HALVINGS {
        let candidate = cayley_step(w, &a, lambda)?;
        let loss_after = loss_fn(&candidate);
        if loss_after <= loss_before - ARMIJO_FACTOR * (lambda / 2.0) * grad_norm_sq {
            debug_assert!(unitary_error(&candidate) <= 1e-10);
            return Ok(StepResult {
                w_next: candidate,
                lambda_used: lambda,
                loss_before,
                loss_after,
                n_backtracks: halvings,
            });
        }
        lambda /= 2.0;
    }
    Err(Error::BacktrackingExhausted {
        halvings: MAX_HALVINGS,
        lambda0,
    })
}
