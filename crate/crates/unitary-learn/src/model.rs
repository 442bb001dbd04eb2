//! The single-layer complex-valued model and its two trainers.
//!
//! The model is the bare linear map `|psi'> = W |psi>`. Training minimizes
//! the batch mean squared error over state pairs; its Euclidean gradient is
//! taken in the conjugate Wirtinger convention, `G = (2/M) Σ (W·ψ - φ)·ψ†`,
//! which makes the directional derivative `Df(W)[Z] = Re tr(G†Z)` — exactly
//! the pairing the manifold machinery in [`crate::stiefel`] needs for its
//! descent guarantee.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, haar_unitary, CMatrix, CVector};
use crate::quantum::{fidelity, unitary_error, StatePair};
use crate::stiefel::{backtracking_step, cayley_step, skew_from_gradient};

/// Training data: state pairs plus an optional target unitary that is used
/// only for fidelity reporting, never by the optimizer.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub n_qubits: usize,
    pub pairs: Vec<StatePair>,
    pub target_unitary: Option<CMatrix>,
}

impl Dataset {
    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let dim = self.dim();
        for pair in &self.pairs {
            pair.validate()?;
            if pair.input.dim() != dim {
                return Err(Error::dim(
                    "dataset",
                    format!("pair dim {} vs 2^n_qubits = {dim}", pair.input.dim()),
                ));
            }
        }
        if let Some(u) = &self.target_unitary {
            if u.rows() != dim || u.cols() != dim {
                return Err(Error::dim(
                    "dataset",
                    format!("target unitary {}x{} vs dim {dim}", u.rows(), u.cols()),
                ));
            }
            for pair in &self.pairs {
                let mapped = u.matvec(&pair.input)?;
                let defect = (&mapped - &pair.output).norm();
                if defect > 1e-10 {
                    return Err(Error::InvalidConfig(format!(
                        "target unitary does not map an input to its output (defect {defect:e})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Which optimizer drives the training loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrainMethod {
    /// Cayley retraction with backtracking line search.
    Cayley,
    /// Cayley retraction at fixed step size, no line search.
    CayleyFixed,
    /// Euclidean gradient descent with periodic Gram-Schmidt reprojection.
    GramSchmidt,
}

impl TrainMethod {
    /// The config-file spelling of the variant.
    pub fn name(self) -> &'static str {
        match self {
            TrainMethod::Cayley => "cayley",
            TrainMethod::CayleyFixed => "cayley_fixed",
            TrainMethod::GramSchmidt => "gram_schmidt",
        }
    }
}

/// Optimizer choice plus the knobs shared by both trainers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    #[serde(default = "defaults::method")]
    pub method: TrainMethod,
    #[serde(default = "defaults::lambda0")]
    pub lambda0: f64,
    #[serde(default = "defaults::epochs")]
    pub epochs: usize,
    /// Gram-Schmidt baseline only: reproject every this many epochs.
    #[serde(default = "defaults::reorth_interval")]
    pub reorth_interval: usize,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    /// Stop early once the loss falls to or below this value.
    #[serde(default = "defaults::loss_tolerance")]
    pub loss_tolerance: f64,
    #[serde(default = "defaults::record_every")]
    pub record_every: usize,
}

mod defaults {
    use super::TrainMethod;
    pub fn method() -> TrainMethod {
        TrainMethod::Cayley
    }
    pub fn lambda0() -> f64 {
        0.1
    }
    pub fn epochs() -> usize {
        2000
    }
    pub fn reorth_interval() -> usize {
        10
    }
    pub fn seed() -> u64 {
        7
    }
    pub fn loss_tolerance() -> f64 {
        1e-16
    }
    pub fn record_every() -> usize {
        1
    }
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            method: defaults::method(),
            lambda0: defaults::lambda0(),
            epochs: defaults::epochs(),
            reorth_interval: defaults::reorth_interval(),
            seed: defaults::seed(),
            loss_tolerance: defaults::loss_tolerance(),
            record_every: defaults::record_every(),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be at least 1".into()));
        }
        if !(self.lambda0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "lambda0 must be positive, got {}",
                self.lambda0
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidConfig("record_every must be at least 1".into()));
        }
        if !(self.loss_tolerance >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "loss_tolerance must be non-negative, got {}",
                self.loss_tolerance
            )));
        }
        if self.method == TrainMethod::GramSchmidt && self.reorth_interval == 0 {
            return Err(Error::InvalidConfig(
                "reorth_interval must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One recorded point of a training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub epoch: usize,
    pub loss: f64,
    pub fidelity: Option<f64>,
    pub unitary_error: f64,
    pub lambda_used: f64,
    pub n_backtracks: u32,
    /// Baseline only: true on the row recorded immediately after a
    /// Gram-Schmidt reprojection (the preceding row holds the same epoch's
    /// pre-reprojection state).
    pub reorth_event: bool,
}

/// Per-epoch training record.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainTrace {
    pub method: TrainMethod,
    pub rows: Vec<TraceRow>,
}

impl TrainTrace {
    fn new(method: TrainMethod) -> Self {
        Self {
            method,
            rows: Vec::new(),
        }
    }

    pub fn last(&self) -> &TraceRow {
        self.rows.last().expect("trace is never empty")
    }

    /// Number of recorded transitions in which the loss strictly increased.
    pub fn loss_increase_count(&self) -> usize {
        self.rows
            .windows(2)
            .filter(|w| w[1].loss > w[0].loss)
            .count()
    }

    pub fn max_unitary_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.unitary_error)
            .fold(0.0, f64::max)
    }
}

/// Applies the model: `w · psi`.
pub fn forward(w: &CMatrix, psi: &CVector) -> Result<CVector> {
    w.matvec(psi)
}

/// Batch mean squared error `f(W) = (1/M) Σ ||W·ψ_m - φ_m||²`.
pub fn mse_loss(w: &CMatrix, data: &Dataset) -> Result<f64> {
    if data.pairs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut total = 0.0;
    for pair in &data.pairs {
        let residual = &forward(w, &pair.input)? - &pair.output;
        total += residual.norm_sq();
    }
    Ok(total / data.pairs.len() as f64)
}

/// Euclidean gradient of [`mse_loss`] in the conjugate Wirtinger convention:
/// `G = (2/M) Σ (W·ψ_m - φ_m)·ψ_m†`, so that `Df(W)[Z] = Re tr(G†Z)`.
pub fn euclid_gradient(w: &CMatrix, data: &Dataset) -> Result<CMatrix> {
    if data.pairs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let dim = data.dim();
    let mut g = CMatrix::zeros(dim, dim);
    for pair in &data.pairs {
        let residual = &forward(w, &pair.input)? - &pair.output;
        g = &g + &residual.outer(&pair.input);
    }
    Ok(g.scale_re(2.0 / data.pairs.len() as f64))
}

fn fidelity_opt(data: &Dataset, w: &CMatrix) -> Option<f64> {
    data.target_unitary
        .as_ref()
        .map(|u| fidelity(u, w).expect("dims checked by validate"))
}

fn record(
    trace: &mut TrainTrace,
    data: &Dataset,
    w: &CMatrix,
    epoch: usize,
    loss: f64,
    lambda_used: f64,
    n_backtracks: u32,
    reorth_event: bool,
) {
    trace.rows.push(TraceRow {
        epoch,
        loss,
        fidelity: fidelity_opt(data, w),
        unitary_error: unitary_error(w),
        lambda_used,
        n_backtracks,
        reorth_event,
    });
}

/// Trains with the Cayley update, keeping every iterate unitary.
///
/// `method = cayley` uses the backtracking line search, so the recorded loss
/// sequence is non-increasing; `method = cayley_fixed` applies the update at
/// fixed `lambda0` with no such guarantee. Stops at `epochs` or as soon as
/// the loss reaches `loss_tolerance`.
pub fn train_cayley(data: &Dataset, cfg: &TrainConfig) -> Result<(CMatrix, TrainTrace)> {
    cfg.validate()?;
    if !matches!(cfg.method, TrainMethod::Cayley | TrainMethod::CayleyFixed) {
        return Err(Error::InvalidConfig(format!(
            "train_cayley called with method {:?}",
            cfg.method
        )));
    }
    data.validate()?;

    let mut w = haar_unitary(data.dim(), cfg.seed);
    let mut loss = mse_loss(&w, data)?;
    let mut trace = TrainTrace::new(cfg.method);
    record(&mut trace, data, &w, 0, loss, 0.0, 0, false);

    for epoch in 1..=cfg.epochs {
        let g = euclid_gradient(&w, data)?;
        let (lambda_used, n_backtracks);
        match cfg.method {
            TrainMethod::Cayley => {
                let step = backtracking_step(&w, &g, |m| {
                    mse_loss(m, data).expect("dataset validated")
                }, cfg.lambda0)?;
                w = step.w_next;
                loss = step.loss_after;
                lambda_used = step.lambda_used;
                n_backtracks = step.n_backtracks;
            }
            TrainMethod::CayleyFixed => {
                let a = skew_from_gradient(&g, &w)?;
                w = cayley_step(&w, &a, cfg.lambda0)?;
                loss = mse_loss(&w, data)?;
                lambda_used = cfg.lambda0;
                n_backtracks = 0;
            }
            TrainMethod::GramSchmidt => unreachable!(),
        }
        let done = loss <= cfg.loss_tolerance || epoch == cfg.epochs;
        if epoch % cfg.record_every == 0 || done {
            record(&mut trace, data, &w, epoch, loss, lambda_used, n_backtracks, false);
        }
        if done {
            break;
        }
    }
    Ok((w, trace))
}

/// Baseline trainer: plain Euclidean gradient descent with Gram-Schmidt
/// reprojection every `reorth_interval` epochs.
///
/// Between reprojections the iterate is not unitary; at each reprojection
/// the trace records the loss immediately before and after (two rows at the
/// same epoch, the second flagged `reorth_event`). No monotonicity holds.
pub fn train_gram_schmidt(data: &Dataset, cfg: &TrainConfig) -> Result<(CMatrix, TrainTrace)> {
    cfg.validate()?;
    if cfg.method != TrainMethod::GramSchmidt {
        return Err(Error::InvalidConfig(format!(
            "train_gram_schmidt called with method {:?}",
            cfg.method
        )));
    }
    data.validate()?;

    let mut w = haar_unitary(data.dim(), cfg.seed);
    let mut loss = mse_loss(&w, data)?;
    let mut trace = TrainTrace::new(cfg.method);
    record(&mut trace, data, &w, 0, loss, 0.0, 0, false);

    for epoch in 1..=cfg.epochs {
        let g = euclid_gradient(&w, data)?;
        w = &w - &g.scale_re(cfg.lambda0);
        loss = mse_loss(&w, data)?;

        let reorth_now = epoch % cfg.reorth_interval == 0;
        let done = loss <= cfg.loss_tolerance || epoch == cfg.epochs;
        if epoch % cfg.record_every == 0 || done || reorth_now {
            record(&mut trace, data, &w, epoch, loss, cfg.lambda0, 0, false);
        }
        if reorth_now {
            w = gram_schmidt(&w)?;
            loss = mse_loss(&w, data)?;
            record(&mut trace, data, &w, epoch, loss, cfg.lambda0, 0, true);
        }
        if loss <= cfg.loss_tolerance || epoch == cfg.epochs {
            break;
        }
    }
    Ok((w, trace))
}
