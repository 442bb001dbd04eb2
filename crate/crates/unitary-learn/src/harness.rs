//! Experiment orchestration: config files, dataset generation, runs,
//! persistence, and the Cayley-vs-baseline comparison.
//!
//! A successful run leaves its output directory holding exactly the config
//! echo, the trace CSV, the final matrix, the report, and (when enabled)
//! three plot series; partial outputs are removed on failure so a present
//! directory always means a complete run.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io;
pub use crate::io::emit_plot_data;
use crate::linalg::{haar_unitary, CMatrix};
use crate::model::{
    forward, train_cayley, train_gram_schmidt, Dataset, TrainConfig, TrainMethod, TrainTrace,
};
use crate::quantum::{circuit_to_unitary, random_state, CircuitSpec, StatePair, MAX_QUBITS};
use crate::rng;

/// What the model should learn: a fixed circuit's unitary or a Haar-random
/// one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetSpec {
    Haar {
        n_qubits: usize,
        seed: u64,
    },
    Circuit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spec: Option<CircuitSpec>,
        /// Path to a circuit file, resolved against the config file's
        /// directory at load time and inlined into `spec`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spec_path: Option<PathBuf>,
    },
}

/// One experiment: target, dataset size, trainer knobs, and output location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub target: TargetSpec,
    pub n_pairs: usize,
    #[serde(default)]
    pub train: TrainConfig,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub emit_plot_data: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_pairs == 0 {
            return Err(Error::InvalidConfig("n_pairs must be at least 1".into()));
        }
        self.train.validate()?;
        match &self.target {
            TargetSpec::Haar { n_qubits, .. } => {
                if *n_qubits == 0 {
                    return Err(Error::InvalidConfig("n_qubits must be at least 1".into()));
                }
                if *n_qubits > MAX_QUBITS {
                    return Err(Error::TooManyQubits {
                        n: *n_qubits,
                        max: MAX_QUBITS,
                    });
                }
            }
            TargetSpec::Circuit { spec, spec_path } => match (spec, spec_path) {
                (Some(c), _) => c.validate()?,
                (None, Some(_)) => {
                    return Err(Error::InvalidConfig(
                        "circuit target still references a file; load the config through \
                         load_config to inline it"
                            .into(),
                    ));
                }
                (None, None) => {
                    return Err(Error::InvalidConfig(
                        "circuit target needs either `spec` or `spec_path`".into(),
                    ));
                }
            },
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        match &self.target {
            TargetSpec::Haar { n_qubits, .. } => *n_qubits,
            TargetSpec::Circuit { spec, .. } => spec.as_ref().map(|c| c.n_qubits).unwrap_or(0),
        }
    }

    /// Builds the target unitary.
    pub fn target_unitary(&self) -> Result<CMatrix> {
        match &self.target {
            TargetSpec::Haar { n_qubits, seed } => Ok(haar_unitary(1 << n_qubits, *seed)),
            TargetSpec::Circuit { spec, .. } => {
                let c = spec.as_ref().ok_or_else(|| {
                    Error::InvalidConfig("circuit target has no inline spec".into())
                })?;
                circuit_to_unitary(c)
            }
        }
    }
}

/// Loads a config from JSON, inlining any referenced circuit file
/// (`spec_path` is resolved relative to the config file's directory).
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        op: "read",
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg: ExperimentConfig = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    if let TargetSpec::Circuit { spec, spec_path } = &mut cfg.target {
        if let (None, Some(rel)) = (&spec, &spec_path) {
            let resolved = if rel.is_absolute() {
                rel.clone()
            } else {
                path.parent().unwrap_or(Path::new(".")).join(rel)
            };
            *spec = Some(io::read_circuit(&resolved)?);
            *spec_path = None;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Summary metrics of a finished run, echoing the config that produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub final_loss: f64,
    pub final_fidelity: f64,
    pub final_unitary_error: f64,
    pub epochs_run: usize,
    pub wall_time_ms: u64,
    pub config_echo: ExperimentConfig,
}

/// Builds the training set: `n_pairs` Haar-direction random inputs pushed
/// through the target unitary. The target is embedded for metrics only.
pub fn generate_dataset(cfg: &ExperimentConfig) -> Result<Dataset> {
    cfg.validate()?;
    let u = cfg.target_unitary()?;
    let n_qubits = cfg.n_qubits();
    let pairs: Vec<StatePair> = (0..cfg.n_pairs)
        .map(|m| {
            let input = random_state(n_qubits, rng::derive_seed(cfg.train.seed, m as u64));
            let output = forward(&u, &input)?;
            Ok(StatePair { input, output })
        })
        .collect::<Result<_>>()?;
    let data = Dataset {
        n_qubits,
        pairs,
        target_unitary: Some(u),
    };
    data.validate()?;
    Ok(data)
}

fn dispatch_train(data: &Dataset, cfg: &TrainConfig) -> Result<(CMatrix, TrainTrace)> {
    match cfg.method {
        TrainMethod::Cayley | TrainMethod::CayleyFixed => train_cayley(data, cfg),
        TrainMethod::GramSchmidt => train_gram_schmidt(data, cfg),
    }
}

/// Errors when `dir` exists non-empty; creates it otherwise. Returns whether
/// the caller owns cleanup of the directory on failure.
fn prepare_output_dir(dir: &Path) -> Result<()> {
    if dir.exists() {
        let mut entries = fs::read_dir(dir).map_err(|source| Error::Io {
            op: "scan",
            path: dir.to_path_buf(),
            source,
        })?;
        if entries.next().is_some() {
            return Err(Error::InvalidConfig(format!(
                "output directory {} already exists and is not empty",
                dir.display()
            )));
        }
    } else {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            op: "create",
            path: dir.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

fn run_into_dir(cfg: &ExperimentConfig) -> Result<(ExperimentReport, TrainTrace)> {
    let started = Instant::now();
    let data = generate_dataset(cfg)?;
    let (w, trace) = dispatch_train(&data, &cfg.train)?;
    let wall_time_ms = started.elapsed().as_millis() as u64;

    let last = trace.last();
    let report = ExperimentReport {
        final_loss: last.loss,
        final_fidelity: last
            .fidelity
            .expect("harness datasets always carry the target unitary"),
        final_unitary_error: last.unitary_error,
        epochs_run: last.epoch,
        wall_time_ms,
        config_echo: cfg.clone(),
    };

    let dir = &cfg.output_dir;
    let config_text =
        serde_json::to_string_pretty(&report.config_echo).expect("config serialization");
    fs::write(dir.join("config.json"), config_text).map_err(|source| Error::Io {
        op: "write",
        path: dir.join("config.json"),
        source,
    })?;
    io::write_trace_csv(&dir.join("trace.csv"), &trace)?;
    io::write_matrix(&dir.join("w_final.json"), &w)?;
    let report_text = serde_json::to_string_pretty(&report).expect("report serialization");
    fs::write(dir.join("report.json"), report_text).map_err(|source| Error::Io {
        op: "write",
        path: dir.join("report.json"),
        source,
    })?;
    if cfg.emit_plot_data {
        io::emit_plot_data(&trace, dir)?;
    }
    Ok((report, trace))
}

/// Runs one experiment end to end: generate, train, persist.
///
/// Deterministic per config; the output directory is removed again if any
/// stage fails.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    prepare_output_dir(&cfg.output_dir)?;
    match run_into_dir(cfg) {
        Ok((report, _)) => Ok(report),
        Err(e) => {
            let _ = fs::remove_dir_all(&cfg.output_dir);
            Err(e)
        }
    }
}

/// Per-method block of a [`ComparisonReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: TrainMethod,
    pub final_loss: f64,
    pub final_fidelity: f64,
    pub max_unitary_error: f64,
    pub loss_increase_epochs: usize,
}

fn summarize(method: TrainMethod, report: &ExperimentReport, trace: &TrainTrace) -> MethodSummary {
    MethodSummary {
        method,
        final_loss: report.final_loss,
        final_fidelity: report.final_fidelity,
        max_unitary_error: trace.max_unitary_error(),
        loss_increase_epochs: trace.loss_increase_count(),
    }
}

/// Side-by-side result of training both methods on the identical dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub cayley: MethodSummary,
    pub gram_schmidt: MethodSummary,
}

/// Runs the Cayley trainer and the Gram-Schmidt baseline on the identical
/// dataset and seed (both derive from `cfg.train.seed`), writing one run
/// directory per method plus `comparison.json` under `cfg.output_dir`.
pub fn compare_methods(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    prepare_output_dir(&cfg.output_dir)?;
    let outcome = (|| {
        let mut cayley_cfg = cfg.clone();
        cayley_cfg.train.method = TrainMethod::Cayley;
        cayley_cfg.output_dir = cfg.output_dir.join("cayley");
        prepare_output_dir(&cayley_cfg.output_dir)?;
        let (cayley_report, cayley_trace) = run_into_dir(&cayley_cfg)?;

        let mut gs_cfg = cfg.clone();
        gs_cfg.train.method = TrainMethod::GramSchmidt;
        gs_cfg.output_dir = cfg.output_dir.join("gram_schmidt");
        prepare_output_dir(&gs_cfg.output_dir)?;
        let (gs_report, gs_trace) = run_into_dir(&gs_cfg)?;

        let comparison = ComparisonReport {
            cayley: summarize(TrainMethod::Cayley, &cayley_report, &cayley_trace),
            gram_schmidt: summarize(TrainMethod::GramSchmidt, &gs_report, &gs_trace),
        };
        let path = cfg.output_dir.join("comparison.json");
        let text = serde_json::to_string_pretty(&comparison).expect("comparison serialization");
        fs::write(&path, text).map_err(|source| Error::Io {
            op: "write",
            path,
            source,
        })?;
        Ok(comparison)
    })();
    if outcome.is_err() {
        let _ = fs::remove_dir_all(&cfg.output_dir);
    }
    outcome
}
