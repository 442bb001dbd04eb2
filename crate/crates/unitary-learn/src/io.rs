//! File formats: the JSON matrix interchange document, circuit files, the
//! trace CSV, and plot-data series.
//!
//! All numbers are serialized with shortest round-trip precision, so a value
//! written and read back is bit-identical and identical runs produce
//! byte-identical files.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::model::{TraceRow, TrainMethod, TrainTrace};
use crate::quantum::CircuitSpec;

/// On-disk form of a matrix: `{rows, cols, data}` with `data` a row-major
/// list of `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

fn io_err<'a>(op: &'static str, path: &'a Path) -> impl FnOnce(std::io::Error) -> Error + 'a {
    move |source| Error::Io {
        op,
        path: path.to_path_buf(),
        source,
    }
}

fn parse_err<'a, E: std::fmt::Display>(path: &'a Path) -> impl FnOnce(E) -> Error + 'a {
    move |e| Error::Parse {
        path: path.to_path_buf(),
        msg: e.to_string(),
    }
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    let file = MatrixFile {
        rows: m.rows(),
        cols: m.cols(),
        data: m.data().iter().map(|z| [z.re, z.im]).collect(),
    };
    let text = serde_json::to_string_pretty(&file).expect("matrix serialization");
    fs::write(path, text).map_err(io_err("write", path))
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = fs::read_to_string(path).map_err(io_err("read", path))?;
    let file: MatrixFile = serde_json::from_str(&text).map_err(parse_err(path))?;
    if file.rows == 0 || file.cols == 0 || file.data.len() != file.rows * file.cols {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            msg: format!(
                "{}x{} matrix with {} entries",
                file.rows,
                file.cols,
                file.data.len()
            ),
        });
    }
    let mut m = CMatrix::zeros(file.rows, file.cols);
    for (i, [re, im]) in file.data.into_iter().enumerate() {
        m[(i / file.cols, i % file.cols)] = Complex64::new(re, im);
    }
    if !m.is_finite() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            msg: "matrix contains non-finite entries".into(),
        });
    }
    Ok(m)
}

pub fn write_circuit(path: &Path, c: &CircuitSpec) -> Result<()> {
    let text = serde_json::to_string_pretty(c).expect("circuit serialization");
    fs::write(path, text).map_err(io_err("write", path))
}

pub fn read_circuit(path: &Path) -> Result<CircuitSpec> {
    let text = fs::read_to_string(path).map_err(io_err("read", path))?;
    let spec: CircuitSpec = serde_json::from_str(&text).map_err(parse_err(path))?;
    spec.validate()?;
    Ok(spec)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the trace as CSV. The header is
/// `epoch,loss,fidelity,unitary_error,lambda_used,n_backtracks`, with an
/// extra `reorth_event` boolean column for the Gram-Schmidt baseline.
pub fn write_trace_csv(path: &Path, trace: &TrainTrace) -> Result<()> {
    let baseline = trace.method == TrainMethod::GramSchmidt;
    let mut out = String::new();
    out.push_str("epoch,loss,fidelity,unitary_error,lambda_used,n_backtracks");
    if baseline {
        out.push_str(",reorth_event");
    }
    out.push('\n');
    for row in &trace.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}",
            row.epoch,
            row.loss,
            fmt_opt(row.fidelity),
            row.unitary_error,
            row.lambda_used,
            row.n_backtracks
        ));
        if baseline {
            out.push_str(if row.reorth_event { ",true" } else { ",false" });
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(io_err("write", path))
}

/// Reads a trace CSV written by [`write_trace_csv`].
pub fn read_trace_csv(path: &Path) -> Result<TrainTrace> {
    let text = fs::read_to_string(path).map_err(io_err("read", path))?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        msg: "empty trace file".into(),
    })?;
    let baseline = header.ends_with(",reorth_event");
    let expected_fields = if baseline { 7 } else { 6 };
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected_fields {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                msg: format!("line {}: {} fields", lineno + 2, fields.len()),
            });
        }
        let bad = |msg: &str| Error::Parse {
            path: path.to_path_buf(),
            msg: format!("line {}: {msg}", lineno + 2),
        };
        rows.push(TraceRow {
            epoch: fields[0].parse().map_err(|_| bad("bad epoch"))?,
            loss: fields[1].parse().map_err(|_| bad("bad loss"))?,
            fidelity: if fields[2].is_empty() {
                None
            } else {
                Some(fields[2].parse().map_err(|_| bad("bad fidelity"))?)
            },
            unitary_error: fields[3].parse().map_err(|_| bad("bad unitary_error"))?,
            lambda_used: fields[4].parse().map_err(|_| bad("bad lambda_used"))?,
            n_backtracks: fields[5].parse().map_err(|_| bad("bad n_backtracks"))?,
            reorth_event: baseline && fields[6] == "true",
        });
    }
    Ok(TrainTrace {
        method: if baseline {
            TrainMethod::GramSchmidt
        } else {
            TrainMethod::Cayley
        },
        rows,
    })
}

/// Writes the three two-column plot series (`loss.dat`, `fidelity.dat`,
/// `unitary_error.dat`) into `out_dir`. Baseline traces carry a third 0/1
/// column in `loss.dat` marking reprojection rows.
pub fn emit_plot_data(trace: &TrainTrace, out_dir: &Path) -> Result<()> {
    if trace.rows.is_empty() {
        return Err(Error::InvalidConfig("cannot plot an empty trace".into()));
    }
    let baseline = trace.method == TrainMethod::GramSchmidt;

    let loss_path = out_dir.join("loss.dat");
    let mut f = fs::File::create(&loss_path).map_err(io_err("create", &loss_path))?;
    for row in &trace.rows {
        if baseline {
            writeln!(f, "{} {} {}", row.epoch, row.loss, row.reorth_event as u8)
        } else {
            writeln!(f, "{} {}", row.epoch, row.loss)
        }
        .map_err(io_err("write", &loss_path))?;
    }

    let fid_path = out_dir.join("fidelity.dat");
    let mut f = fs::File::create(&fid_path).map_err(io_err("create", &fid_path))?;
    for row in &trace.rows {
        if let Some(fid) = row.fidelity {
            writeln!(f, "{} {}", row.epoch, fid).map_err(io_err("write", &fid_path))?;
        }
    }

    let ue_path = out_dir.join("unitary_error.dat");
    let mut f = fs::File::create(&ue_path).map_err(io_err("create", &ue_path))?;
    for row in &trace.rows {
        writeln!(f, "{} {}", row.epoch, row.unitary_error).map_err(io_err("write", &ue_path))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_unitary;
    use crate::quantum::benchmark_circuit;

    #[test]
    fn matrix_roundtrip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.json");
        let m = haar_unitary(4, 9);
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_reader_rejects_bad_shapes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, r#"{"rows":2,"cols":2,"data":[[1.0,0.0]]}"#).unwrap();
        assert!(matches!(read_matrix(&path), Err(Error::Parse { .. })));
    }

    #[test]
    fn circuit_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let c = benchmark_circuit();
        write_circuit(&path, &c).unwrap();
        assert_eq!(read_circuit(&path).unwrap(), c);
    }

    #[test]
    fn trace_csv_roundtrip() {
        let trace = TrainTrace {
            method: TrainMethod::GramSchmidt,
            rows: vec![
                TraceRow {
                    epoch: 0,
                    loss: 1.5,
                    fidelity: Some(0.25),
                    unitary_error: 1e-30,
                    lambda_used: 0.0,
                    n_backtracks: 0,
                    reorth_event: false,
                },
                TraceRow {
                    epoch: 1,
                    loss: 1.25,
                    fidelity: None,
                    unitary_error: 1e-3,
                    lambda_used: 0.1,
                    n_backtracks: 2,
                    reorth_event: true,
                },
            ],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.csv");
        write_trace_csv(&path, &trace).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(
            "epoch,loss,fidelity,unitary_error,lambda_used,n_backtracks,reorth_event\n"
        ));
        let back = read_trace_csv(&path).unwrap();
        assert_eq!(back, trace);
    }

    #[test]
    fn plot_series_match_trace_cardinality() {
        let rows: Vec<TraceRow> = (0..100)
            .map(|epoch| TraceRow {
                epoch,
                loss: 1.0 / (epoch + 1) as f64,
                fidelity: Some(1.0 - 1.0 / (epoch + 1) as f64),
                unitary_error: 1e-28,
                lambda_used: 0.1,
                n_backtracks: 0,
                reorth_event: false,
            })
            .collect();
        let trace = TrainTrace {
            method: TrainMethod::Cayley,
            rows,
        };
        let dir = tempfile::tempdir().unwrap();
        emit_plot_data(&trace, dir.path()).unwrap();
        let loss = fs::read_to_string(dir.path().join("loss.dat")).unwrap();
        assert_eq!(loss.lines().count(), 100);
        let fid = fs::read_to_string(dir.path().join("fidelity.dat")).unwrap();
        assert_eq!(fid.lines().count(), 100);
        // Monotone input stays monotone in the emitted series.
        let vals: Vec<f64> = loss
            .lines()
            .map(|l| l.split(' ').nth(1).unwrap().parse().unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn plot_series_keep_reorth_flags() {
        let trace = TrainTrace {
            method: TrainMethod::GramSchmidt,
            rows: vec![
                TraceRow {
                    epoch: 1,
                    loss: 0.5,
                    fidelity: None,
                    unitary_error: 1e-3,
                    lambda_used: 0.1,
                    n_backtracks: 0,
                    reorth_event: false,
                },
                TraceRow {
                    epoch: 1,
                    loss: 0.8,
                    fidelity: None,
                    unitary_error: 1e-29,
                    lambda_used: 0.1,
                    n_backtracks: 0,
                    reorth_event: true,
                },
            ],
        };
        let dir = tempfile::tempdir().unwrap();
        emit_plot_data(&trace, dir.path()).unwrap();
        let loss = fs::read_to_string(dir.path().join("loss.dat")).unwrap();
        let lines: Vec<&str> = loss.lines().collect();
        assert!(lines[0].ends_with(" 0"));
        assert!(lines[1].ends_with(" 1"));
    }
}
