//! Gates, circuits, quantum states, and the fidelity metric.
//!
//! Qubit ordering is big-endian throughout: qubit 0 is the most significant
//! bit of the basis index, so the basis state `|q0 q1 ... q_{n-1}>` maps to
//! index `sum_k q_k * 2^(n-1-k)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, I, ONE, ZERO};
use crate::rng;

/// Largest circuit size the dense construction accepts.
pub const MAX_QUBITS: usize = 12;

/// The supported gate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    H,
    X,
    Y,
    Z,
    S,
    T,
    RX,
    RY,
    RZ,
    CNOT,
    CZ,
}

impl Gate {
    pub fn n_targets(self) -> usize {
        match self {
            Gate::CNOT | Gate::CZ => 2,
            _ => 1,
        }
    }

    pub fn n_params(self) -> usize {
        match self {
            Gate::RX | Gate::RY | Gate::RZ => 1,
            _ => 0,
        }
    }
}

/// One gate application: which gate, its rotation angles (radians), and the
/// target qubits it acts on. For CNOT/CZ the control comes first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateApp {
    pub gate: Gate,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
    pub targets: Vec<usize>,
}

impl GateApp {
    pub fn single(gate: Gate, target: usize) -> Self {
        Self {
            gate,
            params: Vec::new(),
            targets: vec![target],
        }
    }

    pub fn rotation(gate: Gate, angle: f64, target: usize) -> Self {
        Self {
            gate,
            params: vec![angle],
            targets: vec![target],
        }
    }

    pub fn two(gate: Gate, control: usize, target: usize) -> Self {
        Self {
            gate,
            params: Vec::new(),
            targets: vec![control, target],
        }
    }

    /// Checks arity, parameter count, and target bounds/distinctness.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.targets.len() != self.gate.n_targets() {
            return Err(Error::InvalidGate(format!(
                "{:?} takes {} target(s), got {}",
                self.gate,
                self.gate.n_targets(),
                self.targets.len()
            )));
        }
        if self.params.len() != self.gate.n_params() {
            return Err(Error::InvalidGate(format!(
                "{:?} takes {} parameter(s), got {}",
                self.gate,
                self.gate.n_params(),
                self.params.len()
            )));
        }
        for &t in &self.targets {
            if t >= n_qubits {
                return Err(Error::InvalidGate(format!(
                    "{:?} targets qubit {t} on a {n_qubits}-qubit circuit",
                    self.gate
                )));
            }
        }
        if self.targets.len() == 2 && self.targets[0] == self.targets[1] {
            return Err(Error::InvalidGate(format!(
                "{:?} control and target coincide (qubit {})",
                self.gate, self.targets[0]
            )));
        }
        Ok(())
    }
}

/// An ordered list of gate applications on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub n_qubits: usize,
    pub gates: Vec<GateApp>,
}

impl CircuitSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::InvalidGate("circuit needs at least one qubit".into()));
        }
        if self.n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n: self.n_qubits,
                max: MAX_QUBITS,
            });
        }
        for g in &self.gates {
            g.validate(self.n_qubits)?;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }
}

/// One training sample: an input state and the target output state.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePair {
    pub input: CVector,
    pub output: CVector,
}

impl StatePair {
    /// Checks unit norms and the matching power-of-two dimension.
    pub fn validate(&self) -> Result<()> {
        if self.input.dim() != self.output.dim() {
            return Err(Error::dim(
                "state_pair",
                format!("input dim {} vs output dim {}", self.input.dim(), self.output.dim()),
            ));
        }
        if !self.input.dim().is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "state dimension {} is not a power of two",
                self.input.dim()
            )));
        }
        for (name, v) in [("input", &self.input), ("output", &self.output)] {
            if (v.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidConfig(format!(
                    "{name} state norm {} is not 1",
                    v.norm()
                )));
            }
        }
        Ok(())
    }
}

/// The 2x2 (or 4x4) unitary of a single gate application, in the gate's
/// local qubit ordering (first listed target = most significant local bit).
pub fn gate_matrix(g: &GateApp) -> Result<CMatrix> {
    // Arity/params checked against a large bound; bounds vs a concrete
    // circuit are re-checked during embedding.
    g.validate(usize::MAX - 1)?;
    let m = match g.gate {
        Gate::H => {
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            CMatrix::from_rows(&[&[h, h], &[h, -h]])
        }
        Gate::X => CMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        Gate::Y => CMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]]),
        Gate::Z => CMatrix::diag(&[ONE, -ONE]),
        Gate::S => CMatrix::diag(&[ONE, I]),
        Gate::T => CMatrix::diag(&[ONE, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]),
        Gate::RX => {
            let half = g.params[0] / 2.0;
            let c = Complex64::new(half.cos(), 0.0);
            let s = Complex64::new(0.0, -half.sin());
            CMatrix::from_rows(&[&[c, s], &[s, c]])
        }
        Gate::RY => {
            let half = g.params[0] / 2.0;
            let c = Complex64::new(half.cos(), 0.0);
            let s = Complex64::new(half.sin(), 0.0);
            CMatrix::from_rows(&[&[c, -s], &[s, c]])
        }
        Gate::RZ => {
            let half = g.params[0] / 2.0;
            CMatrix::diag(&[
                Complex64::from_polar(1.0, -half),
                Complex64::from_polar(1.0, half),
            ])
        }
        Gate::CNOT => CMatrix::from_rows(&[
            &[ONE, ZERO, ZERO, ZERO],
            &[ZERO, ONE, ZERO, ZERO],
            &[ZERO, ZERO, ZERO, ONE],
            &[ZERO, ZERO, ONE, ZERO],
        ]),
        Gate::CZ => CMatrix::diag(&[ONE, ONE, ONE, -ONE]),
    };
    Ok(m)
}

/// Embeds one gate application into the full `2^n`-dimensional space.
///
/// Works by explicit basis-index manipulation: for every basis column the
/// target bits are routed through the gate matrix while all other bits pass
/// through unchanged. Equivalent to a Kronecker product conjugated by the
/// permutation that moves the targets into place.
pub fn embed_gate(n_qubits: usize, g: &GateApp) -> Result<CMatrix> {
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n: n_qubits,
            max: MAX_QUBITS,
        });
    }
    g.validate(n_qubits)?;
    let gm = gate_matrix(g)?;
    let dim = 1usize << n_qubits;
    let k = g.targets.len();
    // Bit position (from the LSB) of each target under the big-endian map.
    let shifts: Vec<usize> = g.targets.iter().map(|&t| n_qubits - 1 - t).collect();

    let mut out = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut local_col = 0usize;
        for (pos, &sh) in shifts.iter().enumerate() {
            if (col >> sh) & 1 == 1 {
                local_col |= 1 << (k - 1 - pos);
            }
        }
        for local_row in 0..(1 << k) {
            let amp = gm[(local_row, local_col)];
            if amp == ZERO {
                continue;
            }
            let mut row = col;
            for (pos, &sh) in shifts.iter().enumerate() {
                let bit = (local_row >> (k - 1 - pos)) & 1;
                row = (row & !(1 << sh)) | (bit << sh);
            }
            out[(row, col)] = amp;
        }
    }
    Ok(out)
}

/// Builds the full unitary of a circuit: gates apply in list order, so the
/// result is `U = U_K ... U_2 U_1`.
pub fn circuit_to_unitary(c: &CircuitSpec) -> Result<CMatrix> {
    c.validate()?;
    let mut u = CMatrix::identity(c.dim());
    for g in &c.gates {
        u = embed_gate(c.n_qubits, g)?.matmul(&u)?;
    }
    Ok(u)
}

/// Samples a Haar-direction random state: complex Gaussian amplitudes
/// normalized to unit 2-norm. Deterministic per seed.
pub fn random_state(n_qubits: usize, seed: u64) -> CVector {
    assert!(n_qubits >= 1, "random_state requires n_qubits >= 1");
    let dim = 1usize << n_qubits;
    let mut rng = rng::seeded(seed);
    loop {
        let v = CVector::new((0..dim).map(|_| rng::complex_gaussian(&mut rng)).collect());
        let norm = v.norm();
        if norm > 0.0 {
            return v.scale(Complex64::new(1.0 / norm, 0.0));
        }
    }
}

/// Fidelity `F = |Tr(u_true† · u_learned)| / d`.
///
/// Equals 1 exactly when the two unitaries agree up to a global phase.
pub fn fidelity(u_true: &CMatrix, u_learned: &CMatrix) -> Result<f64> {
    if !u_true.is_square() || u_true.rows() != u_learned.rows() || !u_learned.is_square() {
        return Err(Error::dim(
            "fidelity",
            format!(
                "{}x{} vs {}x{}",
                u_true.rows(),
                u_true.cols(),
                u_learned.rows(),
                u_learned.cols()
            ),
        ));
    }
    let d = u_true.rows() as f64;
    let t = u_true.dagger().matmul(u_learned)?.trace()?;
    Ok(t.norm() / d)
}

/// Squared-Frobenius unitarity defect `||W·W† - I||_F^2`; zero iff unitary.
pub fn unitary_error(w: &CMatrix) -> f64 {
    assert!(w.is_square(), "unitary_error requires a square matrix");
    let n = w.rows();
    let wwd = w.matmul(&w.dagger()).expect("square product");
    (&wwd - &CMatrix::identity(n)).frobenius_norm_sq()
}

/// The 5-qubit benchmark circuit shipped with the default configs: a
/// GHZ-style entangler chain with a T and an extra H mixed in.
pub fn benchmark_circuit() -> CircuitSpec {
    CircuitSpec {
        n_qubits: 5,
        gates: vec![
            GateApp::single(Gate::H, 0),
            GateApp::two(Gate::CNOT, 0, 1),
            GateApp::two(Gate::CNOT, 1, 2),
            GateApp::two(Gate::CNOT, 2, 3),
            GateApp::two(Gate::CNOT, 3, 4),
            GateApp::single(Gate::T, 2),
            GateApp::single(Gate::H, 4),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_unitary;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_mat_close(a: &CMatrix, b: &CMatrix, tol: f64) {
        let d = (a - b).frobenius_norm_sq().sqrt();
        assert!(d <= tol, "matrices differ by {d:e}");
    }

    #[test]
    fn hadamard_matrix_is_definitional() {
        let h = gate_matrix(&GateApp::single(Gate::H, 0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(h[(0, 0)], c(r, 0.0));
        assert_eq!(h[(0, 1)], c(r, 0.0));
        assert_eq!(h[(1, 0)], c(r, 0.0));
        assert_eq!(h[(1, 1)], c(-r, 0.0));
    }

    #[test]
    fn zero_angle_rotations_are_identity() {
        for gate in [Gate::RX, Gate::RY, Gate::RZ] {
            let m = gate_matrix(&GateApp::rotation(gate, 0.0, 0)).unwrap();
            assert_mat_close(&m, &CMatrix::identity(2), 1e-15);
        }
    }

    #[test]
    fn cnot_matrix_is_definitional() {
        let m = gate_matrix(&GateApp::two(Gate::CNOT, 0, 1)).unwrap();
        let expect = CMatrix::from_rows(&[
            &[ONE, ZERO, ZERO, ZERO],
            &[ZERO, ONE, ZERO, ZERO],
            &[ZERO, ZERO, ZERO, ONE],
            &[ZERO, ZERO, ONE, ZERO],
        ]);
        assert_mat_close(&m, &expect, 0.0);
    }

    #[test]
    fn every_gate_matrix_is_unitary() {
        let apps = vec![
            GateApp::single(Gate::H, 0),
            GateApp::single(Gate::X, 0),
            GateApp::single(Gate::Y, 0),
            GateApp::single(Gate::Z, 0),
            GateApp::single(Gate::S, 0),
            GateApp::single(Gate::T, 0),
            GateApp::rotation(Gate::RX, 0.7, 0),
            GateApp::rotation(Gate::RY, -1.3, 0),
            GateApp::rotation(Gate::RZ, 2.9, 0),
            GateApp::two(Gate::CNOT, 0, 1),
            GateApp::two(Gate::CZ, 0, 1),
        ];
        for app in apps {
            let m = gate_matrix(&app).unwrap();
            assert!(
                unitary_error(&m).sqrt() <= 1e-15,
                "{:?} not unitary: {:e}",
                app.gate,
                unitary_error(&m)
            );
        }
    }

    #[test]
    fn gate_validation_rejects_bad_arity() {
        let bad = GateApp {
            gate: Gate::H,
            params: vec![],
            targets: vec![0, 1],
        };
        assert!(matches!(gate_matrix(&bad), Err(Error::InvalidGate(_))));

        let bad = GateApp {
            gate: Gate::RX,
            params: vec![],
            targets: vec![0],
        };
        assert!(matches!(gate_matrix(&bad), Err(Error::InvalidGate(_))));

        let bad = GateApp {
            gate: Gate::CNOT,
            params: vec![],
            targets: vec![1, 1],
        };
        assert!(matches!(gate_matrix(&bad), Err(Error::InvalidGate(_))));
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = CircuitSpec {
            n_qubits: 2,
            gates: vec![],
        };
        assert_mat_close(&circuit_to_unitary(&c).unwrap(), &CMatrix::identity(4), 0.0);
    }

    #[test]
    fn single_hadamard_circuit() {
        let c = CircuitSpec {
            n_qubits: 1,
            gates: vec![GateApp::single(Gate::H, 0)],
        };
        let u = circuit_to_unitary(&c).unwrap();
        let h = gate_matrix(&GateApp::single(Gate::H, 0)).unwrap();
        assert_mat_close(&u, &h, 1e-15);
    }

    #[test]
    fn bell_circuit_entangles_zero_state() {
        // Hand state-vector simulation: H on the most significant qubit sends
        // |00> to (|00>+|10>)/sqrt(2); CNOT(0,1) flips |10> to |11>.
        let bell = CircuitSpec {
            n_qubits: 2,
            gates: vec![GateApp::single(Gate::H, 0), GateApp::two(Gate::CNOT, 0, 1)],
        };
        let u = circuit_to_unitary(&bell).unwrap();
        let out = u.matvec(&CVector::basis(4, 0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.entries()[0] - c(r, 0.0)).norm() <= 1e-12);
        assert!(out.entries()[1].norm() <= 1e-12);
        assert!(out.entries()[2].norm() <= 1e-12);
        assert!((out.entries()[3] - c(r, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn nonadjacent_cnot_matches_truth_table_oracle() {
        // Oracle: big-endian CNOT(control=q0, target=q2) on 3 qubits flips
        // the last bit whenever the first is set.
        let app = GateApp::two(Gate::CNOT, 0, 2);
        let u = embed_gate(3, &app).unwrap();
        for basis in 0..8usize {
            let b0 = (basis >> 2) & 1;
            let b2 = basis & 1;
            let expect = if b0 == 1 { (basis & !1) | (1 - b2) } else { basis };
            let out = u.matvec(&CVector::basis(8, basis)).unwrap();
            for (i, amp) in out.entries().iter().enumerate() {
                let want = if i == expect { 1.0 } else { 0.0 };
                assert!(
                    (amp.norm() - want).abs() <= 1e-14,
                    "basis {basis}: amplitude {i} was {amp}"
                );
            }
        }
    }

    #[test]
    fn embedding_matches_kronecker_at_the_ends() {
        let h = gate_matrix(&GateApp::single(Gate::H, 0)).unwrap();
        let i4 = CMatrix::identity(4);
        let top = embed_gate(3, &GateApp::single(Gate::H, 0)).unwrap();
        assert_mat_close(&top, &h.kron(&i4), 1e-15);
        let bottom = embed_gate(3, &GateApp::single(Gate::H, 2)).unwrap();
        assert_mat_close(&bottom, &i4.kron(&h), 1e-15);
    }

    #[test]
    fn circuits_compose_by_matrix_product() {
        let c1 = CircuitSpec {
            n_qubits: 2,
            gates: vec![GateApp::single(Gate::H, 0), GateApp::two(Gate::CNOT, 0, 1)],
        };
        let c2 = CircuitSpec {
            n_qubits: 2,
            gates: vec![GateApp::single(Gate::S, 1), GateApp::two(Gate::CZ, 1, 0)],
        };
        let mut chained = c1.clone();
        chained.gates.extend(c2.gates.iter().cloned());
        let u1 = circuit_to_unitary(&c1).unwrap();
        let u2 = circuit_to_unitary(&c2).unwrap();
        let u = circuit_to_unitary(&chained).unwrap();
        assert_mat_close(&u, &u2.matmul(&u1).unwrap(), 1e-10);
    }

    #[test]
    fn circuit_unitaries_stay_unitary() {
        let c = benchmark_circuit();
        let u = circuit_to_unitary(&c).unwrap();
        assert!(unitary_error(&u) <= 1e-12);
    }

    #[test]
    fn random_circuits_stay_unitary() {
        // Seeded random circuits over the full gate set, including
        // non-adjacent two-qubit gates.
        let mut rng = crate::rng::seeded(77);
        use rand::Rng;
        for n_qubits in 1..=4usize {
            for _ in 0..5 {
                let gates = (0..12)
                    .map(|_| {
                        let angle = rng.random_range(-3.0..3.0);
                        let t = rng.random_range(0..n_qubits);
                        match rng.random_range(0..11) {
                            0 => GateApp::single(Gate::H, t),
                            1 => GateApp::single(Gate::X, t),
                            2 => GateApp::single(Gate::Y, t),
                            3 => GateApp::single(Gate::Z, t),
                            4 => GateApp::single(Gate::S, t),
                            5 => GateApp::single(Gate::T, t),
                            6 => GateApp::rotation(Gate::RX, angle, t),
                            7 => GateApp::rotation(Gate::RY, angle, t),
                            8 => GateApp::rotation(Gate::RZ, angle, t),
                            k if n_qubits >= 2 => {
                                let other = (t + 1 + rng.random_range(0..n_qubits - 1)) % n_qubits;
                                if k == 9 {
                                    GateApp::two(Gate::CNOT, t, other)
                                } else {
                                    GateApp::two(Gate::CZ, t, other)
                                }
                            }
                            _ => GateApp::single(Gate::H, t),
                        }
                    })
                    .collect();
                let c = CircuitSpec { n_qubits, gates };
                let u = circuit_to_unitary(&c).unwrap();
                assert!(
                    unitary_error(&u) <= 1e-12,
                    "n={n_qubits}: {:e}",
                    unitary_error(&u)
                );
            }
        }
    }

    #[test]
    fn oversized_circuits_are_rejected() {
        let c = CircuitSpec {
            n_qubits: 13,
            gates: vec![],
        };
        assert!(matches!(
            circuit_to_unitary(&c),
            Err(Error::TooManyQubits { n: 13, .. })
        ));
    }

    #[test]
    fn random_state_is_normalized_and_deterministic() {
        let v = random_state(3, 5);
        assert_eq!(v.dim(), 8);
        assert!((v.norm() - 1.0).abs() <= 1e-12);
        assert_eq!(v, random_state(3, 5));
        assert_ne!(v, random_state(3, 6));
        assert_eq!(random_state(1, 0).dim(), 2);
    }

    #[test]
    fn fidelity_identity_and_phase_invariance() {
        let u = haar_unitary(4, 21);
        assert!((fidelity(&u, &u).unwrap() - 1.0).abs() <= 1e-12);
        let phased = u.scale(Complex64::from_polar(1.0, std::f64::consts::PI / 7.0));
        assert!((fidelity(&u, &phased).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn fidelity_of_orthogonal_traces_is_zero() {
        let a = CMatrix::identity(2);
        let b = CMatrix::diag(&[ONE, -ONE]);
        assert!(fidelity(&a, &b).unwrap().abs() <= 1e-15);
    }

    #[test]
    fn fidelity_is_symmetric_and_cyclic() {
        for seed in 0..8u64 {
            let u = haar_unitary(4, 100 + seed);
            let v = haar_unitary(4, 200 + seed);
            let f_uv = fidelity(&u, &v).unwrap();
            let f_vu = fidelity(&v, &u).unwrap();
            assert!((f_uv - f_vu).abs() <= 1e-12);

            let vu = v.matmul(&u).unwrap();
            let f_shift = fidelity(&u, &vu).unwrap();
            let f_iv = fidelity(&CMatrix::identity(4), &v).unwrap();
            assert!((f_shift - f_iv).abs() <= 1e-10);
        }
    }

    #[test]
    fn fidelity_dimension_mismatch_errors() {
        let a = CMatrix::identity(2);
        let b = CMatrix::identity(4);
        assert!(fidelity(&a, &b).is_err());
    }

    #[test]
    fn unitary_error_examples() {
        assert!(unitary_error(&haar_unitary(4, 3)) <= 1e-12);
        // W = 2I: WW† - I = 3I, squared Frobenius norm 9 * 2.
        let w = CMatrix::identity(2).scale_re(2.0);
        assert!((unitary_error(&w) - 18.0).abs() <= 1e-12);
        // W = 0: defect is ||-I||_F^2 = 2.
        assert!((unitary_error(&CMatrix::zeros(2, 2)) - 2.0).abs() <= 1e-15);
    }

    #[test]
    fn state_pair_validation() {
        let good = StatePair {
            input: CVector::basis(4, 0),
            output: CVector::basis(4, 3),
        };
        good.validate().unwrap();

        let bad_norm = StatePair {
            input: CVector::basis(4, 0).scale(c(2.0, 0.0)),
            output: CVector::basis(4, 3),
        };
        assert!(bad_norm.validate().is_err());

        let bad_dim = StatePair {
            input: CVector::basis(4, 0),
            output: CVector::basis(8, 0),
        };
        assert!(bad_dim.validate().is_err());
    }

    #[test]
    fn circuit_spec_round_trips_through_json() {
        let c = benchmark_circuit();
        let text = serde_json::to_string_pretty(&c).unwrap();
        let back: CircuitSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(text.contains("\"CNOT\""));
    }
}
