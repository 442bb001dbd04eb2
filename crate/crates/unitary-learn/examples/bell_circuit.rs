//! Build circuits, turn them into unitaries, and push states through.
//!
//! Qubit ordering is big-endian: qubit 0 is the most significant bit of the
//! basis index.

use unitary_learn::linalg::CVector;
use unitary_learn::model::forward;
use unitary_learn::quantum::{circuit_to_unitary, Gate, GateApp};
use unitary_learn::CircuitSpec;

fn print_state(label: &str, v: &CVector) {
    let bits = v.dim().trailing_zeros() as usize;
    println!("{label}:");
    for (i, amp) in v.entries().iter().enumerate() {
        if amp.norm() > 1e-12 {
            println!("  |{i:0bits$b}>  {:+.6} {:+.6}i", amp.re, amp.im);
        }
    }
}

fn main() {
    let bell = CircuitSpec {
        n_qubits: 2,
        gates: vec![GateApp::single(Gate::H, 0), GateApp::two(Gate::CNOT, 0, 1)],
    };
    let u = circuit_to_unitary(&bell).unwrap();
    println!("Bell circuit unitary is {}x{}", u.rows(), u.cols());

    let zero = CVector::basis(4, 0);
    let out = forward(&u, &zero).unwrap();
    print_state("U |00>", &out);

    let one_zero = CVector::basis(4, 2); // |10>: qubit 0 set
    let out = forward(&u, &one_zero).unwrap();
    print_state("\nU |10>", &out);

    // A rotation circuit: RZ(pi/3) then RX(pi/5) on the same qubit.
    let rot = CircuitSpec {
        n_qubits: 1,
        gates: vec![
            GateApp::rotation(Gate::RZ, std::f64::consts::PI / 3.0, 0),
            GateApp::rotation(Gate::RX, std::f64::consts::PI / 5.0, 0),
        ],
    };
    let u = circuit_to_unitary(&rot).unwrap();
    let out = forward(&u, &CVector::basis(2, 0)).unwrap();
    print_state("\nRX(pi/5) RZ(pi/3) |0>", &out);
    println!("output norm: {:.15}", out.norm());
}
