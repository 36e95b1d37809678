#![allow(dead_code)]

use qfesim::workloads::random_circuit;
use qfesim::{Circuit, DenseState, Instruction, QfeState, RngStream};

/// Runs `circuit` on both simulators, feeding sparse outcomes to the oracle.
pub fn prepare(circuit: &Circuit, seed: u64) -> (QfeState, DenseState) {
    let mut rng = RngStream::from_seed(seed);
    let mut s = QfeState::new(circuit.n).unwrap();
    let mut d = DenseState::new(circuit.n).unwrap();
    for ins in &circuit.instructions {
        match ins {
            Instruction::Gate(g) => {
                s.apply(*g).unwrap();
                d.apply(*g).unwrap();
            }
            Instruction::Measure { qubit, basis } => {
                let beta = s.measure(*qubit, *basis, &mut rng).unwrap();
                d.measure_forced(*qubit, *basis, beta).unwrap();
            }
            Instruction::Mpp { ancilla, pauli } => {
                let beta = s.measure_pauli(pauli, *ancilla, &mut rng).unwrap();
                d.measure_pauli_forced(pauli.terms(), beta).unwrap();
            }
        }
    }
    (s, d)
}

/// A random state on `n` qubits with its dense twin.
pub fn random_state(n: usize, seed: u64, measurements: bool) -> (QfeState, DenseState) {
    let mut rng = RngStream::from_seed(seed ^ 0x5eed);
    let c = random_circuit(n, 12 * n, measurements, &mut rng);
    prepare(&c, seed)
}

pub fn deviation(d: &DenseState, s: &QfeState) -> f64 {
    d.max_deviation(s).unwrap()
}

pub fn assert_matches(d: &DenseState, s: &QfeState) {
    let dev = deviation(d, s);
    assert!(dev <= 1e-9, "deviation {dev:e}\n{}", s.dump());
    s.validate().unwrap();
}
