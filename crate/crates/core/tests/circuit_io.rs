use qfesim::workloads::random_circuit;
use qfesim::{parse_circuit, parse_records, Basis, DenseState, Gate, Instruction, RngStream};

#[test]
fn bell_records_always_agree() {
    let c = parse_circuit("QUBITS 2\nH 0\nCX 0 1\nMZ 0\nMZ 1\n").unwrap();
    let recs = c.run(17, 10_000, 4).unwrap();
    assert_eq!(recs.shots.len(), 10_000);
    assert!(recs.shots.iter().all(|s| s[0] == s[1]));
    let ones = recs.shots.iter().filter(|s| s[0]).count();
    assert!((4850..=5150).contains(&ones), "{ones}");
    assert_eq!(parse_records(&recs.to_string()).unwrap(), recs);
}

#[test]
fn mpp_line_parses() {
    let c = parse_circuit("QUBITS 5\nmpp 4 X0 Y1 Z2 X3  # syndrome\n").unwrap();
    let Instruction::Mpp { ancilla, pauli } = &c.instructions[0] else {
        panic!("expected MPP");
    };
    assert_eq!(*ancilla, 4);
    assert_eq!(
        pauli.terms(),
        &[(0, Basis::X), (1, Basis::Y), (2, Basis::Z), (3, Basis::X)]
    );
    assert_eq!(c.instructions[0].to_string(), "MPP 4 X0 Y1 Z2 X3");
    assert_eq!(c.lines, vec![2]);
}

#[test]
fn display_round_trips() {
    for seed in 0..50u64 {
        let c = random_circuit(1 + (seed % 7) as usize, 60, true, &mut RngStream::from_seed(seed));
        let again = parse_circuit(&c.to_string()).unwrap();
        assert_eq!(again.instructions, c.instructions);
        assert_eq!(again.hash(), c.hash());
    }
}

#[test]
fn parse_errors_carry_position() {
    for (text, line) in [
        ("QUBITS 2\nH 0\nCZ 1 1\n", 3),
        ("QUBITS 2\nFOO 0\n", 2),
        ("H 0\n", 1),
        ("QUBITS 2\nQUBITS 3\n", 2),
        ("QUBITS 3\nMPP 2 X0 Z2\n", 2),
    ] {
        let e = parse_circuit(text).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
        assert!(e.to_string().starts_with(&format!("line {line}, column ")));
    }
}

#[test]
fn psi1_expansion_matches_oracle() {
    let c = parse_circuit("QUBITS 2\nH 0\nH 1\nS 1\n").unwrap();
    let s = c.final_state().unwrap();
    let mut d = DenseState::new(2).unwrap();
    for g in [Gate::H(0), Gate::H(1), Gate::S(1)] {
        d.apply(g).unwrap();
    }
    assert!(d.max_deviation(&s).unwrap() <= 1e-12);
}
