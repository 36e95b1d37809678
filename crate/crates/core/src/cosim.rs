//! Step-by-step comparison of the sparse simulator against the dense oracle.

use crate::circuit::{Circuit, Instruction};
use crate::error::QfeError;
use crate::measure::{BitSource, RngStream};
use crate::oracle::DenseState;
use crate::state::QfeState;

pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    /// Index of the offending instruction.
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub steps: usize,
    pub max_deviation: f64,
    pub outcomes: Vec<bool>,
    pub failure: Option<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Perturbs the sparse state's phase after the first instruction, to
    /// confirm the checker notices.
    pub inject_fault: bool,
    /// Run `validate()` after every instruction.
    pub validate: bool,
}

/// Runs `circuit` on both simulators, feeding the sparse simulator's
/// outcomes to the oracle, and compares amplitudes after every step.
pub fn cosimulate(
    circuit: &Circuit,
    seed: u64,
    opts: CheckOptions,
) -> Result<CheckReport, QfeError> {
    cosimulate_with(circuit, &mut RngStream::from_seed(seed), opts)
}

pub fn cosimulate_with<R: BitSource + ?Sized>(
    circuit: &Circuit,
    rng: &mut R,
    opts: CheckOptions,
) -> Result<CheckReport, QfeError> {
    let mut qfe = QfeState::new(circuit.n)?;
    let mut dense = DenseState::new(circuit.n)?;
    let mut report = CheckReport::default();
    for (step, ins) in circuit.instructions.iter().enumerate() {
        report.steps = step + 1;
        let oracle_res = match ins {
            Instruction::Gate(g) => {
                qfe.apply(*g)?;
                dense.apply(*g).map(|_| ())
            }
            Instruction::Measure { qubit, basis } => {
                let beta = qfe.measure(*qubit, *basis, rng)?;
                report.outcomes.push(beta);
                dense.measure_forced(*qubit, *basis, beta).map(|_| ())
            }
            Instruction::Mpp { ancilla, pauli } => {
                let beta = qfe.measure_pauli(pauli, *ancilla, rng)?;
                report.outcomes.push(beta);
                dense.measure_pauli_forced(pauli.terms(), beta).map(|_| ())
            }
        };
        if let Err(e) = oracle_res {
            report.failure = Some(Failure {
                step,
                reason: format!("oracle rejected outcome: {e}"),
            });
            return Ok(report);
        }
        if opts.inject_fault && step == 0 {
            qfe.add_phase(1);
        }
        if opts.validate {
            if let Err(v) = qfe.validate() {
                report.failure = Some(Failure {
                    step,
                    reason: format!("invariant violated: {v}"),
                });
                return Ok(report);
            }
        }
        let dev = dense.max_deviation(&qfe)?;
        report.max_deviation = report.max_deviation.max(dev);
        if dev > CHECK_TOLERANCE {
            report.failure = Some(Failure {
                step,
                reason: format!("amplitude deviation {dev:e}"),
            });
            return Ok(report);
        }
    }
    Ok(report)
}
