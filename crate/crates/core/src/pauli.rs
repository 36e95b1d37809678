//! Measurement of multi-qubit Pauli observables through an ancilla.

use std::fmt;

use crate::error::QfeError;
use crate::measure::{Basis, BitSource, ConstBit};
use crate::state::QfeState;

/// A product of single-qubit Paulis on distinct qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    terms: Vec<(usize, Basis)>,
}

impl PauliString {
    pub fn new(terms: Vec<(usize, Basis)>) -> Result<Self, QfeError> {
        if terms.is_empty() {
            return Err(QfeError::EmptyObservable);
        }
        let mut seen: Vec<usize> = terms.iter().map(|t| t.0).collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(QfeError::DuplicateQubit(w[0]));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(usize, Basis)] {
        &self.terms
    }

    pub fn weight(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.terms.iter().any(|t| t.0 == q)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, letter)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter:?}{q}")?;
        }
        Ok(())
    }
}

impl QfeState {
    /// Measures `pauli` using `ancilla`, which must be in a Z basis state
    /// and outside the support. The ancilla is returned to its initial
    /// basis state. Outcome `0` is the `+1` eigenvalue.
    pub fn measure_pauli<R: BitSource + ?Sized>(
        &mut self,
        pauli: &PauliString,
        ancilla: usize,
        rng: &mut R,
    ) -> Result<bool, QfeError> {
        self.check_qubit(ancilla)?;
        for &(q, _) in pauli.terms() {
            self.check_qubit(q)?;
        }
        if pauli.contains(ancilla) {
            return Err(QfeError::AncillaInSupport(ancilla));
        }
        if self.a.row_count(ancilla) != 0 {
            return Err(QfeError::AncillaNotClean(ancilla));
        }
        let b0 = self.b[ancilla];
        if b0 {
            self.apply_x(ancilla)?;
        }
        self.apply_h(ancilla)?;
        for &(q, letter) in pauli.terms() {
            match letter {
                Basis::X => self.apply_cx(ancilla, q)?,
                Basis::Y => self.apply_cy(ancilla, q)?,
                Basis::Z => self.apply_cz(ancilla, q)?,
            }
        }
        let beta = self.measure_x(ancilla, rng)?;
        self.apply_h(ancilla)?;
        if beta != b0 {
            self.apply_x(ancilla)?;
        }
        Ok(beta)
    }

    /// The outcome of measuring `pauli` if it is deterministic.
    pub fn is_deterministic_pauli(
        &self,
        pauli: &PauliString,
        ancilla: usize,
    ) -> Result<Option<bool>, QfeError> {
        let zero = self.clone().measure_pauli(pauli, ancilla, &mut ConstBit(false))?;
        let one = self.clone().measure_pauli(pauli, ancilla, &mut ConstBit(true))?;
        Ok((zero == one).then_some(zero))
    }
}
