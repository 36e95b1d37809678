//! Dense state-vector reference simulator for small registers.
//!
//! Amplitudes are indexed with qubit 0 as the least significant bit. Gates
//! are applied as literal 2x2 and 4x4 matrices; measurements take a forced
//! outcome and use the same `sqrt(2)` projection convention as the sparse
//! simulator, so the two can be compared without phase quotienting.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::QfeError;
use crate::gates::Gate;
use crate::measure::Basis;
use crate::state::QfeState;

pub const ORACLE_MAX_QUBITS: usize = 14;
const PROB_EPS: f64 = 1e-9;

type C = Complex64;
type Mat2 = [[C; 2]; 2];
type Mat4 = [[C; 4]; 4];

const O: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

pub fn gate_x() -> Mat2 {
    [[O, ONE], [ONE, O]]
}

pub fn gate_y() -> Mat2 {
    [[O, -I], [I, O]]
}

pub fn gate_z() -> Mat2 {
    [[ONE, O], [O, -ONE]]
}

pub fn gate_h() -> Mat2 {
    let s = c(FRAC_1_SQRT_2);
    [[s, s], [s, -s]]
}

pub fn gate_s() -> Mat2 {
    [[ONE, O], [O, I]]
}

pub fn gate_sdg() -> Mat2 {
    [[ONE, O], [O, -I]]
}

/// Two-qubit matrices act on the local basis `|x_first x_second>` with
/// index `2 * x_first + x_second`.
pub fn gate_cz() -> Mat4 {
    [
        [ONE, O, O, O],
        [O, ONE, O, O],
        [O, O, ONE, O],
        [O, O, O, -ONE],
    ]
}

pub fn gate_cx() -> Mat4 {
    [
        [ONE, O, O, O],
        [O, ONE, O, O],
        [O, O, O, ONE],
        [O, O, ONE, O],
    ]
}

pub fn gate_cy() -> Mat4 {
    [
        [ONE, O, O, O],
        [O, ONE, O, O],
        [O, O, O, -I],
        [O, O, I, O],
    ]
}

fn basis_projector(basis: Basis, beta: bool) -> Mat2 {
    let sgn = if beta { -1.0 } else { 1.0 };
    let v: [C; 2] = match basis {
        Basis::Z => {
            if beta {
                [O, ONE]
            } else {
                [ONE, O]
            }
        }
        Basis::X => [c(FRAC_1_SQRT_2), c(sgn * FRAC_1_SQRT_2)],
        Basis::Y => [c(FRAC_1_SQRT_2), C::new(0.0, sgn * FRAC_1_SQRT_2)],
    };
    [
        [v[0] * v[0].conj(), v[0] * v[1].conj()],
        [v[1] * v[0].conj(), v[1] * v[1].conj()],
    ]
}

fn pauli_matrix(basis: Basis) -> Mat2 {
    match basis {
        Basis::X => gate_x(),
        Basis::Y => gate_y(),
        Basis::Z => gate_z(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<C>,
}

impl DenseState {
    /// `|0...0>` on `n` qubits.
    pub fn new(n: usize) -> Result<Self, QfeError> {
        if n == 0 {
            return Err(QfeError::EmptyRegister);
        }
        if n > ORACLE_MAX_QUBITS {
            return Err(QfeError::OracleCap {
                n,
                cap: ORACLE_MAX_QUBITS,
            });
        }
        let mut amps = vec![O; 1 << n];
        amps[0] = ONE;
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<C>) -> Result<Self, QfeError> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n || n == 0 {
            return Err(QfeError::LengthMismatch {
                expected: 1 << n.max(1),
                got: amps.len(),
            });
        }
        if n > ORACLE_MAX_QUBITS {
            return Err(QfeError::OracleCap {
                n,
                cap: ORACLE_MAX_QUBITS,
            });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check(&self, j: usize) -> Result<(), QfeError> {
        if j < self.n {
            Ok(())
        } else {
            Err(QfeError::QubitOutOfRange {
                index: j,
                n: self.n,
            })
        }
    }

    pub fn apply_1q(&mut self, j: usize, m: &Mat2) -> Result<(), QfeError> {
        self.check(j)?;
        let bit = 1 << j;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (u, v) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * u + m[0][1] * v;
                self.amps[i | bit] = m[1][0] * u + m[1][1] * v;
            }
        }
        Ok(())
    }

    /// Applies `m` with `first` as the high bit of the local index.
    pub fn apply_2q(&mut self, first: usize, second: usize, m: &Mat4) -> Result<(), QfeError> {
        self.check(first)?;
        self.check(second)?;
        if first == second {
            return Err(QfeError::SameQubit(first));
        }
        let (bf, bs) = (1 << first, 1 << second);
        for i in 0..self.amps.len() {
            if i & (bf | bs) == 0 {
                let idx = [i, i | bs, i | bf, i | bf | bs];
                let v = idx.map(|t| self.amps[t]);
                for (r, &t) in idx.iter().enumerate() {
                    self.amps[t] = (0..4).map(|k| m[r][k] * v[k]).sum();
                }
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, gate: Gate) -> Result<(), QfeError> {
        match gate {
            Gate::X(j) => self.apply_1q(j, &gate_x()),
            Gate::Y(j) => self.apply_1q(j, &gate_y()),
            Gate::Z(j) => self.apply_1q(j, &gate_z()),
            Gate::H(j) => self.apply_1q(j, &gate_h()),
            Gate::S(j) => self.apply_1q(j, &gate_s()),
            Gate::Sdg(j) => self.apply_1q(j, &gate_sdg()),
            Gate::Cz(j, k) => self.apply_2q(j, k, &gate_cz()),
            Gate::Cx(h, j) => self.apply_2q(h, j, &gate_cx()),
            Gate::Cy(h, j) => self.apply_2q(h, j, &gate_cy()),
        }
    }

    /// Applies a projector-valued update `new` if the outcome probability is
    /// 1/2 (scaled by `sqrt(2)`), leaves the state if it is 1, and rejects
    /// anything else.
    fn commit_projection(&mut self, projected: Vec<C>) -> Result<f64, QfeError> {
        let p: f64 = projected.iter().map(|z| z.norm_sqr()).sum();
        if (p - 1.0).abs() < PROB_EPS {
            Ok(1.0)
        } else if (p - 0.5).abs() < PROB_EPS {
            let s = std::f64::consts::SQRT_2;
            self.amps = projected.into_iter().map(|z| z * s).collect();
            Ok(0.5)
        } else if p < PROB_EPS {
            Err(QfeError::ImpossibleOutcome(p))
        } else {
            Err(QfeError::NonStabiliserProbability(p))
        }
    }

    /// Measures qubit `j` in `basis` with forced outcome `beta`; returns the
    /// outcome probability.
    pub fn measure_forced(&mut self, j: usize, basis: Basis, beta: bool) -> Result<f64, QfeError> {
        let mut t = self.clone();
        t.apply_1q(j, &basis_projector(basis, beta))?;
        self.commit_projection(t.amps)
    }

    /// Measures the Pauli product `terms` with forced outcome `beta`.
    pub fn measure_pauli_forced(
        &mut self,
        terms: &[(usize, Basis)],
        beta: bool,
    ) -> Result<f64, QfeError> {
        let mut t = self.clone();
        for &(q, letter) in terms {
            t.apply_1q(q, &pauli_matrix(letter))?;
        }
        let sgn = if beta { -0.5 } else { 0.5 };
        let projected = self
            .amps
            .iter()
            .zip(&t.amps)
            .map(|(u, v)| u * 0.5 + v * sgn)
            .collect();
        self.commit_projection(projected)
    }

    /// Probability that the listed qubits read `bits` in the Z basis.
    pub fn prob_z(&self, qubits: &[usize], bits: &[bool]) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                qubits
                    .iter()
                    .zip(bits)
                    .all(|(&q, &bit)| (i >> q & 1 == 1) == bit)
            })
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }

    /// Largest absolute amplitude difference against a sparse state.
    pub fn max_deviation(&self, other: &QfeState) -> Result<f64, QfeError> {
        if other.n() != self.n {
            return Err(QfeError::LengthMismatch {
                expected: self.n,
                got: other.n(),
            });
        }
        let amps = other.expand_amplitudes()?;
        Ok(self
            .amps
            .iter()
            .zip(&amps)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unitary2(m: &Mat2) -> bool {
        (0..2).all(|i| {
            (0..2).all(|j| {
                let s: C = (0..2).map(|k| m[i][k] * m[j][k].conj()).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                (s - want).norm() < 1e-15
            })
        })
    }

    fn is_unitary4(m: &Mat4) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                let s: C = (0..4).map(|k| m[i][k] * m[j][k].conj()).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                (s - want).norm() < 1e-15
            })
        })
    }

    #[test]
    fn gate_matrices_are_unitary() {
        for m in [gate_x(), gate_y(), gate_z(), gate_h(), gate_s(), gate_sdg()] {
            assert!(is_unitary2(&m));
        }
        for m in [gate_cz(), gate_cx(), gate_cy()] {
            assert!(is_unitary4(&m));
        }
    }

    #[test]
    fn cx_control_is_first_argument() {
        let mut d = DenseState::new(2).unwrap();
        d.apply(Gate::X(1)).unwrap();
        d.apply(Gate::Cx(1, 0)).unwrap();
        assert_eq!(d.amplitudes()[0b11], ONE);
    }

    #[test]
    fn measure_plus_in_x_is_certain() {
        let mut d = DenseState::new(1).unwrap();
        d.apply(Gate::H(0)).unwrap();
        assert_eq!(d.measure_forced(0, Basis::X, false).unwrap(), 1.0);
        assert!(matches!(
            d.measure_forced(0, Basis::X, true),
            Err(QfeError::ImpossibleOutcome(_))
        ));
    }

    #[test]
    fn plus_i_rejects_minus_outcome() {
        let mut d = DenseState::new(1).unwrap();
        d.apply(Gate::H(0)).unwrap();
        d.apply(Gate::S(0)).unwrap();
        assert_eq!(d.measure_forced(0, Basis::Y, false).unwrap(), 1.0);
        assert!(d.measure_forced(0, Basis::Y, true).is_err());
    }

    #[test]
    fn random_outcome_scales_by_sqrt2() {
        let mut d = DenseState::new(1).unwrap();
        d.apply(Gate::H(0)).unwrap();
        assert_eq!(d.measure_forced(0, Basis::Z, true).unwrap(), 0.5);
        assert!((d.amplitudes()[1] - ONE).norm() < 1e-15);
        assert!(d.amplitudes()[0].norm() < 1e-15);
    }

    #[test]
    fn oracle_cap() {
        assert!(matches!(
            DenseState::new(15),
            Err(QfeError::OracleCap { n: 15, cap: 14 })
        ));
    }

    #[test]
    fn non_stabiliser_probability_rejected() {
        let s = 0.6f64.sqrt();
        let t = 0.4f64.sqrt();
        let mut d = DenseState::from_amplitudes(vec![c(s), c(t)]).unwrap();
        assert!(matches!(
            d.measure_forced(0, Basis::Z, false),
            Err(QfeError::NonStabiliserProbability(_))
        ));
    }
}
