//! Many-qubit Z-basis queries: exact marginal probabilities and joint
//! sampling of all qubits outside a given set.

use std::fmt;

use crate::error::QfeError;
use crate::measure::BitSource;
use crate::state::QfeState;

/// An exact probability that is either zero or `2^-k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    log2_den: Option<u32>,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { log2_den: None };
    pub const ONE: Dyadic = Dyadic { log2_den: Some(0) };

    pub fn pow_half(k: u32) -> Self {
        Dyadic { log2_den: Some(k) }
    }

    pub fn is_zero(&self) -> bool {
        self.log2_den.is_none()
    }

    /// `k` such that the value is `2^-k`, or `None` for zero.
    pub fn log2_denominator(&self) -> Option<u32> {
        self.log2_den
    }

    pub fn to_f64(&self) -> f64 {
        match self.log2_den {
            None => 0.0,
            Some(k) => 0.5f64.powi(k as i32),
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log2_den {
            None => f.write_str("0"),
            Some(0) => f.write_str("1"),
            Some(k) if k < 64 => write!(f, "1/{}", 1u64 << k),
            Some(k) => write!(f, "1/2^{k}"),
        }
    }
}

struct Eliminator {
    words: usize,
    pivots: Vec<(usize, Vec<u64>, bool)>,
}

impl Eliminator {
    fn new(r: usize) -> Self {
        Self {
            words: r.div_ceil(64),
            pivots: Vec::new(),
        }
    }

    /// Adds the equation `row . x = rhs`; returns false if it is
    /// inconsistent with those already present.
    fn push(&mut self, mut row: Vec<u64>, mut rhs: bool, s: &QfeState) -> bool {
        for (c, prow, prhs) in &self.pivots {
            s.scalar_touches.bump(1);
            if row[c / 64] >> (c % 64) & 1 == 1 {
                for (w, pw) in row.iter_mut().zip(prow) {
                    *w ^= pw;
                }
                rhs ^= prhs;
                s.scalar_touches.bump(self.words as u64);
            }
        }
        match row.iter().position(|&w| w != 0) {
            None => !rhs,
            Some(i) => {
                let c = i * 64 + row[i].trailing_zeros() as usize;
                self.pivots.push((c, row, rhs));
                true
            }
        }
    }
}

impl QfeState {
    fn row_bits(&self, j: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.rank().div_ceil(64)];
        for k in self.a.row(j) {
            v[k / 64] |= 1 << (k % 64);
        }
        v
    }

    /// Exact probability that qubits `qubits` read `bits` in the Z basis.
    /// The state is not modified.
    pub fn strong_prob_z(&self, qubits: &[usize], bits: &[bool]) -> Result<Dyadic, QfeError> {
        if qubits.len() != bits.len() {
            return Err(QfeError::LengthMismatch {
                expected: qubits.len(),
                got: bits.len(),
            });
        }
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let mut principal = Vec::new();
        let mut other = Vec::new();
        for (&q, &beta) in qubits.iter().zip(bits) {
            let entry = (q, beta ^ self.b[q]);
            if self.principal_col_of(q).is_some() {
                principal.push(entry);
            } else {
                other.push((self.a.row_count(q), entry));
            }
        }
        other.sort_by_key(|&(w, _)| w);
        let mut elim = Eliminator::new(self.rank());
        let order = principal.into_iter().chain(other.into_iter().map(|e| e.1));
        for (q, rhs) in order {
            if !elim.push(self.row_bits(q), rhs, self) {
                return Ok(Dyadic::ZERO);
            }
        }
        Ok(Dyadic::pow_half(elim.pivots.len() as u32))
    }

    /// Qubits not listed in `unmeasured`, in ascending order.
    pub fn complement(&self, unmeasured: &[usize]) -> Result<Vec<usize>, QfeError> {
        let mut keep = vec![false; self.n];
        for &q in unmeasured {
            self.check_qubit(q)?;
            keep[q] = true;
        }
        Ok((0..self.n).filter(|&q| !keep[q]).collect())
    }

    /// Probability that every qubit outside `unmeasured` reads the matching
    /// entry of `bits`, listed in ascending qubit order.
    pub fn strong_prob_all_but(
        &self,
        unmeasured: &[usize],
        bits: &[bool],
    ) -> Result<Dyadic, QfeError> {
        let measured = self.complement(unmeasured)?;
        self.strong_prob_z(&measured, bits)
    }

    /// Samples a joint Z outcome for every qubit outside `unmeasured` and
    /// leaves the post-measurement state. Returns `(qubit, outcome)` in
    /// ascending qubit order.
    pub fn weak_measure_all_but<R: BitSource + ?Sized>(
        &mut self,
        unmeasured: &[usize],
        rng: &mut R,
    ) -> Result<Vec<(usize, bool)>, QfeError> {
        let measured = self.complement(unmeasured)?;
        let mut is_measured = vec![false; self.n];
        for &q in &measured {
            is_measured[q] = true;
        }
        let mut c = 0;
        while c < self.rank() {
            self.scalar_touches.bump(1);
            let j = self.p[c];
            if is_measured[j] {
                let last = self.rank() - 1;
                self.reindex_swap_columns(c, last);
                let beta = rng.next_bit();
                self.fix_final_bit(beta ^ self.b[j]);
            } else {
                c += 1;
            }
        }
        for &q in &measured {
            self.measure_z(q, rng)?;
        }
        Ok(measured.into_iter().map(|q| (q, self.b[q])).collect())
    }
}
