//! The quadratic form expansion state.
//!
//! A state on `n` qubits is `(g, A, Q, b, p)` with rank `r`, denoting
//!
//! ```text
//! tau^g 2^(-r/2) sum_{x in {0,1}^r} i^(x^T Q x) |A x + b>
//! ```
//!
//! with `tau = exp(i pi / 4)`. `A` is `n x r` over GF(2), `Q` is a symmetric
//! `r x r` integer matrix (diagonal mod 4, off-diagonal mod 2), and `p(c)` is
//! the principal row of column `c`: row `p(c)` of `A` is the unit vector
//! `e_c`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::QfeError;
use crate::sparse::{SparseBinaryMatrix, SparseGramMatrix};
use crate::touch::TouchCounter;

/// Default cap on the rank for [`QfeState::expand_amplitudes`].
pub const DEFAULT_EXPANSION_CAP: usize = 22;
/// Largest register [`QfeState::expand_amplitudes`] will write out densely.
pub const MAX_DENSE_QUBITS: usize = 26;

/// `tau^k` for `tau = exp(i pi / 4)`, computed from an exact table.
pub fn tau_pow(k: i64) -> Complex64 {
    let s = FRAC_1_SQRT_2;
    match k.rem_euclid(8) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(s, s),
        2 => Complex64::new(0.0, 1.0),
        3 => Complex64::new(-s, s),
        4 => Complex64::new(-1.0, 0.0),
        5 => Complex64::new(-s, -s),
        6 => Complex64::new(0.0, -1.0),
        _ => Complex64::new(s, -s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Dimensions,
    Mirror,
    Symmetry,
    Reduction,
    Principal,
}

/// A broken representation invariant, reported by [`QfeState::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

impl std::error::Error for Violation {}

fn violation(kind: ViolationKind, detail: impl Into<String>) -> Violation {
    Violation {
        kind,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone)]
pub struct QfeState {
    pub(crate) n: usize,
    pub(crate) g: u8,
    pub(crate) a: SparseBinaryMatrix,
    pub(crate) q: SparseGramMatrix,
    pub(crate) b: Vec<bool>,
    pub(crate) p: Vec<usize>,
    pub(crate) scalar_touches: TouchCounter,
    expansion_cap: usize,
}

impl QfeState {
    /// The basis state `|0...0>` on `n` qubits.
    pub fn new(n: usize) -> Result<Self, QfeError> {
        if n == 0 {
            return Err(QfeError::EmptyRegister);
        }
        Ok(Self {
            n,
            g: 0,
            a: SparseBinaryMatrix::new(n, 0),
            q: SparseGramMatrix::new(0),
            b: vec![false; n],
            p: Vec::new(),
            scalar_touches: TouchCounter::new(),
            expansion_cap: DEFAULT_EXPANSION_CAP,
        })
    }

    /// The basis state `|bits>`, with `bits[j]` the value of qubit `j`.
    pub fn basis(bits: &[bool]) -> Result<Self, QfeError> {
        let mut s = Self::new(bits.len())?;
        s.b.copy_from_slice(bits);
        Ok(s)
    }

    /// Builds a state from explicit parts and checks every invariant.
    pub fn from_parts(
        g: u8,
        a: SparseBinaryMatrix,
        q: SparseGramMatrix,
        b: Vec<bool>,
        p: Vec<usize>,
    ) -> Result<Self, Violation> {
        let s = Self {
            n: b.len(),
            g,
            a,
            q,
            b,
            p,
            scalar_touches: TouchCounter::new(),
            expansion_cap: DEFAULT_EXPANSION_CAP,
        };
        if s.n == 0 {
            return Err(violation(ViolationKind::Dimensions, "zero qubits"));
        }
        s.validate()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.p.len()
    }

    /// Global phase exponent `g`, in `0..8`.
    pub fn phase(&self) -> u8 {
        self.g
    }

    pub fn a(&self) -> &SparseBinaryMatrix {
        &self.a
    }

    pub fn q(&self) -> &SparseGramMatrix {
        &self.q
    }

    pub fn b(&self) -> &[bool] {
        &self.b
    }

    pub fn principal_rows(&self) -> &[usize] {
        &self.p
    }

    pub fn touches(&self) -> u64 {
        self.a.touches().get() + self.q.touches().get() + self.scalar_touches.get()
    }

    pub fn reset_touches(&self) {
        self.a.touches().reset();
        self.q.touches().reset();
        self.scalar_touches.reset();
    }

    pub fn expansion_cap(&self) -> usize {
        self.expansion_cap
    }

    pub fn set_expansion_cap(&mut self, cap: usize) {
        self.expansion_cap = cap;
    }

    /// Multiplies the state by `tau^k`. Exposed for fault-injection checks.
    #[doc(hidden)]
    pub fn add_phase(&mut self, k: i64) {
        self.bump_g(k);
    }

    pub(crate) fn bump_g(&mut self, k: i64) {
        self.scalar_touches.bump(1);
        self.g = (self.g as i64 + k).rem_euclid(8) as u8;
    }

    pub(crate) fn check_qubit(&self, j: usize) -> Result<(), QfeError> {
        if j < self.n {
            Ok(())
        } else {
            Err(QfeError::QubitOutOfRange {
                index: j,
                n: self.n,
            })
        }
    }

    /// Column whose principal row is `j`, if any. Constant time.
    pub fn principal_col_of(&self, j: usize) -> Option<usize> {
        if self.a.row_count(j) != 1 {
            return None;
        }
        let c = self.a.row_first(j)?;
        self.scalar_touches.bump(1);
        (self.p[c] == j).then_some(c)
    }

    pub fn validate(&self) -> Result<(), Violation> {
        use ViolationKind::*;
        let r = self.p.len();
        if self.a.n_rows() != self.n || self.b.len() != self.n {
            return Err(violation(Dimensions, "A rows or b length differ from n"));
        }
        if self.a.n_cols() != r || self.q.dim() != r {
            return Err(violation(
                Dimensions,
                format!(
                    "rank mismatch: A has {} columns, Q has dim {}, p has {}",
                    self.a.n_cols(),
                    self.q.dim(),
                    r
                ),
            ));
        }
        if self.g >= 8 {
            return Err(violation(Reduction, format!("g = {} not reduced mod 8", self.g)));
        }
        self.a.check_mirror().map_err(|e| violation(Mirror, e))?;
        self.q.check_symmetry().map_err(|e| violation(Symmetry, e))?;
        for (j, k, v) in self.q.nonzeros() {
            if j == k && !(0..4).contains(&v) {
                return Err(violation(Reduction, format!("Q[{j},{j}] = {v} not in 0..4")));
            }
            if j != k && v != 1 {
                return Err(violation(Reduction, format!("Q[{j},{k}] = {v} not reduced mod 2")));
            }
        }
        for (c, &j) in self.p.iter().enumerate() {
            if j >= self.n {
                return Err(violation(Principal, format!("p({c}) = {j} out of range")));
            }
            let row = self.a.row_vec(j);
            if row != [c] {
                return Err(violation(
                    Principal,
                    format!("principal row not unit: row p({c}) = {j} is {row:?}"),
                ));
            }
        }
        Ok(())
    }

    /// Dense amplitude vector, indexed with qubit 0 as the least significant
    /// bit. Enumerates `x` in Gray-code order.
    pub fn expand_amplitudes(&self) -> Result<Vec<Complex64>, QfeError> {
        let r = self.rank();
        if r > self.expansion_cap {
            return Err(QfeError::ExpansionCap {
                required: r,
                cap: self.expansion_cap,
            });
        }
        if self.n > MAX_DENSE_QUBITS {
            return Err(QfeError::ExpansionCap {
                required: self.n,
                cap: MAX_DENSE_QUBITS,
            });
        }
        let col_mask: Vec<usize> = (0..r)
            .map(|c| self.a.col(c).fold(0usize, |m, j| m | (1 << j)))
            .collect();
        let adj: Vec<Vec<(usize, i32)>> = (0..r).map(|c| self.q.offdiag_vec(c)).collect();
        let diag: Vec<i32> = (0..r).map(|c| self.q.diag(c)).collect();

        let mut out = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        let scale = 0.5f64.powf(r as f64 / 2.0);
        let mut v: usize = self
            .b
            .iter()
            .enumerate()
            .fold(0, |m, (j, &bit)| m | (usize::from(bit) << j));
        let mut x: u64 = 0;
        let mut e: i64 = 0;
        out[v] += tau_pow(self.g as i64) * scale;
        for i in 1u64..(1u64 << r) {
            let k = i.trailing_zeros() as usize;
            let mut s = diag[k] as i64;
            for &(h, w) in &adj[k] {
                if x >> h & 1 == 1 {
                    s += 2 * w as i64;
                }
            }
            if x >> k & 1 == 0 {
                e += s;
            } else {
                e -= s;
            }
            x ^= 1 << k;
            v ^= col_mask[k];
            out[v] += tau_pow(self.g as i64 + 2 * e) * scale;
        }
        Ok(out)
    }

    /// Line-oriented text dump with a stable ordering.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n {}", self.n);
        let _ = writeln!(s, "r {}", self.rank());
        let _ = writeln!(s, "g {}", self.g);
        let bits: String = self.b.iter().map(|&x| if x { '1' } else { '0' }).collect();
        let _ = writeln!(s, "b {bits}");
        s.push('A');
        for (j, k) in self.a.nonzeros() {
            let _ = write!(s, " ({j},{k})");
        }
        s.push_str("\nQ");
        for (j, k, v) in self.q.nonzeros() {
            let _ = write!(s, " ({j},{k},{v})");
        }
        s.push_str("\np");
        for c in &self.p {
            let _ = write!(s, " {c}");
        }
        s.push('\n');
        s
    }
}

impl PartialEq for QfeState {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.g == other.g
            && self.a == other.a
            && self.q == other.q
            && self.b == other.b
            && self.p == other.p
    }
}

impl Eq for QfeState {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_expands_to_basis_vector() {
        let s = QfeState::new(3).unwrap();
        let amps = s.expand_amplitudes().unwrap();
        assert_eq!(amps.len(), 8);
        assert_eq!(amps[0], Complex64::new(1.0, 0.0));
        assert!(amps[1..].iter().all(|z| z.norm() == 0.0));
        s.validate().unwrap();
    }

    #[test]
    fn basis_state_index_is_little_endian() {
        let s = QfeState::basis(&[false, true, true]).unwrap();
        let amps = s.expand_amplitudes().unwrap();
        assert_eq!(amps[0b110].re, 1.0);
    }

    #[test]
    fn empty_register_rejected() {
        assert_eq!(QfeState::new(0).unwrap_err(), QfeError::EmptyRegister);
    }

    #[test]
    fn tau_table_matches_polar() {
        for k in -9..9 {
            let z = Complex64::from_polar(1.0, k as f64 * std::f64::consts::FRAC_PI_4);
            assert!((tau_pow(k) - z).norm() < 1e-15);
        }
    }

    #[test]
    fn from_parts_detects_bad_principal_row() {
        let mut a = SparseBinaryMatrix::identity(2);
        a.toggle(0, 1);
        let err =
            QfeState::from_parts(0, a, SparseGramMatrix::new(2), vec![false; 2], vec![0, 1])
                .unwrap_err();
        assert_eq!(err.kind, ViolationKind::Principal);
    }

    #[test]
    fn from_parts_detects_unreduced_q() {
        let a = SparseBinaryMatrix::identity(2);
        let mut q = SparseGramMatrix::new(2);
        q.set(0, 1, 2);
        let err = QfeState::from_parts(0, a, q, vec![false; 2], vec![0, 1]).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Reduction);
    }

    #[test]
    fn expansion_cap_enforced() {
        let a = SparseBinaryMatrix::identity(3);
        let mut s =
            QfeState::from_parts(0, a, SparseGramMatrix::new(3), vec![false; 3], vec![0, 1, 2])
                .unwrap();
        s.set_expansion_cap(2);
        assert_eq!(
            s.expand_amplitudes().unwrap_err(),
            QfeError::ExpansionCap { required: 3, cap: 2 }
        );
    }

    #[test]
    fn dump_format() {
        let s = QfeState::basis(&[true, false]).unwrap();
        assert_eq!(s.dump(), "n 2\nr 0\ng 0\nb 10\nA\nQ\np\n");
    }
}
