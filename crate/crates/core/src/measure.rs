//! Single-qubit measurements in the Z, X and Y bases.
//!
//! Post-measurement states follow the `sqrt(2)` projection convention: a
//! random outcome `beta` leaves `sqrt(2) P_beta psi`, a deterministic one
//! leaves `psi` unchanged. Outcome `0` is the `+1` eigenvalue.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::QfeError;
use crate::state::QfeState;

/// Source of random outcome bits. One bit is drawn per random outcome.
pub trait BitSource {
    fn next_bit(&mut self) -> bool;
}

impl<T: BitSource + ?Sized> BitSource for &mut T {
    fn next_bit(&mut self) -> bool {
        (**self).next_bit()
    }
}

/// Seeded ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct RngStream(ChaCha8Rng);

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Independent stream for one shot of a run.
    pub fn for_shot(seed: u64, shot: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shot);
        Self(rng)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.random_range(0..n)
    }

    pub fn unit(&mut self) -> f64 {
        self.0.random()
    }
}

impl BitSource for RngStream {
    fn next_bit(&mut self) -> bool {
        self.0.random()
    }
}

/// Always yields the same bit.
#[derive(Debug, Clone, Copy)]
pub struct ConstBit(pub bool);

impl BitSource for ConstBit {
    fn next_bit(&mut self) -> bool {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Y,
    Z,
}

/// `(i^a + i^b) / sqrt(2)` as a power of `tau`, for `b - a` odd.
fn half_sum_phase(a: i64, b: i64) -> i64 {
    let d = (b - a).rem_euclid(4);
    debug_assert!(d % 2 == 1);
    2 * a + if d == 1 { 1 } else { -1 }
}

impl QfeState {
    pub fn measure<R: BitSource + ?Sized>(
        &mut self,
        j: usize,
        basis: Basis,
        rng: &mut R,
    ) -> Result<bool, QfeError> {
        match basis {
            Basis::Z => self.measure_z(j, rng),
            Basis::X => self.measure_xy(j, false, rng),
            Basis::Y => self.measure_xy(j, true, rng),
        }
    }

    pub fn measure_z<R: BitSource + ?Sized>(
        &mut self,
        j: usize,
        rng: &mut R,
    ) -> Result<bool, QfeError> {
        self.check_qubit(j)?;
        if self.a.row_count(j) == 0 {
            self.scalar_touches.bump(1);
            return Ok(self.b[j]);
        }
        let beta = rng.next_bit();
        let mut best: Option<(usize, usize)> = None;
        for k in self.a.row_vec(j) {
            let w = self.a.col_count(k);
            if best.is_none_or(|(_, bw)| w < bw) {
                best = Some((k, w));
            }
        }
        let (k, _) = best.expect("row is nonzero");
        let last = self.rank() - 1;
        self.reindex_swap_columns(k, last);
        self.make_principal(last, j);
        let z = beta ^ self.b[j];
        self.fix_final_bit(z);
        Ok(beta)
    }

    pub fn measure_x<R: BitSource + ?Sized>(
        &mut self,
        j: usize,
        rng: &mut R,
    ) -> Result<bool, QfeError> {
        self.measure_xy(j, false, rng)
    }

    pub fn measure_y<R: BitSource + ?Sized>(
        &mut self,
        j: usize,
        rng: &mut R,
    ) -> Result<bool, QfeError> {
        self.measure_xy(j, true, rng)
    }

    fn measure_xy<R: BitSource + ?Sized>(
        &mut self,
        j: usize,
        y: bool,
        rng: &mut R,
    ) -> Result<bool, QfeError> {
        self.check_qubit(j)?;
        let mut c = self.principal_col_of(j);
        if let Some(col) = c {
            self.reselect_principal_row(Some(j), col);
            if self.p[col] != j {
                c = None;
            }
        }
        let bj = self.b[j];

        if let Some(col) = c {
            if self.q.offdiag_count(col) == 0 {
                let d = self.q.diag(col) as i64;
                if !y {
                    if d % 2 == 0 {
                        return Ok(d == 2);
                    }
                    let beta = rng.next_bit();
                    let e = (d + 2 * beta as i64) % 4;
                    self.bump_g(if e == 1 { 1 } else { -1 });
                    self.q.set_diag(col, 2 * beta as i32);
                    return Ok(beta);
                }
                if d % 2 == 1 {
                    return Ok((d == 3) ^ bj);
                }
                let beta = rng.next_bit();
                let m = 2 * beta as i64 + 1;
                let b = bj as i64;
                self.bump_g(half_sum_phase(-m * b, d - m * (1 - b)));
                self.q.set_diag(col, m as i32);
                self.b[j] = false;
                self.scalar_touches.bump(1);
                return Ok(beta);
            }
        }

        let beta = rng.next_bit();
        let at = self.a.clear_row(j);
        let new = self.a.push_col();
        self.a.toggle(j, new);
        self.p.push(j);
        let qn = self.q.push_dim();
        if !y {
            if beta {
                for &k in &at {
                    let d = self.q.diag(k);
                    self.q.set_diag(k, (d + 2) % 4);
                }
                self.q.set_diag(qn, 2);
                if bj {
                    self.bump_g(4);
                }
            }
        } else {
            let coef = 2 * bj as i32 + 2 * beta as i32 - 1;
            self.add_outer(&at, coef);
            for &k in &at {
                self.reduce_gram_row_col(k);
            }
            self.q.set_diag(qn, 2 * beta as i32 + 1);
            if bj {
                self.bump_g(-(4 * beta as i64 + 2));
            }
        }
        self.b[j] = false;
        self.scalar_touches.bump(1);
        if let Some(col) = c {
            self.zero_column_elim(col)?;
        }
        Ok(beta)
    }

    /// The outcome of measuring qubit `j` in `basis` if it is deterministic,
    /// read in constant time without modifying the state.
    pub fn peek_deterministic(&self, j: usize, basis: Basis) -> Result<Option<bool>, QfeError> {
        self.check_qubit(j)?;
        if basis == Basis::Z {
            return Ok((self.a.row_count(j) == 0).then_some(self.b[j]));
        }
        if self.a.row_count(j) != 1 {
            return Ok(None);
        }
        let c = self.a.row_first(j).expect("row has one entry");
        if self.a.col_count(c) != 1 || self.q.offdiag_count(c) != 0 {
            return Ok(None);
        }
        let d = self.q.diag(c);
        Ok(match basis {
            Basis::X if d % 2 == 0 => Some(d == 2),
            Basis::Y if d % 2 == 1 => Some((d == 3) ^ self.b[j]),
            _ => None,
        })
    }
}
