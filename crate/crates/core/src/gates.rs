//! Clifford gates acting in place on a [`QfeState`]. Each gate keeps the
//! global phase exact.

use crate::error::QfeError;
use crate::state::QfeState;

/// A gate name understood by [`QfeState::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    S(usize),
    Sdg(usize),
    Cz(usize, usize),
    Cx(usize, usize),
    Cy(usize, usize),
}

impl QfeState {
    pub fn apply(&mut self, gate: Gate) -> Result<(), QfeError> {
        match gate {
            Gate::X(j) => self.apply_x(j),
            Gate::Y(j) => self.apply_y(j),
            Gate::Z(j) => self.apply_z(j),
            Gate::H(j) => self.apply_h(j),
            Gate::S(j) => self.apply_s(j),
            Gate::Sdg(j) => self.apply_sdg(j),
            Gate::Cz(j, k) => self.apply_cz(j, k),
            Gate::Cx(h, j) => self.apply_cx(h, j),
            Gate::Cy(h, j) => self.apply_cy(h, j),
        }
    }

    fn check_pair(&self, j: usize, k: usize) -> Result<(), QfeError> {
        self.check_qubit(j)?;
        self.check_qubit(k)?;
        if j == k {
            return Err(QfeError::SameQubit(j));
        }
        Ok(())
    }

    pub fn apply_x(&mut self, j: usize) -> Result<(), QfeError> {
        self.check_qubit(j)?;
        self.b[j] ^= true;
        self.scalar_touches.bump(1);
        Ok(())
    }

    pub fn apply_z(&mut self, j: usize) -> Result<(), QfeError> {
        self.check_qubit(j)?;
        if self.b[j] {
            self.bump_g(4);
        }
        for k in self.a.row_vec(j) {
            let d = self.q.diag(k);
            self.q.set_diag(k, (d + 2) % 4);
        }
        Ok(())
    }

    pub fn apply_y(&mut self, j: usize) -> Result<(), QfeError> {
        self.check_qubit(j)?;
        self.bump_g(2);
        self.apply_z(j)?;
        self.apply_x(j)
    }

    /// Adds `coef` times the outer product of the index set `at` with itself.
    pub(crate) fn add_outer(&mut self, at: &[usize], coef: i32) {
        for (i, &h) in at.iter().enumerate() {
            self.q.add_diag(h, coef);
            for &l in &at[i + 1..] {
                self.q.add(h, l, coef);
            }
        }
    }

    pub fn apply_s(&mut self, j: usize) -> Result<(), QfeError> {
        self.check_qubit(j)?;
        let at = self.a.row_vec(j);
        let bj = self.b[j];
        self.add_outer(&at, if bj { -1 } else { 1 });
        for &k in &at {
            self.reduce_gram_row_col(k);
        }
        if bj {
            self.bump_g(2);
        }
        Ok(())
    }

    pub fn apply_sdg(&mut self, j: usize) -> Result<(), QfeError> {
        for _ in 0..3 {
            self.apply_s(j)?;
        }
        Ok(())
    }

    pub fn apply_cz(&mut self, j: usize, k: usize) -> Result<(), QfeError> {
        self.check_pair(j, k)?;
        let aj = self.a.row_vec(j);
        let ak = self.a.row_vec(k);
        let (bj, bk) = (self.b[j], self.b[k]);
        for &h in &aj {
            for &l in &ak {
                if h == l {
                    self.q.add_diag(h, 2);
                } else {
                    self.q.add(h, l, 1);
                }
            }
        }
        if bk {
            for &h in &aj {
                self.q.add_diag(h, 2);
            }
        }
        if bj {
            for &h in &ak {
                self.q.add_diag(h, 2);
            }
        }
        let mut touched = aj;
        touched.extend(ak);
        touched.sort_unstable();
        touched.dedup();
        for h in touched {
            self.reduce_gram_row_col(h);
        }
        if bj && bk {
            self.bump_g(4);
        }
        Ok(())
    }

    /// Controlled-X with control `h` and target `j`.
    pub fn apply_cx(&mut self, h: usize, j: usize) -> Result<(), QfeError> {
        self.check_pair(h, j)?;
        let c = self.principal_col_of(j);
        for k in self.a.row_vec(h) {
            self.a.toggle(j, k);
        }
        if self.b[h] {
            self.b[j] ^= true;
        }
        self.scalar_touches.bump(1);
        if let Some(c) = c {
            self.reselect_principal_row(None, c);
        }
        Ok(())
    }

    /// Controlled-Y with control `h` and target `j`, as `S_h CX_hj CZ_hj`.
    pub fn apply_cy(&mut self, h: usize, j: usize) -> Result<(), QfeError> {
        self.check_pair(h, j)?;
        self.apply_cz(h, j)?;
        self.apply_cx(h, j)?;
        self.apply_s(h)
    }

    pub fn apply_h(&mut self, j: usize) -> Result<(), QfeError> {
        self.check_qubit(j)?;
        let mut c = self.principal_col_of(j);
        if let Some(col) = c {
            self.reselect_principal_row(Some(j), col);
            if self.p[col] != j {
                c = None;
            }
        }
        let at = self.a.clear_row(j);
        let new = self.a.push_col();
        self.a.toggle(j, new);
        self.p.push(j);
        let qn = self.q.push_dim();
        for k in at {
            self.q.set(k, qn, 1);
        }
        if self.b[j] {
            self.q.set_diag(qn, 2);
            self.b[j] = false;
        }
        self.scalar_touches.bump(1);
        if let Some(col) = c {
            self.zero_column_elim(col)?;
        }
        Ok(())
    }
}
