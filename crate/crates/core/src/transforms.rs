//! Reindexing transformations. Each one changes `(A, Q, p)` while leaving
//! the denoted vector unchanged, except [`QfeState::fix_final_bit`], which
//! projects onto a fixed value of the last summation variable.

use crate::error::QfeError;
use crate::state::QfeState;

impl QfeState {
    /// Reduces `Q[c][c]` mod 4 and the off-diagonals of row/column `c` mod 2.
    pub fn reduce_gram_row_col(&mut self, c: usize) {
        let d = self.q.diag(c);
        if !(0..4).contains(&d) {
            self.q.set_diag(c, d.rem_euclid(4));
        }
        for (k, v) in self.q.offdiag_vec(c) {
            let m = v.rem_euclid(2);
            if m != v {
                self.q.set(c, k, m);
            }
        }
    }

    /// Substitutes `x_c <- x_c + x_k`, subtracting column `c` from column `k`
    /// of `A` and applying the matching congruence to `Q`.
    pub fn reindex_subt_column(&mut self, k: usize, c: usize) {
        if k == c {
            return;
        }
        for h in self.a.col_vec(c) {
            self.a.toggle(h, k);
        }
        let qkc = self.q.get(k, c);
        let qcc = self.q.diag(c);
        for (h, v) in self.q.offdiag_vec(c) {
            if h != k {
                self.q.add(h, k, -v);
            }
        }
        self.q.add(c, k, -qcc);
        self.q.add_diag(k, qcc - 2 * qkc);
        self.reduce_gram_row_col(k);
    }

    /// Exchanges summation variables `k` and `c`.
    pub fn reindex_swap_columns(&mut self, k: usize, c: usize) {
        if k == c {
            return;
        }
        let col_c = self.a.col_vec(c);
        let col_k = self.a.col_vec(k);
        for h in col_c {
            self.a.toggle(h, c);
            self.a.toggle(h, k);
        }
        for h in col_k {
            self.a.toggle(h, k);
            self.a.toggle(h, c);
        }
        let row_c: Vec<_> = self.q.offdiag(c).filter(|e| e.0 != k).collect();
        let row_k: Vec<_> = self.q.offdiag(k).filter(|e| e.0 != c).collect();
        for &(h, _) in &row_c {
            self.q.set(h, c, 0);
        }
        for &(h, _) in &row_k {
            self.q.set(h, k, 0);
        }
        for (h, v) in row_c {
            self.q.set(h, k, v);
        }
        for (h, v) in row_k {
            self.q.set(h, c, v);
        }
        let (dc, dk) = (self.q.diag(c), self.q.diag(k));
        self.q.set_diag(c, dk);
        self.q.set_diag(k, dc);
        self.p.swap(c, k);
        self.scalar_touches.bump(1);
    }

    /// Makes row `j` the principal row of column `c`. No-op if `A[j][c] = 0`.
    pub fn make_principal(&mut self, c: usize, j: usize) {
        if !self.a.get(j, c) {
            return;
        }
        for k in self.a.row_vec(j) {
            if k != c {
                self.reindex_subt_column(k, c);
            }
        }
        self.p[c] = j;
        self.scalar_touches.bump(1);
    }

    /// Chooses a new principal row for column `c` among rows other than
    /// `excluded`: fewest nonzeros first, then smallest index. Leaves the
    /// state untouched if there is no candidate.
    pub fn reselect_principal_row(&mut self, excluded: Option<usize>, c: usize) {
        let mut best: Option<(usize, usize)> = None;
        for h in self.a.col_vec(c) {
            if Some(h) == excluded {
                continue;
            }
            let w = self.a.row_count(h);
            if best.is_none_or(|(_, bw)| w < bw) {
                best = Some((h, w));
            }
        }
        if let Some((j, _)) = best {
            self.make_principal(c, j);
        }
    }

    /// Fixes the last summation variable to `z` and drops it. The result is
    /// `sqrt(2)` times the corresponding partial sum, so the rank drops by
    /// one with amplitudes rescaled accordingly.
    pub fn fix_final_bit(&mut self, z: bool) {
        let col = self.a.pop_col();
        let (qcol, u) = self.q.pop_dim();
        self.p.pop();
        self.scalar_touches.bump(1);
        if z {
            for (h, v) in qcol {
                let d = self.q.diag(h);
                self.q.set_diag(h, (d + 2 * v).rem_euclid(4));
            }
            for j in col {
                self.b[j] ^= true;
                self.scalar_touches.bump(1);
            }
            self.bump_g(2 * u as i64);
        }
    }

    /// Removes the all-zero column `c` of `A` by summing out its variable.
    /// Fails without modifying the state if the sum would vanish or `c` is
    /// not all-zero.
    pub fn zero_column_elim(&mut self, c: usize) -> Result<(), QfeError> {
        if c >= self.rank() {
            return Err(QfeError::ColumnOutOfRange {
                index: c,
                rank: self.rank(),
            });
        }
        if self.a.col_count(c) != 0 {
            return Err(QfeError::ColumnNotZero(c));
        }
        if self.q.diag(c).rem_euclid(2) == 0 && self.q.offdiag_count(c) == 0 {
            return Err(QfeError::NonNormalised);
        }
        let last = self.rank() - 1;
        self.reindex_swap_columns(c, last);
        self.a.pop_col();
        let (qcol, u) = self.q.pop_dim();
        self.p.pop();
        let u = u.rem_euclid(4);
        let q: Vec<usize> = qcol
            .into_iter()
            .filter(|&(_, v)| v.rem_euclid(2) == 1)
            .map(|(h, _)| h)
            .collect();
        if u % 2 == 1 {
            for (i, &h) in q.iter().enumerate() {
                self.q.add_diag(h, u - 2);
                for &l in &q[i + 1..] {
                    self.q.add(h, l, u - 2);
                }
            }
            for &h in &q {
                self.reduce_gram_row_col(h);
            }
            self.bump_g(2 - u as i64);
        } else {
            let (&l, rest) = q.split_first().expect("checked nonzero above");
            for &k in rest {
                self.reindex_subt_column(k, l);
            }
            let last = self.rank() - 1;
            self.reindex_swap_columns(last, l);
            self.fix_final_bit(u == 2);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::sparse::{SparseBinaryMatrix, SparseGramMatrix};
    use crate::state::QfeState;

    fn close(a: &QfeState, b: &QfeState) -> bool {
        let x = a.expand_amplitudes().unwrap();
        let y = b.expand_amplitudes().unwrap();
        x.iter().zip(&y).all(|(u, v)| (u - v).norm() < 1e-12)
    }

    fn two_col_state() -> QfeState {
        let mut a = SparseBinaryMatrix::new(4, 3);
        for (j, k) in [(0, 0), (1, 1), (2, 2), (3, 0), (3, 1), (3, 2)] {
            a.toggle(j, k);
        }
        let mut q = SparseGramMatrix::new(3);
        q.set(0, 1, 1);
        q.set(1, 1, 3);
        q.set(0, 0, 2);
        q.set(1, 2, 1);
        QfeState::from_parts(5, a, q, vec![true, false, true, false], vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn swap_preserves_vector() {
        let s = two_col_state();
        let mut t = s.clone();
        t.reindex_swap_columns(0, 2);
        t.validate().unwrap();
        assert!(close(&s, &t));
        t.reindex_swap_columns(2, 0);
        assert_eq!(s, t);
    }

    #[test]
    fn make_principal_preserves_vector() {
        let s = two_col_state();
        let mut t = s.clone();
        t.make_principal(1, 3);
        t.validate().unwrap();
        assert_eq!(t.principal_rows()[1], 3);
        assert!(close(&s, &t));
    }

    #[test]
    fn zero_column_elim_rejects_degenerate_sum() {
        let mut a = SparseBinaryMatrix::new(1, 2);
        a.toggle(0, 0);
        let mut q = SparseGramMatrix::new(2);
        q.set(1, 1, 2);
        let mut s = QfeState::new(1).unwrap();
        s.a = a;
        s.q = q;
        s.p = vec![0, 0];
        let before = s.clone();
        assert_eq!(
            s.zero_column_elim(1).unwrap_err(),
            crate::error::QfeError::NonNormalised
        );
        assert_eq!(s, before);
    }

    fn raw(n: usize, a: SparseBinaryMatrix, q: SparseGramMatrix, p: Vec<usize>) -> QfeState {
        let mut s = QfeState::new(n).unwrap();
        s.a = a;
        s.q = q;
        s.p = p;
        s
    }

    #[test]
    fn reduce_examples() {
        let mut q = SparseGramMatrix::new(1);
        q.set(0, 0, 5);
        let mut s = raw(1, SparseBinaryMatrix::identity(1), q, vec![0]);
        s.reduce_gram_row_col(0);
        assert_eq!(s.q().diag(0), 1);

        let mut q = SparseGramMatrix::new(2);
        q.set(0, 1, 2);
        let mut s = raw(2, SparseBinaryMatrix::identity(2), q, vec![0, 1]);
        s.reduce_gram_row_col(0);
        assert!(s.q().nonzeros().is_empty());

        let mut q = SparseGramMatrix::new(2);
        q.set(0, 1, 3);
        q.set(1, 1, 2);
        let mut s = raw(2, SparseBinaryMatrix::identity(2), q, vec![0, 1]);
        s.reduce_gram_row_col(1);
        assert_eq!(s.q().nonzeros(), vec![(0, 1, 1), (1, 0, 1), (1, 1, 2)]);
    }

    #[test]
    fn subt_column_on_single_row() {
        let mut a = SparseBinaryMatrix::new(1, 2);
        a.toggle(0, 0);
        a.toggle(0, 1);
        let mut s = raw(1, a, SparseGramMatrix::new(2), vec![0, 0]);
        let before = s.clone();
        s.reindex_subt_column(1, 1);
        assert_eq!(s, before);
        s.reindex_subt_column(1, 0);
        assert_eq!(s.a().nonzeros(), vec![(0, 0)]);
    }

    #[test]
    fn swap_example() {
        let mut q = SparseGramMatrix::new(2);
        q.set(1, 1, 1);
        let mut s =
            QfeState::from_parts(0, SparseBinaryMatrix::identity(2), q, vec![false; 2], vec![0, 1])
                .unwrap();
        let before = s.clone();
        s.reindex_swap_columns(1, 1);
        assert_eq!(s, before);
        s.reindex_swap_columns(0, 1);
        assert_eq!(s.q().nonzeros(), vec![(0, 0, 1)]);
        assert_eq!(s.principal_rows(), &[1, 0]);
        assert!(close(&s, &before));
    }

    #[test]
    fn make_principal_guards() {
        let s = two_col_state();
        let mut t = s.clone();
        t.make_principal(0, 1);
        assert_eq!(t, s);
        t.make_principal(0, 0);
        assert_eq!(t, s);
    }

    #[test]
    fn reselect_prefers_lightest_row() {
        // Column 0 appears in row 0 (principal), row 3 (weight 3) and row 4 (weight 1).
        let mut a = SparseBinaryMatrix::new(5, 3);
        for (j, k) in [(0, 0), (1, 1), (2, 2), (3, 0), (3, 1), (3, 2), (4, 0)] {
            a.toggle(j, k);
        }
        let s = QfeState::from_parts(0, a, SparseGramMatrix::new(3), vec![false; 5], vec![0, 1, 2])
            .unwrap();
        let mut t = s.clone();
        t.reselect_principal_row(Some(0), 0);
        assert_eq!(t.principal_rows()[0], 4);
        t.validate().unwrap();
        assert!(close(&s, &t));

        let mut lone = QfeState::from_parts(
            0,
            SparseBinaryMatrix::identity(2),
            SparseGramMatrix::new(2),
            vec![false; 2],
            vec![0, 1],
        )
        .unwrap();
        let before = lone.clone();
        lone.reset_touches();
        lone.reselect_principal_row(Some(1), 1);
        assert_eq!(lone, before);
        assert!(lone.touches() <= 2);
    }

    #[test]
    fn fix_final_bit_examples() {
        let mut plus = QfeState::new(1).unwrap();
        plus.apply_h(0).unwrap();
        plus.fix_final_bit(true);
        assert_eq!((plus.rank(), plus.b(), plus.phase()), (0, &[true][..], 0));

        let mut bell = QfeState::new(2).unwrap();
        bell.apply_h(0).unwrap();
        bell.apply_cx(0, 1).unwrap();
        bell.fix_final_bit(true);
        assert_eq!(bell.b(), &[true, true]);
        assert_eq!(bell.rank(), 0);

        let mut minus = QfeState::new(1).unwrap();
        minus.apply_x(0).unwrap();
        minus.apply_h(0).unwrap();
        assert_eq!(minus.q().diag(0), 2);
        minus.fix_final_bit(true);
        assert_eq!(minus.phase(), 4);
    }
}
