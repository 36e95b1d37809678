//! Sparse matrices backing the quadratic form expansion.
//!
//! [`SparseBinaryMatrix`] keeps every nonzero in a sorted row list and a
//! mirrored sorted column list. [`SparseGramMatrix`] is a symmetric integer
//! matrix stored as per-index off-diagonal adjacency plus a dense diagonal.
//! Both count primitive operations in a [`TouchCounter`].

use crate::touch::TouchCounter;

fn sorted_insert(v: &mut Vec<u32>, x: u32) -> bool {
    match v.binary_search(&x) {
        Ok(_) => false,
        Err(pos) => {
            v.insert(pos, x);
            true
        }
    }
}

fn sorted_remove(v: &mut Vec<u32>, x: u32) -> bool {
    match v.binary_search(&x) {
        Ok(pos) => {
            v.remove(pos);
            true
        }
        Err(_) => false,
    }
}

/// Sparse matrix over GF(2) with mirrored row and column lists.
#[derive(Debug, Clone, Default)]
pub struct SparseBinaryMatrix {
    rows: Vec<Vec<u32>>,
    cols: Vec<Vec<u32>>,
    nnz: usize,
    touches: TouchCounter,
}

impl SparseBinaryMatrix {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        Self {
            rows: vec![Vec::new(); n_rows],
            cols: vec![Vec::new(); n_cols],
            nnz: 0,
            touches: TouchCounter::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.rows[i].push(i as u32);
            m.cols[i].push(i as u32);
        }
        m.nnz = n;
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.nnz
    }

    pub fn touches(&self) -> &TouchCounter {
        &self.touches
    }

    pub fn get(&self, j: usize, k: usize) -> bool {
        self.touches.bump(1);
        self.rows[j].binary_search(&(k as u32)).is_ok()
    }

    pub fn set(&mut self, j: usize, k: usize, v: bool) {
        if self.get(j, k) != v {
            self.toggle(j, k);
        }
    }

    /// Flips entry `(j, k)` and returns its new value.
    pub fn toggle(&mut self, j: usize, k: usize) -> bool {
        assert!(j < self.rows.len() && k < self.cols.len(), "index out of range");
        self.touches.bump(1);
        if sorted_remove(&mut self.rows[j], k as u32) {
            sorted_remove(&mut self.cols[k], j as u32);
            self.nnz -= 1;
            false
        } else {
            sorted_insert(&mut self.rows[j], k as u32);
            sorted_insert(&mut self.cols[k], j as u32);
            self.nnz += 1;
            true
        }
    }

    /// Column indices of row `j` in ascending order; one touch per entry.
    pub fn row(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[j].iter().map(move |&k| {
            self.touches.bump(1);
            k as usize
        })
    }

    /// Row indices of column `k` in ascending order; one touch per entry.
    pub fn col(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.cols[k].iter().map(move |&j| {
            self.touches.bump(1);
            j as usize
        })
    }

    pub fn row_vec(&self, j: usize) -> Vec<usize> {
        self.row(j).collect()
    }

    pub fn col_vec(&self, k: usize) -> Vec<usize> {
        self.col(k).collect()
    }

    pub fn row_count(&self, j: usize) -> usize {
        self.touches.bump(1);
        self.rows[j].len()
    }

    pub fn col_count(&self, k: usize) -> usize {
        self.touches.bump(1);
        self.cols[k].len()
    }

    pub fn row_first(&self, j: usize) -> Option<usize> {
        self.touches.bump(1);
        self.rows[j].first().map(|&k| k as usize)
    }

    /// Zeroes row `j` and returns its former column indices.
    pub fn clear_row(&mut self, j: usize) -> Vec<usize> {
        let old = std::mem::take(&mut self.rows[j]);
        for &k in &old {
            self.touches.bump(1);
            sorted_remove(&mut self.cols[k as usize], j as u32);
        }
        self.nnz -= old.len();
        old.into_iter().map(|k| k as usize).collect()
    }

    /// Appends an all-zero column and returns its index.
    pub fn push_col(&mut self) -> usize {
        self.touches.bump(1);
        self.cols.push(Vec::new());
        self.cols.len() - 1
    }

    /// Removes the last column and returns its former row indices.
    pub fn pop_col(&mut self) -> Vec<usize> {
        let c = self.cols.len() - 1;
        let col = self.cols.pop().expect("no column to remove");
        self.touches.bump(1);
        for &j in &col {
            self.touches.bump(1);
            let last = self.rows[j as usize].pop();
            debug_assert_eq!(last, Some(c as u32));
        }
        self.nnz -= col.len();
        col.into_iter().map(|j| j as usize).collect()
    }

    /// Removes column `c`, shifting later columns left.
    pub fn remove_col(&mut self, c: usize) {
        let col = self.cols.remove(c);
        self.nnz -= col.len();
        for row in &mut self.rows {
            row.retain(|&k| k as usize != c);
            for k in row.iter_mut() {
                self.touches.bump(1);
                if *k as usize > c {
                    *k -= 1;
                }
            }
        }
    }

    pub fn push_row(&mut self) -> usize {
        self.touches.bump(1);
        self.rows.push(Vec::new());
        self.rows.len() - 1
    }

    /// Removes row `j`, shifting later rows up.
    pub fn remove_row(&mut self, j: usize) {
        let row = self.rows.remove(j);
        self.nnz -= row.len();
        for col in &mut self.cols {
            col.retain(|&h| h as usize != j);
            for h in col.iter_mut() {
                self.touches.bump(1);
                if *h as usize > j {
                    *h -= 1;
                }
            }
        }
    }

    /// All nonzeros in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.nnz);
        for (j, row) in self.rows.iter().enumerate() {
            for &k in row {
                out.push((j, k as usize));
            }
        }
        out
    }

    /// Checks that the row and column lists describe the same set and that
    /// the cached count is right.
    pub fn check_mirror(&self) -> Result<(), String> {
        let mut count = 0;
        for (j, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("row {j} not strictly sorted"));
            }
            for &k in row {
                if k as usize >= self.cols.len() {
                    return Err(format!("row {j} references column {k} out of range"));
                }
                if self.cols[k as usize].binary_search(&(j as u32)).is_err() {
                    return Err(format!("entry ({j},{k}) missing from column list"));
                }
            }
            count += row.len();
        }
        let col_total: usize = self.cols.iter().map(Vec::len).sum();
        if col_total != count {
            return Err(format!("row total {count} != column total {col_total}"));
        }
        for (k, col) in self.cols.iter().enumerate() {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("column {k} not strictly sorted"));
            }
        }
        if count != self.nnz {
            return Err(format!("nnz cache {} != {count}", self.nnz));
        }
        Ok(())
    }
}

impl PartialEq for SparseBinaryMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

impl Eq for SparseBinaryMatrix {}

/// Symmetric integer matrix. Off-diagonal entries live in sorted adjacency
/// lists, mirrored in both endpoints; the diagonal is dense.
#[derive(Debug, Clone, Default)]
pub struct SparseGramMatrix {
    adj: Vec<Vec<(u32, i32)>>,
    diag: Vec<i32>,
    touches: TouchCounter,
}

impl SparseGramMatrix {
    pub fn new(dim: usize) -> Self {
        Self {
            adj: vec![Vec::new(); dim],
            diag: vec![0; dim],
            touches: TouchCounter::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn touches(&self) -> &TouchCounter {
        &self.touches
    }

    fn find(&self, j: usize, k: usize) -> Result<usize, usize> {
        self.adj[j].binary_search_by_key(&(k as u32), |e| e.0)
    }

    pub fn get(&self, j: usize, k: usize) -> i32 {
        self.touches.bump(1);
        if j == k {
            return self.diag[j];
        }
        match self.find(j, k) {
            Ok(pos) => self.adj[j][pos].1,
            Err(_) => 0,
        }
    }

    fn set_half(&mut self, j: usize, k: usize, v: i32) {
        match self.find(j, k) {
            Ok(pos) if v == 0 => {
                self.adj[j].remove(pos);
            }
            Ok(pos) => self.adj[j][pos].1 = v,
            Err(_) if v == 0 => {}
            Err(pos) => self.adj[j].insert(pos, (k as u32, v)),
        }
    }

    /// Sets `(j, k)` and `(k, j)` together.
    pub fn set(&mut self, j: usize, k: usize, v: i32) {
        assert!(j < self.dim() && k < self.dim(), "index out of range");
        self.touches.bump(1);
        if j == k {
            self.diag[j] = v;
        } else {
            self.set_half(j, k, v);
            self.set_half(k, j, v);
        }
    }

    /// Adds `dv` to `(j, k)` and `(k, j)` together.
    pub fn add(&mut self, j: usize, k: usize, dv: i32) {
        if dv == 0 {
            return;
        }
        let v = self.get(j, k) + dv;
        self.set(j, k, v);
    }

    pub fn diag(&self, j: usize) -> i32 {
        self.touches.bump(1);
        self.diag[j]
    }

    pub fn set_diag(&mut self, j: usize, v: i32) {
        self.touches.bump(1);
        self.diag[j] = v;
    }

    pub fn add_diag(&mut self, j: usize, dv: i32) {
        self.touches.bump(1);
        self.diag[j] += dv;
    }

    /// Off-diagonal nonzeros of row `j` as `(k, value)` in ascending `k`.
    pub fn offdiag(&self, j: usize) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.adj[j].iter().map(move |&(k, v)| {
            self.touches.bump(1);
            (k as usize, v)
        })
    }

    pub fn offdiag_vec(&self, j: usize) -> Vec<(usize, i32)> {
        self.offdiag(j).collect()
    }

    pub fn offdiag_count(&self, j: usize) -> usize {
        self.touches.bump(1);
        self.adj[j].len()
    }

    /// Number of nonzeros in row `j`, diagonal included.
    pub fn row_count(&self, j: usize) -> usize {
        self.touches.bump(1);
        self.adj[j].len() + usize::from(self.diag[j] != 0)
    }

    /// Appends a zero row and column and returns the new index.
    pub fn push_dim(&mut self) -> usize {
        self.touches.bump(1);
        self.adj.push(Vec::new());
        self.diag.push(0);
        self.diag.len() - 1
    }

    /// Removes the last row and column, returning its off-diagonal entries
    /// and diagonal value.
    pub fn pop_dim(&mut self) -> (Vec<(usize, i32)>, i32) {
        let c = self.dim() - 1;
        let row = self.adj.pop().expect("no dimension to remove");
        let d = self.diag.pop().expect("no dimension to remove");
        self.touches.bump(1);
        for &(k, _) in &row {
            self.touches.bump(1);
            let last = self.adj[k as usize].pop();
            debug_assert_eq!(last.map(|e| e.0), Some(c as u32));
        }
        (row.into_iter().map(|(k, v)| (k as usize, v)).collect(), d)
    }

    /// Removes index `c`, shifting later indices down.
    pub fn remove_dim(&mut self, c: usize) {
        self.adj.remove(c);
        self.diag.remove(c);
        for row in &mut self.adj {
            row.retain(|e| e.0 as usize != c);
            for e in row.iter_mut() {
                self.touches.bump(1);
                if e.0 as usize > c {
                    e.0 -= 1;
                }
            }
        }
    }

    /// All nonzeros `(j, k, value)` in row-major order, both triangles.
    pub fn nonzeros(&self) -> Vec<(usize, usize, i32)> {
        let mut out = Vec::new();
        for j in 0..self.dim() {
            let mut placed = self.diag[j] == 0;
            for &(k, v) in &self.adj[j] {
                if !placed && k as usize > j {
                    out.push((j, j, self.diag[j]));
                    placed = true;
                }
                out.push((j, k as usize, v));
            }
            if !placed {
                out.push((j, j, self.diag[j]));
            }
        }
        out
    }

    pub fn check_symmetry(&self) -> Result<(), String> {
        for (j, row) in self.adj.iter().enumerate() {
            if row.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(format!("Q row {j} not strictly sorted"));
            }
            for &(k, v) in row {
                let k = k as usize;
                if k == j || k >= self.dim() {
                    return Err(format!("Q row {j} has bad off-diagonal index {k}"));
                }
                if v == 0 {
                    return Err(format!("Q stores explicit zero at ({j},{k})"));
                }
                match self.adj[k].binary_search_by_key(&(j as u32), |e| e.0) {
                    Ok(pos) if self.adj[k][pos].1 == v => {}
                    _ => return Err(format!("Q asymmetric at ({j},{k})")),
                }
            }
        }
        Ok(())
    }
}

impl PartialEq for SparseGramMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.diag == other.diag
    }
}

impl Eq for SparseGramMatrix {}
