use std::collections::BTreeSet;

use proptest::prelude::*;
use qfesim::sparse::{SparseBinaryMatrix, SparseGramMatrix};

#[derive(Debug, Clone)]
enum Op {
    Toggle(usize, usize),
    Set(usize, usize, bool),
    ClearRow(usize),
    PushCol,
    PopCol,
    RemoveCol(usize),
    PushRow,
    RemoveRow(usize),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        6 => (0..64usize, 0..64usize).prop_map(|(j, k)| Op::Toggle(j, k)),
        3 => (0..64usize, 0..64usize, any::<bool>()).prop_map(|(j, k, v)| Op::Set(j, k, v)),
        1 => (0..64usize).prop_map(Op::ClearRow),
        1 => Just(Op::PushCol),
        1 => Just(Op::PopCol),
        1 => (0..64usize).prop_map(Op::RemoveCol),
        1 => Just(Op::PushRow),
        1 => (0..64usize).prop_map(Op::RemoveRow),
    ]
}

fn shift_remove(set: &BTreeSet<(usize, usize)>, idx: usize, on_col: bool) -> BTreeSet<(usize, usize)> {
    set.iter()
        .filter(|&&(j, k)| if on_col { k != idx } else { j != idx })
        .map(|&(j, k)| {
            if on_col {
                (j, if k > idx { k - 1 } else { k })
            } else {
                (if j > idx { j - 1 } else { j }, k)
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // 64 cases x 200 ops gives over 10^4 random operations.
    #[test]
    fn binary_mirror_and_counts(ops in prop::collection::vec(op(), 200)) {
        let mut m = SparseBinaryMatrix::new(6, 5);
        let mut reference = BTreeSet::new();
        for op in ops {
            let (rows, cols) = (m.n_rows(), m.n_cols());
            match op {
                Op::Toggle(j, k) if rows > 0 && cols > 0 => {
                    let (j, k) = (j % rows, k % cols);
                    let now = m.toggle(j, k);
                    prop_assert_eq!(now, reference.insert((j, k)));
                    if !now {
                        reference.remove(&(j, k));
                    }
                }
                Op::Set(j, k, v) if rows > 0 && cols > 0 => {
                    let (j, k) = (j % rows, k % cols);
                    m.set(j, k, v);
                    if v { reference.insert((j, k)); } else { reference.remove(&(j, k)); }
                }
                Op::ClearRow(j) if rows > 0 => {
                    let j = j % rows;
                    m.clear_row(j);
                    reference.retain(|&(h, _)| h != j);
                }
                Op::PushCol => { m.push_col(); }
                Op::PopCol if cols > 0 => {
                    m.pop_col();
                    reference.retain(|&(_, k)| k != cols - 1);
                }
                Op::RemoveCol(c) if cols > 0 => {
                    let c = c % cols;
                    m.remove_col(c);
                    reference = shift_remove(&reference, c, true);
                }
                Op::PushRow => { m.push_row(); }
                Op::RemoveRow(j) if rows > 0 => {
                    let j = j % rows;
                    m.remove_row(j);
                    reference = shift_remove(&reference, j, false);
                }
                _ => {}
            }
            prop_assert!(m.check_mirror().is_ok());
            prop_assert_eq!(m.nnz(), reference.len());
            let got: BTreeSet<_> = m.nonzeros().into_iter().collect();
            prop_assert_eq!(&got, &reference);
            for j in 0..m.n_rows() {
                prop_assert_eq!(m.row_count(j), reference.iter().filter(|e| e.0 == j).count());
            }
            for k in 0..m.n_cols() {
                prop_assert_eq!(m.col_count(k), reference.iter().filter(|e| e.1 == k).count());
                let col: Vec<_> = reference.iter().filter(|e| e.1 == k).map(|e| e.0).collect();
                prop_assert_eq!(m.col_vec(k), col);
            }
        }
    }

    #[test]
    fn gram_matches_dense(ops in prop::collection::vec((0..6usize, 0..6usize, -3..4i32), 200)) {
        let mut q = SparseGramMatrix::new(6);
        let mut dense = [[0i32; 6]; 6];
        for (j, k, dv) in ops {
            q.add(j, k, dv);
            dense[j][k] += dv;
            if j != k {
                dense[k][j] += dv;
            }
            prop_assert!(q.check_symmetry().is_ok());
        }
        for j in 0..6 {
            for k in 0..6 {
                prop_assert_eq!(q.get(j, k), dense[j][k]);
            }
            let nz = (0..6).filter(|&k| k != j && dense[j][k] != 0).count();
            prop_assert_eq!(q.offdiag_count(j), nz);
        }
    }
}

#[test]
fn examples() {
    let z = SparseBinaryMatrix::new(3, 2);
    assert!(!z.get(1, 1));
    assert!(SparseBinaryMatrix::identity(2).get(1, 1));
    let mut m = SparseBinaryMatrix::new(3, 2);
    m.set(2, 1, true);
    assert!(m.get(2, 1));
    m.set(2, 1, false);
    assert_eq!(m, SparseBinaryMatrix::new(3, 2));

    assert_eq!(SparseBinaryMatrix::identity(3).row_vec(2), vec![2]);
    assert!(SparseBinaryMatrix::new(2, 1).col_vec(0).is_empty());
    assert_eq!(SparseBinaryMatrix::identity(4).row_count(2), 1);

    let mut ghz = SparseBinaryMatrix::new(3, 1);
    for j in 0..3 {
        ghz.toggle(j, 0);
    }
    assert_eq!(ghz.row_vec(0), vec![0]);
    assert_eq!(ghz.col_count(0), 3);

    let mut e = SparseBinaryMatrix::new(3, 0);
    e.push_col();
    assert_eq!((e.n_rows(), e.n_cols(), e.nnz()), (3, 1, 0));

    let mut q = SparseGramMatrix::new(2);
    q.set(0, 1, 1);
    q.set(1, 1, 2);
    assert_eq!(q.get(1, 0), 1);
    q.remove_dim(1);
    assert_eq!(q.dim(), 1);
    assert!(q.nonzeros().is_empty());
}
