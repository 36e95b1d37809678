mod common;

use common::{deviation, random_state};
use qfesim::RngStream;

#[test]
fn reindexing_preserves_amplitudes() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let (s, d) = random_state(5, seed, true);
        let r = s.rank();
        if r < 2 {
            continue;
        }
        checked += 1;
        let mut rng = RngStream::from_seed(seed);
        let (k, c) = (rng.below(r), rng.below(r));

        let mut t = s.clone();
        t.reindex_subt_column(k, c);
        assert!(deviation(&d, &t) < 1e-12, "subt seed {seed}");

        let mut t = s.clone();
        t.reindex_swap_columns(k, c);
        t.validate().unwrap();
        assert!(deviation(&d, &t) < 1e-12, "swap seed {seed}");

        let mut t = s.clone();
        let j = rng.below(5);
        t.make_principal(c, j);
        assert!(deviation(&d, &t) < 1e-12, "make_principal seed {seed}");

        let mut t = s.clone();
        let excluded = s.principal_rows()[c];
        t.reselect_principal_row(Some(excluded), c);
        t.validate().unwrap();
        assert!(deviation(&d, &t) < 1e-12, "reselect seed {seed}");
    }
    assert!(checked >= 100);
}

#[test]
fn make_principal_on_two_entry_row() {
    use qfesim::sparse::{SparseBinaryMatrix, SparseGramMatrix};
    let mut a = SparseBinaryMatrix::new(3, 2);
    for (j, k) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
        a.toggle(j, k);
    }
    let mut q = SparseGramMatrix::new(2);
    q.set(0, 1, 1);
    q.set(1, 1, 3);
    let s = qfesim::QfeState::from_parts(3, a, q, vec![true, false, false], vec![0, 2]).unwrap();
    let before = s.expand_amplitudes().unwrap();
    let mut t = s.clone();
    t.make_principal(0, 1);
    assert_eq!(t.a().row_vec(1), vec![0]);
    assert_eq!(t.principal_rows(), &[1, 2]);
    t.validate().unwrap();
    let after = t.expand_amplitudes().unwrap();
    for (x, y) in after.iter().zip(&before) {
        assert!((x - y).norm() < 1e-12);
    }
}
