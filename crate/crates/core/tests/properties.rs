//! Cross-module invariants driven by proptest.

use braidloc::fixtures::{gyb31_operator, path_fusion, rzwg_operator, sl3_level3};
use braidloc::fusion::{multiplicity_search, obstruction_test, period_and_stabilization};
use braidloc::gybe::represent;
use braidloc::linalg::{frobenius_distance, identity_residual, unitarity_residual};
use braidloc::quasi::{quasi_represent, QuasiBraidedSpace};
use braidloc::{relator_instances, BraidWord, Complex, FusionData, GybOperator, Tolerance};
use proptest::prelude::*;

fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let g = (n - 1) as i32;
    prop::collection::vec(prop_oneof![-g..=-1, 1..=g], 0..=max_len)
        .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
}

fn strands_and_pair() -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (3usize..=5).prop_flat_map(|n| (word(n, 8), word(n, 8)))
}

fn operators() -> Vec<GybOperator> {
    vec![gyb31_operator(), rzwg_operator()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn representation_is_a_unitary_homomorphism((u, v) in strands_and_pair()) {
        for op in operators() {
            let uv = represent(&op, &u.concat(&v).unwrap());
            let product = &represent(&op, &u) * &represent(&op, &v);
            prop_assert!(frobenius_distance(&uv, &product).unwrap() < 1e-8);
            prop_assert!(unitarity_residual(&uv).unwrap() < 1e-10);
        }
    }

    #[test]
    fn relator_conjugates_are_trivial(n in 3usize..=5, w in word(5, 4)) {
        let op = gyb31_operator();
        let letters: Vec<i32> = w.letters().iter().copied().filter(|g| g.unsigned_abs() < n as u32).collect();
        let conj = BraidWord::new(n, letters).unwrap();
        for r in relator_instances(n).unwrap() {
            let full = conj.concat(&r.word).unwrap().concat(&conj.inverse()).unwrap();
            prop_assert!(identity_residual(&represent(&op, &full)) < 1e-8);
        }
    }

    #[test]
    fn scalar_associators_give_a_homomorphism((u, v) in strands_and_pair(), phase in 0.0..std::f64::consts::TAU) {
        // The phased flip solves the braid relation for every choice of phases.
        let c = braidloc::gybe::swap_with_phases(2, &[
            vec![Complex::from_polar(1.0, phase), Complex::new(1.0, 0.0)],
            vec![Complex::new(0.0, 1.0), Complex::from_polar(1.0, -phase)],
        ]).unwrap();
        let qbs = QuasiBraidedSpace::scalar(2, c, 3, |p, q| Complex::from_polar(1.0, phase * (p + 2 * q) as f64)).unwrap();
        let uv = quasi_represent(&qbs, &u.concat(&v).unwrap()).unwrap();
        let product = &quasi_represent(&qbs, &u).unwrap() * &quasi_represent(&qbs, &v).unwrap();
        prop_assert!(frobenius_distance(&uv, &product).unwrap() < 1e-8);
    }

    #[test]
    fn relabeling_preserves_obstruction_data(ell in 3usize..=10, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let f = if ell == 10 { sl3_level3() } else { path_fusion(ell) };
        let mut perm: Vec<usize> = (0..f.rank()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let g = f.relabeled(&perm).unwrap();
        let (a, b) = (obstruction_test(&f, Tolerance::default()).unwrap(), obstruction_test(&g, Tolerance::default()).unwrap());
        prop_assert!((a.fpdim - b.fpdim).abs() < 1e-9);
        prop_assert!((a.big_lambda - b.big_lambda).abs() < 1e-6);
        prop_assert_eq!((a.period, a.stabilization, a.verdict), (b.period, b.stabilization, b.verdict));
        prop_assert_eq!(period_and_stabilization(&f).unwrap(), period_and_stabilization(&g).unwrap());
    }
}

/// Re-checks `w^m a_n = G_n a_{n+1}` with plain `i128` loops over `nx`.
fn independent_check(f: &FusionData, w: u64, m: u32, start: usize, vectors: &[Vec<i64>]) -> bool {
    let nx = f.nx();
    let mut h: Vec<i128> = (0..f.rank()).map(|i| i128::from(i == f.unit())).collect();
    let advance = |h: &[i128]| -> Vec<i128> {
        (0..f.rank()).map(|j| (0..f.rank()).map(|i| i128::from(nx.get(i, j)) * h[i]).sum()).collect()
    };
    for _ in 0..start {
        h = advance(&h);
    }
    let scale = i128::from(w).pow(m);
    for pair in vectors.windows(2) {
        let next = advance(&h);
        let rows: Vec<usize> = (0..f.rank()).filter(|&i| h[i] != 0).collect();
        let cols: Vec<usize> = (0..f.rank()).filter(|&j| next[j] != 0).collect();
        if rows.len() != pair[0].len() || cols.len() != pair[1].len() {
            return false;
        }
        for (r, &i) in rows.iter().enumerate() {
            let s: i128 =
                cols.iter().enumerate().map(|(c, &j)| i128::from(nx.get(i, j)) * i128::from(pair[1][c])).sum();
            if s != scale * i128::from(pair[0][r]) {
                return false;
            }
        }
        h = next;
    }
    true
}

#[test]
fn feasible_windows_survive_independent_verification() {
    let cases: Vec<(FusionData, u64, u32)> = vec![
        (sl3_level3(), 2, 1),
        (path_fusion(4), 2, 1),
        (path_fusion(3), 2, 1),
        (FusionData::new("d=3", 0, braidloc::IntMatrix::from_rows(&[vec![3]]).unwrap()).unwrap(), 3, 1),
    ];
    for (f, w, m) in cases {
        let win = multiplicity_search(&f, w, m, 4, 16).unwrap();
        if win.feasible {
            assert!(win.verify(&f));
            assert!(independent_check(&f, w, m, win.start, &win.vectors), "{}", f.label());
        }
    }
}
