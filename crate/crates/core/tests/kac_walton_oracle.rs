//! Independent recomputation of the bundled sl3 level-3 fusion matrix.
//!
//! Tensoring with the vector representation adds one of its weights to
//! `λ + ρ`; the result is reflected into the open alcove of shifted level
//! `k + 3` by the affine Weyl group and counted with the reflection sign
//! (dropped if it lands on a wall).

use braidloc::fixtures::sl3_level3;
use braidloc::{obstruction_test, period_and_stabilization, IntMatrix, Tolerance};

const LEVEL: i64 = 3;
const SHIFTED: i64 = LEVEL + 3;
const VECTOR_WEIGHTS: [(i64, i64); 3] = [(1, 0), (-1, 1), (0, -1)];
const DUAL_WEIGHTS: [(i64, i64); 3] = [(0, 1), (1, -1), (-1, 0)];

fn alcove() -> Vec<(i64, i64)> {
    let mut w: Vec<(i64, i64)> = (0..=LEVEL).flat_map(|a| (0..=LEVEL - a).map(move |b| (a, b))).collect();
    w.sort_by_key(|&(a, b)| (a + b, a, b));
    w
}

/// Reflects a shifted weight into the open fundamental alcove. Returns the
/// unshifted weight and the sign, or `None` if it lies on a wall.
fn reflect(mut x: (i64, i64)) -> Option<((i64, i64), i64)> {
    let mut sign = 1;
    for _ in 0..64 {
        let (x1, x2) = x;
        if x1 == 0 || x2 == 0 || x1 + x2 == SHIFTED {
            return None;
        }
        if x1 < 0 {
            x = (-x1, x1 + x2);
        } else if x2 < 0 {
            x = (x1 + x2, -x2);
        } else if x1 + x2 > SHIFTED {
            x = (SHIFTED - x2, SHIFTED - x1);
        } else {
            return Some(((x1 - 1, x2 - 1), sign));
        }
        sign = -sign;
    }
    panic!("reflection did not terminate");
}

fn fusion_with(weights: &[(i64, i64)]) -> IntMatrix {
    let w = alcove();
    let idx = |p: (i64, i64)| w.iter().position(|&q| q == p).unwrap();
    let mut n = IntMatrix::zeros(w.len(), w.len());
    for &(a, b) in &w {
        for &(u, v) in weights {
            if let Some((mu, sign)) = reflect((a + u + 1, b + v + 1)) {
                let (i, j) = (idx((a, b)), idx(mu));
                n.set(i, j, n.get(i, j) + sign);
            }
        }
    }
    n
}

fn quantum_dim((a, b): (i64, i64)) -> f64 {
    let q = |n: i64| (n as f64 * std::f64::consts::PI / SHIFTED as f64).sin();
    let (x1, x2) = (a + 1, b + 1);
    q(x1) * q(x2) * q(x1 + x2) / (q(1) * q(1) * q(2))
}

#[test]
fn fixture_matches_kac_walton() {
    let oracle = fusion_with(&VECTOR_WEIGHTS);
    assert!(oracle.is_nonnegative());
    assert_eq!(&oracle, sl3_level3().nx());
}

#[test]
fn dual_object_is_the_transpose() {
    let x = fusion_with(&VECTOR_WEIGHTS);
    let dual = fusion_with(&DUAL_WEIGHTS);
    assert_eq!(dual, x.transpose());
    assert_eq!(x.matmul(&dual).unwrap(), dual.matmul(&x).unwrap());
}

#[test]
fn quantum_dimensions_are_the_perron_frobenius_vector() {
    let w = alcove();
    let d: Vec<f64> = w.iter().map(|&p| quantum_dim(p)).collect();
    let nx = sl3_level3().nx().clone();
    for i in 0..w.len() {
        let lhs: f64 = (0..w.len()).map(|j| nx.get(i, j) as f64 * d[j]).sum();
        assert!((lhs - 2.0 * d[i]).abs() < 1e-12, "row {i}");
    }
    let global: f64 = d.iter().map(|x| x * x).sum();
    assert!((global - 36.0).abs() < 1e-12);
}

#[test]
fn period_is_the_triality_order() {
    let f = sl3_level3();
    let (p, _) = period_and_stabilization(&f).unwrap();
    assert_eq!(p, 3);
    let report = obstruction_test(&f, Tolerance::default()).unwrap();
    assert_eq!(report.lambda_check.candidate, 2);
    assert!(report.lambda_check.exact && report.verdict);
}
