//! Bundled operators and fusion data.
//!
//! The JSON fixtures under `fixtures/` are embedded at compile time; the
//! closed-form builders here regenerate the same matrices independently so
//! the files can be cross-checked.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::fusion::FusionData;
use crate::gybe::GybOperator;
use crate::linalg::{CMatrix, Complex, IntMatrix};

pub const R_GYB31_JSON: &str = include_str!("../../../fixtures/r-gyb31.json");
pub const RZWG_GYB32_JSON: &str = include_str!("../../../fixtures/rzwg-gyb32.json");
pub const SL3_LEVEL3_JSON: &str = include_str!("../../../fixtures/sl3-level-3.json");

/// Overall scalar `-e^{-πi/3}` of the 8×8 operator.
pub fn gyb31_scalar() -> Complex {
    -Complex::from_polar(1.0, -PI / 3.0)
}

fn gyb31_blocks() -> (CMatrix, CMatrix) {
    let z = Complex::from_polar(1.0, PI / 4.0);
    let zi = z.inv();
    let o = Complex::new(0.0, 0.0);
    let a0 = vec![vec![zi, o, -zi, o], vec![o, z, o, z], vec![z, o, z, o], vec![o, -zi, o, zi]];
    let b0 = vec![vec![z, o, z, o], vec![o, zi, o, -zi], vec![-zi, o, zi, o], vec![o, z, o, z]];
    (CMatrix::from_rows(&a0).unwrap(), CMatrix::from_rows(&b0).unwrap())
}

fn block_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.rows();
    CMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (false, false) => b[(i - n, j - n)],
        _ => Complex::new(0.0, 0.0),
    })
}

/// The unitary 8×8 `(3,1)` operator `R = -e^{-πi/3}/√2 · (A₀ ⊕ B₀)`.
pub fn gyb31_matrix() -> CMatrix {
    let (a0, b0) = gyb31_blocks();
    block_sum(&a0, &b0).scale(gyb31_scalar() * FRAC_1_SQRT_2)
}

/// Variant with the scalar on the first block only. It is not a solution;
/// kept to document why the scalar must multiply the whole block sum.
pub fn gyb31_matrix_first_block_scalar() -> CMatrix {
    let (a0, b0) = gyb31_blocks();
    block_sum(&a0.scale(gyb31_scalar()), &b0).scale(Complex::new(FRAC_1_SQRT_2, 0.0))
}

pub fn gyb31_operator() -> GybOperator {
    GybOperator::from_json(R_GYB31_JSON).expect("bundled r-gyb31.json is valid")
}

/// `(1/√2)[[I, J], [-J, I]]` with `J` the 4×4 anti-diagonal, a `(3,2)` operator.
pub fn rzwg_matrix() -> CMatrix {
    CMatrix::from_fn(8, 8, |i, j| {
        let (bi, bj, r, c) = (i / 4, j / 4, i % 4, j % 4);
        let v = match (bi, bj) {
            (0, 0) | (1, 1) if r == c => 1.0,
            (0, 1) if r + c == 3 => 1.0,
            (1, 0) if r + c == 3 => -1.0,
            _ => 0.0,
        };
        Complex::new(v * FRAC_1_SQRT_2, 0.0)
    })
}

pub fn rzwg_operator() -> GybOperator {
    GybOperator::from_json(RZWG_GYB32_JSON).expect("bundled rzwg-gyb32.json is valid")
}

/// Fusion data of the generating object of `SU(2)` at level `ℓ - 2`: the
/// adjacency matrix of the path graph `A_{ℓ-1}`, unit at one end.
pub fn path_fusion(ell: usize) -> FusionData {
    assert!(ell >= 3, "path fusion data needs ell >= 3");
    let n = ell - 1;
    let mut nx = IntMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        nx.set(i, i + 1, 1);
        nx.set(i + 1, i, 1);
    }
    FusionData::new(format!("sl2-path-{ell}"), 0, nx).expect("path graph is irreducible")
}

/// The 10×10 fusion matrix of the vector representation of `sl3` at level 3.
pub fn sl3_level3() -> FusionData {
    FusionData::from_json(SL3_LEVEL3_JSON).expect("bundled sl3-level-3.json is valid")
}
