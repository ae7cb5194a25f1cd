//! Quaternions, elements of `ℍ^{⊗3}` with complex coefficients, and their
//! image under a faithful 2-dimensional complex representation.
//!
//! The locked representation is
//! `1 ↦ I`, `i ↦ diag(i, -i)`, `j ↦ [[0, 1], [-1, 0]]`, `k = ij ↦ [[0, i], [i, 0]]`.
//! Under it the element returned by [`build_r`] maps exactly onto the bundled
//! 8×8 `(3,1)` operator.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg};

use serde::Serialize;

use crate::linalg::{frobenius_distance, kron, CMatrix, Complex};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Quat {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quat {
    pub const ONE: Quat = Quat { a: 1.0, b: 0.0, c: 0.0, d: 0.0 };
    pub const I: Quat = Quat { a: 0.0, b: 1.0, c: 0.0, d: 0.0 };
    pub const J: Quat = Quat { a: 0.0, b: 0.0, c: 1.0, d: 0.0 };
    pub const K: Quat = Quat { a: 0.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quat { a, b, c, d }
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn norm(&self) -> f64 {
        self.coeffs().iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Mul for Quat {
    type Output = Quat;

    fn mul(self, y: Quat) -> Quat {
        let x = self;
        Quat {
            a: x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            b: x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            c: x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            d: x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a,
        }
    }
}

impl Add for Quat {
    type Output = Quat;

    fn add(self, y: Quat) -> Quat {
        Quat::new(self.a + y.a, self.b + y.b, self.c + y.c, self.d + y.d)
    }
}

impl Neg for Quat {
    type Output = Quat;

    fn neg(self) -> Quat {
        Quat::new(-self.a, -self.b, -self.c, -self.d)
    }
}

pub fn quat_mul(x: Quat, y: Quat) -> Quat {
    x * y
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Basis {
    One,
    I,
    J,
    K,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::One, Basis::I, Basis::J, Basis::K];

    pub fn quat(self) -> Quat {
        match self {
            Basis::One => Quat::ONE,
            Basis::I => Quat::I,
            Basis::J => Quat::J,
            Basis::K => Quat::K,
        }
    }
}

/// An element of `ℍ^{⊗3} ⊗_ℝ ℂ`, stored by basis triple.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuatTensor3 {
    coeffs: BTreeMap<[Basis; 3], Complex>,
}

impl QuatTensor3 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn coeff(&self, e: [Basis; 3]) -> Complex {
        self.coeffs.get(&e).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Basis; 3], &Complex)> {
        self.coeffs.iter()
    }

    pub fn add_basis(&mut self, e: [Basis; 3], z: Complex) {
        *self.coeffs.entry(e).or_default() += z;
    }

    /// Adds `z · x₁ ⊗ x₂ ⊗ x₃`, expanded in the basis.
    pub fn add_product(&mut self, z: Complex, x: [Quat; 3]) {
        for (e1, c1) in Basis::ALL.iter().zip(x[0].coeffs()) {
            for (e2, c2) in Basis::ALL.iter().zip(x[1].coeffs()) {
                for (e3, c3) in Basis::ALL.iter().zip(x[2].coeffs()) {
                    let w = c1 * c2 * c3;
                    if w != 0.0 {
                        self.add_basis([*e1, *e2, *e3], z * w);
                    }
                }
            }
        }
    }
}

fn r_scalar() -> Complex {
    -Complex::from_polar(1.0, -PI / 3.0) / 2.0
}

/// `r = -e^{-πi/3}/2 · (1⊗1⊗1 + i⊗j⊗i + 1⊗(ij)⊗1 + i⊗i⊗i)`.
pub fn build_r() -> QuatTensor3 {
    let (one, i, j) = (Quat::ONE, Quat::I, Quat::J);
    let mut r = QuatTensor3::new();
    for term in [[one, one, one], [i, j, i], [one, i * j, one], [i, i, i]] {
        r.add_product(r_scalar(), term);
    }
    r
}

/// The variant with last term `j⊗i⊗i`. Its image is not a gYB operator under
/// any of the candidate representations.
pub fn build_r_as_printed() -> QuatTensor3 {
    let (one, i, j) = (Quat::ONE, Quat::I, Quat::J);
    let mut r = QuatTensor3::new();
    for term in [[one, one, one], [i, j, i], [one, i * j, one], [j, i, i]] {
        r.add_product(r_scalar(), term);
    }
    r
}

/// One of the sign/shape variants of the 2-dimensional representation:
/// `i ↦ s_i·diag(i, -i)`, and `j ↦ s_j·[[0, 1], [-1, 0]]`, or
/// `j ↦ s_j·[[0, i], [i, 0]]` when `swap_j_k` is set; `k` is `rep(i)·rep(j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rep2Convention {
    pub sign_i: i8,
    pub sign_j: i8,
    pub swap_j_k: bool,
}

impl Rep2Convention {
    pub const STANDARD: Rep2Convention = Rep2Convention { sign_i: 1, sign_j: 1, swap_j_k: false };

    pub fn candidates() -> Vec<Rep2Convention> {
        let mut out = Vec::with_capacity(8);
        for swap_j_k in [false, true] {
            for sign_i in [1, -1] {
                for sign_j in [1, -1] {
                    out.push(Rep2Convention { sign_i, sign_j, swap_j_k });
                }
            }
        }
        out
    }

    fn basis_matrix(&self, e: Basis) -> CMatrix {
        let c = |re: f64, im: f64| Complex::new(re, im);
        let si = f64::from(self.sign_i);
        let sj = f64::from(self.sign_j);
        let i_mat = CMatrix::from_diag(&[c(0.0, si), c(0.0, -si)]);
        let j_mat = if self.swap_j_k {
            CMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, sj)], vec![c(0.0, sj), c(0.0, 0.0)]])
        } else {
            CMatrix::from_rows(&[vec![c(0.0, 0.0), c(sj, 0.0)], vec![c(-sj, 0.0), c(0.0, 0.0)]])
        }
        .expect("2x2 literal");
        match e {
            Basis::One => CMatrix::identity(2),
            Basis::I => i_mat,
            Basis::J => j_mat,
            Basis::K => &i_mat * &j_mat,
        }
    }

    pub fn rep(&self, x: Quat) -> CMatrix {
        Basis::ALL.iter().zip(x.coeffs()).fold(CMatrix::zeros(2, 2), |acc, (&e, w)| {
            acc.add(&self.basis_matrix(e).scale(Complex::new(w, 0.0))).expect("2x2")
        })
    }
}

/// The locked 2-dimensional representation.
pub fn rep2(x: Quat) -> CMatrix {
    Rep2Convention::STANDARD.rep(x)
}

/// `Σ coeff(e₁,e₂,e₃) · rep(e₁) ⊗ rep(e₂) ⊗ rep(e₃)` under `conv`.
pub fn emit_matrix_with(t: &QuatTensor3, conv: Rep2Convention) -> CMatrix {
    t.terms().fold(CMatrix::zeros(8, 8), |acc, (e, &z)| {
        let m = kron(&kron(&conv.basis_matrix(e[0]), &conv.basis_matrix(e[1])), &conv.basis_matrix(e[2]));
        acc.add(&m.scale(z)).expect("8x8")
    })
}

pub fn emit_matrix(t: &QuatTensor3) -> CMatrix {
    emit_matrix_with(t, Rep2Convention::STANDARD)
}

/// First candidate convention (in [`Rep2Convention::candidates`] order) whose
/// image of `t` is within `tol` of `target` in Frobenius norm.
pub fn lock_convention(t: &QuatTensor3, target: &CMatrix, tol: f64) -> Option<Rep2Convention> {
    Rep2Convention::candidates()
        .into_iter()
        .find(|&conv| frobenius_distance(&emit_matrix_with(t, conv), target).is_ok_and(|d| d <= tol))
}
