//! `(k, m)`-generalized Yang–Baxter operators and the braid group
//! representations they induce.
//!
//! An operator `c` on `V^{⊗k}` gives generators `σ_i ↦ I^{⊗(i-1)m} ⊗ c ⊗ I^{⊗(n-i-1)m}`
//! on `V^{⊗(k + m(n-2))}`: consecutive generators overlap in `k - m` tensor
//! factors and the `n - 1` of them tile the space exactly.

use std::collections::HashMap;
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{relator_instances, BraidWord, RelatorKind};
use crate::error::{Error, Result};
use crate::linalg::{
    distinct_values, frobenius_distance, identity_residual, kron, CMatrix, Complex, LocalOp, Tolerance,
};

/// Invertible `c` on `V^{⊗k}` with `dim V = d`, together with the shift `m`.
#[derive(Debug, Clone)]
pub struct GybOperator {
    k: usize,
    m: usize,
    d: usize,
    c: CMatrix,
    c_inv: CMatrix,
}

/// JSON layout of a gYB operator file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GybDescriptor {
    pub k: usize,
    pub m: usize,
    pub dim: usize,
    pub matrix: CMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl GybOperator {
    pub fn new(k: usize, m: usize, d: usize, c: CMatrix) -> Result<Self> {
        if k < 2 || m < 1 || k <= m {
            return Err(Error::input(format!("need k >= 2, m >= 1 and k > m (got k={k}, m={m})")));
        }
        if d < 2 {
            return Err(Error::input(format!("local dimension must be >= 2, got {d}")));
        }
        let size = d.checked_pow(k as u32).ok_or_else(|| Error::input("operator size overflows"))?;
        if c.rows() != size || c.cols() != size {
            return Err(Error::input(format!(
                "operator for dim={d}, k={k} must be {size}x{size}, got {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        let c_inv = c.inverse()?;
        Ok(GybOperator { k, m, d, c, c_inv })
    }

    /// A classical Yang–Baxter operator, i.e. `(k, m) = (2, 1)`.
    pub fn braided(d: usize, c: CMatrix) -> Result<Self> {
        Self::new(2, 1, d, c)
    }

    pub fn from_descriptor(desc: GybDescriptor) -> Result<Self> {
        Self::new(desc.k, desc.m, desc.dim, desc.matrix)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_descriptor(serde_json::from_str(text)?)
    }

    pub fn to_descriptor(&self) -> GybDescriptor {
        GybDescriptor { k: self.k, m: self.m, dim: self.d, matrix: self.c.clone(), comment: None }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.c
    }

    pub fn inverse_matrix(&self) -> &CMatrix {
        &self.c_inv
    }

    /// Number of tensor factors the representation of `B_n` acts on.
    pub fn factors(&self, n: usize) -> usize {
        self.k + self.m * (n - 2)
    }

    /// `d^{k + m(n-2)}`.
    pub fn rep_dim(&self, n: usize) -> usize {
        self.d.pow(self.factors(n) as u32)
    }

    fn pow_d(&self, e: usize) -> usize {
        self.d.pow(e as u32)
    }

    /// Multiplies every entry by `s`.
    pub fn rescaled(&self, s: Complex) -> Result<Self> {
        Self::new(self.k, self.m, self.d, self.c.scale(s))
    }

    fn local(&self, n: usize, i: usize, inverse: bool) -> LocalOp<'_> {
        LocalOp {
            left: self.pow_d((i - 1) * self.m),
            op: if inverse { &self.c_inv } else { &self.c },
            right: self.pow_d((n - i - 1) * self.m),
        }
    }
}

/// A residual together with its verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub residual: f64,
    pub pass: bool,
}

impl Check {
    fn new(residual: f64, tol: Tolerance, scale: f64) -> Self {
        Check { residual, pass: tol.accepts(residual, scale) }
    }
}

/// Residual of `(c⊗I)(I⊗c)(c⊗I) = (I⊗c)(c⊗I)(I⊗c)` with `I = I_{d^m}`.
pub fn check_gybe(op: &GybOperator, tol: Tolerance) -> Check {
    let pad = CMatrix::identity(op.pow_d(op.m));
    let left = kron(&op.c, &pad);
    let right = kron(&pad, &op.c);
    let lhs = &(&left * &right) * &left;
    let rhs = &(&right * &left) * &right;
    let residual = frobenius_distance(&lhs, &rhs).expect("same shape");
    Check::new(residual, tol, lhs.frobenius_norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FarCommutation {
    /// Generator distance `j - i`.
    pub distance: usize,
    pub residual: f64,
    pub pass: bool,
}

/// Commutator residuals of `c_1` and `c_{1+δ}` for every distance `δ >= 2`
/// at which their supports still overlap (`δ·m < k`). Empty when `k <= 2m`.
pub fn check_far_commutativity(op: &GybOperator, tol: Tolerance) -> Vec<FarCommutation> {
    (2..)
        .take_while(|delta| delta * op.m < op.k)
        .map(|distance| {
            let pad = CMatrix::identity(op.pow_d(op.m * distance));
            let left = kron(&op.c, &pad);
            let right = kron(&pad, &op.c);
            let ab = &left * &right;
            let ba = &right * &left;
            let residual = frobenius_distance(&ab, &ba).expect("same shape");
            FarCommutation { distance, residual, pass: tol.accepts(residual, ab.frobenius_norm()) }
        })
        .collect()
}

fn check_generator_index(n: usize, i: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::input(format!("braid group needs n >= 2 strands, got {n}")));
    }
    if i == 0 || i >= n {
        return Err(Error::input(format!("generator index {i} out of range 1..={}", n - 1)));
    }
    Ok(())
}

/// Dense matrix of `σ_i` in the representation of `B_n`.
pub fn build_generator(op: &GybOperator, n: usize, i: usize) -> Result<CMatrix> {
    check_generator_index(n, i)?;
    Ok(op.local(n, i, false).dense())
}

/// Dense matrix of `σ_i⁻¹`, built from the cached `c⁻¹`.
pub fn build_generator_inverse(op: &GybOperator, n: usize, i: usize) -> Result<CMatrix> {
    check_generator_index(n, i)?;
    Ok(op.local(n, i, true).dense())
}

/// Image of a braid word: the ordered product of generator matrices.
pub fn represent(op: &GybOperator, w: &BraidWord) -> CMatrix {
    let n = w.strands();
    w.letters().iter().fold(CMatrix::identity(op.rep_dim(n)), |acc, &g| {
        op.local(n, g.unsigned_abs() as usize, g < 0).apply_right(&acc)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub pass: bool,
    pub worst_residual: f64,
    pub residuals: Vec<(RelatorKind, f64)>,
}

/// Evaluates every relator of `B_n`; passes iff each maps within `tol` of `I`.
pub fn check_braid_relations(op: &GybOperator, n: usize, tol: Tolerance) -> Result<RelationReport> {
    let relators = relator_instances(n)?;
    let scale = (op.rep_dim(n) as f64).sqrt();
    let residuals: Vec<(RelatorKind, f64)> =
        relators.par_iter().map(|r| (r.kind, identity_residual(&represent(op, &r.word)))).collect();
    let worst_residual = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    let pass = residuals.iter().all(|r| tol.accepts(r.1, scale));
    Ok(RelationReport { n, pass, worst_residual, residuals })
}

/// Eigenvalue pattern `{-χ, χ e^{iθ}}` test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumClass {
    pub eigenvalues: Vec<Complex>,
    /// Distinct eigenvalues with multiplicities.
    pub distinct: Vec<(Complex, usize)>,
    pub chi: Option<Complex>,
    pub matches_ratio: bool,
    pub theta: f64,
}

/// Checks whether the distinct eigenvalues are exactly `{a, b}` with
/// `b / a = -e^{iθ}` (then `χ = -a`) or `a / b = -e^{iθ}` (then `χ = -b`).
pub fn classify_spectrum(eigs: &[Complex], theta: f64, tol: Tolerance) -> Result<SpectrumClass> {
    if eigs.is_empty() {
        return Err(Error::input("empty eigenvalue list"));
    }
    let magnitude = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let distinct = distinct_values(eigs, tol.abs + tol.rel * magnitude);
    let target = -Complex::from_polar(1.0, theta);
    let mut chi = None;
    if let [(a, _), (b, _)] = distinct[..] {
        let fits = |num: Complex, den: Complex| (num / den - target).norm() <= tol.abs + tol.rel;
        if fits(b, a) {
            chi = Some(-a);
        } else if fits(a, b) {
            chi = Some(-b);
        }
    }
    Ok(SpectrumClass { eigenvalues: eigs.to_vec(), distinct, matches_ratio: chi.is_some(), chi, theta })
}

/// The angle `2π/6` of the sixth-root eigenvalue ratio.
pub const SIXTH_ROOT_ANGLE: f64 = 2.0 * PI / 6.0;

/// Smallest `N <= max_n` with `a^N` proportional to the identity.
pub fn projective_order(a: &CMatrix, max_n: u64, tol: Tolerance) -> Result<Option<u64>> {
    if !a.is_square() {
        return Err(Error::input("projective order of a non-square matrix"));
    }
    let dim = a.rows() as f64;
    let mut power = CMatrix::identity(a.rows());
    for n in 1..=max_n {
        power = &power * a;
        let lambda = power.trace() / dim;
        let residual = frobenius_distance(&power, &CMatrix::identity(a.rows()).scale(lambda))?;
        if tol.accepts(residual, power.frobenius_norm()) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Outcome of a bounded projective closure of a braid group image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub closed: bool,
    pub size: usize,
    pub budget_exhausted: bool,
}

const HASH_SCALE: f64 = 1e6;
const PROJECTIVE_EQ: f64 = 1e-8;

/// Divides by the phase of the first entry with modulus above `0.5/√dim`.
fn phase_normalize(m: &CMatrix) -> CMatrix {
    let threshold = 0.5 / (m.rows() as f64).sqrt();
    let pivot = m
        .entries()
        .iter()
        .find(|z| z.norm() > threshold)
        .or_else(|| m.entries().iter().max_by(|a, b| a.norm().total_cmp(&b.norm())))
        .copied()
        .unwrap_or(Complex::new(1.0, 0.0));
    if pivot.norm() == 0.0 {
        return m.clone();
    }
    m.scale(pivot.norm() / pivot)
}

fn hash_key(m: &CMatrix) -> Vec<(i64, i64)> {
    m.entries().iter().map(|z| ((z.re * HASH_SCALE).round() as i64, (z.im * HASH_SCALE).round() as i64)).collect()
}

/// Breadth-first closure of the group generated by `σ_1^{±1}, …, σ_{n-1}^{±1}`,
/// with elements identified up to a scalar phase.
pub fn image_closure(op: &GybOperator, n: usize, budget: usize) -> Result<ClosureReport> {
    if n < 2 {
        return Err(Error::input(format!("braid group needs n >= 2 strands, got {n}")));
    }
    if budget == 0 {
        return Err(Error::input("closure budget must be >= 1"));
    }
    let gens: Vec<LocalOp<'_>> = (1..n).flat_map(|i| [op.local(n, i, false), op.local(n, i, true)]).collect();

    let mut elements: Vec<CMatrix> = Vec::new();
    let mut index: HashMap<Vec<(i64, i64)>, Vec<usize>> = HashMap::new();
    let mut insert = |m: CMatrix, elements: &mut Vec<CMatrix>| -> bool {
        let normal = phase_normalize(&m);
        let bucket = index.entry(hash_key(&normal)).or_default();
        let known = bucket
            .iter()
            .any(|&j| frobenius_distance(&phase_normalize(&elements[j]), &normal).is_ok_and(|d| d <= PROJECTIVE_EQ));
        if known {
            return false;
        }
        bucket.push(elements.len());
        elements.push(m);
        true
    };

    insert(CMatrix::identity(op.rep_dim(n)), &mut elements);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &e in &frontier {
            for g in &gens {
                let product = g.apply_right(&elements[e]);
                if insert(product, &mut elements) {
                    next.push(elements.len() - 1);
                    if elements.len() > budget {
                        return Ok(ClosureReport { closed: false, size: elements.len(), budget_exhausted: true });
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(ClosureReport { closed: true, size: elements.len(), budget_exhausted: false })
}

/// `c(e_i ⊗ e_j) = phase[i][j] · e_j ⊗ e_i`: a Yang–Baxter operator for any phases.
pub fn swap_with_phases(d: usize, phases: &[Vec<Complex>]) -> Result<CMatrix> {
    if phases.len() != d || phases.iter().any(|r| r.len() != d) {
        return Err(Error::input(format!("phase table must be {d}x{d}")));
    }
    let mut c = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            c[(j * d + i, i * d + j)] = phases[i][j];
        }
    }
    Ok(c)
}

/// A random unitary `(2, 1)` operator: phased swap conjugated by `Q ⊗ Q` with
/// `Q` a random monomial unitary (permutation times diagonal phases).
pub fn random_braided_operator(d: usize, rng: &mut impl Rng) -> Result<GybOperator> {
    let mut phase = || Complex::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
    let phases: Vec<Vec<Complex>> = (0..d).map(|_| (0..d).map(|_| phase()).collect()).collect();
    let q_phases: Vec<Complex> = (0..d).map(|_| phase()).collect();
    let base = swap_with_phases(d, &phases)?;
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut q = CMatrix::zeros(d, d);
    for (i, &p) in perm.iter().enumerate() {
        q[(p, i)] = q_phases[i];
    }
    let qq = kron(&q, &q);
    let c = &(&qq * &base) * &qq.dagger();
    GybOperator::braided(d, c)
}
