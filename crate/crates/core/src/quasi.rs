//! Quasi-braided vector spaces truncated at a finite level.
//!
//! The data is a braiding `c` on `V ⊗ V` and associators `a_{p,q}` acting on
//! `V^{⊗(p+1+q)}`, read as `(V^{⊗p} ⊗ V) ⊗ V^{⊗q} → V^{⊗p} ⊗ (V ⊗ V^{⊗q})`.
//! Boundary associators `a_{0,q}` and `a_{p,0}` are identities; any other
//! `(p, q)` up to the level that is not given explicitly is the identity too.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::{relator_instances, BraidWord};
use crate::error::{Error, Result};
use crate::linalg::{frobenius_distance, identity_residual, kron, CMatrix, Complex, Tolerance};

pub const DEFAULT_LEVEL: usize = 6;

#[derive(Debug, Clone)]
pub struct QuasiBraidedSpace {
    d: usize,
    c: CMatrix,
    c_inv: CMatrix,
    level: usize,
    assoc: BTreeMap<(usize, usize), CMatrix>,
}

/// One explicitly given associator in a quasi descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssocEntry {
    pub p: usize,
    pub q: usize,
    pub matrix: CMatrix,
}

/// JSON layout of a quasi-braided space file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiDescriptor {
    pub dim: usize,
    pub level: usize,
    pub c: CMatrix,
    #[serde(default)]
    pub assoc: Vec<AssocEntry>,
}

impl QuasiBraidedSpace {
    /// Identity associators at every `(p, q)`.
    pub fn trivial(d: usize, c: CMatrix, level: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::input(format!("local dimension must be >= 2, got {d}")));
        }
        if level < 1 {
            return Err(Error::input("truncation level must be >= 1"));
        }
        if c.rows() != d * d || c.cols() != d * d {
            return Err(Error::input(format!("braiding for dim={d} must be {0}x{0}", d * d)));
        }
        let c_inv = c.inverse()?;
        Ok(QuasiBraidedSpace { d, c, c_inv, level, assoc: BTreeMap::new() })
    }

    /// Sets `a_{p,q}`; `1 <= p, q <= level`.
    pub fn with_assoc(mut self, p: usize, q: usize, a: CMatrix) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::input(format!("a_{{{p},{q}}} is a boundary associator and fixed to the identity")));
        }
        if p > self.level || q > self.level {
            return Err(Error::Truncation { p, q, level: self.level });
        }
        let size = self.pow_d(p + 1 + q);
        if a.rows() != size || a.cols() != size {
            return Err(Error::input(format!("a_{{{p},{q}}} must be {size}x{size}, got {}x{}", a.rows(), a.cols())));
        }
        a.inverse()?;
        self.assoc.insert((p, q), a);
        Ok(self)
    }

    /// Associators `a_{p,q} = ω(p, q)·I` for all `1 <= p, q <= level`.
    pub fn scalar(d: usize, c: CMatrix, level: usize, omega: impl Fn(usize, usize) -> Complex) -> Result<Self> {
        let mut qbs = Self::trivial(d, c, level)?;
        for p in 1..=level {
            for q in 1..=level {
                let w = omega(p, q);
                if w.norm() == 0.0 {
                    return Err(Error::input(format!("scalar associator at ({p},{q}) is zero")));
                }
                let size = qbs.pow_d(p + 1 + q);
                qbs.assoc.insert((p, q), CMatrix::identity(size).scale(w));
            }
        }
        Ok(qbs)
    }

    pub fn from_descriptor(desc: QuasiDescriptor) -> Result<Self> {
        desc.assoc
            .into_iter()
            .try_fold(Self::trivial(desc.dim, desc.c, desc.level)?, |qbs, e| qbs.with_assoc(e.p, e.q, e.matrix))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_descriptor(serde_json::from_str(text)?)
    }

    pub fn to_descriptor(&self) -> QuasiDescriptor {
        QuasiDescriptor {
            dim: self.d,
            level: self.level,
            c: self.c.clone(),
            assoc: self.assoc.iter().map(|(&(p, q), m)| AssocEntry { p, q, matrix: m.clone() }).collect(),
        }
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn braiding(&self) -> &CMatrix {
        &self.c
    }

    pub fn level(&self) -> usize {
        self.level
    }

    fn pow_d(&self, e: usize) -> usize {
        self.d.pow(e as u32)
    }

    fn eye(&self, e: usize) -> CMatrix {
        CMatrix::identity(self.pow_d(e))
    }

    /// `a_{p,q}` on `V^{⊗(p+1+q)}`.
    pub fn assoc(&self, p: usize, q: usize) -> Result<CMatrix> {
        if p == 0 || q == 0 {
            return Ok(self.eye(p + 1 + q));
        }
        if p > self.level || q > self.level {
            return Err(Error::Truncation { p, q, level: self.level });
        }
        Ok(self.assoc.get(&(p, q)).cloned().unwrap_or_else(|| self.eye(p + 1 + q)))
    }

    fn local_c(&self, p: usize, q: usize, inverse: bool) -> CMatrix {
        let c = if inverse { &self.c_inv } else { &self.c };
        kron(&kron(&self.eye(p), c), &self.eye(q))
    }
}

/// The map closing the pentagon at `(p, q)`:
/// `a²_{p,q} = (I_p ⊗ a_{1,q})⁻¹ · a_{p,1+q} · a_{p+1,q} · (a_{p,1} ⊗ I_q)⁻¹`.
pub fn pentagon_a2(qbs: &QuasiBraidedSpace, p: usize, q: usize) -> Result<CMatrix> {
    build_a_n(qbs, 2, p, q)
}

/// `aʳ_{p,q}` on `V^{⊗(p+r+q)}`, moving a block of `r` factors:
/// `aʳ_{p,q} = (I_p ⊗ a_{r-1,q})⁻¹ · a^{r-1}_{p,1+q} · a_{p+r-1,q} · (a^{r-1}_{p,1} ⊗ I_q)⁻¹`,
/// with `a¹ = a`.
pub fn build_a_n(qbs: &QuasiBraidedSpace, r: usize, p: usize, q: usize) -> Result<CMatrix> {
    if r == 0 {
        return Err(Error::input("associator level r must be >= 1"));
    }
    if r == 1 {
        return qbs.assoc(p, q);
    }
    let left = kron(&qbs.eye(p), &qbs.assoc(r - 1, q)?).inverse()?;
    let middle = build_a_n(qbs, r - 1, p, 1 + q)?;
    let shifted = qbs.assoc(p + r - 1, q)?;
    let right = kron(&build_a_n(qbs, r - 1, p, 1)?, &qbs.eye(q)).inverse()?;
    Ok(&(&(&left * &middle) * &shifted) * &right)
}

/// Residual of `a(c⊗I)a⁻¹(I⊗c)a(c⊗I) = (I⊗c)a(c⊗I)a⁻¹(I⊗c)a` on `V^{⊗3}`, `a = a_{1,1}`.
pub fn check_axiom1(qbs: &QuasiBraidedSpace) -> Result<f64> {
    let a = qbs.assoc(1, 1)?;
    let a_inv = a.inverse()?;
    let c1 = qbs.local_c(0, 1, false);
    let c2 = qbs.local_c(1, 0, false);
    let lhs = [&a, &c1, &a_inv, &c2, &a, &c1].into_iter().fold(qbs.eye(3), |acc, m| &acc * m);
    let rhs = [&c2, &a, &c1, &a_inv, &c2, &a].into_iter().fold(qbs.eye(3), |acc, m| &acc * m);
    frobenius_distance(&lhs, &rhs)
}

/// `‖a²_{p,q}·(I_p⊗c⊗I_q) − (I_p⊗c⊗I_q)·a²_{p,q}‖_F`.
pub fn check_axiom2(qbs: &QuasiBraidedSpace, p: usize, q: usize) -> Result<f64> {
    let a2 = pentagon_a2(qbs, p, q)?;
    let c = qbs.local_c(p, q, false);
    frobenius_distance(&(&a2 * &c), &(&c * &a2))
}

/// Generator `c_i` of the quasi representation of `B_n` on `V^{⊗n}` (or its inverse).
pub fn quasi_generator(qbs: &QuasiBraidedSpace, n: usize, i: usize, inverse: bool) -> Result<CMatrix> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::input(format!("generator index {i} out of range for B_{n}")));
    }
    if n - 2 > qbs.level {
        return Err(Error::Truncation { p: n - 2, q: 1, level: qbs.level });
    }
    let tail = qbs.eye(n - i - 1);
    let a = kron(&qbs.assoc(i - 1, 1)?, &tail);
    let a_inv = kron(&qbs.assoc(i - 1, 1)?.inverse()?, &tail);
    let c = qbs.local_c(i - 1, n - i - 1, inverse);
    Ok(&(&a_inv * &c) * &a)
}

/// `c_{w₁}^{±1} ⋯ c_{w_ℓ}^{±1}` on `V^{⊗n}`.
pub fn quasi_represent(qbs: &QuasiBraidedSpace, w: &BraidWord) -> Result<CMatrix> {
    let n = w.strands();
    let mut cache: BTreeMap<i32, CMatrix> = BTreeMap::new();
    let mut acc = qbs.eye(n);
    for &g in w.letters() {
        let gen = match cache.entry(g) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(quasi_generator(qbs, n, g.unsigned_abs() as usize, g < 0)?),
        };
        acc = &acc * &*gen;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axiom2Residual {
    pub p: usize,
    pub q: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiReport {
    pub axiom1: f64,
    pub axiom2: Vec<Axiom2Residual>,
    /// Worst `‖ρ(relator) − I‖_F` per strand count.
    pub relations: Vec<(usize, f64)>,
    pub pass: bool,
}

/// Axiom 1, axiom 2 at every `(p, q)` the truncation allows, and the braid
/// relations for `n = 3 ..= min(level + 2, max_n)`.
pub fn verify(qbs: &QuasiBraidedSpace, max_n: usize, tol: Tolerance) -> Result<QuasiReport> {
    let axiom1 = check_axiom1(qbs)?;
    let mut axiom2 = Vec::new();
    for p in 1..qbs.level {
        for q in 1..qbs.level {
            axiom2.push(Axiom2Residual { p, q, residual: check_axiom2(qbs, p, q)? });
        }
    }
    let mut relations = Vec::new();
    for n in 3..=max_n.min(qbs.level + 2) {
        let worst = relator_instances(n)?
            .iter()
            .map(|r| quasi_represent(qbs, &r.word).map(|m| identity_residual(&m)))
            .try_fold(0.0f64, |acc, r| r.map(|x| acc.max(x)))?;
        relations.push((n, worst));
    }
    let pass = tol.accepts(axiom1, 1.0)
        && axiom2.iter().all(|a| tol.accepts(a.residual, 1.0))
        && relations.iter().all(|&(_, r)| tol.accepts(r, 1.0));
    Ok(QuasiReport { axiom1, axiom2, relations, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::random_word_with;
    use crate::gybe::{random_braided_operator, represent, swap_with_phases, GybOperator};
    use crate::linalg::random_unitary;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn swap() -> CMatrix {
        swap_with_phases(2, &[vec![z(1.0, 0.0); 2], vec![z(1.0, 0.0); 2]]).unwrap()
    }

    fn omega(p: usize, q: usize) -> Complex {
        Complex::from_polar(1.0, 0.3 * p as f64 + 0.7 * (q * q) as f64)
    }

    #[test]
    fn identity_associators_give_identity_a_n() {
        let qbs = QuasiBraidedSpace::trivial(2, swap(), 3).unwrap();
        for r in 1..=3 {
            assert_eq!(build_a_n(&qbs, r, 1, 1).unwrap(), CMatrix::identity(2usize.pow(2 + r as u32)));
        }
        assert_eq!(pentagon_a2(&qbs, 0, 0).unwrap(), CMatrix::identity(4));
    }

    #[test]
    fn boundary_pentagon_is_identity_for_any_associators() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let qbs =
            QuasiBraidedSpace::trivial(2, swap(), 2).unwrap().with_assoc(1, 1, random_unitary(8, &mut rng)).unwrap();
        for q in 0..2 {
            assert!(identity_residual(&pentagon_a2(&qbs, 0, q).unwrap()) < 1e-12);
        }
        assert!(identity_residual(&pentagon_a2(&qbs, 1, 0).unwrap()) < 1e-12);
    }

    #[test]
    fn scalar_pentagon_matches_cocycle_combination() {
        let qbs = QuasiBraidedSpace::scalar(2, swap(), 3, omega).unwrap();
        for (p, q) in [(1, 1), (1, 2), (2, 1)] {
            let expected = omega(p, 1 + q) * omega(p + 1, q) / (omega(1, q) * omega(p, 1));
            let a2 = pentagon_a2(&qbs, p, q).unwrap();
            let target = CMatrix::identity(a2.rows()).scale(expected);
            assert!(frobenius_distance(&a2, &target).unwrap() < 1e-12);
        }
    }

    #[test]
    fn a2_is_level_two_of_the_induction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let qbs = QuasiBraidedSpace::trivial(2, swap(), 3)
            .unwrap()
            .with_assoc(1, 1, random_unitary(8, &mut rng))
            .unwrap()
            .with_assoc(1, 2, random_unitary(16, &mut rng))
            .unwrap()
            .with_assoc(2, 1, random_unitary(16, &mut rng))
            .unwrap();
        let a2 = pentagon_a2(&qbs, 1, 1).unwrap();
        let expected = {
            let l = kron(&CMatrix::identity(2), &qbs.assoc(1, 1).unwrap()).inverse().unwrap();
            let r = kron(&qbs.assoc(1, 1).unwrap(), &CMatrix::identity(2)).inverse().unwrap();
            &(&(&l * &qbs.assoc(1, 2).unwrap()) * &qbs.assoc(2, 1).unwrap()) * &r
        };
        assert!(frobenius_distance(&a2, &expected).unwrap() < 1e-12);
        assert_eq!(build_a_n(&qbs, 1, 2, 1).unwrap(), qbs.assoc(2, 1).unwrap());
    }

    #[test]
    fn truncation_is_reported() {
        let qbs = QuasiBraidedSpace::trivial(2, swap(), 1).unwrap();
        assert!(matches!(pentagon_a2(&qbs, 1, 1), Err(Error::Truncation { .. })));
        let w = BraidWord::new(4, vec![1]).unwrap();
        assert!(matches!(quasi_represent(&qbs, &w), Err(Error::Truncation { .. })));
        assert!(qbs.clone().with_assoc(2, 1, CMatrix::identity(16)).is_err());
        assert!(qbs.with_assoc(1, 1, CMatrix::identity(4)).is_err());
    }

    #[test]
    fn axiom1_residuals() {
        let trivial = QuasiBraidedSpace::trivial(2, swap(), 2).unwrap();
        assert_eq!(check_axiom1(&trivial).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let generic = QuasiBraidedSpace::trivial(2, random_unitary(4, &mut rng), 2).unwrap();
        let residual = check_axiom1(&generic).unwrap();
        assert!(residual > 0.1, "random unitary happened to satisfy the braid relation: {residual}");

        let c = generic.braiding().clone();
        let scalar = QuasiBraidedSpace::scalar(2, c, 2, omega).unwrap();
        assert!((check_axiom1(&scalar).unwrap() - residual).abs() < 1e-12);
    }

    #[test]
    fn axiom2_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let c = random_unitary(4, &mut rng);
        let trivial = QuasiBraidedSpace::trivial(2, c.clone(), 2).unwrap();
        assert_eq!(check_axiom2(&trivial, 1, 1).unwrap(), 0.0);
        let scalar = QuasiBraidedSpace::scalar(2, c.clone(), 2, omega).unwrap();
        assert!(check_axiom2(&scalar, 1, 1).unwrap() < 1e-12);

        let generic = QuasiBraidedSpace::trivial(2, c, 2)
            .unwrap()
            .with_assoc(1, 1, random_unitary(8, &mut rng))
            .unwrap()
            .with_assoc(1, 2, random_unitary(16, &mut rng))
            .unwrap()
            .with_assoc(2, 1, random_unitary(16, &mut rng))
            .unwrap();
        assert!(check_axiom2(&generic, 1, 1).unwrap() > 0.1);
    }

    #[test]
    fn trivial_associators_reduce_to_braided_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let op = random_braided_operator(2, &mut rng).unwrap();
            let qbs = QuasiBraidedSpace::trivial(2, op.matrix().clone(), 3).unwrap();
            let n = rng.gen_range(2..=5);
            let w = random_word_with(n, 8, &mut rng).unwrap();
            let lhs = quasi_represent(&qbs, &w).unwrap();
            assert!(frobenius_distance(&lhs, &represent(&op, &w)).unwrap() <= 1e-14);
        }
        let empty = BraidWord::identity(4).unwrap();
        let qbs = QuasiBraidedSpace::trivial(2, swap(), 2).unwrap();
        assert_eq!(quasi_represent(&qbs, &empty).unwrap(), CMatrix::identity(16));
    }

    #[test]
    fn scalar_associators_keep_relations() {
        let op = GybOperator::braided(2, swap()).unwrap();
        let qbs = QuasiBraidedSpace::scalar(2, op.matrix().clone(), 3, omega).unwrap();
        let report = verify(&qbs, 5, Tolerance::abs(1e-10)).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.relations.len(), 3);
    }

    #[test]
    fn descriptor_roundtrip() {
        let qbs = QuasiBraidedSpace::scalar(2, swap(), 2, omega).unwrap();
        let text = serde_json::to_string(&qbs.to_descriptor()).unwrap();
        let back = QuasiBraidedSpace::from_json(&text).unwrap();
        assert_eq!(back.assoc(2, 2).unwrap(), qbs.assoc(2, 2).unwrap());
        let missing = r#"{"dim": 2, "level": 2, "c": {"rows": 4, "cols": 4, "entries": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]}}"#;
        let q = QuasiBraidedSpace::from_json(missing).unwrap();
        assert_eq!(q.assoc(1, 1).unwrap(), CMatrix::identity(8));
    }
}
