//! Hecke-algebra checks on braid representations: quadratic fits, Markov
//! trace factorization and Temperley–Lieb quotient dimensions.
//!
//! Convention: a generator `g` is in Hecke form when `(g - q)(g + 1) = 0`;
//! the idempotent attached to it is `e = (g + 1)/(q + 1)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::random_word_with;
use crate::error::{Error, Result};
use crate::gybe::{build_generator, represent, GybOperator};
use crate::linalg::{distinct_values, eigenvalues, CMatrix, Complex, LocalOp, Tolerance};

/// Two-eigenvalue fit of a braid generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeckeFit {
    pub lambda1: Complex,
    pub lambda2: Complex,
    pub q: Complex,
    /// Scalar `s` such that `s·a` has spectrum `{q, -1}`.
    pub rescale: Complex,
    /// `‖(a - λ₁)(a - λ₂)‖_F`.
    pub residual: f64,
}

/// Fits `a` to a quadratic relation. The eigenvalue with argument closest to
/// `π` is sent to `-1`; the other one, after rescaling, is `q`.
pub fn fit_quadratic(a: &CMatrix, tol: Tolerance) -> Result<HeckeFit> {
    let eigs = eigenvalues(a, tol)?;
    let magnitude = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let distinct = distinct_values(&eigs, 1e-6 * magnitude.max(1.0));
    let [(x, _), (y, _)] = distinct[..] else {
        return Err(Error::domain(format!(
            "quadratic fit needs exactly two distinct eigenvalues, found {}",
            distinct.len()
        )));
    };
    let off_negative_axis = |z: Complex| (PI - z.arg().abs()).abs();
    let (neg, other) = if off_negative_axis(x) <= off_negative_axis(y) { (x, y) } else { (y, x) };
    let residual = (&a.shift(-neg) * &a.shift(-other)).frobenius_norm();
    let rescale = -neg.inv();
    Ok(HeckeFit { lambda1: neg, lambda2: other, q: rescale * other, rescale, residual })
}

/// Smallest `k >= 1` with `z^k = 1` (within `tol`), up to `max_k`.
pub fn root_of_unity_order(z: Complex, max_k: u32, tol: f64) -> Option<u32> {
    (1..=max_k).find(|&k| (z.powu(k) - Complex::new(1.0, 0.0)).norm() <= tol)
}

/// Formula for the Markov weight `η` with `tr(b·e_{n-1}) = η·tr(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EtaFormula {
    /// `η = (1 - q⁻²)/(1 + q³)`.
    AsPrinted,
    /// `η = q(1 - q²)/((1 + q)(1 - q³))`, the weight of the rank-3 quotient.
    HeckeRank3,
}

impl EtaFormula {
    /// `None` when the denominator vanishes at `q`.
    pub fn eval(self, q: Complex) -> Option<Complex> {
        let one = Complex::new(1.0, 0.0);
        let (num, den) = match self {
            EtaFormula::AsPrinted => (one - q.powi(-2), one + q.powu(3)),
            EtaFormula::HeckeRank3 => (q * (one - q * q), (one + q) * (one - q.powu(3))),
        };
        (den.norm() > 1e-12).then(|| num / den)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceReport {
    pub n: usize,
    pub tr_identity: Complex,
    pub symmetry_residual: f64,
    /// `max |Tr(b·e_{n-1}) − η·Tr(b)|`; infinite when `η` is undefined.
    pub markov_residual: f64,
    pub eta: Option<Complex>,
    pub eta_formula: EtaFormula,
    /// `Tr(e_{n-1})`, the weight the data actually exhibits.
    pub observed_weight: Complex,
    pub q: Complex,
    pub rescale: Complex,
    /// Worst quadratic residual over all rescaled generators.
    pub fit_residual: f64,
    pub words_checked: usize,
    pub pass: bool,
}

/// Number of sampled word pairs for the trace symmetry check.
const SYMMETRY_SAMPLES: usize = 32;

/// Markov trace check on the image of `B_n` with the normalized trace
/// `Tr(x) = trace(x)/D`. The generators are rescaled to Hecke form by
/// [`fit_quadratic`]; `b` runs over every freely reduced word of length
/// `<= cap` in `g_1^{±1}, …, g_{n-2}^{±1}`.
pub fn markov_check(
    op: &GybOperator,
    n: usize,
    cap: usize,
    eta_formula: EtaFormula,
    tol: Tolerance,
    seed: u64,
) -> Result<TraceReport> {
    if n < 3 {
        return Err(Error::input(format!("Markov check needs n >= 3, got {n}")));
    }
    let fit = fit_quadratic(&build_generator(op, n, 1)?, tol)?;
    let g = op.rescaled(fit.rescale)?;
    let dim = g.rep_dim(n);
    let norm = 1.0 / dim as f64;
    let tr = |x: &CMatrix| x.trace() * norm;

    let one = Complex::new(1.0, 0.0);
    let mut fit_residual = 0.0f64;
    for i in 1..n {
        let gi = build_generator(&g, n, i)?;
        fit_residual = fit_residual.max((&gi.shift(-fit.q) * &gi.shift(one)).frobenius_norm());
    }

    let e = build_generator(&g, n, n - 1)?.shift(one).scale((fit.q + one).inv());
    let observed_weight = tr(&e);
    let tr_identity = tr(&CMatrix::identity(dim));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut symmetry_residual = 0.0f64;
    for _ in 0..SYMMETRY_SAMPLES {
        let a = represent(&g, &random_word_with(n, cap.max(1), &mut rng)?);
        let b = represent(&g, &random_word_with(n, cap.max(1), &mut rng)?);
        symmetry_residual =
            symmetry_residual.max(((trace_of_product(&a, &b) - trace_of_product(&b, &a)) * norm).norm());
    }

    let eta = eta_formula.eval(fit.q);
    let ops: Vec<LocalOp<'_>> = (1..n - 1)
        .flat_map(|i| {
            let (left, right) =
                (g.local_dim().pow(((i - 1) * g.m()) as u32), g.local_dim().pow(((n - i - 1) * g.m()) as u32));
            [LocalOp { left, op: g.matrix(), right }, LocalOp { left, op: g.inverse_matrix(), right }]
        })
        .collect();
    let eval = |b: &CMatrix| ((trace_of_product(b, &e) * norm) - eta.unwrap_or_default() * tr(b)).norm();
    let identity = CMatrix::identity(dim);
    let mut markov_residual = eval(&identity);
    let mut words_checked = 1;
    if cap > 0 {
        let (worst, count) = (0..ops.len())
            .into_par_iter()
            .map(|first| {
                let b = ops[first].apply_right(&identity);
                let mut acc = (0.0f64, 0usize);
                sweep(&ops, first, b, 1, cap, &eval, &mut acc);
                acc
            })
            .reduce(|| (0.0, 0), |x, y| (x.0.max(y.0), x.1 + y.1));
        markov_residual = markov_residual.max(worst);
        words_checked += count;
    }
    if eta.is_none() {
        markov_residual = f64::INFINITY;
    }

    let pass = (tr_identity - one).norm() <= tol.abs
        && tol.accepts(symmetry_residual, 1.0)
        && tol.accepts(markov_residual, 1.0)
        && tol.accepts(fit_residual, 1.0);
    Ok(TraceReport {
        n,
        tr_identity,
        symmetry_residual,
        markov_residual,
        eta,
        eta_formula,
        observed_weight,
        q: fit.q,
        rescale: fit.rescale,
        fit_residual,
        words_checked,
        pass,
    })
}

/// Depth-first walk over reduced words; `last` is the index of the last letter
/// (generator `2j` and its inverse `2j+1` cancel).
fn sweep(
    ops: &[LocalOp<'_>],
    last: usize,
    b: CMatrix,
    len: usize,
    cap: usize,
    eval: &(impl Fn(&CMatrix) -> f64 + Sync),
    acc: &mut (f64, usize),
) {
    acc.0 = acc.0.max(eval(&b));
    acc.1 += 1;
    if len == cap {
        return;
    }
    for (k, op) in ops.iter().enumerate() {
        if k ^ 1 == last {
            continue;
        }
        sweep(ops, k, op.apply_right(&b), len + 1, cap, eval, acc);
    }
}

/// `trace(a·b)` in `O(D²)`.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex {
    let n = a.rows();
    let mut s = Complex::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..a.cols() {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    s
}

/// Loop value `δ = 2cos(π/ℓ)` of the Temperley–Lieb algebra at `q = e^{2πi/ℓ}`.
pub fn tl_loop_value(ell: usize) -> f64 {
    2.0 * (PI / ell as f64).cos()
}

/// Non-crossing perfect matchings of `0..2n` as partner arrays.
pub fn noncrossing_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
        if points.is_empty() {
            out.push(Vec::new());
            return;
        }
        let first = points[0];
        for k in (1..points.len()).step_by(2) {
            let mut inner = Vec::new();
            rec(&points[1..k], &mut inner);
            let mut outer = Vec::new();
            rec(&points[k + 1..], &mut outer);
            for a in &inner {
                for b in &outer {
                    let mut pairs = vec![(first, points[k])];
                    pairs.extend_from_slice(a);
                    pairs.extend_from_slice(b);
                    out.push(pairs);
                }
            }
        }
    }
    let points: Vec<usize> = (0..2 * n).collect();
    let mut pairings = Vec::new();
    rec(&points, &mut pairings);
    pairings
        .into_iter()
        .map(|pairs| {
            let mut partner = vec![0; 2 * n];
            for (x, y) in pairs {
                partner[x] = y;
                partner[y] = x;
            }
            partner
        })
        .collect()
}

/// A Temperley–Lieb diagram on `n` strands: `partner[t]` for top points
/// `0..n` and bottom points `n..2n`, both read left to right.
fn tl_diagrams(n: usize) -> Vec<Vec<usize>> {
    // Boundary circle order: top left to right, then bottom right to left.
    let to_label = |p: usize| if p < n { p } else { n + (2 * n - 1 - p) };
    noncrossing_matchings(n)
        .into_iter()
        .map(|m| {
            let mut partner = vec![0; 2 * n];
            for (p, &r) in m.iter().enumerate() {
                partner[to_label(p)] = to_label(r);
            }
            partner
        })
        .collect()
}

/// Loops in the closure of the product `a·b` (`a` stacked on `b`).
fn closed_loops(a: &[usize], b: &[usize], n: usize) -> usize {
    // Nodes: a-points 0..2n, b-points 2n..4n. Each node has its matching edge
    // and one glue edge: a bottom i to b top i, b bottom i to a top i.
    let glue = |v: usize| -> usize {
        if v < 2 * n {
            if v >= n {
                2 * n + (v - n)
            } else {
                2 * n + n + v
            }
        } else {
            let w = v - 2 * n;
            if w < n {
                n + w
            } else {
                w - n
            }
        }
    };
    let matched = |v: usize| if v < 2 * n { a[v] } else { 2 * n + b[v - 2 * n] };
    let mut seen = vec![false; 4 * n];
    let mut loops = 0;
    for start in 0..4 * n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut v = start;
        loop {
            seen[v] = true;
            let u = matched(v);
            seen[u] = true;
            v = glue(u);
            if v == start {
                break;
            }
        }
    }
    loops
}

/// Dimensions of `TL_k / Ann(tr)` for `k = 1..=n` at `q = e^{2πi/ℓ}`: ranks of
/// the Gram matrices `tr(a·b) = δ^{loops − k}` over all planar diagrams.
pub fn tl_quotient_dims(ell: usize, n: usize) -> Result<Vec<usize>> {
    if ell < 3 || n < 1 {
        return Err(Error::input(format!("need ell >= 3 and n >= 1 (got ell={ell}, n={n})")));
    }
    let delta = tl_loop_value(ell);
    (1..=n)
        .map(|k| {
            let diagrams = tl_diagrams(k);
            let size = diagrams.len();
            let gram = DMatrix::from_fn(size, size, |i, j| {
                delta.powi(closed_loops(&diagrams[i], &diagrams[j], k) as i32 - k as i32)
            });
            let sv = gram.singular_values();
            let top = sv.iter().copied().fold(0.0, f64::max);
            Ok(sv.iter().filter(|&&s| s > 1e-8 * top).count())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::gyb31_operator;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn fit_on_diagonal_examples() {
        let q = Complex::from_polar(1.0, PI / 3.0);
        let a = CMatrix::from_diag(&[q, c(-1.0, 0.0), q]);
        let fit = fit_quadratic(&a, Tolerance::default()).unwrap();
        assert!((fit.rescale - c(1.0, 0.0)).norm() < 1e-12);
        assert!((fit.q - q).norm() < 1e-12);
        assert!(fit.residual < 1e-12);

        let zeta = Complex::from_polar(1.0, 0.4);
        let fit = fit_quadratic(&a.scale(zeta), Tolerance::default()).unwrap();
        assert!((fit.rescale - zeta.inv()).norm() < 1e-12);
        assert!((fit.q - q).norm() < 1e-12);

        assert!(fit_quadratic(&CMatrix::identity(3), Tolerance::default()).is_err());
    }

    #[test]
    fn fit_on_bundled_operator() {
        let op = gyb31_operator();
        let fit = fit_quadratic(&build_generator(&op, 3, 1).unwrap(), Tolerance::default()).unwrap();
        assert!(fit.residual < 1e-10);
        assert_eq!(root_of_unity_order(fit.q, 12, 1e-9), Some(6));
    }

    #[test]
    fn eta_formulas() {
        let q6 = Complex::from_polar(1.0, PI / 3.0);
        assert_eq!(EtaFormula::AsPrinted.eval(q6), None);
        assert!((EtaFormula::HeckeRank3.eval(q6).unwrap() - c(0.5, 0.0)).norm() < 1e-12);
        let q3 = Complex::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(EtaFormula::AsPrinted.eval(q3).is_some());
    }

    #[test]
    fn markov_trace_on_bundled_operator() {
        let op = gyb31_operator();
        let report = markov_check(&op, 4, 4, EtaFormula::HeckeRank3, Tolerance::abs(1e-8), 1).unwrap();
        assert!(report.pass, "{report:?}");
        assert!((report.observed_weight - c(0.5, 0.0)).norm() < 1e-12);
        assert!(report.symmetry_residual < 1e-12);
        let printed = markov_check(&op, 4, 2, EtaFormula::AsPrinted, Tolerance::abs(1e-8), 1).unwrap();
        assert!(!printed.pass && printed.markov_residual.is_infinite());
    }

    #[test]
    fn markov_residual_is_gauge_invariant() {
        let op = gyb31_operator();
        let tol = Tolerance::abs(1e-8);
        let base = markov_check(&op, 3, 4, EtaFormula::HeckeRank3, tol, 3).unwrap();
        // A phase small enough that the -1 eigenvalue stays the one nearest the negative axis.
        let scaled = op.rescaled(Complex::from_polar(1.0, 0.3)).unwrap();
        let other = markov_check(&scaled, 3, 4, EtaFormula::HeckeRank3, tol, 3).unwrap();
        assert!((base.markov_residual - other.markov_residual).abs() < 1e-10);
        assert!((base.q - other.q).norm() < 1e-10);
    }

    #[test]
    fn generators_satisfy_their_quadratic() {
        let op = gyb31_operator();
        for n in 3..=5 {
            let report = markov_check(&op, n, 0, EtaFormula::HeckeRank3, Tolerance::abs(1e-9), 0).unwrap();
            assert!(report.fit_residual < 1e-9, "n={n}");
        }
    }

    #[test]
    fn trace_of_product_matches_dense() {
        let a = CMatrix::from_fn(3, 3, |i, j| c(i as f64, j as f64));
        let b = CMatrix::from_fn(3, 3, |i, j| c((i * j) as f64, 1.0));
        assert!((trace_of_product(&a, &b) - (&a * &b).trace()).norm() < 1e-12);
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| noncrossing_matchings(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn identity_diagram_closes_to_n_loops() {
        for n in 1..=4 {
            let diagrams = tl_diagrams(n);
            let id: Vec<usize> = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
            assert!(diagrams.contains(&id));
            assert_eq!(closed_loops(&id, &id, n), n);
        }
    }

    #[test]
    fn tl_dims_generic_and_degenerate() {
        assert_eq!(tl_quotient_dims(7, 1).unwrap(), vec![1]);
        assert_eq!(tl_quotient_dims(50, 4).unwrap(), vec![1, 2, 5, 14]);
        assert_eq!(tl_quotient_dims(6, 6).unwrap(), vec![1, 2, 5, 14, 41, 122]);
        assert!(tl_quotient_dims(2, 3).is_err());
    }

    #[test]
    fn tl_dims_monotone_and_bounded() {
        let catalan = [1, 2, 5, 14, 42];
        for ell in 3..=12 {
            let dims = tl_quotient_dims(ell, 5).unwrap();
            for (k, (&d, &c)) in dims.iter().zip(&catalan).enumerate() {
                assert!(d <= c);
                if ell > 2 * (k + 1) {
                    assert_eq!(d, c, "ell={ell}, n={}", k + 1);
                }
            }
            assert!(dims.windows(2).all(|w| w[0] <= w[1]), "ell={ell}: {dims:?}");
        }
    }
}
