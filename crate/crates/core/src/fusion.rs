//! Fusion-matrix analysis: hom-space dimensions, period, inclusion matrices,
//! Perron–Frobenius integrality and multiplicity chains.
//!
//! Convention: `nx[i][j] = dim Hom(X_j, X ⊗ X_i)`. Hence the vector
//! `h_n[i] = dim Hom(X_i, X^{⊗n})` evolves as `h_{n+1} = nxᵀ · h_n`, and the
//! inclusion matrix `G_n` (rows indexed by the support of `h_n`, columns by
//! the support of `h_{n+1}`) is the corresponding block of `nx`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, as_integer, has_definite_sign, nullspace, LinearSolver, Rational};
use crate::linalg::{pf_eigendata, IntMatrix, Tolerance};

/// Fusion matrix of a tensor generator `X` together with the unit index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FusionFile", into = "FusionFile")]
pub struct FusionData {
    rank: usize,
    unit: usize,
    nx: IntMatrix,
    label: String,
    comment: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct FusionFile {
    rank: usize,
    unit: usize,
    label: String,
    nx: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
}

impl TryFrom<FusionFile> for FusionData {
    type Error = Error;

    fn try_from(f: FusionFile) -> Result<Self> {
        let mut data = FusionData::new(f.label, f.unit, IntMatrix::from_rows(&f.nx)?)?;
        if data.rank != f.rank {
            return Err(Error::input(format!("declared rank {} but nx is {}x{}", f.rank, data.rank, data.rank)));
        }
        data.comment = f.comment;
        Ok(data)
    }
}

impl From<FusionData> for FusionFile {
    fn from(d: FusionData) -> Self {
        FusionFile { rank: d.rank, unit: d.unit, label: d.label, nx: d.nx.to_rows(), comment: d.comment }
    }
}

impl FusionData {
    pub fn new(label: impl Into<String>, unit: usize, nx: IntMatrix) -> Result<Self> {
        let rank = nx.rows();
        if rank == 0 || !nx.is_square() {
            return Err(Error::input("fusion matrix must be square and nonempty"));
        }
        if unit >= rank {
            return Err(Error::input(format!("unit index {unit} out of range for rank {rank}")));
        }
        if !nx.is_nonnegative() {
            return Err(Error::input("fusion matrix has a negative entry"));
        }
        if let Some(i) = nx.irreducibility_witness() {
            return Err(Error::input(format!("fusion matrix is reducible (index {i} is disconnected)")));
        }
        Ok(FusionData { rank, unit, nx, label: label.into(), comment: None })
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn nx(&self) -> &IntMatrix {
        &self.nx
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    /// Relabels simple objects: new index `perm[i]` holds old object `i`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let n = self.rank;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::input("relabeling is not a permutation"));
        }
        let mut nx = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                nx.set(perm[i], perm[j], self.nx.get(i, j));
            }
        }
        FusionData::new(self.label.clone(), perm[self.unit], nx)
    }
}

/// `dim Hom(X_i, X^{⊗n})` for every simple `X_i`.
pub fn hom_dims(f: &FusionData, n: usize) -> Vec<i64> {
    let mut h = vec![0i64; f.rank];
    h[f.unit] = 1;
    for _ in 0..n {
        h = step(f, &h);
    }
    h
}

fn step(f: &FusionData, h: &[i64]) -> Vec<i64> {
    (0..f.rank).map(|j| (0..f.rank).map(|i| f.nx.get(i, j) * h[i]).sum()).collect()
}

fn support(h: &[i64]) -> Vec<usize> {
    h.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
}

/// Period `p` (first return of the unit) and stabilization horizon `l`
/// (first `n` by which every simple object has appeared in some `X^{⊗s}`, `s <= n`).
pub fn period_and_stabilization(f: &FusionData) -> Result<(usize, usize)> {
    let bound = f.rank * f.rank + 1;
    let mut h = hom_dims(f, 0);
    let mut seen: Vec<bool> = h.iter().map(|&x| x != 0).collect();
    let mut period = None;
    let mut stabilization = seen.iter().all(|&s| s).then_some(0);
    for n in 1..=bound {
        h = step(f, &h);
        if period.is_none() && h[f.unit] != 0 {
            period = Some(n);
        }
        for (s, &x) in seen.iter_mut().zip(&h) {
            *s |= x != 0;
        }
        if stabilization.is_none() && seen.iter().all(|&s| s) {
            stabilization = Some(n);
        }
        if let (Some(p), Some(l)) = (period, stabilization) {
            return Ok((p, l));
        }
    }
    Err(Error::domain(format!(
        "{}: X does not tensor-generate within {bound} steps (period {period:?}, stabilization {stabilization:?})",
        f.label
    )))
}

/// Block of `nx` linking the support of `h_n` to that of `h_{n+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionMatrix {
    pub n: usize,
    /// Simple objects indexing the rows (support of `h_n`).
    pub rows: Vec<usize>,
    /// Simple objects indexing the columns (support of `h_{n+1}`).
    pub cols: Vec<usize>,
    pub matrix: IntMatrix,
}

pub fn inclusion_matrix(f: &FusionData, n: usize) -> InclusionMatrix {
    let h = hom_dims(f, n);
    let rows = support(&h);
    let cols = support(&step(f, &h));
    let matrix = f.nx.submatrix(&rows, &cols);
    InclusionMatrix { n, rows, cols, matrix }
}

/// Floating-point integrality claim confirmed by exact eigenvalue arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntegralCheck {
    pub candidate: i64,
    pub near_integer: bool,
    pub exact: bool,
}

impl IntegralCheck {
    fn new(value: f64, matrix: &IntMatrix, tol: Tolerance) -> Self {
        let candidate = value.round() as i64;
        let near_integer = tol.accepts((value - value.round()).abs(), value.abs());
        let exact = near_integer && exact::is_integer_eigenvalue(matrix, candidate);
        IntegralCheck { candidate, near_integer, exact }
    }

    pub fn integral(&self) -> bool {
        self.near_integer && self.exact
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub label: String,
    pub fpdim: f64,
    pub fpdim_sq: f64,
    pub period: usize,
    pub stabilization: usize,
    /// Perron–Frobenius eigenvalue of `G = G_l ⋯ G_{l+p-1}`.
    pub big_lambda: f64,
    pub lambda_integral: bool,
    pub lambda_sq_integral: bool,
    pub big_lambda_integral: bool,
    pub lambda_check: IntegralCheck,
    pub lambda_sq_check: IntegralCheck,
    pub big_lambda_check: IntegralCheck,
    /// `FPdim(X)² ∈ ℕ`.
    pub verdict: bool,
}

/// Product `G_l · G_{l+1} ⋯ G_{l+p-1}`; square once the Bratteli diagram is periodic.
pub fn period_matrix(f: &FusionData) -> Result<IntMatrix> {
    let (p, l) = period_and_stabilization(f)?;
    let first = inclusion_matrix(f, l);
    let mut g = first.matrix.clone();
    let mut cols = first.cols;
    for n in l + 1..l + p {
        let next = inclusion_matrix(f, n);
        g = g.matmul(&next.matrix)?;
        cols = next.cols;
    }
    if cols != first.rows {
        return Err(Error::domain(format!("{}: support at n={} differs from support at n={}", f.label, l, l + p)));
    }
    Ok(g)
}

/// The Perron–Frobenius integrality test behind `FPdim(X)² ∈ ℕ`.
pub fn obstruction_test(f: &FusionData, tol: Tolerance) -> Result<ObstructionReport> {
    let pf = pf_eigendata(&f.nx)?;
    let lambda = pf.eigenvalue;
    let (period, stabilization) = period_and_stabilization(f)?;
    let g = period_matrix(f)?;
    let big_lambda = pf_eigendata(&g)?.eigenvalue;

    let nx_sq = f.nx.matmul(&f.nx)?;
    let lambda_check = IntegralCheck::new(lambda, &f.nx, tol);
    let lambda_sq_check = IntegralCheck::new(lambda * lambda, &nx_sq, tol);
    let big_lambda_check = IntegralCheck::new(big_lambda, &g, tol);
    Ok(ObstructionReport {
        label: f.label.clone(),
        fpdim: lambda,
        fpdim_sq: lambda * lambda,
        period,
        stabilization,
        big_lambda,
        lambda_integral: lambda_check.integral(),
        lambda_sq_integral: lambda_sq_check.integral(),
        big_lambda_integral: big_lambda_check.integral(),
        lambda_check,
        lambda_sq_check,
        big_lambda_check,
        verdict: lambda_sq_check.integral(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Feasible,
    /// No strictly positive rational chain exists at all.
    ProvenInfeasible,
    /// No integer chain with entries within the bound.
    Exhausted,
}

/// A chain `a_l, …, a_{l+window}` with `w^m a_n = G_n a_{n+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityWindow {
    pub w: u64,
    pub m: u32,
    pub start: usize,
    pub window: usize,
    pub bound: u64,
    pub vectors: Vec<Vec<i64>>,
    pub feasible: bool,
    pub status: SearchStatus,
    pub seeds_tried: u64,
}

impl MultiplicityWindow {
    /// Re-checks `w^m a_n = G_n a_{n+1}` exactly for every consecutive pair.
    pub fn verify(&self, f: &FusionData) -> bool {
        let scale = (self.w as i128).pow(self.m);
        self.feasible
            && self.vectors.len() == self.window + 1
            && self.vectors.iter().all(|v| v.iter().all(|&x| x > 0))
            && self.vectors.windows(2).enumerate().all(|(k, pair)| {
                let g = inclusion_matrix(f, self.start + k).matrix;
                g.cols() == pair[1].len()
                    && g.rows() == pair[0].len()
                    && g.mul_vec(&pair[1]).iter().zip(&pair[0]).all(|(&lhs, &a)| lhs as i128 == scale * a as i128)
            })
    }
}

/// Default seed bound for [`multiplicity_search`].
pub const DEFAULT_BOUND: u64 = 64;
/// Default window length for [`multiplicity_search`].
pub const DEFAULT_WINDOW: usize = 4;

/// Searches positive integer chains `a_l, …, a_{l+window}` (entries `<= bound`)
/// with `w^m a_n = G_n a_{n+1}`, starting at the stabilization horizon `l`.
///
/// Seeds `a_l` are tried in lexicographic order and each is propagated forward
/// by exact solving; the first complete chain wins.
pub fn multiplicity_search(f: &FusionData, w: u64, m: u32, window: usize, bound: u64) -> Result<MultiplicityWindow> {
    if w < 2 || m < 1 || window < 2 || bound < 1 {
        return Err(Error::input(format!(
            "need w >= 2, m >= 1, window >= 2, bound >= 1 (got w={w}, m={m}, window={window}, bound={bound})"
        )));
    }
    let (_, start) = period_and_stabilization(f)?;
    let steps: Vec<InclusionMatrix> = (start..start + window).map(|n| inclusion_matrix(f, n)).collect();
    let scale = (w as i128).checked_pow(m).ok_or_else(|| Error::input("w^m overflows"))?;
    let mut result = MultiplicityWindow {
        w,
        m,
        start,
        window,
        bound,
        vectors: Vec::new(),
        feasible: false,
        status: SearchStatus::Exhausted,
        seeds_tried: 0,
    };

    if chain_is_rationally_infeasible(&steps, scale) {
        result.status = SearchStatus::ProvenInfeasible;
        return Ok(result);
    }

    let solvers: Vec<(LinearSolver, Vec<usize>)> = steps
        .iter()
        .map(|s| {
            let solver = LinearSolver::new(&s.matrix);
            let free = solver.free_columns();
            (solver, free)
        })
        .collect();
    let dim = steps[0].rows.len();
    let mut seed = vec![1i128; dim];
    loop {
        result.seeds_tried += 1;
        let mut chain = vec![seed.clone()];
        if extend(&solvers, scale, bound as i128, &mut chain) {
            result.vectors = chain.into_iter().map(|v| v.into_iter().map(|x| x as i64).collect()).collect();
            result.feasible = true;
            result.status = SearchStatus::Feasible;
            return Ok(result);
        }
        if !next_tuple(&mut seed, bound as i128) {
            return Ok(result);
        }
    }
}

/// Odometer over `[1, bound]^len`, last coordinate fastest.
fn next_tuple(t: &mut [i128], bound: i128) -> bool {
    for x in t.iter_mut().rev() {
        if *x < bound {
            *x += 1;
            return true;
        }
        *x = 1;
    }
    false
}

fn extend(solvers: &[(LinearSolver, Vec<usize>)], scale: i128, bound: i128, chain: &mut Vec<Vec<i128>>) -> bool {
    let step = chain.len() - 1;
    if step == solvers.len() {
        return true;
    }
    let (solver, free) = &solvers[step];
    let rhs: Vec<i128> = chain[step].iter().map(|&a| a * scale).collect();
    let Some(tb) = solver.prepare(&rhs) else {
        return false;
    };
    let mut free_values = vec![1i128; free.len()];
    loop {
        let x = solver.complete(&tb, free, &free_values);
        let candidate: Option<Vec<i128>> =
            x.iter().map(|v| as_integer(v).filter(|&z| (1..=bound).contains(&z))).collect();
        if let Some(next) = candidate {
            chain.push(next);
            if extend(solvers, scale, bound, chain) {
                return true;
            }
            chain.pop();
        }
        if !next_tuple(&mut free_values, bound) {
            return false;
        }
    }
}

/// True when the homogeneous chain system has no strictly positive rational
/// solution that can be certified from its kernel: either the kernel is
/// trivial, or it is a line with no sign-definite direction.
fn chain_is_rationally_infeasible(steps: &[InclusionMatrix], scale: i128) -> bool {
    let dims: Vec<usize> = std::iter::once(steps[0].rows.len()).chain(steps.iter().map(|s| s.cols.len())).collect();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().sum();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (k, s) in steps.iter().enumerate() {
        for r in 0..s.matrix.rows() {
            let mut row = vec![Rational::from_integer(0); total];
            row[offsets[k] + r] = Rational::from_integer(scale);
            for c in 0..s.matrix.cols() {
                row[offsets[k + 1] + c] -= Rational::from_integer(s.matrix.get(r, c) as i128);
            }
            rows.push(row);
        }
    }
    let kernel = nullspace(rows);
    match kernel.len() {
        0 => true,
        1 => !has_definite_sign(&kernel[0]),
        _ => false,
    }
}
