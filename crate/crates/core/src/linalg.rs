//! Dense complex linear algebra.
//!
//! Every operator, braid generator and representation matrix in the crate is
//! a [`CMatrix`]: row-major, dense, finite entries only. Sizes stay small
//! (a few thousand rows at most), so no sparse storage is provided.
//!
//! Eigenvalues go through nalgebra's complex Schur decomposition and are only
//! guaranteed accurate for normal input.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Absolute/relative acceptance bound for Frobenius-norm residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if !(abs >= 0.0 && rel >= 0.0) || (abs == 0.0 && rel == 0.0) {
            return Err(Error::input(format!("tolerance needs abs >= 0, rel >= 0, not both zero (got {abs}, {rel})")));
        }
        Ok(Tolerance { abs, rel })
    }

    /// Purely absolute tolerance.
    pub fn abs(abs: f64) -> Self {
        assert!(abs > 0.0, "absolute tolerance must be positive");
        Tolerance { abs, rel: 0.0 }
    }

    /// `residual <= abs + rel * scale`.
    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.abs + self.rel * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-9 }
    }
}

/// Dense complex matrix in row-major order.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixFile", into = "MatrixFile")]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::input("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::input(format!("non-finite matrix entry at index {pos}")));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_diag(diag: &[Complex]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Builds a matrix from nested rows of complex numbers.
    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged rows"));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows.iter().map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `self + s·I`.
    pub fn shift(&self, s: Complex) -> CMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] += s;
        }
        m
    }

    fn check_same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::input(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        kron(self, other)
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        matmul(self, other)
    }

    pub fn dagger(&self) -> CMatrix {
        dagger(self)
    }

    /// Matrix inverse via LU.
    pub fn inverse(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::input("inverse of a non-square matrix"));
        }
        let inv = self.to_nalgebra().try_inverse().ok_or_else(|| Error::domain("matrix is singular"))?;
        CMatrix::from_nalgebra(&inv)
    }

    /// `self^n` by repeated squaring; `n = 0` gives the identity.
    pub fn pow(&self, mut n: u64) -> CMatrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex>) -> Result<CMatrix> {
        CMatrix::new(m.nrows(), m.ncols(), m.transpose().as_slice().to_vec())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on dimension mismatch; use [`matmul`] for the checked version.
impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        matmul(self, rhs).expect("matrix product dimension mismatch")
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// On-disk matrix layout: `{"rows", "cols", "entries": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixFile> for CMatrix {
    type Error = Error;

    fn try_from(f: MatrixFile) -> Result<Self> {
        let data = f.entries.into_iter().map(|[re, im]| Complex::new(re, im)).collect();
        CMatrix::new(f.rows, f.cols, data)
    }
}

impl From<CMatrix> for MatrixFile {
    fn from(m: CMatrix) -> Self {
        MatrixFile { rows: m.rows, cols: m.cols, entries: m.data.iter().map(|z| [z.re, z.im]).collect() }
    }
}

/// Kronecker product; block `(i, j)` equals `a[i, j] * b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut data = vec![Complex::new(0.0, 0.0); rows * cols];
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let s = a[(ai, aj)];
            if s == Complex::new(0.0, 0.0) {
                continue;
            }
            for bi in 0..b.rows {
                let row = ai * b.rows + bi;
                let base = row * cols + aj * b.cols;
                for bj in 0..b.cols {
                    data[base + bj] = s * b[(bi, bj)];
                }
            }
        }
    }
    CMatrix { rows, cols, data }
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols != b.rows {
        return Err(Error::input(format!("cannot multiply {}x{} by {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let mut out = CMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let out_row = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let s = a.data[i * a.cols + k];
            if s == Complex::new(0.0, 0.0) {
                continue;
            }
            let b_row = &b.data[k * b.cols..(k + 1) * b.cols];
            for (o, &x) in out_row.iter_mut().zip(b_row) {
                *o += s * x;
            }
        }
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}

pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    a.check_same_shape(b)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt())
}

/// Frobenius distance from the identity.
pub fn identity_residual(a: &CMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            let target = if i == j { 1.0 } else { 0.0 };
            s += (a[(i, j)] - Complex::new(target, 0.0)).norm_sqr();
        }
    }
    s.sqrt()
}

/// Worst of `‖a·a† − I‖_F` and `‖a†·a − I‖_F`.
pub fn unitarity_residual(a: &CMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::input("unitarity check on a non-square matrix"));
    }
    let ad = dagger(a);
    Ok(identity_residual(&(a * &ad)).max(identity_residual(&(&ad * a))))
}

pub fn is_unitary(a: &CMatrix, tol: Tolerance) -> Result<bool> {
    let n = a.rows as f64;
    Ok(tol.accepts(unitarity_residual(a)?, n.sqrt()))
}

/// All eigenvalues with multiplicity. Accurate for normal matrices only.
pub fn eigenvalues(a: &CMatrix, tol: Tolerance) -> Result<Vec<Complex>> {
    if !a.is_square() {
        return Err(Error::input("eigenvalues of a non-square matrix"));
    }
    let eps = (tol.abs.min(1e-9) * 1e-3).max(f64::EPSILON);
    let schur = nalgebra::linalg::Schur::try_new(a.to_nalgebra(), eps, 10_000)
        .ok_or_else(|| Error::Numerical(format!("Schur iteration did not converge on a {0}x{0} matrix", a.rows)))?;
    let (_, t) = schur.unpack();
    Ok((0..a.rows).map(|i| t[(i, i)]).collect())
}

/// Groups values that agree within `tol`, returning representatives with counts.
pub fn distinct_values(values: &[Complex], tol: f64) -> Vec<(Complex, usize)> {
    let mut out: Vec<(Complex, usize)> = Vec::new();
    for &z in values {
        match out.iter_mut().find(|(w, _)| (*w - z).norm() <= tol) {
            Some(slot) => slot.1 += 1,
            None => out.push((z, 1)),
        }
    }
    out
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "integer matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged rows"));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = self.get(i, k);
                if s == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += s * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `self - s·I`.
    pub fn shift(&self, s: i64) -> IntMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.data[i * self.cols + i] -= s;
        }
        m
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// First index not reachable from index 0 in the directed graph of
    /// nonzero entries, or (if all are reachable) the first index from which
    /// 0 is not reachable. `None` means strongly connected.
    pub fn irreducibility_witness(&self) -> Option<usize> {
        let n = self.rows;
        if n == 0 {
            return None;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for (j, s) in seen.iter_mut().enumerate() {
                    let edge = if forward { self.get(i, j) } else { self.get(j, i) };
                    if edge != 0 && !*s {
                        *s = true;
                        stack.push(j);
                    }
                }
            }
            seen
        };
        reach(true).iter().position(|&s| !s).or_else(|| reach(false).iter().position(|&s| !s))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// A random unitary: the `Q` factor of a matrix with independent uniform
/// entries in the unit square. Not Haar distributed, but generic.
pub fn random_unitary(n: usize, rng: &mut impl rand::Rng) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    CMatrix::from_nalgebra(&a.to_nalgebra().qr().q()).expect("QR of a finite matrix is finite")
}

/// Perron–Frobenius data of a nonnegative irreducible matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronFrobenius {
    pub eigenvalue: f64,
    /// Positive eigenvector, normalized to unit sum.
    pub vector: Vec<f64>,
    pub iterations: usize,
}

const PF_THRESHOLD: f64 = 1e-12;
const PF_MAX_ITER: usize = 1_000_000;

/// Spectral radius and positive eigenvector by power iteration on `I + m`.
///
/// The identity shift makes periodic (imprimitive) matrices primitive, so the
/// iteration converges for every irreducible input.
pub fn pf_eigendata(m: &IntMatrix) -> Result<PerronFrobenius> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::input("Perron-Frobenius data needs a nonempty square matrix"));
    }
    if !m.is_nonnegative() {
        return Err(Error::domain("Perron-Frobenius data needs a nonnegative matrix"));
    }
    if let Some(i) = m.irreducibility_witness() {
        return Err(Error::domain(format!("matrix is reducible: index {i} is not strongly connected to index 0")));
    }
    let n = m.rows();
    let mut v = vec![1.0 / n as f64; n];
    let mut growth = 1.0;
    for iter in 1..=PF_MAX_ITER {
        let mut w: Vec<f64> =
            (0..n).map(|i| v[i] + m.row(i).iter().zip(&v).map(|(&a, &x)| a as f64 * x).sum::<f64>()).collect();
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= s);
        growth = s;
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < PF_THRESHOLD {
            return Ok(PerronFrobenius { eigenvalue: growth - 1.0, vector: v, iterations: iter });
        }
    }
    Err(Error::Numerical(format!(
        "power iteration did not reach {PF_THRESHOLD:e} within {PF_MAX_ITER} steps (growth {growth})"
    )))
}

/// The operator `I_left ⊗ op ⊗ I_right` kept in factored form.
///
/// Multiplying a dense matrix by it costs `O(D² · dim(op))` instead of `O(D³)`.
#[derive(Debug, Clone)]
pub struct LocalOp<'a> {
    pub left: usize,
    pub op: &'a CMatrix,
    pub right: usize,
}

impl LocalOp<'_> {
    pub fn dim(&self) -> usize {
        self.left * self.op.rows() * self.right
    }

    pub fn dense(&self) -> CMatrix {
        kron(&kron(&CMatrix::identity(self.left), self.op), &CMatrix::identity(self.right))
    }

    /// `self · m`.
    pub fn apply_left(&self, m: &CMatrix) -> CMatrix {
        assert_eq!(m.rows(), self.dim(), "dimension mismatch");
        let k = self.op.rows();
        let (r, cols) = (self.right, m.cols());
        let mut out = CMatrix::zeros(m.rows(), cols);
        for x in 0..self.left {
            for y in 0..k {
                for z in 0..r {
                    let row = (x * k + y) * r + z;
                    let dst = &mut out.data[row * cols..(row + 1) * cols];
                    for yp in 0..k {
                        let s = self.op[(y, yp)];
                        if s == Complex::new(0.0, 0.0) {
                            continue;
                        }
                        let src_row = (x * k + yp) * r + z;
                        let src = &m.data[src_row * cols..(src_row + 1) * cols];
                        for (o, &v) in dst.iter_mut().zip(src) {
                            *o += s * v;
                        }
                    }
                }
            }
        }
        out
    }

    /// `m · self`.
    pub fn apply_right(&self, m: &CMatrix) -> CMatrix {
        assert_eq!(m.cols(), self.dim(), "dimension mismatch");
        let k = self.op.rows();
        let r = self.right;
        let mut out = CMatrix::zeros(m.rows(), m.cols());
        for row in 0..m.rows() {
            let src = &m.data[row * m.cols..(row + 1) * m.cols];
            let dst = &mut out.data[row * m.cols..(row + 1) * m.cols];
            for x in 0..self.left {
                for z in 0..r {
                    for yp in 0..k {
                        let v = src[(x * k + yp) * r + z];
                        if v == Complex::new(0.0, 0.0) {
                            continue;
                        }
                        for y in 0..k {
                            dst[(x * k + y) * r + z] += v * self.op[(yp, y)];
                        }
                    }
                }
            }
        }
        out
    }
}
