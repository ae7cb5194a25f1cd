//! Exact rational linear algebra for small integer matrices.
//!
//! Entries are `Ratio<i128>`. The matrices handled here are fusion and
//! inclusion matrices of rank at most a few dozen with single-digit entries,
//! far from the range where `i128` intermediate values could overflow.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

pub type Rational = Ratio<i128>;

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn to_rational(m: &IntMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&x| Rational::from_integer(x as i128)).collect()).collect()
}

/// Gauss–Jordan elimination over the rationals.
pub fn rref(rows: Vec<Vec<Rational>>) -> Rref {
    let ncols = rows.first().map_or(0, Vec::len);
    rref_limited(rows, ncols)
}

pub fn rank(m: &IntMatrix) -> usize {
    rref(to_rational(m)).rank()
}

/// Basis of the right kernel `{x : m·x = 0}` over the rationals.
pub fn nullspace(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let reduced = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !reduced.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &p) in reduced.pivots.iter().enumerate() {
                v[p] = -reduced.rows[r][f];
            }
            v
        })
        .collect()
}

/// True iff `t` is an eigenvalue of the square integer matrix `m`, decided by
/// exact singularity of `m - t·I`.
pub fn is_integer_eigenvalue(m: &IntMatrix, t: i64) -> bool {
    assert!(m.is_square(), "eigenvalue test needs a square matrix");
    rank(&m.shift(t)) < m.rows()
}

/// Precomputed solver for `G·x = b` with `G` fixed and `b` varying.
///
/// Keeps the transform `T` with `T·G = rref(G)`.
#[derive(Debug, Clone)]
pub struct LinearSolver {
    transform: Vec<Vec<Rational>>,
    reduced: Rref,
    ncols: usize,
}

impl LinearSolver {
    pub fn new(g: &IntMatrix) -> Self {
        let (nr, nc) = (g.rows(), g.cols());
        let augmented: Vec<Vec<Rational>> = (0..nr)
            .map(|i| {
                let mut row: Vec<Rational> = g.row(i).iter().map(|&x| Rational::from_integer(x as i128)).collect();
                row.extend((0..nr).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        // Pivot only inside the G block so the identity block records T.
        let mut full = rref_limited(augmented, nc);
        let transform = full.rows.iter().map(|r| r[nc..].to_vec()).collect();
        full.rows.iter_mut().for_each(|r| r.truncate(nc));
        LinearSolver { transform, reduced: full, ncols: nc }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.reduced.pivots.contains(c)).collect()
    }

    /// Transforms `b` and checks the consistency rows. `None` if `G·x = b`
    /// has no solution.
    pub fn prepare(&self, b: &[i128]) -> Option<Vec<Rational>> {
        let tb: Vec<Rational> = self
            .transform
            .iter()
            .map(|row| row.iter().zip(b).fold(Rational::zero(), |acc, (t, &x)| acc + t * Rational::from_integer(x)))
            .collect();
        if tb[self.reduced.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(tb)
    }

    /// Completes a solution given values for the free columns (in the order of
    /// [`free_columns`](Self::free_columns)).
    pub fn complete(&self, tb: &[Rational], free: &[usize], free_values: &[i128]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.ncols];
        for (&f, &v) in free.iter().zip(free_values) {
            x[f] = Rational::from_integer(v);
        }
        for (r, &p) in self.reduced.pivots.iter().enumerate() {
            let mut value = tb[r];
            for (&f, &v) in free.iter().zip(free_values) {
                value -= self.reduced.rows[r][f] * Rational::from_integer(v);
            }
            x[p] = value;
        }
        x
    }
}

fn rref_limited(mut rows: Vec<Vec<Rational>>, pivot_cols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        rows[r].iter_mut().for_each(|x| *x *= inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    Rref { rows, pivots }
}

/// Integer value of a rational, if it is one.
pub fn as_integer(x: &Rational) -> Option<i128> {
    x.is_integer().then(|| x.to_integer())
}

/// True iff every entry is strictly positive, or every entry strictly negative.
pub fn has_definite_sign(v: &[Rational]) -> bool {
    v.iter().all(Signed::is_positive) || v.iter().all(Signed::is_negative)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_and_eigenvalues() {
        let a3 = int(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(rank(&a3), 2);
        assert!(is_integer_eigenvalue(&a3, 0));
        assert!(!is_integer_eigenvalue(&a3, 1));
        let sq = a3.matmul(&a3).unwrap();
        assert!(is_integer_eigenvalue(&sq, 2));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = int(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let basis = nullspace(to_rational(&m));
        assert_eq!(basis.len(), 2);
        for v in basis {
            for i in 0..3 {
                let s = m
                    .row(i)
                    .iter()
                    .zip(&v)
                    .fold(Rational::zero(), |a, (&x, y)| a + Rational::from_integer(x as i128) * y);
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn solver_handles_consistency_and_free_columns() {
        let g = int(&[&[1, 1, 0], &[0, 1, 1]]);
        let s = LinearSolver::new(&g);
        assert_eq!(s.free_columns(), vec![2]);
        let tb = s.prepare(&[3, 5]).unwrap();
        let x = s.complete(&tb, &[2], &[2]);
        assert_eq!(x, vec![Rational::from_integer(0), Rational::from_integer(3), Rational::from_integer(2)]);

        let over = int(&[&[1], &[1]]);
        let s = LinearSolver::new(&over);
        assert!(s.prepare(&[1, 2]).is_none());
        assert!(s.prepare(&[2, 2]).is_some());
    }
}
