//! Dense symmetric matrices and a cyclic Jacobi eigensolver.
//!
//! Everything here is sized for desk-scale problems (dimension at most
//! [`MAX_DIM`]); the solver favours determinism over speed. Sweeps visit the
//! upper triangle in row-major order and stop once the largest off-diagonal
//! entry is below `1e-12` times the largest entry of the input.

use thiserror::Error;

pub const MAX_DIM: usize = 256;
const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    TooLarge(usize),
    #[error("Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")]
    NoConvergence,
}

/// A dense square matrix stored row-major. Constructors that take arbitrary
/// entries validate symmetry; the `*_sym` mutators keep it by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        Self {
            n,
            data: vec![1.0; n * n],
        }
    }

    /// Builds from rows, rejecting non-square or asymmetric input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NotSquare);
        }
        let m = Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        };
        m.check_symmetric()?;
        Ok(m)
    }

    /// Outer product `u u^T`.
    pub fn outer(u: &[f64]) -> Self {
        let n = u.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = u[i] * u[j];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn check_symmetric(&self) -> Result<(), LinalgError> {
        let tol = SYMMETRY_TOL * self.max_abs().max(1.0);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let gap = (self.get(i, j) - self.get(j, i)).abs();
                if gap > tol {
                    return Err(LinalgError::NotSymmetric { i, j, gap });
                }
            }
        }
        Ok(())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        dot(x, &self.mul_vec(y))
    }

    pub fn quadratic(&self, x: &[f64]) -> f64 {
        self.bilinear(x, x)
    }

    /// `B^T M B` where the columns of `B` are the given vectors.
    pub fn congruence(&self, basis: &[Vec<f64>]) -> SymMatrix {
        let k = basis.len();
        let images: Vec<Vec<f64>> = basis.iter().map(|b| self.mul_vec(b)).collect();
        let mut out = SymMatrix::zeros(k);
        for (i, b) in basis.iter().enumerate() {
            for (j, image) in images.iter().enumerate().skip(i) {
                out.set_sym(i, j, dot(b, image));
            }
        }
        out
    }
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// Eigen-decomposition with eigenvalues ascending. `vectors[k]` is the unit
/// eigenvector for `values[k]`, sign-normalized so that its first entry with
/// magnitude above `1e-12` is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl Eigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::INFINITY)
    }

    /// Indices of all eigenvalues within `tol` of the smallest one.
    pub fn min_eigenspace(&self, tol: f64) -> Vec<usize> {
        let lo = self.min();
        (0..self.values.len())
            .filter(|&k| self.values[k] - lo <= tol)
            .collect()
    }
}

/// Full symmetric eigen-decomposition by cyclic Jacobi rotations.
pub fn eigensolve_symmetric(m: &SymMatrix) -> Result<Eigen, LinalgError> {
    let n = m.dim();
    if n > MAX_DIM {
        return Err(LinalgError::TooLarge(n));
    }
    m.check_symmetric()?;
    let mut a = m.clone();
    // Symmetrize exactly so rotations see identical mirrored entries.
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set_sym(i, j, v);
        }
    }
    let mut v = SymMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * m.max_abs();

    let max_off = |a: &SymMatrix| {
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(a.get(i, j).abs());
            }
        }
        best
    };

    let mut sweeps = 0;
    while max_off(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence);
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq.abs() <= threshold * 1e-3 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, p, q, c, s);
                // Accumulate V <- V * R (columns p and q).
                for k in 0..n {
                    let vkp = v.data[k * n + p];
                    let vkq = v.data[k * n + q];
                    v.data[k * n + p] = c * vkp - s * vkq;
                    v.data[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values = order.iter().map(|&k| a.get(k, k)).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|r| v.get(r, k)).collect();
            if let Some(first) = col.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
            }
            col
        })
        .collect();
    Ok(Eigen { values, vectors })
}

/// Applies the similarity `A <- R^T A R` for a rotation in the `(p, q)` plane
/// chosen to zero `a[p][q]`.
fn rotate(a: &mut SymMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n;
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    let apq = a.get(p, q);
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set_sym(k, p, c * akp - s * akq);
        a.set_sym(k, q, s * akp + c * akq);
    }
    a.set_sym(p, p, c * c * app - 2.0 * s * c * apq + s * s * aqq);
    a.set_sym(q, q, s * s * app + 2.0 * s * c * apq + c * c * aqq);
    a.set_sym(p, q, 0.0);
}
