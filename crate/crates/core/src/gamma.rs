//! Laplacian and the Bakry-Émery operators `Γ1`, `Γ2` on a graph.
//!
//! With the unnormalized Laplacian `Δf(x) = Σ_{y~x} (f(y) - f(x))`:
//!
//! ```text
//! Γ1(f,h)(x) = 1/2 Σ_{y~x} (f(y)-f(x)) (h(y)-h(x))
//! Γ2(f,h)(x) = 1/2 [ ΔΓ1(f,h)(x) - Γ1(Δf,h)(x) - Γ1(f,Δh)(x) ]
//! ```
//!
//! `Γ1(·)(x)` only sees the closed 1-ball around `x` and `Γ2(·)(x)` the closed
//! 2-ball, so the quadratic forms assembled here live on those supports.

use crate::graph::Graph;
use crate::linalg::SymMatrix;

/// Pointwise Laplacian `Δf(x)`.
pub fn laplacian(g: &Graph, f: &[f64], x: usize) -> f64 {
    debug_assert_eq!(f.len(), g.vertex_count());
    let fx = f[x];
    g.neighbors(x).iter().map(|&y| f[y] - fx).sum()
}

/// `Δf` at every vertex.
pub fn laplacian_all(g: &Graph, f: &[f64]) -> Vec<f64> {
    (0..g.vertex_count()).map(|x| laplacian(g, f, x)).collect()
}

/// `Γ1(f,h)(x)`.
pub fn gamma1(g: &Graph, f: &[f64], h: &[f64], x: usize) -> f64 {
    debug_assert_eq!(f.len(), g.vertex_count());
    debug_assert_eq!(h.len(), g.vertex_count());
    let (fx, hx) = (f[x], h[x]);
    0.5 * g
        .neighbors(x)
        .iter()
        .map(|&y| (f[y] - fx) * (h[y] - hx))
        .sum::<f64>()
}

/// `Γ1(f,h)` at every vertex.
pub fn gamma1_all(g: &Graph, f: &[f64], h: &[f64]) -> Vec<f64> {
    (0..g.vertex_count()).map(|x| gamma1(g, f, h, x)).collect()
}

/// `Γ2(f,h)(x)`, composed from the Laplacian and `Γ1` definitions.
pub fn gamma2(g: &Graph, f: &[f64], h: &[f64], x: usize) -> f64 {
    let lap_f = |y: usize| laplacian(g, f, y);
    let lap_h = |y: usize| laplacian(g, h, y);
    let g1 = |y: usize| gamma1(g, f, h, y);

    let g1x = g1(x);
    let (dfx, dhx) = (lap_f(x), lap_h(x));
    let (fx, hx) = (f[x], h[x]);
    let mut delta_gamma1 = 0.0;
    let mut g1_df_h = 0.0;
    let mut g1_f_dh = 0.0;
    for &y in g.neighbors(x) {
        delta_gamma1 += g1(y) - g1x;
        g1_df_h += (lap_f(y) - dfx) * (h[y] - hx);
        g1_f_dh += (f[y] - fx) * (lap_h(y) - dhx);
    }
    0.5 * (delta_gamma1 - 0.5 * g1_df_h - 0.5 * g1_f_dh)
}

/// `Σ_y Γ1(f)(y)` and `-Σ_y f(y) Δf(y)`, which agree for every `f`.
pub fn divergence_check(g: &Graph, f: &[f64]) -> (f64, f64) {
    let lhs = (0..g.vertex_count()).map(|y| gamma1(g, f, f, y)).sum();
    let rhs = -(0..g.vertex_count())
        .map(|y| f[y] * laplacian(g, f, y))
        .sum::<f64>();
    (lhs, rhs)
}

/// A symmetric bilinear form on functions supported on `support`.
///
/// Entry `(i, j)` is the form evaluated on the indicators of `support[i]` and
/// `support[j]`; values of a function outside the support are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    pub support: Vec<usize>,
    pub matrix: SymMatrix,
}

impl QuadraticForm {
    /// Restriction of a full vertex function to the support.
    pub fn restrict(&self, f: &[f64]) -> Vec<f64> {
        self.support.iter().map(|&v| f[v]).collect()
    }

    /// Expands support coordinates back to a function on `n` vertices.
    pub fn extend(&self, coords: &[f64], n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (&v, &c) in self.support.iter().zip(coords) {
            out[v] = c;
        }
        out
    }

    pub fn evaluate(&self, f: &[f64]) -> f64 {
        self.matrix.quadratic(&self.restrict(f))
    }

    pub fn bilinear(&self, f: &[f64], h: &[f64]) -> f64 {
        self.matrix.bilinear(&self.restrict(f), &self.restrict(h))
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }
}

/// Assembles a form by evaluating `op` on indicator pairs (polarization).
fn polarize<F>(g: &Graph, support: Vec<usize>, op: F) -> QuadraticForm
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    let n = g.vertex_count();
    let basis: Vec<Vec<f64>> = support
        .iter()
        .map(|&v| {
            let mut e = vec![0.0; n];
            e[v] = 1.0;
            e
        })
        .collect();
    let k = support.len();
    let mut matrix = SymMatrix::zeros(k);
    for i in 0..k {
        for j in i..k {
            matrix.set_sym(i, j, op(&basis[i], &basis[j]));
        }
    }
    QuadraticForm { support, matrix }
}

/// `f ↦ Γ1(f)(x)` on the closed 1-ball of `x`. Panics if `x` is out of range.
pub fn gamma1_form(g: &Graph, x: usize) -> QuadraticForm {
    let support = g.ball(x, 1).expect("vertex in range");
    polarize(g, support, |a, b| gamma1(g, a, b, x))
}

/// `f ↦ Γ1(f)(x)` assembled on an arbitrary support containing the closed
/// 1-ball of `x`; rows outside the 1-ball are zero.
pub fn gamma1_form_on(g: &Graph, x: usize, support: Vec<usize>) -> QuadraticForm {
    polarize(g, support, |a, b| gamma1(g, a, b, x))
}

/// `f ↦ Γ2(f)(x)` on the closed 2-ball of `x`. Panics if `x` is out of range.
pub fn gamma2_form(g: &Graph, x: usize) -> QuadraticForm {
    let support = g.ball(x, 2).expect("vertex in range");
    polarize(g, support, |a, b| gamma2(g, a, b, x))
}

/// Coefficients `c` with `Δf(x) = Σ_i c[i] f(support[i])` on the given
/// support, which must contain the closed 1-ball of `x`.
pub fn laplacian_functional(g: &Graph, x: usize, support: &[usize]) -> Vec<f64> {
    support
        .iter()
        .map(|&v| {
            if v == x {
                -(g.degree(x) as f64)
            } else if g.has_edge(x, v) {
                1.0
            } else {
                0.0
            }
        })
        .collect()
}

/// The combinatorial Laplacian `L = D - A` as a form on all vertices, so that
/// `f^T L f = Σ_y Γ1(f)(y)`.
pub fn laplacian_matrix(g: &Graph) -> QuadraticForm {
    let n = g.vertex_count();
    let mut matrix = SymMatrix::zeros(n);
    for v in 0..n {
        matrix.set_sym(v, v, g.degree(v) as f64);
    }
    for (u, v) in g.edges() {
        matrix.set_sym(u, v, -1.0);
    }
    QuadraticForm {
        support: (0..n).collect(),
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian(&k(3), &[1.0, 0.0, 0.0], 0), -2.0);
        let p3 = Graph::path(3).unwrap();
        assert_eq!(laplacian(&p3, &[0.0, 1.0, 4.0], 1), 2.0);
        assert!(laplacian_all(&p3, &[5.0; 3]).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn laplacian_matrix_examples() {
        let l2 = laplacian_matrix(&k(2));
        assert_eq!(
            l2.matrix,
            SymMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap()
        );
        assert_eq!(l2.evaluate(&[3.0, 3.0]), 0.0);
        let f = [1.0, 0.0, 0.0];
        assert_eq!(laplacian_matrix(&k(3)).evaluate(&f), 2.0);
        assert_eq!(divergence_check(&k(3), &f), (2.0, 2.0));
    }

    #[test]
    fn gamma1_examples() {
        assert_eq!(gamma1(&k(3), &[2.0; 3], &[2.0; 3], 1), 0.0);
        let f = [1.0, 0.0, 0.0];
        assert_eq!(gamma1(&k(3), &f, &f, 0), 1.0);
        let p3 = Graph::path(3).unwrap();
        assert_eq!(gamma1(&p3, &[0.0, 1.0, 4.0], &[1.0, 0.0, 0.0], 1), -0.5);
    }

    #[test]
    fn gamma2_constant_and_linearity() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(gamma2(&c4, &[1.5; 4], &[1.5; 4], 0), 0.0);
        let f = [0.3, -1.0, 2.0, 0.5];
        let h = [1.0, 0.0, -0.5, 0.25];
        let f2: Vec<f64> = f.iter().map(|v| 2.0 * v).collect();
        let lhs = gamma2(&c4, &f2, &h, 1);
        assert!((lhs - 2.0 * gamma2(&c4, &f, &h, 1)).abs() < 1e-12);
        assert!((gamma2(&c4, &f, &h, 1) - gamma2(&c4, &h, &f, 1)).abs() < 1e-12);
    }

    #[test]
    fn gamma1_form_on_k2() {
        let form = gamma1_form(&k(2), 0);
        assert_eq!(form.support, vec![0, 1]);
        assert_eq!(
            form.matrix,
            SymMatrix::from_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]).unwrap()
        );
        assert_eq!(form.evaluate(&[4.0, 4.0]), 0.0);
    }

    #[test]
    fn gamma2_form_support_is_two_ball() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(gamma2_form(&p4, 0).support, vec![0, 1, 2]);
        let f = [0.1, -0.7, 1.3, 2.0];
        let form = gamma2_form(&p4, 1);
        assert!((form.evaluate(&f) - gamma2(&p4, &f, &f, 1)).abs() < 1e-12);
    }

    #[test]
    fn functional_matches_laplacian() {
        let c5 = Graph::cycle(5).unwrap();
        let support = c5.ball(2, 2).unwrap();
        let c = laplacian_functional(&c5, 2, &support);
        let f = [0.4, 1.0, -2.0, 3.0, 0.5];
        let via: f64 = support.iter().zip(&c).map(|(&v, &w)| w * f[v]).sum();
        assert!((via - laplacian(&c5, &f, 2)).abs() < 1e-12);
    }
}
