//! Cones over graphs and their Γ-calculus in closed form.
//!
//! The partial cone `C(X, G)` adds an apex `p` (vertex id `n`) joined to every
//! vertex of `X ⊆ V(G)`; the full cone `C(G)` takes `X = V(G)`. Writing `S¹`
//! and `S²` for the spheres of radius one and two around `p`, the operators
//! on the cone are expressed through the base operators of `G`, for functions
//! normalized by `f(p) = 0`. Because every operator is invariant under adding
//! a constant, a general function is first shifted by `-f(p)`; see
//! [`ConeGraph::normalize`].
//!
//! For `x ~ p` the degree that appears is the degree in the cone,
//! `deg_G(x) + 1`. The closed forms are checked against direct evaluation
//! on the assembled cone graph by [`verify_cone_lemmas`].

use serde::Serialize;
use thiserror::Error;

use crate::curvature::{ric_pointwise, ric_uniform, CurvatureError, CurvatureValue, DimensionParam};
use crate::gamma::{gamma1, gamma1_all, gamma2, laplacian, laplacian_all};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    #[error("apex set must be nonempty")]
    EmptyApexSet,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error("function has {got} values, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// A graph with an apex attached to a subset of its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeGraph {
    base: Graph,
    apex_set: Vec<usize>,
    graph: Graph,
    in_apex_set: Vec<bool>,
    in_second_sphere: Vec<bool>,
}

/// Where a cone vertex sits relative to the apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeLocation {
    Apex,
    /// `x ~ p`, i.e. `x ∈ S¹`.
    Adjacent,
    /// `x ∈ S²`.
    SecondSphere,
    /// Outside the closed 2-ball of the apex.
    Far,
}

/// Cone over every vertex of `g`.
pub fn full_cone(g: &Graph) -> ConeGraph {
    partial_cone(g, &(0..g.vertex_count()).collect::<Vec<_>>()).expect("vertex set is nonempty")
}

/// Cone whose apex is joined exactly to `apex_set`.
pub fn partial_cone(g: &Graph, apex_set: &[usize]) -> Result<ConeGraph, ConeError> {
    if apex_set.is_empty() {
        return Err(ConeError::EmptyApexSet);
    }
    let n = g.vertex_count();
    let mut in_apex_set = vec![false; n];
    for &v in apex_set {
        g.check_vertex(v)?;
        in_apex_set[v] = true;
    }
    let apex_set: Vec<usize> = (0..n).filter(|&v| in_apex_set[v]).collect();
    let graph = Graph::from_edges(n + 1, g.edges().chain(apex_set.iter().map(|&v| (v, n))))?;
    let in_second_sphere = (0..n)
        .map(|v| !in_apex_set[v] && g.neighbors(v).iter().any(|&y| in_apex_set[y]))
        .collect();
    Ok(ConeGraph {
        base: g.clone(),
        apex_set,
        graph,
        in_apex_set,
        in_second_sphere,
    })
}

impl ConeGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// The assembled graph on `n + 1` vertices.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn apex(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn apex_set(&self) -> &[usize] {
        &self.apex_set
    }

    pub fn is_full(&self) -> bool {
        self.apex_set.len() == self.base.vertex_count()
    }

    pub fn location(&self, x: usize) -> Result<ConeLocation, ConeError> {
        self.graph.check_vertex(x)?;
        Ok(if x == self.apex() {
            ConeLocation::Apex
        } else if self.in_apex_set[x] {
            ConeLocation::Adjacent
        } else if self.in_second_sphere[x] {
            ConeLocation::SecondSphere
        } else {
            ConeLocation::Far
        })
    }

    /// Base values of a function on the whole cone, shifted so the apex value
    /// becomes zero.
    pub fn normalize(&self, f_on_cone: &[f64]) -> Result<Vec<f64>, ConeError> {
        let expected = self.graph.vertex_count();
        if f_on_cone.len() != expected {
            return Err(ConeError::LengthMismatch {
                got: f_on_cone.len(),
                expected,
            });
        }
        let fp = f_on_cone[self.apex()];
        Ok(f_on_cone[..self.apex()].iter().map(|v| v - fp).collect())
    }

    /// Extends a base function to the cone with `f(p) = 0`.
    pub fn extend(&self, f: &[f64]) -> Vec<f64> {
        let mut out = f.to_vec();
        out.push(0.0);
        out
    }

    fn check_len(&self, f: &[f64]) -> Result<(), ConeError> {
        let expected = self.base.vertex_count();
        if f.len() == expected {
            Ok(())
        } else {
            Err(ConeError::LengthMismatch {
                got: f.len(),
                expected,
            })
        }
    }

    fn neighbors_in_apex_set<'a>(&'a self, x: usize) -> impl Iterator<Item = usize> + 'a {
        self.base
            .neighbors(x)
            .iter()
            .copied()
            .filter(move |&y| self.in_apex_set[y])
    }

    fn neighbors_in_second_sphere<'a>(&'a self, x: usize) -> impl Iterator<Item = usize> + 'a {
        self.base
            .neighbors(x)
            .iter()
            .copied()
            .filter(move |&y| self.in_second_sphere[y])
    }

    fn sum_over_apex_set(&self, h: impl Fn(usize) -> f64) -> f64 {
        self.apex_set.iter().map(|&y| h(y)).sum()
    }

    fn cone_degree(&self, x: usize) -> f64 {
        (self.base.degree(x) + 1) as f64
    }
}

/// `Δ^c f(x)` for `f(p) = 0`.
pub fn cone_laplacian(c: &ConeGraph, f: &[f64], x: usize) -> Result<f64, ConeError> {
    c.check_len(f)?;
    let g = &c.base;
    Ok(match c.location(x)? {
        ConeLocation::Apex => c.sum_over_apex_set(|y| f[y]),
        ConeLocation::Adjacent => laplacian(g, f, x) - f[x],
        ConeLocation::SecondSphere | ConeLocation::Far => laplacian(g, f, x),
    })
}

/// `Γ1^c(f)(x)` for `f(p) = 0`.
pub fn cone_gamma1(c: &ConeGraph, f: &[f64], x: usize) -> Result<f64, ConeError> {
    c.check_len(f)?;
    let g = &c.base;
    Ok(match c.location(x)? {
        ConeLocation::Apex => 0.5 * c.sum_over_apex_set(|y| f[y] * f[y]),
        ConeLocation::Adjacent => gamma1(g, f, f, x) + 0.5 * f[x] * f[x],
        ConeLocation::SecondSphere | ConeLocation::Far => gamma1(g, f, f, x),
    })
}

/// `Γ1^c(f, Δ^c f)(x)` for `f(p) = 0`.
pub fn cone_gamma1_f_deltaf(c: &ConeGraph, f: &[f64], x: usize) -> Result<f64, ConeError> {
    c.check_len(f)?;
    let g = &c.base;
    let lap = laplacian_all(g, f);
    let location = c.location(x)?;
    if location == ConeLocation::Apex {
        let s = c.sum_over_apex_set(|y| f[y]);
        return Ok(0.5 * c.sum_over_apex_set(|y| f[y] * lap[y])
            - 0.5 * c.sum_over_apex_set(|y| f[y] * f[y])
            - 0.5 * s * s);
    }
    let fx = f[x];
    let base_term = gamma1(g, f, &lap, x);
    Ok(match location {
        ConeLocation::SecondSphere => {
            base_term - 0.5 * c.neighbors_in_apex_set(x).map(|y| f[y] * (f[y] - fx)).sum::<f64>()
        }
        ConeLocation::Adjacent => {
            base_term
                - 0.5
                    * c.neighbors_in_apex_set(x)
                        .map(|y| (f[y] - fx).powi(2))
                        .sum::<f64>()
                + 0.5 * fx * c.neighbors_in_second_sphere(x).map(|y| f[y] - fx).sum::<f64>()
                - 0.5 * fx * c.sum_over_apex_set(|y| f[y])
                + 0.5 * fx * lap[x]
                - 0.5 * fx * fx
        }
        ConeLocation::Far => base_term,
        ConeLocation::Apex => unreachable!(),
    })
}

/// `Δ^c Γ1^c(f)(x)` for `f(p) = 0`.
pub fn cone_delta_gamma1(c: &ConeGraph, f: &[f64], x: usize) -> Result<f64, ConeError> {
    c.check_len(f)?;
    let g = &c.base;
    let g1 = gamma1_all(g, f, f);
    let location = c.location(x)?;
    if location == ConeLocation::Apex {
        let k = c.apex_set.len() as f64;
        return Ok(c.sum_over_apex_set(|y| g1[y]) - 0.5 * (k - 1.0) * c.sum_over_apex_set(|y| f[y] * f[y]));
    }
    let fx = f[x];
    let base_term = laplacian(g, &g1, x);
    let near_sq: f64 = c.neighbors_in_apex_set(x).map(|y| f[y] * f[y]).sum();
    Ok(match location {
        ConeLocation::SecondSphere => base_term + 0.5 * near_sq,
        ConeLocation::Adjacent => {
            base_term - g1[x] + 0.5 * (near_sq + c.sum_over_apex_set(|y| f[y] * f[y]))
                - 0.5 * c.cone_degree(x) * fx * fx
        }
        ConeLocation::Far => base_term,
        ConeLocation::Apex => unreachable!(),
    })
}

/// `Γ2^c(f)(x)` for `f(p) = 0`. Full cones use the reduced two-case form.
pub fn cone_gamma2(c: &ConeGraph, f: &[f64], x: usize) -> Result<f64, ConeError> {
    c.check_len(f)?;
    let g = &c.base;
    let location = c.location(x)?;
    let sum_f = c.sum_over_apex_set(|y| f[y]);
    let sum_f2 = c.sum_over_apex_set(|y| f[y] * f[y]);
    let k = c.apex_set.len() as f64;

    if c.is_full() {
        return Ok(match location {
            ConeLocation::Apex => {
                let total_g1: f64 = gamma1_all(g, f, f).iter().sum();
                total_g1 - 0.25 * (k - 3.0) * sum_f2 + 0.5 * sum_f * sum_f
            }
            ConeLocation::Adjacent => {
                let fx = f[x];
                gamma2(g, f, f, x) + gamma1(g, f, f, x) + 0.25 * sum_f2 + 0.25 * fx * fx + 0.5 * fx * sum_f
            }
            ConeLocation::SecondSphere | ConeLocation::Far => unreachable!("full cones have S² = ∅"),
        });
    }

    Ok(match location {
        ConeLocation::Apex => {
            let g1 = gamma1_all(g, f, f);
            let lap = laplacian_all(g, f);
            0.5 * c.sum_over_apex_set(|y| g1[y]) - 0.5 * c.sum_over_apex_set(|y| f[y] * lap[y])
                - 0.25 * (k - 3.0) * sum_f2
                + 0.5 * sum_f * sum_f
        }
        ConeLocation::SecondSphere => {
            let fx = f[x];
            let near_sq: f64 = c.neighbors_in_apex_set(x).map(|y| f[y] * f[y]).sum();
            let near: f64 = c.neighbors_in_apex_set(x).map(|y| f[y]).sum();
            gamma2(g, f, f, x) + 0.75 * near_sq - 0.5 * fx * near
        }
        ConeLocation::Adjacent => {
            let fx = f[x];
            let near_sq: f64 = c.neighbors_in_apex_set(x).map(|y| f[y] * f[y]).sum();
            let near_diff_sq: f64 = c.neighbors_in_apex_set(x).map(|y| (f[y] - fx).powi(2)).sum();
            let far_diff: f64 = c.neighbors_in_second_sphere(x).map(|y| f[y] - fx).sum();
            gamma2(g, f, f, x) - 0.5 * gamma1(g, f, f, x) + 0.5 * near_diff_sq
                + 0.25 * (near_sq - c.cone_degree(x) * fx * fx)
                - 0.5 * fx * laplacian(g, f, x)
                - 0.5 * fx * far_diff
                + 0.25 * sum_f2
                + 0.5 * fx * fx
                + 0.5 * fx * sum_f
        }
        ConeLocation::Far => gamma2(g, f, f, x),
    })
}

/// The five cone operators with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeOperator {
    Laplacian,
    Gamma1,
    Gamma1FDeltaF,
    DeltaGamma1,
    Gamma2,
}

impl ConeOperator {
    pub const ALL: [ConeOperator; 5] = [
        ConeOperator::Laplacian,
        ConeOperator::Gamma1,
        ConeOperator::Gamma1FDeltaF,
        ConeOperator::DeltaGamma1,
        ConeOperator::Gamma2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConeOperator::Laplacian => "laplacian",
            ConeOperator::Gamma1 => "gamma1",
            ConeOperator::Gamma1FDeltaF => "gamma1-f-laplacian-f",
            ConeOperator::DeltaGamma1 => "laplacian-gamma1",
            ConeOperator::Gamma2 => "gamma2",
        }
    }

    /// Closed-form value through the base graph, `f(p) = 0`.
    pub fn closed_form(self, c: &ConeGraph, f: &[f64], x: usize) -> Result<f64, ConeError> {
        match self {
            ConeOperator::Laplacian => cone_laplacian(c, f, x),
            ConeOperator::Gamma1 => cone_gamma1(c, f, x),
            ConeOperator::Gamma1FDeltaF => cone_gamma1_f_deltaf(c, f, x),
            ConeOperator::DeltaGamma1 => cone_delta_gamma1(c, f, x),
            ConeOperator::Gamma2 => cone_gamma2(c, f, x),
        }
    }

    /// Value computed directly on the assembled cone graph for an arbitrary
    /// function on all `n + 1` vertices.
    pub fn direct(self, c: &ConeGraph, f_on_cone: &[f64], x: usize) -> Result<f64, ConeError> {
        let cg = &c.graph;
        cg.check_vertex(x)?;
        if f_on_cone.len() != cg.vertex_count() {
            return Err(ConeError::LengthMismatch {
                got: f_on_cone.len(),
                expected: cg.vertex_count(),
            });
        }
        let f = f_on_cone;
        Ok(match self {
            ConeOperator::Laplacian => laplacian(cg, f, x),
            ConeOperator::Gamma1 => gamma1(cg, f, f, x),
            ConeOperator::Gamma1FDeltaF => gamma1(cg, f, &laplacian_all(cg, f), x),
            ConeOperator::DeltaGamma1 => laplacian(cg, &gamma1_all(cg, f, f), x),
            ConeOperator::Gamma2 => gamma2(cg, f, f, x),
        })
    }

    /// Closed form applied to a general function: shift by `-f(p)` first.
    pub fn closed_form_general(self, c: &ConeGraph, f_on_cone: &[f64], x: usize) -> Result<f64, ConeError> {
        self.closed_form(c, &c.normalize(f_on_cone)?, x)
    }
}

/// One closed-form vs direct comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub operator: ConeOperator,
    pub vertex: usize,
    pub closed_form: f64,
    pub direct: f64,
}

impl LemmaCheck {
    pub fn abs_diff(&self) -> f64 {
        (self.closed_form - self.direct).abs()
    }
}

/// Compares every closed-form operator with direct evaluation at every cone
/// vertex, for a base function `f` extended by `f(p) = 0`.
pub fn verify_cone_lemmas(c: &ConeGraph, f: &[f64]) -> Result<Vec<LemmaCheck>, ConeError> {
    c.check_len(f)?;
    let extended = c.extend(f);
    let mut out = Vec::with_capacity(5 * extended.len());
    for op in ConeOperator::ALL {
        for x in 0..extended.len() {
            out.push(LemmaCheck {
                operator: op,
                vertex: x,
                closed_form: op.closed_form(c, f, x)?,
                direct: op.direct(c, &extended, x)?,
            });
        }
    }
    Ok(out)
}

/// Outcome of comparing the base curvature with the curvature of the full
/// cone at vertices adjacent to the apex.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ConeLift {
    /// `Ric_∞(G) > 1/2`; nothing is evaluated.
    HypothesisNotMet,
    Evaluated {
        /// `(x, Ric_∞(x) in C(G))` for every base vertex `x`.
        pointwise: Vec<(usize, f64)>,
        min: f64,
        /// `min >= K + 1/2`.
        clears_half: bool,
        /// `min >= K + 1`.
        clears_one: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeLiftReport {
    pub base_curvature: f64,
    pub outcome: ConeLift,
}

/// With `K = Ric_∞(G)`, and only when `K <= 1/2`, evaluates the pointwise
/// `Ric_∞` of the full cone at each `x ~ p` and records whether the minimum
/// clears `K + 1/2` and `K + 1`. Neither claim is asserted.
pub fn verify_cone_lift(g: &Graph) -> Result<ConeLiftReport, ConeError> {
    const TOL: f64 = 1e-9;
    let base = ric_uniform(g, DimensionParam::Infinity)?;
    let k = base.value.as_f64();
    if k > 0.5 {
        return Ok(ConeLiftReport {
            base_curvature: k,
            outcome: ConeLift::HypothesisNotMet,
        });
    }
    let cone = full_cone(g);
    let pointwise = (0..g.vertex_count())
        .map(|x| {
            ric_pointwise(cone.graph(), x, DimensionParam::Infinity).map(|r| (x, r.value.as_f64()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let min = pointwise.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    Ok(ConeLiftReport {
        base_curvature: k,
        outcome: ConeLift::Evaluated {
            clears_half: min >= k + 0.5 - TOL,
            clears_one: min >= k + 1.0 - TOL,
            pointwise,
            min,
        },
    })
}

impl ConeLiftReport {
    pub fn curvature_value(&self) -> CurvatureValue {
        CurvatureValue::from_f64(self.base_curvature)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_cone() -> ConeGraph {
        full_cone(&Graph::complete(2).unwrap())
    }

    #[test]
    fn construction() {
        let c = k2_cone();
        assert_eq!(c.graph(), &Graph::complete(3).unwrap());
        assert_eq!(full_cone(&Graph::complete(1).unwrap()).graph(), &Graph::complete(2).unwrap());
        let w4 = full_cone(&Graph::cycle(4).unwrap());
        assert_eq!(w4.graph().degree(4), 4);
        assert_eq!(w4.graph().edge_count(), 8);
        assert_eq!(w4.graph().sphere(4, 2).unwrap(), Vec::<usize>::new());

        let p3 = Graph::path(3).unwrap();
        assert_eq!(partial_cone(&p3, &[0]).unwrap().graph().degree(3), 1);
        let c4 = Graph::cycle(4).unwrap();
        let pc = partial_cone(&c4, &[0, 2]).unwrap();
        assert_eq!(pc.graph().degree(4), 2);
        assert_eq!(pc.graph().sphere(4, 2).unwrap(), vec![1, 3]);
        assert_eq!(partial_cone(&c4, &[0, 1, 2, 3]).unwrap(), full_cone(&c4));
        assert_eq!(partial_cone(&c4, &[]), Err(ConeError::EmptyApexSet));
        assert!(matches!(partial_cone(&c4, &[7]), Err(ConeError::Graph(_))));
    }

    #[test]
    fn hand_values_on_cone_over_k2() {
        let c = k2_cone();
        let f = [1.0, 0.0];
        let p = c.apex();
        assert_eq!(cone_laplacian(&c, &f, p).unwrap(), 1.0);
        assert_eq!(cone_laplacian(&c, &f, 0).unwrap(), -2.0);
        assert_eq!(cone_gamma1(&c, &f, p).unwrap(), 0.5);
        assert_eq!(cone_gamma1(&c, &f, 0).unwrap(), 1.0);
        assert_eq!(cone_gamma1_f_deltaf(&c, &f, p).unwrap(), -1.5);
        assert_eq!(cone_delta_gamma1(&c, &f, p).unwrap(), 0.5);
        assert_eq!(cone_gamma2(&c, &f, p).unwrap(), 1.75);
        for op in ConeOperator::ALL {
            for x in 0..3 {
                assert_eq!(op.closed_form(&c, &[0.0, 0.0], x).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn invalid_vertex() {
        let c = k2_cone();
        assert!(matches!(cone_gamma2(&c, &[1.0, 0.0], 3), Err(ConeError::Graph(_))));
        assert!(matches!(
            cone_gamma2(&c, &[1.0], 0),
            Err(ConeError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn closed_forms_match_direct_on_small_cones() {
        let c4 = Graph::cycle(4).unwrap();
        let f = [0.3, -1.2, 0.7, 2.0];
        for set in [vec![0], vec![0, 2], vec![0, 1, 2, 3]] {
            let c = partial_cone(&c4, &set).unwrap();
            for check in verify_cone_lemmas(&c, &f).unwrap() {
                assert!(check.abs_diff() < 1e-12, "{check:?}");
            }
        }
    }

    #[test]
    fn shift_invariance() {
        let p4 = Graph::path(4).unwrap();
        let c = partial_cone(&p4, &[1, 3]).unwrap();
        let general = [0.5, 1.5, -0.25, 2.0, 3.0];
        for op in ConeOperator::ALL {
            for x in 0..5 {
                let closed = op.closed_form_general(&c, &general, x).unwrap();
                let direct = op.direct(&c, &general, x).unwrap();
                assert!((closed - direct).abs() < 1e-12, "{op:?} at {x}");
            }
        }
    }
}
