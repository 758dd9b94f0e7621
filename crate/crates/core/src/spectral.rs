//! Laplacian spectra, exact Cheeger constants and the spectral bounds that
//! follow from conical curvature.
//!
//! `λ1` always means the second-smallest eigenvalue of `L = D - A`. Where a
//! bound's constants only make sense with the doubled gradient norm
//! `‖∇f‖² = 2ΣΓ1(f)`, it is also evaluated against `2λ1`; both outcomes are
//! reported and nothing is rescaled silently.

use rayon::prelude::*;
use thiserror::Error;

use crate::curvature::{cric, format_components, kc_max, CurvatureError, DimensionParam};
use crate::gamma::laplacian_matrix;
use crate::graph::Graph;
use crate::linalg::{eigensolve_symmetric, LinalgError};

/// Largest vertex count for exact Cheeger enumeration.
pub const CHEEGER_MAX_N: usize = 20;
const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("graph is disconnected; components: {}", format_components(.0))]
    Disconnected(Vec<Vec<usize>>),
    #[error("a single vertex has no spectral gap")]
    SingleVertex,
    #[error("exact enumeration infeasible: {n} vertices exceeds the cap of {CHEEGER_MAX_N}")]
    EnumerationInfeasible { n: usize },
    #[error("lambda = {lambda} outside (0, {max}]")]
    LambdaOutOfRange { lambda: f64, max: f64 },
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn require_connected(g: &Graph) -> Result<(), SpectralError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(SpectralError::Disconnected(g.components()))
    }
}

/// Spectrum of `L = D - A`, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    /// `eigenvalues[1]`; zero exactly when the graph is disconnected.
    pub lambda1: f64,
}

pub fn laplacian_spectrum(g: &Graph) -> Result<SpectralResult, SpectralError> {
    if g.vertex_count() < 2 {
        return Err(SpectralError::SingleVertex);
    }
    let eig = eigensolve_symmetric(&laplacian_matrix(g).matrix)?;
    Ok(SpectralResult {
        lambda1: eig.values[1],
        eigenvalues: eig.values,
        eigenvectors: eig.vectors,
    })
}

/// The spectral gap `λ1(L)` of a connected graph.
pub fn lambda1(g: &Graph) -> Result<f64, SpectralError> {
    require_connected(g)?;
    Ok(laplacian_spectrum(g)?.lambda1)
}

/// `Σ Γ1(f) / Σ f² = fᵀLf / fᵀf`.
pub fn rayleigh_quotient(g: &Graph, f: &[f64]) -> f64 {
    laplacian_matrix(g).evaluate(f) / f.iter().map(|v| v * v).sum::<f64>()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheegerResult {
    /// `|∂F|` for the minimizing `F`.
    pub h_num: u64,
    /// `|F|`.
    pub h_den: u64,
    /// Lexicographically smallest minimizer, sorted.
    pub witness: Vec<usize>,
}

impl CheegerResult {
    pub fn h(&self) -> f64 {
        self.h_num as f64 / self.h_den as f64
    }
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&v| mask >> v & 1 == 1)
}

/// Candidate order: smaller ratio first, then the lexicographically smaller
/// sorted vertex list.
fn better(a: (u64, u64, u64), b: (u64, u64, u64)) -> bool {
    let (num_a, den_a, mask_a) = a;
    let (num_b, den_b, mask_b) = b;
    let (lhs, rhs) = (num_a * den_b, num_b * den_a);
    if lhs != rhs {
        return lhs < rhs;
    }
    members(mask_a).lt(members(mask_b))
}

/// `h(G) = min |∂F| / min(|F|, |V∖F|)`, by exhaustive enumeration of every
/// nonempty `F` with `|F| <= |V|/2`.
pub fn cheeger(g: &Graph) -> Result<CheegerResult, SpectralError> {
    require_connected(g)?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(SpectralError::SingleVertex);
    }
    if n > CHEEGER_MAX_N {
        return Err(SpectralError::EnumerationInfeasible { n });
    }
    let adj = g.adjacency_masks();
    let full = (1u64 << n) - 1;
    let half = (n / 2) as u32;
    let best = (1u64..=full)
        .into_par_iter()
        .filter(|m| m.count_ones() <= half)
        .map(|mask| {
            let boundary: u32 = members(mask).map(|v| (adj[v] & !mask & full).count_ones()).sum();
            (u64::from(boundary), u64::from(mask.count_ones()), mask)
        })
        .reduce_with(|a, b| if better(b, a) { b } else { a })
        .expect("n >= 2 gives a nonempty candidate set");
    Ok(CheegerResult {
        h_num: best.0,
        h_den: best.1,
        witness: members(best.2).collect(),
    })
}

/// An inequality `lhs >= rhs`, checked to `1e-9`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Bound {
    pub fn at_least(lhs: f64, rhs: f64) -> Self {
        Bound {
            lhs,
            rhs,
            holds: lhs >= rhs - TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DamReport {
    pub lambda1: f64,
    pub cheeger: CheegerResult,
    /// `h >= λ1/2`.
    pub lower: Bound,
    /// `sqrt(2 d_max λ1) >= h`.
    pub upper: Bound,
}

pub fn verify_dam(g: &Graph) -> Result<DamReport, SpectralError> {
    let cheeger = cheeger(g)?;
    let lambda1 = lambda1(g)?;
    let h = cheeger.h();
    Ok(DamReport {
        lambda1,
        lower: Bound::at_least(h, lambda1 / 2.0),
        upper: Bound::at_least((2.0 * g.max_degree() as f64 * lambda1).sqrt(), h),
        cheeger,
    })
}

/// Cheeger-side consequences of `CCD(K, N)` for `N >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheegerBounds {
    pub h: f64,
    /// `h >= (2|V| + 4NK + N|V| - 6N) / (8N)` as printed.
    pub h_printed: Bound,
    /// `λ1 >= (2|V| + 4NK + N|V| - 6N)² / (128 N² d_max)`.
    pub lambda_printed: Bound,
    /// `h >= (2-N)|V|/(4N) + (2K + |V| - 3)/4`.
    pub h_derived: Bound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    /// `CRic_N(G)`.
    pub k: f64,
    pub lambda1: f64,
    /// `λ1 >= (2K + |V| - 3)/4`.
    pub derived: Bound,
    /// `λ1 >= K + (|V|-3)/2` with `λ1` of `L`.
    pub stated_l: Bound,
    /// `2λ1 >= K + (|V|-3)/2`.
    pub stated_doubled: Bound,
    /// Present for `N >= 2` when the graph is small enough for exact `h`.
    pub cheeger: Option<CheegerBounds>,
}

/// Spectral-gap and Cheeger consequences of `K = CRic_N(G)`.
pub fn verify_ccd_spectral_gap(g: &Graph, n_param: DimensionParam) -> Result<GapReport, SpectralError> {
    let k = cric(g, n_param)?.value.as_f64();
    let lambda1 = lambda1(g)?;
    let n = g.vertex_count() as f64;
    let inv = n_param.inv();
    let stated = k + (n - 3.0) / 2.0;
    let applicable = inv <= 0.5 && g.vertex_count() <= CHEEGER_MAX_N;
    let cheeger = if applicable {
        let h = cheeger(g)?.h();
        // (2|V| + 4NK + N|V| - 6N)/(8N) written through 1/N.
        let b = (2.0 * n * inv + 4.0 * k + n - 6.0) / 8.0;
        Some(CheegerBounds {
            h,
            h_printed: Bound::at_least(h, b),
            lambda_printed: Bound::at_least(lambda1, b * b / (2.0 * g.max_degree() as f64)),
            h_derived: Bound::at_least(h, (inv / 2.0 - 0.25) * n + (2.0 * k + n - 3.0) / 4.0),
        })
    } else {
        None
    };
    Ok(GapReport {
        k,
        lambda1,
        derived: Bound::at_least(lambda1, (2.0 * k + n - 3.0) / 4.0),
        stated_l: Bound::at_least(lambda1, stated),
        stated_doubled: Bound::at_least(2.0 * lambda1, stated),
        cheeger,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FromGapReport {
    pub lambda: f64,
    /// `N = 2|V|/(|V| - λ)`; `None` when `λ > |V|`.
    pub n_threshold: Option<DimensionParam>,
    /// `(2λ - |V| + 3)/2`.
    pub k_derived: f64,
    /// `(λ - |V| + 3)/2` as printed.
    pub k_printed: f64,
    /// `CRic` at the threshold.
    pub cric: Option<f64>,
    /// `CRic >= K_derived` at the threshold.
    pub verified: bool,
    /// `CRic >= K_printed` at the threshold.
    pub printed_holds: bool,
}

/// From a gap `λ1 >= λ` to `CCD(K, N)` at the threshold dimension.
pub fn ccd_from_gap(g: &Graph, lambda: f64) -> Result<FromGapReport, SpectralError> {
    let gap = lambda1(g)?;
    let max = 2.0 * gap;
    if !(lambda > 0.0 && lambda <= max + TOL) {
        return Err(SpectralError::LambdaOutOfRange { lambda, max });
    }
    let n = g.vertex_count() as f64;
    let k_derived = (2.0 * lambda - n + 3.0) / 2.0;
    let k_printed = (lambda - n + 3.0) / 2.0;
    let n_threshold = if lambda > n + TOL {
        None
    } else if lambda >= n - TOL {
        Some(DimensionParam::Infinity)
    } else {
        Some(DimensionParam::finite(2.0 * n / (n - lambda))?)
    };
    let cric = n_threshold.map(|p| cric(g, p)).transpose()?.map(|r| r.value.as_f64());
    Ok(FromGapReport {
        lambda,
        n_threshold,
        k_derived,
        k_printed,
        verified: cric.is_some_and(|c| c >= k_derived - TOL),
        printed_holds: cric.is_some_and(|c| c >= k_printed - TOL),
        cric,
    })
}

/// `K^c_max` at the threshold dimension equals `K_derived`.
pub fn threshold_ceiling(g: &Graph, report: &FromGapReport) -> Option<f64> {
    report.n_threshold.map(|p| kc_max(g.vertex_count(), p))
}
