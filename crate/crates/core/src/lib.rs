//! Bakry–Émery Γ-calculus on finite graphs and cones over graphs.
//!
//! The crate computes pointwise and uniform curvature-dimension bounds
//! `Ric_N`, the conical curvature `CRic_N` at the apex of the full cone, its
//! ceiling `K^c_max`, Laplacian spectra and exact Cheeger constants, and
//! audits the inequalities that tie them together.
//!
//! ```
//! use gamma_cone::{curvature, DimensionParam, Graph};
//!
//! let k4 = Graph::complete(4).unwrap();
//! let r = curvature::ric_uniform(&k4, DimensionParam::Infinity).unwrap();
//! assert!((r.value.as_f64() - 3.0).abs() < 1e-10);
//! ```
//!
//! A guide with worked examples lives in the `book/` directory of the
//! repository; its code blocks are compiled as doctests of this crate.

pub mod audit;
pub mod cone;
pub mod curvature;
pub mod function;
pub mod gamma;
pub mod graph;
pub mod json;
pub mod linalg;
pub mod rng;
pub mod spectral;

pub use curvature::{CurvatureResult, CurvatureValue, DimensionParam};
pub use function::VertexFunction;
pub use graph::{Graph, GraphError};

/// Version string embedded in reports.
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/gamma-calculus.md")]
    mod gamma_calculus {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    mod curvature {}
    #[doc = include_str!("../../../book/src/conical-curvature.md")]
    mod conical_curvature {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/audit-cli.md")]
    mod audit_cli {}
}
