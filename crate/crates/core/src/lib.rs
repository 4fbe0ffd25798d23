//! Conformal geometry of spacelike surfaces in the Lorentzian conformal
//! 4-space `Q⁴₁`, the projectivized light cone of `ℝ⁶₂`.
//!
//! The crate is layered bottom-up:
//!
//! * [`pseudo_euclidean`]: vectors, inner products and motions of `ℝ⁶₂`;
//! * [`jet_calculus`]: truncated bivariate Taylor arithmetic;
//! * [`surfaces`]: light-cone lifts of charts (catalog and expression DSL);
//! * [`conformal_frame`]: canonical lift, adapted frame and invariants;
//! * [`transforms`]: polar and adjoint transforms;
//! * [`analysis`]: residual suites and the Willmore energy.

// `!(x < tol)` is deliberate: NaN must fail the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// index loops mirror the component formulas
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod conformal_frame;
pub mod error;
pub mod grid;
pub mod jet_calculus;
pub mod pseudo_euclidean;
pub mod surfaces;
pub mod transforms;

pub use error::{GeomError, Result};
pub use jet_calculus::{Jet, JetVec6};
pub use pseudo_euclidean::{CVec6, Motion, ProjectivePoint, Vec6};
pub use surfaces::{Domain, SurfaceChart};
