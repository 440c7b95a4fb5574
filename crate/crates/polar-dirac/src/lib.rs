//! Polar-form spinor fields on flat tetrad backgrounds.
//!
//! The crate implements, over the (+,−,−,−) Minkowski signature:
//!
//! * exact Clifford-algebra arithmetic with closed-form Lorentz and spinorial
//!   transformations ([`clifford`]),
//! * spinor bilinears, the regular/singular polar decomposition and the polar
//!   covariant derivative ([`polar`]),
//! * the spherical flat metric, tetrads, spin connections, tensorial
//!   connections and the finite-difference machinery used to certify them
//!   ([`geometry`], [`fd`]),
//! * the two explicit flat backgrounds carrying a non-trivial tensorial
//!   connection, with their consistency and transport relations
//!   ([`backgrounds`]),
//! * the polar Dirac field equations in tensor form ([`equations`]) and the
//!   seven closed-form solutions with residual certification ([`solutions`]),
//! * plane-wave, momentum-absorption, neutrality and dual-helicity
//!   eigenspinor checks ([`qft`]),
//! * machine-readable verification reports and the suites behind the
//!   `verify` binary ([`report`], [`suites`]).
//!
//! Every field is represented by closed-form evaluators rather than grids, so
//! residuals can be taken with analytic derivatives where formulas are known
//! and central differences otherwise. All values are immutable after
//! construction and every operation is a pure function.

pub mod backgrounds;
pub mod clifford;
pub mod equations;
pub mod fd;
pub mod geometry;
pub mod polar;
pub mod qft;
pub mod report;
pub mod solutions;
pub mod suites;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown gamma-matrix convention `{0}`")]
    UnknownConvention(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point (r={r}, theta={theta}) lies outside the validity domain")]
    OutsideDomain { r: f64, theta: f64 },
    #[error("operation requires a regular spinor, got a singular one")]
    SingularSpinor,
    #[error("a Majorana covariant derivative admits no gauge momentum (got |P| = {0})")]
    MajoranaMomentum(f64),
    #[error("analytic derivatives requested but the field carries no closed-form partials")]
    MissingPartials,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Real 4-vector with coordinate or Lorentz index.
pub type Vec4 = [f64; 4];
/// Real rank-2 tensor, `t[a][b]`.
pub type Ten2 = [[f64; 4]; 4];
/// Real rank-3 tensor, `t[a][b][mu]`.
pub type Ten3 = [[[f64; 4]; 4]; 4];
/// Real rank-4 tensor, `t[a][b][mu][nu]`.
pub type Ten4 = [[[[f64; 4]; 4]; 4]; 4];

pub use clifford::{CMat4, CVec4, C64};
