//! Planar harmonic mappings of the unit disk: shear construction onto
//! half-plane, slanted half-plane and strip targets, harmonic (Hadamard)
//! convolution, dilatation formulas for convolutions with the canonical
//! half-plane map, zero location of polynomials in the unit disk, and
//! grid-based certification of local univalence and directional convexity.

pub mod certify;
pub mod convolution;
mod error;
pub mod harmonic;
pub mod render;
pub mod series;
pub mod zerocheck;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Magnitude below which a coefficient is treated as zero.
pub const TAU_ZERO: f64 = 1e-12;
/// Relative residual accepted from the root oracle.
pub const TAU_ROOT: f64 = 1e-8;
/// Distance from the unit circle below which a root is considered on it.
pub const TAU_BOUNDARY: f64 = 1e-7;
/// Positivity threshold for Schur-Cohn determinants.
pub const TAU_DET: f64 = 1e-12;
/// Default truncation order of Taylor series.
pub const DEFAULT_ORDER: usize = 256;
/// Largest radius at which truncated series are evaluated.
pub const DEFAULT_R_MAX: f64 = 0.999;
