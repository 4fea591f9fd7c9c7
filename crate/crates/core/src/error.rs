use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series division by a series with constant term {0} (|b0| <= tolerance)")]
    DivisionBySingular(Complex64),

    #[error("evaluation point {z} lies outside the admissible disk |z| <= {r_max}")]
    EvalOutsideDisk { z: Complex64, r_max: f64 },

    #[error("root iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("polynomial has a vanishing leading coefficient")]
    ZeroLeadingCoefficient,

    #[error("shear is singular: 1 + dilatation has constant term {0}")]
    ShearSingular(Complex64),

    #[error("dilatation variant is not supported by the closed-form route")]
    UnsupportedVariant,

    #[error("strip parameter alpha = {0} is outside [pi/2, pi)")]
    BadAlpha(f64),

    #[error("denominator 2h' + zh'' vanishes at the origin")]
    DenominatorVanishes,

    #[error("Cohn reduction needs |a0| < |an| (got |a0| = {a0}, |an| = {an})")]
    NotApplicable { a0: f64, an: f64 },

    #[error("root at modulus {modulus} is within the boundary tolerance of the unit circle")]
    BoundaryAmbiguous { modulus: f64 },

    #[error("LU pivot magnitude {0:e} below threshold")]
    IllConditioned(f64),

    #[error("dilatation sweep failed: max |w| = {max_modulus} at {witness}")]
    NotLocallyUnivalent {
        max_modulus: f64,
        witness: Complex64,
    },

    #[error("image point {image} of {point} violates the claimed region")]
    RegionViolation { point: Complex64, image: Complex64 },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
