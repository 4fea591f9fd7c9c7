//! Grid certification of univalence and convexity claims.
//!
//! Statements quantified over the whole disk are checked on a finite polar
//! grid up to a radius `r_max < 1` and reported with the extremal value, the
//! point where it occurs, and the margin to the threshold. Reductions are by
//! max/min only, so results do not depend on evaluation order.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::convolution::{omega_tilde_halfplane, omega_tilde_strip, RationalDilatation};
use crate::harmonic::{Dilatation, HarmonicMap, NamedMap};
use crate::series::TaylorSeries;
use crate::{Error, Result, DEFAULT_R_MAX};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Clearance below which an image point counts as lying on an excluded set.
pub const REGION_TOL: f64 = 1e-9;

/// Polar sample points `r e^{2 pi i j / m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    radii: Vec<f64>,
    angles_per_radius: usize,
    r_max: f64,
}

impl SweepGrid {
    pub fn new(radii: Vec<f64>, angles_per_radius: usize, r_max: f64) -> Result<Self> {
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(Error::BadParameter(format!(
                "r_max = {r_max} must lie in (0, 1)"
            )));
        }
        if radii.is_empty() || angles_per_radius == 0 {
            return Err(Error::BadParameter(
                "grid needs at least one radius and one angle".into(),
            ));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r <= r_max)) || radii.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::BadParameter(
                "radii must increase strictly within (0, r_max]".into(),
            ));
        }
        Ok(Self {
            radii,
            angles_per_radius,
            r_max,
        })
    }

    /// `count` equally spaced radii ending at `r_max`.
    pub fn uniform(count: usize, angles_per_radius: usize, r_max: f64) -> Result<Self> {
        let radii = (1..=count)
            .map(|k| {
                if k == count {
                    r_max
                } else {
                    r_max * k as f64 / count as f64
                }
            })
            .collect();
        Self::new(radii, angles_per_radius, r_max)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_radius(&self) -> usize {
        self.angles_per_radius
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Same radii with twice as many angles; contains every original point.
    pub fn refined(&self) -> Self {
        Self {
            angles_per_radius: 2 * self.angles_per_radius,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_radius
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let m = self.angles_per_radius;
        self.radii.iter().flat_map(move |&r| {
            (0..m).map(move |j| Complex64::from_polar(r, TAU * j as f64 / m as f64))
        })
    }

    /// Points in the open first quadrant, angles `(j + 1/2) (pi/2) / m`.
    pub fn quadrant_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let m = self.angles_per_radius;
        self.radii.iter().flat_map(move |&r| {
            (0..m).map(move |j| Complex64::from_polar(r, FRAC_PI_2 * (j as f64 + 0.5) / m as f64))
        })
    }
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self::uniform(100, 256, DEFAULT_R_MAX).expect("valid default grid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Passes when the maximum modulus stays below one.
    ModulusBelowOne,
    /// Passes when the minimum stays above zero.
    Positive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub claim: String,
    pub criterion: Criterion,
    /// Max modulus or min value over the grid.
    pub extremum: f64,
    pub witness: Complex64,
    pub passed: bool,
    pub points: usize,
}

impl CertificationReport {
    fn from_extremum(
        claim: String,
        criterion: Criterion,
        extremum: f64,
        witness: Complex64,
        points: usize,
    ) -> Self {
        let passed = match criterion {
            Criterion::ModulusBelowOne => extremum < 1.0,
            Criterion::Positive => extremum > 0.0,
        };
        Self {
            claim,
            criterion,
            extremum,
            witness,
            passed,
            points,
        }
    }

    pub fn max_modulus(&self) -> Option<f64> {
        (self.criterion == Criterion::ModulusBelowOne).then_some(self.extremum)
    }

    /// Signed distance to the threshold; positive when passed.
    pub fn margin(&self) -> f64 {
        match self.criterion {
            Criterion::ModulusBelowOne => 1.0 - self.extremum,
            Criterion::Positive => self.extremum,
        }
    }

    pub fn with_claim(mut self, claim: impl Into<String>) -> Self {
        self.claim = claim.into();
        self
    }

    pub const CSV_HEADER: [&'static str; 8] = [
        "claim",
        "criterion",
        "extremum",
        "witness_re",
        "witness_im",
        "margin",
        "points",
        "passed",
    ];

    /// Fields in [`Self::CSV_HEADER`] order; reals carry 17 significant digits.
    pub fn csv_record(&self) -> [String; 8] {
        let criterion = match self.criterion {
            Criterion::ModulusBelowOne => "max_modulus",
            Criterion::Positive => "min_value",
        };
        [
            self.claim.clone(),
            criterion.to_string(),
            format!("{:.16e}", self.extremum),
            format!("{:.16e}", self.witness.re),
            format!("{:.16e}", self.witness.im),
            format!("{:.16e}", self.margin()),
            self.points.to_string(),
            self.passed.to_string(),
        ]
    }
}

impl fmt::Display for CertificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.criterion {
            Criterion::ModulusBelowOne => "max |w|",
            Criterion::Positive => "min",
        };
        write!(
            f,
            "{}: {} = {:.12} at {:.6}{:+.6}i (margin {:.3e}, {} points) -> {}",
            self.claim,
            what,
            self.extremum,
            self.witness.re,
            self.witness.im,
            self.margin(),
            self.points,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

fn max_over<I, F>(points: I, mut value: F) -> Result<(f64, Complex64, usize)>
where
    I: Iterator<Item = Complex64>,
    F: FnMut(Complex64) -> Result<f64>,
{
    let mut best = (f64::NEG_INFINITY, Complex64::new(0.0, 0.0), 0);
    for z in points {
        let v = value(z)?;
        if v.is_nan() {
            return Err(Error::BadParameter(format!("NaN encountered at {z}")));
        }
        if v > best.0 {
            best = (v, z, best.2);
        }
        best.2 += 1;
    }
    Ok(best)
}

/// What a dilatation sweep evaluates.
#[derive(Debug, Clone, Copy)]
pub enum DilatationSource<'a> {
    /// Closed-form rational dilatation.
    Rational(&'a RationalDilatation),
    /// `g'/h'` of a map, from its series.
    Map(&'a HarmonicMap),
    /// A dilatation given directly as a series.
    Series(&'a TaylorSeries),
}

impl DilatationSource<'_> {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Self::Rational(r) => Ok(r.eval(z)),
            Self::Map(f) => f.dilatation_at(z),
            Self::Series(s) => s.eval(z),
        }
    }
}

/// Maximum of `|w|` over the grid; passes when below one.
pub fn sweep_dilatation(
    source: DilatationSource<'_>,
    grid: &SweepGrid,
) -> Result<CertificationReport> {
    let (max, witness, points) = max_over(grid.points(), |z| Ok(source.eval(z)?.norm()))?;
    Ok(CertificationReport::from_extremum(
        format!("sup |w| < 1 for r <= {}", grid.r_max()),
        Criterion::ModulusBelowOne,
        max,
        witness,
        points,
    ))
}

/// Local univalence of `f0 * f` for a right half-plane shear `f` with dilatation `w`.
pub fn certify_halfplane(w: &Dilatation, grid: &SweepGrid) -> Result<CertificationReport> {
    let r = omega_tilde_halfplane(w)?;
    Ok(sweep_dilatation(DilatationSource::Rational(&r), grid)?
        .with_claim(format!("f0 * shear[right; {w}] locally univalent")))
}

/// Local univalence of `f0 * f` for a vertical strip shear.
pub fn certify_strip(w: &Dilatation, alpha: f64, grid: &SweepGrid) -> Result<CertificationReport> {
    let r = omega_tilde_strip(w, alpha)?;
    Ok(sweep_dilatation(DilatationSource::Rational(&r), grid)?
        .with_claim(format!("f0 * shear[strip:{alpha}; {w}] locally univalent")))
}

/// Point `z0 = -n/(n+1)` where `f0 * f` fails to be locally univalent for
/// `w = -z^n` (odd `n`) or `w = z^n` (even `n`), and `|w~(z0)|` there.
pub fn remark1_witness(n: u32) -> Result<(Complex64, f64)> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "witness needs n >= 3, got {n}"
        )));
    }
    let theta = if n % 2 == 1 { PI } else { 0.0 };
    let r = omega_tilde_halfplane(&Dilatation::monomial(theta, n)?)?;
    let z0 = Complex64::new(-(n as f64) / (n as f64 + 1.0), 0.0);
    Ok((z0, r.eval(z0).norm()))
}

/// Royster-Ziegler positivity `Re{z F'(z) / phi(z)} > 0` with
/// `phi(z) = z e^{i alpha}/(1 - z e^{i alpha})^2`, for `F` given by its series.
pub fn royster_ziegler_check(
    f: &TaylorSeries,
    alpha: f64,
    grid: &SweepGrid,
) -> Result<CertificationReport> {
    let d = f.derivative();
    royster_ziegler_with(|z| d.eval_within(z, grid.r_max()), alpha, grid)
}

/// Same as [`royster_ziegler_check`] with the derivative supplied pointwise.
pub fn royster_ziegler_with<F>(
    derivative: F,
    alpha: f64,
    grid: &SweepGrid,
) -> Result<CertificationReport>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let rot = Complex64::from_polar(1.0, alpha);
    // z F' / phi = F'(z) (1 - z e^{i alpha})^2 e^{-i alpha}, regular at z = 0
    let (neg_min, witness, points) = max_over(grid.points(), |z| {
        let q = ONE - z * rot;
        Ok(-(derivative(z)? * q * q / rot).re)
    })?;
    Ok(CertificationReport::from_extremum(
        format!("Re{{zF'/phi}} > 0, alpha = {alpha}"),
        Criterion::Positive,
        -neg_min,
        witness,
        points,
    ))
}

/// Convexity of `f = H + conj(G)` in the direction `phi`: after a dilatation
/// sweep, the analytic function `e^{-i phi}(H - e^{2 i phi} G)` is tested for
/// convexity in the real direction with `alpha = -phi`.
pub fn convexity_in_direction(
    f: &HarmonicMap,
    direction: f64,
    grid: &SweepGrid,
) -> Result<CertificationReport> {
    let sweep = sweep_dilatation(DilatationSource::Map(f), grid)?;
    if !sweep.passed {
        return Err(Error::NotLocallyUnivalent {
            max_modulus: sweep.extremum,
            witness: sweep.witness,
        });
    }
    let combo = &f.h - &f.g.scale(Complex64::from_polar(1.0, 2.0 * direction));
    let rotated = combo.scale(Complex64::from_polar(1.0, -direction));
    Ok(royster_ziegler_check(&rotated, -direction, grid)?
        .with_claim(format!("{} convex in direction {direction}", f.label)))
}

/// Complement of the image domain claimed for a convolution example.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlitRegion {
    /// Plane minus `{x +- i y_offset : x <= x_cap}`.
    TwoSlits { y_offset: f64, x_cap: f64 },
    /// Plane minus the two closed quarter-planes
    /// `{x <= x_cap, |y| >= y_offset}` bounded by four half-lines.
    FourHalfLines { y_offset: f64, x_cap: f64 },
    /// Open first quadrant minus `{x >= offset, y >= offset}`.
    QuadrantSlits { offset: f64 },
}

impl SlitRegion {
    /// The region claimed for the image of the disk (or of its first
    /// quadrant, for `F3`).
    pub fn for_example(which: NamedMap) -> Option<Self> {
        match which {
            NamedMap::Conv1 => Some(Self::FourHalfLines {
                y_offset: PI / 8.0,
                x_cap: -0.25,
            }),
            NamedMap::Conv2 => Some(Self::TwoSlits {
                y_offset: PI / 16.0,
                x_cap: -0.25,
            }),
            NamedMap::Conv3 => Some(Self::QuadrantSlits { offset: PI / 8.0 }),
            _ => None,
        }
    }

    /// Distance from `w` to the excluded set; zero when `w` lies in it.
    pub fn clearance(&self, w: Complex64) -> f64 {
        let (x, y) = (w.re, w.im);
        match *self {
            Self::TwoSlits { y_offset, x_cap } => {
                let dx = (x - x_cap).max(0.0);
                dx.hypot(y - y_offset).min(dx.hypot(y + y_offset))
            }
            Self::FourHalfLines { y_offset, x_cap } => {
                let dx = (x - x_cap).max(0.0);
                let upper = dx.hypot((y_offset - y).max(0.0));
                let lower = dx.hypot((y + y_offset).max(0.0));
                upper.min(lower)
            }
            Self::QuadrantSlits { offset } => {
                if x <= 0.0 || y <= 0.0 {
                    return 0.0;
                }
                let corner = (offset - x).max(0.0).hypot((offset - y).max(0.0));
                x.min(y).min(corner)
            }
        }
    }
}

/// Checks that the named convolution example maps grid points into its
/// claimed image region. The report's extremum is the smallest clearance.
pub fn region_membership(which: NamedMap, grid: &SweepGrid) -> Result<CertificationReport> {
    let region = SlitRegion::for_example(which)
        .ok_or_else(|| Error::BadParameter(format!("no region claim for {which}")))?;
    let points: Box<dyn Iterator<Item = Complex64>> = match which {
        NamedMap::Conv3 => Box::new(grid.quadrant_points()),
        _ => Box::new(grid.points()),
    };
    let mut min = (f64::INFINITY, Complex64::new(0.0, 0.0));
    let mut count = 0;
    for z in points {
        let w = which.eval(z)?;
        let c = region.clearance(w);
        if c <= REGION_TOL {
            return Err(Error::RegionViolation { point: z, image: w });
        }
        if c < min.0 {
            min = (c, z);
        }
        count += 1;
    }
    Ok(CertificationReport::from_extremum(
        format!("{which} maps r <= {} into {region:?}", grid.r_max()),
        Criterion::Positive,
        min.0,
        min.1,
        count,
    ))
}

/// Examples whose images are filled by horizontal level curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelCurve {
    F1,
    F2,
    F3,
}

impl LevelCurve {
    pub fn map(&self) -> NamedMap {
        match self {
            Self::F1 => NamedMap::Conv1,
            Self::F2 => NamedMap::Conv2,
            Self::F3 => NamedMap::Conv3,
        }
    }

    /// Imaginary part of the image of the level curve with constant `c`.
    pub fn image_imag(&self, c: f64) -> f64 {
        match self {
            Self::F1 | Self::F3 => c / 4.0,
            Self::F2 => c / 8.0,
        }
    }
}

/// Root of `tan t = c - t` in `(0, pi/2)` by bisection.
pub fn theta_c(c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::BadParameter(format!("theta_c needs c > 0, got {c}")));
    }
    let (mut lo, mut hi) = (0.0f64, FRAC_PI_2);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if mid.tan() + mid - c > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Points of the disk on which the example has constant imaginary part.
///
/// The curves are parameterized in `zeta = (1 + z)/(1 - z)` by the polar angle
/// `t` of `zeta` and mapped back with `z = (zeta - 1)/(zeta + 1)`; samples sit
/// at the midpoints of `samples` equal subintervals of the admissible range.
pub fn level_curve_points(example: LevelCurve, c: f64, samples: usize) -> Result<Vec<Complex64>> {
    if !(c > 0.0 && c.is_finite()) || samples == 0 {
        return Err(Error::BadParameter(format!(
            "level curve needs c > 0 and samples > 0 (c = {c})"
        )));
    }
    let lo = match example {
        LevelCurve::F3 => theta_c(c)?,
        _ => 0.0,
    };
    let hi = c.min(FRAC_PI_2);
    if hi <= lo {
        return Err(Error::BadParameter(format!(
            "empty angle range for c = {c}"
        )));
    }
    let zeta_at = |t: f64| -> Complex64 {
        match example {
            LevelCurve::F1 => {
                Complex64::new(((c - t) / t.tan()).sqrt(), ((c - t) * t.tan()).sqrt())
            }
            LevelCurve::F2 => Complex64::new(
                ((c - t) / t.tan() / 3.0).sqrt(),
                ((c - t) * t.tan() / 3.0).sqrt(),
            ),
            LevelCurve::F3 => {
                let s = 2.0 * t.cos() * (t.tan() / (c - t) - 1.0).sqrt();
                let rho = 0.5 * (s + (s * s + 4.0).sqrt());
                Complex64::from_polar(rho, t)
            }
        }
    };
    Ok((0..samples)
        .map(|j| {
            let t = lo + (hi - lo) * (j as f64 + 0.5) / samples as f64;
            let zeta = zeta_at(t);
            (zeta - 1.0) / (zeta + 1.0)
        })
        .collect())
}
