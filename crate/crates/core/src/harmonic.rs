//! Harmonic maps `f = h + conj(g)` of the unit disk: the canonical half-plane
//! map, shears onto half-plane, slanted half-plane and strip targets, and the
//! worked examples together with their closed-form evaluators.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::series::{check_finite, ComplexPolynomial, TaylorSeries};
use crate::{convolution, Error, Result, DEFAULT_R_MAX, TAU_ZERO};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Radius above which [`HarmonicMap::eval`] prefers an attached closed form.
pub const CLOSED_FORM_RADIUS: f64 = 0.9;

/// Points `r e^{it}` with `r in {0.1, ..., 0.9, 0.95}` and 64 angles, used to
/// validate dilatations and sense preservation.
pub fn check_grid() -> Vec<Complex64> {
    let radii = (1..=9)
        .map(|k| k as f64 / 10.0)
        .chain(std::iter::once(0.95));
    radii
        .flat_map(|r| (0..64).map(move |j| Complex64::from_polar(r, TAU * j as f64 / 64.0)))
        .collect()
}

/// Prescribed dilatation `w = g'/h'` of a shear.
#[derive(Debug, Clone, PartialEq)]
pub enum Dilatation {
    /// `e^{i theta} z^n`, `n >= 1`.
    MonomialUnimodular { theta: f64, n: u32 },
    /// `(z + a)/(1 + a z)`, `-1 < a < 1`.
    Mobius { a: f64 },
    /// Arbitrary analytic dilatation given by its Taylor coefficients.
    Series(TaylorSeries),
}

impl Dilatation {
    pub fn monomial(theta: f64, n: u32) -> Result<Self> {
        let w = Self::MonomialUnimodular { theta, n };
        w.validate()?;
        Ok(w)
    }

    pub fn mobius(a: f64) -> Result<Self> {
        let w = Self::Mobius { a };
        w.validate()?;
        Ok(w)
    }

    pub fn series(s: TaylorSeries) -> Result<Self> {
        let w = Self::Series(s);
        w.validate()?;
        Ok(w)
    }

    /// The zero dilatation (analytic shear).
    pub fn zero(order: usize) -> Self {
        Self::Series(TaylorSeries::zero(order))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::MonomialUnimodular { theta, n } => {
                if !theta.is_finite() || *n == 0 {
                    return Err(Error::BadParameter(format!("monomial dilatation needs finite theta and n >= 1 (theta = {theta}, n = {n})")));
                }
            }
            Self::Mobius { a } => {
                if !(a.is_finite() && *a > -1.0 && *a < 1.0) {
                    return Err(Error::BadParameter(format!(
                        "Mobius parameter a = {a} outside (-1, 1)"
                    )));
                }
            }
            Self::Series(s) => {
                let sup = check_grid()
                    .into_iter()
                    .map(|z| s.eval_within(z, 1.0).map(|w| w.norm()))
                    .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))?;
                if sup >= 1.0 {
                    return Err(Error::BadParameter(format!(
                        "series dilatation reaches |w| = {sup} on the check grid"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Taylor coefficients of `w` through `order`.
    pub fn to_series(&self, order: usize) -> TaylorSeries {
        match self {
            Self::MonomialUnimodular { theta, n } => {
                let u = Complex64::from_polar(1.0, *theta);
                TaylorSeries::from_fn(order, |k| if k == *n as usize { u } else { ZERO })
            }
            Self::Mobius { a } => {
                // a + (1 - a^2) sum_{k>=1} (-a)^{k-1} z^k
                let a = *a;
                TaylorSeries::from_fn(order, |k| {
                    if k == 0 {
                        Complex64::new(a, 0.0)
                    } else {
                        Complex64::new((1.0 - a * a) * (-a).powi(k as i32 - 1), 0.0)
                    }
                })
            }
            Self::Series(s) => s.truncate(order),
        }
    }

    /// `w` as a quotient of polynomials `P/Q`, when it is rational.
    pub fn as_rational(&self) -> Option<(ComplexPolynomial, ComplexPolynomial)> {
        match self {
            Self::MonomialUnimodular { theta, n } => {
                let mut p = vec![ZERO; *n as usize + 1];
                p[*n as usize] = Complex64::from_polar(1.0, *theta);
                Some((
                    ComplexPolynomial::new(p).ok()?,
                    ComplexPolynomial::constant(ONE).ok()?,
                ))
            }
            Self::Mobius { a } => Some((
                ComplexPolynomial::from_real(&[*a, 1.0]).ok()?,
                ComplexPolynomial::trimmed(vec![ONE, Complex64::new(*a, 0.0)]).ok()?,
            )),
            Self::Series(_) => None,
        }
    }

    /// Pointwise `(w(z), w'(z))`.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        match self {
            Self::MonomialUnimodular { theta, n } => {
                let u = Complex64::from_polar(1.0, *theta);
                let n = *n as i32;
                Ok((u * z.powi(n), u * z.powi(n - 1) * n as f64))
            }
            Self::Mobius { a } => {
                let q = 1.0 + *a * z;
                Ok(((z + *a) / q, (1.0 - a * a) / (q * q)))
            }
            Self::Series(s) => Ok((s.eval(z)?, s.derivative().eval(z)?)),
        }
    }
}

impl fmt::Display for Dilatation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MonomialUnimodular { theta, n } => write!(f, "mono:{theta}:{n}"),
            Self::Mobius { a } => write!(f, "mobius:{a}"),
            Self::Series(s) => write!(f, "series[{}]", s.order()),
        }
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::BadParameter(format!("{what}: cannot parse `{s}` as a number")))
}

/// Parses `mono:THETA:N` and `mobius:A`, the forms produced by `Display`.
impl FromStr for Dilatation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["mono", theta, n] => {
                let n = n.trim().parse().map_err(|_| {
                    Error::BadParameter(format!("dilatation power `{n}` is not a positive integer"))
                })?;
                Self::monomial(parse_f64(theta, "dilatation angle")?, n)
            }
            ["mobius", a] => Self::mobius(parse_f64(a, "Mobius parameter")?),
            _ => Err(Error::BadParameter(format!(
                "unknown dilatation `{s}` (expected mono:THETA:N or mobius:A)"
            ))),
        }
    }
}

/// Convex target domain of a shear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetDomain {
    /// `{Re w > -1/2}`.
    RightHalfPlane,
    /// `{Re(e^{i gamma} w) > -1/2}`, `0 <= gamma < 2 pi`.
    SlantedHalfPlane { gamma: f64 },
    /// Vertical strip of width `pi / (2 sin alpha)`, `pi/2 <= alpha < pi`.
    VerticalStrip { alpha: f64 },
}

impl TargetDomain {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::RightHalfPlane => Ok(()),
            Self::SlantedHalfPlane { gamma } => {
                if gamma.is_finite() && (0.0..TAU).contains(&gamma) {
                    Ok(())
                } else {
                    Err(Error::BadParameter(format!(
                        "slant angle gamma = {gamma} outside [0, 2 pi)"
                    )))
                }
            }
            Self::VerticalStrip { alpha } => check_alpha(alpha),
        }
    }

    /// Rotation `e^{-2 i gamma}` relating `g` to the analytic target.
    pub fn shear_twist(&self) -> Complex64 {
        match *self {
            Self::SlantedHalfPlane { gamma } => Complex64::from_polar(1.0, -2.0 * gamma),
            _ => ONE,
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && (FRAC_PI_2..PI).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::BadAlpha(alpha))
    }
}

impl fmt::Display for TargetDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RightHalfPlane => write!(f, "right"),
            Self::SlantedHalfPlane { gamma } => write!(f, "slanted:{gamma}"),
            Self::VerticalStrip { alpha } => write!(f, "strip:{alpha}"),
        }
    }
}

/// Parses `right`, `slanted:GAMMA` and `strip:ALPHA`.
impl FromStr for TargetDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let t = match parts.as_slice() {
            ["right"] => Self::RightHalfPlane,
            ["slanted", gamma] => Self::SlantedHalfPlane {
                gamma: parse_f64(gamma, "slant angle")?,
            },
            ["strip", alpha] => Self::VerticalStrip {
                alpha: parse_f64(alpha, "strip parameter")?,
            },
            _ => {
                return Err(Error::BadParameter(format!(
                    "unknown target `{s}` (expected right, slanted:GAMMA or strip:ALPHA)"
                )))
            }
        };
        t.validate()?;
        Ok(t)
    }
}

/// Taylor coefficients of the analytic map onto the target:
/// `z/(1 - z)`, `z/(1 - z e^{i gamma})`, or the strip logarithm.
pub fn target_series(t: TargetDomain, order: usize) -> Result<TaylorSeries> {
    t.validate()?;
    Ok(match t {
        TargetDomain::RightHalfPlane => TaylorSeries::geometric(order).shift(1),
        TargetDomain::SlantedHalfPlane { gamma } => TaylorSeries::from_fn(order, |k| {
            if k == 0 {
                ZERO
            } else {
                Complex64::from_polar(1.0, (k - 1) as f64 * gamma)
            }
        }),
        TargetDomain::VerticalStrip { alpha } => TaylorSeries::from_fn(order, |k| {
            if k == 0 {
                return ZERO;
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            Complex64::new(
                sign * (k as f64 * alpha).sin() / (k as f64 * alpha.sin()),
                0.0,
            )
        }),
    })
}

/// Maps with hand-coded closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedMap {
    /// Canonical right half-plane map `f0`.
    F0,
    /// Half-plane shear with `w = z`.
    Shear1,
    /// Half-plane shear with `w = -z^2`.
    Shear2,
    /// Strip shear (`alpha = pi/2`) with `w = -z^2`.
    Shear3,
    /// `f0 * f1`.
    Conv1,
    /// `f0 * f2`.
    Conv2,
    /// `f0 * f3`.
    Conv3,
}

impl NamedMap {
    pub const ALL: [NamedMap; 7] = [
        Self::F0,
        Self::Shear1,
        Self::Shear2,
        Self::Shear3,
        Self::Conv1,
        Self::Conv2,
        Self::Conv3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::F0 => "f0",
            Self::Shear1 => "f1",
            Self::Shear2 => "f2",
            Self::Shear3 => "f3",
            Self::Conv1 => "F1",
            Self::Conv2 => "F2",
            Self::Conv3 => "F3",
        }
    }

    /// `(h(z), g(z))` from the closed forms; principal logarithms.
    pub fn eval_parts(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        check_finite(z)?;
        if z.norm() >= 1.0 {
            return Err(Error::EvalOutsideDisk { z, r_max: 1.0 });
        }
        let l = (ONE + z).ln() - (ONE - z).ln();
        let m = (ONE + I * z).ln() - (ONE - I * z).ln();
        let w = ONE - z;
        let hp = z / w;
        let hp2 = z / (w * w);
        Ok(match self {
            Self::F0 => ((z - 0.5 * z * z) / (w * w), -0.5 * z * z / (w * w)),
            Self::Shear1 => (0.25 * l + 0.5 * hp, -0.25 * l + 0.5 * hp),
            Self::Shear2 => (
                l / 8.0 + 0.5 * hp + 0.25 * hp2,
                -l / 8.0 + 0.5 * hp - 0.25 * hp2,
            ),
            Self::Shear3 => (0.25 * l - 0.25 * I * m, -0.25 * l - 0.25 * I * m),
            Self::Conv1 => {
                let d = w * w * (ONE + z);
                (
                    l / 8.0 + (0.75 * z - 0.25 * z.powi(3)) / d,
                    -l / 8.0 + (0.25 * z - 0.5 * z * z - 0.25 * z.powi(3)) / d,
                )
            }
            Self::Conv2 => {
                let d = w.powi(3) * (ONE + z);
                (
                    0.5 * (l / 8.0 + 0.5 * hp + 0.25 * hp2 + z / d),
                    0.5 * (-l / 8.0 + 0.5 * hp - 0.25 * hp2 + z.powi(3) / d),
                )
            }
            Self::Conv3 => {
                let d = ONE - z.powi(4);
                (
                    l / 8.0 - I * m / 8.0 + 0.5 * z / d,
                    -l / 8.0 - I * m / 8.0 + 0.5 * z.powi(3) / d,
                )
            }
        })
    }

    /// `h(z) + conj(g(z))` from the closed forms.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let (h, g) = self.eval_parts(z)?;
        Ok(h + g.conj())
    }

    /// Series of `h` and `g` expanded from the same closed-form expressions.
    fn closed_form_series(&self, order: usize) -> (TaylorSeries, TaylorSeries) {
        let n = order;
        let l = log_ratio_series(n, ONE);
        let m = log_ratio_series(n, I);
        let hp = rational_series(&[0.0, 1.0], &[1.0, -1.0], n);
        let hp2 = rational_series(&[0.0, 1.0], &[1.0, -2.0, 1.0], n);
        let lin = |parts: &[(Complex64, &TaylorSeries)]| {
            parts
                .iter()
                .fold(TaylorSeries::zero(n), |acc, (c, s)| &acc + &s.scale(*c))
        };
        let r = |x: f64| Complex64::new(x, 0.0);
        match self {
            Self::F0 => (
                rational_series(&[0.0, 1.0, -0.5], &[1.0, -2.0, 1.0], n),
                rational_series(&[0.0, 0.0, -0.5], &[1.0, -2.0, 1.0], n),
            ),
            Self::Shear1 => (
                lin(&[(r(0.25), &l), (r(0.5), &hp)]),
                lin(&[(r(-0.25), &l), (r(0.5), &hp)]),
            ),
            Self::Shear2 => (
                lin(&[(r(0.125), &l), (r(0.5), &hp), (r(0.25), &hp2)]),
                lin(&[(r(-0.125), &l), (r(0.5), &hp), (r(-0.25), &hp2)]),
            ),
            Self::Shear3 => (
                lin(&[(r(0.25), &l), (-0.25 * I, &m)]),
                lin(&[(r(-0.25), &l), (-0.25 * I, &m)]),
            ),
            Self::Conv1 => {
                // (1 - z)^2 (1 + z) = 1 - z - z^2 + z^3
                let den = [1.0, -1.0, -1.0, 1.0];
                let a = rational_series(&[0.0, 0.75, 0.0, -0.25], &den, n);
                let b = rational_series(&[0.0, 0.25, -0.5, -0.25], &den, n);
                (
                    lin(&[(r(0.125), &l), (ONE, &a)]),
                    lin(&[(r(-0.125), &l), (ONE, &b)]),
                )
            }
            Self::Conv2 => {
                // (1 - z)^3 (1 + z) = 1 - 2z + 2z^3 - z^4
                let den = [1.0, -2.0, 0.0, 2.0, -1.0];
                let a = rational_series(&[0.0, 1.0], &den, n);
                let b = rational_series(&[0.0, 0.0, 0.0, 1.0], &den, n);
                (
                    lin(&[
                        (r(1.0 / 16.0), &l),
                        (r(0.25), &hp),
                        (r(0.125), &hp2),
                        (r(0.5), &a),
                    ]),
                    lin(&[
                        (r(-1.0 / 16.0), &l),
                        (r(0.25), &hp),
                        (r(-0.125), &hp2),
                        (r(0.5), &b),
                    ]),
                )
            }
            Self::Conv3 => {
                let den = [1.0, 0.0, 0.0, 0.0, -1.0];
                let a = rational_series(&[0.0, 0.5], &den, n);
                let b = rational_series(&[0.0, 0.0, 0.0, 0.5], &den, n);
                (
                    lin(&[(r(0.125), &l), (-0.125 * I, &m), (ONE, &a)]),
                    lin(&[(r(-0.125), &l), (-0.125 * I, &m), (ONE, &b)]),
                )
            }
        }
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown map name {s:?}")))
    }
}

/// `log((1 + s z)/(1 - s z)) = 2 sum_{k odd} s^k z^k / k`.
fn log_ratio_series(order: usize, s: Complex64) -> TaylorSeries {
    TaylorSeries::from_fn(order, |k| {
        if k % 2 == 1 {
            2.0 * s.powi(k as i32) / k as f64
        } else {
            ZERO
        }
    })
}

fn rational_series(num: &[f64], den: &[f64], order: usize) -> TaylorSeries {
    let pad = |c: &[f64]| {
        TaylorSeries::from_fn(order, |k| {
            Complex64::new(c.get(k).copied().unwrap_or(0.0), 0.0)
        })
    };
    pad(num)
        .div(&pad(den))
        .expect("denominators of the closed forms have unit constant term")
}

/// A harmonic map `f = h + conj(g)` with `h(0) = g(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    pub h: TaylorSeries,
    pub g: TaylorSeries,
    pub closed_form: Option<NamedMap>,
    pub label: String,
}

impl HarmonicMap {
    /// Requires `h(0) = g(0) = 0` and `h'(0) != 0`. Shears with a dilatation
    /// that does not vanish at the origin have `h'(0) = 1/(1 + w(0))`, so the
    /// stricter class normalization is available separately as
    /// [`HarmonicMap::is_normalized`].
    pub fn new(h: TaylorSeries, g: TaylorSeries) -> Result<Self> {
        if h.order() < 2 || g.order() < 2 {
            return Err(Error::BadParameter(
                "harmonic map parts need order >= 2".into(),
            ));
        }
        if h.coeff(0).norm() > TAU_ZERO || g.coeff(0).norm() > TAU_ZERO {
            return Err(Error::BadParameter(
                "harmonic map parts must vanish at the origin".into(),
            ));
        }
        if h.coeff(1).norm() <= TAU_ZERO {
            return Err(Error::BadParameter("h'(0) vanishes".into()));
        }
        let n = h.order().min(g.order());
        Ok(Self {
            h: h.truncate(n),
            g: g.truncate(n),
            closed_form: None,
            label: String::from("custom"),
        })
    }

    /// Analytic map `h` (with `g = 0`).
    pub fn analytic(h: TaylorSeries) -> Result<Self> {
        let g = TaylorSeries::zero(h.order());
        Self::new(h, g)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_closed_form(mut self, which: NamedMap) -> Self {
        self.closed_form = Some(which);
        self.label = which.name().to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    /// `h'(0) = 1` and `g'(0) = 0` within `TAU_ZERO`.
    pub fn is_normalized(&self) -> bool {
        (self.h.coeff(1) - ONE).norm() <= TAU_ZERO && self.g.coeff(1).norm() <= TAU_ZERO
    }

    /// `h(z) + conj(g(z))`, from the closed form when one is attached and
    /// `|z| > 0.9`, otherwise from the truncated series.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_finite(z)?;
        if z.norm() > DEFAULT_R_MAX {
            return Err(Error::EvalOutsideDisk {
                z,
                r_max: DEFAULT_R_MAX,
            });
        }
        match self.closed_form {
            Some(named) if z.norm() > CLOSED_FORM_RADIUS => named.eval(z),
            _ => self.eval_series(z),
        }
    }

    pub fn eval_series(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.h.eval(z)? + self.g.eval(z)?.conj())
    }

    /// Second complex dilatation `g'(z)/h'(z)` from the series.
    pub fn dilatation_at(&self, z: Complex64) -> Result<Complex64> {
        let hp = self.h.derivative().eval(z)?;
        let gp = self.g.derivative().eval(z)?;
        Ok(gp / hp)
    }

    /// Largest `|g'/h'|` on [`check_grid`]; below one means sense-preserving there.
    pub fn max_dilatation_on_check_grid(&self) -> Result<f64> {
        check_grid()
            .into_iter()
            .try_fold(0.0f64, |m, z| Ok(m.max(self.dilatation_at(z)?.norm())))
    }
}

/// Shear onto `t` with dilatation `w`: `h' = T'/(1 + c w)`, `g' = w h'`, where
/// `T` is the target series and `c` the slant twist, so that `h + c g = T`.
pub fn shear(t: TargetDomain, w: &Dilatation, order: usize) -> Result<HarmonicMap> {
    if order < 2 {
        return Err(Error::BadParameter("shear needs order >= 2".into()));
    }
    w.validate()?;
    let target = target_series(t, order)?;
    let tp = target.derivative();
    let ws = w.to_series(tp.order());
    let twist = t.shear_twist();
    let denom = &TaylorSeries::constant(tp.order(), ONE) + &ws.scale(twist);
    let hp = tp
        .div(&denom)
        .map_err(|_| Error::ShearSingular(denom.coeff(0)))?;
    let gp = &ws * &hp;
    let map = HarmonicMap::new(hp.integrate(), gp.integrate())?;
    Ok(map.with_label(format!("shear[{t}; {w}]")))
}

/// The canonical right half-plane map
/// `f0 = (z - z^2/2)/(1 - z)^2 + conj(-(z^2/2)/(1 - z)^2)`.
pub fn canonical_f0(order: usize) -> HarmonicMap {
    let h = TaylorSeries::from_fn(order, |k| {
        Complex64::new(if k == 0 { 0.0 } else { (k as f64 + 1.0) / 2.0 }, 0.0)
    });
    let g = TaylorSeries::from_fn(order, |k| {
        Complex64::new(if k < 2 { 0.0 } else { -(k as f64 - 1.0) / 2.0 }, 0.0)
    });
    HarmonicMap::new(h, g)
        .expect("f0 is normalized")
        .with_closed_form(NamedMap::F0)
}

/// One of the worked examples, with coefficients expanded from its closed form.
pub fn example_map(which: NamedMap, order: usize) -> HarmonicMap {
    let (h, g) = which.closed_form_series(order);
    HarmonicMap::new(h, g)
        .expect("closed forms vanish at the origin")
        .with_closed_form(which)
}

/// The construction recipe of each example: target and dilatation of the
/// shear, and whether the example is its convolution with `f0`.
pub fn example_recipe(which: NamedMap) -> Option<(TargetDomain, Dilatation, bool)> {
    let minus_z2 = Dilatation::MonomialUnimodular { theta: PI, n: 2 };
    let strip = TargetDomain::VerticalStrip { alpha: FRAC_PI_2 };
    let z = Dilatation::MonomialUnimodular { theta: 0.0, n: 1 };
    match which {
        NamedMap::F0 => None,
        NamedMap::Shear1 => Some((TargetDomain::RightHalfPlane, z, false)),
        NamedMap::Shear2 => Some((TargetDomain::RightHalfPlane, minus_z2, false)),
        NamedMap::Shear3 => Some((strip, minus_z2, false)),
        NamedMap::Conv1 => Some((TargetDomain::RightHalfPlane, z, true)),
        NamedMap::Conv2 => Some((TargetDomain::RightHalfPlane, minus_z2, true)),
        NamedMap::Conv3 => Some((strip, minus_z2, true)),
    }
}

/// Builds an example through shear (and `f0`-convolution) rather than from
/// its closed form; attaches the closed-form evaluator.
pub fn example_by_construction(which: NamedMap, order: usize) -> Result<HarmonicMap> {
    let Some((t, w, conv)) = example_recipe(which) else {
        return Ok(canonical_f0(order));
    };
    let base = shear(t, &w, order)?;
    let map = if conv {
        convolution::convolve_f0(&base)
    } else {
        base
    };
    Ok(map.with_closed_form(which))
}
