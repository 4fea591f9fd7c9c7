//! Truncated complex power series, complex polynomials, and a simultaneous
//! root finder used as an independent oracle for the zero-location tests.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result, DEFAULT_R_MAX, TAU_ROOT, TAU_ZERO};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default iteration cap of [`poly_roots_oracle`].
pub const ROOT_MAX_ITER: usize = 500;

pub(crate) fn check_finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::BadParameter(format!("non-finite complex value {z}")))
    }
}

/// Series arithmetic selector for [`TaylorSeries::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A power series `sum c_k z^k` truncated to `order()` stored coefficients.
///
/// Binary operations between series of different orders truncate to the
/// smaller order, so every coefficient of a result is exact with respect to
/// the inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::BadParameter(
                "a series needs at least one coefficient".into(),
            ));
        }
        for &c in &coeffs {
            check_finite(c)?;
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        assert!(order >= 1, "series order must be positive");
        Self {
            coeffs: (0..order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| ZERO)
    }

    pub fn constant(order: usize, c: Complex64) -> Self {
        Self::from_fn(order, |k| if k == 0 { c } else { ZERO })
    }

    /// The series of `z`.
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |k| if k == 1 { ONE } else { ZERO })
    }

    /// `1/(1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_fn(order, |_| ONE)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.max(1);
        Self::from_fn(order, |k| self.coeff(k))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Multiplication by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        Self::from_fn(
            self.order(),
            |j| if j >= k { self.coeffs[j - k] } else { ZERO },
        )
    }

    /// Coefficient-wise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k] * other.coeffs[k])
    }

    pub fn arith(&self, other: &Self, op: SeriesOp) -> Result<Self> {
        Ok(match op {
            SeriesOp::Add => self + other,
            SeriesOp::Sub => self - other,
            SeriesOp::Mul => self * other,
            SeriesOp::Div => self.div(other)?,
        })
    }

    /// Series quotient; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = other.coeffs[0];
        if b0.norm() <= TAU_ZERO {
            return Err(Error::DivisionBySingular(b0));
        }
        let n = self.order().min(other.order());
        let inv_b0 = b0.inv();
        let mut q: Vec<Complex64> = Vec::with_capacity(n);
        for k in 0..n {
            let acc = (1..=k).fold(self.coeffs[k], |acc, i| acc - other.coeffs[i] * q[k - i]);
            q.push(acc * inv_b0);
        }
        Ok(Self { coeffs: q })
    }

    /// Term-wise derivative. The result has one coefficient fewer, since the
    /// top coefficient of the derivative is not determined by the input.
    pub fn derivative(&self) -> Self {
        if self.order() == 1 {
            return Self::zero(1);
        }
        Self::from_fn(self.order() - 1, |k| self.coeffs[k + 1] * (k + 1) as f64)
    }

    /// Term-wise antiderivative with zero constant term; one coefficient more.
    pub fn integrate(&self) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                ZERO
            } else {
                self.coeffs[k - 1] / k as f64
            }
        })
    }

    /// Horner evaluation with the default radius cap.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.eval_within(z, DEFAULT_R_MAX)
    }

    /// Horner evaluation for `|z| <= r_max`, allowing a few ulps of rounding
    /// in `|z|` for points constructed on the circle of radius `r_max`.
    pub fn eval_within(&self, z: Complex64, r_max: f64) -> Result<Complex64> {
        check_finite(z)?;
        if z.norm() > r_max * (1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::EvalOutsideDisk { z, r_max });
        }
        Ok(horner(&self.coeffs, z))
    }
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

impl Add for &TaylorSeries {
    type Output = TaylorSeries;
    fn add(self, rhs: &TaylorSeries) -> TaylorSeries {
        let n = self.order().min(rhs.order());
        TaylorSeries::from_fn(n, |k| self.coeffs[k] + rhs.coeffs[k])
    }
}

impl Sub for &TaylorSeries {
    type Output = TaylorSeries;
    fn sub(self, rhs: &TaylorSeries) -> TaylorSeries {
        let n = self.order().min(rhs.order());
        TaylorSeries::from_fn(n, |k| self.coeffs[k] - rhs.coeffs[k])
    }
}

impl Mul for &TaylorSeries {
    type Output = TaylorSeries;
    fn mul(self, rhs: &TaylorSeries) -> TaylorSeries {
        let n = self.order().min(rhs.order());
        TaylorSeries::from_fn(n, |k| {
            (0..=k).map(|i| self.coeffs[i] * rhs.coeffs[k - i]).sum()
        })
    }
}

impl Neg for &TaylorSeries {
    type Output = TaylorSeries;
    fn neg(self) -> TaylorSeries {
        self.scale(-ONE)
    }
}

/// A polynomial `a_0 + a_1 z + ... + a_n z^n` with `|a_n| > TAU_ZERO`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Coefficients in ascending order of degree.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        for &c in &coeffs {
            check_finite(c)?;
        }
        match coeffs.last() {
            Some(lead) if lead.norm() > TAU_ZERO => Ok(Self { coeffs }),
            _ => Err(Error::ZeroLeadingCoefficient),
        }
    }

    /// Like [`ComplexPolynomial::new`] but first drops negligible top coefficients.
    pub fn trimmed(mut coeffs: Vec<Complex64>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= TAU_ZERO) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        Self::new(vec![c])
    }

    /// `lead * prod (z - r_i)`.
    pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Result<Self> {
        let mut coeffs = vec![lead];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn derivative(&self) -> Option<Self> {
        if self.degree() == 0 {
            return None;
        }
        let d = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (k + 1) as f64)
            .collect();
        Some(Self { coeffs: d })
    }

    pub fn scale(&self, s: Complex64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        let inv = self.leading().inv();
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * inv).collect(),
        }
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// All roots of `p` with multiplicity, by Aberth-Ehrlich iteration.
///
/// Seeds lie on the circle of radius `1 + max |a_k / a_n|` at angles
/// `2 pi k / n + 0.4`. Each returned root satisfies
/// `|p(root)| <= TAU_ROOT * max |a_k| * max(1, |root|)^n`; the growth factor
/// makes the test for roots outside the disk the same as testing `1/root`
/// against the reversed polynomial.
pub fn poly_roots_oracle(p: &ComplexPolynomial) -> Result<Vec<Complex64>> {
    poly_roots_oracle_with(p, ROOT_MAX_ITER)
}

pub fn poly_roots_oracle_with(p: &ComplexPolynomial, max_iter: usize) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::BadParameter("root finding needs degree >= 1".into()));
    }
    let lead = p.leading();
    let bound = 1.0
        + p.coeffs[..n]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    if n == 1 {
        roots[0] = -p.coeffs[0] / lead;
        return Ok(roots);
    }

    let dp = p.derivative().expect("degree >= 1");
    let tol = TAU_ROOT * p.max_coeff_norm();
    let residual_ok = |roots: &[Complex64]| {
        roots
            .iter()
            .all(|&r| p.eval(r).norm() <= tol * r.norm().max(1.0).powi(n as i32))
    };

    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let zi = roots[i];
            let pv = p.eval(zi);
            if pv == ZERO {
                continue;
            }
            let ratio = pv / dp.eval(zi);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (zi - roots[j]).inv())
                .sum();
            let step = ratio / (ONE - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            roots[i] = zi - step;
            max_step = max_step.max(step.norm() / zi.norm().max(1.0));
        }
        if max_step <= 1e-15 && residual_ok(&roots) {
            return Ok(roots);
        }
    }
    if residual_ok(&roots) {
        Ok(roots)
    } else {
        Err(Error::NoConvergence {
            iterations: max_iter,
        })
    }
}
