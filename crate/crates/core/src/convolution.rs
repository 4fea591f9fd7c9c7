//! Harmonic convolution and the dilatation of `f0 * f`.
//!
//! For `F = H + conj(G)` with `H(0) = G(0) = 0`, convolving with the
//! canonical map acts as `h0 * H = (H + zH')/2`, `g0 * G = (G - zG')/2`, so
//! the dilatation of `f0 * f` is `-z g''/(2h' + z h'')`. When `f` is a shear
//! with a rational dilatation `w = P/Q`, clearing denominators turns this
//! into an explicit quotient of polynomials.

use num_complex::Complex64;

use crate::harmonic::{check_alpha, Dilatation, HarmonicMap, NamedMap};
use crate::series::{ComplexPolynomial, TaylorSeries};
use crate::zerocheck::reciprocal_adjoint;
use crate::{Error, Result, TAU_ZERO};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `prefactor * z^power * numerator(z) / denominator(z)`.
///
/// Built by [`omega_tilde_halfplane`] and [`omega_tilde_strip`] with a monic
/// numerator and `denominator(0) = 1`; for monomial and Mobius dilatations the
/// denominator is then the reciprocal adjoint of the numerator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalDilatation {
    pub prefactor: Complex64,
    pub power: u32,
    pub numerator: ComplexPolynomial,
    pub denominator: ComplexPolynomial,
}

impl RationalDilatation {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.prefactor * z.powu(self.power) * self.numerator.eval(z) / self.denominator.eval(z)
    }

    /// `max_k |denominator_k - numerator*_k| <= tol`.
    pub fn is_self_inversive(&self, tol: f64) -> bool {
        let adj = reciprocal_adjoint(&self.numerator);
        adj.degree() == self.denominator.degree()
            && adj
                .coeffs()
                .iter()
                .zip(self.denominator.coeffs())
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Collects `prefactor * z^power * num/den` into normal form:
    /// powers of `z` moved out of the numerator, a numerator proportional
    /// to the denominator cancelled, numerator monic, `den(0) = 1`.
    fn normalize(
        prefactor: Complex64,
        power: u32,
        num: Vec<Complex64>,
        den: Vec<Complex64>,
    ) -> Result<Self> {
        let scale = num.iter().chain(&den).map(|c| c.norm()).fold(0.0, f64::max);
        let eps = 1e-13 * scale.max(1.0);
        let trim_top = |mut v: Vec<Complex64>| {
            while v.len() > 1 && v.last().is_some_and(|c| c.norm() <= eps) {
                v.pop();
            }
            v
        };
        let mut num = trim_top(num);
        let den = trim_top(den);
        let mut power = power;
        while num.len() > 1 && num[0].norm() <= eps {
            num.remove(0);
            power += 1;
        }
        if den[0].norm() <= eps {
            return Err(Error::DenominatorVanishes);
        }
        let mut prefactor = prefactor;
        let (num, den) = match proportional(&num, &den, eps) {
            Some(lambda) => {
                prefactor *= lambda;
                (vec![ONE], vec![ONE])
            }
            None => (num, den),
        };
        let lead = *num.last().expect("non-empty");
        let d0 = den[0];
        prefactor *= lead / d0;
        Ok(Self {
            prefactor,
            power,
            numerator: ComplexPolynomial::new(num.iter().map(|c| c / lead).collect())?,
            denominator: ComplexPolynomial::trimmed(den.iter().map(|c| c / d0).collect())?,
        })
    }
}

/// `Some(lambda)` when `num = lambda * den` coefficient-wise.
fn proportional(num: &[Complex64], den: &[Complex64], eps: f64) -> Option<Complex64> {
    if num.len() != den.len() || num.len() < 2 {
        return None;
    }
    let (k, _) = den
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))?;
    let lambda = num[k] / den[k];
    num.iter()
        .zip(den)
        .all(|(n, d)| (n - lambda * d).norm() <= eps * lambda.norm().max(1.0))
        .then_some(lambda)
}

/// `f * F = h*H + conj(g*G)`, coefficient-wise; truncates to the common order.
pub fn convolve(f: &HarmonicMap, other: &HarmonicMap) -> HarmonicMap {
    HarmonicMap {
        h: f.h.hadamard(&other.h),
        g: f.g.hadamard(&other.g),
        closed_form: None,
        label: format!("({})*({})", f.label, other.label),
    }
}

/// `z F'(z)` at the same order as `F`.
fn z_derivative(s: &TaylorSeries) -> TaylorSeries {
    let d = s.derivative();
    TaylorSeries::from_fn(s.order(), |k| if k == 0 { ZERO } else { d.coeff(k - 1) })
}

/// `f0 * F = (H + zH')/2 + conj((G - zG')/2)`.
pub fn convolve_f0(f: &HarmonicMap) -> HarmonicMap {
    let half = Complex64::new(0.5, 0.0);
    let h = (&f.h + &z_derivative(&f.h)).scale(half);
    let g = (&f.g - &z_derivative(&f.g)).scale(half);
    let closed_form = match f.closed_form {
        Some(NamedMap::Shear1) => Some(NamedMap::Conv1),
        Some(NamedMap::Shear2) => Some(NamedMap::Conv2),
        Some(NamedMap::Shear3) => Some(NamedMap::Conv3),
        _ => None,
    };
    let label = match closed_form {
        Some(named) => named.name().to_string(),
        None => format!("f0*({})", f.label),
    };
    HarmonicMap {
        h,
        g,
        closed_form,
        label,
    }
}

/// Dilatation series `g'/h'` of any map with `h'(0) != 0`.
pub fn dilatation_series(f: &HarmonicMap) -> Result<TaylorSeries> {
    f.g.derivative()
        .div(&f.h.derivative())
        .map_err(|_| Error::DenominatorVanishes)
}

/// Series of the dilatation of `f0 * f`, `-z g''/(2h' + z h'')`, through
/// order `N - 2`.
pub fn omega_tilde_general(f: &HarmonicMap) -> Result<TaylorSeries> {
    let hp = f.h.derivative();
    let hpp = hp.derivative();
    let gpp = f.g.derivative().derivative();
    let n = hpp.order();
    let den = &hp.truncate(n).scale(Complex64::new(2.0, 0.0)) + &hpp.shift(1);
    if den.coeff(0).norm() <= TAU_ZERO {
        return Err(Error::DenominatorVanishes);
    }
    let q = gpp.truncate(n).div(&den)?;
    Ok(q.shift(1).scale(-ONE))
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_lin(terms: &[(Complex64, Vec<Complex64>)]) -> Vec<Complex64> {
    let len = terms.iter().map(|(_, p)| p.len()).max().unwrap_or(1);
    let mut out = vec![ZERO; len];
    for (c, p) in terms {
        for (k, v) in p.iter().enumerate() {
            out[k] += c * v;
        }
    }
    out
}

/// `(P, Q, D)` with `w = P/Q`, `w' = D/Q^2`.
fn rational_parts(w: &Dilatation) -> Result<(Vec<Complex64>, Vec<Complex64>, Vec<Complex64>)> {
    let (p, q) = w.as_rational().ok_or(Error::UnsupportedVariant)?;
    let (p, q) = (p.coeffs().to_vec(), q.coeffs().to_vec());
    let deriv = |v: &[Complex64]| -> Vec<Complex64> {
        if v.len() == 1 {
            vec![ZERO]
        } else {
            v[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * (k + 1) as f64)
                .collect()
        }
    };
    let d = poly_lin(&[
        (ONE, poly_mul(&deriv(&p), &q)),
        (-ONE, poly_mul(&p, &deriv(&q))),
    ]);
    Ok((p, q, d))
}

const Z: [Complex64; 2] = [ZERO, ONE];
const Z2: [Complex64; 3] = [ZERO, ZERO, ONE];

/// Dilatation of `f0 * f` for a right half-plane shear `f` with monomial or
/// Mobius dilatation:
/// `-z (w^2 + [w - w'z/2] + w'/2) / (1 + [w - w'z/2] + w'z^2/2)`.
pub fn omega_tilde_halfplane(w: &Dilatation) -> Result<RationalDilatation> {
    w.validate()?;
    let (p, q, d) = rational_parts(w)?;
    let two = Complex64::new(2.0, 0.0);
    let pq = poly_mul(&p, &q);
    let num = poly_lin(&[
        (two, poly_mul(&p, &p)),
        (two, pq.clone()),
        (-ONE, poly_mul(&Z, &d)),
        (ONE, d.clone()),
    ]);
    let den = poly_lin(&[
        (two, poly_mul(&q, &q)),
        (two, pq),
        (-ONE, poly_mul(&Z, &d)),
        (ONE, poly_mul(&Z2, &d)),
    ]);
    RationalDilatation::normalize(-ONE, 1, num, den)
}

/// Dilatation of `f0 * f` for a vertical strip shear with parameter `alpha`.
/// The factor `(1 + cos(alpha) z)/(cos(alpha) + z)` is cleared before
/// building polynomials, so `alpha = pi/2` needs no special handling.
pub fn omega_tilde_strip(w: &Dilatation, alpha: f64) -> Result<RationalDilatation> {
    check_alpha(alpha)?;
    w.validate()?;
    let (p, q, d) = rational_parts(w)?;
    let c = alpha.cos();
    let k_num = [ONE, Complex64::new(c, 0.0)];
    let k_den = [Complex64::new(c, 0.0), ONE];
    let two = Complex64::new(2.0, 0.0);
    let pq = poly_mul(&p, &q);
    let num = poly_lin(&[
        (two, poly_mul(&poly_mul(&p, &p), &k_den)),
        (two, poly_mul(&pq, &k_den)),
        (-ONE, poly_mul(&poly_mul(&Z, &d), &k_den)),
        (-ONE, poly_mul(&d, &k_num)),
    ]);
    let den = poly_lin(&[
        (-two, poly_mul(&poly_mul(&q, &q), &k_num)),
        (-two, poly_mul(&pq, &k_num)),
        (ONE, poly_mul(&poly_mul(&Z, &d), &k_num)),
        (ONE, poly_mul(&poly_mul(&Z2, &d), &k_den)),
    ]);
    RationalDilatation::normalize(-ONE, 1, num, den)
}

/// Direct pointwise evaluation of the half-plane formula from `w(z)`, `w'(z)`.
pub fn omega_tilde_halfplane_at(w: &Dilatation, z: Complex64) -> Result<Complex64> {
    let (om, dom) = w.eval_with_derivative(z)?;
    let mid = om - 0.5 * dom * z;
    Ok(-z * (om * om + mid + 0.5 * dom) / (ONE + mid + 0.5 * dom * z * z))
}

/// Direct pointwise evaluation of the strip formula from `w(z)`, `w'(z)`.
pub fn omega_tilde_strip_at(w: &Dilatation, alpha: f64, z: Complex64) -> Result<Complex64> {
    check_alpha(alpha)?;
    let (om, dom) = w.eval_with_derivative(z)?;
    let c = alpha.cos();
    let k = (ONE + c * z) / (c + z);
    let mid = om - 0.5 * dom * z;
    Ok(-z * (om * om + mid - 0.5 * dom * k) / (-k - mid * k + 0.5 * dom * z * z))
}
