//! Zero location of complex polynomials relative to the unit circle.
//!
//! Two independent deciders: the Cohn reduction chain, which lowers the
//! degree by one while removing exactly one zero from inside the disk, and
//! the Schur-Cohn determinant test. Both are cross-checked against the
//! simultaneous-iteration root oracle in [`crate::series`].

use num_complex::Complex64;

use crate::series::{poly_roots_oracle, ComplexPolynomial};
use crate::{Error, Result, TAU_BOUNDARY, TAU_DET};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative pivot magnitude below which the LU factorization gives up.
pub const PIVOT_FLOOR: f64 = 1e-14;
/// Largest accepted imaginary part of a Schur-Cohn determinant.
pub const DET_IMAG_TOL: f64 = 1e-9;

/// `f*(z) = z^n conj(f(1/conj z))`: coefficients reversed and conjugated.
///
/// When `f(0) = 0` the adjoint has lower degree and is returned trimmed.
pub fn reciprocal_adjoint(f: &ComplexPolynomial) -> ComplexPolynomial {
    ComplexPolynomial::trimmed(adjoint_coeffs(f.coeffs()))
        .expect("conj of a nonzero leading coefficient")
}

fn adjoint_coeffs(c: &[Complex64]) -> Vec<Complex64> {
    c.iter().rev().map(|v| v.conj()).collect()
}

/// One application of Cohn's rule.
#[derive(Debug, Clone, PartialEq)]
pub struct CohnStep {
    pub input: ComplexPolynomial,
    /// `(conj(a_n) f - a_0 f*)/z` when `|a_0| < |a_n|`.
    pub reduced: Option<ComplexPolynomial>,
}

impl CohnStep {
    pub fn applicable(&self) -> bool {
        self.reduced.is_some()
    }
}

pub fn cohn_step(f: &ComplexPolynomial) -> CohnStep {
    CohnStep {
        input: f.clone(),
        reduced: cohn_reduce(f).ok(),
    }
}

/// `(conj(a_n) f(z) - a_0 f*(z))/z`, of degree `n - 1` with one zero fewer
/// inside the disk. The constant term of the numerator cancels exactly.
pub fn cohn_reduce(f: &ComplexPolynomial) -> Result<ComplexPolynomial> {
    let a0 = f.coeff(0);
    let an = f.leading();
    if f.degree() == 0 || a0.norm() >= an.norm() {
        return Err(Error::NotApplicable {
            a0: a0.norm(),
            an: an.norm(),
        });
    }
    let adj = adjoint_coeffs(f.coeffs());
    let combined: Vec<Complex64> = f
        .coeffs()
        .iter()
        .zip(&adj)
        .map(|(&p, &q)| an.conj() * p - a0 * q)
        .collect();
    debug_assert_eq!(combined[0], ZERO);
    // leading coefficient is |a_n|^2 - |a_0|^2 > 0
    ComplexPolynomial::new(combined[1..].to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    CohnChain,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCount {
    /// Zeros with modulus < 1.
    pub inside: usize,
    pub method: CountMethod,
    /// Oracle roots within `TAU_BOUNDARY` of the unit circle, if the oracle converged.
    pub near_boundary: Option<usize>,
    /// Successful Cohn reductions before the chain stopped.
    pub chain_steps: usize,
}

/// Number of zeros in the open unit disk.
///
/// Runs the Cohn chain while it applies; a chain reaching degree zero means
/// every zero is inside. Otherwise the oracle decides, refusing to count when
/// a root sits within `TAU_BOUNDARY` of the circle.
pub fn count_zeros_in_disk(f: &ComplexPolynomial) -> Result<ZeroCount> {
    if f.degree() == 0 {
        return Err(Error::BadParameter(
            "zero counting needs degree >= 1".into(),
        ));
    }
    let mut current = f.clone();
    let mut steps = 0;
    while current.degree() > 0 {
        match cohn_reduce(&current) {
            Ok(next) => {
                current = next;
                steps += 1;
            }
            Err(_) => break,
        }
    }
    let roots = poly_roots_oracle(f);
    let near = |roots: &[Complex64]| {
        roots
            .iter()
            .filter(|r| (r.norm() - 1.0).abs() < TAU_BOUNDARY)
            .count()
    };
    if current.degree() == 0 {
        return Ok(ZeroCount {
            inside: steps,
            method: CountMethod::CohnChain,
            near_boundary: roots.ok().map(|r| near(&r)),
            chain_steps: steps,
        });
    }
    let roots = roots?;
    if let Some(r) = roots.iter().find(|r| (r.norm() - 1.0).abs() < TAU_BOUNDARY) {
        return Err(Error::BoundaryAmbiguous { modulus: r.norm() });
    }
    Ok(ZeroCount {
        inside: roots
            .iter()
            .filter(|r| r.norm() < 1.0 - TAU_BOUNDARY)
            .count(),
        method: CountMethod::Oracle,
        near_boundary: Some(0),
        chain_steps: steps,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurCohnReport {
    /// `M_1, ..., M_n`.
    pub determinants: Vec<f64>,
    pub all_inside: bool,
}

/// The `2 nu x 2 nu` matrix `[[B*, A], [A*, B]]` with upper-triangular
/// Toeplitz `A` (first row `a_0 .. a_{nu-1}`) and `B` (first row
/// `conj(a_n) .. conj(a_{n-nu+1})`).
pub fn schur_cohn_matrix(f: &ComplexPolynomial, nu: usize) -> Vec<Vec<Complex64>> {
    let n = f.degree();
    assert!((1..=n).contains(&nu), "nu must lie in 1..=degree");
    let a = |i: usize, j: usize| if j >= i { f.coeff(j - i) } else { ZERO };
    let b = |i: usize, j: usize| {
        if j >= i {
            f.coeff(n - (j - i)).conj()
        } else {
            ZERO
        }
    };
    let mut m = vec![vec![ZERO; 2 * nu]; 2 * nu];
    for i in 0..nu {
        for j in 0..nu {
            m[i][j] = b(j, i).conj();
            m[i][nu + j] = a(i, j);
            m[nu + i][j] = a(j, i).conj();
            m[nu + i][nu + j] = b(i, j);
        }
    }
    m
}

/// Determinant by LU factorization with partial pivoting.
pub fn complex_determinant(mut m: Vec<Vec<Complex64>>) -> Result<Complex64> {
    let n = m.len();
    let scale = m
        .iter()
        .flatten()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|i| (i, m[i][k].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty column");
        if pivot < PIVOT_FLOOR * scale {
            return Err(Error::IllConditioned(pivot / scale));
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k];
        det *= pivot;
        for i in k + 1..n {
            let factor = m[i][k] / pivot;
            if factor == ZERO {
                continue;
            }
            let (upper, lower) = m.split_at_mut(i);
            for (target, &v) in lower[0][k..].iter_mut().zip(&upper[k][k..]) {
                *target -= factor * v;
            }
        }
    }
    Ok(det)
}

/// Schur-Cohn test: all zeros lie strictly inside the unit circle iff every
/// `M_nu > 0`.
pub fn schur_cohn(f: &ComplexPolynomial) -> Result<SchurCohnReport> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::BadParameter("Schur-Cohn needs degree >= 1".into()));
    }
    let mut determinants = Vec::with_capacity(n);
    for nu in 1..=n {
        let d = complex_determinant(schur_cohn_matrix(f, nu))?;
        if d.im.abs() > DET_IMAG_TOL * d.re.abs().max(1.0) {
            return Err(Error::BadParameter(format!("M_{nu} = {d} is not real")));
        }
        determinants.push(d.re);
    }
    let all_inside = determinants.iter().all(|&d| d > TAU_DET);
    Ok(SchurCohnReport {
        determinants,
        all_inside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn halfplane_quadratic(theta: f64) -> ComplexPolynomial {
        let v = Complex64::from_polar(0.5, -theta);
        ComplexPolynomial::new(vec![v, v, c(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn adjoint_examples() {
        let theta = 0.7;
        let adj = reciprocal_adjoint(&halfplane_quadratic(theta));
        let v = Complex64::from_polar(0.5, theta);
        assert_eq!(adj.coeffs(), &[c(1.0, 0.0), v, v]);

        let p = ComplexPolynomial::from_real(&[1.0, 1.0]).unwrap();
        assert_eq!(reciprocal_adjoint(&p), p);

        let q = ComplexPolynomial::new(vec![c(0.3, -1.0), c(2.0, 0.5), c(-1.0, 1.0)]).unwrap();
        assert_eq!(reciprocal_adjoint(&reciprocal_adjoint(&q)), q);
    }

    #[test]
    fn cohn_reduce_halfplane_quadratic() {
        for theta in [0.0, 1.0, -2.0, 3.0] {
            let f1 = cohn_reduce(&halfplane_quadratic(theta)).unwrap();
            assert_eq!(f1.degree(), 1);
            assert!(close(f1.coeff(1), c(0.75, 0.0), 1e-15));
            assert!(close(
                f1.coeff(0),
                Complex64::from_polar(0.5, -theta) - 0.25,
                1e-15
            ));
        }
    }

    #[test]
    fn cohn_reduce_mobius_quadratic() {
        for a in [-0.8, 0.0, 0.5] {
            let f = ComplexPolynomial::from_real(&[(1.0 + a) / 2.0, (1.0 + 3.0 * a) / 2.0, 1.0])
                .unwrap();
            let f1 = cohn_reduce(&f).unwrap();
            assert!(close(
                f1.coeff(1),
                c((a + 3.0) * (1.0 - a) / 4.0, 0.0),
                1e-15
            ));
            assert!(close(
                f1.coeff(0),
                c((1.0 + 3.0 * a) * (1.0 - a) / 4.0, 0.0),
                1e-15
            ));
        }
    }

    #[test]
    fn cohn_reduce_strip_cubic() {
        let (alpha, theta) = (2.3f64, 0.4f64);
        let x = alpha.cos();
        let u = Complex64::from_polar(1.0, theta);
        let f =
            ComplexPolynomial::new(vec![-0.5 / u, c(0.0, 0.0), x + 0.5 / u, c(1.0, 0.0)]).unwrap();
        let f1 = cohn_reduce(&f).unwrap();
        assert!(close(f1.coeff(2), c(0.75, 0.0), 1e-15));
        assert!(close(f1.coeff(1), x + 0.5 / u, 1e-15));
        assert!(close(f1.coeff(0), 0.5 / u * (x + 0.5 * u), 1e-15));
    }

    #[test]
    fn cohn_not_applicable() {
        let f = ComplexPolynomial::from_real(&[2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(cohn_reduce(&f), Err(Error::NotApplicable { .. })));
        assert!(!cohn_step(&f).applicable());
        assert!(cohn_step(&halfplane_quadratic(0.0)).applicable());
    }

    #[test]
    fn count_examples() {
        let z2 = ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]).unwrap();
        let r = count_zeros_in_disk(&z2).unwrap();
        assert_eq!((r.inside, r.method), (2, CountMethod::CohnChain));

        let r = count_zeros_in_disk(&halfplane_quadratic(0.0)).unwrap();
        assert_eq!((r.inside, r.method), (2, CountMethod::CohnChain));
        assert_eq!(r.near_boundary, Some(0));

        let a = 0.5;
        let f =
            ComplexPolynomial::from_real(&[(1.0 + a) / 2.0, (1.0 + 3.0 * a) / 2.0, 1.0]).unwrap();
        let f1 = cohn_reduce(&f).unwrap();
        let z0 = -f1.coeff(0) / f1.coeff(1);
        assert!(close(z0, c(-5.0 / 7.0, 0.0), 1e-15));
        assert_eq!(count_zeros_in_disk(&f).unwrap().inside, 2);
    }

    #[test]
    fn count_falls_back_to_oracle() {
        // (z - 2)(z - 0.5)
        let f = ComplexPolynomial::from_roots(&[c(2.0, 0.0), c(0.5, 0.0)], c(1.0, 0.0)).unwrap();
        let r = count_zeros_in_disk(&f).unwrap();
        assert_eq!((r.inside, r.method), (1, CountMethod::Oracle));

        // (z - 1)(z + 1/2): theta = pi in the half-plane quadratic
        let f = halfplane_quadratic(std::f64::consts::PI);
        assert!(matches!(
            count_zeros_in_disk(&f),
            Err(Error::BoundaryAmbiguous { .. })
        ));
    }

    #[test]
    fn schur_cohn_trivial_and_strip_cubic_m1() {
        let z = ComplexPolynomial::from_real(&[0.0, 1.0]).unwrap();
        let rep = schur_cohn(&z).unwrap();
        assert_eq!(rep.determinants, vec![1.0]);
        assert!(rep.all_inside);

        let (a, x) = (0.5, 0.0);
        let f = ComplexPolynomial::from_real(&[
            a * x + a / 2.0 - 0.5,
            a + 2.0 * a * x,
            0.5 + 1.5 * a + x,
            1.0,
        ])
        .unwrap();
        let rep = schur_cohn(&f).unwrap();
        assert!((rep.determinants[0] - 15.0 / 16.0).abs() < 1e-14);
        assert!(rep.all_inside);
    }

    #[test]
    fn schur_cohn_matrix_layout() {
        let f = ComplexPolynomial::new(vec![c(1.0, 1.0), c(2.0, 0.0), c(3.0, -1.0), c(4.0, 2.0)])
            .unwrap();
        let m = schur_cohn_matrix(&f, 2);
        let a = |k: usize| f.coeff(k);
        let expect = [
            [a(3), ZERO, a(0), a(1)],
            [a(2), a(3), ZERO, a(0)],
            [a(0).conj(), ZERO, a(3).conj(), a(2).conj()],
            [a(1).conj(), a(0).conj(), ZERO, a(3).conj()],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[i][j], expect[i][j], "({i},{j})");
            }
        }
    }

    #[test]
    fn schur_cohn_detects_outside_root() {
        let f = ComplexPolynomial::from_roots(&[c(0.2, 0.3), c(1.5, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(!schur_cohn(&f).unwrap().all_inside);
    }

    #[test]
    fn determinant_of_permutation_and_singular() {
        let one = c(1.0, 0.0);
        let m = vec![vec![ZERO, one], vec![one, ZERO]];
        assert_eq!(complex_determinant(m).unwrap(), -one);
        let s = vec![vec![one, one], vec![one, one]];
        assert!(matches!(
            complex_determinant(s),
            Err(Error::IllConditioned(_))
        ));
    }
}
