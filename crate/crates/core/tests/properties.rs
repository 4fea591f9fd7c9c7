use harmconv::certify::{sweep_dilatation, DilatationSource, SweepGrid};
use harmconv::convolution::{convolve, convolve_f0, omega_tilde_halfplane};
use harmconv::harmonic::{canonical_f0, Dilatation, HarmonicMap};
use harmconv::series::{poly_roots_oracle, ComplexPolynomial, TaylorSeries};
use harmconv::zerocheck::{cohn_reduce, count_zeros_in_disk, schur_cohn};
use harmconv::{Complex64, TAU_ROOT};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn series(order: usize) -> impl Strategy<Value = TaylorSeries> {
    prop::collection::vec(complex(), order).prop_map(|c| TaylorSeries::new(c).unwrap())
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = ComplexPolynomial> {
    prop::collection::vec(complex(), 2..=max_degree + 1).prop_filter_map(
        "leading coefficient too small",
        |mut c| {
            let last = c.len() - 1;
            if c[last].norm() < 0.1 {
                c[last] += Complex64::new(0.5, 0.0);
            }
            ComplexPolynomial::new(c).ok()
        },
    )
}

/// Roots kept at least 1e-3 away from the unit circle.
fn separated_roots(max_degree: usize) -> impl Strategy<Value = Vec<Complex64>> {
    let root =
        (0.0f64..1.0, 0.0f64..std::f64::consts::TAU, any::<bool>()).prop_map(|(t, a, inside)| {
            let r = if inside { 0.999 * t } else { 1.001 + t };
            Complex64::from_polar(r, a)
        });
    prop::collection::vec(root, 1..=max_degree)
}

fn normalized_map(order: usize) -> impl Strategy<Value = HarmonicMap> {
    (series(order), series(order)).prop_map(|(h, g)| {
        let mut hc = h.into_coeffs();
        let mut gc = g.into_coeffs();
        hc[0] = Complex64::new(0.0, 0.0);
        hc[1] = Complex64::new(1.0, 0.0);
        gc[0] = Complex64::new(0.0, 0.0);
        gc[1] = Complex64::new(0.0, 0.0);
        HarmonicMap::new(
            TaylorSeries::new(hc).unwrap(),
            TaylorSeries::new(gc).unwrap(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in series(24), b in series(24), c in series(24)) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        for k in 0..24 {
            prop_assert!((left.coeff(k) - right.coeff(k)).norm() <= 1e-12);
        }
    }

    #[test]
    fn division_inverts_multiplication(a in series(20), b in series(20)) {
        let mut bc = b.into_coeffs();
        bc[0] += Complex64::new(2.0, 0.0);
        let b = TaylorSeries::new(bc).unwrap();
        let q = (&a * &b).div(&b).unwrap();
        for k in 0..20 {
            prop_assert!((q.coeff(k) - a.coeff(k)).norm() <= 1e-9);
        }
    }

    #[test]
    fn derivative_matches_finite_difference(a in series(16), re in -0.5f64..0.5, im in -0.5f64..0.5) {
        let z = Complex64::new(re, im);
        let h = 1e-6;
        let fd = (a.eval(z + h).unwrap() - a.eval(z - h).unwrap()) / (2.0 * h);
        let exact = a.derivative().eval(z).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
    }

    #[test]
    fn integrate_then_differentiate(a in series(16)) {
        let back = a.integrate().derivative();
        for k in 0..16 {
            prop_assert!((back.coeff(k) - a.coeff(k)).norm() <= 1e-15);
        }
    }

    #[test]
    fn convolution_is_commutative(f in normalized_map(16), g in normalized_map(16)) {
        prop_assert_eq!(convolve(&f, &g).h, convolve(&g, &f).h);
        prop_assert_eq!(convolve(&f, &g).g, convolve(&g, &f).g);
    }

    #[test]
    fn f0_shortcut_matches_generic(f in normalized_map(32)) {
        let fast = convolve_f0(&f);
        let slow = convolve(&canonical_f0(32), &f);
        for k in 0..32 {
            prop_assert!((fast.h.coeff(k) - slow.h.coeff(k)).norm() <= 1e-12);
            prop_assert!((fast.g.coeff(k) - slow.g.coeff(k)).norm() <= 1e-12);
        }
    }

    #[test]
    fn oracle_roots_are_sound(p in polynomial(7)) {
        let roots = poly_roots_oracle(&p).unwrap();
        prop_assert_eq!(roots.len(), p.degree());
        for r in roots {
            let bound = TAU_ROOT * p.max_coeff_norm() * r.norm().max(1.0).powi(p.degree() as i32);
            prop_assert!(p.eval(r).norm() <= bound);
        }
    }

    #[test]
    fn oracle_recovers_known_roots(roots in separated_roots(5)) {
        let p = ComplexPolynomial::from_roots(&roots, Complex64::new(1.0, 0.0)).unwrap();
        let found = poly_roots_oracle(&p).unwrap();
        for r in &roots {
            let nearest = found.iter().map(|f| (f - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-5, "root {} missing, nearest at {}", r, nearest);
        }
    }

    #[test]
    fn cohn_step_removes_one_inside_zero(roots in separated_roots(5)) {
        let p = ComplexPolynomial::from_roots(&roots, Complex64::new(1.0, 0.0)).unwrap();
        prop_assume!(p.degree() >= 2);
        let inside = roots.iter().filter(|r| r.norm() < 1.0).count();
        if let Ok(f1) = cohn_reduce(&p) {
            prop_assert_eq!(f1.degree(), p.degree() - 1);
            let reduced = poly_roots_oracle(&f1).unwrap().iter().filter(|r| r.norm() < 1.0).count();
            prop_assert_eq!(reduced + 1, inside);
        }
    }

    #[test]
    fn count_and_schur_cohn_agree_with_known_roots(roots in separated_roots(4)) {
        let p = ComplexPolynomial::from_roots(&roots, Complex64::new(1.0, 0.0)).unwrap();
        let inside = roots.iter().filter(|r| r.norm() < 1.0).count();
        prop_assert_eq!(count_zeros_in_disk(&p).unwrap().inside, inside);
        let sc = schur_cohn(&p).unwrap();
        if sc.determinants.iter().all(|d| d.abs() > 1e-10) {
            prop_assert_eq!(sc.all_inside, inside == p.degree());
        }
    }

    #[test]
    fn sweep_refinement_is_monotone(theta in 0.0f64..std::f64::consts::TAU, n in 1u32..5) {
        let r = omega_tilde_halfplane(&Dilatation::monomial(theta, n).unwrap()).unwrap();
        let grid = SweepGrid::uniform(10, 24, 0.95).unwrap();
        let coarse = sweep_dilatation(DilatationSource::Rational(&r), &grid).unwrap();
        let fine = sweep_dilatation(DilatationSource::Rational(&r), &grid.refined()).unwrap();
        prop_assert!(fine.extremum >= coarse.extremum);
    }
}

#[test]
fn sweep_is_deterministic() {
    let r = omega_tilde_halfplane(&Dilatation::mobius(0.3).unwrap()).unwrap();
    let grid = SweepGrid::uniform(40, 64, 0.99).unwrap();
    let a = sweep_dilatation(DilatationSource::Rational(&r), &grid).unwrap();
    let b = sweep_dilatation(DilatationSource::Rational(&r), &grid).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.csv_record(), b.csv_record());
}
