mod common;

use common::{element_oracle, problem, rel_diff};
use eigenbench::harmonium_rpm::{hankel_determinant, riccati_series, rpm_ground, RpmConfig};
use eigenbench::harmonium_rr::{matrix_elements, rr_ground, rr_spectrum, MomentTable, RrConfig};
use eigenbench::numerics::{quadrature, BigReal, Precision};
use proptest::prelude::*;

const P: Precision = Precision::digits(60);

fn r(s: &str) -> BigReal {
    BigReal::parse(s, P).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn series_derivatives_match_finite_differences(lambda in 0.0f64..6.0, eps in 0.5f64..8.0) {
        let pr = problem(BigReal::from_f64(lambda, P));
        let e = BigReal::from_f64(eps, P);
        let h = BigReal::pow10(-20, P);
        let hi = riccati_series(&pr, &(&e + &h), 20);
        let lo = riccati_series(&pr, &(&e - &h), 20);
        let mid = riccati_series(&pr, &e, 20);
        let tol = BigReal::pow10(-25, P);
        for j in 0..=20 {
            let fd = (&hi.coeffs[j] - &lo.coeffs[j]) / (&h * 2);
            prop_assert!((&fd - &mid.dcoeffs[j]).abs() < tol, "j={}: {} vs {}", j, fd, mid.dcoeffs[j]);
        }
    }

    #[test]
    fn first_order_hankel_is_f2(lambda in 0.0f64..4.0, eps in 1.0f64..6.0) {
        // D = 1 is f₂ itself; the recursion gives f₂ = (2 f₀ f₁) / 4 with f₁ = (f₀² + ε) / 3
        let pr = problem(BigReal::from_f64(lambda, P));
        let e = BigReal::from_f64(eps, P);
        let s = riccati_series(&pr, &e, 2);
        let f0 = -BigReal::from_f64(lambda, P) / 2;
        let f1 = (&f0 * &f0 + &e) / 3;
        let f2 = &f0 * &f1 / 2;
        prop_assert!((hankel_determinant(&s, 1, 0).unwrap() - f2).abs() < P.tolerance(5));
    }
}

#[test]
fn exact_cases_annihilate_hankel_determinants() {
    let cases = [(r("0"), r("1.5")), (r("2").sqrt(), r("2.5"))];
    for (lambda, eps) in cases {
        let s = riccati_series(&problem(lambda.clone()), &eps, 20);
        for d in 2..=10 {
            let h = hankel_determinant(&s, d, 0).unwrap();
            assert!(h.abs() < P.tolerance(10), "λ={lambda:.5} D={d}: {h}");
        }
    }
}

#[test]
fn inter_order_differences_eventually_shrink() {
    let p = Precision::digits(90);
    for lambda in [
        BigReal::one(p),
        BigReal::from_i64(10, p).sqrt().sqrt(),
        BigReal::from_i64(2, p),
    ] {
        let cfg = RpmConfig::new(30).with_precision(p);
        let res = rpm_ground(&problem(lambda.clone()), &cfg, None).unwrap();
        let diffs: Vec<BigReal> = res
            .orders_used
            .windows(2)
            .map(|w| (&w[1].value - &w[0].value).abs())
            .collect();
        assert!(
            diffs.len() >= 4,
            "λ={lambda:.5}: {} orders",
            res.orders_used.len()
        );
        let tail = &diffs[diffs.len() - 4..];
        assert!(
            tail.windows(2).all(|w| w[1] < w[0]),
            "λ={lambda:.5}: {tail:?}"
        );
    }
    // the exact case only moves by rounding noise
    let res = rpm_ground(
        &problem(BigReal::from_i64(2, p).sqrt()),
        &RpmConfig::new(30).with_precision(p),
        None,
    )
    .unwrap();
    assert!(res
        .orders_used
        .iter()
        .all(|s| (&s.value - &BigReal::ratio(5, 2, p)).abs() < p.tolerance(20)));
}

#[test]
fn ritz_values_bound_rpm_from_above() {
    // RPM is only as good as its certificate, so the slack is its certified
    // uncertainty rather than the working-precision floor
    let p = Precision::digits(90);
    for lambda in [
        BigReal::one(p),
        BigReal::from_i64(10, p).sqrt().sqrt(),
        BigReal::from_i64(2, p).sqrt(),
        BigReal::from_i64(2, p),
    ] {
        let pr = problem(lambda.clone());
        let rpm = rpm_ground(&pr, &RpmConfig::new(30).with_precision(p), None).unwrap();
        let slack = BigReal::pow10(-(rpm.certified_digits as i32), p) * &rpm.value;
        for n in (1..=40).step_by(3).chain([40]) {
            let rr = rr_ground(&pr, &RrConfig::new(n, p).unwrap()).unwrap();
            assert!(
                rr >= &rpm.value - &slack,
                "λ={lambda:.5} N={n}: {rr} < {}",
                rpm.value
            );
        }
    }
}

#[test]
fn hylleraas_undheim_interlacing() {
    let p = Precision::digits(80);
    let pr = problem(BigReal::from_i64(10, p).sqrt().sqrt());
    let mut prev = rr_spectrum(&pr, &RrConfig::new(1, p).unwrap()).unwrap();
    for n in 2..=26 {
        let cur = rr_spectrum(&pr, &RrConfig::new(n, p).unwrap()).unwrap();
        for (i, old) in prev.iter().enumerate() {
            assert!(cur[i] <= old + &p.tolerance(10), "N={n} i={i}");
        }
        prev = cur;
    }
}

#[test]
fn exact_states_stay_exact_as_basis_grows() {
    for (lambda, eps, from) in [(r("2").sqrt(), r("2.5"), 2), (r("10").sqrt(), r("3.5"), 3)] {
        let pr = problem(lambda);
        for n in from..=14 {
            let e = rr_ground(&pr, &RrConfig::new(n, P).unwrap()).unwrap();
            assert!((&e - &eps).abs() < P.tolerance(10), "N={n}: {e}");
        }
    }
}

#[test]
fn moments_match_quadrature() {
    let m = MomentTable::new(12, P);
    let zero = BigReal::zero(P);
    let forty = BigReal::from_i64(40, P);
    for n in 0..=12 {
        let q = quadrature(
            |x| x.powi(n as u32) * (-(x * x) / 2).exp(),
            &zero,
            &forty,
            &P.tolerance(12),
        )
        .unwrap();
        assert!(rel_diff(&q, m.get(n)) < P.tolerance(10), "n={n}");
    }
}

#[test]
fn low_order_elements_match_quadrature() {
    let lambda = r("0.8");
    let moments = MomentTable::new(20, P);
    let tol = r("1e-20");
    for i in 0..=3 {
        for j in 0..=i {
            let e = matrix_elements(i, j, &lambda, &moments);
            let (s, t, v) = element_oracle(i, j, &lambda, P);
            // some kinetic entries vanish identically, so measure against the largest moment involved
            let scale = moments.get(i + j + 4);
            for (name, got, want) in [
                ("S", &e.overlap, &s),
                ("T", &e.kinetic, &t),
                ("V", &e.potential, &v),
            ] {
                assert!(
                    (got - want).abs() < &tol * scale,
                    "{name}{i}{j}: {got} vs {want}"
                );
            }
        }
    }
}
