use g0bound_core::numerics::{gamma, integrate_singular, Complex};
use g0bound_core::zeros::{
    estimate_order_from_coeffs, estimate_order_from_log_coeffs, model_from_zeros, order_ratio_window_max, phi,
    product_eval, sup_weighted_phi, zero_sum, FunctionModel, ZeroSequence,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn sinhc(z: Complex) -> Complex {
    let w = z.sqrt() * PI;
    w.sinh() / w
}

/// ζ(s) by direct summation of 10⁶ terms plus an Euler–Maclaurin remainder
/// written out independently of the library.
fn zeta(s: f64) -> f64 {
    let n = 1_000_000u64;
    let head: f64 = (1..=n).rev().map(|k| (k as f64).powf(-s)).sum();
    let m = n as f64;
    head + m.powf(1.0 - s) / (s - 1.0) - 0.5 * m.powf(-s) + s / 12.0 * m.powf(-s - 1.0)
}

#[test]
fn toy_zero_sums() {
    let toy = ZeroSequence::toy_square(10_000);
    assert!(rel(zero_sum(&toy, 1.0).unwrap(), PI * PI / 6.0) < 1e-12);
    let z15 = zeta(1.5);
    assert!(rel(z15, 2.612_375_348_685_488) < 1e-12);
    assert!(rel(zero_sum(&toy, 0.75).unwrap(), z15) < 1e-10);
    assert!(zero_sum(&toy, 0.5).is_err());
    assert!(zero_sum(&toy, 0.4).is_err());
}

#[test]
fn toy_product_matches_sinh() {
    let toy = ZeroSequence::toy_square(10_000);
    assert_eq!(product_eval(&toy, Complex::new(0.0, 0.0)).unwrap(), Complex::new(1.0, 0.0));
    let v = product_eval(&toy, Complex::new(1.0, 0.0)).unwrap();
    assert!(rel(v.re, 3.676_077_910_374_978) < 1e-12);
    let v = product_eval(&toy, Complex::new(4.0, 0.0)).unwrap();
    assert!(rel(v.re, (2.0 * PI).sinh() / (2.0 * PI)) < 1e-12);
    for z in [Complex::new(1.0, 1.0), Complex::new(2.0, 0.5), Complex::new(16.0, -9.0), Complex::new(3000.0, 4000.0)] {
        let v = product_eval(&toy, z).unwrap();
        let e = sinhc(z);
        assert!((v - e).norm() / e.norm() < 1e-10, "z = {z}: {v} vs {e}");
    }
}

#[test]
fn toy_log_product_far_out() {
    let toy = ZeroSequence::toy_square(10_000);
    let z = Complex::new(2e7, 1e7);
    let w = z.sqrt() * PI;
    // log(sinh w / w) without overflow
    let expected = w + ((1.0 - (-2.0 * w).exp()) / 2.0).ln() - w.ln();
    let v = toy.log_product(z).unwrap();
    assert!((v - expected).norm() / expected.norm() < 1e-12);
    assert!(product_eval(&toy, z).is_err());
}

#[test]
fn product_reports_exact_zero() {
    let zs = ZeroSequence::head_only(vec![1.0, 2.0]).unwrap();
    assert!(product_eval(&zs, Complex::new(-2.0, 0.0)).is_err());
    let v = product_eval(&zs, Complex::new(1.0, 0.0)).unwrap();
    assert!((v.re - 3.0).abs() < 1e-15);
}

#[test]
fn resolvent_powers_match_direct() {
    let toy = ZeroSequence::toy_square(200);
    let z = Complex::new(3000.0, -1000.0);
    let w = z.sqrt() * PI;
    let closed = (w / w.tanh() - 1.0) / (z * 2.0);
    let v = toy.resolvent_sum(z, 1).unwrap();
    assert!((v - closed).norm() / closed.norm() < 1e-12);
    for m in 2..=4u32 {
        let direct: Complex = (1..=3_000_000u64).rev().map(|n| (z + (n * n) as f64).powi(-(m as i32))).sum();
        let v = toy.resolvent_sum(z, m).unwrap();
        assert!((v - direct).norm() / direct.norm() < 1e-9, "m = {m}");
    }
}

#[test]
fn phi_values() {
    let toy = ZeroSequence::toy_square(10_000);
    assert!(rel(phi(&toy, 1.0).unwrap(), 0.386_318_602_413_12) < 1e-10);
    let direct: f64 = (1..200).map(|n| (-0.1 * (n * n) as f64).exp()).sum();
    assert!(rel(phi(&toy, 0.1).unwrap(), direct) < 1e-13);
    assert!(phi(&toy, 50.0).unwrap() < 2.0 * (-49.0f64).exp());
    // φ(t) ~ √(π/t)/2 − 1/2 as t → 0
    let t = 1e-9;
    assert!(rel(phi(&toy, t).unwrap(), 0.5 * (PI / t).sqrt() - 0.5) < 1e-10);
    assert!(phi(&toy, 0.0).is_err());
    assert!(phi(&toy, -1.0).is_err());
}

#[test]
fn weighted_sup() {
    let one = ZeroSequence::head_only(vec![1.0]).unwrap();
    let e = std::f64::consts::E;
    assert!(rel(sup_weighted_phi(&one, 0.5).unwrap(), (0.5 / e).sqrt()) < 1e-12);
    let two = ZeroSequence::head_only(vec![2.0]).unwrap();
    assert!(rel(sup_weighted_phi(&two, 0.5).unwrap(), 0.303_265_329_856_316_7) < 1e-12);

    let toy = ZeroSequence::toy_square(10_000);
    for rho in [0.55, 0.75, 0.95] {
        let s = sup_weighted_phi(&toy, rho).unwrap();
        assert!(s > 0.0);
        assert!(s <= (rho / e).powf(rho) * zero_sum(&toy, rho).unwrap() + 1e-9);
    }
    assert!(sup_weighted_phi(&toy, 0.5).is_err());
    assert!(sup_weighted_phi(&toy, 1.0).is_err());
}

#[test]
fn mellin_identity_for_toy() {
    let toy = ZeroSequence::toy_square(10_000);
    for rho in [0.6, 0.75, 0.9] {
        // ∫ φ(t) t^{ρ-1} dt with the singular driver's x^{-(1-ρ)} weight
        let q = integrate_singular(|t| toy.phi(t).unwrap(), 1.0 - rho, 1.0).unwrap();
        let expected = gamma(rho).unwrap() * zero_sum(&toy, rho).unwrap();
        assert!(rel(q.value, expected) < 1e-6, "rho = {rho}");
    }
}

#[test]
fn order_estimates() {
    let mut lgam = vec![0.0f64; 402];
    for n in 1..402 {
        lgam[n] = lgam[n - 1] + (n as f64).ln();
    }
    // index = power; a_0 and a_1 are ignored by the window
    // 1/n! underflows past n = 177 and (n!)^-2 past n = 101, so the
    // n ≤ 200 cases go through the log form.
    let fact: Vec<f64> = (0..=170).map(|n| (-lgam[n]).exp()).collect();
    assert!((estimate_order_from_coeffs(&fact, 50).unwrap() - 1.0).abs() < 0.02);
    let log1: Vec<f64> = (0..=200).map(|n| lgam[n]).collect();
    assert!((estimate_order_from_log_coeffs(&log1, 50).unwrap() - 1.0).abs() < 0.02);
    let fact2: Vec<f64> = (0..=100).map(|n| (-2.0 * lgam[n]).exp()).collect();
    assert!((estimate_order_from_coeffs(&fact2, 50).unwrap() - 0.5).abs() < 0.01);
    let log2: Vec<f64> = (0..=200).map(|n| 2.0 * lgam[n]).collect();
    assert!((estimate_order_from_log_coeffs(&log2, 50).unwrap() - 0.5).abs() < 0.01);
    let g2: Vec<f64> = (0..=85).map(|n| (-lgam[2 * n]).exp()).collect();
    assert!((estimate_order_from_coeffs(&g2, 50).unwrap() - 0.5).abs() < 0.01);
    let logg2: Vec<f64> = (0..=200).map(|n| lgam[2 * n]).collect();
    assert!((estimate_order_from_log_coeffs(&logg2, 50).unwrap() - 0.5).abs() < 0.01);
    // The raw window maximum sits visibly above the order.
    assert!(order_ratio_window_max(&fact, 50).unwrap() > 1.1);

    let bad = vec![0.5, 0.5, 2.0, 0.1, 0.01];
    assert!(estimate_order_from_coeffs(&bad, 3).is_err());
    assert!(estimate_order_from_coeffs(&fact, 500).is_err());
}

#[test]
fn toy_model_contract() {
    let model = model_from_zeros(ZeroSequence::toy_square(10_000), 1.0).unwrap();
    assert!(rel(model.log_derivative(1e-9).unwrap(), PI * PI / 6.0) < 1e-6);
    let v = model.value_ratio(Complex::new(1.0, 0.0)).unwrap();
    assert!(rel(v.re, PI.sinh() / PI) < 1e-12);
    assert_eq!(model.value_ratio(Complex::new(0.0, 0.0)).unwrap(), Complex::new(1.0, 0.0));
    // f'/f of sinh(π√x)/(π√x)
    for x in [0.5f64, 1.0, 5.0, 1e6] {
        let s = x.sqrt();
        let exact = (PI / (2.0 * s)) / (PI * s).tanh() - 1.0 / (2.0 * x);
        assert!(rel(model.log_derivative(x).unwrap(), exact) < 1e-11, "x = {x}");
    }
    assert!(model_from_zeros(ZeroSequence::toy_square(10), 0.0).is_err());
}

#[test]
fn json_round_trip_and_validation() {
    let zs = ZeroSequence::toy_square(5);
    let text = serde_json::to_string(&zs).unwrap();
    assert_eq!(text, r#"{"head":[1.0,4.0,9.0,16.0,25.0],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.5}"#);
    let back: ZeroSequence = serde_json::from_str(&text).unwrap();
    assert_eq!(back, zs);

    let shifted: ZeroSequence = serde_json::from_str(
        r#"{"head":[1.0,2.0],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.5,"tail_offset":-0.25}"#,
    )
    .unwrap();
    assert_eq!(shifted.tail().unwrap().offset, -0.25);

    for bad in [
        r#"{"head":[2.0,1.0],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.5}"#,
        r#"{"head":[0.0],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.5}"#,
        r#"{"head":[1.0],"tail_exponent":1.0,"tail_coefficient":1.0,"order_rho0":1.0}"#,
        r#"{"head":[1.0],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.6}"#,
        r#"{"head":[1.0],"tail_exponent":2.0,"tail_coefficient":-1.0,"order_rho0":0.5}"#,
        r#"{"head":[],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.5}"#,
        r#"{"head":[1.0],"tail_exponent":2.0,"order_rho0":0.5}"#,
        r#"{"head":[1.0],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.5,"x":1}"#,
    ] {
        assert!(serde_json::from_str::<ZeroSequence>(bad).is_err(), "{bad}");
    }
    let poly: ZeroSequence =
        serde_json::from_str(r#"{"head":[1.0],"tail_exponent":null,"tail_coefficient":null,"order_rho0":0.0}"#)
            .unwrap();
    assert!(poly.tail().is_none());
}

#[test]
fn short_head_matches_long_head() {
    let short: ZeroSequence =
        serde_json::from_str(r#"{"head":[1.0,4.0,9.0],"tail_exponent":2.0,"tail_coefficient":1.0,"order_rho0":0.5}"#)
            .unwrap();
    let long = ZeroSequence::toy_square(10_000);
    for rho in [0.6, 0.75, 1.0, 2.0] {
        assert!(rel(zero_sum(&short, rho).unwrap(), zero_sum(&long, rho).unwrap()) < 1e-12, "rho = {rho}");
    }
    for x in [0.0, 0.5, 20.0] {
        assert!(rel(short.log_derivative(x).unwrap(), long.log_derivative(x).unwrap()) < 1e-12);
    }
    assert!(rel(phi(&short, 0.01).unwrap(), phi(&long, 0.01).unwrap()) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sums_do_not_depend_on_head_length(n in 1usize..400, rho in 0.55..2.0f64, x in 0.0..50.0f64) {
        let a = ZeroSequence::toy_square(n);
        let b = ZeroSequence::toy_square(2_000);
        prop_assert!(rel(zero_sum(&a, rho).unwrap(), zero_sum(&b, rho).unwrap()) < 1e-11);
        prop_assert!(rel(a.log_derivative(x).unwrap(), b.log_derivative(x).unwrap()) < 1e-11);
    }

    #[test]
    fn product_sits_between_real_part_and_modulus(r in 0.01..50.0f64, theta in -1.5..1.5f64) {
        let zs = ZeroSequence::toy_square(500);
        let z = Complex::from_polar(r, theta);
        let at_z = product_eval(&zs, z).unwrap().norm();
        let at_re = product_eval(&zs, Complex::new(z.re, 0.0)).unwrap().re;
        let at_mod = product_eval(&zs, Complex::new(r, 0.0)).unwrap().re;
        prop_assert!(at_re >= 1.0);
        prop_assert!(at_re <= at_z * (1.0 + 1e-12));
        prop_assert!(at_z <= at_mod * (1.0 + 1e-12));
    }

    #[test]
    fn log_derivative_and_phi_decrease(x in 0.0..100.0f64, dx in 0.01..10.0f64, t in 0.001..5.0f64) {
        let zs = ZeroSequence::power_law(50, 2.0, 1.5, 0.0).unwrap();
        let (a, b) = (zs.log_derivative(x).unwrap(), zs.log_derivative(x + dx).unwrap());
        prop_assert!(a > b && b > 0.0);
        let (p0, p1) = (zs.phi(t).unwrap(), zs.phi(t * 1.5).unwrap());
        prop_assert!(p0 > p1 && p1 >= 0.0);
    }
}
