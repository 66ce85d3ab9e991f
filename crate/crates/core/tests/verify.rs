use g0bound_core::models::{Model, ModelSpec};
use g0bound_core::numerics::Complex;
use g0bound_core::verify::{
    elementary_fuzz, run_all, run_identity_suite, run_inequality_suite, run_monotonicity_suite, GridSpec, Relation,
    RhoChoice, Side, Tolerances, VerificationRecord, VerifyOptions,
};
use g0bound_core::zeros::ZeroSequence;
use proptest::prelude::*;
use serde_json::json;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn toy() -> &'static Model {
    static TOY: OnceLock<Model> = OnceLock::new();
    TOY.get_or_init(|| ModelSpec::ToySquare { head_count: 10_000 }.build().unwrap())
}

fn bessel0() -> &'static Model {
    static B: OnceLock<Model> = OnceLock::new();
    B.get_or_init(|| ModelSpec::BesselI { nu: 0.0, head_count: 200 }.build().unwrap())
}

fn k_order() -> Model {
    ModelSpec::KOrder { a: 1.0, head_count: 32 }.build().unwrap()
}

fn named<'a>(recs: &'a [VerificationRecord], name: &str) -> Vec<&'a VerificationRecord> {
    recs.iter().filter(|r| r.check_name == name).collect()
}

fn real(s: Side) -> f64 {
    match s {
        Side::Real(v) => v,
        Side::Complex { .. } => panic!("expected a real side"),
    }
}

fn one_point(rho: RhoChoice) -> GridSpec {
    GridSpec { radii: vec![1.0], angles: vec![0.3], rhos: vec![rho] }
}

#[test]
fn toy_identities_pass() {
    let recs = run_identity_suite(toy(), &[0.75], &Tolerances::default());
    assert_eq!(recs.len(), 9);
    for r in &recs {
        assert!(r.pass, "{r:?}");
    }
    for name in ["mellin", "integral_identity", "laplace", "log_representation"] {
        assert!(!named(&recs, name).is_empty(), "{name}");
    }
    // J(0.75) = π√2·ζ(3/2)
    let j = named(&recs, "integral_identity")[0];
    assert!((real(j.lhs) - PI * 2f64.sqrt() * 2.612_375_348_685_488).abs() < 1e-8);
}

#[test]
fn single_zero_integral_identity_is_pi() {
    let spec = ModelSpec::Custom { id: "one".into(), zeros: ZeroSequence::head_only(vec![1.0]).unwrap(), f0: 1.0 };
    let recs = run_identity_suite(&spec.build().unwrap(), &[0.5], &Tolerances::default());
    let r = named(&recs, "integral_identity")[0];
    assert!(r.pass);
    assert!((real(r.lhs) - PI).abs() < 1e-9);
    assert!((real(r.rhs) - PI).abs() < 1e-12);
}

#[test]
fn head_only_model_runs_j_only_subset() {
    let k = k_order();
    let recs = run_identity_suite(&k, &[0.75], &Tolerances::default());
    assert!(recs.len() < run_identity_suite(toy(), &[0.75], &Tolerances::default()).len() + 4);
    assert!(named(&recs, "mellin").is_empty());
    assert!(named(&recs, "laplace").is_empty());
    for r in &recs {
        assert_eq!(r.inputs["mode"], "j_only", "{r:?}");
        assert!(r.pass, "{r:?}");
    }
    assert_eq!(recs.len(), 1 + 3 + 3 + 1 + 4);
}

#[test]
fn bessel_adjudication_is_decisive() {
    let recs = run_identity_suite(bessel0(), &[0.75], &Tolerances::default());
    let points = named(&recs, "bessel_logderiv_form");
    assert_eq!(points.len(), 12);
    assert!(points.iter().all(|r| r.pass && r.inputs["matching_form"] == "minus_nu_over_x"));
    let verdict = named(&recs, "bessel_logderiv_form_verdict");
    assert_eq!(verdict.len(), 1);
    assert!(verdict[0].pass);
    assert_eq!(verdict[0].inputs["matching_form"], "minus_nu_over_x");
    assert_eq!(verdict[0].inputs["minus_3nu_over_2x"], 0);
}

#[test]
fn bessel_chain_on_real_axis() {
    let grid = GridSpec { radii: vec![1.0], angles: vec![0.0], rhos: vec![RhoChoice::Value(0.75)] };
    let recs = run_inequality_suite(bessel0(), &grid);
    let mid = named(&recs, "chain_middle")[0];
    assert!((real(mid.lhs) - 1.266_065_877_752_008_4).abs() < 1e-10);
    assert_eq!(real(mid.lhs), real(mid.rhs));
    assert!(recs.iter().all(|r| r.pass));
}

#[test]
fn toy_default_grid_passes() {
    let recs = run_inequality_suite(toy(), &GridSpec::default());
    for r in &recs {
        assert!(r.pass, "{r:?}");
    }
    // 28 points × 2 columns × 4, 28 optimized-vs-midpoint, 4 radii × 2 × 6 angle pairs, 1 fuzz
    assert_eq!(recs.len(), 224 + 28 + 48 + 1);
    for r in named(&recs, "chain_middle") {
        if r.inputs["theta"] == 0.0 {
            assert_eq!(real(r.lhs), real(r.rhs));
        }
    }
}

#[test]
fn grid_rho_outside_range_is_skipped() {
    let grid = GridSpec { radii: vec![1.0], angles: vec![0.0], rhos: vec![RhoChoice::Value(0.4)] };
    let recs = run_inequality_suite(toy(), &grid);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].check_name, "elementary_inequality");
}

#[test]
fn grid_validation() {
    assert!(GridSpec::default().validate().is_ok());
    let mut g = GridSpec::default();
    g.angles.push(PI / 2.0);
    assert!(g.validate().unwrap_err().is_domain());
    let mut g = GridSpec::default();
    g.radii.push(0.0);
    assert!(g.validate().is_err());
}

#[test]
fn toy_monotonicity_passes() {
    let recs = run_monotonicity_suite(toy(), &Tolerances::default());
    assert_eq!(recs.len(), 12 + 6 + 18 + 16);
    for r in &recs {
        assert!(r.pass, "{r:?}");
    }
    let n0 = named(&recs, "derivative_bound")
        .into_iter()
        .find(|r| r.inputs["n"] == 0 && r.inputs["z"] == json!({ "re": 1.0, "im": 1.0 }))
        .unwrap();
    // Σ_{n≥1} 1/(1+n²) = (π coth π − 1)/2; |Σ 1/(1+i+n²)| by direct summation
    let coth = 1.0 / PI.tanh();
    assert!((real(n0.rhs) - (PI * coth - 1.0) / 2.0).abs() < 1e-10);
    let n_max = 2_000_000u64;
    let direct: Complex = (1..=n_max).rev().map(|n| 1.0 / Complex::new(1.0 + (n * n) as f64, 1.0)).sum();
    let direct = direct + 1.0 / (n_max as f64 + 0.5);
    assert!((real(n0.lhs) - direct.norm()).abs() < 1e-10);
}

#[test]
fn head_only_monotonicity_subset() {
    let recs = run_monotonicity_suite(&k_order(), &Tolerances::default());
    assert_eq!(recs.len(), 6 + 9 + 16);
    assert!(named(&recs, "derivative_bound").is_empty());
    for r in &recs {
        assert!(r.pass, "{r:?}");
        assert_eq!(r.inputs["mode"], "head_only");
    }
}

#[test]
fn run_all_counts() {
    let opts = VerifyOptions::default();
    let (recs, s) = run_all(&[], &GridSpec::default(), &opts);
    assert!(recs.is_empty());
    assert_eq!(s.total, 0);

    let specs = [ModelSpec::ToySquare { head_count: 10_000 }];
    let (recs, s) = run_all(&specs, &one_point(RhoChoice::Midpoint), &opts);
    // identity 3·2 + 3 + 3 + 1, inequality 4 + fuzz, monotonicity 52
    assert_eq!(s.total, 13 + 5 + 52);
    assert_eq!(s.failed, 0);
    assert_eq!(s.passed, recs.len());
    assert!(s.worst_rel_error.contains_key("chain_upper"));
    let keys: Vec<_> = recs.iter().map(|r| (r.check_name.clone(), r.model_id.clone(), r.inputs_text())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn run_all_is_deterministic() {
    let specs = [ModelSpec::ToySquare { head_count: 2_000 }, ModelSpec::BesselI { nu: 0.5, head_count: 200 }];
    let grid = one_point(RhoChoice::Optimized);
    let parallel = run_all(&specs, &grid, &VerifyOptions::default());
    let serial = run_all(&specs, &grid, &VerifyOptions { parallel: false, ..VerifyOptions::default() });
    assert_eq!(parallel, serial);
}

#[test]
fn tolerance_overrides_apply() {
    let mut tol = Tolerances::default();
    assert_eq!(tol.get("identity"), 1e-6);
    tol.set("identity", 0.0).unwrap();
    let recs = run_identity_suite(toy(), &[0.75], &tol);
    assert!(recs.iter().any(|r| !r.pass));
    assert!(tol.set("no_such", 1.0).unwrap_err().is_domain());
    assert!(tol.set("identity", -1.0).is_err());
}

#[test]
fn fuzz_is_seeded() {
    let a = elementary_fuzz("m", 7, 10_000, 1e-12);
    assert!(a.pass, "{a:?}");
    assert!(real(a.lhs) <= 1.0 + 1e-12);
    assert_eq!(a, elementary_fuzz("m", 7, 10_000, 1e-12));
    assert_ne!(a.inputs["worst_z"], elementary_fuzz("m", 8, 10_000, 1e-12).inputs["worst_z"]);
}

#[test]
fn failed_computation_is_a_record() {
    let recs = run_identity_suite(toy(), &[0.4], &Tolerances::default());
    let bad = named(&recs, "mellin");
    assert_eq!(bad.len(), 1);
    assert!(!bad[0].pass);
    assert!(bad[0].abs_error.is_finite() && bad[0].rel_error.is_finite());
    assert!(bad[0].inputs["error"].as_str().unwrap().starts_with("domain error"));
    let r = VerificationRecord::failed("x", "m", json!({}), &g0bound_core::Error::domain("boom"), 1e-6);
    assert!(!r.pass);
    assert_eq!(r.inputs["error"], "domain error: boom");
}

#[test]
fn record_round_trips_through_json() {
    let r = VerificationRecord::eq(
        "c",
        "m",
        json!({ "rho": 0.75 }),
        Complex::new(1.0, 2.0),
        Complex::new(1.0, 2.0 + 1e-9),
        1e-6,
    );
    assert!(r.pass);
    let text = serde_json::to_string(&r).unwrap();
    let back: VerificationRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    let le = VerificationRecord::le("c", "m", json!({}), 2.0, 1.0, 1e-6);
    assert_eq!(le.relation, Relation::Le);
    assert!(!le.pass);
    assert_eq!(le.abs_error, 1.0);
}

fn side() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, Just(0.0), Just(f64::INFINITY), Just(f64::NEG_INFINITY), Just(f64::NAN),]
}

proptest! {
    #[test]
    fn record_invariants(l in side(), r in side(), tol in 0.0..1.0f64, le in any::<bool>()) {
        let rec = if le {
            VerificationRecord::le("c", "m", json!({}), l, r, tol)
        } else {
            VerificationRecord::eq("c", "m", json!({}), l, r, tol)
        };
        prop_assert!(rec.abs_error >= 0.0 && rec.abs_error.is_finite());
        prop_assert!(rec.rel_error >= 0.0 && rec.rel_error.is_finite());
        prop_assert_eq!(rec.pass, rec.abs_error <= tol || rec.rel_error <= tol);
    }
}
