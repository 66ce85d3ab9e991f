//! The growth chain on a polar grid, and the elementary inequalities
//! behind it.

use super::{GridSpec, RhoChoice, Tolerances, VerificationRecord as Rec, VerifyOptions};
use crate::bound::{midpoint_rho, BoundEngine, BoundReport};
use crate::error::Result;
use crate::models::Model;
use crate::numerics::{expm1_complex, gamma_unchecked, Complex};
use crate::special::airy::airy_ai0;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::FRAC_PI_2;

pub const DEFAULT_FUZZ_POINTS: usize = 10_000;

struct Point {
    r: f64,
    theta: f64,
    z: Complex,
}

fn point_inputs(p: &Point, label: &Value, rho: Option<f64>) -> Value {
    let mut v = json!({
        "r": p.r,
        "theta": p.theta,
        "z": { "re": p.z.re, "im": p.z.im },
        "rho": label,
    });
    if let Some(rho) = rho {
        v["rho_value"] = json!(rho);
    }
    v
}

fn chain_records(id: &str, inputs: &Value, rep: &Result<BoundReport>, tol: &Tolerances, out: &mut Vec<Rec>) {
    let checks = [
        ("chain_lower", tol.get("chain_lower")),
        ("chain_middle", tol.get("chain_lower")),
        ("chain_upper", tol.get("chain_upper")),
        ("tightness", tol.get("tightness")),
    ];
    match rep {
        Ok(r) => {
            let sides = [
                (1.0, r.lower),
                (r.lower, r.mid),
                (r.mid.ln(), r.exponent_thm),
                (r.exponent_intermediate, r.exponent_thm),
            ];
            for ((name, t), (l, rhs)) in checks.into_iter().zip(sides) {
                out.push(Rec::le(name, id, inputs.clone(), l, rhs, t));
            }
        }
        Err(e) => {
            for (name, t) in checks {
                out.push(Rec::failed(name, id, inputs.clone(), e, t));
            }
        }
    }
}

/// The chain, tightness and angle checks on `grid`, plus the fuzz of the
/// elementary inequality, with default options.
pub fn run_inequality_suite(model: &Model, grid: &GridSpec) -> Vec<Rec> {
    run_inequality_suite_with(model, grid, &VerifyOptions::default())
}

pub fn run_inequality_suite_with(model: &Model, grid: &GridSpec, opts: &VerifyOptions) -> Vec<Rec> {
    let m = model.as_dyn();
    let id = m.id();
    let tol = &opts.tolerances;
    let engine = BoundEngine::new(m);
    let rho0 = m.order_rho0();
    let mut out = Vec::new();

    let points: Vec<Point> = grid
        .radii
        .iter()
        .filter(|&&r| m.max_modulus().is_none_or(|cap| r <= cap))
        .flat_map(|&r| grid.angles.iter().map(move |&theta| Point { r, theta, z: Complex::from_polar(r, theta) }))
        .collect();

    // (radius, rho label) -> [(theta, exponent)]
    let mut by_column: Vec<(f64, Value, Vec<(f64, f64)>)> = Vec::new();
    for p in &points {
        let mut mid_exp = None;
        let mut opt_exp = None;
        for choice in &grid.rhos {
            let (label, rep) = match *choice {
                RhoChoice::Midpoint => (json!("midpoint"), engine.evaluate_chain(p.z, midpoint_rho(m))),
                RhoChoice::Optimized => (json!("optimized"), engine.evaluate_optimized(p.z)),
                RhoChoice::Value(v) => {
                    if !(v > rho0 && v < 1.0) {
                        continue;
                    }
                    (json!(v), engine.evaluate_chain(p.z, v))
                }
            };
            let inputs = point_inputs(p, &label, rep.as_ref().ok().map(|r| r.rho));
            chain_records(&id, &inputs, &rep, tol, &mut out);
            if let Ok(r) = &rep {
                match choice {
                    RhoChoice::Midpoint => mid_exp = Some(r.exponent_thm),
                    RhoChoice::Optimized => opt_exp = Some(r.exponent_thm),
                    RhoChoice::Value(_) => {}
                }
                let slot = by_column.iter_mut().find(|(r0, l, _)| *r0 == p.r && *l == label);
                match slot {
                    Some((_, _, v)) => v.push((p.theta, r.exponent_thm)),
                    None => by_column.push((p.r, label, vec![(p.theta, r.exponent_thm)])),
                }
            }
        }
        if let (Some(mid), Some(opt)) = (mid_exp, opt_exp) {
            out.push(Rec::le(
                "optimized_vs_midpoint",
                &id,
                point_inputs(p, &json!("optimized"), None),
                opt,
                mid,
                tol.get("optimized"),
            ));
        }
        if let Model::AiryPair(_) = model {
            let f0 = 1.0 / (3f64.powf(4.0 / 3.0) * gamma_unchecked(2.0 / 3.0).powi(2));
            let ai0 = airy_ai0();
            out.push(Rec::try_le(
                "airy_f0_chain",
                &id,
                point_inputs(p, &Value::Null, None),
                tol.get("chain_lower"),
                m.value_ratio(p.z).map(|v| (f0, v.norm() * ai0 * ai0)),
            ));
        }
    }

    for (r, label, mut col) in by_column {
        col.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()).then(a.0.total_cmp(&b.0)));
        for w in col.windows(2) {
            out.push(Rec::le(
                "angular_monotonicity",
                &id,
                json!({ "r": r, "rho": label, "theta": [w[0].0, w[1].0] }),
                w[0].1,
                w[1].1,
                tol.get("angular"),
            ));
        }
    }

    out.push(elementary_fuzz(&id, opts.seed, opts.fuzz_points, tol.get("fuzz")));
    out
}

/// `|1 − e^{−z}| ≤ (1 − e^{−Re z})/cos(arg z)` and `1 − e^{−x} < x` at
/// `points` seeded random `z` in the open right half-plane, folded into
/// one record: `lhs` is the largest ratio of left to right side.
pub fn elementary_fuzz(model_id: &str, seed: u64, points: usize, tol: f64) -> Rec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut worst_z = Complex::new(0.0, 0.0);
    for _ in 0..points {
        let r = 10f64.powf(rng.gen_range(-3.0..2.0));
        let theta = rng.gen_range(-1.0..1.0) * (FRAC_PI_2 - 1e-6);
        let z = Complex::from_polar(r, theta);
        let one_minus = -(-z.re).exp_m1();
        let ratio = (-expm1_complex(-z)).norm() * theta.cos() / one_minus;
        let ratio_real = one_minus / z.re;
        let w = ratio.max(ratio_real);
        if !(w <= worst) {
            worst = w;
            worst_z = z;
        }
    }
    Rec::le(
        "elementary_inequality",
        model_id,
        json!({ "seed": seed, "points": points, "worst_z": { "re": worst_z.re, "im": worst_z.im } }),
        worst,
        1.0,
        tol,
    )
}
