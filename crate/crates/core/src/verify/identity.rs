//! Identities relating `f'/f`, `φ`, the zero sums and `f` itself.

use super::{Tolerances, VerificationRecord as Rec};
use crate::bound::{log_ratio_integral, zero_sum_integral};
use crate::error::{Error, Result};
use crate::models::Model;
use crate::numerics::{
    expm1_complex, gamma, integrate_interval, integrate_singular_with, Complex, IntervalOptions, QuadValue,
    SingularOptions,
};
use crate::special::airy::airy_pair_log_derivative_series;
use crate::special::bessel::bessel_i;
use crate::special::bessel_i_log_derivative;
use crate::special::k_order::k_order_eval;
use crate::zeros::{FunctionModel, ZeroFidelity, ZeroSequence};
use serde_json::json;

const LAPLACE_POINTS: [f64; 3] = [0.5, 1.0, 5.0];
const LOG_REP_POINTS: [(f64, f64); 3] = [(1.0, 0.0), (1.0, 1.0), (2.0, 0.5)];
const FORM_NUS: [f64; 3] = [0.5, 1.0, 2.0];
const FORM_XS: [f64; 4] = [0.5, 1.0, 4.0, 10.0];

fn quad_opts(split: f64) -> SingularOptions {
    SingularOptions { split, rel_tol: 1e-11, ..SingularOptions::default() }
}

/// `∫₀^∞ g(t) t^{-σ} dt` for a fallible `g`.
fn singular<T: QuadValue>(mut g: impl FnMut(f64) -> Result<T>, sigma: f64, split: f64) -> Result<T> {
    let mut failure = None;
    let r = integrate_singular_with(
        |t| match g(t) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                T::zero()
            }
        },
        sigma,
        &quad_opts(split),
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(r?.value),
    }
}

/// `∫₀^∞ φ(t) t^{ρ−1} dt`. The factor `t^a`, `a = (ρ+ρ₀)/2`, moves into
/// the integrand so that it vanishes at 0 and the weight stays in (0, 1).
fn mellin_integral(zs: &ZeroSequence, rho: f64) -> Result<f64> {
    let rho0 = zs.order_rho0();
    let a = 0.5 * (rho + rho0);
    singular(|t| Ok(zs.phi(t)? * t.powf(a)), 1.0 - 0.5 * (rho - rho0), 1.0)
}

/// `∫₀^∞ e^{−xt} φ(t) dt`.
fn laplace_integral(zs: &ZeroSequence, x: f64) -> Result<f64> {
    let w = 0.5 * (1.0 + zs.order_rho0());
    singular(|t| Ok((-x * t).exp() * zs.phi(t)? * t.powf(w)), w, 1.0)
}

/// `∫₀^∞ (1 − e^{−zt}) φ(t) dt / t`.
fn log_representation(zs: &ZeroSequence, z: Complex) -> Result<Complex> {
    let w = 0.5 * (1.0 + zs.order_rho0());
    singular(|t| Ok(-expm1_complex(-z * t) * (zs.phi(t)? * t.powf(w - 1.0))), w, 1.0)
}

/// The `ρ` values the identity suite uses by default.
pub fn default_identity_rhos(model: &Model) -> Vec<f64> {
    if let Model::BesselI(_) = model {
        return vec![0.55, 0.75, 0.9];
    }
    let r0 = model.as_dyn().order_rho0();
    [0.2, 0.5, 0.8].iter().map(|s| r0 + (1.0 - r0) * s).collect()
}

fn rho_in_range(m: &dyn FunctionModel, rho: f64) -> Result<()> {
    let r0 = m.order_rho0();
    if rho > r0 && rho < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("rho = {rho} outside ({r0}, 1)")))
    }
}

fn value_at_zero(m: &dyn FunctionModel, tol: &Tolerances, mode: Option<&str>) -> Rec {
    let mut inputs = json!({ "z": 0.0 });
    if let Some(mode) = mode {
        inputs["mode"] = json!(mode);
    }
    Rec::try_eq(
        "value_ratio_at_zero",
        &m.id(),
        inputs,
        tol.get("value_at_zero"),
        m.value_ratio(Complex::new(0.0, 0.0)).map(|v| (v, 1.0)),
    )
}

/// Identity checks for `model` at each `ρ` in `rhos`.
///
/// With complete zeros: the Mellin, Laplace, integral and
/// log-representation identities. With only a finite head of zeros the
/// `φ`-based identities are meaningless, so the suite checks `J` and the
/// value/log-derivative pair for self-consistency instead; those records
/// carry `"mode": "j_only"`.
pub fn run_identity_suite(model: &Model, rhos: &[f64], tol: &Tolerances) -> Vec<Rec> {
    let m = model.as_dyn();
    let mut out = match m.zero_fidelity() {
        ZeroFidelity::Complete => complete_identities(m, rhos, tol),
        ZeroFidelity::HeadOnly => j_only_identities(m, rhos, tol),
    };
    match model {
        Model::BesselI(_) => out.extend(bessel_form_adjudication(&m.id(), tol)),
        Model::AiryPair(_) => out.extend(airy_checks(m, tol)),
        Model::KOrder(k) => out.extend(k_checks(m, k.a(), tol)),
        Model::Zeros(_) => {}
    }
    out
}

fn complete_identities(m: &dyn FunctionModel, rhos: &[f64], tol: &Tolerances) -> Vec<Rec> {
    let id = m.id();
    let zs = m.zeros();
    let t = tol.get("identity");
    let mut out = Vec::new();
    for &rho in rhos {
        let inputs = json!({ "rho": rho });
        out.push(Rec::try_eq(
            "mellin",
            &id,
            inputs.clone(),
            t,
            rho_in_range(m, rho).and_then(|_| Ok((mellin_integral(zs, rho)?, gamma(rho)? * zs.zero_sum(rho)?))),
        ));
        out.push(Rec::try_eq(
            "integral_identity",
            &id,
            inputs,
            t,
            rho_in_range(m, rho).and_then(|_| Ok((log_ratio_integral(m, rho)?.value, zero_sum_integral(m, rho)?))),
        ));
    }
    for x in LAPLACE_POINTS {
        out.push(Rec::try_eq(
            "laplace",
            &id,
            json!({ "x": x }),
            t,
            laplace_integral(zs, x).and_then(|l| Ok((l, m.log_derivative(x)?))),
        ));
    }
    for (re, im) in LOG_REP_POINTS {
        let z = Complex::new(re, im);
        out.push(Rec::try_eq(
            "log_representation",
            &id,
            json!({ "z": { "re": re, "im": im } }),
            t,
            log_representation(zs, z).and_then(|l| Ok((l.exp(), m.value_ratio(z)?))),
        ));
    }
    out.push(value_at_zero(m, tol, None));
    out
}

fn j_only_identities(m: &dyn FunctionModel, rhos: &[f64], tol: &Tolerances) -> Vec<Rec> {
    let id = m.id();
    let mut out = Vec::new();
    for &rho in rhos {
        let split4 = || singular(|x| m.log_derivative(x), rho, 4.0);
        out.push(Rec::try_eq(
            "j_split_invariance",
            &id,
            json!({ "mode": "j_only", "rho": rho, "split": [1.0, 4.0] }),
            tol.get("identity"),
            rho_in_range(m, rho).and_then(|_| Ok((log_ratio_integral(m, rho)?.value, split4()?))),
        ));
    }
    for x in LAPLACE_POINTS {
        let integrated = || -> Result<f64> {
            let mut failure = None;
            let r = integrate_interval(
                |t: f64| match m.log_derivative(t) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                },
                0.0,
                x,
                &IntervalOptions::default(),
            );
            match failure {
                Some(e) => Err(e),
                None => Ok(r?.value),
            }
        };
        let log_value = |x: f64| -> Result<f64> { Ok(m.value_ratio(Complex::new(x, 0.0))?.re.ln()) };
        out.push(Rec::try_eq(
            "log_value_integral",
            &id,
            json!({ "mode": "j_only", "x": x }),
            tol.get("identity"),
            integrated().and_then(|l| Ok((l, log_value(x)?))),
        ));
        let h = 1e-4 * x;
        out.push(Rec::try_eq(
            "log_derivative_fd",
            &id,
            json!({ "mode": "j_only", "x": x, "h": h }),
            tol.get("finite_difference"),
            (|| Ok((m.log_derivative(x)?, (log_value(x + h)? - log_value(x - h)?) / (2.0 * h))))(),
        ));
    }
    out.push(value_at_zero(m, tol, Some("j_only")));
    out
}

/// Two closed forms for the Bessel log-derivative, compared against the
/// series. Each point record names whichever form is closer; the verdict
/// passes when exactly one form matches at every point.
fn bessel_form_adjudication(id: &str, tol: &Tolerances) -> Vec<Rec> {
    const FORMS: [&str; 2] = ["minus_3nu_over_2x", "minus_nu_over_x"];
    let t = tol.get("bessel_form");
    let mut out = Vec::new();
    let mut matches = [0usize; 2];
    let mut points = 0usize;
    for nu in FORM_NUS {
        for x in FORM_XS {
            points += 1;
            let inputs = json!({ "nu": nu, "x": x });
            let computed = (|| -> Result<(f64, [f64; 2])> {
                let w = x.sqrt();
                let ratio = bessel_i(nu - 1.0, w)? / (2.0 * w * bessel_i(nu, w)?);
                Ok((bessel_i_log_derivative(nu, x)?, [ratio - 1.5 * nu / x, ratio - nu / x]))
            })();
            let (series, forms) = match computed {
                Ok(v) => v,
                Err(e) => {
                    out.push(Rec::failed("bessel_logderiv_form", id, inputs, &e, t));
                    continue;
                }
            };
            let recs = forms.map(|c| Rec::eq("bessel_logderiv_form", id, inputs.clone(), series, c, t));
            for (k, r) in recs.iter().enumerate() {
                if r.pass {
                    matches[k] += 1;
                }
            }
            let best = if recs[0].rel_error < recs[1].rel_error { 0 } else { 1 };
            let mut r = recs[best].clone();
            r.inputs["matching_form"] = json!(FORMS[best]);
            r.inputs[format!("rel_error_{}", FORMS[1 - best])] = json!(recs[1 - best].rel_error);
            out.push(r);
        }
    }
    let full: Vec<&str> = (0..2).filter(|&k| matches[k] == points).map(|k| FORMS[k]).collect();
    let verdict = match full.as_slice() {
        [one] => *one,
        [] => "none",
        _ => "both",
    };
    out.push(Rec::eq(
        "bessel_logderiv_form_verdict",
        id,
        json!({
            "matching_form": verdict,
            "points": points,
            FORMS[0]: matches[0],
            FORMS[1]: matches[1],
        }),
        full.len() as f64,
        1.0,
        0.0,
    ));
    out
}

fn airy_checks(m: &dyn FunctionModel, tol: &Tolerances) -> Vec<Rec> {
    let id = m.id();
    let mut out = Vec::new();
    for x in [1.0, 5.0, 25.0] {
        out.push(Rec::try_le(
            "airy_reality",
            &id,
            json!({ "x": x }),
            tol.get("reality"),
            m.value_ratio(Complex::new(x, 0.0)).map(|v| (v.im.abs() / v.norm(), 0.0)),
        ));
    }
    for x in LAPLACE_POINTS {
        out.push(Rec::try_eq(
            "airy_factor_two",
            &id,
            json!({ "x": x }),
            tol.get("identity"),
            airy_pair_log_derivative_series(x).and_then(|s| Ok((s, m.log_derivative(x)?))),
        ));
    }
    out
}

fn k_checks(m: &dyn FunctionModel, a: f64, tol: &Tolerances) -> Vec<Rec> {
    let id = m.id();
    let mut out = Vec::new();
    for x in [0.5, 1.0, 4.0] {
        out.push(Rec::try_le(
            "k_symmetry",
            &id,
            json!({ "mode": "j_only", "x": x }),
            tol.get("reality"),
            k_order_eval(a, Complex::new(x, 0.0)).map(|v| (v.im.abs() / v.norm(), 0.0)),
        ));
    }
    let head: f64 = m.zeros().head().iter().rev().map(|z| 1.0 / z).sum();
    out.push(Rec::try_le(
        "k_head_sum",
        &id,
        json!({ "mode": "j_only", "zeros": m.zeros().len() }),
        tol.get("head_sum"),
        m.log_derivative(0.0).map(|full| (head, full)),
    ));
    out
}
