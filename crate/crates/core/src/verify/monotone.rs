//! Complete monotonicity of `f'/f` and `f^{−β}` and the Jensen-type
//! convexity of `|f(x+iy)|²` in `y`.

use super::{Tolerances, VerificationRecord as Rec};
use crate::error::Result;
use crate::models::Model;
use crate::numerics::Complex;
use crate::zeros::{FunctionModel, ZeroFidelity};
use serde_json::{json, Value};

const POINTS: [(f64, f64); 3] = [(1.0, 1.0), (2.0, 3.0), (0.5, 0.2)];
const SIGN_XS: [f64; 2] = [0.5, 2.0];
const BETAS: [f64; 3] = [0.5, 1.0, 2.0];
const JENSEN_XS: [f64; 2] = [0.0, 1.0];
const JENSEN_YS: [f64; 4] = [-2.0, -0.5, 0.5, 2.0];
const JENSEN_STEP: f64 = 1e-3;

fn zjson(z: Complex) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Monotonicity records for `model`. With only a head of zeros the
/// derivative bounds built from zero sums are skipped (records carry
/// `"mode": "head_only"`).
pub fn run_monotonicity_suite(model: &Model, tol: &Tolerances) -> Vec<Rec> {
    let m = model.as_dyn();
    let complete = m.zero_fidelity() == ZeroFidelity::Complete;
    let tag = |mut v: Value| {
        if !complete {
            v["mode"] = json!("head_only");
        }
        v
    };
    let id = m.id();
    let t = tol.get("monotone");
    let mut out = Vec::new();

    if complete {
        let zs = m.zeros();
        for (re, im) in POINTS {
            let z = Complex::new(re, im);
            let mut fact = 1.0;
            for n in 0..4u32 {
                if n > 0 {
                    fact *= f64::from(n);
                }
                out.push(Rec::try_le(
                    "derivative_bound",
                    &id,
                    json!({ "n": n, "z": zjson(z) }),
                    t,
                    (|| {
                        let at_z = zs.resolvent_sum(z, n + 1)?.norm() * fact;
                        let at_x = zs.resolvent_sum(Complex::new(re, 0.0), n + 1)?.re * fact;
                        Ok((at_z, at_x))
                    })(),
                ));
            }
        }
    }

    for x in SIGN_XS {
        let h = x / 16.0;
        let diffs = (|| -> Result<[f64; 3]> {
            let (lm, l0, lp) = (m.log_derivative(x - h)?, m.log_derivative(x)?, m.log_derivative(x + h)?);
            Ok([l0, (lp - lm) / (2.0 * h), (lp - 2.0 * l0 + lm) / (h * h)])
        })();
        for n in 0..3usize {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            out.push(Rec::try_le(
                "sign_alternation",
                &id,
                tag(json!({ "n": n, "x": x, "h": h })),
                t,
                diffs.clone().map(|d| (0.0, sign * d[n])),
            ));
        }
    }

    for (re, im) in POINTS {
        let z = Complex::new(re, im);
        for beta in BETAS {
            out.push(Rec::try_le(
                "power_monotone",
                &id,
                tag(json!({ "n": 0, "beta": beta, "z": zjson(z) })),
                t,
                (|| Ok((m.value_ratio(z)?.norm().powf(-beta), real_value(m, re)?.powf(-beta))))(),
            ));
            if complete {
                out.push(Rec::try_le(
                    "power_monotone",
                    &id,
                    json!({ "n": 1, "beta": beta, "z": zjson(z) }),
                    t,
                    (|| {
                        let at_z = beta * m.value_ratio(z)?.norm().powf(-beta) * m.zeros().resolvent_sum(z, 1)?.norm();
                        let at_x = beta * real_value(m, re)?.powf(-beta) * m.log_derivative(re)?;
                        Ok((at_z, at_x))
                    })(),
                ));
            }
        }
    }

    out.extend(jensen(m, tol, &tag));
    out
}

fn real_value(m: &dyn FunctionModel, x: f64) -> Result<f64> {
    Ok(m.value_ratio(Complex::new(x, 0.0))?.re)
}

/// Central differences in `y` of `F(y) = |f(x+iy)/f(0)|²`: `F'' ≥ 0` and
/// `y·F' ≥ 0`, each relative to `F(y)`.
fn jensen(m: &dyn FunctionModel, tol: &Tolerances, tag: &dyn Fn(Value) -> Value) -> Vec<Rec> {
    let id = m.id();
    let h = JENSEN_STEP;
    let mut out = Vec::new();
    for x in JENSEN_XS {
        for y in JENSEN_YS {
            let inputs = tag(json!({ "x": x, "y": y, "h": h }));
            let sq = |y: f64| -> Result<f64> { Ok(m.value_ratio(Complex::new(x, y))?.norm_sqr()) };
            let vals: Result<(f64, f64, f64)> = (|| Ok((sq(y - h)?, sq(y)?, sq(y + h)?)))();
            let (convex, grad) = match vals {
                Ok((fm, f0, fp)) => {
                    (Ok((-(fp - 2.0 * f0 + fm) / (h * h) / f0, 0.0)), Ok((-y * (fp - fm) / (2.0 * h) / f0, 0.0)))
                }
                Err(e) => (Err(e.clone()), Err(e)),
            };
            out.push(Rec::try_le("jensen_convexity", &id, inputs.clone(), tol.get("jensen_convexity"), convex));
            out.push(Rec::try_le("jensen_gradient", &id, inputs, tol.get("jensen_gradient"), grad));
        }
    }
    out
}
