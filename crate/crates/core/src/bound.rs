//! The bound `1 ≤ |f(Re z)/f(0)| ≤ |f(z)/f(0)| ≤ exp(E)` with
//! `E = (ρ/e)^ρ |z|^ρ J(ρ) / (cos^{1−ρ}(arg z) Γ(1+ρ))` and
//! `J(ρ) = ∫₀^∞ (f'/f)(x) x^{−ρ} dx`.

use crate::error::{Error, Result};
use crate::numerics::{
    complex_serde, gamma_unchecked, integrate_singular_with, minimize_scalar, Complex, QuadratureResult,
    SingularOptions,
};
use crate::zeros::{FunctionModel, ZeroFidelity};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::{E, FRAC_PI_2, PI};
use std::sync::Mutex;

/// Distance kept from both ends of `(ρ₀, 1)`.
pub const RHO_GUARD: f64 = 1e-3;
const LOWER_SLACK: f64 = 1e-12;
const UPPER_SLACK: f64 = 1e-9;
const OPTIMIZE_TOL: f64 = 1e-4;

/// How `J(ρ)` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JPath {
    Quadrature,
    /// `(π/sin πρ)·Σ z_n^{−ρ}`, used when the quadrature tail does not
    /// settle in floating range.
    ZeroSum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JValue {
    pub value: f64,
    pub error_estimate: f64,
    pub path: JPath,
    /// The zero-sum side of the identity, when the zeros are complete.
    pub zero_sum: Option<f64>,
}

/// `f64` that serializes `±∞` as `null` (read back as `+∞`).
mod extended {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "complex_serde")]
    pub z: Complex,
    pub rho: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub exponent_thm: f64,
    pub exponent_intermediate: f64,
    #[serde(with = "extended")]
    pub bound: f64,
    pub lower: f64,
    pub mid: f64,
    pub chain_ok: bool,
    pub slack: f64,
    pub j_path: JPath,
    pub j_error: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_zero_sum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// `1 − 1e-12 ≤ lower ≤ mid(1 + 1e-12)` and `mid ≤ exp(E)(1 + 1e-9)`,
/// the last compared in logarithms.
pub fn chain_holds(lower: f64, mid: f64, exponent: f64) -> bool {
    lower >= 1.0 - LOWER_SLACK && lower <= mid * (1.0 + LOWER_SLACK) && mid.ln() <= exponent + UPPER_SLACK.ln_1p()
}

fn check_angle(z: Complex) -> Result<f64> {
    let theta = z.arg();
    if !(z.re > 0.0) || !(theta.abs() < FRAC_PI_2) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::domain(format!("need |arg z| < pi/2, got z = {z}")));
    }
    Ok(theta)
}

fn check_rho(model: &dyn FunctionModel, rho: f64) -> Result<()> {
    let rho0 = model.order_rho0();
    if !(rho > rho0 && rho < 1.0) {
        return Err(Error::domain(format!("rho = {rho} outside ({rho0}, 1)")));
    }
    Ok(())
}

/// The default `ρ = (ρ₀ + 1)/2`.
pub fn midpoint_rho(model: &dyn FunctionModel) -> f64 {
    0.5 * (model.order_rho0() + 1.0)
}

/// `J(ρ)` by quadrature of the model's log-derivative.
pub fn log_ratio_integral(model: &dyn FunctionModel, rho: f64) -> Result<QuadratureResult> {
    check_rho(model, rho)?;
    let mut failure = None;
    let res = integrate_singular_with(
        |x| match model.log_derivative(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        rho,
        &SingularOptions::default(),
    );
    match failure {
        Some(e) => Err(e),
        None => res,
    }
}

/// `(π/sin πρ)·S(ρ)`.
pub fn zero_sum_integral(model: &dyn FunctionModel, rho: f64) -> Result<f64> {
    Ok(PI / (PI * rho).sin() * model.zeros().zero_sum(rho)?)
}

/// `E = (ρ/e)^ρ |z|^ρ J / (cos^{1−ρ}(arg z) Γ(1+ρ))`.
pub fn bound_exponent(model: &dyn FunctionModel, z: Complex, rho: f64, j: f64) -> Result<f64> {
    let theta = check_angle(z)?;
    check_rho(model, rho)?;
    if !(j >= 0.0) {
        return Err(Error::domain(format!("J = {j} must be nonnegative")));
    }
    Ok((rho / E).powf(rho) * z.norm().powf(rho) * j / (theta.cos().powf(1.0 - rho) * gamma_unchecked(1.0 + rho)))
}

fn intermediate_from_sup(z: Complex, rho: f64, sup: f64) -> f64 {
    let theta = z.arg();
    z.re.powf(rho) * sup * gamma_unchecked(1.0 - rho) / (rho * theta.cos())
}

/// `(Re z)^ρ · sup_t t^ρ φ(t) · Γ(1−ρ) / (ρ cos(arg z))`.
pub fn intermediate_exponent(model: &dyn FunctionModel, z: Complex, rho: f64) -> Result<f64> {
    check_angle(z)?;
    check_rho(model, rho)?;
    let sup = model.zeros().sup_weighted_phi(rho)?.value;
    Ok(intermediate_from_sup(z, rho, sup))
}

/// A model with memoized `J(ρ)` and `sup t^ρ φ(t)`. Safe to share across
/// threads; a value computed twice concurrently is simply stored twice.
pub struct BoundEngine<'a> {
    model: &'a dyn FunctionModel,
    j_memo: Mutex<HashMap<u64, Result<JValue>>>,
    sup_memo: Mutex<HashMap<u64, Result<f64>>>,
    argmin_memo: Mutex<HashMap<u64, f64>>,
}

impl<'a> BoundEngine<'a> {
    pub fn new(model: &'a dyn FunctionModel) -> Self {
        Self {
            model,
            j_memo: Mutex::new(HashMap::new()),
            sup_memo: Mutex::new(HashMap::new()),
            argmin_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &'a dyn FunctionModel {
        self.model
    }

    /// Search interval for `ρ`.
    pub fn rho_range(&self) -> (f64, f64) {
        (self.model.order_rho0() + RHO_GUARD, 1.0 - RHO_GUARD)
    }

    /// `J(ρ)`: quadrature first; if its tail cannot be resolved and the
    /// zeros are complete, the zero-sum identity instead.
    pub fn j(&self, rho: f64) -> Result<JValue> {
        check_rho(self.model, rho)?;
        if let Some(v) = self.j_memo.lock().expect("memo lock").get(&rho.to_bits()) {
            return v.clone();
        }
        let v = self.compute_j(rho);
        self.j_memo.lock().expect("memo lock").insert(rho.to_bits(), v.clone());
        v
    }

    fn compute_j(&self, rho: f64) -> Result<JValue> {
        let complete = self.model.zero_fidelity() == ZeroFidelity::Complete;
        let zero_sum = if complete { zero_sum_integral(self.model, rho).ok() } else { None };
        match log_ratio_integral(self.model, rho) {
            Ok(q) => Ok(JValue { value: q.value, error_estimate: q.error_estimate, path: JPath::Quadrature, zero_sum }),
            Err(e @ (Error::Divergence(_) | Error::NonConvergence(_))) => match zero_sum {
                Some(s) => {
                    let err = self
                        .model
                        .zeros()
                        .zero_sum_estimate(rho)
                        .map_or(f64::NAN, |t| t.error_estimate * PI / (PI * rho).sin());
                    Ok(JValue { value: s, error_estimate: err, path: JPath::ZeroSum, zero_sum })
                }
                None => Err(e),
            },
            Err(e) => Err(e),
        }
    }

    pub fn sup_weighted_phi(&self, rho: f64) -> Result<f64> {
        if let Some(v) = self.sup_memo.lock().expect("memo lock").get(&rho.to_bits()) {
            return v.clone();
        }
        let v = self.model.zeros().sup_weighted_phi(rho).map(|s| s.value);
        self.sup_memo.lock().expect("memo lock").insert(rho.to_bits(), v.clone());
        v
    }

    pub fn bound_exponent(&self, z: Complex, rho: f64) -> Result<f64> {
        let j = self.j(rho)?;
        bound_exponent(self.model, z, rho, j.value)
    }

    /// `(ρ*, E(ρ*))` minimizing the exponent over the guarded interval.
    ///
    /// `|z|^ρ/cos^{1−ρ}(arg z) = (Re z)^ρ/cos(arg z)`, so `ρ*` depends on
    /// `Re z` only; the search runs on the real point and is memoized.
    pub fn optimize_rho(&self, z: Complex) -> Result<(f64, f64)> {
        check_angle(z)?;
        let key = z.re.to_bits();
        let cached = self.argmin_memo.lock().expect("memo lock").get(&key).copied();
        let rho = match cached {
            Some(r) => r,
            None => {
                let r = self.search_rho(z.re)?;
                self.argmin_memo.lock().expect("memo lock").insert(key, r);
                r
            }
        };
        Ok((rho, self.bound_exponent(z, rho)?))
    }

    fn search_rho(&self, x: f64) -> Result<f64> {
        let z = Complex::new(x, 0.0);
        let (lo, hi) = self.rho_range();
        let mut fatal = None;
        let m = minimize_scalar(
            |rho| match self.bound_exponent(z, rho) {
                Ok(v) => v,
                Err(e) => {
                    if e.is_domain() {
                        fatal.get_or_insert(e);
                    }
                    f64::INFINITY
                }
            },
            lo,
            hi,
            OPTIMIZE_TOL,
        );
        if let Some(e) = fatal {
            return Err(e);
        }
        let m = m?;
        if !m.min.is_finite() {
            return Err(Error::NonConvergence(format!("bound exponent not finite for any rho at Re z = {x}")));
        }
        Ok(m.argmin)
    }

    /// The full chain at `(z, ρ)`.
    pub fn evaluate_chain(&self, z: Complex, rho: f64) -> Result<BoundReport> {
        let theta = check_angle(z)?;
        check_rho(self.model, rho)?;
        let mut warnings = Vec::new();
        let j = self.j(rho)?;
        if j.path == JPath::ZeroSum {
            warnings.push("J from the zero-sum identity: quadrature tail unresolved".to_string());
        }
        let exponent_thm = bound_exponent(self.model, z, rho, j.value)?;
        let exponent_intermediate = intermediate_from_sup(z, rho, self.sup_weighted_phi(rho)?);
        if self.model.zero_fidelity() == ZeroFidelity::HeadOnly {
            warnings.push("intermediate exponent from a finite zero head (lower estimate)".to_string());
        }
        if self.model.value_from_product() && z.norm() > self.model.zeros().validated_radius() {
            warnings.push(format!(
                "|z| = {} beyond z_(N/2) = {}: product tail unvalidated",
                z.norm(),
                self.model.zeros().validated_radius()
            ));
        }
        let lower = self.model.value_ratio(Complex::new(z.re, 0.0))?.norm();
        let mid = if theta == 0.0 { lower } else { self.model.value_ratio(z)?.norm() };
        let chain_ok = chain_holds(lower, mid, exponent_thm);
        Ok(BoundReport {
            z,
            rho,
            j: j.value,
            exponent_thm,
            exponent_intermediate,
            bound: exponent_thm.exp(),
            lower,
            mid,
            chain_ok,
            slack: exponent_thm - mid.ln(),
            j_path: j.path,
            j_error: j.error_estimate,
            j_zero_sum: j.zero_sum,
            rho_star: None,
            warnings,
        })
    }

    /// The chain at the optimal `ρ`, with `rho_star` filled in.
    pub fn evaluate_optimized(&self, z: Complex) -> Result<BoundReport> {
        let (rho, _) = self.optimize_rho(z)?;
        let mut report = self.evaluate_chain(z, rho)?;
        report.rho_star = Some(rho);
        Ok(report)
    }
}

pub fn optimize_rho(model: &dyn FunctionModel, z: Complex) -> Result<(f64, f64)> {
    BoundEngine::new(model).optimize_rho(z)
}

pub fn evaluate_chain(model: &dyn FunctionModel, z: Complex, rho: f64) -> Result<BoundReport> {
    BoundEngine::new(model).evaluate_chain(z, rho)
}
