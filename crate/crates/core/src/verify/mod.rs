//! The verification harness: identities, inequalities and monotonicity
//! properties checked numerically against concrete models.
//!
//! Failures are records, never errors. Per model, the record counts are:
//!
//! - identity suite, complete zeros: `2·|ρ list| + 3 + 3 + 1` (Mellin and
//!   integral identity per `ρ`; Laplace; log-representation; `f(0)` ratio),
//!   plus 13 for Bessel (12 closed-form points and the verdict) and 6 for
//!   the Airy pair (reality at 3 points, factor two at 3).
//! - identity suite, head-only zeros: `|ρ list| + 3 + 3 + 1`, plus 4 for
//!   `k-order` (symmetry at 3 points, head sum).
//! - inequality suite: 4 per evaluated `(z, ρ)` point (lower, middle,
//!   upper, tightness), plus 1 for the Airy `f(0)` chain, one per `z` for
//!   optimized versus midpoint when both are on the grid, one per adjacent
//!   angle pair at fixed radius and `ρ`, and a single fuzz summary.
//! - monotonicity suite: 12 derivative bounds, 6 sign checks, 18 power
//!   checks and 16 Jensen checks on complete zeros; 6 sign, 9 power and 16
//!   Jensen on head-only zeros.

mod identity;
mod inequality;
mod monotone;
mod record;

pub use identity::{default_identity_rhos, run_identity_suite};
pub use inequality::{elementary_fuzz, run_inequality_suite, run_inequality_suite_with, DEFAULT_FUZZ_POINTS};
pub use monotone::run_monotonicity_suite;
pub use record::{csv_row, sort_records, Relation, Side, Summary, VerificationRecord, CSV_COLUMNS};

use crate::error::{Error, Result};
use crate::models::{Model, ModelSpec};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Named tolerances with their defaults; every entry can be overridden.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    entries: BTreeMap<&'static str, f64>,
}

const DEFAULT_TOLERANCES: [(&str, f64); 15] = [
    ("identity", 1e-6),
    ("bessel_form", 1e-9),
    ("reality", 1e-12),
    ("head_sum", 1e-12),
    ("value_at_zero", 1e-12),
    ("finite_difference", 1e-6),
    ("chain_lower", 1e-12),
    ("chain_upper", 1e-9),
    ("tightness", 1e-12),
    ("optimized", 1e-9),
    ("angular", 1e-9),
    ("fuzz", 1e-12),
    ("monotone", 1e-9),
    ("jensen_convexity", 1e-6),
    ("jensen_gradient", 1e-9),
];

impl Default for Tolerances {
    fn default() -> Self {
        Self { entries: DEFAULT_TOLERANCES.into_iter().collect() }
    }
}

impl Tolerances {
    pub fn names() -> impl Iterator<Item = &'static str> {
        DEFAULT_TOLERANCES.iter().map(|(n, _)| *n)
    }

    pub fn get(&self, name: &str) -> f64 {
        *self.entries.get(name).unwrap_or_else(|| panic!("unknown tolerance '{name}'"))
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::domain(format!("tolerance {name} = {value} must be finite and >= 0")));
        }
        match self.entries.get_mut(name) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::domain(format!(
                "unknown tolerance '{name}' (known: {})",
                Self::names().collect::<Vec<_>>().join(", ")
            ))),
        }
    }
}

/// A `ρ` column of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoChoice {
    /// `(ρ₀ + 1)/2` of each model.
    Midpoint,
    /// The minimizer of the bound exponent at each `z`.
    Optimized,
    Value(f64),
}

/// Polar grid `z = r·e^{iθ}` and the `ρ` columns to evaluate on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    pub rhos: Vec<RhoChoice>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radii: vec![0.25, 1.0, 4.0, 16.0],
            angles: vec![0.0, PI / 6.0, -PI / 6.0, PI / 3.0, -PI / 3.0, 0.45 * PI, -0.45 * PI],
            rhos: vec![RhoChoice::Midpoint, RhoChoice::Optimized],
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(Error::domain(format!("grid radius {r} must be positive")));
        }
        if let Some(t) = self.angles.iter().find(|t| !(t.abs() < PI / 2.0)) {
            return Err(Error::domain(format!("grid angle {t} must satisfy |theta| < pi/2")));
        }
        for r in &self.rhos {
            if let RhoChoice::Value(v) = r {
                if !(*v > 0.0 && *v < 1.0) {
                    return Err(Error::domain(format!("grid rho {v} must lie in (0, 1)")));
                }
            }
        }
        Ok(())
    }
}

/// Settings shared by all suites.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub tolerances: Tolerances,
    /// Seed of the elementary-inequality fuzz.
    pub seed: u64,
    pub fuzz_points: usize,
    /// Run models on separate threads.
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tolerances: Tolerances::default(), seed: 7, fuzz_points: DEFAULT_FUZZ_POINTS, parallel: true }
    }
}

/// All three suites for one model, sorted.
pub fn run_model(model: &Model, grid: &GridSpec, opts: &VerifyOptions) -> Vec<VerificationRecord> {
    let rhos = default_identity_rhos(model);
    let mut out = run_identity_suite(model, &rhos, &opts.tolerances);
    out.extend(run_inequality_suite_with(model, grid, opts));
    out.extend(run_monotonicity_suite(model, &opts.tolerances));
    sort_records(&mut out);
    out
}

fn run_spec(spec: &ModelSpec, grid: &GridSpec, opts: &VerifyOptions) -> Vec<VerificationRecord> {
    match spec.build() {
        Ok(model) => run_model(&model, grid, opts),
        Err(e) => vec![VerificationRecord::failed("model_build", &format!("{spec:?}"), json!({}), &e, 0.0)],
    }
}

/// Every suite over every model; the records come back sorted by
/// `(check_name, model_id, inputs)` whatever the thread schedule.
pub fn run_all(specs: &[ModelSpec], grid: &GridSpec, opts: &VerifyOptions) -> (Vec<VerificationRecord>, Summary) {
    let mut out: Vec<VerificationRecord> = if let Err(e) = grid.validate() {
        vec![VerificationRecord::failed("grid", "all", json!({}), &e, 0.0)]
    } else if opts.parallel && specs.len() > 1 {
        std::thread::scope(|s| {
            let handles: Vec<_> = specs.iter().map(|spec| s.spawn(move || run_spec(spec, grid, opts))).collect();
            handles.into_iter().flat_map(|h| h.join().expect("verification thread panicked")).collect()
        })
    } else {
        specs.iter().flat_map(|spec| run_spec(spec, grid, opts)).collect()
    };
    sort_records(&mut out);
    let summary = Summary::of(&out);
    (out, summary)
}
