use crate::error::Error;
use crate::numerics::{format_complex, Complex};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs = rhs`.
    Eq,
    /// `lhs ≤ rhs`; the error is the violation `max(0, lhs − rhs)`.
    Le,
}

/// A real or complex side of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Side {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl From<f64> for Side {
    fn from(v: f64) -> Self {
        Side::Real(v)
    }
}

impl From<Complex> for Side {
    fn from(z: Complex) -> Self {
        Side::Complex { re: z.re, im: z.im }
    }
}

impl Side {
    fn complex(&self) -> Complex {
        match *self {
            Side::Real(v) => Complex::new(v, 0.0),
            Side::Complex { re, im } => Complex::new(re, im),
        }
    }

    pub fn to_text(&self) -> String {
        match *self {
            Side::Real(v) => format!("{v:?}"),
            Side::Complex { re, im } => format_complex(Complex::new(re, im)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check_name: String,
    pub model_id: String,
    pub inputs: Value,
    pub relation: Relation,
    pub lhs: Side,
    pub rhs: Side,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn finite_or_max(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::MAX
    }
}

impl VerificationRecord {
    fn build(
        check_name: &str,
        model_id: &str,
        inputs: Value,
        relation: Relation,
        lhs: Side,
        rhs: Side,
        tolerance: f64,
    ) -> Self {
        let (l, r) = (lhs.complex(), rhs.complex());
        let abs = match relation {
            Relation::Eq => (l - r).norm(),
            Relation::Le => (l.re - r.re).max(0.0),
        };
        let abs = if abs.is_nan() { f64::MAX } else { finite_or_max(abs) };
        let scale = r.norm();
        let rel = if abs == 0.0 {
            0.0
        } else if scale > 0.0 {
            finite_or_max(abs / scale)
        } else {
            f64::MAX
        };
        let pass = abs <= tolerance || rel <= tolerance;
        Self {
            check_name: check_name.to_string(),
            model_id: model_id.to_string(),
            inputs,
            relation,
            lhs,
            rhs,
            abs_error: abs,
            rel_error: rel,
            tolerance,
            pass,
        }
    }

    pub fn eq(check: &str, model: &str, inputs: Value, lhs: impl Into<Side>, rhs: impl Into<Side>, tol: f64) -> Self {
        Self::build(check, model, inputs, Relation::Eq, lhs.into(), rhs.into(), tol)
    }

    pub fn le(check: &str, model: &str, inputs: Value, lhs: impl Into<Side>, rhs: impl Into<Side>, tol: f64) -> Self {
        Self::build(check, model, inputs, Relation::Le, lhs.into(), rhs.into(), tol)
    }

    /// A check whose computation itself failed.
    pub fn failed(check: &str, model: &str, mut inputs: Value, err: &Error, tol: f64) -> Self {
        if let Value::Object(map) = &mut inputs {
            map.insert("error".into(), Value::String(err.to_string()));
        }
        Self {
            check_name: check.to_string(),
            model_id: model.to_string(),
            inputs,
            relation: Relation::Eq,
            lhs: Side::Real(0.0),
            rhs: Side::Real(0.0),
            abs_error: f64::MAX,
            rel_error: f64::MAX,
            tolerance: tol,
            pass: false,
        }
    }

    /// From a fallible computation of `(lhs, rhs)`.
    pub fn try_eq<L: Into<Side>, R: Into<Side>>(
        check: &str,
        model: &str,
        inputs: Value,
        tol: f64,
        sides: crate::Result<(L, R)>,
    ) -> Self {
        match sides {
            Ok((l, r)) => Self::eq(check, model, inputs, l, r, tol),
            Err(e) => Self::failed(check, model, inputs, &e, tol),
        }
    }

    pub fn try_le<L: Into<Side>, R: Into<Side>>(
        check: &str,
        model: &str,
        inputs: Value,
        tol: f64,
        sides: crate::Result<(L, R)>,
    ) -> Self {
        match sides {
            Ok((l, r)) => Self::le(check, model, inputs, l, r, tol),
            Err(e) => Self::failed(check, model, inputs, &e, tol),
        }
    }

    /// `inputs` as compact JSON, the secondary sort key.
    pub fn inputs_text(&self) -> String {
        self.inputs.to_string()
    }
}

/// Sort by `(check_name, model_id, inputs)`.
pub fn sort_records(records: &mut [VerificationRecord]) {
    records.sort_by(|a, b| {
        (&a.check_name, &a.model_id)
            .cmp(&(&b.check_name, &b.model_id))
            .then_with(|| a.inputs_text().cmp(&b.inputs_text()))
    });
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Largest `rel_error` seen per check.
    pub worst_rel_error: BTreeMap<String, f64>,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut worst = BTreeMap::new();
        let mut passed = 0;
        for r in records {
            if r.pass {
                passed += 1;
            }
            let w = worst.entry(r.check_name.clone()).or_insert(0.0f64);
            *w = w.max(r.rel_error);
        }
        Summary { total: records.len(), passed, failed: records.len() - passed, worst_rel_error: worst }
    }
}

pub const CSV_COLUMNS: [&str; 10] =
    ["check_name", "model_id", "inputs", "relation", "lhs", "rhs", "abs_error", "rel_error", "tolerance", "pass"];

/// One CSV row in [`CSV_COLUMNS`] order; complex sides as `RE+IMi`.
pub fn csv_row(r: &VerificationRecord) -> [String; 10] {
    [
        r.check_name.clone(),
        r.model_id.clone(),
        r.inputs_text(),
        match r.relation {
            Relation::Eq => "eq".into(),
            Relation::Le => "le".into(),
        },
        r.lhs.to_text(),
        r.rhs.to_text(),
        format!("{:?}", r.abs_error),
        format!("{:?}", r.rel_error),
        format!("{:?}", r.tolerance),
        r.pass.to_string(),
    ]
}
