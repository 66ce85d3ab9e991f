use super::ZeroSequence;
use crate::error::{Error, Result};
use crate::numerics::Complex;

/// How much of a model's zero set is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroFidelity {
    /// Head plus a tail model: sums over the zeros are the full sums.
    Complete,
    /// Only the first few zeros: sums are partial, lower bounds at best.
    HeadOnly,
}

/// A genus-zero entire function with only negative zeros, seen through
/// the quantities the bound needs.
pub trait FunctionModel: Send + Sync {
    fn id(&self) -> String;

    /// `f(z)/f(0)`.
    fn value_ratio(&self, z: Complex) -> Result<Complex>;

    /// `f'(x)/f(x)` for `x > 0` (and the limit at `x = 0`).
    fn log_derivative(&self, x: f64) -> Result<f64>;

    fn zeros(&self) -> &ZeroSequence;

    fn zero_fidelity(&self) -> ZeroFidelity {
        ZeroFidelity::Complete
    }

    fn order_rho0(&self) -> f64 {
        self.zeros().order_rho0()
    }

    fn f0(&self) -> f64;

    /// Largest `|z|` at which `value_ratio` is trusted, if limited.
    fn max_modulus(&self) -> Option<f64> {
        None
    }

    /// Whether `value_ratio` is the zero product (and so leans on the tail
    /// model for large `|z|`).
    fn value_from_product(&self) -> bool {
        false
    }
}

/// The product model `f(z) = f0·Π(1 + z/z_n)`.
#[derive(Debug, Clone)]
pub struct ZeroModel {
    id: String,
    zeros: ZeroSequence,
    f0: f64,
}

impl ZeroModel {
    pub fn new(id: impl Into<String>, zeros: ZeroSequence, f0: f64) -> Result<Self> {
        if !(f0 > 0.0 && f0.is_finite()) {
            return Err(Error::domain(format!("f0 must be positive, got {f0}")));
        }
        Ok(Self { id: id.into(), zeros, f0 })
    }
}

pub fn model_from_zeros(zs: ZeroSequence, f0: f64) -> Result<ZeroModel> {
    ZeroModel::new("zeros", zs, f0)
}

impl FunctionModel for ZeroModel {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn value_ratio(&self, z: Complex) -> Result<Complex> {
        self.zeros.product_eval(z)
    }

    fn log_derivative(&self, x: f64) -> Result<f64> {
        self.zeros.log_derivative(x)
    }

    fn zeros(&self) -> &ZeroSequence {
        &self.zeros
    }

    fn f0(&self) -> f64 {
        self.f0
    }

    fn value_from_product(&self) -> bool {
        true
    }
}
