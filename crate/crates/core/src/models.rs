//! Model selection by name and the default test fleet.

use crate::error::{Error, Result};
use crate::special::{airy, bessel, k_order, AiryPairModel, BesselIModel, KOrderModel};
use crate::zeros::{FunctionModel, ZeroModel, ZeroSequence};

/// Default head for `toy-square`.
pub const TOY_HEAD_COUNT: usize = 10_000;

/// A model description, cheap to clone, turned into a [`Model`] by `build`.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    ToySquare { head_count: usize },
    BesselI { nu: f64, head_count: usize },
    AiryPair { head_count: usize, z_max: f64 },
    KOrder { a: f64, head_count: usize },
    Custom { id: String, zeros: ZeroSequence, f0: f64 },
}

/// Names accepted by [`ModelSpec::from_selector`].
pub const SELECTORS: [&str; 4] = ["toy-square", "bessel-i", "airy-pair", "k-order"];

/// Optional parameters for [`ModelSpec::from_selector`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ModelParams {
    pub nu: Option<f64>,
    pub a: Option<f64>,
    pub head_count: Option<usize>,
    pub z_max: Option<f64>,
}

impl ModelSpec {
    pub fn from_selector(name: &str, p: ModelParams) -> Result<Self> {
        let unused = |what: &str, set: bool| -> Result<()> {
            if set {
                Err(Error::domain(format!("{what} does not apply to model {name}")))
            } else {
                Ok(())
            }
        };
        match name {
            "toy-square" => {
                unused("nu", p.nu.is_some())?;
                unused("a", p.a.is_some())?;
                unused("z_max", p.z_max.is_some())?;
                Ok(Self::ToySquare { head_count: p.head_count.unwrap_or(TOY_HEAD_COUNT) })
            }
            "bessel-i" => {
                unused("a", p.a.is_some())?;
                unused("z_max", p.z_max.is_some())?;
                Ok(Self::BesselI {
                    nu: p.nu.unwrap_or(0.0),
                    head_count: p.head_count.unwrap_or(bessel::DEFAULT_HEAD_COUNT),
                })
            }
            "airy-pair" => {
                unused("nu", p.nu.is_some())?;
                unused("a", p.a.is_some())?;
                Ok(Self::AiryPair {
                    head_count: p.head_count.unwrap_or(airy::DEFAULT_HEAD_COUNT),
                    z_max: p.z_max.unwrap_or(airy::DEFAULT_Z_MAX),
                })
            }
            "k-order" => {
                unused("nu", p.nu.is_some())?;
                unused("z_max", p.z_max.is_some())?;
                Ok(Self::KOrder {
                    a: p.a.unwrap_or(1.0),
                    head_count: p.head_count.unwrap_or(k_order::DEFAULT_HEAD_COUNT),
                })
            }
            other => Err(Error::domain(format!("unknown model '{other}' (expected one of {})", SELECTORS.join(", ")))),
        }
    }

    pub fn build(&self) -> Result<Model> {
        Ok(match self {
            Self::ToySquare { head_count } => {
                if *head_count == 0 {
                    return Err(Error::domain("head_count must be positive"));
                }
                Model::Zeros(ZeroModel::new("toy-square", ZeroSequence::toy_square(*head_count), 1.0)?)
            }
            Self::BesselI { nu, head_count } => Model::BesselI(BesselIModel::new(*nu, *head_count)?),
            Self::AiryPair { head_count, z_max } => Model::AiryPair(AiryPairModel::new(*head_count, *z_max)?),
            Self::KOrder { a, head_count } => Model::KOrder(KOrderModel::new(*a, *head_count)?),
            Self::Custom { id, zeros, f0 } => Model::Zeros(ZeroModel::new(id.clone(), zeros.clone(), *f0)?),
        })
    }
}

/// A built model, keeping its concrete kind for model-specific checks.
#[derive(Debug, Clone)]
pub enum Model {
    Zeros(ZeroModel),
    BesselI(BesselIModel),
    AiryPair(AiryPairModel),
    KOrder(KOrderModel),
}

impl Model {
    pub fn as_dyn(&self) -> &dyn FunctionModel {
        match self {
            Model::Zeros(m) => m,
            Model::BesselI(m) => m,
            Model::AiryPair(m) => m,
            Model::KOrder(m) => m,
        }
    }
}

/// toy-square, bessel-i ν ∈ {−1/2, 0, 1/2, 2}, airy-pair, k-order a ∈ {1/2, 1, 2}.
pub fn default_fleet() -> Vec<ModelSpec> {
    let mut fleet = vec![ModelSpec::ToySquare { head_count: TOY_HEAD_COUNT }];
    for nu in [-0.5, 0.0, 0.5, 2.0] {
        fleet.push(ModelSpec::BesselI { nu, head_count: bessel::DEFAULT_HEAD_COUNT });
    }
    fleet.push(ModelSpec::AiryPair { head_count: airy::DEFAULT_HEAD_COUNT, z_max: airy::DEFAULT_Z_MAX });
    for a in [0.5, 1.0, 2.0] {
        fleet.push(ModelSpec::KOrder { a, head_count: k_order::DEFAULT_HEAD_COUNT });
    }
    fleet
}
