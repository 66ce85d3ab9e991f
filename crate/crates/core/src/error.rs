use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("root not bracketed: h({lo}) = {f_lo}, h({hi}) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("overflow: {0}")]
    Overflow(String),
    /// A factor `1 + z/z_n` of the canonical product vanished.
    #[error("product factor vanishes: {0}")]
    PoleZero(String),
    #[error("found {found} zeros, {requested} requested")]
    InsufficientZeros { found: usize, requested: usize },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Domain violations are caller mistakes; everything else is a numeric failure.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}
