//! Half-plane growth bounds for genus-zero entire functions whose zeros all
//! lie on the negative real axis.
//!
//! For such an `f` of order `ρ₀ < 1`, and any `ρ ∈ (ρ₀, 1)`, `|arg z| < π/2`,
//!
//! ```text
//! 1 ≤ |f(Re z)/f(0)| ≤ |f(z)/f(0)|
//!   ≤ exp( (ρ/e)^ρ |z|^ρ / (cos^{1-ρ}(arg z) Γ(1+ρ)) · ∫₀^∞ f'(x)/f(x) x^{-ρ} dx )
//! ```
//!
//! The crate evaluates every quantity in that chain, certifies it for concrete
//! models, and checks the identities it rests on:
//!
//! - [`numerics`]: gamma function, singular/improper quadrature, bracketed
//!   roots and bounded scalar minimization.
//! - [`zeros`]: zero sequences with a power-law tail, the canonical product,
//!   zero sums `S(ρ)`, the auxiliary function `φ(t) = Σ e^{-z_n t}` and the
//!   [`FunctionModel`](zeros::FunctionModel) contract.
//! - [`bound`]: the singular integral `J(ρ)`, the bound exponent, the sharper
//!   intermediate exponent, `ρ` optimization and chain certificates.
//! - [`special`]: scaled modified Bessel `I_ν`, the Airy pair
//!   `Ai(i√z)Ai(-i√z)` and `K_{√z}(a)` as models.
//! - [`verify`]: the identity / inequality / monotonicity harness.

pub mod bound;
pub mod error;
pub mod models;
pub mod numerics;
pub mod special;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use numerics::Complex;
