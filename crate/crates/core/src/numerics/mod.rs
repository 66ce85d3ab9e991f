//! Scalar numerics shared by every other module.

mod complex;
mod gamma;
mod minimize;
mod quadrature;
mod roots;

pub use complex::{complex_serde, expm1_complex, format_complex, ln_1p_complex, parse_complex, Complex};
pub use gamma::{gamma, gamma_unchecked, upper_incomplete_gamma};
pub use minimize::{minimize_scalar, Minimum, SCAN_NODES};
pub use quadrature::{
    integrate_head, integrate_interval, integrate_singular, integrate_singular_with, IntervalOptions, QuadValue,
    QuadratureResult, SingularOptions,
};
pub use roots::{bracketed_root, find_root_bracketed, try_find_root_bracketed, RootBracket, MAX_ROOT_ITERATIONS};
