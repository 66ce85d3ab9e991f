//! Adapters for the three worked examples: the scaled modified Bessel
//! function, the Airy pair, and `K` as a function of its order.

pub mod airy;
pub mod bessel;
pub mod k_order;

pub use airy::{airy_pair_eval, airy_squared_zeros, AiryPairModel};
pub use bessel::{bessel_i_log_derivative, bessel_i_scaled, bessel_j_squared_zeros, BesselIModel};
pub use k_order::{k_order_eval, k_order_log_derivative, k_order_zeros, KOrderModel};
