//! `f(z) = K_{√z}(a)`: the Macdonald function as a function of its order,
//! even in `√z`, with zeros at `-τ_n²` where `K_{iτ_n}(a) = 0`.

use crate::error::{Error, Result};
use crate::numerics::{integrate_interval, try_find_root_bracketed, Complex, IntervalOptions};
use crate::zeros::{FunctionModel, ZeroFidelity, ZeroSequence};
use std::f64::consts::PI;

pub const MAX_ZERO_COUNT: usize = 32;
pub const DEFAULT_HEAD_COUNT: usize = 32;
pub const DEFAULT_GRID_STEP: f64 = 0.05;
/// Zeros are not searched beyond this order.
const TAU_MAX: f64 = 200.0;
/// Integrands are cut where they fall below `e^{-CUTOFF}` of their peak.
const CUTOFF: f64 = 50.0;

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("a must be positive, got {a}")));
    }
    Ok(())
}

/// `ψ(u) − ψ(u*)` for `ψ(u) = −a cosh u + νu`, written around the peak
/// `u* = asinh(ν/a)` so that it stays accurate for large `ν`.
#[derive(Clone, Copy)]
struct Peak {
    nu: f64,
    center: f64,
    height: f64,
    amp: f64,
}

impl Peak {
    fn new(a: f64, nu: f64) -> Self {
        let center = (nu / a).asinh();
        let amp = a.hypot(nu);
        Self { nu, center, height: -amp + nu * center, amp }
    }

    /// At offset `s` from the peak.
    fn rel(&self, s: f64) -> f64 {
        let half = (0.5 * s).sinh();
        let cosh_m1 = 2.0 * half * half;
        let sinh_ms = if s.abs() < 0.1 {
            // s³/6 + s⁵/120 + s⁷/5040 + s⁹/362880
            let s2 = s * s;
            s * s2 * (1.0 / 6.0 + s2 * (1.0 / 120.0 + s2 * (1.0 / 5040.0 + s2 / 362_880.0)))
        } else {
            s.sinh() - s
        };
        -self.amp * cosh_m1 - self.nu * sinh_ms
    }

    /// Offsets `[lo, hi]` from the peak outside of which `rel < −cut`,
    /// clipped at `u = 0`.
    fn window(&self, cut: f64) -> (f64, f64) {
        let mut right = 1.0 / self.amp.sqrt();
        while self.rel(right) > -cut {
            right *= 1.5;
        }
        let mut left = 1.0 / self.amp.sqrt();
        while left < self.center && self.rel(-left) > -cut {
            left *= 1.5;
        }
        (-left.min(self.center), right)
    }

    /// Panel edges in the offset variable: window ends plus a few splits
    /// around the peak.
    fn panels(&self, cut: f64) -> Vec<f64> {
        let (lo, hi) = self.window(cut);
        let mut edges = vec![lo];
        let width = 1.0 / self.amp.sqrt();
        for k in [-8.0, -2.0, 0.0, 2.0, 8.0] {
            let e = k * width;
            if e > lo && e < hi {
                edges.push(e);
            }
        }
        edges.push(hi);
        edges.dedup();
        edges
    }
}

fn opts() -> IntervalOptions {
    IntervalOptions { abs_tol: 0.0, rel_tol: 1e-12, max_evals: 400_000 }
}

/// `log K_ν(a)` for complex `ν` with `Re ν ≥ 0`, from
/// `∫₀^∞ e^{−a cosh u} cosh(νu) du`.
fn log_k(a: f64, nu: Complex) -> Result<Complex> {
    let nu = if nu.re < 0.0 { -nu } else { nu };
    let peak = Peak::new(a, nu.re);
    let edges = peak.panels(CUTOFF + 10.0);
    // ½ e^{ψ−ψ*} [e^{iν_i u} + e^{−2ν_r u − iν_i u}]
    let integrand = |s: f64| {
        let u = peak.center + s;
        let base = peak.rel(s).exp();
        let phase = Complex::new(0.0, nu.im * u).exp();
        let back = (-2.0 * nu.re * u).exp();
        0.5 * base * (phase + back / phase)
    };
    let mut total = Complex::new(0.0, 0.0);
    for w in edges.windows(2) {
        total += integrate_interval(integrand, w[0], w[1], &opts())?.value;
    }
    if total == Complex::new(0.0, 0.0) {
        return Err(Error::PoleZero(format!("K_nu(a) vanishes at nu = {nu}")));
    }
    Ok(total.ln() + peak.height)
}

/// `K_{√z}(a) = ∫₀^∞ e^{−a cosh u} cosh(√z u) du`.
pub fn k_order_eval(a: f64, z: Complex) -> Result<Complex> {
    check_a(a)?;
    let v = log_k(a, z.sqrt())?.exp();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow(format!("K_sqrt(z)(a) overflows at z = {z}")));
    }
    Ok(v)
}

/// `d/dx log K_{√x}(a)`, as
/// `∫ u e^{ψ}(1−e^{−2νu})/(2ν) du / ∫ e^{ψ}(1+e^{−2νu}) du` with `ν = √x`.
pub fn k_order_log_derivative(a: f64, x: f64) -> Result<f64> {
    check_a(a)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("x must be nonnegative, got {x}")));
    }
    let nu = x.sqrt();
    let peak = Peak::new(a, nu);
    let edges = peak.panels(CUTOFF + 10.0);
    let q = |u: f64| {
        if nu == 0.0 {
            u
        } else {
            -(-2.0 * nu * u).exp_m1() / (2.0 * nu)
        }
    };
    let (mut num, mut den) = (0.0, 0.0);
    for w in edges.windows(2) {
        num += integrate_interval(
            |s: f64| {
                let u = peak.center + s;
                u * peak.rel(s).exp() * q(u)
            },
            w[0],
            w[1],
            &opts(),
        )?
        .value;
        den += integrate_interval(
            |s: f64| peak.rel(s).exp() * (1.0 + (-2.0 * nu * (peak.center + s)).exp()),
            w[0],
            w[1],
            &opts(),
        )?
        .value;
    }
    Ok(num / den)
}

/// `e^{πτ/2} K_{iτ}(a)` on the contour `u = s + i(π/2 − η)`, `η = min(π/2, κ/τ)`:
/// `e^{τη} ∫₀^∞ e^{−a sin η cosh s} cos(τs − a cos η sinh s) ds`.
pub fn k_imaginary_order_scaled(a: f64, tau: f64) -> Result<f64> {
    check_a(a)?;
    const KAPPA: f64 = 4.0;
    let eta = if tau > 0.0 { (KAPPA / tau).min(PI / 2.0) } else { PI / 2.0 };
    let (se, ce) = eta.sin_cos();
    // decay e^{−a sin η cosh s} below e^{−45}
    let s_max = (45.0 / (a * se)).max(1.0).acosh() + 0.5;
    let stationary = if tau > a * ce { (tau / (a * ce)).acosh() } else { 0.0 };
    let mut edges = vec![0.0];
    let pieces = ((s_max * (tau + a) / PI).ceil() as usize).clamp(8, 4000);
    for i in 1..pieces {
        edges.push(s_max * i as f64 / pieces as f64);
    }
    edges.push(s_max);
    if stationary > 0.0 && stationary < s_max {
        edges.push(stationary);
        edges.sort_by(f64::total_cmp);
    }
    let o = IntervalOptions { abs_tol: 1e-15, rel_tol: 1e-12, max_evals: 2_000_000 };
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += integrate_interval(
            |s: f64| (-a * se * s.cosh()).exp() * (tau * s - a * ce * s.sinh()).cos(),
            w[0],
            w[1],
            &o,
        )?
        .value;
    }
    Ok((tau * eta).exp() * total)
}

/// Positive zeros `τ_n` of `τ ↦ K_{iτ}(a)`, by sign changes of the scaled
/// function on a grid of the given step, refined by Brent.
pub fn k_order_tau_zeros(a: f64, count: usize, step: f64) -> Result<Vec<f64>> {
    check_a(a)?;
    if count == 0 || count > MAX_ZERO_COUNT {
        return Err(Error::domain(format!("zero count must be in 1..={MAX_ZERO_COUNT}")));
    }
    if !(step > 0.0 && step <= 0.25) {
        return Err(Error::domain("grid step must lie in (0, 0.25]"));
    }
    let f = |t: f64| k_imaginary_order_scaled(a, t);
    let mut zeros = Vec::with_capacity(count);
    let mut lo = step;
    let mut flo = f(lo)?;
    while zeros.len() < count {
        let hi = lo + step;
        if hi > TAU_MAX {
            return Err(Error::InsufficientZeros { found: zeros.len(), requested: count });
        }
        let fhi = f(hi)?;
        if flo * fhi < 0.0 {
            zeros.push(try_find_root_bracketed(f, lo, hi, 1e-14 * hi)?);
        } else if fhi == 0.0 {
            zeros.push(hi);
        }
        lo = hi;
        flo = fhi;
    }
    Ok(zeros)
}

/// `z_n = τ_n²`.
pub fn k_order_zeros(a: f64, count: usize) -> Result<Vec<f64>> {
    Ok(k_order_tau_zeros(a, count, DEFAULT_GRID_STEP)?.into_iter().map(|t| t * t).collect())
}

#[derive(Debug, Clone)]
pub struct KOrderModel {
    a: f64,
    zeros: ZeroSequence,
    f0: f64,
}

impl KOrderModel {
    pub fn new(a: f64, head_count: usize) -> Result<Self> {
        check_a(a)?;
        let zeros = ZeroSequence::head_only(k_order_zeros(a, head_count)?)?;
        let f0 = k_order_eval(a, Complex::new(0.0, 0.0))?.re;
        Ok(Self { a, zeros, f0 })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

impl FunctionModel for KOrderModel {
    fn id(&self) -> String {
        format!("k-order(a={})", self.a)
    }

    fn value_ratio(&self, z: Complex) -> Result<Complex> {
        if z == Complex::new(0.0, 0.0) {
            return Ok(Complex::new(1.0, 0.0));
        }
        let log0 = log_k(self.a, Complex::new(0.0, 0.0))?;
        let v = (log_k(self.a, z.sqrt())? - log0).exp();
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Overflow(format!("K ratio overflows at z = {z}")));
        }
        Ok(v)
    }

    fn log_derivative(&self, x: f64) -> Result<f64> {
        k_order_log_derivative(self.a, x)
    }

    fn zeros(&self) -> &ZeroSequence {
        &self.zeros
    }

    fn zero_fidelity(&self) -> ZeroFidelity {
        ZeroFidelity::HeadOnly
    }

    fn order_rho0(&self) -> f64 {
        0.5
    }

    fn f0(&self) -> f64 {
        self.f0
    }
}
