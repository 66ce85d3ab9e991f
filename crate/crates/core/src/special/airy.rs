//! `f(z) = Ai(i√z)·Ai(−i√z)`, order 3/4, zeros at `-t_n²` where `Ai(−t_n) = 0`.

use super::bessel::bessel_j;
use crate::error::{Error, Result};
use crate::numerics::{gamma_unchecked, try_find_root_bracketed, Complex};
use crate::zeros::{FunctionModel, PowerTail, ZeroSequence};
use std::f64::consts::PI;

pub const DEFAULT_Z_MAX: f64 = 25.0;
pub const DEFAULT_HEAD_COUNT: usize = 1000;
pub const MAX_ZERO_COUNT: usize = 1000;
/// Beyond this `|w|` the Maclaurin series loses too many digits.
const SERIES_MAX_ARG: f64 = 7.0;

/// `Ai(0) = 1/(3^{2/3} Γ(2/3))`.
pub fn airy_ai0() -> f64 {
    1.0 / (3f64.powf(2.0 / 3.0) * gamma_unchecked(2.0 / 3.0))
}

/// `−Ai'(0) = 1/(3^{1/3} Γ(1/3))`.
fn airy_dai0_neg() -> f64 {
    1.0 / (3f64.cbrt() * gamma_unchecked(1.0 / 3.0))
}

/// `(Ai(w), Ai'(w))` from the Maclaurin series.
fn ai_series(w: Complex) -> (Complex, Complex) {
    let w3 = w * w * w;
    let one = Complex::new(1.0, 0.0);
    // f = Σ c_k w^{3k}, g = Σ d_k w^{3k+1}
    let (mut f, mut df) = (one, Complex::new(0.0, 0.0));
    let (mut g, mut dg) = (w, one);
    let mut fk = one;
    let mut gk = w;
    for k in 1..200 {
        let kf = k as f64;
        fk *= w3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        gk *= w3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        f += fk;
        g += gk;
        if w.norm() > 0.0 {
            df += fk * (3.0 * kf) / w;
            dg += gk * (3.0 * kf + 1.0) / w;
        }
        if fk.norm() < 1e-18 * f.norm() && gk.norm() < 1e-18 * g.norm() {
            break;
        }
    }
    let (alpha, beta) = (airy_ai0(), airy_dai0_neg());
    (alpha * f - beta * g, alpha * df - beta * dg)
}

pub fn airy_ai(w: Complex) -> Result<Complex> {
    if w.norm() > SERIES_MAX_ARG {
        return Err(Error::domain(format!("|w| = {} beyond the Airy series range", w.norm())));
    }
    Ok(ai_series(w).0)
}

fn check_cap(z: Complex, z_max: f64) -> Result<()> {
    if !(z.norm() <= z_max) {
        return Err(Error::domain(format!("|z| = {} exceeds the Airy cap {z_max}", z.norm())));
    }
    Ok(())
}

/// `Ai(i√z)·Ai(−i√z)` for `|z| ≤ z_max`.
pub fn airy_pair_eval_capped(z: Complex, z_max: f64) -> Result<Complex> {
    check_cap(z, z_max)?;
    if z_max > SERIES_MAX_ARG * SERIES_MAX_ARG {
        return Err(Error::domain(format!("z_max {z_max} beyond the series range")));
    }
    let s = z.sqrt();
    let i = Complex::new(0.0, 1.0);
    Ok(ai_series(i * s).0 * ai_series(-i * s).0)
}

pub fn airy_pair_eval(z: Complex) -> Result<Complex> {
    airy_pair_eval_capped(z, DEFAULT_Z_MAX)
}

/// `2·Re[d/dx log Ai(i√x)]`, which equals `f'/f` for real `x > 0`.
pub fn airy_pair_log_derivative_series(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= DEFAULT_Z_MAX) {
        return Err(Error::domain(format!("x = {x} outside (0, {DEFAULT_Z_MAX}]")));
    }
    let s = x.sqrt();
    let w = Complex::new(0.0, s);
    let (ai, dai) = ai_series(w);
    let d = dai * Complex::new(0.0, 1.0) / (2.0 * s) / ai;
    Ok(2.0 * d.re)
}

/// `Ai(−t)` for `t > 0`: series for small `t`, otherwise
/// `(√t/3)(J_{1/3}(ζ) + J_{−1/3}(ζ))` with `ζ = 2t^{3/2}/3`.
fn ai_negative(t: f64) -> Result<f64> {
    if t <= SERIES_MAX_ARG {
        return Ok(ai_series(Complex::new(-t, 0.0)).0.re);
    }
    let zeta = 2.0 / 3.0 * t.powf(1.5);
    Ok(t.sqrt() / 3.0 * (bessel_j(1.0 / 3.0, zeta)? + bessel_j(-1.0 / 3.0, zeta)?))
}

/// `T(ζ)` with `ζ = 3π(4n−1)/8`: the asymptotic `n`-th zero of `Ai(−t)`.
fn asymptotic_zero(n: usize) -> f64 {
    let z = 3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0;
    let z2 = 1.0 / (z * z);
    z.powf(2.0 / 3.0)
        * (1.0
            + z2 * (5.0 / 48.0 + z2 * (-5.0 / 36.0 + z2 * (77125.0 / 82944.0 + z2 * (-108_056_875.0 / 6_967_296.0)))))
}

/// Zeros `t_1 < t_2 < …` of `Ai(−t)`.
pub fn airy_zeros(count: usize) -> Result<Vec<f64>> {
    if count == 0 || count > MAX_ZERO_COUNT {
        return Err(Error::domain(format!("zero count must be in 1..={MAX_ZERO_COUNT}")));
    }
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        let guess = asymptotic_zero(n);
        // the guess is within 1e-3 of the zero; spacing exceeds 1 for n ≤ 1000
        let h = if n == 1 { 0.05 } else { 0.01 };
        let (lo, hi) = (guess - h, guess + h);
        let root = try_find_root_bracketed(ai_negative, lo, hi, 1e-15 * hi)?;
        out.push(root);
    }
    Ok(out)
}

/// `z_n = t_n²`.
pub fn airy_squared_zeros(count: usize) -> Result<Vec<f64>> {
    Ok(airy_zeros(count)?.into_iter().map(|t| t * t).collect())
}

/// `z_n ≈ (3π/2)^{4/3}(n − 1/4)^{4/3}`.
pub fn airy_tail() -> PowerTail {
    PowerTail { exponent: 4.0 / 3.0, coefficient: (1.5 * PI).powf(4.0 / 3.0), offset: -0.25 }
}

#[derive(Debug, Clone)]
pub struct AiryPairModel {
    zeros: ZeroSequence,
    z_max: f64,
    f0: f64,
}

impl AiryPairModel {
    pub fn new(head_count: usize, z_max: f64) -> Result<Self> {
        if !(z_max > 0.0 && z_max <= SERIES_MAX_ARG * SERIES_MAX_ARG) {
            return Err(Error::domain(format!("z_max must lie in (0, {}]", SERIES_MAX_ARG * SERIES_MAX_ARG)));
        }
        let head = airy_squared_zeros(head_count)?;
        let zeros = ZeroSequence::new(head, Some(airy_tail()))?;
        let a0 = airy_ai0();
        Ok(Self { zeros, z_max, f0: a0 * a0 })
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }
}

impl FunctionModel for AiryPairModel {
    fn id(&self) -> String {
        "airy-pair".to_string()
    }

    fn value_ratio(&self, z: Complex) -> Result<Complex> {
        if z == Complex::new(0.0, 0.0) {
            return Ok(Complex::new(1.0, 0.0));
        }
        Ok(airy_pair_eval_capped(z, self.z_max)? / self.f0)
    }

    /// From the zeros, so it is available on the whole half-line.
    fn log_derivative(&self, x: f64) -> Result<f64> {
        self.zeros.log_derivative(x)
    }

    fn zeros(&self) -> &ZeroSequence {
        &self.zeros
    }

    fn f0(&self) -> f64 {
        self.f0
    }

    fn max_modulus(&self) -> Option<f64> {
        Some(self.z_max)
    }
}
