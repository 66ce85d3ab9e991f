//! `f(z) = I_ν(√z)/(√z/2)^ν`, an order-1/2 function with zeros at `-j_{ν,n}²`.

use crate::error::{Error, Result};
use crate::numerics::{gamma_unchecked, integrate_interval, try_find_root_bracketed, Complex, IntervalOptions};
use crate::zeros::{FunctionModel, PowerTail, ZeroSequence};
use std::f64::consts::PI;

/// Largest `|z|` accepted by the power series.
pub const SERIES_MAX_MODULUS: f64 = 1e4;
/// Largest order accepted by the adapter.
pub const MAX_NU: f64 = 20.0;
pub const MAX_ZERO_COUNT: usize = 10_000;
pub const DEFAULT_HEAD_COUNT: usize = 200;

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > -1.0 && nu <= MAX_NU) {
        return Err(Error::domain(format!("nu must lie in (-1, {MAX_NU}], got {nu}")));
    }
    Ok(())
}

/// `Σ_k z^k/(4^k k! (ν+1)_k)`, i.e. `Γ(ν+1)·F_ν(z)`.
fn normalized_series(nu: f64, z: Complex) -> Result<Complex> {
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 1..100_000 {
        let kf = k as f64;
        term *= z / (4.0 * kf * (nu + kf));
        sum += term;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::Overflow(format!("Bessel series overflows at z = {z}")));
        }
        if term.norm() < 1e-17 * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(format!("Bessel series did not settle at z = {z}")))
}

/// `F_ν(z) = Σ z^k/(4^k k! Γ(ν+k+1))`, equal to `I_ν(√z)/(√z/2)^ν`.
pub fn bessel_i_scaled(nu: f64, z: Complex) -> Result<Complex> {
    check_nu(nu)?;
    if !(z.norm() <= SERIES_MAX_MODULUS) {
        return Err(Error::domain(format!("|z| = {} exceeds {SERIES_MAX_MODULUS}", z.norm())));
    }
    Ok(normalized_series(nu, z)? / gamma_unchecked(nu + 1.0))
}

/// Hankel coefficients `a_k(μ) = Π_{j≤k}(4μ²-(2j-1)²) / (k! 8^k)`.
fn hankel_coefficients(nu: f64, count: usize) -> Vec<f64> {
    let mu = 4.0 * nu * nu;
    let mut a = Vec::with_capacity(count);
    a.push(1.0);
    for k in 1..count {
        let odd = (2 * k - 1) as f64;
        let prev = a[k - 1];
        a.push(prev * (mu - odd * odd) / (k as f64 * 8.0));
    }
    a
}

/// `Σ (∓1)^k a_k/w^k` truncated at its smallest term.
fn hankel_sum(nu: f64, w: f64, alternating: bool) -> f64 {
    let a = hankel_coefficients(nu, 60);
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut wk = 1.0;
    for (k, ak) in a.iter().enumerate() {
        let term = ak / wk;
        if term.abs() > last {
            break;
        }
        sum += if alternating && k % 2 == 1 { -term } else { term };
        last = term.abs();
        if last < 1e-17 * sum.abs() {
            break;
        }
        wk *= w;
    }
    sum
}

fn hankel_threshold(nu: f64) -> f64 {
    (2.0 * nu * nu).max(30.0)
}

/// `I_{ν+1}(w)/I_ν(w)`.
fn i_ratio(nu: f64, w: f64) -> Result<f64> {
    if w >= hankel_threshold(nu + 1.0) {
        return Ok(hankel_sum(nu + 1.0, w, true) / hankel_sum(nu, w, true));
    }
    // Σ t_k/(ν+k+1) / Σ t_k with t_k the normalized terms, kept in range
    let x = w * w;
    let (mut num, mut den) = (1.0 / (nu + 1.0), 1.0);
    let mut term = 1.0f64;
    for k in 1..200_000 {
        let kf = k as f64;
        term *= x / (4.0 * kf * (nu + kf));
        num += term / (nu + kf + 1.0);
        den += term;
        if den > 1e250 {
            num *= 1e-250;
            den *= 1e-250;
            term *= 1e-250;
        }
        if term < 1e-18 * den && kf > x.sqrt() {
            return Ok(w / 2.0 * num / den);
        }
    }
    Err(Error::NonConvergence(format!("Bessel ratio series did not settle at w = {w}")))
}

/// `f'(x)/f(x)` for `f = F_ν`: `F_{ν+1}(x)/(4F_ν(x)) = I_{ν+1}(√x)/(2√x I_ν(√x))`.
pub fn bessel_i_log_derivative(nu: f64, x: f64) -> Result<f64> {
    check_nu(nu)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("x must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.25 / (nu + 1.0));
    }
    let w = x.sqrt();
    Ok(i_ratio(nu, w)? / (2.0 * w))
}

/// `I_ν(w)` for real `w > 0` by the series (small `w`) or Hankel expansion.
pub fn bessel_i(nu: f64, w: f64) -> Result<f64> {
    check_nu(nu.abs().min(nu + 2.0).max(nu))?;
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::domain(format!("w must be positive, got {w}")));
    }
    if w >= hankel_threshold(nu) {
        return Ok(w.exp() / (2.0 * PI * w).sqrt() * hankel_sum(nu, w, true));
    }
    if nu <= -1.0 {
        // I_{-ν} form: the normalized series needs ν > -1
        return Err(Error::domain("orders at or below -1 not supported"));
    }
    let s = normalized_series(nu, Complex::new(w * w, 0.0))?.re;
    Ok(s * (w / 2.0).powf(nu) / gamma_unchecked(nu + 1.0))
}

/// `J_ν(w)` for real `w > 0`.
pub(crate) fn bessel_j(nu: f64, w: f64) -> Result<f64> {
    if w <= 10.0 {
        j_series(nu, w)
    } else if w >= hankel_threshold(nu).max(25.0) {
        Ok(j_hankel(nu, w))
    } else {
        j_integral(nu, w)
    }
}

fn j_series(nu: f64, w: f64) -> Result<f64> {
    let s = normalized_series(nu, Complex::new(-w * w, 0.0))?.re;
    Ok(s * (w / 2.0).powf(nu) / gamma_unchecked(nu + 1.0))
}

fn j_hankel(nu: f64, w: f64) -> f64 {
    let a = hankel_coefficients(nu, 60);
    let (mut p, mut q) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut wk = 1.0;
    for (k, ak) in a.iter().enumerate() {
        let term = ak / wk;
        if term.abs() > last || term.abs() < 1e-18 {
            break;
        }
        last = term.abs();
        // (-1)^{k/2} into P for even k, (-1)^{(k-1)/2} into Q for odd k
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        wk *= w;
    }
    let chi = w - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * w)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `(1/π)∫₀^π cos(w sinθ − νθ)dθ − (sin νπ/π)∫₀^∞ e^{−w sinh t − νt}dt`.
fn j_integral(nu: f64, w: f64) -> Result<f64> {
    let opts = IntervalOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_evals: 200_000 };
    let pieces = (w / 2.0).ceil().max(4.0) as usize;
    let mut osc = 0.0;
    for i in 0..pieces {
        let a = PI * i as f64 / pieces as f64;
        let b = PI * (i + 1) as f64 / pieces as f64;
        osc += integrate_interval(|th: f64| (w * th.sin() - nu * th).cos(), a, b, &opts)?.value;
    }
    let mut value = osc / PI;
    let s = (nu * PI).sin();
    if s.abs() > 1e-15 {
        // e^{-w sinh t} < 1e-40 once sinh t > 92/w
        let upper = (92.0 / w).asinh() + 1.0;
        let tail = integrate_interval(|t: f64| (-w * t.sinh() - nu * t).exp(), 0.0, upper, &opts)?;
        value -= s / PI * tail.value;
    }
    Ok(value)
}

fn mcmahon_guess(nu: f64, n: usize) -> f64 {
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// First positive zero for larger orders, where McMahon is poor.
fn first_zero_guess(nu: f64) -> f64 {
    if nu <= 2.0 {
        return mcmahon_guess(nu, 1);
    }
    let c = nu.cbrt();
    nu + 1.855_757_1 * c + 1.033_150 / c - 0.003_97 / nu - 0.090_8 / (c * c * nu)
}

/// Positive zeros `j_{ν,1} < … < j_{ν,count}` of `J_ν`.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    check_nu(nu)?;
    if count == 0 || count > MAX_ZERO_COUNT {
        return Err(Error::domain(format!("zero count must be in 1..={MAX_ZERO_COUNT}")));
    }
    let j = |w: f64| bessel_j(nu, w);
    let mut zeros: Vec<f64> = Vec::with_capacity(count);
    for n in 1..=count {
        let prev = zeros.last().copied().unwrap_or(0.0);
        let floor = prev + 1e-6 * prev.max(1.0);
        let guess = if n == 1 { first_zero_guess(nu) } else { mcmahon_guess(nu, n) };
        let mut bracket = None;
        let mut h = 0.3;
        for _ in 0..4 {
            let lo = (guess - h).max(floor);
            let hi = guess + h;
            let (flo, fhi) = (j(lo)?, j(hi)?);
            if flo * fhi <= 0.0 {
                bracket = Some((lo, hi));
                break;
            }
            h *= 1.6;
        }
        if bracket.is_none() {
            // walk up from the previous zero
            let step = 0.2;
            let mut lo = floor;
            let mut flo = j(lo)?;
            for _ in 0..400 {
                let hi = lo + step;
                let fhi = j(hi)?;
                if flo * fhi <= 0.0 {
                    bracket = Some((lo, hi));
                    break;
                }
                lo = hi;
                flo = fhi;
            }
        }
        let (lo, hi) =
            bracket.ok_or_else(|| Error::NonConvergence(format!("no bracket for Bessel zero n = {n}, nu = {nu}")))?;
        let root = try_find_root_bracketed(j, lo, hi, 1e-15 * hi)?;
        zeros.push(root);
    }
    Ok(zeros)
}

/// `z_n = j_{ν,n}²`.
pub fn bessel_j_squared_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    Ok(bessel_j_zeros(nu, count)?.into_iter().map(|j| j * j).collect())
}

/// Tail `z_n ≈ π²(n + ν/2 − 1/4)²` from the leading McMahon term.
pub fn bessel_tail(nu: f64) -> PowerTail {
    PowerTail { exponent: 2.0, coefficient: PI * PI, offset: 0.5 * nu - 0.25 }
}

#[derive(Debug, Clone)]
pub struct BesselIModel {
    nu: f64,
    zeros: ZeroSequence,
    f0: f64,
}

impl BesselIModel {
    pub fn new(nu: f64, head_count: usize) -> Result<Self> {
        let head = bessel_j_squared_zeros(nu, head_count)?;
        let zeros = ZeroSequence::new(head, Some(bessel_tail(nu)))?;
        Ok(Self { nu, zeros, f0: 1.0 / gamma_unchecked(nu + 1.0) })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn head_count(&self) -> usize {
        self.zeros.len()
    }
}

impl FunctionModel for BesselIModel {
    fn id(&self) -> String {
        format!("bessel-i(nu={})", self.nu)
    }

    fn value_ratio(&self, z: Complex) -> Result<Complex> {
        if !(z.norm() <= SERIES_MAX_MODULUS) {
            return Err(Error::domain(format!("|z| = {} exceeds {SERIES_MAX_MODULUS}", z.norm())));
        }
        normalized_series(self.nu, z)
    }

    fn log_derivative(&self, x: f64) -> Result<f64> {
        bessel_i_log_derivative(self.nu, x)
    }

    fn zeros(&self) -> &ZeroSequence {
        &self.zeros
    }

    fn f0(&self) -> f64 {
        self.f0
    }

    fn max_modulus(&self) -> Option<f64> {
        Some(SERIES_MAX_MODULUS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_methods_agree_where_they_overlap() {
        for nu in [-0.5, 0.0, 0.5, 1.0, 2.0] {
            for w in [6.0, 9.0, 11.0] {
                let a = j_series(nu, w).unwrap();
                let b = j_integral(nu, w).unwrap();
                assert!((a - b).abs() < 1e-12, "series/integral nu={nu} w={w}: {a} {b}");
            }
            for w in [20.0, 25.0, 30.0] {
                let a = j_hankel(nu, w);
                let b = j_integral(nu, w).unwrap();
                assert!((a - b).abs() < 1e-13, "hankel/integral nu={nu} w={w}: {a} {b}");
            }
        }
    }

    #[test]
    fn half_integer_closed_forms() {
        for w in [0.3, 5.0, 12.0, 40.0] {
            let j = bessel_j(0.5, w).unwrap();
            assert!((j - (2.0 / (PI * w)).sqrt() * w.sin()).abs() < 1e-13, "w={w}");
            let i = bessel_i(0.5, w).unwrap();
            assert!((i / ((2.0 / (PI * w)).sqrt() * w.sinh()) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn ratio_is_continuous_across_methods() {
        for nu in [0.0, 2.0] {
            let w = hankel_threshold(nu + 1.0);
            let below = i_ratio(nu, w * (1.0 - 1e-12)).unwrap();
            let x = w * w;
            let mut num = 1.0 / (nu + 1.0);
            let mut den = 1.0;
            let mut term = 1.0f64;
            for k in 1..2000 {
                let kf = k as f64;
                term *= x / (4.0 * kf * (nu + kf));
                num += term / (nu + kf + 1.0);
                den += term;
            }
            let series = w / 2.0 * num / den;
            assert!((below / series - 1.0).abs() < 1e-13);
            assert!((i_ratio(nu, w).unwrap() / series - 1.0).abs() < 1e-13, "nu={nu}");
        }
    }
}
