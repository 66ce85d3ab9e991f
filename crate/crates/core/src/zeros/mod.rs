//! Zero sequences of genus-zero functions with only negative zeros `-z_n`,
//! and every quantity built directly from them.

mod model;
mod tail;

pub use model::{model_from_zeros, FunctionModel, ZeroFidelity, ZeroModel};
pub use tail::{PowerTail, TailSum};

use crate::error::{Error, Result};
use crate::numerics::{ln_1p_complex, minimize_scalar, Complex};
use serde::{Deserialize, Serialize};

/// Positive zeros `z_1 ≤ z_2 ≤ …` of `f(-z)`: an explicit head followed by an
/// optional power-law tail `z_n ≈ c·(n+δ)^p` for `n > N`.
///
/// A head-only sequence describes a polynomial (order 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ZeroSequenceJson", into = "ZeroSequenceJson")]
pub struct ZeroSequence {
    head: Vec<f64>,
    tail: Option<PowerTail>,
    order_rho0: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZeroSequenceJson {
    head: Vec<f64>,
    tail_exponent: Option<f64>,
    tail_coefficient: Option<f64>,
    order_rho0: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    tail_offset: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl TryFrom<ZeroSequenceJson> for ZeroSequence {
    type Error = Error;

    fn try_from(j: ZeroSequenceJson) -> Result<Self> {
        let tail = match (j.tail_exponent, j.tail_coefficient) {
            (Some(exponent), Some(coefficient)) => Some(PowerTail { exponent, coefficient, offset: j.tail_offset }),
            (None, None) => None,
            _ => return Err(Error::domain("tail_exponent and tail_coefficient must be given together")),
        };
        ZeroSequence::with_order(j.head, tail, j.order_rho0)
    }
}

impl From<ZeroSequence> for ZeroSequenceJson {
    fn from(z: ZeroSequence) -> Self {
        ZeroSequenceJson {
            tail_exponent: z.tail.map(|t| t.exponent),
            tail_coefficient: z.tail.map(|t| t.coefficient),
            tail_offset: z.tail.map_or(0.0, |t| t.offset),
            order_rho0: z.order_rho0,
            head: z.head,
        }
    }
}

/// Location and value of `sup_{t>0} t^ρ φ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSup {
    pub t: f64,
    pub value: f64,
}

impl ZeroSequence {
    /// Validates the head and derives `ρ₀ = 1/p` (0 without a tail).
    pub fn new(head: Vec<f64>, tail: Option<PowerTail>) -> Result<Self> {
        let order = tail.map_or(0.0, |t| 1.0 / t.exponent);
        Self::with_order(head, tail, order)
    }

    pub fn with_order(head: Vec<f64>, tail: Option<PowerTail>, order_rho0: f64) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::domain("zero sequence needs at least one explicit zero"));
        }
        if let Some(bad) = head.iter().position(|z| !(z.is_finite() && *z > 0.0)) {
            return Err(Error::domain(format!("zero #{} = {} is not positive", bad + 1, head[bad])));
        }
        if let Some(k) = head.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::domain(format!("zeros not nondecreasing at index {}", k + 2)));
        }
        match tail {
            Some(t) => {
                if !(t.exponent > 1.0 && t.exponent.is_finite()) {
                    return Err(Error::domain(format!("tail_exponent {} must exceed 1", t.exponent)));
                }
                if !(t.coefficient > 0.0 && t.coefficient.is_finite()) {
                    return Err(Error::domain("tail_coefficient must be positive"));
                }
                if !(head.len() as f64 + t.offset > 0.0) || !t.offset.is_finite() {
                    return Err(Error::domain("tail_offset must keep N + offset positive"));
                }
                if (order_rho0 * t.exponent - 1.0).abs() > 1e-9 {
                    return Err(Error::domain(format!(
                        "order_rho0 {order_rho0} inconsistent with tail_exponent {}",
                        t.exponent
                    )));
                }
            }
            None => {
                if !(0.0..1.0).contains(&order_rho0) {
                    return Err(Error::domain("order_rho0 must lie in [0, 1)"));
                }
            }
        }
        Ok(Self { head, tail, order_rho0 })
    }

    /// `z_n = c·(n+δ)^p` for every `n`, the first `count` held explicitly.
    pub fn power_law(count: usize, coefficient: f64, exponent: f64, offset: f64) -> Result<Self> {
        let tail = PowerTail { exponent, coefficient, offset };
        let head = (1..=count).map(|n| tail.zero_at(n as f64)).collect();
        Self::new(head, Some(tail))
    }

    /// `z_n = n²`, the zeros of `sinh(π√z)/(π√z)`.
    pub fn toy_square(count: usize) -> Self {
        Self::power_law(count, 1.0, 2.0, 0.0).expect("valid toy sequence")
    }

    pub fn head_only(head: Vec<f64>) -> Result<Self> {
        Self::new(head, None)
    }

    pub fn head(&self) -> &[f64] {
        &self.head
    }

    pub fn tail(&self) -> Option<&PowerTail> {
        self.tail.as_ref()
    }

    pub fn order_rho0(&self) -> f64 {
        self.order_rho0
    }

    pub fn len(&self) -> usize {
        self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn smallest(&self) -> f64 {
        self.head[0]
    }

    pub fn largest_explicit(&self) -> f64 {
        self.head[self.head.len() - 1]
    }

    /// `|z|` up to which the tail expansion of the product is considered
    /// validated: `z_{N/2}`.
    pub fn validated_radius(&self) -> f64 {
        self.head[(self.head.len() - 1) / 2]
    }

    fn check_sum_exponent(&self, rho: f64) -> Result<()> {
        if !(rho > self.order_rho0) || !rho.is_finite() {
            return Err(Error::Divergence(format!("zero sum diverges for rho = {rho} <= rho0 = {}", self.order_rho0)));
        }
        Ok(())
    }

    /// `S(ρ) = Σ z_n^{-ρ}` with the Euler–Maclaurin error of the tail.
    pub fn zero_sum_estimate(&self, rho: f64) -> Result<TailSum> {
        self.check_sum_exponent(rho)?;
        let head: f64 = self.head.iter().rev().map(|z| z.powf(-rho)).sum();
        let tail = self.tail.map_or(TailSum { value: 0.0, error_estimate: 0.0 }, |t| t.power_sum(self.head.len(), rho));
        Ok(TailSum { value: head + tail.value, error_estimate: tail.error_estimate })
    }

    pub fn zero_sum(&self, rho: f64) -> Result<f64> {
        self.zero_sum_estimate(rho).map(|s| s.value)
    }

    /// Index `M ≥ N` past which the tail zeros exceed `4|z|`, so power
    /// series in `z/z_n` converge at least like `4^{-k}`.
    fn series_start(&self, tail: &PowerTail, z: Complex) -> Result<usize> {
        let n = self.head.len();
        let r = 4.0 * z.norm();
        if tail.zero_at(n as f64 + 1.0) >= r {
            return Ok(n);
        }
        let m = ((r / tail.coefficient).powf(1.0 / tail.exponent) - tail.offset).ceil().max(n as f64);
        if m - n as f64 > 5e7 {
            return Err(Error::domain(format!("|z| = {} too large for the tail model", z.norm())));
        }
        Ok(m as usize)
    }

    /// `log(f(z)/f(0)) = Σ log(1 + z/z_n)`.
    pub fn log_product(&self, z: Complex) -> Result<Complex> {
        let factor = |zn: f64| -> Result<Complex> {
            let w = z / zn;
            if w == Complex::new(-1.0, 0.0) {
                return Err(Error::PoleZero(format!("1 + z/z_n = 0 at z = {z}")));
            }
            Ok(ln_1p_complex(w))
        };
        let mut acc = Complex::new(0.0, 0.0);
        for &zn in self.head.iter().rev() {
            acc += factor(zn)?;
        }
        let Some(tail) = self.tail else {
            return Ok(acc);
        };
        let start = self.series_start(&tail, z)?;
        for n in (self.head.len() + 1..=start).rev() {
            acc += factor(tail.zero_at(n as f64))?;
        }
        // Σ_{k≥1} (-1)^{k+1} z^k S_M(k) / k
        let mut zk = z;
        let mut series = Complex::new(0.0, 0.0);
        for k in 1..=80u32 {
            let term = zk * (tail.power_sum(start, f64::from(k)).value / f64::from(k));
            series += if k % 2 == 1 { term } else { -term };
            if term.norm() <= 1e-18 * (series.norm() + acc.norm()) {
                break;
            }
            zk *= z;
        }
        Ok(acc + series)
    }

    /// `f(z)/f(0) = Π (1 + z/z_n)`.
    pub fn product_eval(&self, z: Complex) -> Result<Complex> {
        if z == Complex::new(0.0, 0.0) {
            return Ok(Complex::new(1.0, 0.0));
        }
        let log = self.log_product(z)?;
        let v = log.exp();
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Overflow(format!("product overflows at z = {z}")));
        }
        Ok(v)
    }

    /// `Σ 1/(z + z_n)^m`, `m ≥ 1`; for `m = 1` and real `z` this is
    /// `f'/f`. The tail uses the binomial series in `z`.
    pub fn resolvent_sum(&self, z: Complex, m: u32) -> Result<Complex> {
        if m == 0 {
            return Err(Error::domain("resolvent power must be at least 1"));
        }
        let term = |zn: f64| -> Result<Complex> {
            let d = z + zn;
            if d == Complex::new(0.0, 0.0) {
                return Err(Error::PoleZero(format!("z = {z} is a zero")));
            }
            Ok(d.powi(-(m as i32)))
        };
        let mut acc = Complex::new(0.0, 0.0);
        for &zn in self.head.iter().rev() {
            acc += term(zn)?;
        }
        let Some(tail) = self.tail else {
            return Ok(acc);
        };
        if m == 1 && z.im == 0.0 && z.re >= 0.0 {
            return Ok(acc + tail.resolvent_sum(self.head.len(), z.re).value);
        }
        let start = self.series_start(&tail, z)?;
        for n in (self.head.len() + 1..=start).rev() {
            acc += term(tail.zero_at(n as f64))?;
        }
        // Σ_j C(m+j-1, j) (-z)^j S_M(m+j)
        let mut coeff = 1.0;
        let mut zj = Complex::new(1.0, 0.0);
        let mut series = Complex::new(0.0, 0.0);
        for j in 0..200u32 {
            let t = zj * (coeff * tail.power_sum(start, f64::from(m + j)).value);
            series += t;
            if j > 0 && t.norm() <= 1e-18 * (series.norm() + acc.norm()) {
                break;
            }
            coeff *= f64::from(m + j) / f64::from(j + 1);
            zj *= -z;
        }
        Ok(acc + series)
    }

    /// `f'(x)/f(x) = Σ 1/(x + z_n)` on `x ≥ 0`.
    pub fn log_derivative(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("log_derivative needs x >= 0, got {x}")));
        }
        let head: f64 = self.head.iter().rev().map(|zn| 1.0 / (x + zn)).sum();
        let tail = self.tail.map_or(0.0, |t| t.resolvent_sum(self.head.len(), x).value);
        Ok(head + tail)
    }

    /// `φ(t) = Σ e^{-z_n t}`.
    pub fn phi(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("phi needs t > 0, got {t}")));
        }
        let mut acc = 0.0;
        for &zn in &self.head {
            let term = (-zn * t).exp();
            acc += term;
            if term < 1e-18 * acc {
                return Ok(acc);
            }
        }
        let tail = self.tail.map_or(0.0, |tl| tl.exp_sum(self.head.len(), t).value);
        Ok(acc + tail)
    }

    /// `sup_{t>0} t^ρ φ(t)`: 512-node logarithmic scan of
    /// `[10⁻⁶/z_N, 10³/z_1]`, refined around the best node.
    pub fn sup_weighted_phi(&self, rho: f64) -> Result<WeightedSup> {
        if !(rho > self.order_rho0 && rho < 1.0) {
            return Err(Error::domain(format!("sup_weighted_phi needs rho in ({}, 1), got {rho}", self.order_rho0)));
        }
        const NODES: usize = 512;
        let lo = (1e-6 / self.largest_explicit()).ln();
        let hi = (1e3 / self.smallest()).ln();
        let step = (hi - lo) / (NODES - 1) as f64;
        let weighted = |s: f64| -> Result<f64> {
            let t = s.exp();
            Ok(t.powf(rho) * self.phi(t)?)
        };
        let mut best = (0, f64::NEG_INFINITY);
        for i in 0..NODES {
            let v = weighted(lo + step * i as f64)?;
            if v > best.1 {
                best = (i, v);
            }
        }
        let a = lo + step * best.0.saturating_sub(1) as f64;
        let b = lo + step * (best.0 + 1).min(NODES - 1) as f64;
        let refined = minimize_scalar(|s| weighted(s).map_or(f64::INFINITY, |v| -v), a, b, 1e-10)?;
        if -refined.min > best.1 {
            Ok(WeightedSup { t: refined.argmin.exp(), value: -refined.min })
        } else {
            Ok(WeightedSup { t: (lo + step * best.0 as f64).exp(), value: best.1 })
        }
    }
}

pub fn zero_sum(zs: &ZeroSequence, rho: f64) -> Result<f64> {
    zs.zero_sum(rho)
}

pub fn product_eval(zs: &ZeroSequence, z: Complex) -> Result<Complex> {
    zs.product_eval(z)
}

pub fn phi(zs: &ZeroSequence, t: f64) -> Result<f64> {
    zs.phi(t)
}

pub fn sup_weighted_phi(zs: &ZeroSequence, rho: f64) -> Result<f64> {
    zs.sup_weighted_phi(rho).map(|s| s.value)
}

fn order_ratios(neg_log_coeffs: &[f64], window: usize) -> Result<Vec<(f64, f64)>> {
    if window < 3 || window > neg_log_coeffs.len() {
        return Err(Error::domain(format!("window {window} must be in [3, {}]", neg_log_coeffs.len())));
    }
    let first = neg_log_coeffs.len() - window;
    if first < 2 {
        return Err(Error::domain("window must start at index 2 or later"));
    }
    neg_log_coeffs[first..]
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            let n = (first + k) as f64;
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::domain(format!("|a_{}| = {} outside (0, 1)", first + k, (-l).exp())));
            }
            Ok((n, n * n.ln() / l))
        })
        .collect()
}

fn neg_logs(abs_coeffs: &[f64]) -> Vec<f64> {
    abs_coeffs.iter().map(|a| -a.ln()).collect()
}

/// Window maximum of `n log n / (-log|a_n|)`, the raw finite-`n` stand-in
/// for the limsup.
pub fn order_ratio_window_max(abs_coeffs: &[f64], window: usize) -> Result<f64> {
    Ok(order_ratios(&neg_logs(abs_coeffs), window)?.into_iter().map(|(_, r)| r).fold(f64::MIN, f64::max))
}

/// Order of an entire function from `|a_n|` (index = power of `z`).
///
/// The ratio `n log n / (-log|a_n|)` approaches its limit only like
/// `1/log n`, so the window values are extrapolated: `1/ratio` is
/// least-squares fitted by `A + B/log n + C/n` and `1/A` returned.
pub fn estimate_order_from_coeffs(abs_coeffs: &[f64], window: usize) -> Result<f64> {
    estimate_order_from_log_coeffs(&neg_logs(abs_coeffs), window)
}

/// As [`estimate_order_from_coeffs`], from `-log|a_n|` directly, for
/// coefficients below the floating-point range.
pub fn estimate_order_from_log_coeffs(neg_log_coeffs: &[f64], window: usize) -> Result<f64> {
    let ratios = order_ratios(neg_log_coeffs, window)?;
    let mut normal = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for &(n, r) in &ratios {
        let basis = [1.0, 1.0 / n.ln(), 1.0 / n];
        for i in 0..3 {
            rhs[i] += basis[i] / r;
            for j in 0..3 {
                normal[i][j] += basis[i] * basis[j];
            }
        }
    }
    let intercept = solve3(normal, rhs).ok_or_else(|| Error::NonConvergence("order fit is singular".into()))?[0];
    if !(intercept > 0.0) {
        return Err(Error::NonConvergence(format!("order fit intercept {intercept} not positive")));
    }
    Ok(1.0 / intercept)
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col] == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}
