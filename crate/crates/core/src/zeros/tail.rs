//! Sums over the power-law tail `z(s) = c·(s+δ)^p`, `s > start`, by
//! Euler–Maclaurin: a closed-form integral plus endpoint corrections whose
//! derivatives come from truncated Taylor arithmetic.

use crate::numerics::{integrate_interval, upper_incomplete_gamma, IntervalOptions};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const JET_LEN: usize = 6;

/// Terms below this index are summed outright: the truncated
/// Euler–Maclaurin remainder is only small once the start is large.
const MIN_EM_START: usize = 100;

/// Taylor coefficients `a_0 + a_1 h + … + a_5 h^5`.
#[derive(Debug, Clone, Copy)]
struct Jet([f64; JET_LEN]);

impl Jet {
    fn variable(x0: f64) -> Self {
        let mut a = [0.0; JET_LEN];
        a[0] = x0;
        a[1] = 1.0;
        Jet(a)
    }

    fn scale(mut self, k: f64) -> Self {
        self.0.iter_mut().for_each(|v| *v *= k);
        self
    }

    fn shift(mut self, k: f64) -> Self {
        self.0[0] += k;
        self
    }

    fn ln(self) -> Self {
        let a = self.0;
        let mut l = [0.0; JET_LEN];
        l[0] = a[0].ln();
        for k in 1..JET_LEN {
            let mut s = a[k];
            for j in 1..k {
                s -= (j as f64 / k as f64) * l[j] * a[k - j];
            }
            l[k] = s / a[0];
        }
        Jet(l)
    }

    fn exp(self) -> Self {
        let a = self.0;
        let mut e = [0.0; JET_LEN];
        e[0] = a[0].exp();
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += (j as f64 / k as f64) * a[j] * e[k - j];
            }
            e[k] = s;
        }
        Jet(e)
    }

    fn recip(self) -> Self {
        let a = self.0;
        let mut r = [0.0; JET_LEN];
        r[0] = 1.0 / a[0];
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += a[j] * r[k - j];
            }
            r[k] = -s / a[0];
        }
        Jet(r)
    }

    fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }
}

/// `Σ_{n>start} g(n) − ∫_start^∞ g`, and the size of the last term kept.
fn endpoint_correction(g: &Jet) -> (f64, f64) {
    let last = g.derivative(5) / 30240.0;
    let corr = -0.5 * g.derivative(0) - g.derivative(1) / 12.0 + g.derivative(3) / 720.0 - last;
    (corr, last.abs())
}

/// A sum estimate with the magnitude of the dropped correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSum {
    pub value: f64,
    pub error_estimate: f64,
}

/// `z_n ≈ coefficient·(n + offset)^exponent` beyond the explicit head.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTail {
    pub exponent: f64,
    pub coefficient: f64,
    pub offset: f64,
}

impl PowerTail {
    pub fn zero_at(&self, n: f64) -> f64 {
        self.coefficient * (n + self.offset).powf(self.exponent)
    }

    /// `ln z(start + h)` as a jet.
    fn log_jet(&self, start: f64) -> Jet {
        Jet::variable(start + self.offset).ln().scale(self.exponent).shift(self.coefficient.ln())
    }

    /// `Σ_{start<n≤m} term(z_n)` with `m = max(start, MIN_EM_START)`.
    fn lift(&self, start: usize, term: impl Fn(f64) -> f64) -> (f64, usize) {
        let m = start.max(MIN_EM_START);
        let s = (start + 1..=m).rev().map(|n| term(self.zero_at(n as f64))).sum();
        (s, m)
    }

    /// `Σ_{n>start} z_n^{-σ}`; requires `σ·p > 1`.
    pub fn power_sum(&self, start: usize, sigma: f64) -> TailSum {
        let (direct, start) = self.lift(start, |z| z.powf(-sigma));
        let mut t = self.power_sum_em(start, sigma);
        t.value += direct;
        t
    }

    fn power_sum_em(&self, start: usize, sigma: f64) -> TailSum {
        let s0 = start as f64 + self.offset;
        let q = sigma * self.exponent;
        debug_assert!(q > 1.0);
        let integral = self.coefficient.powf(-sigma) * s0.powf(1.0 - q) / (q - 1.0);
        let g = self.log_jet(start as f64).scale(-sigma).exp();
        let (corr, err) = endpoint_correction(&g);
        TailSum { value: integral + corr, error_estimate: err }
    }

    /// `Σ_{n>start} 1/(x + z_n)` for real `x ≥ 0`.
    pub fn resolvent_sum(&self, start: usize, x: f64) -> TailSum {
        let (direct, start) = self.lift(start, |z| 1.0 / (x + z));
        let mut t = self.resolvent_sum_em(start, x);
        t.value += direct;
        t
    }

    fn resolvent_sum_em(&self, start: usize, x: f64) -> TailSum {
        let s0 = start as f64 + self.offset;
        let p = self.exponent;
        let c = self.coefficient;
        let integral = if x <= 0.0 {
            s0.powf(1.0 - p) / (c * (p - 1.0))
        } else {
            let width = (x / c).powf(1.0 / p);
            let w0 = s0 / width;
            if w0 > 1e12 {
                s0.powf(1.0 - p) / (c * (p - 1.0))
            } else {
                width / x * rational_tail(p, w0)
            }
        };
        let g = self.log_jet(start as f64).exp().shift(x).recip();
        let (corr, err) = endpoint_correction(&g);
        TailSum { value: integral + corr, error_estimate: err }
    }

    /// `Σ_{n>start} e^{-t z_n}` for `t > 0`.
    pub fn exp_sum(&self, start: usize, t: f64) -> TailSum {
        let (direct, start) = self.lift(start, |z| (-t * z).exp());
        let mut s = self.exp_sum_em(start, t);
        s.value += direct;
        s
    }

    fn exp_sum_em(&self, start: usize, t: f64) -> TailSum {
        let p = self.exponent;
        let y0 = t * self.zero_at(start as f64);
        if y0 > 740.0 {
            return TailSum { value: 0.0, error_estimate: 0.0 };
        }
        // Steep start: the terms die off fast enough to sum outright.
        let slope = t * p * self.zero_at(start as f64) / (start as f64 + self.offset);
        if slope > 0.1 {
            let mut acc = 0.0;
            for n in start + 1.. {
                let term = (-t * self.zero_at(n as f64)).exp();
                acc += term;
                if term <= 1e-18 * acc || term == 0.0 {
                    break;
                }
            }
            return TailSum { value: acc, error_estimate: 0.0 };
        }
        let a = 1.0 / p;
        let integral = a * (t * self.coefficient).powf(-a) * upper_incomplete_gamma(a, y0);
        let g = self.log_jet(start as f64).exp().scale(-t).exp();
        let (corr, err) = endpoint_correction(&g);
        TailSum { value: (integral + corr).max(0.0), error_estimate: err }
    }
}

/// `∫_{w0}^∞ dw/(1 + w^p)` for `p > 1`, `w0 ≥ 0`.
fn rational_tail(p: f64, w0: f64) -> f64 {
    let total = (PI / p) / (PI / p).sin();
    if w0 >= 2.0 {
        alternating_upper(p, w0)
    } else if w0 <= 0.5 {
        let ratio = w0.powf(p);
        let mut term_pow = w0;
        let mut sum = 0.0;
        for k in 0..400 {
            let term = term_pow / (k as f64 * p + 1.0);
            sum += if k % 2 == 0 { term } else { -term };
            if term < 1e-18 * sum.abs() {
                break;
            }
            term_pow *= ratio;
        }
        total - sum
    } else {
        let opts = IntervalOptions { abs_tol: 0.0, rel_tol: 1e-13, max_evals: 100_000 };
        let mid =
            integrate_interval(|w: f64| 1.0 / (1.0 + w.powf(p)), w0, 2.0, &opts).map(|r| r.value).unwrap_or(f64::NAN);
        mid + alternating_upper(p, 2.0)
    }
}

fn alternating_upper(p: f64, w0: f64) -> f64 {
    let ratio = w0.powf(-p);
    let mut term_pow = w0 * ratio;
    let mut sum = 0.0;
    for k in 0..400 {
        let term = term_pow / ((k as f64 + 1.0) * p - 1.0);
        sum += if k % 2 == 0 { term } else { -term };
        if term < 1e-18 * sum.abs() {
            break;
        }
        term_pow *= ratio;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute<F: Fn(f64) -> f64>(start: usize, f: F, terms: usize) -> f64 {
        // Summed backwards for accuracy.
        (start + 1..start + terms).rev().map(|n| f(n as f64)).sum()
    }

    #[test]
    fn power_sum_matches_brute_force() {
        let tail = PowerTail { exponent: 2.0, coefficient: 1.0, offset: 0.0 };
        let est = tail.power_sum(100, 1.0).value;
        // Σ_{n>100} 1/n² = ψ'(101) = 0.00995016666333357...
        assert!((est - 0.009_950_166_663_333_571).abs() < 1e-15, "{est}");

        let tail = PowerTail { exponent: 4.0 / 3.0, coefficient: 2.5, offset: -0.25 };
        let direct = brute(50, |n| tail.zero_at(n).powf(-1.5), 2_000_000);
        let rest = tail.power_sum(50 + 2_000_000 - 1, 1.5).value;
        let est = tail.power_sum(50, 1.5).value;
        assert!(((direct + rest) / est - 1.0).abs() < 1e-11);
    }

    #[test]
    fn resolvent_sum_matches_brute_force() {
        let tail = PowerTail { exponent: 2.0, coefficient: 9.8696, offset: -0.25 };
        for x in [0.0, 1e-6, 3.0, 1e4, 1e8] {
            let direct = brute(20, |n| 1.0 / (x + tail.zero_at(n)), 400_000);
            let rest = tail.resolvent_sum(20 + 400_000 - 1, x).value;
            let est = tail.resolvent_sum(20, x).value;
            assert!(((direct + rest) / est - 1.0).abs() < 1e-11, "x = {x}: {} vs {est}", direct + rest);
        }
    }

    #[test]
    fn rational_tail_branches_agree() {
        for p in [1.2, 4.0 / 3.0, 2.0, 3.5] {
            for w0 in [0.0, 0.3, 0.5, 0.9, 1.7, 2.0, 5.0] {
                let opts = IntervalOptions { abs_tol: 0.0, rel_tol: 1e-12, max_evals: 1_000_000 };
                let far = w0 + 1e3;
                let near = integrate_interval(|w: f64| 1.0 / (1.0 + w.powf(p)), w0, far, &opts).unwrap().value;
                let u = 1.0 / far;
                let far_part: f64 = (1..30)
                    .map(|k| {
                        let e = k as f64 * p - 1.0;
                        if k % 2 == 1 {
                            u.powf(e) / e
                        } else {
                            -u.powf(e) / e
                        }
                    })
                    .sum();
                let q = near + far_part;
                assert!(
                    (rational_tail(p, w0) / q - 1.0).abs() < 1e-10,
                    "p={p} w0={w0}: {} vs {q}",
                    rational_tail(p, w0)
                );
            }
        }
    }

    #[test]
    fn exp_sum_matches_brute_force() {
        let tail = PowerTail { exponent: 2.0, coefficient: 1.0, offset: 0.0 };
        for t in [1e-6, 1e-4, 1e-2] {
            let direct = brute(30, |n| (-t * n * n).exp(), 100_000);
            let est = tail.exp_sum(30, t).value;
            assert!((direct / est - 1.0).abs() < 1e-10, "t = {t}");
        }
        assert_eq!(tail.exp_sum(30, 10.0).value, 0.0);
    }
}
