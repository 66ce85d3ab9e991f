use crate::error::{Error, Result};

/// Uniform nodes in the coarse scan of [`minimize_scalar`].
pub const SCAN_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub argmin: f64,
    pub min: f64,
    pub evaluations: usize,
}

/// Bounded minimization without a unimodality assumption: a uniform
/// [`SCAN_NODES`]-point scan of `[lo, hi]`, then golden-section search on the
/// two cells around the best node. Non-finite values count as `+∞`. The
/// result is never worse than the best scan node.
pub fn minimize_scalar<F: FnMut(f64) -> f64>(mut h: F, lo: f64, hi: f64, tol: f64) -> Result<Minimum> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("minimize_scalar: need lo < hi, got [{lo}, {hi}]")));
    }
    let mut eval = |x: f64| {
        let v = h(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let step = (hi - lo) / (SCAN_NODES - 1) as f64;
    let node = |i: usize| if i + 1 == SCAN_NODES { hi } else { lo + step * i as f64 };
    let mut best = (0usize, f64::INFINITY);
    for i in 0..SCAN_NODES {
        let v = eval(node(i));
        if v < best.1 {
            best = (i, v);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::NonConvergence("objective is not finite at any scan node".into()));
    }
    let mut evaluations = SCAN_NODES;
    let (mut a, mut b) = (node(best.0.saturating_sub(1)), node((best.0 + 1).min(SCAN_NODES - 1)));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (eval(c), eval(d));
    evaluations += 2;
    let tol = tol.max(4.0 * f64::EPSILON * hi.abs().max(lo.abs()));
    while (b - a).abs() > tol && evaluations < 10_000 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
        evaluations += 1;
    }
    let (x, v) = if fc < fd { (c, fc) } else { (d, fd) };
    let (argmin, min) = if v < best.1 { (x, v) } else { (node(best.0), best.1) };
    Ok(Minimum { argmin, min, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_quadratic() {
        let m = minimize_scalar(|x| (x - 0.7).powi(2), 0.0, 1.0, 1e-9).unwrap();
        assert!((m.argmin - 0.7).abs() < 1e-6);
        assert!(m.min < 1e-12);
    }

    #[test]
    fn monotone_returns_boundary() {
        let m = minimize_scalar(|x| x * x, 1.0, 2.0, 1e-9).unwrap();
        assert_eq!(m.argmin, 1.0);
        assert_eq!(m.min, 1.0);
    }

    #[test]
    fn empty_interval_is_domain_error() {
        assert!(minimize_scalar(|x| x, 1.0, 1.0, 1e-6).unwrap_err().is_domain());
        assert!(minimize_scalar(|x| x, 2.0, 1.0, 1e-6).unwrap_err().is_domain());
    }

    #[test]
    fn infinite_regions_are_skipped() {
        let m = minimize_scalar(|x| if x < 0.3 { f64::NAN } else { (x - 0.5).abs() }, 0.0, 1.0, 1e-9).unwrap();
        assert!((m.argmin - 0.5).abs() < 1e-6);
    }
}
