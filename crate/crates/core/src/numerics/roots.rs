use crate::error::{Error, Result};

pub const MAX_ROOT_ITERATIONS: usize = 200;

/// Final state of a bracketed root search: `root` is the endpoint of the
/// last bracket `[root, other]` with the smaller residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub root: f64,
    pub f_root: f64,
    pub other: f64,
    pub f_other: f64,
    pub iterations: usize,
}

/// Root of `h` in `[lo, hi]`, located to a bracket of width about `tol`.
pub fn find_root_bracketed<F: FnMut(f64) -> f64>(h: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    bracketed_root(h, lo, hi, tol).map(|b| b.root)
}

/// As [`find_root_bracketed`] for an integrand that can fail; the first
/// evaluation error aborts the search.
pub fn try_find_root_bracketed<F: FnMut(f64) -> Result<f64>>(mut h: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let mut failure = None;
    let found = bracketed_root(
        |x| match h(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => found.map(|b| b.root),
    }
}

/// Brent's method: inverse quadratic / secant steps, falling back to
/// bisection whenever the interpolated step leaves the bracket or stalls.
pub fn bracketed_root<F: FnMut(f64) -> f64>(mut h: F, lo: f64, hi: f64, tol: f64) -> Result<RootBracket> {
    if !(lo.is_finite() && hi.is_finite() && tol > 0.0) {
        return Err(Error::domain(format!("bracketed_root: bad input lo={lo} hi={hi} tol={tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (h(a), h(b));
    if fa == 0.0 {
        return Ok(RootBracket { root: a, f_root: fa, other: a, f_other: fa, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(RootBracket { root: b, f_root: fb, other: b, f_other: fb, iterations: 0 });
    }
    if !(fa * fb < 0.0) {
        return Err(Error::Bracket { lo, hi, f_lo: fa, f_hi: fb });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for iter in 0..MAX_ROOT_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(RootBracket { root: b, f_root: fb, other: c, f_other: fc, iterations: iter });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = h(b);
        if !fb.is_finite() {
            return Err(Error::NonConvergence(format!("root function not finite at {b}")));
        }
    }
    Err(Error::NonConvergence(format!("no root to tolerance {tol} after {MAX_ROOT_ITERATIONS} iterations")))
}
