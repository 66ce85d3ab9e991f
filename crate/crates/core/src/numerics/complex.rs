use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Serde adapter writing complex values as `{"re": .., "im": ..}`.
pub mod complex_serde {
    use super::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex, D::Error> {
        let p = Parts::deserialize(d)?;
        Ok(Complex::new(p.re, p.im))
    }
}

/// Parses `RE+IMi` / `RE-IMi` (exponent notation allowed, no spaces). A bare
/// real literal is accepted as `RE+0i`.
pub fn parse_complex(s: &str) -> Result<Complex> {
    let bad = || Error::domain(format!("invalid complex literal {s:?}, expected RE+IMi"));
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im_str = &body[split..];
    let im: f64 = match im_str {
        "+" => 1.0,
        "-" => -1.0,
        _ => im_str.parse().map_err(|_| bad())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

/// Inverse of [`parse_complex`] using shortest round-trip digits.
pub fn format_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// `e^w - 1` without cancellation for small `|w|`.
pub fn expm1_complex(w: Complex) -> Complex {
    let (a, b) = (w.re, w.im);
    let half_sin = (0.5 * b).sin();
    let cos_m1 = -2.0 * half_sin * half_sin;
    Complex::new(a.exp_m1() * b.cos() + cos_m1, a.exp() * b.sin())
}

/// `log(1 + w)` (principal branch) without cancellation for small `|w|`.
pub fn ln_1p_complex(w: Complex) -> Complex {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_complex("1+1i").unwrap(), Complex::new(1.0, 1.0));
        assert_eq!(parse_complex("2+0i").unwrap(), Complex::new(2.0, 0.0));
        assert_eq!(parse_complex("-1.5e-3-2e2i").unwrap(), Complex::new(-1.5e-3, -200.0));
        assert_eq!(parse_complex("3e+2+1E-1i").unwrap(), Complex::new(300.0, 0.1));
        assert_eq!(parse_complex("30").unwrap(), Complex::new(30.0, 0.0));
        assert_eq!(parse_complex("1+i").unwrap(), Complex::new(1.0, 1.0));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1 + 1i", "abc", "1+xi", "i", "1e+i", "nan+0i"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    #[test]
    fn format_round_trips() {
        for z in [Complex::new(0.1, -0.2), Complex::new(-1e-300, 7.0), Complex::new(2.0, -0.0)] {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(back.re.to_bits(), z.re.to_bits());
            assert_eq!(back.im.to_bits(), z.im.to_bits());
        }
    }

    #[test]
    fn small_argument_helpers() {
        let w = Complex::new(1e-12, -2e-12);
        let e = expm1_complex(w);
        assert!((e - w).norm() < 1e-23);
        let l = ln_1p_complex(w);
        assert!((l - w).norm() < 1e-23);
        let w = Complex::new(0.3, 0.4);
        assert!((expm1_complex(w) - (w.exp() - 1.0)).norm() < 1e-15);
        assert!((ln_1p_complex(w) - (w + 1.0).ln()).norm() < 1e-15);
    }
}
