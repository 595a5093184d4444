//! Command-line syntax for points, complex numbers and comma lists.
//!
//! Points are written as
//!
//! * `x0`: the base point `(1, 0, 0)`;
//! * `z0`, `2z0`, `1.5z0bar`: real multiples of `zeta0 = (1, -i, 0)` or of
//!   its conjugate;
//! * `curve:S`: the point `(cosh S, i sinh S, 0)` of `D+`;
//! * `a,b,c`: three complex coordinates such as `1,-1.5i,0.2+3i`.

use horocauchy::hyperboloid::{d_plus_curve, x0, zeta0, CVec3};
use horocauchy::quadrature::QuadratureSpec;
use num_complex::Complex64;

pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("invalid number {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number {s:?}"))
    }
}

/// Parses `3`, `-2.5`, `1.5i`, `-i`, `1+2i`, `1e-3-4.5e2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("invalid complex number {s:?}");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(t).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).map_err(|_| bad())?,
    };
    let re = if re_part.is_empty() { 0.0 } else { parse_real(re_part).map_err(|_| bad())? };
    Ok(Complex64::new(re, im))
}

pub fn parse_point(s: &str) -> Result<CVec3, String> {
    let t = s.trim();
    if t == "x0" {
        return Ok(x0().complexify());
    }
    if let Some(rest) = t.strip_prefix("curve:") {
        return Ok(d_plus_curve(parse_real(rest)?));
    }
    for (suffix, base) in [("z0bar", zeta0().conj()), ("z0", zeta0())] {
        if let Some(scale) = t.strip_suffix(suffix) {
            let c = if scale.is_empty() { 1.0 } else { parse_real(scale)? };
            return Ok(c * base);
        }
    }
    let parts: Vec<&str> = t.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "invalid point {s:?}: expected x0, [S]z0, [S]z0bar, curve:S or three comma-separated complex numbers"
        ));
    }
    let mut v = [Complex64::new(0.0, 0.0); 3];
    for (slot, p) in v.iter_mut().zip(parts) {
        *slot = parse_complex(p)?;
    }
    Ok(CVec3(v))
}

pub fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    s.split(',').map(|p| item(p.trim())).collect()
}

pub fn parse_u32(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("invalid non-negative integer {s:?}"))
}

fn parse_count(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("invalid node count {s:?}"))
}

/// Applies `--quad t_max,n_t,n_theta` and `--fiber t_max,n` to the default
/// quadrature.
pub fn quadrature(quad: Option<&str>, fiber: Option<&str>) -> Result<QuadratureSpec, String> {
    let mut q = QuadratureSpec::default();
    if let Some(s) = quad {
        let parts: Vec<&str> = s.split(',').collect();
        let [t, nt, nth] = parts[..] else {
            return Err(format!("--quad expects t_max,n_t,n_theta, got {s:?}"));
        };
        q.t_max = parse_real(t)?;
        q.n_t = parse_count(nt)?;
        q.n_theta = parse_count(nth)?;
    }
    if let Some(s) = fiber {
        let parts: Vec<&str> = s.split(',').collect();
        let [t, n] = parts[..] else {
            return Err(format!("--fiber expects t_max,n, got {s:?}"));
        };
        q.fiber_t_max = parse_real(t)?;
        q.fiber_n = parse_count(n)?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("1.5i").unwrap(), c(0.0, 1.5));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1e-3-4.5e2i").unwrap(), c(1e-3, -450.0));
        assert_eq!(parse_complex("-1-i").unwrap(), c(-1.0, -1.0));
        assert_eq!(parse_complex(" 2e+1 ").unwrap(), c(20.0, 0.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn point_forms() {
        assert_eq!(parse_point("2z0").unwrap(), 2.0 * zeta0());
        assert_eq!(parse_point("1.5z0bar").unwrap(), 1.5 * zeta0().conj());
        assert_eq!(parse_point("z0").unwrap(), zeta0());
        assert_eq!(parse_point("curve:0.7").unwrap(), d_plus_curve(0.7));
        assert_eq!(parse_point("x0").unwrap(), x0().complexify());
        assert_eq!(parse_point("1,-i,0").unwrap(), zeta0());
        assert!(parse_point("1,2").is_err());
        assert!(parse_point("qz0").is_err());
    }

    #[test]
    fn quadrature_flags() {
        let q = quadrature(Some("10,240,128"), Some("12,300")).unwrap();
        assert_eq!((q.t_max, q.n_t, q.n_theta, q.fiber_t_max, q.fiber_n), (10.0, 240, 128, 12.0, 300));
        assert!(quadrature(Some("10,240"), None).is_err());
        assert!(quadrature(None, Some("x,3")).is_err());
    }
}
