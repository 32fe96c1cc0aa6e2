//! Shell-safe complex literals: `a`, `bi`, `a+bi`, `a-bi`, with optional
//! exponents (`1e-3-2.5e2i`) and bare `i` / `-i`.

use lfadjoint::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return real(s).map(|re| Complex64::new(re, 0.0));
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, imaginary(&body[k..])?),
        None => (0.0, imaginary(body)?),
    };
    Ok(Complex64::new(re, im))
}

fn real(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("invalid number '{s}'"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("non-finite number '{s}'"))
    }
}

fn imaginary(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s),
    }
}

/// Comma-separated list of complex literals.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(parse_complex).collect()
}

/// Exactly four coefficients `a,b,c,d`.
pub fn parse_map(s: &str) -> Result<[Complex64; 4], String> {
    let v = parse_complex_list(s)?;
    v.try_into()
        .map_err(|v: Vec<_>| format!("a map needs 4 coefficients a,b,c,d, got {}", v.len()))
}
