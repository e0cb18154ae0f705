//! Complex literals on the command line.
//!
//! A single value is `re` or `re,im`. A list is comma separated and each item
//! is `re` or a `a+bi` literal, so `0.3,0.1+0.2i,0` is three values.

use std::str::FromStr;

use schwarz_regions::Complex64;

pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let parts: Vec<&str> = t.split(',').collect();
    match parts.as_slice() {
        [re] => item(re),
        [re, im] => Ok(Complex64::new(real(re)?, real(im)?)),
        _ => Err(format!("malformed complex literal {s:?}: expected `re` or `re,im`")),
    }
}

pub fn complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(item).collect()
}

pub fn real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("malformed number {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number {s:?}"))
    }
}

fn item(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if let Ok(v) = real(t) {
        return Ok(Complex64::new(v, 0.0));
    }
    let z = Complex64::from_str(t).map_err(|_| format!("malformed complex literal {s:?}"))?;
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite complex literal {s:?}"))
    }
}
