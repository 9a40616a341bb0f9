//! Value parsers for command-line flags.

/// A decimal or an exact fraction `p/q`.
pub fn number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("`{s}` is not a number or fraction"))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| format!("`{s}` is not a number or fraction"))?;
            if q == 0.0 {
                return Err(format!("`{s}` has a zero denominator"));
            }
            p / q
        }
        None => s
            .parse()
            .map_err(|_| format!("`{s}` is not a number or fraction"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated values, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = number(p)?;
    }
    Ok(out)
}

/// `a1,a2,a3`.
pub fn constants(s: &str) -> Result<[f64; 3], String> {
    list::<3>(s)
}

/// `x0,x1,y0,y1`.
pub fn bounds(s: &str) -> Result<[f64; 4], String> {
    list::<4>(s)
}
