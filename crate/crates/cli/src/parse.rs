use num_complex::Complex64;

/// `"re,im"` or a bare real `"re"`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.split(',').map(str::trim);
    let re = parts.next().unwrap_or_default();
    let im = parts.next().unwrap_or("0");
    if parts.next().is_some() {
        return Err(format!("expected \"re,im\", got {s:?}"));
    }
    let parse = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

/// Semicolon-separated list of `"re,im"` entries.
pub fn complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_reals() {
        assert_eq!(complex("3,0").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(complex("-1.5, 2").unwrap(), Complex64::new(-1.5, 2.0));
        assert_eq!(complex("0.25").unwrap(), Complex64::new(0.25, 0.0));
        assert!(complex("1,2,3").is_err());
        assert!(complex("x,1").is_err());
    }

    #[test]
    fn parses_lists() {
        let v = complex_list("1,0;0,1;2").unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)]);
    }
}
