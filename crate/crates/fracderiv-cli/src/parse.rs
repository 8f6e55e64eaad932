//! Flag-value parsers: complex scalars written as `re` or `re±imI`, and
//! sample windows written as `start:end:count` with inclusive endpoints.

use fracderiv::Complex;

/// Parses `"1.5"`, `"1.5+2I"`, `"1.5-0.3I"` (a lowercase `i` suffix is also
/// accepted). The imaginary unit must come last and the imaginary part must
/// be written explicitly, including `1` (`"2+1I"`, not `"2+I"`).
pub fn complex(s: &str) -> Result<Complex, String> {
    let s = s.trim();
    let body = match s.strip_suffix(['I', 'i']) {
        None => {
            let re: f64 = s.parse().map_err(|_| format!("`{s}` is not a real number"))?;
            return Ok(Complex::new(re, 0.0));
        }
        Some(body) => body,
    };
    // Split at the last +/- that is neither the leading sign nor an exponent
    // sign (as in 1e-3).
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-')
            && !matches!(bytes[i - 1], b'e' | b'E')
        {
            split = Some(i);
            break;
        }
    }
    let i = split.ok_or_else(|| {
        format!("`{s}` must look like re+imI (e.g. 1.5+0.2I) or a plain real")
    })?;
    let re: f64 = body[..i]
        .parse()
        .map_err(|_| format!("`{}` is not a real number", &body[..i]))?;
    let im: f64 = body[i..]
        .parse()
        .map_err(|_| format!("`{}` is not a real number", &body[i..]))?;
    Ok(Complex::new(re, im))
}

/// An inclusive sample window `start:end:count` on the independent variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Window {
    /// The sample grid: `count` points from `start` to `end` inclusive.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| self.start + (self.end - self.start) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

pub fn window(s: &str) -> Result<Window, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("`{s}` must be start:end:count (e.g. 0:2:256)"));
    }
    let start: f64 = parts[0].parse().map_err(|_| format!("bad window start `{}`", parts[0]))?;
    let end: f64 = parts[1].parse().map_err(|_| format!("bad window end `{}`", parts[1]))?;
    let count: usize = parts[2].parse().map_err(|_| format!("bad window count `{}`", parts[2]))?;
    if !start.is_finite() || !end.is_finite() || start >= end {
        return Err(format!("window `{s}` must have finite start < end"));
    }
    if count < 2 {
        return Err(format!("window `{s}` must request at least 2 samples"));
    }
    Ok(Window { start, end, count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_reals() {
        assert_eq!(complex("3.25").unwrap(), Complex::new(3.25, 0.0));
        assert_eq!(complex("-1").unwrap(), Complex::new(-1.0, 0.0));
        assert_eq!(complex(" 2e-3 ").unwrap(), Complex::new(2e-3, 0.0));
    }

    #[test]
    fn parses_complex_forms() {
        assert_eq!(complex("1.5+2I").unwrap(), Complex::new(1.5, 2.0));
        assert_eq!(complex("1.5-0.3I").unwrap(), Complex::new(1.5, -0.3));
        assert_eq!(complex("-0.5+1i").unwrap(), Complex::new(-0.5, 1.0));
        assert_eq!(complex("1e-2+3e-4I").unwrap(), Complex::new(1e-2, 3e-4));
    }

    #[test]
    fn rejects_malformed_values() {
        assert!(complex("I").is_err());
        assert!(complex("1.5+I").is_err());
        assert!(complex("abc").is_err());
        assert!(complex("1.5 2I").is_err());
    }

    #[test]
    fn window_grid_is_inclusive() {
        let w = window("0:2:5").unwrap();
        assert_eq!(w.grid(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(w.grid().len(), w.count);
    }

    #[test]
    fn window_rejects_degenerate_inputs() {
        assert!(window("0:2").is_err());
        assert!(window("2:0:10").is_err());
        assert!(window("0:2:1").is_err());
        assert!(window("0:inf:4").is_err());
    }
}
