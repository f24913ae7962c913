//! Fixed numeric output.

/// Magnitudes below this print as zero.
pub const SNAP: f64 = 1e-10;

/// `x` to 12 significant digits without trailing zeros.
pub fn fmt_f64(x: f64) -> String {
    if x.abs() < SNAP {
        return "0".to_string();
    }
    let s = format!("{:.11e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mantissa), exp)
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_f64(2.0), "2");
        assert_eq!(fmt_f64(-1e-14), "0");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f64(2f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_f64(-0.5), "-0.5");
        assert_eq!(fmt_f64(1.5e20), "1.5e20");
        assert_eq!(fmt_f64(1.0 - 1e-13), "1");
    }
}
