//! Number rendering shared by the CSV and JSON outputs.

use subdivlab::scalar::rational_to_f64;
use subdivlab::GaussRat;

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// `v` with `digits` significant digits, plain notation for moderate
/// exponents and `d.dddde±x` otherwise.
pub fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}", trim_fraction(mantissa), exp)
    }
}

/// Exact value rendered to 15 significant digits; complex values as `a+bi`.
pub fn scalar15(x: &GaussRat) -> String {
    if x.is_real() {
        sig(rational_to_f64(&x.re), 15)
    } else {
        let re = rational_to_f64(&x.re);
        let im = rational_to_f64(&x.im);
        let sign = if im < 0.0 { "-" } else { "+" };
        format!("{}{}{}i", sig(re, 15), sign, sig(im.abs(), 15))
    }
}

/// Plain JSON number that survives a round trip, or `null` when not finite.
pub fn json_f64(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v).map(serde_json::Value::Number).unwrap_or(serde_json::Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.125, 15), "0.125");
        assert_eq!(sig(-1.0, 15), "-1");
        assert_eq!(sig(1.0 / 3.0, 15), "0.333333333333333");
        assert_eq!(sig(1e-9, 15), "1e-9");
        assert_eq!(sig(123456.0, 3), "1.23e5");
    }
}
