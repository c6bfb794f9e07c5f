//! Byte-stable number formatting.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Significant digits used when `ZECK_FLOAT_DIGITS` is unset or invalid.
pub const DEFAULT_DIGITS: usize = 12;

/// Print precision from `ZECK_FLOAT_DIGITS` (1..=17), else the default.
pub fn digits_from_env() -> usize {
    match std::env::var("ZECK_FLOAT_DIGITS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => d,
            _ => {
                eprintln!("warning: ignoring ZECK_FLOAT_DIGITS={v:?} (expected 1..=17)");
                DEFAULT_DIGITS
            }
        },
        Err(_) => DEFAULT_DIGITS,
    }
}

/// `%g`-style formatting: `digits` significant digits, trailing zeros
/// removed, scientific notation with a lowercase `e` outside `[1e-4, 10^digits)`.
pub fn fmt_float(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    // Round once in scientific form; the exponent after rounding decides the layout.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A JSON number holding exactly the formatted decimal text.
pub fn json_float(x: f64, digits: usize) -> serde_json::Value {
    match fmt_float(x, digits).parse::<serde_json::Number>() {
        Ok(n) => serde_json::Value::Number(n),
        Err(_) => serde_json::Value::Null,
    }
}

/// A JSON integer of any size.
pub fn json_int(n: &BigUint) -> serde_json::Value {
    serde_json::Value::Number(n.to_string().parse().expect("decimal integers are JSON numbers"))
}

/// Natural logarithm of an arbitrarily large positive integer.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}
