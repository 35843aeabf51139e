//! Locale-free number formatting at a fixed count of significant digits.

use serde_json::Value;

pub const MIN_PRECISION: usize = 6;
pub const MAX_PRECISION: usize = 17;
pub const DEFAULT_PRECISION: usize = 12;

/// Formats `x` with `digits` significant digits, keeping trailing zeros.
///
/// Plain decimal notation is used while the decimal exponent lies in
/// `[-5, digits)`, scientific notation otherwise.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let digits = digits.max(1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    // the exponent after rounding, e.g. 9.99996 -> 1.0000e1
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

/// Rounds every non-integer number in a JSON tree to `digits` significant digits.
pub fn round_json(value: &mut Value, digits: usize) {
    match value {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("f64 number");
            if let Some(r) = serde_json::Number::from_f64(round_sig(x, digits)) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_json(v, digits)),
        Value::Object(map) => map.values_mut().for_each(|v| round_json(v, digits)),
        _ => {}
    }
}
