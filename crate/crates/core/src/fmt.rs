//! Output rendering: every number is rounded to 12 significant digits.

use serde_json::Value;

pub const SIG_DIGITS: usize = 12;

/// Rounds `x` to 12 significant digits. Non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Text form of a rounded number, identical to how it appears in JSON output.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        serde_json::Number::from_f64(round_sig(x)).map_or_else(|| x.to_string(), |n| n.to_string())
    } else {
        x.to_string()
    }
}

/// Rounds every floating-point number in a JSON tree in place.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(2.0 / 3.0 * 1e5), 66666.6666667);
        assert_eq!(round_sig(0.52 + 1e-16), 0.52);
        assert_eq!(round_sig(-0.1 - 0.2), -0.3);
        assert!(round_sig(f64::NAN).is_nan());
        assert_eq!(number(1.0), "1.0");
        assert_eq!(number(0.1 + 0.2), "0.3");
        assert_eq!(number(f64::INFINITY), "inf");
    }

    #[test]
    fn rounds_nested_json() {
        let mut v = serde_json::json!({"a": [0.1 + 0.2, 3], "b": {"c": 1.0 / 3.0}});
        round_json(&mut v);
        assert_eq!(v.to_string(), r#"{"a":[0.3,3],"b":{"c":0.333333333333}}"#);
    }
}
