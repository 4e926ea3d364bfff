//! Deterministic number formatting.

/// Rounds to 15 significant digits and prints the shortest decimal that
/// reads back to the rounded value. Negative zero prints as `0`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    format!("{}", round15(x))
}

pub fn round15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let v: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// JSON number (rounded like [`num`]); non-finite values become `null`.
pub fn json_num(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(round15(x))
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}
