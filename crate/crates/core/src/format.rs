//! Fixed numeric formatting shared by every report so outputs stay
//! byte-stable.

use std::str::FromStr;

/// `count / total * 100` truncated (not rounded) to two decimals, computed in
/// integer arithmetic. `total == 0` yields `"0.00"`.
pub fn truncated_percent(count: usize, total: usize) -> String {
    if total == 0 {
        return "0.00".to_string();
    }
    let hundredths = (count as u128 * 10_000) / total as u128;
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

/// Six-decimal fixed point, with negative zero (including values that round
/// to zero) printed without a sign.
pub fn fixed6(value: f64) -> String {
    let s = format!("{value:.6}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Serializes an `f64` as a JSON number written with exactly six decimals.
pub fn serialize_fixed6<S: serde::Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    assert!(value.is_finite(), "report values are always finite");
    serde_json::Number::from_str(&fixed6(*value))
        .expect("fixed6 output is a valid JSON number")
        .serialize(s)
}

pub fn serialize_opt_fixed6<S: serde::Serializer>(value: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serialize_fixed6(v, s),
        None => s.serialize_none(),
    }
}
