//! JSON number formatting for reports.
//!
//! Finite numbers are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64` and keeps the text independent of the shortest-
//! representation algorithm. JSON has no infinities, so non-finite values
//! become the strings `"inf"`, `"-inf"` and `"nan"`.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_nan() {
            serializer.serialize_str("nan")
        } else if v.is_infinite() {
            serializer.serialize_str(if v > 0.0 { "inf" } else { "-inf" })
        } else {
            RawValue::from_string(format!("{v:.16e}"))
                .expect("exponent notation is valid JSON")
                .serialize(serializer)
        }
    }
}

impl From<f64> for Real {
    fn from(v: f64) -> Self {
        Real(v)
    }
}

pub fn reals(values: &[f64]) -> Vec<Real> {
    values.iter().copied().map(Real).collect()
}

/// One compact JSON line, without the trailing newline.
pub fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types always serialize")
}
