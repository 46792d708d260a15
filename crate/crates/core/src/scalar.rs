use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Coefficient ring for quasisymmetric and symmetric functions.
///
/// Anything signed with exact (or at least integer-valued) ring operations
/// works: `BigInt` is the default, machine integers are faster, and
/// `BigRational` or `f64` are accepted for exploratory arithmetic.
pub trait Coefficient:
    Num + Signed + PartialOrd + FromPrimitive + Clone + Debug + Display + Send + Sync + 'static
{
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count fits the coefficient type")
    }

    /// Serialized as a JSON number when the textual form parses as one,
    /// otherwise as a string (rationals).
    fn to_json(&self) -> serde_json::Value {
        let text = self.to_string();
        match serde_json::from_str::<serde_json::Number>(&text) {
            Ok(n) => serde_json::Value::Number(n),
            Err(_) => serde_json::Value::String(text),
        }
    }
}

impl<T> Coefficient for T where
    T: Num + Signed + PartialOrd + FromPrimitive + Clone + Debug + Display + Send + Sync + 'static
{
}
