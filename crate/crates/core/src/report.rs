//! Serialized inputs and display helpers shared by front ends.
//!
//! Exact values are always written as `"p/q"` strings. Decimal renderings
//! exist only for display and are labeled as such.

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{HomogeneousIdeal, Scalar};
use crate::error::Result;
use crate::opsub::NormalizedValue;

/// Label attached to every block of decimal approximations.
pub const APPROX_NOTE: &str = "decimal approximations for display only; exact fields are authoritative";

/// Scope of the optimal destabilizer search.
pub const KEMPF_SCOPE: &str =
    "minimum over the apartment of the standard torus; other tori are reached only through user-supplied frames";

/// An ideal as stored on disk: variable names and generator strings such as
/// `"x*z - y^2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
}

impl IdealFile {
    pub fn of(ideal: &HomogeneousIdeal) -> Self {
        IdealFile {
            name: None,
            variables: ideal.variables().to_vec(),
            generators: ideal.generator_strings(),
        }
    }

    pub fn to_ideal(&self) -> Result<HomogeneousIdeal> {
        let vars: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        HomogeneousIdeal::parse(&vars, &gens)
    }
}

/// `x` with 12 significant digits.
pub fn approx_decimal(x: &Scalar) -> String {
    decimal12(x.to_f64().unwrap_or(f64::NAN))
}

/// `numerator / sqrt(normsq)` with 12 significant digits.
pub fn approx_normalized(v: &NormalizedValue) -> String {
    decimal12(v.approx())
}

fn decimal12(x: f64) -> String {
    if x.is_zero() || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let places = (11 - exponent).clamp(0, 30) as usize;
    let s = format!("{x:.places$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
