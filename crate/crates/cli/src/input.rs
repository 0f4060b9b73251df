//! Loading of command-line inputs: inline JSON or a path to a JSON file.

use std::fs;

use destab_core::algebra::{parse_rational, HomogeneousIdeal, Matrix, Scalar};
use destab_core::opsub::WeightVector;
use destab_core::report::IdealFile;
use destab_core::stability::StateSet;
use serde::de::DeserializeOwned;

use crate::Failure;

fn read_json<T: DeserializeOwned>(field: &str, arg: &str) -> Result<T, Failure> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::input(field, format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::input(field, e.to_string()))
}

pub fn ideal(arg: Option<&str>) -> Result<HomogeneousIdeal, Failure> {
    let arg = arg.ok_or_else(|| Failure::input("--ideal", "required"))?;
    let file: IdealFile = read_json("--ideal", arg)?;
    file.to_ideal().map_err(|e| Failure::core("--ideal", e))
}

pub fn weights(arg: Option<&str>) -> Result<WeightVector, Failure> {
    let arg = arg.ok_or_else(|| Failure::input("--weights", "required"))?;
    let v: Vec<i64> = read_json("--weights", arg)?;
    WeightVector::new(v).map_err(|e| Failure::core("--weights", e))
}

pub fn state(arg: Option<&str>) -> Result<StateSet, Failure> {
    let arg = arg.ok_or_else(|| Failure::input("--state", "required"))?;
    read_json("--state", arg)
}

/// Square matrix whose entries are integers or `"p/q"` strings.
pub fn frame(arg: &str) -> Result<Matrix, Failure> {
    let rows: Vec<Vec<serde_json::Value>> = read_json("--frame", arg)?;
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for row in rows {
        if row.len() != n {
            return Err(Failure::input("--frame", "matrix must be square"));
        }
        let parsed = row
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(x) if x.is_i64() => Ok(Scalar::from_integer(x.as_i64().unwrap_or(0).into())),
                serde_json::Value::String(s) => parse_rational(s).map_err(|e| Failure::core("--frame", e)),
                other => Err(Failure::input("--frame", format!("entry {other} is not an integer or \"p/q\""))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Ok(Matrix::from_rows(out))
}
