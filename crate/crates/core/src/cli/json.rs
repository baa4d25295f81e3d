//! JSON form: an ordinal is an array of `[exponent, "coefficient"]` pairs,
//! exponents nested the same way, coefficients as decimal strings. Zero is `[]`.

use num_bigint::BigUint;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

pub fn to_value(x: &Ordinal) -> Value {
    Value::Array(
        x.terms()
            .iter()
            .map(|t| {
                Value::Array(vec![
                    to_value(t.exponent()),
                    Value::String(t.coefficient().to_string()),
                ])
            })
            .collect(),
    )
}

pub fn to_json(x: &Ordinal) -> String {
    to_value(x).to_string()
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub fn from_value(value: &Value) -> Result<Ordinal> {
    let terms = value
        .as_array()
        .ok_or_else(|| schema(format!("expected an array of terms, found {value}")))?;
    let terms = terms
        .iter()
        .map(|term| {
            let [exponent, coefficient] = term.as_array().map(Vec::as_slice).unwrap_or_default()
            else {
                return Err(schema(format!(
                    "expected [exponent, coefficient], found {term}"
                )));
            };
            let digits = coefficient
                .as_str()
                .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| {
                    schema(format!(
                        "coefficient must be a decimal string, found {coefficient}"
                    ))
                })?;
            let coefficient: BigUint = digits.parse().expect("ascii digits");
            Ok((from_value(exponent)?, coefficient))
        })
        .collect::<Result<Vec<_>>>()?;
    Ordinal::make(terms).map_err(|e| schema(e.to_string()))
}

pub fn from_json(text: &str) -> Result<Ordinal> {
    let value: Value = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    from_value(&value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let w = Ordinal::omega();
        assert_eq!(to_json(&Ordinal::zero()), "[]");
        assert_eq!(to_json(&Ordinal::nat(3u32)), r#"[[[],"3"]]"#);
        let x = &(&w * &Ordinal::nat(2u32)) + &Ordinal::nat(3u32);
        assert_eq!(to_json(&x), r#"[[[[[],"1"]],"2"],[[],"3"]]"#);
        assert_eq!(from_json(r#"[[[[[],"1"]],"2"],[[],"3"]]"#).unwrap(), x);
    }

    #[test]
    fn schema_errors() {
        for bad in [
            "{}",
            "[1]",
            r#"[[[],3]]"#,
            r#"[[[],"-3"]]"#,
            r#"[[[],""]]"#,
            r#"[[[],"0"]]"#,
            r#"[[[],"1"],[[[],"1"]],"1"]]"#,
            r#"[[[],"1","2"]]"#,
            "not json",
        ] {
            assert!(matches!(from_json(bad), Err(Error::Schema(_))), "{bad}");
        }
    }

    #[test]
    fn huge_coefficients_survive() {
        let big: BigUint = "98765432109876543210987654321".parse().unwrap();
        let x = Ordinal::monomial(Ordinal::omega(), big);
        assert_eq!(from_json(&to_json(&x)).unwrap(), x);
    }
}
