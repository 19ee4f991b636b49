//! JSON encodings of the operator specifications, coefficient tables and
//! reports used by the command-line tool.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::averaging::{AveragingCase, AveragingSpec};
use crate::decomp::{DecompCase, DecompositionSpec};
use crate::error::Error;
use crate::field::{FieldElement, QuadExt, Rational};
use crate::poly::{Monomial, OperatorRule, Term};
use crate::rbo::{build_rbo, vieillard_baron, RBFamily, Theta};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    Rational::from_str(s).map_err(|e| parse_err(format!("bad rational '{s}': {e}")))
}

/// A field element from either a bare string ("3", "-1/2", "1+2*sqrt(5)")
/// or an explicit quadratic triple {"a": ..., "b": ..., "D": ...}.
pub fn field_from_value(v: &Value) -> Result<FieldElement, Error> {
    match v {
        Value::String(s) => FieldElement::from_str(s),
        Value::Number(n) => {
            FieldElement::from_str(&n.to_string()).map_err(|_| {
                parse_err(format!("non-integer number {n}; pass rationals as strings"))
            })
        }
        Value::Object(map) => {
            let field = |key: &str| -> Result<Rational, Error> {
                match map.get(key) {
                    Some(Value::String(s)) => parse_rational(s),
                    Some(Value::Number(n)) => parse_rational(&n.to_string()),
                    _ => Err(parse_err(format!("missing field '{key}'"))),
                }
            };
            Ok(FieldElement::quad(field("a")?, field("b")?, field("D")?))
        }
        other => Err(parse_err(format!("cannot read a field element from {other}"))),
    }
}

pub fn field_to_value(x: &FieldElement) -> Value {
    match x {
        FieldElement::Rat(r) => Value::String(r.to_string()),
        FieldElement::Quad(QuadExt { a, b, d }) => json!({
            "a": a.to_string(),
            "b": b.to_string(),
            "D": d.to_string(),
        }),
    }
}

fn get<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value, Error> {
    map.get(key)
        .ok_or_else(|| parse_err(format!("missing field '{key}'")))
}

fn get_field(map: &Map<String, Value>, key: &str) -> Result<FieldElement, Error> {
    field_from_value(get(map, key)?)
}

fn get_u32(map: &Map<String, Value>, key: &str) -> Result<u32, Error> {
    get(map, key)?
        .as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| parse_err(format!("field '{key}' must be a small natural number")))
}

fn get_i64(map: &Map<String, Value>, key: &str) -> Result<i64, Error> {
    get(map, key)?
        .as_i64()
        .ok_or_else(|| parse_err(format!("field '{key}' must be an integer")))
}

fn get_bool_opt(map: &Map<String, Value>, key: &str) -> Result<bool, Error> {
    match map.get(key) {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(other) => Err(parse_err(format!("field '{key}' must be a boolean, got {other}"))),
    }
}

fn get_theta(map: &Map<String, Value>) -> Result<Theta, Error> {
    match map.get("theta") {
        None => Ok(Theta::Zero),
        Some(v) => {
            let x = field_from_value(v)?;
            if x.is_zero() {
                Ok(Theta::Zero)
            } else if x == FieldElement::from_int(-1) {
                Ok(Theta::NegOne)
            } else {
                Err(parse_err("theta must be 0 or -1"))
            }
        }
    }
}

fn as_object(v: &Value) -> Result<&Map<String, Value>, Error> {
    v.as_object()
        .ok_or_else(|| parse_err(format!("expected a JSON object, got {v}")))
}

pub fn averaging_spec_from_json(v: &Value) -> Result<AveragingSpec, Error> {
    let map = as_object(v)?;
    let case = match get(map, "case")?.as_str().unwrap_or_default() {
        "Case1" => AveragingCase::Case1 {
            r: get_u32(map, "r")?,
        },
        "Case2" => AveragingCase::Case2 {
            r: get_u32(map, "r")?,
            alpha: get_field(map, "alpha")?,
        },
        "Case3" => AveragingCase::Case3,
        "Case4" => AveragingCase::Case4,
        "Case5" => AveragingCase::Case5 {
            alpha: get_field(map, "alpha")?,
            beta: get_field(map, "beta")?,
        },
        other => return Err(parse_err(format!("unknown averaging case '{other}'"))),
    };
    AveragingSpec::new(case, get_bool_opt(map, "swapped")?)
}

pub fn averaging_spec_to_json(spec: &AveragingSpec) -> Value {
    let mut map = Map::new();
    match &spec.case {
        AveragingCase::Case1 { r } => {
            map.insert("case".into(), "Case1".into());
            map.insert("r".into(), (*r).into());
        }
        AveragingCase::Case2 { r, alpha } => {
            map.insert("case".into(), "Case2".into());
            map.insert("r".into(), (*r).into());
            map.insert("alpha".into(), field_to_value(alpha));
        }
        AveragingCase::Case3 => {
            map.insert("case".into(), "Case3".into());
        }
        AveragingCase::Case4 => {
            map.insert("case".into(), "Case4".into());
        }
        AveragingCase::Case5 { alpha, beta } => {
            map.insert("case".into(), "Case5".into());
            map.insert("alpha".into(), field_to_value(alpha));
            map.insert("beta".into(), field_to_value(beta));
        }
    }
    map.insert("swapped".into(), spec.swapped.into());
    Value::Object(map)
}

pub fn decomposition_spec_from_json(v: &Value) -> Result<DecompositionSpec, Error> {
    let map = as_object(v)?;
    let rational_slope = |map: &Map<String, Value>| -> Result<Rational, Error> {
        match get(map, "slope")? {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(parse_err(format!("slope must be a rational string, got {other}"))),
        }
    };
    let case = match get(map, "case")?.as_str().unwrap_or_default() {
        "I" => DecompCase::I,
        "II" => DecompCase::II,
        "III" => DecompCase::III,
        "IV" => DecompCase::IV {
            slope: rational_slope(map)?,
        },
        "V" => DecompCase::V {
            slope: rational_slope(map)?,
        },
        "VI" => DecompCase::VI {
            slope: field_from_value(get(map, "slope")?)?,
        },
        "HalfPlane" => DecompCase::HalfPlane {
            shift: get_i64(map, "shift")?,
        },
        other => return Err(parse_err(format!("unknown decomposition case '{other}'"))),
    };
    DecompositionSpec::new(case, get_bool_opt(map, "swapped")?)
}

pub fn decomposition_spec_to_json(spec: &DecompositionSpec) -> Value {
    let mut map = Map::new();
    match &spec.case {
        DecompCase::I => {
            map.insert("case".into(), "I".into());
        }
        DecompCase::II => {
            map.insert("case".into(), "II".into());
        }
        DecompCase::III => {
            map.insert("case".into(), "III".into());
        }
        DecompCase::IV { slope } => {
            map.insert("case".into(), "IV".into());
            map.insert("slope".into(), Value::String(slope.to_string()));
        }
        DecompCase::V { slope } => {
            map.insert("case".into(), "V".into());
            map.insert("slope".into(), Value::String(slope.to_string()));
        }
        DecompCase::VI { slope } => {
            map.insert("case".into(), "VI".into());
            map.insert("slope".into(), field_to_value(slope));
        }
        DecompCase::HalfPlane { shift } => {
            map.insert("case".into(), "HalfPlane".into());
            map.insert("shift".into(), (*shift).into());
        }
    }
    map.insert("swapped".into(), spec.swapped.into());
    Value::Object(map)
}

pub fn rb_family_from_json(v: &Value) -> Result<RBFamily, Error> {
    let map = as_object(v)?;
    let family = match get(map, "family")?.as_str().unwrap_or_default() {
        "FromAveraging" => RBFamily::FromAveraging(averaging_spec_from_json(get(map, "spec")?)?),
        "Splitting" => RBFamily::Splitting {
            decomp: decomposition_spec_from_json(get(map, "decomp")?)?,
            lambda: get_field(map, "lambda")?,
        },
        "Case1R0" => RBFamily::Case1R0 {
            beta: get_field(map, "beta")?,
            gamma: get_field(map, "gamma")?,
            theta: get_theta(map)?,
        },
        "Case1" => RBFamily::Case1 {
            r: get_u32(map, "r")?,
            rho: get_field(map, "rho")?,
            alpha10: get_field(map, "alpha10")?,
            theta: get_theta(map)?,
        },
        "Case5Const" => RBFamily::Case5Const {
            alpha: get_field(map, "alpha")?,
            beta: get_field(map, "beta")?,
            theta: get_theta(map)?,
        },
        "R1General" => RBFamily::R1General {
            q0: get_field(map, "q0")?,
            q1: get_field(map, "q1")?,
            q2: get_field(map, "q2")?,
            theta: get_theta(map)?,
        },
        "R1Q0EqQ1" => RBFamily::R1Q0EqQ1 {
            q0: get_field(map, "q0")?,
        },
        "R1Q0Run" => RBFamily::R1Q0Run {
            q0: get_field(map, "q0")?,
            qn: get_field(map, "qn")?,
            n: get_u32(map, "n")?,
            theta: get_theta(map)?,
        },
        "R1Q0EqQ2" => RBFamily::R1Q0EqQ2 {
            q0: get_field(map, "q0")?,
            q1: get_field(map, "q1")?,
        },
        "R1Q1EqQ2" => RBFamily::R1Q1EqQ2 {
            q0: get_field(map, "q0")?,
            q1: get_field(map, "q1")?,
            theta: get_theta(map)?,
        },
        "Fibonacci" => RBFamily::Fibonacci {
            a: get_field(map, "a")?,
            b: get_field(map, "b")?,
        },
        "Custom" => {
            let rows = get(map, "table")?
                .as_array()
                .ok_or_else(|| parse_err("'table' must be an array"))?;
            let mut entries = BTreeMap::new();
            for row in rows {
                let row = as_object(row)?;
                let mono = Monomial::new(get_i64(row, "n")?, get_i64(row, "m")?);
                let image = as_object(get(row, "image")?)?;
                let term = Term {
                    coeff: get_field(row, "coeff")?,
                    mono: Monomial::new(get_i64(image, "n")?, get_i64(image, "m")?),
                };
                entries.insert(mono, term);
            }
            RBFamily::Custom {
                weight: get_field(map, "weight")?,
                entries,
            }
        }
        other => return Err(parse_err(format!("unknown family '{other}'"))),
    };
    Ok(family)
}

/// Builds the rule named by a family JSON. "VieillardBaron" is accepted as
/// a synthetic family name for the weight -1 example operator.
pub fn rule_from_json(v: &Value) -> Result<OperatorRule, Error> {
    let map = as_object(v)?;
    if get(map, "family")?.as_str() == Some("VieillardBaron") {
        return Ok(vieillard_baron());
    }
    build_rbo(&rb_family_from_json(v)?)
}

/// Coefficient table of a rule over the exponent rectangle
/// 0 <= n <= max_n, 0 <= m <= max_m, rows sorted by (n, m); monomials in
/// the kernel are omitted.
pub fn table_to_json(
    family: &str,
    params: Value,
    rule: &OperatorRule,
    max_n: i64,
    max_m: i64,
) -> Value {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for m in 0..=max_m {
            if let Some(term) = rule.image_of(Monomial::new(n, m)) {
                rows.push(json!({
                    "n": n,
                    "m": m,
                    "coeff": term.coeff.to_string(),
                    "image": {"n": term.mono.n, "m": term.mono.m},
                }));
            }
        }
    }
    let weight = rule
        .weight()
        .map(|w| w.to_string())
        .unwrap_or_else(|| "none".into());
    json!({
        "family": family,
        "params": params,
        "weight": weight,
        "table": rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn field_values_round_trip() {
        for s in ["3", "-1/2", "1+2*sqrt(5)"] {
            let x = FieldElement::from_str(s).unwrap();
            assert_eq!(field_from_value(&field_to_value(&x)).unwrap(), x);
        }
        let v = json!({"a": "0", "b": "1", "D": "2"});
        let x = field_from_value(&v).unwrap();
        assert_eq!(x, FieldElement::quad(rat(0, 1), rat(1, 1), rat(2, 1)));
    }

    #[test]
    fn averaging_spec_round_trip() {
        let v = json!({"case": "Case2", "r": 1, "alpha": "3", "swapped": false});
        let spec = averaging_spec_from_json(&v).unwrap();
        assert_eq!(averaging_spec_to_json(&spec), v);
    }

    #[test]
    fn decomposition_spec_round_trip() {
        for v in [
            json!({"case": "IV", "slope": "3/2", "swapped": false}),
            json!({"case": "VI", "slope": {"a": "0", "b": "1", "D": "2"}, "swapped": true}),
            json!({"case": "HalfPlane", "shift": 2, "swapped": false}),
        ] {
            let spec = decomposition_spec_from_json(&v).unwrap();
            assert_eq!(decomposition_spec_to_json(&spec), v);
        }
    }

    #[test]
    fn family_json_builds_rules() {
        let fib = json!({"family": "Fibonacci", "a": "0", "b": "1"});
        let rule = rule_from_json(&fib).unwrap();
        assert_eq!(rule.weight(), Some(&FieldElement::one()));
        let vb = rule_from_json(&json!({"family": "VieillardBaron"})).unwrap();
        assert_eq!(vb.weight(), Some(&FieldElement::from_int(-1)));
    }

    #[test]
    fn custom_table_round_trips_through_builder() {
        let v = json!({
            "family": "Custom",
            "weight": "1",
            "table": [
                {"n": 0, "m": 0, "coeff": "-1", "image": {"n": 0, "m": 0}},
                {"n": 1, "m": 0, "coeff": "-5", "image": {"n": 0, "m": 1}},
            ],
        });
        let rule = rule_from_json(&v).unwrap();
        let t = rule.image_of(Monomial::new(1, 0)).unwrap();
        assert_eq!(t.coeff, FieldElement::from_int(-5));
        assert!(rule.image_of(Monomial::new(2, 2)).is_none());
    }

    #[test]
    fn bad_inputs_are_parse_errors() {
        assert!(rb_family_from_json(&json!({"family": "Nope"})).is_err());
        assert!(averaging_spec_from_json(&json!({"case": "Case2", "r": 1})).is_err());
        assert!(field_from_value(&json!(1.5)).is_err());
    }
}
