//! JSON forms of classified equations.
//!
//! Every document is an object with `class`, `vars` and `equations`; exact
//! numbers are decimal strings. Linear systems may instead be given in
//! matrix form `{"A": [[..]], "b": [..]}` (optionally with `class` and
//! `vars`).
//!
//! ```json
//! {"class": "linear", "vars": ["x", "y", "z"],
//!  "equations": [{"coefficients": ["1", "1", "-1"], "rhs": "0"}]}
//! {"class": "twovar", "vars": ["x", "y"],
//!  "equations": [[{"coef": "1", "exp": [2, 0]}, {"coef": "-1", "exp": [0, 1]}]]}
//! {"class": "polyexp", "vars": ["x", "y", "z"], "exponent_vars": ["x", "y"],
//!  "parameter": "z",
//!  "equations": [{"terms": [{"poly": [..], "character": ["2", "3"], "f": null}]}]}
//! ```

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::ast::EquationSystem;
use super::classify::{default_vars, EquationClass, GeneralSystem, LinearSystem, TwoVarSystem};
use super::serde_num::{int_from_value, rat_from_value, rat_to_string};
use crate::algebra::{MultiPoly, RatMatrix, UniPoly};
use crate::polyexp::{PolyExpEquation, PolyExpTerm};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema error at {path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        path: path.into(),
        message: message.into(),
    }
}

pub fn poly_to_value(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .into_iter()
            .map(|(e, c)| json!({"coef": rat_to_string(c), "exp": e}))
            .collect(),
    )
}

fn unipoly_to_value(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(rat_to_string(c))).collect())
}

pub fn class_to_value(class: &EquationClass) -> Value {
    match class {
        EquationClass::Linear(s) => {
            let equations: Vec<Value> = (0..s.a.rows())
                .map(|i| {
                    json!({
                        "coefficients": s.a.row(i).iter().map(rat_to_string).collect::<Vec<_>>(),
                        "rhs": rat_to_string(&s.b[i]),
                    })
                })
                .collect();
            json!({"class": "linear", "vars": s.vars, "equations": equations})
        }
        EquationClass::TwoVar(s) => json!({
            "class": "twovar",
            "vars": s.vars,
            "equations": s.polys.iter().map(poly_to_value).collect::<Vec<_>>(),
        }),
        EquationClass::General(s) => json!({
            "class": "general",
            "vars": s.vars,
            "equations": s.polys.iter().map(poly_to_value).collect::<Vec<_>>(),
        }),
        EquationClass::PolyExp(e) => {
            let terms: Vec<Value> = e
                .terms()
                .iter()
                .map(|t| {
                    json!({
                        "poly": poly_to_value(&t.poly),
                        "character": t.character.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                        "f": t.f.as_ref().map(unipoly_to_value),
                    })
                })
                .collect();
            json!({
                "class": "polyexp",
                "vars": e.poly_vars(),
                "exponent_vars": e.exponent_vars(),
                "parameter": e.parameter(),
                "equations": [{"terms": terms}],
            })
        }
    }
}

pub fn to_json(class: &EquationClass) -> String {
    serde_json::to_string_pretty(&class_to_value(class)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<EquationClass, SchemaError> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))?;
    from_value(&v)
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), SchemaError> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(schema(
                format!("{path}.{k}"),
                format!("unknown field (allowed: {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, SchemaError> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{path}.{key}"), "missing field"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, SchemaError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, SchemaError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>, SchemaError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema(format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn rat_at(v: &Value, path: &str) -> Result<Rat, SchemaError> {
    rat_from_value(v).map_err(|m| schema(path, m))
}

fn poly_from_value(v: &Value, vars: &[String], path: &str) -> Result<MultiPoly, SchemaError> {
    let mut terms = Vec::new();
    for (i, t) in as_array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let obj = as_object(t, &p)?;
        check_keys(obj, &["coef", "exp"], &p)?;
        let coef = rat_at(field(obj, "coef", &p)?, &format!("{p}.coef"))?;
        let exp: Vec<u32> = as_array(field(obj, "exp", &p)?, &format!("{p}.exp"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|k| u32::try_from(k).ok())
                    .ok_or_else(|| schema(format!("{p}.exp"), "expected natural numbers"))
            })
            .collect::<Result<_, _>>()?;
        if exp.len() != vars.len() {
            return Err(schema(
                format!("{p}.exp"),
                format!("expected {} exponents", vars.len()),
            ));
        }
        terms.push((exp, coef));
    }
    MultiPoly::from_terms(vars.to_vec(), terms).map_err(|e| schema(path, e.to_string()))
}

pub fn from_value(v: &Value) -> Result<EquationClass, SchemaError> {
    let obj = as_object(v, "$")?;
    let class = match obj.get("class") {
        Some(c) => c
            .as_str()
            .ok_or_else(|| schema("$.class", "expected a string"))?
            .to_string(),
        None if obj.contains_key("A") => "linear".to_string(),
        None => return Err(schema("$.class", "missing field")),
    };
    match class.as_str() {
        "linear" if obj.contains_key("A") => linear_matrix_form(obj),
        "linear" => {
            check_keys(obj, &["class", "vars", "equations"], "$")?;
            let vars = string_list(field(obj, "vars", "$")?, "$.vars")?;
            let mut rows = Vec::new();
            let mut b = Vec::new();
            for (i, e) in as_array(field(obj, "equations", "$")?, "$.equations")?.iter().enumerate() {
                let p = format!("$.equations[{i}]");
                let eo = as_object(e, &p)?;
                check_keys(eo, &["coefficients", "rhs"], &p)?;
                let row: Vec<Rat> = as_array(field(eo, "coefficients", &p)?, &p)?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| rat_at(x, &format!("{p}.coefficients[{j}]")))
                    .collect::<Result<_, _>>()?;
                if row.len() != vars.len() {
                    return Err(schema(
                        format!("{p}.coefficients"),
                        format!("expected {} coefficients", vars.len()),
                    ));
                }
                rows.push(row);
                b.push(rat_at(field(eo, "rhs", &p)?, &format!("{p}.rhs"))?);
            }
            let a = if rows.is_empty() {
                RatMatrix::zeros(0, vars.len())
            } else {
                RatMatrix::from_rows(rows).map_err(|e| schema("$.equations", e.to_string()))?
            };
            Ok(EquationClass::Linear(
                LinearSystem::new(vars, a, b).map_err(|m| schema("$", m))?,
            ))
        }
        "twovar" | "general" => {
            check_keys(obj, &["class", "vars", "equations"], "$")?;
            let vars = string_list(field(obj, "vars", "$")?, "$.vars")?;
            let polys = as_array(field(obj, "equations", "$")?, "$.equations")?
                .iter()
                .enumerate()
                .map(|(i, p)| poly_from_value(p, &vars, &format!("$.equations[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            if class == "twovar" {
                if vars.len() > 2 {
                    return Err(schema("$.vars", "twovar systems have at most two variables"));
                }
                if let Some(i) = polys.iter().position(|p| p.degree() < 1) {
                    return Err(schema(
                        format!("$.equations[{i}]"),
                        "twovar polynomials must have degree at least 1",
                    ));
                }
                Ok(EquationClass::TwoVar(TwoVarSystem { vars, polys }))
            } else {
                Ok(EquationClass::General(GeneralSystem { vars, polys }))
            }
        }
        "polyexp" => {
            check_keys(
                obj,
                &["class", "vars", "exponent_vars", "parameter", "equations"],
                "$",
            )?;
            let vars = string_list(field(obj, "vars", "$")?, "$.vars")?;
            let exponent_vars = string_list(field(obj, "exponent_vars", "$")?, "$.exponent_vars")?;
            let parameter = match obj.get("parameter") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => return Err(schema("$.parameter", "expected a string or null")),
            };
            let eqs = as_array(field(obj, "equations", "$")?, "$.equations")?;
            if eqs.len() != 1 {
                return Err(schema("$.equations", "polyexp documents hold exactly one equation"));
            }
            let eo = as_object(&eqs[0], "$.equations[0]")?;
            check_keys(eo, &["terms"], "$.equations[0]")?;
            let mut terms = Vec::new();
            for (i, t) in as_array(field(eo, "terms", "$.equations[0]")?, "$.equations[0].terms")?
                .iter()
                .enumerate()
            {
                let p = format!("$.equations[0].terms[{i}]");
                let to = as_object(t, &p)?;
                check_keys(to, &["poly", "character", "f"], &p)?;
                let poly = poly_from_value(field(to, "poly", &p)?, &vars, &format!("{p}.poly"))?;
                let character = as_array(field(to, "character", &p)?, &format!("{p}.character"))?
                    .iter()
                    .map(|x| int_from_value(x).map_err(|m| schema(format!("{p}.character"), m)))
                    .collect::<Result<Vec<_>, _>>()?;
                let f = match to.get("f") {
                    None | Some(Value::Null) => None,
                    Some(fv) => Some(UniPoly::new(
                        as_array(fv, &format!("{p}.f"))?
                            .iter()
                            .map(|x| rat_at(x, &format!("{p}.f")))
                            .collect::<Result<Vec<_>, _>>()?,
                    )),
                };
                terms.push(PolyExpTerm { poly, f, character });
            }
            let eq = PolyExpEquation::new(exponent_vars, parameter, terms)
                .map_err(|e| schema("$", e.to_string()))?;
            if eq.poly_vars() != vars {
                return Err(schema(
                    "$.vars",
                    "vars must be the exponent variables followed by the parameter",
                ));
            }
            Ok(EquationClass::PolyExp(eq))
        }
        other => Err(schema("$.class", format!("unknown class `{other}`"))),
    }
}

fn linear_matrix_form(obj: &Map<String, Value>) -> Result<EquationClass, SchemaError> {
    check_keys(obj, &["class", "vars", "A", "b"], "$")?;
    let rows: Vec<Vec<Rat>> = as_array(field(obj, "A", "$")?, "$.A")?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            as_array(r, &format!("$.A[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| rat_at(x, &format!("$.A[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let a = RatMatrix::from_rows(rows).map_err(|e| schema("$.A", e.to_string()))?;
    let b = match obj.get("b") {
        Some(bv) => as_array(bv, "$.b")?
            .iter()
            .enumerate()
            .map(|(i, x)| rat_at(x, &format!("$.b[{i}]")))
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![Rat::from_integer(0.into()); a.rows()],
    };
    let vars = match obj.get("vars") {
        Some(v) => string_list(v, "$.vars")?,
        None => default_vars(a.cols()),
    };
    Ok(EquationClass::Linear(
        LinearSystem::new(vars, a, b).map_err(|m| schema("$", m))?,
    ))
}

pub fn ast_to_json(system: &EquationSystem) -> String {
    serde_json::to_string(system).expect("serializable")
}

pub fn ast_from_json(text: &str) -> Result<EquationSystem, SchemaError> {
    serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classify, parse_equation_text};

    const EXAMPLE: &str =
        "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y + (x*y - z + 3)*11^x*13^y = 0";

    fn class_of(src: &str) -> EquationClass {
        classify(&parse_equation_text(src).unwrap()).unwrap().class
    }

    #[test]
    fn example_round_trips() {
        let c = class_of(EXAMPLE);
        let text = to_json(&c);
        assert_eq!(from_json(&text).unwrap(), c);
        let ast = parse_equation_text(EXAMPLE).unwrap();
        assert_eq!(ast_from_json(&ast_to_json(&ast)).unwrap(), ast);
    }

    #[test]
    fn matrix_shorthand() {
        let c = from_json(r#"{"A":[[1,1,-1]],"b":[0]}"#).unwrap();
        let EquationClass::Linear(s) = c else { panic!() };
        assert_eq!(s.a, RatMatrix::from_int_rows(&[vec![1, 1, -1]]).unwrap());
        assert_eq!(s.vars, vec!["x1", "x2", "x3"]);
    }

    #[test]
    fn malformed_field_rejected() {
        let e = from_json(r#"{"A":[[1,1,-1]],"bb":[0]}"#).unwrap_err();
        assert_eq!(e.path, "$.bb");
        let e = from_json(r#"{"class":"linear","vars":["x"],"equation":[]}"#).unwrap_err();
        assert!(e.path.starts_with("$.equation"));
    }

    #[test]
    fn big_integers_are_strings() {
        let c = class_of("123456789012345678901234567890*x = y");
        let text = to_json(&c);
        assert!(text.contains("\"123456789012345678901234567890\""));
        assert_eq!(from_json(&text).unwrap(), c);
    }

    #[test]
    fn all_classes_round_trip() {
        for src in ["x + y = z", "x^2 - y = 2 ; x = y^3", "x*y = z", "(x - 2)*2^x = 1/3"] {
            let c = class_of(src);
            assert_eq!(from_json(&to_json(&c)).unwrap(), c, "{src}");
        }
    }

    #[test]
    fn twovar_degree_checked() {
        let e = from_json(r#"{"class":"twovar","vars":["x"],"equations":[[{"coef":"3","exp":[0]}]]}"#)
            .unwrap_err();
        assert!(e.message.contains("degree"));
    }
}
