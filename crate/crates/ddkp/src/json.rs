//! Versioned JSON form of expressions.
//!
//! ```json
//! { "format": "ddkp-expression", "version": 1,
//!   "terms": [ { "coeff": "-1/2", "x": 1, "n": 0,
//!                "factors": [ { "jet": { "shift": 0, "order": 1, "power": 1 } },
//!                             { "dinv": { "core": { ...term... }, "power": 1 } } ] } ] }
//! ```
//!
//! A term is a rational coefficient (decimal `p` or `p/q`), powers of `x` and
//! `n`, and a factor list. `dinv` factors hold the argument of `(S-1)^{-1}`
//! as a nested term. Reading rebuilds the expression through normalization,
//! so any document that describes a valid expression is accepted.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use ddkp_core::{normalize, Expression, Jet, Monomial, Rational, Tree};

pub const EXPRESSION_FORMAT: &str = "ddkp-expression";
pub const EXPRESSION_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("expected format `{expected}`, found `{found}`")]
    Format { expected: String, found: String },

    #[error(
        "unsupported schema version {found} for `{format}` (this build reads version {supported})"
    )]
    Version {
        format: String,
        found: Value,
        supported: u64,
    },

    #[error("invalid coefficient `{0}`")]
    Coefficient(String),

    #[error(transparent)]
    Engine(#[from] ddkp_core::Error),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Malformed(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpressionDoc {
    pub format: String,
    pub version: u64,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    #[serde(default)]
    pub x: u32,
    #[serde(default)]
    pub n: u32,
    #[serde(default)]
    pub factors: Vec<FactorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FactorDoc {
    Jet { shift: i64, order: u32, power: u32 },
    Dinv { core: Box<TermDoc>, power: u32 },
}

fn term_doc(m: &Monomial) -> TermDoc {
    let mut factors: Vec<FactorDoc> = m
        .jets()
        .iter()
        .map(|(j, p)| FactorDoc::Jet {
            shift: j.shift,
            order: j.order,
            power: *p,
        })
        .collect();
    factors.extend(m.atoms().iter().map(|(a, p)| FactorDoc::Dinv {
        core: Box::new(term_doc(a.core())),
        power: *p,
    }));
    TermDoc {
        coeff: m.coeff().to_string(),
        x: m.xdeg(),
        n: m.ndeg(),
        factors,
    }
}

fn term_tree(t: &TermDoc) -> Result<Tree, JsonError> {
    let coeff: Rational = t
        .coeff
        .parse()
        .map_err(|_| JsonError::Coefficient(t.coeff.clone()))?;
    let mut items = vec![
        Tree::Const(coeff),
        Tree::Pow(Box::new(Tree::X), t.x),
        Tree::Pow(Box::new(Tree::N), t.n),
    ];
    for f in &t.factors {
        items.push(match f {
            FactorDoc::Jet {
                shift,
                order,
                power,
            } => Tree::Pow(Box::new(Tree::Jet(Jet::new(*shift, *order))), *power),
            FactorDoc::Dinv { core, power } => {
                Tree::Pow(Box::new(Tree::Dinv(Box::new(term_tree(core)?))), *power)
            }
        });
    }
    Ok(Tree::Mul(items))
}

impl ExpressionDoc {
    pub fn new(e: &Expression) -> Self {
        ExpressionDoc {
            format: EXPRESSION_FORMAT.into(),
            version: EXPRESSION_VERSION,
            terms: e.terms().iter().map(term_doc).collect(),
        }
    }

    pub fn to_expression(&self) -> Result<Expression, JsonError> {
        check_header(
            &Value::String(self.format.clone()),
            &Value::from(self.version),
            EXPRESSION_FORMAT,
            EXPRESSION_VERSION,
        )?;
        let terms = self.terms.iter().map(term_tree).collect::<Result<_, _>>()?;
        Ok(normalize(&Tree::Add(terms))?)
    }
}

pub(crate) fn check_header(
    format: &Value,
    version: &Value,
    expected_format: &str,
    supported: u64,
) -> Result<(), JsonError> {
    match format.as_str() {
        Some(f) if f == expected_format => {}
        _ => {
            return Err(JsonError::Format {
                expected: expected_format.into(),
                found: format.to_string(),
            })
        }
    }
    if version.as_u64() != Some(supported) {
        return Err(JsonError::Version {
            format: expected_format.into(),
            found: version.clone(),
            supported,
        });
    }
    Ok(())
}

/// Validates the `format` and `version` fields of a raw document before the
/// body is decoded, so version mismatches are reported as such.
pub(crate) fn check_document(v: &Value, format: &str, supported: u64) -> Result<(), JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError::Malformed("top level is not an object".into()))?;
    check_header(
        obj.get("format").unwrap_or(&Value::Null),
        obj.get("version").unwrap_or(&Value::Null),
        format,
        supported,
    )
}

pub fn to_json(e: &Expression) -> String {
    serde_json::to_string_pretty(&ExpressionDoc::new(e)).expect("expression documents serialize")
}

pub fn from_json(text: &str) -> Result<Expression, JsonError> {
    let v: Value = serde_json::from_str(text)?;
    check_document(&v, EXPRESSION_FORMAT, EXPRESSION_VERSION)?;
    let doc: ExpressionDoc = serde_json::from_value(v)?;
    doc.to_expression()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use ddkp_core::symmetry::{builtin, BuiltinName};

    #[test]
    fn round_trips() {
        for e in [
            builtin(BuiltinName::G3),
            builtin(BuiltinName::W),
            parse("Theta(u*Theta(u[1,0]*Theta(u[0,1])))^2 - 3/7*n*x^2").unwrap(),
            Expression::zero(),
        ] {
            assert_eq!(from_json(&to_json(&e)).unwrap(), e);
        }
    }

    #[test]
    fn nested_depth_three() {
        let e = parse("Dinv(u*Dinv(u[-1,1]*Dinv(u[0,2])))").unwrap();
        assert_eq!(e.max_depth(), 3);
        assert_eq!(from_json(&to_json(&e)).unwrap(), e);
    }

    #[test]
    fn header_errors() {
        let text = to_json(&builtin(BuiltinName::K)).replace("\"version\": 1", "\"version\": 7");
        assert!(matches!(from_json(&text), Err(JsonError::Version { .. })));
        let text = to_json(&builtin(BuiltinName::K)).replace("ddkp-expression", "other");
        assert!(matches!(from_json(&text), Err(JsonError::Format { .. })));
        assert!(matches!(from_json("[1,"), Err(JsonError::Malformed(_))));
        assert!(matches!(
            from_json(r#"{"format":"ddkp-expression","version":1,"terms":[{"coeff":"x"}]}"#),
            Err(JsonError::Coefficient(_))
        ));
        assert!(matches!(
            from_json(
                r#"{"format":"ddkp-expression","version":1,"terms":[{"coeff":"1","bogus":2}]}"#
            ),
            Err(JsonError::Malformed(_))
        ));
    }
}
