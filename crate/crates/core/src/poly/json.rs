//! `{"vars":[…],"terms":[{"c":"-1/2","e":[0,2,0,1,0]},…]}`

use serde::{Deserialize, Serialize};

use super::SparsePoly;
use crate::rational::{format_q, parse_q};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// A polynomial in a JSON document: either the object form or an expression
/// string over some default variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Poly(PolyJson),
    Text(String),
}

impl PolyInput {
    pub fn resolve<S: AsRef<str>>(&self, default_vars: &[S]) -> Result<SparsePoly> {
        match self {
            PolyInput::Poly(p) => SparsePoly::from_json_repr(p),
            PolyInput::Text(s) => SparsePoly::parse(default_vars, s),
        }
    }
}

impl SparsePoly {
    /// Terms are emitted in ascending lexicographic exponent order.
    pub fn to_json_repr(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    c: format_q(c),
                    e: e.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json_repr(repr: &PolyJson) -> Result<SparsePoly> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &repr.vars {
            if !seen.insert(v) {
                return Err(Error::Parse(format!("duplicate variable `{v}`")));
            }
        }
        let terms = repr
            .terms
            .iter()
            .map(|t| Ok((t.e.clone(), parse_q(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        SparsePoly::from_terms(&repr.vars, terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_repr()).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SparsePoly> {
        let repr: PolyJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
        SparsePoly::from_json_repr(&repr)
    }
}
