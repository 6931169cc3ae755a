//! Reference tables embedded from `data/golden_tables.json`, and a small
//! evaluator for the integer expressions used in their parametric rows.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const GOLDEN_JSON: &str = include_str!("../data/golden_tables.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalGolden {
    pub space: String,
    pub rows: Vec<ExceptionalGoldenRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalGoldenRow {
    pub word: String,
    pub a: i64,
    pub j: Vec<usize>,
    pub dim: usize,
    pub a_star: i64,
    pub j_star: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuitGolden {
    pub suit: String,
    pub p: String,
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigoneGolden {
    pub family: String,
    pub space: String,
    pub bound: String,
    pub criterion: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothGolden {
    pub space: String,
    pub j: Vec<String>,
    pub model: String,
    pub conditions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HplusGolden {
    pub space: String,
    pub case: String,
    pub condition: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub schema_version: u32,
    #[serde(rename = "E6")]
    pub e6: ExceptionalGolden,
    #[serde(rename = "E7")]
    pub e7: ExceptionalGolden,
    pub suit: Vec<SuitGolden>,
    pub bigone: Vec<BigoneGolden>,
    pub sm: Vec<SmoothGolden>,
    #[serde(rename = "Hplus")]
    pub hplus: Vec<HplusGolden>,
}

/// The embedded reference tables.
pub fn golden() -> Golden {
    serde_json::from_str(GOLDEN_JSON).expect("embedded golden tables parse")
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected end of expression {0:?}")]
    End(String),
    #[error("unexpected character {1:?} in expression {0:?}")]
    Char(String, char),
    #[error("unknown variable {0:?}")]
    Unknown(String),
}

/// Evaluates an integer expression over `+`, `-`, `min(…,…)`, `max(…,…)`,
/// parentheses, integer literals with optional implicit product (`2a`) and
/// named variables.
pub fn eval(expr: &str, vars: &BTreeMap<&str, i64>) -> Result<i64, ExprError> {
    let chars: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { src: expr, chars: &chars, pos: 0, vars };
    let v = p.sum()?;
    match p.peek() {
        None => Ok(v),
        Some(c) => Err(ExprError::Char(expr.to_string(), c)),
    }
}

/// Evaluates a comparison `lhs OP rhs` with `OP` one of `<`, `<=`, `>`,
/// `>=`, `=`, `!=`.
pub fn eval_condition(cond: &str, vars: &BTreeMap<&str, i64>) -> Result<bool, ExprError> {
    for op in ["<=", ">=", "!=", "<", ">", "="] {
        if let Some((l, r)) = cond.split_once(op) {
            let (l, r) = (eval(l, vars)?, eval(r, vars)?);
            return Ok(match op {
                "<=" => l <= r,
                ">=" => l >= r,
                "!=" => l != r,
                "<" => l < r,
                ">" => l > r,
                _ => l == r,
            });
        }
    }
    Err(ExprError::End(cond.to_string()))
}

struct Parser<'a> {
    src: &'a str,
    chars: &'a [char],
    pos: usize,
    vars: &'a BTreeMap<&'a str, i64>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(ExprError::Char(self.src.to_string(), d)),
            None => Err(ExprError::End(self.src.to_string())),
        }
    }

    fn sum(&mut self) -> Result<i64, ExprError> {
        let mut v = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    v += self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    v -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn term(&mut self) -> Result<i64, ExprError> {
        match self.peek() {
            None => Err(ExprError::End(self.src.to_string())),
            Some('-') => {
                self.pos += 1;
                Ok(-self.term()?)
            }
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let k: i64 = self.chars[start..self.pos].iter().collect::<String>().parse().expect("digits");
                if self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '(') {
                    Ok(k * self.term()?)
                } else {
                    Ok(k)
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                if (name == "min" || name == "max") && self.peek() == Some('(') {
                    self.pos += 1;
                    let a = self.sum()?;
                    self.expect(',')?;
                    let b = self.sum()?;
                    self.expect(')')?;
                    return Ok(if name == "min" { a.min(b) } else { a.max(b) });
                }
                self.vars.get(name.as_str()).copied().ok_or(ExprError::Unknown(name))
            }
            Some(c) => Err(ExprError::Char(self.src.to_string(), c)),
        }
    }
}

/// Dimension of a model variety written as `P^{k}`, `Q^{k}`, `Gr(k,m)`,
/// `C_{m}/P_{m}` or `D_{m}/P_{m}`, with integer expressions as arguments.
pub fn model_dim(model: &str, vars: &BTreeMap<&str, i64>) -> Result<i64, ExprError> {
    let inner = |s: &str| s.trim_start_matches('{').trim_end_matches('}').to_string();
    if let Some(rest) = model.strip_prefix("P^").or_else(|| model.strip_prefix("Q^")) {
        return eval(&inner(rest), vars);
    }
    if let Some(rest) = model.strip_prefix("Gr(").and_then(|r| r.strip_suffix(')')) {
        let (k, m) = rest.split_once(',').ok_or_else(|| ExprError::End(model.to_string()))?;
        let (k, m) = (eval(k, vars)?, eval(m, vars)?);
        return Ok(k * (m - k));
    }
    for (head, f) in [("C_", 1i64), ("D_", -1)] {
        if let Some(rest) = model.strip_prefix(head) {
            let (m, _) = rest.split_once('/').ok_or_else(|| ExprError::End(model.to_string()))?;
            let m = eval(&inner(m), vars)?;
            return Ok(m * (m + f) / 2);
        }
    }
    Err(ExprError::End(model.to_string()))
}

/// The model with its arguments evaluated, e.g. `Gr(2,4)` or `C_3/P_3`.
pub fn model_text(model: &str, vars: &BTreeMap<&str, i64>) -> Result<String, ExprError> {
    let mut out = String::new();
    let mut rest = model;
    while let Some(open) = rest.find(['{', '(']) {
        let close_char = if rest.as_bytes()[open] == b'{' { '}' } else { ')' };
        let close = rest[open..].find(close_char).map(|k| open + k).ok_or_else(|| ExprError::End(model.to_string()))?;
        out.push_str(&rest[..open]);
        let args: Result<Vec<String>, ExprError> = rest[open + 1..close].split(',').map(|a| eval(a, vars).map(|v| v.to_string())).collect();
        let args = args?.join(",");
        if close_char == ')' {
            out.push_str(&format!("({args})"));
        } else {
            out.push_str(&args);
        }
        rest = &rest[close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}
