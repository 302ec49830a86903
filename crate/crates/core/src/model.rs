//! Plain-text descriptions of index models.
//!
//! ```text
//! # complex projective 3-space
//! top_power = 3
//! pairing = 1
//! x_multiple = 4
//! ahat = line_pow:4
//! ch = one
//! ```
//!
//! Recipes for `ch`: `one`, `zero`, `exp:<k>` (`e^{k h}`), `poly:<c0>,<c1>,…`,
//! and `sum:<recipe>,<recipe>,…` over the first four (an empty sum is zero).
//! Recipes for `ahat`: `one`, `line_pow:<k>` (`(h / (e^{h/2} − e^{−h/2}))^k`),
//! `poly:<c0>,<c1>,…`. Numbers are exact rationals `p` or `p/q`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::genus::{a_hat_line, ch_line, compare_indices, IndexComparison, TruncatedClass, TruncatedRing};
use crate::rational::{parse, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChRecipe {
    One,
    Zero,
    Exp(Q),
    Poly(Vec<Q>),
    Sum(Vec<ChRecipe>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AHatRecipe {
    One,
    LinePow(u32),
    Poly(Vec<Q>),
}

impl ChRecipe {
    pub fn build(&self, ring: &TruncatedRing) -> TruncatedClass {
        match self {
            ChRecipe::One => ring.one(),
            ChRecipe::Zero => ring.zero(),
            ChRecipe::Exp(k) => ch_line(&ring.h_multiple(k.clone())).expect("zero constant term"),
            ChRecipe::Poly(c) => ring.class(c),
            ChRecipe::Sum(items) => items.iter().fold(ring.zero(), |acc, r| &acc + &r.build(ring)),
        }
    }
}

impl AHatRecipe {
    pub fn build(&self, ring: &TruncatedRing) -> TruncatedClass {
        match self {
            AHatRecipe::One => ring.one(),
            AHatRecipe::LinePow(k) => a_hat_line(&ring.h_multiple(Q::one())).expect("zero constant term").pow(*k),
            AHatRecipe::Poly(c) => ring.class(c),
        }
    }
}

impl fmt::Display for ChRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChRecipe::One => write!(f, "one"),
            ChRecipe::Zero => write!(f, "zero"),
            ChRecipe::Exp(k) => write!(f, "exp:{k}"),
            ChRecipe::Poly(c) => write!(f, "poly:{}", join(c)),
            ChRecipe::Sum(items) => {
                let parts: Vec<String> = items.iter().map(|r| r.to_string()).collect();
                write!(f, "sum:{}", parts.join(","))
            }
        }
    }
}

impl fmt::Display for AHatRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AHatRecipe::One => write!(f, "one"),
            AHatRecipe::LinePow(k) => write!(f, "line_pow:{k}"),
            AHatRecipe::Poly(c) => write!(f, "poly:{}", join(c)),
        }
    }
}

fn join(c: &[Q]) -> String {
    c.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexModel {
    pub name: Option<String>,
    pub ring: TruncatedRing,
    pub x_multiple: Q,
    pub a_hat: AHatRecipe,
    pub ch: ChRecipe,
}

impl IndexModel {
    pub fn load(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ModelError::Io { path: path.display().to_string(), message: e.to_string() })?;
        text.parse()
    }

    pub fn x(&self) -> TruncatedClass {
        self.ring.h_multiple(self.x_multiple.clone())
    }

    pub fn a_hat_class(&self) -> TruncatedClass {
        self.a_hat.build(&self.ring)
    }

    pub fn ch_class(&self) -> TruncatedClass {
        self.ch.build(&self.ring)
    }

    pub fn evaluate(&self) -> IndexComparison {
        compare_indices(&self.ring, &self.ch_class(), &self.x(), &self.a_hat_class())
    }
}

struct Cursor<'a> {
    line: usize,
    /// 1-based column where `text` starts in the line.
    column: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> ModelError {
        ModelError::Parse { line: self.line, column: self.column + offset, message: message.into() }
    }

    fn rational(&self, s: &str, offset: usize) -> Result<Q, ModelError> {
        parse(s).ok_or_else(|| self.error(offset, format!("expected a rational p or p/q, found `{s}`")))
    }

    fn rational_list(&self, s: &str, offset: usize) -> Result<Vec<Q>, ModelError> {
        let mut out = Vec::new();
        let mut pos = offset;
        for item in s.split(',') {
            out.push(self.rational(item, pos)?);
            pos += item.chars().count() + 1;
        }
        Ok(out)
    }

    fn count(&self, s: &str, offset: usize) -> Result<usize, ModelError> {
        s.parse::<usize>().map_err(|_| self.error(offset, format!("expected a non-negative integer, found `{s}`")))
    }

    fn ch_item(&self, s: &str, offset: usize) -> Result<ChRecipe, ModelError> {
        match s.split_once(':') {
            None if s == "one" => Ok(ChRecipe::One),
            None if s == "zero" => Ok(ChRecipe::Zero),
            Some(("exp", k)) => Ok(ChRecipe::Exp(self.rational(k, offset + 4)?)),
            Some(("poly", c)) => Ok(ChRecipe::Poly(self.rational_list(c, offset + 5)?)),
            _ => Err(self.error(offset, format!("unknown ch recipe `{s}`"))),
        }
    }

    fn ch(&self) -> Result<ChRecipe, ModelError> {
        if let Some(rest) = self.text.strip_prefix("sum:") {
            let mut items = Vec::new();
            if rest.is_empty() {
                return Ok(ChRecipe::Sum(items));
            }
            // `poly:` items are not allowed inside a sum: their commas would be ambiguous.
            let mut pos = 4;
            for item in rest.split(',') {
                if item.starts_with("poly:") {
                    return Err(self.error(pos, "poly recipes cannot appear inside sum"));
                }
                items.push(self.ch_item(item, pos)?);
                pos += item.chars().count() + 1;
            }
            Ok(ChRecipe::Sum(items))
        } else {
            self.ch_item(self.text, 0)
        }
    }

    fn a_hat(&self) -> Result<AHatRecipe, ModelError> {
        match self.text.split_once(':') {
            None if self.text == "one" => Ok(AHatRecipe::One),
            Some(("line_pow", k)) => {
                let k = self.count(k, 9)?;
                let k = u32::try_from(k).map_err(|_| self.error(9, "exponent too large"))?;
                Ok(AHatRecipe::LinePow(k))
            }
            Some(("poly", c)) => Ok(AHatRecipe::Poly(self.rational_list(c, 5)?)),
            _ => Err(self.error(0, format!("unknown ahat recipe `{}`", self.text))),
        }
    }
}

impl FromStr for IndexModel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        let mut name = None;
        let mut generator = None;
        let mut top_power = None;
        let mut pairing = None;
        let mut x_multiple = None;
        let mut a_hat = None;
        let mut ch = None;
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                let column = raw.len() - raw.trim_start().len() + 1;
                return Err(ModelError::Parse { line, column, message: "expected `key = value`".into() });
            };
            let key = content[..eq].trim();
            let value_raw = &content[eq + 1..];
            let lead = value_raw.len() - value_raw.trim_start().len();
            let value = value_raw.trim();
            let value_col = content[..eq + 1 + lead].chars().count() + 1;
            let cur = Cursor { line, column: value_col, text: value };
            if value.is_empty() {
                return Err(cur.error(0, format!("missing value for `{key}`")));
            }
            let key_col = content.len() - content.trim_start().len() + 1;
            match key {
                "name" => name = Some(value.to_string()),
                "generator" => generator = Some(value.to_string()),
                "top_power" => top_power = Some(cur.count(value, 0)?),
                "pairing" => pairing = Some(cur.rational(value, 0)?),
                "x_multiple" => x_multiple = Some(cur.rational(value, 0)?),
                "ahat" => a_hat = Some(cur.a_hat()?),
                "ch" => ch = Some(cur.ch()?),
                _ => return Err(ModelError::Parse { line, column: key_col, message: format!("unknown key `{key}`") }),
            }
        }
        let top_power = top_power.ok_or(ModelError::MissingKey("top_power"))?;
        let pairing = pairing.ok_or(ModelError::MissingKey("pairing"))?;
        if pairing.is_zero() {
            return Err(ModelError::MissingKey("pairing (nonzero)"));
        }
        let mut ring = TruncatedRing::new(top_power, pairing);
        if let Some(g) = generator {
            ring.generator = g;
        }
        Ok(IndexModel {
            name,
            ring,
            x_multiple: x_multiple.ok_or(ModelError::MissingKey("x_multiple"))?,
            a_hat: a_hat.ok_or(ModelError::MissingKey("ahat"))?,
            ch: ch.ok_or(ModelError::MissingKey("ch"))?,
        })
    }
}

impl fmt::Display for IndexModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            writeln!(f, "name = {n}")?;
        }
        writeln!(f, "generator = {}", self.ring.generator)?;
        writeln!(f, "top_power = {}", self.ring.top_power)?;
        writeln!(f, "pairing = {}", self.ring.pairing)?;
        writeln!(f, "x_multiple = {}", self.x_multiple)?;
        writeln!(f, "ahat = {}", self.a_hat)?;
        writeln!(f, "ch = {}", self.ch)
    }
}
