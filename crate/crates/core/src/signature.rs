//! Arities and signatures.
//!
//! Text format, one operator per line:
//!
//! ```text
//! # untyped lambda calculus
//! app: [0,0]
//! abs: [1]
//! ```

use std::fmt;

use thiserror::Error;

use crate::name::is_identifier;

/// Binder counts, one per argument: argument `j` lives under `binders[j]`
/// fresh bound slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Arity(Vec<u32>);

impl Arity {
    pub fn new(binders: Vec<u32>) -> Self {
        Arity(binders)
    }

    pub fn binders(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("duplicate operator `{0}`")]
    Duplicate(String),
    #[error("`{0}` is not a valid operator name")]
    BadName(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    ops: Vec<(String, Arity)>,
}

impl Signature {
    pub fn new<S: Into<String>>(
        ops: impl IntoIterator<Item = (S, Arity)>,
    ) -> Result<Self, SignatureError> {
        let mut out: Vec<(String, Arity)> = Vec::new();
        for (name, arity) in ops {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(SignatureError::BadName(name));
            }
            if out.iter().any(|(n, _)| *n == name) {
                return Err(SignatureError::Duplicate(name));
            }
            out.push((name, arity));
        }
        Ok(Signature { ops: out })
    }

    /// `app: [0,0]`, `abs: [1]`.
    pub fn lambda() -> Self {
        Signature::new([
            ("app", Arity::new(vec![0, 0])),
            ("abs", Arity::new(vec![1])),
        ])
        .expect("lambda signature is well formed")
    }

    pub fn parse(text: &str) -> Result<Self, SignatureError> {
        let mut ops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |msg: &str| SignatureError::Syntax {
                line: line_no,
                msg: msg.to_string(),
            };
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax("expected `name: [..]`"))?;
            let rest = rest.trim();
            let inner = rest
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| syntax("arity must be a bracketed list"))?;
            let binders = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|n| n.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| syntax("arity entries must be nonnegative integers"))?
            };
            ops.push((name.trim().to_string(), Arity::new(binders)));
        }
        Signature::new(ops)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn op(&self, index: usize) -> Option<(&str, &Arity)> {
        self.ops.get(index).map(|(n, a)| (n.as_str(), a))
    }

    pub fn arity(&self, index: usize) -> Option<&Arity> {
        self.ops.get(index).map(|(_, a)| a)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|(n, _)| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Arity)> {
        self.ops.iter().map(|(n, a)| (n.as_str(), a))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, arity) in &self.ops {
            writeln!(f, "{name}: {arity}")?;
        }
        Ok(())
    }
}
