//! Formal group words and the law literal syntax.
//!
//! A law is a pair of words over variables `v1, v2, ...` and their inverses,
//! written `v1 v2^3 = v2^3 v1` (caret powers, whitespace-separated factors,
//! `^-1` for inverses, a lone `1` for the empty word). A law whose two words
//! are inverse-free is a semigroup law.

use std::fmt;

use crate::error::{Error, Result};

/// One side of a law: factors `(variable index, exponent)` in written order,
/// variables 1-based.
pub type Word = Vec<(usize, i64)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawSpec {
    lhs: Word,
    rhs: Word,
    variables: usize,
}

impl LawSpec {
    pub fn new(lhs: Word, rhs: Word) -> Result<LawSpec> {
        let variables = lhs
            .iter()
            .chain(&rhs)
            .map(|&(v, _)| v)
            .max()
            .unwrap_or(0);
        for &(v, _) in lhs.iter().chain(&rhs) {
            if v == 0 {
                return Err(Error::Parse {
                    what: "law variables are 1-based".into(),
                    at: "v0".into(),
                });
            }
        }
        Ok(LawSpec { lhs, rhs, variables })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    /// Number of variables (the largest index mentioned).
    pub fn variables(&self) -> usize {
        self.variables
    }

    /// Inverse-free on both sides.
    pub fn is_semigroup_law(&self) -> bool {
        self.lhs.iter().chain(&self.rhs).all(|&(_, e)| e >= 0)
    }

    /// Net exponent of variable `v` in one word.
    pub fn exponent_sum(word: &Word, v: usize) -> i64 {
        word.iter().filter(|&&(w, _)| w == v).map(|&(_, e)| e).sum()
    }
}

impl fmt::Display for LawSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |word: &Word, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if word.is_empty() {
                return write!(f, "1");
            }
            for (i, (v, e)) in word.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                if *e == 1 {
                    write!(f, "v{v}")?;
                } else {
                    write!(f, "v{v}^{e}")?;
                }
            }
            Ok(())
        };
        side(&self.lhs, f)?;
        write!(f, " = ")?;
        side(&self.rhs, f)
    }
}

/// Parse a law literal such as `v1 v2^2 = v2^2 v1`.
pub fn parse_law(input: &str) -> Result<LawSpec> {
    let (lhs, rhs) = input.split_once('=').ok_or_else(|| Error::Parse {
        what: "law needs `lhs = rhs`".into(),
        at: input.into(),
    })?;
    LawSpec::new(parse_word(lhs)?, parse_word(rhs)?)
}

fn parse_word(side: &str) -> Result<Word> {
    let side = side.trim();
    if side == "1" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for tok in side.split_whitespace() {
        // juxtaposed factors are allowed: v1v2^3 splits at each `v`
        let mut rest = tok;
        while !rest.is_empty() {
            let body = rest.strip_prefix('v').ok_or_else(|| Error::Parse {
                what: "expected v<k> factor".into(),
                at: tok.into(),
            })?;
            let end = body
                .char_indices()
                .find(|(_, c)| !c.is_ascii_digit())
                .map_or(body.len(), |(i, _)| i);
            let idx: usize = body[..end].parse().map_err(|_| Error::Parse {
                what: "variable index".into(),
                at: tok.into(),
            })?;
            rest = &body[end..];
            let exp = if let Some(e) = rest.strip_prefix('^') {
                let stop = e
                    .char_indices()
                    .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                    .map_or(e.len(), |(i, _)| i);
                let exp: i64 = e[..stop].parse().map_err(|_| Error::Parse {
                    what: "exponent".into(),
                    at: tok.into(),
                })?;
                rest = &e[stop..];
                exp
            } else {
                1
            };
            word.push((idx, exp));
        }
    }
    if word.is_empty() {
        return Err(Error::Parse { what: "empty word (write `1`)".into(), at: side.into() });
    }
    Ok(word)
}
