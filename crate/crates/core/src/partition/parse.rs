//! Line-oriented partition spec files.
//!
//! One cell per line, `name := <predicate>`; blank lines and `#` comments
//! are skipped. Predicate grammar (keywords are case-sensitive):
//!
//! ```text
//! expr   := term (`or` term)*
//! term   := factor (`and` factor)*
//! factor := `not` factor | `(` expr `)` | atom
//! atom   := sign(i, +|0|-)          coordinate sign
//!         | finite(j)               finite component equals x_j
//!         | elem(<element text>)    singleton
//!         | dih(x|y, minlen)        dihedral first letter, length >= minlen
//!         | entry(i, j, +|0|-|=v)   unitriangular entry test
//!         | otherwise               final catch-all cell only
//! ```

use crate::error::{Error, Result};
use crate::groups::dihedral::FirstLetter;
use crate::groups::parse::parse_element;
use crate::groups::GroupDescriptor;
use crate::partition::{CellPredicate, MatrixTest, Partition, Sign};

fn parse_err(what: impl Into<String>, at: impl Into<String>) -> Error {
    Error::Parse { what: what.into(), at: at.into() }
}

/// Parse a whole partition file.
pub fn parse_partition(descriptor: &GroupDescriptor, text: &str) -> Result<Partition> {
    let mut cells = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, expr) = line.split_once(":=").ok_or_else(|| {
            parse_err("expected `name := predicate`", format!("line {}", lineno + 1))
        })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(parse_err("empty cell name", format!("line {}", lineno + 1)));
        }
        let pred = parse_predicate(descriptor, expr.trim())
            .map_err(|e| match e {
                Error::Parse { what, at } => {
                    parse_err(what, format!("line {}, {at}", lineno + 1))
                }
                other => other,
            })?;
        cells.push((name.to_string(), pred));
    }
    Partition::new(descriptor.clone(), cells)
}

/// Parse a single predicate expression.
pub fn parse_predicate(descriptor: &GroupDescriptor, text: &str) -> Result<CellPredicate> {
    let mut p = Parser { descriptor, text, pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(parse_err("trailing input", format!("byte {}", p.pos)));
    }
    Ok(expr)
}

struct Parser<'a> {
    descriptor: &'a GroupDescriptor,
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let n = self.rest().len() - self.rest().trim_start().len();
        self.pos += n;
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let r = self.rest();
        if let Some(after) = r.strip_prefix(kw) {
            let boundary = after
                .chars()
                .next()
                .is_none_or(|c| !c.is_ascii_alphanumeric() && c != '_');
            if boundary {
                self.pos += kw.len();
                return true;
            }
        }
        false
    }

    fn expr(&mut self) -> Result<CellPredicate> {
        let mut parts = vec![self.term()?];
        while self.eat_keyword("or") {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { CellPredicate::Or(parts) })
    }

    fn term(&mut self) -> Result<CellPredicate> {
        let mut parts = vec![self.factor()?];
        while self.eat_keyword("and") {
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { CellPredicate::And(parts) })
    }

    fn factor(&mut self) -> Result<CellPredicate> {
        if self.eat_keyword("not") {
            return Ok(CellPredicate::not(self.factor()?));
        }
        self.skip_ws();
        if self.rest().starts_with('(') {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(parse_err("expected `)`", format!("byte {}", self.pos)));
            }
            return Ok(inner);
        }
        self.atom()
    }

    /// The argument list of an atom, up to the matching `)`.
    fn args(&mut self, atom: &str) -> Result<&'a str> {
        if !self.eat("(") {
            return Err(parse_err(format!("expected `(` after {atom}"), format!("byte {}", self.pos)));
        }
        let start = self.pos;
        let mut depth = 1usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        let body = &self.text[start..start + i];
                        self.pos = start + i + 1;
                        return Ok(body);
                    }
                }
                _ => {}
            }
        }
        Err(parse_err("unterminated atom arguments", format!("byte {start}")))
    }

    fn atom(&mut self) -> Result<CellPredicate> {
        if self.eat_keyword("otherwise") {
            return Ok(CellPredicate::Otherwise);
        }
        if self.eat_keyword("sign") {
            let body = self.args("sign")?;
            let (i, s) = body
                .split_once(',')
                .ok_or_else(|| parse_err("sign takes (coord, sign)", body))?;
            let coord: usize =
                i.trim().parse().map_err(|_| parse_err("sign coordinate", i))?;
            let sign = parse_sign(s.trim())?;
            return Ok(CellPredicate::SignAtom { coord, sign });
        }
        if self.eat_keyword("finite") {
            let body = self.args("finite")?;
            let index: usize =
                body.trim().parse().map_err(|_| parse_err("finite index", body))?;
            return Ok(CellPredicate::FiniteAtom { index });
        }
        if self.eat_keyword("elem") {
            let body = self.args("elem")?;
            let e = parse_element(self.descriptor, body.trim())?;
            return Ok(CellPredicate::ElementAtom(e));
        }
        if self.eat_keyword("dih") {
            let body = self.args("dih")?;
            let (letter, len) = body
                .split_once(',')
                .ok_or_else(|| parse_err("dih takes (x|y, minlen)", body))?;
            let first = match letter.trim() {
                "x" => FirstLetter::X,
                "y" => FirstLetter::Y,
                other => return Err(parse_err("dih letter must be x or y", other)),
            };
            let min_len: u64 =
                len.trim().parse().map_err(|_| parse_err("dih min length", len))?;
            return Ok(CellPredicate::DihedralAtom { first, min_len });
        }
        if self.eat_keyword("entry") {
            let body = self.args("entry")?;
            let parts: Vec<&str> = body.splitn(3, ',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(parse_err("entry takes (row, col, test)", body));
            }
            let row: usize = parts[0].parse().map_err(|_| parse_err("entry row", parts[0]))?;
            let col: usize = parts[1].parse().map_err(|_| parse_err("entry col", parts[1]))?;
            let test = if let Some(v) = parts[2].strip_prefix('=') {
                MatrixTest::Value(
                    v.trim().parse().map_err(|_| parse_err("entry value", v))?,
                )
            } else {
                MatrixTest::Sign(parse_sign(parts[2])?)
            };
            return Ok(CellPredicate::MatrixAtom { row, col, test });
        }
        Err(parse_err("expected an atom", format!("byte {}", self.pos)))
    }
}

fn parse_sign(s: &str) -> Result<Sign> {
    match s {
        "+" => Ok(Sign::Pos),
        "0" => Ok(Sign::Zero),
        "-" => Ok(Sign::Neg),
        other => Err(parse_err("sign must be one of + 0 -", other)),
    }
}
