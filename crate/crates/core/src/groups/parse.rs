//! Text grammar for group specs and elements.
//!
//! Group specs: `Z^3`, `Dinf`, `UT(4)`, `F[table: 1 2; 2 1]` (row-major
//! multiplication table over indices), and products joined with `x`, e.g.
//! `Z^2 x F[table: 1 2; 2 1]`.
//!
//! Elements: `(a1,...,an)` for free abelian, `(a1,...,an; xj)` for the
//! `Z^n x F` shape, `xj` for finite points, `dih(flag,offset)`,
//! `ut[[...],[...]]`, and `prod(e1, e2, ...)` for other products.

use crate::error::{Error, Result};
use crate::groups::finite::FiniteTable;
use crate::groups::{GroupDescriptor, GroupElement};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;

fn parse_err(what: impl Into<String>, at: impl Into<String>) -> Error {
    Error::Parse { what: what.into(), at: at.into() }
}

/// Parse a group spec such as `Z^2 x F[table: 1 2; 2 1]`.
pub fn parse_group(input: &str) -> Result<GroupDescriptor> {
    let factors = split_product(input)?;
    let mut descriptors = Vec::new();
    for f in factors {
        descriptors.push(parse_factor(f.trim())?);
    }
    match descriptors.len() {
        0 => Err(parse_err("empty group spec", input)),
        1 => Ok(descriptors.pop().unwrap()),
        _ => GroupDescriptor::product(descriptors),
    }
}

/// Split on the `x` product operator at bracket depth 0. `x` only counts as
/// the operator when it stands alone between whitespace, so finite-element
/// tokens like `x2` never collide.
fn split_product(input: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'[' | b'(' => depth += 1,
            b']' | b')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| parse_err("unbalanced brackets", format!("byte {i}")))?;
            }
            b'x' if depth == 0 => {
                let before_ws = i > 0 && bytes[i - 1].is_ascii_whitespace();
                let after_ws = i + 1 < bytes.len() && bytes[i + 1].is_ascii_whitespace();
                if before_ws && after_ws {
                    parts.push(&input[start..i]);
                    start = i + 1;
                }
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(&input[start..]);
    Ok(parts)
}

fn parse_factor(s: &str) -> Result<GroupDescriptor> {
    if s == "Z" {
        return GroupDescriptor::free_abelian(1);
    }
    if let Some(rest) = s.strip_prefix("Z^") {
        let n: usize = rest
            .trim()
            .parse()
            .map_err(|_| parse_err("free abelian rank", rest))?;
        return GroupDescriptor::free_abelian(n);
    }
    if s == "Dinf" {
        return Ok(GroupDescriptor::dihedral_infinite());
    }
    if let Some(rest) = s.strip_prefix("UT(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| parse_err("expected `)` after UT(", s))?;
        let n: usize = inner
            .trim()
            .parse()
            .map_err(|_| parse_err("unitriangular size", inner))?;
        return GroupDescriptor::unitriangular(n);
    }
    if let Some(rest) = s.strip_prefix("F[") {
        let inner = rest
            .strip_suffix(']')
            .ok_or_else(|| parse_err("expected `]` after F[", s))?;
        let body = inner
            .trim()
            .strip_prefix("table:")
            .ok_or_else(|| parse_err("expected `table:` in F[...]", inner))?;
        let mut rows = Vec::new();
        for row in body.split(';') {
            let mut entries = Vec::new();
            for tok in row.split_whitespace() {
                let k: usize = tok.parse().map_err(|_| parse_err("table entry", tok))?;
                entries.push(k);
            }
            if !entries.is_empty() {
                rows.push(entries);
            }
        }
        let table = FiniteTable::new(rows)?;
        return Ok(GroupDescriptor::finite(table));
    }
    Err(parse_err("unrecognized group spec", s))
}

/// Parse one element in the canonical text form appropriate to `descriptor`.
pub fn parse_element(descriptor: &GroupDescriptor, input: &str) -> Result<GroupElement> {
    let e = parse_element_untyped(input.trim())?;
    let e = coerce(descriptor, e)?;
    if descriptor.contains(&e) {
        Ok(e)
    } else {
        Err(Error::DescriptorMismatch {
            context: format!("parsed element {e} does not belong to {descriptor}"),
        })
    }
}

/// Parse a comma-separated list of elements (top-level commas only).
pub fn parse_elements(descriptor: &GroupDescriptor, input: &str) -> Result<Vec<GroupElement>> {
    split_top_level(input, ',')
        .into_iter()
        .map(|s| parse_element(descriptor, s))
        .collect()
}

fn split_top_level(input: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in input.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push(&input[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&input[start..]);
    parts.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_element_untyped(s: &str) -> Result<GroupElement> {
    if let Some(rest) = s.strip_prefix("dih(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| parse_err("expected `)`", s))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(parse_err("dih takes (flag, offset)", s));
        }
        let flag: u8 = parts[0].parse().map_err(|_| parse_err("dih flag", parts[0]))?;
        if flag > 1 {
            return Err(parse_err("dih flag must be 0 or 1", parts[0]));
        }
        let offset: i64 = parts[1].parse().map_err(|_| parse_err("dih offset", parts[1]))?;
        return Ok(GroupElement::Dihedral { flip: flag == 1, offset });
    }
    if let Some(rest) = s.strip_prefix("ut[") {
        let inner = rest.strip_suffix(']').ok_or_else(|| parse_err("expected `]`", s))?;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for row in split_top_level(inner, ',') {
            let body = row
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| parse_err("matrix row must be [..]", row))?;
            let mut entries = Vec::new();
            for tok in body.split(',') {
                let v: BigInt =
                    tok.trim().parse().map_err(|_| parse_err("matrix entry", tok))?;
                entries.push(v);
            }
            rows.push(entries);
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) || rows.len() != cols {
            return Err(parse_err("matrix must be square", s));
        }
        return Ok(GroupElement::Unitriangular(IntMatrix::from_rows(rows)));
    }
    if let Some(rest) = s.strip_prefix("prod(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| parse_err("expected `)`", s))?;
        let mut parts = Vec::new();
        for p in split_top_level(inner, ',') {
            parts.push(parse_element_untyped(p)?);
        }
        return Ok(GroupElement::Product(parts));
    }
    if let Some(rest) = s.strip_prefix('x') {
        let j: usize = rest.parse().map_err(|_| parse_err("finite index", s))?;
        return Ok(GroupElement::FinitePoint(j));
    }
    if let Some(rest) = s.strip_prefix('(') {
        let inner = rest.strip_suffix(')').ok_or_else(|| parse_err("expected `)`", s))?;
        // `(coords; xj)` or plain `(coords)`
        let (coord_part, finite_part) = match inner.split_once(';') {
            Some((a, b)) => (a, Some(b.trim())),
            None => (inner, None),
        };
        let mut coords = Vec::new();
        for tok in coord_part.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let v: i64 = tok.parse().map_err(|_| parse_err("coordinate", tok))?;
            coords.push(v);
        }
        let vector = GroupElement::IntVector(coords);
        return match finite_part {
            None => Ok(vector),
            Some(fp) => {
                let j: usize = fp
                    .strip_prefix('x')
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| parse_err("finite part must be xj", fp))?;
                Ok(GroupElement::Product(vec![vector, GroupElement::FinitePoint(j)]))
            }
        };
    }
    Err(parse_err("unrecognized element", s))
}

/// Parse an isomorphism literal: `coord[[1,1],[0,1]]` (unimodular matrix on
/// the free part), `relabel(1,3,2)` (finite-factor automorphism), `dihswap`,
/// or a `;`-separated composition applied left to right.
pub fn parse_iso(input: &str) -> Result<crate::groups::iso::IsomorphismSpec> {
    use crate::groups::iso::IsomorphismSpec;
    let parts: Vec<&str> = input.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        return Err(parse_err("empty isomorphism spec", input));
    }
    let mut specs = Vec::new();
    for part in parts {
        if part == "dihswap" {
            specs.push(IsomorphismSpec::DihedralSwap);
        } else if let Some(rest) = part.strip_prefix("coord") {
            let body = rest.trim();
            let inner = body
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| parse_err("coord takes [[..],[..]]", part))?;
            let mut rows = Vec::new();
            for row in split_top_level(inner, ',') {
                let cells = row
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| parse_err("matrix row must be [..]", row))?;
                let mut entries = Vec::new();
                for tok in cells.split(',') {
                    let v: i64 =
                        tok.trim().parse().map_err(|_| parse_err("matrix entry", tok))?;
                    entries.push(v);
                }
                rows.push(entries);
            }
            specs.push(IsomorphismSpec::CoordinateChange(rows));
        } else if let Some(rest) = part.strip_prefix("relabel") {
            let body = rest.trim();
            let inner = body
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| parse_err("relabel takes (i1,i2,...)", part))?;
            let mut perm = Vec::new();
            for tok in inner.split(',') {
                let v: usize =
                    tok.trim().parse().map_err(|_| parse_err("permutation entry", tok))?;
                perm.push(v);
            }
            specs.push(IsomorphismSpec::FiniteRelabel(perm));
        } else {
            return Err(parse_err("expected coord[..], relabel(..), or dihswap", part));
        }
    }
    Ok(if specs.len() == 1 { specs.pop().unwrap() } else { IsomorphismSpec::Compose(specs) })
}

/// Wrap a bare element into a single-finite/single-free product when the
/// descriptor is a product but the text named only one component.
fn coerce(descriptor: &GroupDescriptor, e: GroupElement) -> Result<GroupElement> {
    use crate::groups::GroupKind;
    match (descriptor.kind(), &e) {
        (GroupKind::Product(fs), GroupElement::Product(ps)) if fs.len() == ps.len() => Ok(e),
        (GroupKind::Product(_), _) => Err(Error::DescriptorMismatch {
            context: format!(
                "element {e} has wrong arity for product descriptor {descriptor}"
            ),
        }),
        _ => Ok(e),
    }
}
