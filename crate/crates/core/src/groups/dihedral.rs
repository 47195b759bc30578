//! The infinite dihedral group as isometries of the integer line.
//!
//! An element is stored as `(flip, offset)` encoding the isometry
//! `t -> (-1)^flip * t + offset`. The two standard generators are
//!
//! * `x = dih(1, 0)`, the reflection `t -> -t`,
//! * `y = dih(1, 1)`, the reflection `t -> -t + 1`,
//!
//! which satisfy `x^2 = y^2 = 1` and generate every isometry. Storing the
//! isometry rather than a word gives O(1) canonical equality; the reduced
//! word in `x, y` is derived on demand.
//!
//! Word facts used throughout (derived from `xy = t -> t - 1`):
//!
//! * translations `(0, a)`: `a > 0` is `(yx)^a`, `a < 0` is `(xy)^-a`,
//!   reduced length `2|a|`;
//! * reflections `(1, a)`: `a <= 0` starts with `x` and has length `1 - 2a`,
//!   `a >= 1` starts with `y` and has length `2a - 1`.
//!
//! An element has finite order iff it is a reflection (odd reduced length),
//! matching the parity criterion for products of the two involutions.

/// First letter of the reduced word of a nontrivial element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FirstLetter {
    X,
    Y,
}

/// Compose isometries: `(a . b)(t) = a(b(t))`.
pub fn compose(a: (bool, i64), b: (bool, i64)) -> (bool, i64) {
    let (fa, oa) = a;
    let (fb, ob) = b;
    (fa ^ fb, if fa { oa - ob } else { oa + ob })
}

pub fn invert(a: (bool, i64)) -> (bool, i64) {
    let (f, o) = a;
    if f { (true, o) } else { (false, -o) }
}

/// Reduced word length of the element in the generators `x, y`.
pub fn word_length(flip: bool, offset: i64) -> u64 {
    if flip {
        if offset <= 0 {
            (1 - 2 * offset) as u64
        } else {
            (2 * offset - 1) as u64
        }
    } else {
        2 * offset.unsigned_abs()
    }
}

/// First letter of the reduced word; `None` for the identity.
pub fn first_letter(flip: bool, offset: i64) -> Option<FirstLetter> {
    if flip {
        Some(if offset <= 0 { FirstLetter::X } else { FirstLetter::Y })
    } else if offset > 0 {
        Some(FirstLetter::Y)
    } else if offset < 0 {
        Some(FirstLetter::X)
    } else {
        None
    }
}

/// The reduced word itself, e.g. `"xyx"`; empty for the identity.
pub fn word(flip: bool, offset: i64) -> String {
    let len = word_length(flip, offset) as usize;
    let mut s = String::with_capacity(len);
    let mut cur = first_letter(flip, offset);
    for _ in 0..len {
        match cur {
            Some(FirstLetter::X) => {
                s.push('x');
                cur = Some(FirstLetter::Y);
            }
            Some(FirstLetter::Y) => {
                s.push('y');
                cur = Some(FirstLetter::X);
            }
            None => unreachable!(),
        }
    }
    s
}
