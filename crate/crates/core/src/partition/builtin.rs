//! The builtin partition families.
//!
//! * `orthant` — the cells `E(sigma, j) = sigma(1)N x ... x sigma(n)N x {x_j}`
//!   on `Z^n` or `Z^n x F`, where `N` is the strictly positive integers and
//!   `0 * N` is read as `{0}` (any other reading breaks disjointness or
//!   totality). Cells are ordered lexicographically in sigma (digit order
//!   `-1 < 0 < 1`) and then in `j`, so there are exactly `3^n * l` cells.
//! * `dinf5` — the five cells of the infinite dihedral group: `{1}`, `{x}`,
//!   `{y}`, the longer words starting with `x`, and the longer words
//!   starting with `y`.
//! * `trivial` — the one-cell partition.
//! * `sign` — alias for the orthant partition on `Z^1`.
//!
//! Each family carries a structural totality/disjointness proof and, for its
//! standard generating sequence, a radius beyond which the configuration set
//! is provably complete (see [`completeness_radius`]).

use crate::error::{Error, Result};
use crate::groups::dihedral::FirstLetter;
use crate::groups::{GroupDescriptor, GroupElement, GroupKind};
use crate::partition::{CellPredicate, Partition, Sign, SignPattern, StructuralFamily};

fn orthant_shape(descriptor: &GroupDescriptor) -> Result<(usize, usize)> {
    match descriptor.kind() {
        GroupKind::FreeAbelian(n) => Ok((*n, 1)),
        GroupKind::Product(fs) => match fs.as_slice() {
            [GroupKind::FreeAbelian(n), GroupKind::Finite(t)] => Ok((*n, t.size())),
            _ => Err(Error::InvalidPredicate {
                reason: format!("orthant partition needs Z^n or Z^n x F, got {descriptor}"),
            }),
        },
        _ => Err(Error::InvalidPredicate {
            reason: format!("orthant partition needs Z^n or Z^n x F, got {descriptor}"),
        }),
    }
}

fn sign_of_digit(d: i8) -> Sign {
    match d {
        -1 => Sign::Neg,
        0 => Sign::Zero,
        _ => Sign::Pos,
    }
}

/// The orthant partition of `Z^n` or `Z^n x F`: `3^n * l` cells indexed by
/// `(sigma, j)`.
pub fn orthant(descriptor: &GroupDescriptor) -> Result<Partition> {
    let (n, l) = orthant_shape(descriptor)?;
    let has_finite = matches!(descriptor.kind(), GroupKind::Product(_));
    let mut cells = Vec::with_capacity(3usize.pow(n as u32) * l);
    for sigma in SignPattern::all(n) {
        for j in 1..=l {
            let mut conj: Vec<CellPredicate> = sigma
                .digits()
                .iter()
                .enumerate()
                .map(|(i, &d)| CellPredicate::SignAtom { coord: i + 1, sign: sign_of_digit(d) })
                .collect();
            let name = if has_finite {
                conj.push(CellPredicate::FiniteAtom { index: j });
                format!("E{sigma};x{j}")
            } else {
                format!("E{sigma}")
            };
            cells.push((name, CellPredicate::and(conj)));
        }
    }
    Partition::with_family(descriptor.clone(), cells, StructuralFamily::Orthant { n, l })
}

/// Cell index (1-based) of `(sigma, j)` in the canonical orthant order.
pub fn orthant_cell_index(n: usize, l: usize, sigma: &SignPattern, j: usize) -> usize {
    debug_assert_eq!(sigma.len(), n);
    sigma.rank() * l + j
}

/// Inverse of [`orthant_cell_index`].
pub fn orthant_cell_of_index(n: usize, l: usize, index: usize) -> (SignPattern, usize) {
    let rank = (index - 1) / l;
    let j = (index - 1) % l + 1;
    let mut digits = vec![0i8; n];
    let mut r = rank;
    for i in (0..n).rev() {
        digits[i] = (r % 3) as i8 - 1;
        r /= 3;
    }
    (SignPattern::new(digits), j)
}

/// The classical five-cell partition of the infinite dihedral group.
pub fn dinf5(descriptor: &GroupDescriptor) -> Result<Partition> {
    if !matches!(descriptor.kind(), GroupKind::DihedralInfinite) {
        return Err(Error::InvalidPredicate {
            reason: format!("dinf5 applies only to Dinf, got {descriptor}"),
        });
    }
    let cells = vec![
        ("e".to_string(), CellPredicate::ElementAtom(descriptor.identity())),
        ("x".to_string(), CellPredicate::ElementAtom(GroupElement::dihedral(true, 0))),
        ("y".to_string(), CellPredicate::ElementAtom(GroupElement::dihedral(true, 1))),
        (
            "xw".to_string(),
            CellPredicate::DihedralAtom { first: FirstLetter::X, min_len: 2 },
        ),
        (
            "yw".to_string(),
            CellPredicate::DihedralAtom { first: FirstLetter::Y, min_len: 2 },
        ),
    ];
    Partition::with_family(descriptor.clone(), cells, StructuralFamily::Dinf5)
}

/// The one-cell partition `{G}` of any builtin group.
pub fn trivial(descriptor: &GroupDescriptor) -> Partition {
    Partition::with_family(
        descriptor.clone(),
        vec![("all".to_string(), CellPredicate::Otherwise)],
        StructuralFamily::Trivial,
    )
    .expect("single otherwise cell is always valid")
}

/// The sign partition of `Z^1` (negatives, `{0}`, positives).
pub fn sign(descriptor: &GroupDescriptor) -> Result<Partition> {
    match descriptor.kind() {
        GroupKind::FreeAbelian(1) => orthant(descriptor),
        _ => Err(Error::InvalidPredicate {
            reason: format!("sign partition applies only to Z^1, got {descriptor}"),
        }),
    }
}

/// Look up a builtin partition by its CLI name.
pub fn by_name(name: &str, descriptor: &GroupDescriptor) -> Result<Partition> {
    match name {
        "orthant" => orthant(descriptor),
        "dinf5" => dinf5(descriptor),
        "trivial" => Ok(trivial(descriptor)),
        "sign" => sign(descriptor),
        _ => Err(Error::Parse {
            what: format!("unknown builtin partition `{name}` (expected orthant|dinf5|trivial|sign)"),
            at: name.to_string(),
        }),
    }
}

/// Radius beyond which the configuration set of `(standard generators,
/// builtin partition)` provably stops growing.
///
/// * Orthant on `Z^n (x F)`: witnesses with every coordinate clamped to
///   `[-2, 1]` plus at most one finite step realize every tuple, because a
///   generator step changes each coordinate by at most 1 and cell membership
///   only distinguishes `{<= -2}, {-1}, {0}, {>= 1}` before and after the
///   step; bound `2n` plus 1 when a finite factor is present.
/// * The five-cell dihedral pair: for any word `w` of length >= 3 the three
///   classes of `w, xw, yw` depend only on the first letter of `w`, so the
///   tuples of `xyx` and `yxy` (length 3) already realize them; bound 3.
/// * The one-cell partition: the single tuple is witnessed by the identity;
///   bound 0.
///
/// Only meaningful when the generating sequence is the descriptor's standard
/// one; callers must check that themselves.
pub fn completeness_radius(family: StructuralFamily) -> usize {
    match family {
        StructuralFamily::Orthant { n, l } => 2 * n + usize::from(l > 1),
        StructuralFamily::Dinf5 => 3,
        StructuralFamily::Trivial => 0,
    }
}
