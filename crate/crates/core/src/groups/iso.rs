//! Concrete isomorphisms of the builtin groups, used to transport
//! configuration pairs.
//!
//! Only shapes whose correctness is checkable at construction are offered: a
//! unimodular coordinate change on the free abelian part, a relabeling of a
//! finite factor along a table automorphism, the generator swap of the
//! infinite dihedral group, and compositions of these.

use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupElement, GroupKind};
use crate::matrix::IntMatrix;
use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsomorphismSpec {
    /// `v -> M v` on the free abelian coordinates; `M` must be unimodular.
    CoordinateChange(Vec<Vec<i64>>),
    /// Relabel the finite factor's indices along a table automorphism
    /// (`perm[i-1]` is the image of index `i`).
    FiniteRelabel(Vec<usize>),
    /// The automorphism of the infinite dihedral group exchanging the two
    /// reflection generators: `x <-> y`, i.e. conjugation by the reflection
    /// in 1/2, sending `dih(0,a) -> dih(0,-a)` and `dih(1,a) -> dih(1,1-a)`.
    DihedralSwap,
    /// Apply left to right.
    Compose(Vec<IsomorphismSpec>),
}

impl IsomorphismSpec {
    /// Check this isomorphism against a descriptor: matrix shape and unimodularity,
    /// automorphism property of the permutation, kind compatibility.
    pub fn validate(&self, descriptor: &GroupDescriptor) -> Result<()> {
        match self {
            IsomorphismSpec::CoordinateChange(m) => {
                let n = descriptor.free_rank();
                if n == 0 {
                    return Err(Error::IsoMismatch {
                        reason: "coordinate change on a group with no free part".into(),
                    });
                }
                if m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(Error::IsoMismatch {
                        reason: format!("coordinate change must be {n}x{n}"),
                    });
                }
                let det = IntMatrix::from_i64(m).det();
                if !det.abs().is_one() {
                    return Err(Error::IsoMismatch {
                        reason: format!("matrix has determinant {det}, not +-1"),
                    });
                }
                // The free coordinates must form one contiguous block, which
                // holds when there is at most one free abelian factor.
                let free_factors = count_free_factors(descriptor.kind());
                if free_factors > 1 {
                    return Err(Error::IsoMismatch {
                        reason: "coordinate change requires a single free abelian factor".into(),
                    });
                }
                Ok(())
            }
            IsomorphismSpec::FiniteRelabel(perm) => {
                let Some(table) = descriptor.finite_table() else {
                    return Err(Error::IsoMismatch {
                        reason: "relabel requires exactly one finite factor".into(),
                    });
                };
                if !table.is_automorphism(perm) {
                    return Err(Error::IsoMismatch {
                        reason: format!("{perm:?} is not a table automorphism"),
                    });
                }
                Ok(())
            }
            IsomorphismSpec::DihedralSwap => match descriptor.kind() {
                GroupKind::DihedralInfinite => Ok(()),
                _ => Err(Error::IsoMismatch {
                    reason: "dihedral swap only applies to Dinf".into(),
                }),
            },
            IsomorphismSpec::Compose(parts) => {
                parts.iter().try_for_each(|p| p.validate(descriptor))
            }
        }
    }

    /// Image of an element; `validate` must have succeeded.
    #[allow(clippy::only_used_in_recursion)]
    pub fn apply(&self, descriptor: &GroupDescriptor, e: &GroupElement) -> Result<GroupElement> {
        match self {
            IsomorphismSpec::CoordinateChange(m) => try_map_free(e, &|v| {
                m.iter()
                    .map(|row| {
                        row.iter().zip(v).try_fold(0i64, |acc, (a, b)| {
                            a.checked_mul(*b)
                                .and_then(|p| acc.checked_add(p))
                                .ok_or(Error::Overflow {
                                    context: "coordinate change".into(),
                                })
                        })
                    })
                    .collect()
            }),
            IsomorphismSpec::FiniteRelabel(perm) => Ok(map_finite(e, &|j| perm[j - 1])),
            IsomorphismSpec::DihedralSwap => match e {
                GroupElement::Dihedral { flip, offset } => Ok(GroupElement::Dihedral {
                    flip: *flip,
                    offset: if *flip { 1 - offset } else { -offset },
                }),
                _ => Err(Error::IsoMismatch { reason: format!("dihedral swap on {e}") }),
            },
            IsomorphismSpec::Compose(parts) => {
                let mut cur = e.clone();
                for p in parts {
                    cur = p.apply(descriptor, &cur)?;
                }
                Ok(cur)
            }
        }
    }

    /// The inverse isomorphism.
    pub fn inverse(&self) -> IsomorphismSpec {
        match self {
            IsomorphismSpec::CoordinateChange(m) => {
                let inv = IntMatrix::from_i64(m).unimodular_inverse();
                let rows = (0..inv.nrows())
                    .map(|i| {
                        (0..inv.ncols())
                            .map(|j| {
                                i64::try_from(&inv[(i, j)]).expect("unimodular inverse fits i64")
                            })
                            .collect()
                    })
                    .collect();
                IsomorphismSpec::CoordinateChange(rows)
            }
            IsomorphismSpec::FiniteRelabel(perm) => {
                let mut inv = vec![0; perm.len()];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p - 1] = i + 1;
                }
                IsomorphismSpec::FiniteRelabel(inv)
            }
            IsomorphismSpec::DihedralSwap => IsomorphismSpec::DihedralSwap,
            IsomorphismSpec::Compose(parts) => {
                IsomorphismSpec::Compose(parts.iter().rev().map(|p| p.inverse()).collect())
            }
        }
    }
}

fn count_free_factors(kind: &GroupKind) -> usize {
    match kind {
        GroupKind::FreeAbelian(_) => 1,
        GroupKind::Product(fs) => fs.iter().map(count_free_factors).sum(),
        _ => 0,
    }
}

fn try_map_free(
    e: &GroupElement,
    f: &dyn Fn(&[i64]) -> Result<Vec<i64>>,
) -> Result<GroupElement> {
    match e {
        GroupElement::IntVector(v) => Ok(GroupElement::IntVector(f(v)?)),
        GroupElement::Product(ps) => Ok(GroupElement::Product(
            ps.iter().map(|p| try_map_free(p, f)).collect::<Result<_>>()?,
        )),
        other => Ok(other.clone()),
    }
}

fn map_finite(e: &GroupElement, f: &dyn Fn(usize) -> usize) -> GroupElement {
    match e {
        GroupElement::FinitePoint(j) => GroupElement::FinitePoint(f(*j)),
        GroupElement::Product(ps) => {
            GroupElement::Product(ps.iter().map(|p| map_finite(p, f)).collect())
        }
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite::FiniteTable;

    #[test]
    fn coordinate_change_is_a_homomorphism() {
        let d = GroupDescriptor::free_abelian(2).unwrap();
        let iso = IsomorphismSpec::CoordinateChange(vec![vec![1, 1], vec![0, 1]]);
        iso.validate(&d).unwrap();
        let a = GroupElement::IntVector(vec![2, -1]);
        let b = GroupElement::IntVector(vec![1, 3]);
        let lhs = iso.apply(&d, &d.multiply(&a, &b).unwrap()).unwrap();
        let rhs = d
            .multiply(&iso.apply(&d, &a).unwrap(), &iso.apply(&d, &b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // inverse really inverts
        let back = iso.inverse().apply(&d, &iso.apply(&d, &a).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn rejects_non_unimodular() {
        let d = GroupDescriptor::free_abelian(2).unwrap();
        let iso = IsomorphismSpec::CoordinateChange(vec![vec![2, 0], vec![0, 1]]);
        assert!(iso.validate(&d).is_err());
    }

    #[test]
    fn dihedral_swap_is_an_involutive_homomorphism() {
        let d = GroupDescriptor::dihedral_infinite();
        let iso = IsomorphismSpec::DihedralSwap;
        iso.validate(&d).unwrap();
        let x = GroupElement::dihedral(true, 0);
        let y = GroupElement::dihedral(true, 1);
        assert_eq!(iso.apply(&d, &x).unwrap(), y);
        assert_eq!(iso.apply(&d, &y).unwrap(), x);
        // homomorphism on a sample
        for a in [-3i64..=3].into_iter().flatten() {
            for fa in [false, true] {
                for b in -3i64..=3 {
                    for fb in [false, true] {
                        let u = GroupElement::dihedral(fa, a);
                        let v = GroupElement::dihedral(fb, b);
                        let lhs = iso.apply(&d, &d.multiply(&u, &v).unwrap()).unwrap();
                        let rhs = d
                            .multiply(&iso.apply(&d, &u).unwrap(), &iso.apply(&d, &v).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn finite_relabel_checks_automorphism() {
        let d = GroupDescriptor::product(vec![
            GroupDescriptor::free_abelian(1).unwrap(),
            GroupDescriptor::finite(FiniteTable::cyclic(3)),
        ])
        .unwrap();
        // inversion of Z3 swaps the two nontrivial elements
        let iso = IsomorphismSpec::FiniteRelabel(vec![1, 3, 2]);
        iso.validate(&d).unwrap();
        // moving the identity is not an automorphism
        let bad = IsomorphismSpec::FiniteRelabel(vec![2, 1, 3]);
        assert!(bad.validate(&d).is_err());
    }
}
