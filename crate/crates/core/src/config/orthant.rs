//! The containment properties of the orthant model.
//!
//! For `Z^n x F` with the standard generating sequence (basis vectors, then
//! every table element) and the orthant partition, the configuration tuples
//! obey four containments, checked here tuple by tuple. Writing the root
//! cell as `(sigma, j)`:
//!
//! * (I)   `sigma(i) = 0`: the `i`-th entry is the cell with digit `i`
//!   flipped to `+` (adding `e_i` to a zero coordinate makes it 1);
//! * (II)  `sigma(i) = +`: the `i`-th entry stays in `(sigma, j)`;
//! * (III) `sigma(i) = -`: the `i`-th entry is `(sigma, j)` itself or the
//!   cell with digit `i` set to `0` (a -1 coordinate steps to 0);
//! * (IV)  the `(n+i)`-th entry is exactly `(sigma, pi(i,j))`, where `pi`
//!   is the multiplication table.

use crate::config::ConfigurationSet;
use crate::error::{Error, Result};
use crate::groups::{GeneratingSequence, GroupDescriptor};
use crate::partition::builtin::{orthant_cell_index, orthant_cell_of_index};
use crate::partition::{Partition, StructuralFamily};

#[derive(Debug, Clone)]
pub struct OrthantPropertyReport {
    pub tuples_checked: usize,
    pub violations: Vec<String>,
}

impl OrthantPropertyReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check properties (I)-(IV) on every tuple of a computed set. The set must
/// come from the orthant partition with the standard generators.
pub fn verify_orthant_properties(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    partition: &Partition,
    set: &ConfigurationSet,
) -> Result<OrthantPropertyReport> {
    let Some(StructuralFamily::Orthant { n, l }) = partition.structural_family() else {
        return Err(Error::ShapeMismatch {
            context: "orthant properties need the orthant partition".into(),
        });
    };
    let standard = descriptor.standard_generators();
    if gens.elements() != standard.elements() {
        return Err(Error::ShapeMismatch {
            context: "orthant properties need the standard generating sequence".into(),
        });
    }
    if set.arity() != gens.len() || set.cells() != partition.len() {
        return Err(Error::ShapeMismatch {
            context: "configuration set does not match the pair".into(),
        });
    }

    let table = descriptor.finite_table();
    let mut violations = Vec::new();
    let mut tuples_checked = 0usize;
    #[allow(clippy::needless_range_loop)]
    for c in set.configurations() {
        tuples_checked += 1;
        let entries = c.entries();
        let (sigma, j) = orthant_cell_of_index(n, l, entries[0]);
        for i in 1..=n {
            let digit = sigma.digits()[i - 1];
            let got = entries[i];
            match digit {
                0 => {
                    let want = orthant_cell_index(n, l, &sigma.with_digit(i - 1, 1), j);
                    if got != want {
                        violations.push(format!("(I) fails on {c}: entry {i} is {got}, expected {want}"));
                    }
                }
                1 => {
                    let want = orthant_cell_index(n, l, &sigma, j);
                    if got != want {
                        violations.push(format!("(II) fails on {c}: entry {i} is {got}, expected {want}"));
                    }
                }
                _ => {
                    let stay = orthant_cell_index(n, l, &sigma, j);
                    let step = orthant_cell_index(n, l, &sigma.with_digit(i - 1, 0), j);
                    if got != stay && got != step {
                        violations.push(format!(
                            "(III) fails on {c}: entry {i} is {got}, expected {stay} or {step}"
                        ));
                    }
                }
            }
        }
        if let Some(t) = table {
            for i in 1..=l {
                let want = orthant_cell_index(n, l, &sigma, t.mul(i, j));
                let got = entries[n + i];
                if got != want {
                    violations.push(format!(
                        "(IV) fails on {c}: entry {} is {got}, expected {want}",
                        n + i
                    ));
                }
            }
        }
    }
    Ok(OrthantPropertyReport { tuples_checked, violations })
}
