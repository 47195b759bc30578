//! Transport of configuration pairs along isomorphisms.
//!
//! Configuration sets are isomorphism-invariant: if `phi` is an automorphism
//! of the group, the pair `(phi(gens), phi(partition))` has exactly the same
//! configuration set at every radius, because `phi` maps radius-`r` witnesses
//! of one pair bijectively onto radius-`r` witnesses of the other. Transport
//! realizes the pair on the right-hand side; transported cells classify
//! `phi(x)` exactly where the originals classified `x`.

use crate::error::Result;
use crate::groups::iso::IsomorphismSpec;
use crate::groups::{GeneratingSequence, GroupDescriptor};
use crate::partition::Partition;

/// Apply `iso` to a pair: generators map forward, cells pull back along the
/// inverse.
pub fn transport(
    iso: &IsomorphismSpec,
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    partition: &Partition,
) -> Result<(GeneratingSequence, Partition)> {
    iso.validate(descriptor)?;
    let mapped: Result<Vec<_>> =
        gens.elements().iter().map(|g| iso.apply(descriptor, g)).collect();
    let gens2 = GeneratingSequence::new(descriptor, mapped?)?;
    let partition2 = partition.transported(iso)?;
    Ok((gens2, partition2))
}
