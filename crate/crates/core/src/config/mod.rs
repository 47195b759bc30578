//! Configuration sets: computation by ball exhaustion, comparison,
//! projection under refinement, and stability scans.
//!
//! For a generating sequence `(g_1, ..., g_k)` and a partition with `m`
//! cells, the configuration of a witness `x` is the tuple
//! `(cell(x), cell(g_1 x), ..., cell(g_k x))`. The configuration set is the
//! set of all tuples realized by some witness; the engine returns the
//! radius-`r` approximation (witnesses drawn from the ball of radius `r`)
//! plus enough metadata to reason about completeness. The approximation is
//! monotone in the radius and equals the full set whenever a structural
//! completeness bound applies (see [`crate::partition::builtin`]).

pub mod dot;
pub mod orthant;
pub mod transport;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::ball::{ball, Ball};
use crate::groups::{GeneratingSequence, GroupDescriptor, GroupElement};
use crate::partition::{builtin, Partition, ProjectionMap};

/// One configuration tuple `(c_0, ..., c_k)` of 1-based cell indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration(Vec<usize>);

impl Configuration {
    pub fn new(entries: Vec<usize>) -> Self {
        Configuration(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The ball element recorded for a tuple, with its word length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub element: GroupElement,
    pub word_length: usize,
}

/// A canonically ordered configuration set with enumeration metadata.
///
/// Tuples are kept sorted lexicographically. Computed sets record, for every
/// tuple, the canonically least witness (smallest word length, then smallest
/// element); sets parsed back from canonical text have no witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationSet {
    tuples: BTreeMap<Configuration, Option<Witness>>,
    radius: usize,
    arity: usize,
    cells: usize,
    /// Largest radius at which a new tuple first appeared.
    last_growth: usize,
    /// Set when a structural completeness bound certifies that no larger
    /// radius can add tuples.
    complete: bool,
}

impl ConfigurationSet {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Generating sequence length `k`; tuples have `k + 1` entries.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of consecutive radii up to `radius` with no growth.
    pub fn stability_streak(&self) -> usize {
        self.radius - self.last_growth
    }

    pub fn configurations(&self) -> impl Iterator<Item = &Configuration> {
        self.tuples.keys()
    }

    pub fn witness(&self, c: &Configuration) -> Option<&Witness> {
        self.tuples.get(c).and_then(|w| w.as_ref())
    }

    pub fn contains(&self, c: &Configuration) -> bool {
        self.tuples.contains_key(c)
    }

    /// Canonical text: a `#` header with the metadata, then one tuple per
    /// line, comma-separated, lexicographically sorted.
    pub fn to_canonical_text(&self) -> String {
        let mut out = format!(
            "# radius={} stability_streak={} tuples={} gens={} cells={} complete={}\n",
            self.radius,
            self.stability_streak(),
            self.tuples.len(),
            self.arity,
            self.cells,
            self.complete
        );
        for c in self.tuples.keys() {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    /// Parse canonical text back into a set (without witnesses).
    pub fn from_canonical_text(text: &str) -> Result<ConfigurationSet> {
        let mut radius = 0usize;
        let mut arity = 0usize;
        let mut cells = 0usize;
        let mut streak = 0usize;
        let mut complete = false;
        let mut saw_header = false;
        let mut tuples = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                saw_header = true;
                for field in header.split_whitespace() {
                    let Some((key, value)) = field.split_once('=') else { continue };
                    match key {
                        "radius" => {
                            radius = value.parse().map_err(|_| Error::Parse {
                                what: "radius".into(),
                                at: value.into(),
                            })?;
                        }
                        "stability_streak" => {
                            streak = value.parse().unwrap_or(0);
                        }
                        "gens" => {
                            arity = value.parse().map_err(|_| Error::Parse {
                                what: "gens".into(),
                                at: value.into(),
                            })?;
                        }
                        "cells" => {
                            cells = value.parse().map_err(|_| Error::Parse {
                                what: "cells".into(),
                                at: value.into(),
                            })?;
                        }
                        "complete" => complete = value == "true",
                        _ => {}
                    }
                }
                continue;
            }
            let mut entries = Vec::new();
            for tok in line.split(',') {
                let v: usize = tok.trim().parse().map_err(|_| Error::Parse {
                    what: "tuple entry".into(),
                    at: format!("line {}: {tok}", lineno + 1),
                })?;
                entries.push(v);
            }
            tuples.insert(Configuration(entries), None);
        }
        if !saw_header {
            return Err(Error::Parse {
                what: "missing `#` header line".into(),
                at: "line 1".into(),
            });
        }
        // infer shape from the tuples when the header omitted it, and
        // reject ragged tuple lists either way
        if let Some(first) = tuples.keys().next() {
            if arity == 0 {
                arity = first.len().saturating_sub(1);
            }
            if let Some(bad) = tuples.keys().find(|c| c.len() != arity + 1) {
                return Err(Error::Parse {
                    what: format!("tuple {bad} has {} entries, expected {}", bad.len(), arity + 1),
                    at: bad.to_string(),
                });
            }
            if cells == 0 {
                cells = tuples
                    .keys()
                    .flat_map(|c| c.entries().iter().copied())
                    .max()
                    .unwrap_or(0);
            }
        }
        let last_growth = radius.saturating_sub(streak);
        Ok(ConfigurationSet { tuples, radius, arity, cells, last_growth, complete })
    }
}

/// Options for the computation; `workers > 1` shards the witness scan, with
/// a merge that keeps the canonically least witness per tuple so the result
/// is schedule-independent.
#[derive(Debug, Clone, Copy)]
pub struct ComputeOptions {
    pub workers: usize,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { workers: 1 }
    }
}

/// Compute the radius-`r` configuration set of a pair.
pub fn compute_config_set(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    partition: &Partition,
    radius: usize,
) -> Result<ConfigurationSet> {
    compute_config_set_opts(descriptor, gens, partition, radius, ComputeOptions::default())
}

pub fn compute_config_set_opts(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    partition: &Partition,
    radius: usize,
    options: ComputeOptions,
) -> Result<ConfigurationSet> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if partition.descriptor() != descriptor {
        return Err(Error::DescriptorMismatch {
            context: format!(
                "partition is over {}, computation over {descriptor}",
                partition.descriptor()
            ),
        });
    }
    let b = ball(descriptor, gens, radius)?;
    let validation = partition.validate_on_ball(&b);
    if !validation.is_ok() {
        return match validation {
            crate::partition::ValidationReport::NoCell { witness } => {
                Err(Error::NoCell { witness: witness.to_string() })
            }
            crate::partition::ValidationReport::Ambiguous { witness, cells } => {
                Err(Error::AmbiguousCell { witness: witness.to_string(), cells })
            }
            crate::partition::ValidationReport::Ok { .. } => unreachable!(),
        };
    }

    let tuples = scan_witnesses(descriptor, gens, partition, &b, options)?;
    let last_growth = tuples
        .values()
        .filter_map(|w| w.as_ref().map(|w| w.word_length))
        .max()
        .unwrap_or(0);
    let complete = structurally_complete(descriptor, gens, partition, radius);
    Ok(ConfigurationSet {
        tuples,
        radius,
        arity: gens.len(),
        cells: partition.len(),
        last_growth,
        complete,
    })
}

fn scan_witnesses(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    partition: &Partition,
    b: &Ball,
    options: ComputeOptions,
) -> Result<BTreeMap<Configuration, Option<Witness>>> {
    let tuple_of = |x: &GroupElement| -> Result<Configuration> {
        let mut entries = Vec::with_capacity(gens.len() + 1);
        entries.push(partition.classify(x)?);
        for g in gens.elements() {
            let gx = descriptor.multiply(g, x)?;
            entries.push(partition.classify(&gx)?);
        }
        Ok(Configuration(entries))
    };

    let workers = options.workers.max(1);
    if workers == 1 {
        let mut tuples: BTreeMap<Configuration, Option<Witness>> = BTreeMap::new();
        // ball order is (word length, canonical element order), so the first
        // witness seen for a tuple is the canonically least one
        for (x, len) in b.iter_with_lengths() {
            let t = tuple_of(x)?;
            tuples.entry(t).or_insert_with(|| {
                Some(Witness { element: x.clone(), word_length: len })
            });
        }
        return Ok(tuples);
    }

    let items: Vec<(&GroupElement, usize)> = b.iter_with_lengths().collect();
    let chunk = items.len().div_ceil(workers);
    let shards: Vec<Result<BTreeMap<Configuration, Witness>>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for part in items.chunks(chunk.max(1)) {
            handles.push(scope.spawn(move || {
                let mut local: BTreeMap<Configuration, Witness> = BTreeMap::new();
                for (x, len) in part {
                    let t = tuple_of(x)?;
                    let cand = Witness { element: (*x).clone(), word_length: *len };
                    match local.get_mut(&t) {
                        None => {
                            local.insert(t, cand);
                        }
                        Some(prev) => {
                            if (cand.word_length, &cand.element)
                                < (prev.word_length, &prev.element)
                            {
                                *prev = cand;
                            }
                        }
                    }
                }
                Ok(local)
            }));
        }
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut tuples: BTreeMap<Configuration, Option<Witness>> = BTreeMap::new();
    for shard in shards {
        for (t, w) in shard? {
            match tuples.get_mut(&t) {
                None => {
                    tuples.insert(t, Some(w));
                }
                Some(slot) => {
                    let prev = slot.as_ref().expect("computed sets always carry witnesses");
                    if (w.word_length, &w.element) < (prev.word_length, &prev.element) {
                        *slot = Some(w);
                    }
                }
            }
        }
    }
    Ok(tuples)
}

/// True when a structural completeness bound certifies the set is the full
/// `Con(g, E)`: the partition is a builtin family, the generators are the
/// standard ones, and the radius reaches the family's bound.
fn structurally_complete(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    partition: &Partition,
    radius: usize,
) -> bool {
    let Some(family) = partition.structural_family() else {
        return false;
    };
    let standard = descriptor.standard_generators();
    gens.elements() == standard.elements() && radius >= builtin::completeness_radius(family)
}

/// One row of a stability scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanEntry {
    pub radius: usize,
    pub size: usize,
    pub grew: bool,
}

/// Result of scanning radii `r_min ..= r_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityScan {
    pub entries: Vec<ScanEntry>,
    /// The last radius at which the set grew, when growth had stopped by
    /// `r_max`; `None` if the set was still growing at `r_max`.
    pub stable_from: Option<usize>,
}

impl fmt::Display for StabilityScan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "radius {:>3}: {:>6} tuples{}", e.radius, e.size, if e.grew { "  (+)" } else { "" })?;
        }
        match self.stable_from {
            Some(r) => write!(f, "no growth after radius {r}"),
            None => write!(f, "still growing at the last scanned radius"),
        }
    }
}

/// Sizes of the configuration set per radius; one enumeration at `r_max`
/// serves every radius because witnesses carry their word length.
pub fn stability_scan(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    partition: &Partition,
    r_min: usize,
    r_max: usize,
) -> Result<StabilityScan> {
    if r_min > r_max {
        return Err(Error::ShapeMismatch {
            context: format!("scan range {r_min}..{r_max} is empty"),
        });
    }
    let full = compute_config_set(descriptor, gens, partition, r_max)?;
    let first_seen: Vec<usize> = full
        .tuples
        .values()
        .map(|w| w.as_ref().expect("computed set has witnesses").word_length)
        .collect();
    let size_at = |r: usize| first_seen.iter().filter(|&&l| l <= r).count();
    let mut entries = Vec::with_capacity(r_max - r_min + 1);
    for r in r_min..=r_max {
        let size = size_at(r);
        let prev = if r == 0 { 0 } else { size_at(r - 1) };
        entries.push(ScanEntry { radius: r, size, grew: size > prev });
    }
    let last_growth = full.last_growth;
    let stable_from = if last_growth < r_max { Some(last_growth) } else { None };
    Ok(StabilityScan { entries, stable_from })
}

/// Map every tuple coordinatewise through a projection and merge duplicates,
/// keeping the canonically least witness.
pub fn project_config_set(
    set: &ConfigurationSet,
    map: &ProjectionMap,
) -> Result<ConfigurationSet> {
    let mut tuples: BTreeMap<Configuration, Option<Witness>> = BTreeMap::new();
    for (c, w) in &set.tuples {
        let mut entries = Vec::with_capacity(c.len());
        for &i in c.entries() {
            entries.push(map.apply(i)?);
        }
        let t = Configuration(entries);
        match tuples.get_mut(&t) {
            None => {
                tuples.insert(t, w.clone());
            }
            Some(slot) => {
                let better = match (&slot, &w) {
                    (Some(prev), Some(cand)) => {
                        (cand.word_length, &cand.element) < (prev.word_length, &prev.element)
                    }
                    (None, Some(_)) => true,
                    _ => false,
                };
                if better {
                    *slot = w.clone();
                }
            }
        }
    }
    let last_growth = tuples
        .values()
        .filter_map(|w| w.as_ref().map(|w| w.word_length))
        .max()
        .unwrap_or(0);
    Ok(ConfigurationSet {
        tuples,
        radius: set.radius,
        arity: set.arity,
        cells: map.target_cells(),
        last_growth,
        complete: set.complete,
    })
}

/// Outcome of comparing two configuration sets of the same shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetComparison {
    Equal,
    Diff { only_in_a: Vec<Configuration>, only_in_b: Vec<Configuration> },
}

impl fmt::Display for SetComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetComparison::Equal => write!(f, "equal"),
            SetComparison::Diff { only_in_a, only_in_b } => {
                writeln!(f, "different:")?;
                for c in only_in_a {
                    writeln!(f, "  only in first:  {c}")?;
                }
                for c in only_in_b {
                    writeln!(f, "  only in second: {c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Symmetric difference of two sets; errors unless both have the same tuple
/// arity and cell count.
pub fn compare_sets(a: &ConfigurationSet, b: &ConfigurationSet) -> Result<SetComparison> {
    if a.arity != b.arity {
        return Err(Error::ShapeMismatch {
            context: format!("tuple arities differ: {} vs {}", a.arity, b.arity),
        });
    }
    if a.cells != b.cells {
        return Err(Error::ShapeMismatch {
            context: format!("partition sizes differ: {} vs {}", a.cells, b.cells),
        });
    }
    let only_in_a: Vec<Configuration> = a
        .tuples
        .keys()
        .filter(|c| !b.tuples.contains_key(*c))
        .cloned()
        .collect();
    let only_in_b: Vec<Configuration> = b
        .tuples
        .keys()
        .filter(|c| !a.tuples.contains_key(*c))
        .cloned()
        .collect();
    if only_in_a.is_empty() && only_in_b.is_empty() {
        Ok(SetComparison::Equal)
    } else {
        Ok(SetComparison::Diff { only_in_a, only_in_b })
    }
}
