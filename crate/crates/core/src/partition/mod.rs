//! Closed predicate language for finite partitions of a group.
//!
//! A partition is an ordered list of named cells, each given by a predicate
//! decidable in one pass over a canonical element. Totality and disjointness
//! are witnessed either structurally (builtin families) or by sampling a
//! validation ball; sampled verdicts are explicitly marked as ball-only.

pub mod builtin;
pub mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::groups::ball::Ball;
use crate::groups::dihedral::{self, FirstLetter};
use crate::groups::iso::IsomorphismSpec;
use crate::groups::{GroupDescriptor, GroupElement, GroupKind};

/// Coordinate sign used by sign and matrix-entry atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of_i64(v: i64) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Neg,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Pos,
        }
    }

    pub fn of_bigint(v: &BigInt) -> Sign {
        if v.is_negative() {
            Sign::Neg
        } else if v.is_positive() {
            Sign::Pos
        } else {
            Sign::Zero
        }
    }

    pub fn symbol(&self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// Test applied to one matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixTest {
    Sign(Sign),
    Value(BigInt),
}

/// Expression tree of the cell predicate language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellPredicate {
    /// Sign of the `coord`-th (1-based) free abelian coordinate.
    SignAtom { coord: usize, sign: Sign },
    /// The finite component equals index `j`.
    FiniteAtom { index: usize },
    /// Singleton: the element equals this one.
    ElementAtom(GroupElement),
    /// Infinite dihedral: reduced word starts with the given letter and has
    /// length at least `min_len`.
    DihedralAtom { first: FirstLetter, min_len: u64 },
    /// Test on one superdiagonal entry of a unitriangular matrix.
    MatrixAtom { row: usize, col: usize, test: MatrixTest },
    And(Vec<CellPredicate>),
    Or(Vec<CellPredicate>),
    Not(Box<CellPredicate>),
    /// Catch-all; allowed only as the final cell of a partition, where it
    /// compiles to the negation of the union of the other cells.
    Otherwise,
    /// Pullback along an isomorphism: holds on `e` iff `inner` holds on
    /// `inverse(e)`. Produced by transport; not part of the file grammar.
    Mapped { inverse: IsomorphismSpec, inner: Box<CellPredicate> },
}

impl CellPredicate {
    pub fn and(parts: Vec<CellPredicate>) -> CellPredicate {
        CellPredicate::And(parts)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: CellPredicate) -> CellPredicate {
        CellPredicate::Not(Box::new(p))
    }

    /// Structural compatibility with a descriptor; rejects `Otherwise`
    /// (the partition constructor strips it before calling this).
    fn shape_check(&self, descriptor: &GroupDescriptor) -> Result<()> {
        match self {
            CellPredicate::SignAtom { coord, .. } => {
                let n = descriptor.free_rank();
                if *coord < 1 || *coord > n {
                    return Err(Error::InvalidPredicate {
                        reason: format!("sign atom coordinate {coord} outside 1..={n}"),
                    });
                }
                Ok(())
            }
            CellPredicate::FiniteAtom { index } => match descriptor.finite_table() {
                Some(t) if *index >= 1 && *index <= t.size() => Ok(()),
                Some(t) => Err(Error::InvalidPredicate {
                    reason: format!("finite atom index {index} outside 1..={}", t.size()),
                }),
                None => Err(Error::InvalidPredicate {
                    reason: "finite atom needs exactly one finite factor".into(),
                }),
            },
            CellPredicate::ElementAtom(e) => {
                if descriptor.contains(e) {
                    Ok(())
                } else {
                    Err(Error::InvalidPredicate {
                        reason: format!("element atom {e} not in {descriptor}"),
                    })
                }
            }
            CellPredicate::DihedralAtom { min_len, .. } => {
                if !matches!(descriptor.kind(), GroupKind::DihedralInfinite) {
                    return Err(Error::InvalidPredicate {
                        reason: "dihedral atom applies only to Dinf".into(),
                    });
                }
                if *min_len < 1 {
                    return Err(Error::InvalidPredicate {
                        reason: "dihedral atom min length must be >= 1".into(),
                    });
                }
                Ok(())
            }
            CellPredicate::MatrixAtom { row, col, .. } => match descriptor.kind() {
                GroupKind::Unitriangular(n) if *row >= 1 && row < col && *col <= *n => Ok(()),
                GroupKind::Unitriangular(n) => Err(Error::InvalidPredicate {
                    reason: format!("matrix atom ({row},{col}) not above the diagonal of UT({n})"),
                }),
                _ => Err(Error::InvalidPredicate {
                    reason: "matrix atom applies only to UT(n)".into(),
                }),
            },
            CellPredicate::And(ps) | CellPredicate::Or(ps) => {
                ps.iter().try_for_each(|p| p.shape_check(descriptor))
            }
            CellPredicate::Not(p) => p.shape_check(descriptor),
            CellPredicate::Otherwise => Err(Error::InvalidPredicate {
                reason: "`otherwise` may only appear as the final cell".into(),
            }),
            CellPredicate::Mapped { inverse, inner } => {
                inverse.validate(descriptor)?;
                inner.shape_check(descriptor)
            }
        }
    }

    /// Decide the predicate on a canonical element.
    pub fn eval(&self, descriptor: &GroupDescriptor, e: &GroupElement) -> Result<bool> {
        match self {
            CellPredicate::SignAtom { coord, sign } => {
                let coords = e.free_coords();
                Ok(Sign::of_i64(coords[*coord - 1]) == *sign)
            }
            CellPredicate::FiniteAtom { index } => Ok(e.finite_index() == Some(*index)),
            CellPredicate::ElementAtom(a) => Ok(a == e),
            CellPredicate::DihedralAtom { first, min_len } => match e {
                GroupElement::Dihedral { flip, offset } => {
                    Ok(dihedral::first_letter(*flip, *offset) == Some(*first)
                        && dihedral::word_length(*flip, *offset) >= *min_len)
                }
                _ => Ok(false),
            },
            CellPredicate::MatrixAtom { row, col, test } => match e {
                GroupElement::Unitriangular(m) => {
                    let entry = &m[(row - 1, col - 1)];
                    Ok(match test {
                        MatrixTest::Sign(s) => Sign::of_bigint(entry) == *s,
                        MatrixTest::Value(v) => entry == v,
                    })
                }
                _ => Ok(false),
            },
            CellPredicate::And(ps) => {
                for p in ps {
                    if !p.eval(descriptor, e)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CellPredicate::Or(ps) => {
                for p in ps {
                    if p.eval(descriptor, e)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            CellPredicate::Not(p) => Ok(!p.eval(descriptor, e)?),
            CellPredicate::Otherwise => Err(Error::InvalidPredicate {
                reason: "`otherwise` must be compiled before evaluation".into(),
            }),
            CellPredicate::Mapped { inverse, inner } => {
                let pre = inverse.apply(descriptor, e)?;
                inner.eval(descriptor, &pre)
            }
        }
    }
}

impl fmt::Display for CellPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellPredicate::SignAtom { coord, sign } => {
                write!(f, "sign({coord},{})", sign.symbol())
            }
            CellPredicate::FiniteAtom { index } => write!(f, "finite({index})"),
            CellPredicate::ElementAtom(e) => write!(f, "elem({e})"),
            CellPredicate::DihedralAtom { first, min_len } => {
                let c = match first {
                    FirstLetter::X => 'x',
                    FirstLetter::Y => 'y',
                };
                write!(f, "dih({c},{min_len})")
            }
            CellPredicate::MatrixAtom { row, col, test } => match test {
                MatrixTest::Sign(s) => write!(f, "entry({row},{col},{})", s.symbol()),
                MatrixTest::Value(v) => write!(f, "entry({row},{col},={v})"),
            },
            CellPredicate::And(ps) => {
                write!(f, "(")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " and ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            CellPredicate::Or(ps) => {
                write!(f, "(")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            CellPredicate::Not(p) => write!(f, "not {p}"),
            CellPredicate::Otherwise => write!(f, "otherwise"),
            CellPredicate::Mapped { inner, .. } => write!(f, "pulled[{inner}]"),
        }
    }
}

/// A sign vector `sigma : {1..n} -> {-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(digits: Vec<i8>) -> Self {
        assert!(digits.iter().all(|d| (-1..=1).contains(d)));
        SignPattern(digits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[i8] {
        &self.0
    }

    pub fn of_coords(coords: &[i64]) -> Self {
        SignPattern(coords.iter().map(|&c| c.signum() as i8).collect())
    }

    /// All `3^n` patterns, lexicographic with digit order `-1 < 0 < 1`.
    pub fn all(n: usize) -> Vec<SignPattern> {
        let mut out = vec![SignPattern(Vec::new())];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * 3);
            for p in &out {
                for d in [-1i8, 0, 1] {
                    let mut digits = p.0.clone();
                    digits.push(d);
                    next.push(SignPattern(digits));
                }
            }
            out = next;
        }
        out
    }

    /// Position in the lexicographic enumeration above.
    pub fn rank(&self) -> usize {
        self.0.iter().fold(0usize, |acc, d| acc * 3 + (d + 1) as usize)
    }

    /// Copy with one digit replaced.
    pub fn with_digit(&self, i: usize, d: i8) -> SignPattern {
        let mut digits = self.0.clone();
        digits[i] = d;
        SignPattern(digits)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", match d {
                -1 => '-',
                0 => '0',
                _ => '+',
            })?;
        }
        write!(f, ")")
    }
}

/// Families whose totality and disjointness hold by construction rather
/// than by sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralFamily {
    /// Orthant cells `E(sigma, j)` on `Z^n x F`: every element has exactly
    /// one sign pattern and one finite index.
    Orthant { n: usize, l: usize },
    /// The five-cell partition of the infinite dihedral group: the identity,
    /// the two generators, and the two first-letter classes of longer words.
    Dinf5,
    /// The one-cell partition.
    Trivial,
}

/// One named cell: the declared predicate plus its compiled form (identical
/// except that a final `otherwise` compiles to the complement of the union
/// of the other cells).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    name: String,
    surface: CellPredicate,
    compiled: CellPredicate,
}

impl Cell {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn predicate(&self) -> &CellPredicate {
        &self.surface
    }
}

/// Ordered, named, pairwise-disjoint and total list of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    descriptor: GroupDescriptor,
    cells: Vec<Cell>,
    structural: Option<StructuralFamily>,
}

/// How a partition was certified valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// A builtin family with a construction-level proof.
    Structural,
    /// Verified on a ball only; says nothing beyond the sampled radius.
    BallSampled { radius: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Ok { mode: ValidationMode },
    NoCell { witness: GroupElement },
    Ambiguous { witness: GroupElement, cells: Vec<usize> },
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationReport::Ok { .. })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Ok { mode: ValidationMode::Structural } => {
                write!(f, "ok (structural proof)")
            }
            ValidationReport::Ok { mode: ValidationMode::BallSampled { radius } } => {
                write!(f, "ok (verified on ball of radius {radius} only)")
            }
            ValidationReport::NoCell { witness } => {
                write!(f, "violation: no cell contains {witness}")
            }
            ValidationReport::Ambiguous { witness, cells } => {
                write!(f, "violation: {witness} lies in cells {cells:?}")
            }
        }
    }
}

/// Map from refined cell indices to the indices they came from (1-based on
/// both sides).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMap {
    entries: Vec<usize>,
    target_cells: usize,
}

impl ProjectionMap {
    pub fn identity(cells: usize) -> Self {
        ProjectionMap { entries: (1..=cells).collect(), target_cells: cells }
    }

    pub fn from_entries(entries: Vec<usize>, target_cells: usize) -> Self {
        ProjectionMap { entries, target_cells }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cell count of the coarse partition the map lands in.
    pub fn target_cells(&self) -> usize {
        self.target_cells
    }

    pub fn apply(&self, index: usize) -> Result<usize> {
        self.entries
            .get(index.wrapping_sub(1))
            .copied()
            .ok_or(Error::UnmappedIndex { index })
    }
}

/// Non-fatal findings from a refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefineWarning {
    /// A piece is empty on the validation ball; it may still be nonempty
    /// globally.
    EmptyPieceOnBall { cell: usize },
}

/// Result of refining one cell into (cell and splitter, cell and not
/// splitter).
#[derive(Debug, Clone)]
pub struct Refinement {
    pub partition: Partition,
    pub projection: ProjectionMap,
    pub warnings: Vec<RefineWarning>,
}

impl Partition {
    /// Build a partition from named predicates. `otherwise` is permitted once,
    /// as the final cell, and compiles to the complement of the other cells.
    pub fn new(
        descriptor: GroupDescriptor,
        cells: Vec<(String, CellPredicate)>,
    ) -> Result<Partition> {
        Self::with_structural(descriptor, cells, None)
    }

    fn with_structural(
        descriptor: GroupDescriptor,
        cells: Vec<(String, CellPredicate)>,
        structural: Option<StructuralFamily>,
    ) -> Result<Partition> {
        if cells.is_empty() {
            return Err(Error::InvalidPredicate { reason: "partition has no cells".into() });
        }
        let mut names = std::collections::HashSet::new();
        for (name, _) in &cells {
            if !names.insert(name.clone()) {
                return Err(Error::InvalidPredicate {
                    reason: format!("duplicate cell name {name}"),
                });
            }
        }
        let last = cells.len() - 1;
        for (i, (name, pred)) in cells.iter().enumerate() {
            let is_otherwise = matches!(pred, CellPredicate::Otherwise);
            if is_otherwise && i != last {
                return Err(Error::InvalidPredicate {
                    reason: format!("cell {name}: `otherwise` must be the final cell"),
                });
            }
            if !is_otherwise {
                pred.shape_check(&descriptor)?;
            }
        }
        let compiled_rest: Vec<CellPredicate> =
            cells[..last].iter().map(|(_, p)| p.clone()).collect();
        let built: Vec<Cell> = cells
            .into_iter()
            .map(|(name, surface)| {
                let compiled = if matches!(surface, CellPredicate::Otherwise) {
                    CellPredicate::not(CellPredicate::Or(compiled_rest.clone()))
                } else {
                    surface.clone()
                };
                Cell { name, surface, compiled }
            })
            .collect();
        Ok(Partition { descriptor, cells: built, structural })
    }

    pub(crate) fn with_family(
        descriptor: GroupDescriptor,
        cells: Vec<(String, CellPredicate)>,
        family: StructuralFamily,
    ) -> Result<Partition> {
        Self::with_structural(descriptor, cells, Some(family))
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn structural_family(&self) -> Option<StructuralFamily> {
        self.structural
    }

    /// Index (1-based) of the unique cell containing `a`.
    pub fn classify(&self, a: &GroupElement) -> Result<usize> {
        if !self.descriptor.contains(a) {
            return Err(Error::DescriptorMismatch {
                context: format!("classify: {a} not in {}", self.descriptor),
            });
        }
        let mut hit = None;
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.compiled.eval(&self.descriptor, a)? {
                if let Some(first) = hit {
                    // keep scanning to report the full ambiguity set
                    let mut cells = vec![first, i + 1];
                    for (j, later) in self.cells.iter().enumerate().skip(i + 1) {
                        if later.compiled.eval(&self.descriptor, a)? {
                            cells.push(j + 1);
                        }
                    }
                    return Err(Error::AmbiguousCell { witness: a.to_string(), cells });
                }
                hit = Some(i + 1);
            }
        }
        hit.ok_or(Error::NoCell { witness: a.to_string() })
    }

    /// Totality and disjointness on a ball; builtin families return the
    /// structural verdict without sampling.
    pub fn validate_on_ball(&self, ball: &Ball) -> ValidationReport {
        if self.structural.is_some() {
            return ValidationReport::Ok { mode: ValidationMode::Structural };
        }
        for e in ball.elements() {
            match self.classify(e) {
                Ok(_) => {}
                Err(Error::NoCell { .. }) => {
                    return ValidationReport::NoCell { witness: e.clone() };
                }
                Err(Error::AmbiguousCell { cells, .. }) => {
                    return ValidationReport::Ambiguous { witness: e.clone(), cells };
                }
                Err(_) => unreachable!("membership checked by ball construction"),
            }
        }
        ValidationReport::Ok { mode: ValidationMode::BallSampled { radius: ball.radius() } }
    }

    /// Convenience form of [`Partition::validate_on_ball`] over the standard
    /// generators.
    pub fn validate(&self, radius: usize) -> Result<ValidationReport> {
        let gens = self.descriptor.standard_generators();
        let ball = crate::groups::ball::ball(&self.descriptor, &gens, radius)?;
        Ok(self.validate_on_ball(&ball))
    }

    /// Split cell `cell_index` into (cell and splitter, cell and not
    /// splitter). The splitter must match at least one ball element of the
    /// cell; an empty complement piece is reported as a warning, since the
    /// piece may still be nonempty beyond the ball.
    pub fn refine(
        &self,
        cell_index: usize,
        splitter: CellPredicate,
        ball: &Ball,
    ) -> Result<Refinement> {
        if cell_index < 1 || cell_index > self.cells.len() {
            return Err(Error::BadCellIndex { index: cell_index, cells: self.cells.len() });
        }
        splitter.shape_check(&self.descriptor)?;

        let mut in_and_split = 0usize;
        let mut in_and_rest = 0usize;
        for e in ball.elements() {
            if self.classify(e)? == cell_index {
                if splitter.eval(&self.descriptor, e)? {
                    in_and_split += 1;
                } else {
                    in_and_rest += 1;
                }
            }
        }
        if in_and_split == 0 {
            return Err(Error::UnsatisfiableSplitter { cell: cell_index });
        }
        let mut warnings = Vec::new();
        if in_and_rest == 0 {
            warnings.push(RefineWarning::EmptyPieceOnBall { cell: cell_index + 1 });
        }

        let old = &self.cells[cell_index - 1];
        let piece_a = Cell {
            name: format!("{}.in", old.name),
            surface: CellPredicate::and(vec![old.surface.clone(), splitter.clone()]),
            compiled: CellPredicate::and(vec![old.compiled.clone(), splitter.clone()]),
        };
        let piece_b = Cell {
            name: format!("{}.out", old.name),
            surface: CellPredicate::and(vec![
                old.surface.clone(),
                CellPredicate::not(splitter.clone()),
            ]),
            compiled: CellPredicate::and(vec![
                old.compiled.clone(),
                CellPredicate::not(splitter),
            ]),
        };

        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        let mut projection = Vec::with_capacity(self.cells.len() + 1);
        for (i, c) in self.cells.iter().enumerate() {
            if i + 1 == cell_index {
                cells.push(piece_a.clone());
                projection.push(cell_index);
                cells.push(piece_b.clone());
                projection.push(cell_index);
            } else {
                cells.push(c.clone());
                projection.push(i + 1);
            }
        }
        // A refined builtin loses its structural certificate; validation
        // falls back to ball sampling.
        let target_cells = self.cells.len();
        let partition =
            Partition { descriptor: self.descriptor.clone(), cells, structural: None };
        Ok(Refinement {
            partition,
            projection: ProjectionMap::from_entries(projection, target_cells),
            warnings,
        })
    }

    /// Pull every cell back along an isomorphism (the cell of `phi(x)` in
    /// the result is the cell of `x` here).
    pub fn transported(&self, iso: &IsomorphismSpec) -> Result<Partition> {
        iso.validate(&self.descriptor)?;
        let inverse = iso.inverse();
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let wrap = |p: &CellPredicate| CellPredicate::Mapped {
                    inverse: inverse.clone(),
                    inner: Box::new(p.clone()),
                };
                Cell { name: c.name.clone(), surface: wrap(&c.surface), compiled: wrap(&c.compiled) }
            })
            .collect();
        Ok(Partition { descriptor: self.descriptor.clone(), cells, structural: None })
    }
}
