//! Exact arithmetic and canonical normal forms for the builtin groups:
//! free abelian groups, finite groups by multiplication table, direct
//! products, the infinite dihedral group, and unitriangular matrix groups.
//!
//! Elements are stored in canonical normal form, so equality of elements is
//! plain payload equality. All operations are pure; descriptors and elements
//! are freely shareable across threads.

pub mod ball;
pub mod dihedral;
pub mod finite;
pub mod iso;
pub mod parse;
pub mod unitriangular;

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use finite::FiniteTable;

/// A group element in canonical form. The variant must match the owning
/// descriptor's kind; operations check this and fail with
/// [`Error::DescriptorMismatch`] otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Element of a free abelian group, as a coordinate vector.
    IntVector(Vec<i64>),
    /// Element of a finite table group: an index in `1..=l`.
    FinitePoint(usize),
    /// Isometry `t -> (-1)^flip * t + offset` of the integer line.
    Dihedral { flip: bool, offset: i64 },
    /// Upper unitriangular integer matrix.
    Unitriangular(IntMatrix),
    /// Element of a direct product, componentwise.
    Product(Vec<GroupElement>),
}

impl GroupElement {
    pub fn int_vector(coords: Vec<i64>) -> Self {
        GroupElement::IntVector(coords)
    }

    pub fn dihedral(flip: bool, offset: i64) -> Self {
        GroupElement::Dihedral { flip, offset }
    }

    /// Concatenated free-abelian coordinates of the element (empty when the
    /// element has no free part).
    pub fn free_coords(&self) -> Vec<i64> {
        match self {
            GroupElement::IntVector(v) => v.clone(),
            GroupElement::Product(parts) => {
                parts.iter().flat_map(|p| p.free_coords()).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Index of the finite component when the element has exactly one.
    pub fn finite_index(&self) -> Option<usize> {
        match self {
            GroupElement::FinitePoint(j) => Some(*j),
            GroupElement::Product(parts) => {
                let mut found = None;
                for p in parts {
                    if let Some(j) = p.finite_index() {
                        if found.is_some() {
                            return None;
                        }
                        found = Some(j);
                    }
                }
                found
            }
            _ => None,
        }
    }
}

/// Canonical text form: `(1,-2)`, `(1,0; x2)`, `x3`, `dih(1,0)`,
/// `ut[[1,2],[0,1]]`, or `prod(...)` for other products.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::IntVector(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            GroupElement::FinitePoint(j) => write!(f, "x{j}"),
            GroupElement::Dihedral { flip, offset } => {
                write!(f, "dih({},{})", if *flip { 1 } else { 0 }, offset)
            }
            GroupElement::Unitriangular(m) => {
                write!(f, "ut[")?;
                for i in 0..m.nrows() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for j in 0..m.ncols() {
                        if j > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", m[(i, j)])?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
            GroupElement::Product(parts) => {
                // The standard Z^n x F shape prints as `(a1,...,an; xj)`.
                if let [GroupElement::IntVector(v), GroupElement::FinitePoint(j)] =
                    parts.as_slice()
                {
                    write!(f, "(")?;
                    for (i, c) in v.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{c}")?;
                    }
                    return write!(f, "; x{j})");
                }
                write!(f, "prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Which builtin group a descriptor denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    FreeAbelian(usize),
    Finite(FiniteTable),
    DihedralInfinite,
    Unitriangular(usize),
    /// Direct product; factors are non-product kinds (nested products are
    /// flattened at construction).
    Product(Vec<GroupKind>),
}

/// A builtin group together with derived structural metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    kind: GroupKind,
    nilpotency_class: Option<usize>,
    hirsch_length: usize,
}

/// Exact order of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

fn kind_class(kind: &GroupKind) -> Option<usize> {
    match kind {
        GroupKind::FreeAbelian(n) => Some(if *n == 0 { 0 } else { 1 }),
        GroupKind::Finite(t) => t.nilpotency_class(),
        GroupKind::DihedralInfinite => None,
        GroupKind::Unitriangular(n) => Some(n - 1),
        GroupKind::Product(fs) => {
            let mut c = 0;
            for f in fs {
                c = c.max(kind_class(f)?);
            }
            Some(c)
        }
    }
}

fn kind_hirsch(kind: &GroupKind) -> usize {
    match kind {
        GroupKind::FreeAbelian(n) => *n,
        GroupKind::Finite(_) => 0,
        GroupKind::DihedralInfinite => 1,
        GroupKind::Unitriangular(n) => n * (n - 1) / 2,
        GroupKind::Product(fs) => fs.iter().map(kind_hirsch).sum(),
    }
}

fn kind_torsion_free(kind: &GroupKind) -> bool {
    match kind {
        GroupKind::FreeAbelian(_) | GroupKind::Unitriangular(_) => true,
        GroupKind::Finite(t) => t.size() == 1,
        GroupKind::DihedralInfinite => false,
        GroupKind::Product(fs) => fs.iter().all(kind_torsion_free),
    }
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind) -> Result<Self> {
        let kind = Self::flatten(kind)?;
        let nilpotency_class = kind_class(&kind);
        let hirsch_length = kind_hirsch(&kind);
        Ok(GroupDescriptor { kind, nilpotency_class, hirsch_length })
    }

    fn flatten(kind: GroupKind) -> Result<GroupKind> {
        match kind {
            GroupKind::FreeAbelian(n) => {
                if n == 0 {
                    return Err(Error::InvalidDescriptor {
                        reason: "free abelian rank must be >= 1".into(),
                    });
                }
                Ok(GroupKind::FreeAbelian(n))
            }
            GroupKind::Unitriangular(n) => {
                if n < 2 {
                    return Err(Error::InvalidDescriptor {
                        reason: "UT(n) requires n >= 2".into(),
                    });
                }
                Ok(GroupKind::Unitriangular(n))
            }
            GroupKind::Product(fs) => {
                let mut flat = Vec::new();
                for f in fs {
                    match Self::flatten(f)? {
                        GroupKind::Product(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                match flat.len() {
                    0 => Err(Error::InvalidDescriptor { reason: "empty product".into() }),
                    1 => Ok(flat.pop().unwrap()),
                    _ => Ok(GroupKind::Product(flat)),
                }
            }
            other => Ok(other),
        }
    }

    pub fn free_abelian(n: usize) -> Result<Self> {
        Self::new(GroupKind::FreeAbelian(n))
    }

    pub fn finite(table: FiniteTable) -> Self {
        Self::new(GroupKind::Finite(table)).expect("finite kind is always valid")
    }

    pub fn dihedral_infinite() -> Self {
        Self::new(GroupKind::DihedralInfinite).expect("dihedral kind is always valid")
    }

    pub fn unitriangular(n: usize) -> Result<Self> {
        Self::new(GroupKind::Unitriangular(n))
    }

    pub fn product(factors: Vec<GroupDescriptor>) -> Result<Self> {
        Self::new(GroupKind::Product(factors.into_iter().map(|d| d.kind).collect()))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// Nilpotency class when the group is nilpotent and the class is known.
    pub fn nilpotency_class(&self) -> Option<usize> {
        self.nilpotency_class
    }

    /// Hirsch length; structural for every builtin kind.
    pub fn hirsch_length(&self) -> usize {
        self.hirsch_length
    }

    pub fn is_torsion_free(&self) -> bool {
        kind_torsion_free(&self.kind)
    }

    /// Total rank of the free abelian coordinates.
    pub fn free_rank(&self) -> usize {
        fn rank(kind: &GroupKind) -> usize {
            match kind {
                GroupKind::FreeAbelian(n) => *n,
                GroupKind::Product(fs) => fs.iter().map(rank).sum(),
                _ => 0,
            }
        }
        rank(&self.kind)
    }

    /// The finite table when the descriptor has exactly one finite factor.
    pub fn finite_table(&self) -> Option<&FiniteTable> {
        fn tables<'a>(kind: &'a GroupKind, out: &mut Vec<&'a FiniteTable>) {
            match kind {
                GroupKind::Finite(t) => out.push(t),
                GroupKind::Product(fs) => fs.iter().for_each(|f| tables(f, out)),
                _ => {}
            }
        }
        let mut out = Vec::new();
        tables(&self.kind, &mut out);
        if out.len() == 1 {
            Some(out[0])
        } else {
            None
        }
    }

    pub fn identity(&self) -> GroupElement {
        fn id(kind: &GroupKind) -> GroupElement {
            match kind {
                GroupKind::FreeAbelian(n) => GroupElement::IntVector(vec![0; *n]),
                GroupKind::Finite(_) => GroupElement::FinitePoint(1),
                GroupKind::DihedralInfinite => GroupElement::Dihedral { flip: false, offset: 0 },
                GroupKind::Unitriangular(n) => GroupElement::Unitriangular(IntMatrix::identity(*n)),
                GroupKind::Product(fs) => GroupElement::Product(fs.iter().map(id).collect()),
            }
        }
        id(&self.kind)
    }

    /// Structural membership check: variant, dimensions, and normal-form
    /// invariants (unitriangular shape, finite index range).
    pub fn contains(&self, e: &GroupElement) -> bool {
        fn check(kind: &GroupKind, e: &GroupElement) -> bool {
            match (kind, e) {
                (GroupKind::FreeAbelian(n), GroupElement::IntVector(v)) => v.len() == *n,
                (GroupKind::Finite(t), GroupElement::FinitePoint(j)) => {
                    *j >= 1 && *j <= t.size()
                }
                (GroupKind::DihedralInfinite, GroupElement::Dihedral { .. }) => true,
                (GroupKind::Unitriangular(n), GroupElement::Unitriangular(m)) => {
                    unitriangular::is_unitriangular(m, *n)
                }
                (GroupKind::Product(fs), GroupElement::Product(ps)) => {
                    fs.len() == ps.len() && fs.iter().zip(ps).all(|(f, p)| check(f, p))
                }
                _ => false,
            }
        }
        check(&self.kind, e)
    }

    fn require(&self, e: &GroupElement, op: &str) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch { context: format!("{op}: element {e} not in {self}") })
        }
    }

    /// Canonical-form product `a * b`; exact.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.require(a, "multiply")?;
        self.require(b, "multiply")?;
        mul_in(&self.kind, a, b)
    }

    /// Inverse in canonical form.
    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        self.require(a, "invert")?;
        inv_in(&self.kind, a)
    }

    /// `a^k` for any integer `k`, by repeated squaring.
    pub fn power(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        self.require(a, "power")?;
        let (mut base, mut k) = if k < 0 {
            (inv_in(&self.kind, a)?, k.unsigned_abs())
        } else {
            (a.clone(), k as u64)
        };
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_in(&self.kind, &acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = mul_in(&self.kind, &base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Exact order, decided structurally per kind (never by unbounded
    /// search): translations and nonzero vectors and nontrivial
    /// unitriangular matrices are infinite, reflections have order 2,
    /// finite points by bounded iteration, products by lcm.
    pub fn order(&self, a: &GroupElement) -> Result<ElementOrder> {
        self.require(a, "order")?;
        fn ord(kind: &GroupKind, e: &GroupElement) -> ElementOrder {
            match (kind, e) {
                (GroupKind::FreeAbelian(_), GroupElement::IntVector(v)) => {
                    if v.iter().all(|&c| c == 0) {
                        ElementOrder::Finite(1)
                    } else {
                        ElementOrder::Infinite
                    }
                }
                (GroupKind::Finite(t), GroupElement::FinitePoint(j)) => {
                    ElementOrder::Finite(t.element_order(*j))
                }
                (GroupKind::DihedralInfinite, GroupElement::Dihedral { flip, offset }) => {
                    if *flip {
                        ElementOrder::Finite(2)
                    } else if *offset == 0 {
                        ElementOrder::Finite(1)
                    } else {
                        ElementOrder::Infinite
                    }
                }
                (GroupKind::Unitriangular(_), GroupElement::Unitriangular(m)) => {
                    if m.is_identity() {
                        ElementOrder::Finite(1)
                    } else {
                        ElementOrder::Infinite
                    }
                }
                (GroupKind::Product(fs), GroupElement::Product(ps)) => {
                    let mut l: u64 = 1;
                    for (f, p) in fs.iter().zip(ps) {
                        match ord(f, p) {
                            ElementOrder::Infinite => return ElementOrder::Infinite,
                            ElementOrder::Finite(n) => l = num_integer::lcm(l, n),
                        }
                    }
                    ElementOrder::Finite(l)
                }
                _ => unreachable!("membership checked"),
            }
        }
        Ok(ord(&self.kind, a))
    }

    /// The canonical generating sequence for each kind: basis vectors for
    /// free abelian factors, every table element for finite factors, the two
    /// reflections `x, y` for the infinite dihedral group, and the full
    /// `g(i,j)` family for unitriangular groups; injected factorwise into
    /// products.
    pub fn standard_generators(&self) -> GeneratingSequence {
        fn gens_of(kind: &GroupKind) -> Vec<GroupElement> {
            match kind {
                GroupKind::FreeAbelian(n) => (0..*n)
                    .map(|i| {
                        let mut v = vec![0; *n];
                        v[i] = 1;
                        GroupElement::IntVector(v)
                    })
                    .collect(),
                GroupKind::Finite(t) => {
                    (1..=t.size()).map(GroupElement::FinitePoint).collect()
                }
                GroupKind::DihedralInfinite => vec![
                    GroupElement::Dihedral { flip: true, offset: 0 },
                    GroupElement::Dihedral { flip: true, offset: 1 },
                ],
                GroupKind::Unitriangular(n) => unitriangular::generator_indices(*n)
                    .into_iter()
                    .map(|(i, j)| GroupElement::Unitriangular(unitriangular::generator(*n, i, j)))
                    .collect(),
                GroupKind::Product(fs) => {
                    let ids: Vec<GroupElement> =
                        fs.iter().map(id_of).collect();
                    let mut out = Vec::new();
                    for (fi, f) in fs.iter().enumerate() {
                        for g in gens_of(f) {
                            let mut parts = ids.clone();
                            parts[fi] = g;
                            out.push(GroupElement::Product(parts));
                        }
                    }
                    out
                }
            }
        }
        fn id_of(kind: &GroupKind) -> GroupElement {
            match kind {
                GroupKind::FreeAbelian(n) => GroupElement::IntVector(vec![0; *n]),
                GroupKind::Finite(_) => GroupElement::FinitePoint(1),
                GroupKind::DihedralInfinite => GroupElement::Dihedral { flip: false, offset: 0 },
                GroupKind::Unitriangular(n) => GroupElement::Unitriangular(IntMatrix::identity(*n)),
                GroupKind::Product(fs) => GroupElement::Product(fs.iter().map(id_of).collect()),
            }
        }
        GeneratingSequence::new(self, gens_of(&self.kind))
            .expect("standard generators belong to the descriptor")
    }
}

/// Group-spec grammar form, e.g. `Z^2 x F[table: 1 2; 2 1]`.
impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_kind(kind: &GroupKind, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match kind {
                GroupKind::FreeAbelian(n) => write!(f, "Z^{n}"),
                GroupKind::Finite(t) => {
                    write!(f, "F[table:")?;
                    for i in 1..=t.size() {
                        if i > 1 {
                            write!(f, ";")?;
                        }
                        for j in 1..=t.size() {
                            write!(f, " {}", t.mul(i, j))?;
                        }
                    }
                    write!(f, "]")
                }
                GroupKind::DihedralInfinite => write!(f, "Dinf"),
                GroupKind::Unitriangular(n) => write!(f, "UT({n})"),
                GroupKind::Product(fs) => {
                    for (i, fac) in fs.iter().enumerate() {
                        if i > 0 {
                            write!(f, " x ")?;
                        }
                        write_kind(fac, f)?;
                    }
                    Ok(())
                }
            }
        }
        write_kind(&self.kind, f)
    }
}

fn checked_add(a: i64, b: i64, context: &str) -> Result<i64> {
    a.checked_add(b).ok_or_else(|| Error::Overflow { context: context.into() })
}

fn mul_in(kind: &GroupKind, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    match (kind, a, b) {
        (GroupKind::FreeAbelian(_), GroupElement::IntVector(u), GroupElement::IntVector(v)) => {
            let mut out = Vec::with_capacity(u.len());
            for (x, y) in u.iter().zip(v) {
                out.push(checked_add(*x, *y, "free abelian coordinate")?);
            }
            Ok(GroupElement::IntVector(out))
        }
        (GroupKind::Finite(t), GroupElement::FinitePoint(i), GroupElement::FinitePoint(j)) => {
            Ok(GroupElement::FinitePoint(t.mul(*i, *j)))
        }
        (
            GroupKind::DihedralInfinite,
            GroupElement::Dihedral { flip: fa, offset: oa },
            GroupElement::Dihedral { flip: fb, offset: ob },
        ) => {
            // (a.b)(t) = a(b(t)): offset = oa + (-1)^fa * ob
            let o = if *fa {
                oa.checked_sub(*ob).ok_or(Error::Overflow { context: "dihedral offset".into() })?
            } else {
                checked_add(*oa, *ob, "dihedral offset")?
            };
            Ok(GroupElement::Dihedral { flip: fa ^ fb, offset: o })
        }
        (GroupKind::Unitriangular(_), GroupElement::Unitriangular(m), GroupElement::Unitriangular(k)) => {
            Ok(GroupElement::Unitriangular(m.mul(k)))
        }
        (GroupKind::Product(fs), GroupElement::Product(ps), GroupElement::Product(qs)) => {
            let mut out = Vec::with_capacity(fs.len());
            for ((f, p), q) in fs.iter().zip(ps).zip(qs) {
                out.push(mul_in(f, p, q)?);
            }
            Ok(GroupElement::Product(out))
        }
        _ => unreachable!("membership checked before dispatch"),
    }
}

fn inv_in(kind: &GroupKind, a: &GroupElement) -> Result<GroupElement> {
    match (kind, a) {
        (GroupKind::FreeAbelian(_), GroupElement::IntVector(v)) => {
            let mut out = Vec::with_capacity(v.len());
            for &c in v {
                out.push(
                    c.checked_neg()
                        .ok_or(Error::Overflow { context: "free abelian negate".into() })?,
                );
            }
            Ok(GroupElement::IntVector(out))
        }
        (GroupKind::Finite(t), GroupElement::FinitePoint(j)) => {
            Ok(GroupElement::FinitePoint(t.inverse(*j)))
        }
        (GroupKind::DihedralInfinite, GroupElement::Dihedral { flip, offset }) => {
            let (f, o) = dihedral::invert((*flip, *offset));
            Ok(GroupElement::Dihedral { flip: f, offset: o })
        }
        (GroupKind::Unitriangular(_), GroupElement::Unitriangular(m)) => {
            Ok(GroupElement::Unitriangular(unitriangular::inverse(m)))
        }
        (GroupKind::Product(fs), GroupElement::Product(ps)) => {
            let mut out = Vec::with_capacity(fs.len());
            for (f, p) in fs.iter().zip(ps) {
                out.push(inv_in(f, p)?);
            }
            Ok(GroupElement::Product(out))
        }
        _ => unreachable!("membership checked before dispatch"),
    }
}

/// Whether a per-kind structural generation proof succeeded for a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    VerifiedStructural,
    Unverified,
}

/// Ordered tuple of generators, the pair's first component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSequence {
    elements: Vec<GroupElement>,
    status: Verification,
}

impl GeneratingSequence {
    pub fn new(descriptor: &GroupDescriptor, elements: Vec<GroupElement>) -> Result<Self> {
        for e in &elements {
            descriptor.require(e, "generating sequence")?;
        }
        let status = verify_generation(descriptor, &elements);
        Ok(GeneratingSequence { elements, status })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn status(&self) -> Verification {
        self.status
    }
}

/// Per-kind structural generation proof. Generation is undecidable by ball
/// sampling, so only the structural certificates below upgrade a sequence to
/// `VerifiedStructural`; everything else stays `Unverified` (which does not
/// block any computation).
///
/// * free abelian: the coordinate vectors span the full lattice (all Smith
///   invariant factors are 1);
/// * finite: the closure of the indices is the whole table;
/// * infinite dihedral: at least one reflection, and the translation lattice
///   generated by the sequence (translation offsets together with
///   differences of reflection offsets) has gcd 1;
/// * unitriangular: exactly the standard `g(i,j)` family as a set;
/// * products of free abelian and finite factors follow the combined rule
///   (lattice spanned and finite part closed); other products verify only
///   when every generator lives in a single factor and each factor's
///   projected generators verify.
fn verify_generation(descriptor: &GroupDescriptor, elements: &[GroupElement]) -> Verification {
    if verify_kind(&descriptor.kind, elements) {
        Verification::VerifiedStructural
    } else {
        Verification::Unverified
    }
}

fn spans_lattice(vectors: &[Vec<i64>], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let rows: Vec<Vec<i64>> = vectors.to_vec();
    let m = IntMatrix::from_i64(&rows);
    let snf = crate::abelian::snf::smith_normal_form(&m);
    let diag = snf.diagonal();
    diag.len() >= n && diag.iter().take(n).all(|d| d.abs().is_one() || d.is_one())
}

fn verify_kind(kind: &GroupKind, elements: &[GroupElement]) -> bool {
    match kind {
        GroupKind::FreeAbelian(n) => {
            let vectors: Vec<Vec<i64>> = elements
                .iter()
                .map(|e| match e {
                    GroupElement::IntVector(v) => v.clone(),
                    _ => unreachable!(),
                })
                .collect();
            spans_lattice(&vectors, *n)
        }
        GroupKind::Finite(t) => {
            let idx: Vec<usize> = elements
                .iter()
                .map(|e| match e {
                    GroupElement::FinitePoint(j) => *j,
                    _ => unreachable!(),
                })
                .collect();
            t.closure(&idx).len() == t.size()
        }
        GroupKind::DihedralInfinite => {
            let parts: Vec<(bool, i64)> = elements
                .iter()
                .map(|e| match e {
                    GroupElement::Dihedral { flip, offset } => (*flip, *offset),
                    _ => unreachable!(),
                })
                .collect();
            let Some(&(_, c)) = parts.iter().find(|(f, _)| *f) else {
                return false;
            };
            // Translation lattice of the generated subgroup: offsets of the
            // translations plus offsets-minus-c of the reflections.
            let mut g: i64 = 0;
            for &(f, o) in &parts {
                let t = if f { o - c } else { o };
                g = num_integer::gcd(g, t);
            }
            g.abs() == 1
        }
        GroupKind::Unitriangular(n) => {
            let mut want: Vec<GroupElement> = unitriangular::generator_indices(*n)
                .into_iter()
                .map(|(i, j)| GroupElement::Unitriangular(unitriangular::generator(*n, i, j)))
                .collect();
            let mut got = elements.to_vec();
            want.sort();
            got.sort();
            got.dedup();
            want == got
        }
        GroupKind::Product(fs) => {
            // Case 1: every generator is supported in a single factor.
            let injective = elements.iter().all(|e| {
                let GroupElement::Product(ps) = e else { unreachable!() };
                let nontrivial = ps
                    .iter()
                    .zip(fs)
                    .filter(|(p, f)| {
                        **p != GroupDescriptor::new((*f).clone()).unwrap().identity()
                    })
                    .count();
                nontrivial <= 1
            });
            if injective {
                return fs.iter().enumerate().all(|(fi, f)| {
                    let fid = GroupDescriptor::new(f.clone()).unwrap().identity();
                    let projected: Vec<GroupElement> = elements
                        .iter()
                        .filter_map(|e| {
                            let GroupElement::Product(ps) = e else { unreachable!() };
                            (ps[fi] != fid).then(|| ps[fi].clone())
                        })
                        .collect();
                    verify_kind(f, &projected)
                });
            }
            // Case 2: the combined rule for products of free abelian and
            // finite factors (finite-part mixing deliberately not modeled).
            let simple = fs
                .iter()
                .all(|f| matches!(f, GroupKind::FreeAbelian(_) | GroupKind::Finite(_)));
            if !simple {
                return false;
            }
            let n: usize = fs
                .iter()
                .map(|f| if let GroupKind::FreeAbelian(k) = f { *k } else { 0 })
                .sum();
            let vectors: Vec<Vec<i64>> = elements.iter().map(|e| e.free_coords()).collect();
            if !spans_lattice(&vectors, n) {
                return false;
            }
            for (fi, f) in fs.iter().enumerate() {
                if let GroupKind::Finite(t) = f {
                    let idx: Vec<usize> = elements
                        .iter()
                        .map(|e| {
                            let GroupElement::Product(ps) = e else { unreachable!() };
                            match &ps[fi] {
                                GroupElement::FinitePoint(j) => *j,
                                _ => unreachable!(),
                            }
                        })
                        .collect();
                    if t.closure(&idx).len() != t.size() {
                        return false;
                    }
                }
            }
            true
        }
    }
}
