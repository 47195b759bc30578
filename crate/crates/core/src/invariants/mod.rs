//! Executable isomorphism invariants: law checking on balls, nilpotency
//! class witnesses, center membership, Hirsch length, torsion, and the
//! isolator classification of torsion-free class-2 groups.
//!
//! Ball-bounded checks are labeled as such and never upgraded to global
//! statements unless a structural proof applies (abelian coordinates plus
//! exhaustive finite parts for laws; per-kind structure everywhere else).

pub mod law;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::abelian::{AbelianGroup, FiniteAbelianType};
use crate::error::{Error, Result};
use crate::groups::ball::ball;
use crate::groups::finite::FiniteTable;
use crate::groups::{
    ElementOrder, GeneratingSequence, GroupDescriptor, GroupElement, GroupKind,
};
use law::LawSpec;

/// Outcome of evaluating a law on all tuples from a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawCheck {
    /// No counterexample among the sampled tuples. `global` carries the
    /// reason when a structural proof upgrades the verdict from
    /// ball-bounded to universal.
    HoldsOnBall { radius: usize, global: Option<String> },
    /// First counterexample in canonical ball order.
    Counterexample(Vec<GroupElement>),
}

impl fmt::Display for LawCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawCheck::HoldsOnBall { radius, global: None } => {
                write!(f, "holds-on-ball (radius {radius}; not a global proof)")
            }
            LawCheck::HoldsOnBall { radius, global: Some(reason) } => {
                write!(f, "holds-on-ball (radius {radius}); holds globally: {reason}")
            }
            LawCheck::Counterexample(tuple) => {
                write!(f, "counterexample (")?;
                for (i, e) in tuple.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn eval_word(
    descriptor: &GroupDescriptor,
    word: &[(usize, i64)],
    assignment: &[&GroupElement],
) -> Result<GroupElement> {
    let mut acc = descriptor.identity();
    for &(v, e) in word {
        let powered = descriptor.power(assignment[v - 1], e)?;
        acc = descriptor.multiply(&acc, &powered)?;
    }
    Ok(acc)
}

/// Structural global proof for a law: sound exactly for groups assembled
/// from free abelian and finite factors. The free part satisfies the law
/// iff the per-variable exponent sums agree, and each finite factor is
/// checked exhaustively.
fn law_global_proof(descriptor: &GroupDescriptor, law: &LawSpec) -> Result<Option<String>> {
    fn simple(kind: &GroupKind) -> bool {
        match kind {
            GroupKind::FreeAbelian(_) | GroupKind::Finite(_) => true,
            GroupKind::Product(fs) => fs.iter().all(simple),
            _ => false,
        }
    }
    if !simple(descriptor.kind()) {
        return Ok(None);
    }
    if descriptor.free_rank() > 0 {
        for v in 1..=law.variables() {
            if LawSpec::exponent_sum(law.lhs(), v) != LawSpec::exponent_sum(law.rhs(), v) {
                return Ok(None);
            }
        }
    }
    fn tables(kind: &GroupKind, out: &mut Vec<FiniteTable>) {
        match kind {
            GroupKind::Finite(t) => out.push(t.clone()),
            GroupKind::Product(fs) => fs.iter().for_each(|f| tables(f, out)),
            _ => {}
        }
    }
    let mut ts = Vec::new();
    tables(descriptor.kind(), &mut ts);
    for t in &ts {
        if !law_holds_on_table(t, law)? {
            return Ok(None);
        }
    }
    Ok(Some(if ts.is_empty() {
        "abelian coordinates with equal exponent sums".to_string()
    } else if descriptor.free_rank() == 0 {
        "exhaustive over the finite group".to_string()
    } else {
        "abelian coordinates with equal exponent sums; finite part exhaustive".to_string()
    }))
}

/// Exhaustive substitution of all tuples of table elements into the law.
fn law_holds_on_table(t: &FiniteTable, law: &LawSpec) -> Result<bool> {
    let d = GroupDescriptor::finite(t.clone());
    let all: Vec<GroupElement> = (1..=t.size()).map(GroupElement::FinitePoint).collect();
    let mut assignment: Vec<usize> = vec![0; law.variables()];
    loop {
        let elems: Vec<&GroupElement> = assignment.iter().map(|&i| &all[i]).collect();
        let lhs = eval_word(&d, law.lhs(), &elems)?;
        let rhs = eval_word(&d, law.rhs(), &elems)?;
        if lhs != rhs {
            return Ok(false);
        }
        let mut pos = law.variables();
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < all.len() {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

/// Evaluate both sides of a law on every tuple of ball elements, in
/// canonical order; the result is explicitly ball-bounded unless a
/// structural proof upgrades it.
pub fn check_law(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    law: &LawSpec,
    radius: usize,
) -> Result<LawCheck> {
    let b = ball(descriptor, gens, radius)?;
    let elems = b.elements();
    let t = law.variables();
    if t == 0 {
        return Ok(LawCheck::HoldsOnBall {
            radius,
            global: Some("law mentions no variables".into()),
        });
    }
    let mut assignment = vec![0usize; t];
    'outer: loop {
        let tuple: Vec<&GroupElement> = assignment.iter().map(|&i| &elems[i]).collect();
        let lhs = eval_word(descriptor, law.lhs(), &tuple)?;
        let rhs = eval_word(descriptor, law.rhs(), &tuple)?;
        if lhs != rhs {
            return Ok(LawCheck::Counterexample(
                tuple.into_iter().cloned().collect(),
            ));
        }
        let mut pos = t;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < elems.len() {
                continue 'outer;
            }
            assignment[pos] = 0;
        }
    }
    let global = law_global_proof(descriptor, law)?;
    Ok(LawCheck::HoldsOnBall { radius, global })
}

/// Outcome of the left-normed commutator check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilpotencyWitness {
    /// Every `(c+1)`-fold left-normed commutator of ball elements is
    /// trivial. Exact (not just ball-consistent) when the descriptor's
    /// structural class is known to be at most `c`.
    ConsistentWithClassAtMost { c: usize, radius: usize, exact: bool },
    /// A chain `x_1, ..., x_{c+1}` whose left-normed commutator is not the
    /// identity.
    Violation(Vec<GroupElement>),
}

impl fmt::Display for NilpotencyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotencyWitness::ConsistentWithClassAtMost { c, radius, exact } => write!(
                f,
                "consistent with class <= {c} (radius {radius}{})",
                if *exact { "; exact by structure" } else { "" }
            ),
            NilpotencyWitness::Violation(chain) => {
                write!(f, "violation: [")?;
                for (i, e) in chain.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "] is nontrivial")
            }
        }
    }
}

/// Check that all `(c+1)`-fold left-normed commutators
/// `[...[[x1, x2], x3]..., x_{c+1}]` of ball elements vanish. Chains are
/// deduplicated by the value of the inner commutator, which is sound
/// because the next level only depends on that value.
pub fn nilpotency_witness(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    c: usize,
    radius: usize,
) -> Result<NilpotencyWitness> {
    if c < 1 {
        return Err(Error::ShapeMismatch { context: "nilpotency class must be >= 1".into() });
    }
    let b = ball(descriptor, gens, radius)?;
    let identity = descriptor.identity();
    let inverses: Vec<GroupElement> = b
        .elements()
        .iter()
        .map(|e| descriptor.invert(e))
        .collect::<Result<_>>()?;

    // level k holds the distinct values of k-fold left-normed commutators,
    // each with one representative chain of ball indices
    let mut level: BTreeMap<GroupElement, Vec<usize>> = b
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), vec![i]))
        .collect();

    for _steps in 2..=c + 1 {
        let mut next: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (u, chain) in &level {
            if *u == identity {
                // [1, x] = 1 for all x; the chain dies here
                continue;
            }
            let u_inv = descriptor.invert(u)?;
            for (xi, x) in b.elements().iter().enumerate() {
                // [u, x] = u^-1 x^-1 u x
                let comm = descriptor.multiply(
                    &descriptor.multiply(&u_inv, &inverses[xi])?,
                    &descriptor.multiply(u, x)?,
                )?;
                next.entry(comm).or_insert_with(|| {
                    let mut c = chain.clone();
                    c.push(xi);
                    c
                });
            }
        }
        level = next;
        if level.is_empty() || (level.len() == 1 && level.contains_key(&identity)) {
            break;
        }
    }

    for (value, chain) in &level {
        if *value != identity {
            let elements = chain.iter().map(|&i| b.elements()[i].clone()).collect();
            return Ok(NilpotencyWitness::Violation(elements));
        }
    }
    let exact = matches!(descriptor.nilpotency_class(), Some(k) if k <= c);
    Ok(NilpotencyWitness::ConsistentWithClassAtMost { c, radius, exact })
}

/// Exact center membership: an element is central iff it commutes with the
/// standard generators, which generate the group.
pub fn center_membership(descriptor: &GroupDescriptor, a: &GroupElement) -> Result<bool> {
    for g in descriptor.standard_generators().elements() {
        if descriptor.multiply(a, g)? != descriptor.multiply(g, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Structural Hirsch length of a builtin descriptor.
pub fn hirsch_length(descriptor: &GroupDescriptor) -> usize {
    descriptor.hirsch_length()
}

/// Torsion elements found in a ball over the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    /// Finite-order elements of the ball, in canonical ball order.
    pub elements: Vec<GroupElement>,
    /// Set when the structural torsion set is known and fully contained in
    /// the listing. Groups with a dihedral factor have infinitely many
    /// torsion elements, so their listings are always ball-limited.
    pub complete: bool,
}

fn structural_torsion(kind: &GroupKind) -> Option<Vec<GroupElement>> {
    match kind {
        GroupKind::FreeAbelian(n) => Some(vec![GroupElement::IntVector(vec![0; *n])]),
        GroupKind::Unitriangular(n) => Some(vec![GroupElement::Unitriangular(
            crate::matrix::IntMatrix::identity(*n),
        )]),
        GroupKind::Finite(t) => {
            Some((1..=t.size()).map(GroupElement::FinitePoint).collect())
        }
        GroupKind::DihedralInfinite => None,
        GroupKind::Product(fs) => {
            let mut acc: Vec<Vec<GroupElement>> = vec![Vec::new()];
            for f in fs {
                let part = structural_torsion(f)?;
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for prefix in &acc {
                    for p in &part {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        next.push(v);
                    }
                }
                acc = next;
            }
            Some(acc.into_iter().map(GroupElement::Product).collect())
        }
    }
}

/// All finite-order elements within the radius-`r` ball over the standard
/// generators, plus a completeness flag from the structural torsion set.
pub fn torsion_elements(descriptor: &GroupDescriptor, radius: usize) -> Result<TorsionReport> {
    let gens = descriptor.standard_generators();
    let b = ball(descriptor, &gens, radius)?;
    let mut elements = Vec::new();
    for e in b.elements() {
        if let ElementOrder::Finite(_) = descriptor.order(e)? {
            elements.push(e.clone());
        }
    }
    let complete = match structural_torsion(descriptor.kind()) {
        Some(full) => {
            let mut sorted = elements.clone();
            sorted.sort();
            let mut full = full;
            full.sort();
            sorted == full
        }
        None => false,
    };
    Ok(TorsionReport { elements, complete })
}

/// How a descriptor decomposes for the isolator computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TauFactor {
    Free(usize),
    Ut3,
    TrivialFinite,
}

/// Isolator classification of a torsion-free class-2 builtin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolatorClass {
    /// `G / tau(G) = Z^n` and `tau(G) = Z^m`.
    Class { n: usize, m: usize },
    NotApplicable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatorReport {
    pub classification: IsolatorClass,
    /// Human-readable membership predicate for `tau(G)`.
    pub predicate: String,
    factors: Vec<TauFactor>,
}

impl IsolatorReport {
    /// Executable membership test for `tau(G)`; always false when the
    /// classification is not applicable.
    pub fn contains(&self, e: &GroupElement) -> bool {
        if matches!(self.classification, IsolatorClass::NotApplicable { .. }) {
            return false;
        }
        fn factor_ok(f: TauFactor, e: &GroupElement) -> bool {
            match (f, e) {
                (TauFactor::Free(n), GroupElement::IntVector(v)) => {
                    v.len() == n && v.iter().all(|&c| c == 0)
                }
                (TauFactor::Ut3, GroupElement::Unitriangular(m)) => {
                    m.nrows() == 3 && m[(0, 1)].is_zero() && m[(1, 2)].is_zero()
                }
                (TauFactor::TrivialFinite, GroupElement::FinitePoint(1)) => true,
                _ => false,
            }
        }
        match (self.factors.as_slice(), e) {
            ([single], e) => factor_ok(*single, e),
            (fs, GroupElement::Product(ps)) => {
                fs.len() == ps.len() && fs.iter().zip(ps).all(|(f, p)| factor_ok(*f, p))
            }
            _ => false,
        }
    }
}

impl fmt::Display for IsolatorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.classification {
            IsolatorClass::Class { n, m } => {
                write!(f, "I({n},{m}); tau(G) = {{ {} }}", self.predicate)
            }
            IsolatorClass::NotApplicable { reason } => write!(f, "not applicable: {reason}"),
        }
    }
}

/// Compute `tau(G)` (the isolator of the commutator subgroup: elements with
/// a power in `G'`) structurally, for torsion-free class-2 builtins: `UT(3)`
/// and products of `UT(3)` factors with free abelian ones. For `UT(3)`,
/// `G'` consists of the matrices supported on the top corner, and `G/G'` is
/// already torsion-free, so `tau(G) = G'` with `G/tau = Z^2` and `tau = Z`.
pub fn isolator_tau(descriptor: &GroupDescriptor) -> IsolatorReport {
    let not_applicable = |reason: String| IsolatorReport {
        classification: IsolatorClass::NotApplicable { reason },
        predicate: String::new(),
        factors: Vec::new(),
    };
    if !descriptor.is_torsion_free() {
        return not_applicable("group has torsion".into());
    }
    match descriptor.nilpotency_class() {
        Some(2) => {}
        Some(c) => return not_applicable(format!("class {c} != 2")),
        None => return not_applicable("not nilpotent".into()),
    }
    let factor_of = |kind: &GroupKind| -> Option<TauFactor> {
        match kind {
            GroupKind::FreeAbelian(k) => Some(TauFactor::Free(*k)),
            GroupKind::Unitriangular(3) => Some(TauFactor::Ut3),
            GroupKind::Finite(t) if t.size() == 1 => Some(TauFactor::TrivialFinite),
            _ => None,
        }
    };
    let factors: Option<Vec<TauFactor>> = match descriptor.kind() {
        GroupKind::Product(fs) => fs.iter().map(factor_of).collect(),
        single => factor_of(single).map(|f| vec![f]),
    };
    let Some(factors) = factors else {
        return not_applicable(format!(
            "unsupported shape {descriptor} (need UT(3) and free abelian factors)"
        ));
    };
    let mut n = 0usize;
    let mut m = 0usize;
    let mut parts = Vec::new();
    for f in &factors {
        match f {
            TauFactor::Free(k) => {
                n += k;
                parts.push(format!("free part = 0^{k}"));
            }
            TauFactor::Ut3 => {
                n += 2;
                m += 1;
                parts.push("a(1,2) = a(2,3) = 0".to_string());
            }
            TauFactor::TrivialFinite => {}
        }
    }
    debug_assert_eq!(n + m, descriptor.hirsch_length());
    IsolatorReport {
        classification: IsolatorClass::Class { n, m },
        predicate: parts.join("; "),
        factors,
    }
}

/// Membership in the commutator subgroup of `UT(3)` (matrices supported on
/// the top corner).
pub fn ut3_derived_contains(e: &GroupElement) -> bool {
    match e {
        GroupElement::Unitriangular(m) => {
            m.nrows() == 3 && m[(0, 1)].is_zero() && m[(1, 2)].is_zero()
        }
        _ => false,
    }
}

/// Smallest `s` in `1..=bound` with `e^s` in the commutator subgroup of
/// `UT(3)`, if any. Used as a cross-check of the structural isolator; the
/// structural route is primary because the search cannot terminate on
/// negatives.
pub fn isolator_s_witness(
    descriptor: &GroupDescriptor,
    e: &GroupElement,
    bound: u64,
) -> Result<Option<u64>> {
    if !matches!(descriptor.kind(), GroupKind::Unitriangular(3)) {
        return Err(Error::IsoMismatch {
            reason: "s-witness search is defined for UT(3)".into(),
        });
    }
    let mut acc = descriptor.identity();
    for s in 1..=bound {
        acc = descriptor.multiply(&acc, e)?;
        if ut3_derived_contains(&acc) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Abelianization of a builtin descriptor, as a finitely generated abelian
/// group: `Z^n` for free parts, `F/F'` for finite tables (computed from the
/// table), `Z2 x Z2` for the infinite dihedral group (the quotient by the
/// translations), `Z^(n-1)` for `UT(n)`, and products componentwise.
pub fn abelianization(descriptor: &GroupDescriptor) -> AbelianGroup {
    fn of_kind(kind: &GroupKind) -> (usize, Vec<u64>) {
        match kind {
            GroupKind::FreeAbelian(n) => (*n, Vec::new()),
            GroupKind::Unitriangular(n) => (*n - 1, Vec::new()),
            GroupKind::DihedralInfinite => (0, vec![2, 2]),
            GroupKind::Finite(t) => (0, finite_abelianization(t)),
            GroupKind::Product(fs) => {
                let mut rank = 0;
                let mut orders = Vec::new();
                for f in fs {
                    let (r, o) = of_kind(f);
                    rank += r;
                    orders.extend(o);
                }
                (rank, orders)
            }
        }
    }
    let (rank, orders) = of_kind(descriptor.kind());
    AbelianGroup::from_cyclic_orders(rank, &orders)
}

/// Cyclic orders of `F/F'` read off the table: commutator subgroup by
/// closure, then the quotient's type from its element orders.
fn finite_abelianization(t: &FiniteTable) -> Vec<u64> {
    let l = t.size();
    let mut comms = Vec::new();
    for a in 1..=l {
        for b in 1..=l {
            comms.push(t.mul(t.mul(t.mul(t.inverse(a), t.inverse(b)), a), b));
        }
    }
    let derived = t.closure(&comms);
    let in_derived = |x: usize| derived.binary_search(&x).is_ok();
    // order of the coset of x in F/F': least k with x^k in F'
    let mut orders = Vec::new();
    let mut seen_cosets: Vec<usize> = Vec::new();
    for x in 1..=l {
        // coset representative: skip x if x * d already seen for some d in F'
        let canonical = derived
            .iter()
            .map(|&d| t.mul(x, d))
            .min()
            .expect("derived subgroup is nonempty");
        if seen_cosets.contains(&canonical) {
            continue;
        }
        seen_cosets.push(canonical);
        let mut acc = x;
        let mut k = 1u64;
        while !in_derived(acc) {
            acc = t.mul(acc, x);
            k += 1;
        }
        orders.push(k);
    }
    let ty = FiniteAbelianType::from_element_orders(&orders);
    ty.invariant_factors()
}

/// The finite dihedral quotient `D_m` of the infinite dihedral group
/// (order `2m`), realized as a multiplication table. The quotient map sends
/// the isometry `(f, a)` to `r^a s^f` modulo `r^m = 1`.
pub fn dinf_finite_quotient(m: usize) -> FiniteTable {
    FiniteTable::dihedral(m)
}

/// Image of an infinite dihedral element under the quotient onto `D_m`,
/// as an index into [`dinf_finite_quotient`]'s table.
pub fn dinf_quotient_index(m: usize, e: &GroupElement) -> Result<usize> {
    let GroupElement::Dihedral { flip, offset } = e else {
        return Err(Error::DescriptorMismatch {
            context: format!("{e} is not an infinite dihedral element"),
        });
    };
    let a = offset.rem_euclid(m as i64) as usize;
    // r^a s^f = s^f r^((-1)^f a); table indices are 1..=m rotations then
    // m+1..=2m reflections s r^k
    Ok(if *flip {
        let k = (m - a) % m;
        m + k + 1
    } else {
        a + 1
    })
}
