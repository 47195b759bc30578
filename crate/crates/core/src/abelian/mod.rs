//! Finitely generated abelian group calculus.
//!
//! Groups are stored in invariant-factor form `Z^m x Z_{d1} x ... x Z_{ds}`
//! with `d1 | d2 | ... | ds`, the unique canonical representation; the
//! elementary-divisor (prime power) form is derived on demand. Quotient
//! reasoning happens per prime: a finite abelian type is a multiset of
//! prime-power cyclic orders.

pub mod quotients;
pub mod snf;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Multiset of prime-power cyclic orders, canonically sorted. The trivial
/// group is the empty multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteAbelianType {
    prime_powers: Vec<u64>,
}

/// Factor `n` by trial division (desk-scale inputs).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

impl FiniteAbelianType {
    pub fn trivial() -> Self {
        FiniteAbelianType::default()
    }

    /// From a multiset of prime powers (each `>= 2`, each a power of a
    /// single prime).
    pub fn new(mut prime_powers: Vec<u64>) -> Result<Self> {
        for &q in &prime_powers {
            if q < 2 || factorize(q).len() != 1 {
                return Err(Error::Parse {
                    what: format!("{q} is not a prime power >= 2"),
                    at: q.to_string(),
                });
            }
        }
        prime_powers.sort_unstable();
        Ok(FiniteAbelianType { prime_powers })
    }

    /// From arbitrary cyclic orders (composite orders split into their
    /// prime-power parts; ones are dropped).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut prime_powers = Vec::new();
        for &d in orders {
            for (p, e) in factorize(d) {
                prime_powers.push(p.pow(e));
            }
        }
        prime_powers.sort_unstable();
        FiniteAbelianType { prime_powers }
    }

    /// Reconstruct the type of a finite abelian group from the multiset of
    /// its element orders: for each prime `p`, the count of elements of
    /// order dividing `p^k` is `p^(sum_i min(k, e_i))`, which pins down the
    /// exponent partition `(e_i)`.
    pub fn from_element_orders(orders: &[u64]) -> Self {
        let n = orders.len() as u64;
        let mut prime_powers = Vec::new();
        for (p, _) in factorize(n) {
            // s[k] = log_p #{x : ord(x) | p^k}
            let mut s = vec![0u32];
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let mut log = 0u32;
                let mut c = count;
                while c > 1 {
                    debug_assert_eq!(c % p, 0, "abelian order counts are p-powers");
                    c /= p;
                    log += 1;
                }
                s.push(log);
                if count == n || s[k as usize] == s[k as usize - 1] {
                    break;
                }
                k += 1;
            }
            // parts_ge[k] = #exponents >= k
            for k in 1..s.len() {
                let parts_ge_k = s[k] - s[k - 1];
                let parts_ge_next = if k + 1 < s.len() { s[k + 1] - s[k] } else { 0 };
                for _ in 0..(parts_ge_k - parts_ge_next) {
                    prime_powers.push(p.pow(k as u32));
                }
            }
        }
        prime_powers.sort_unstable();
        FiniteAbelianType { prime_powers }
    }

    pub fn prime_powers(&self) -> &[u64] {
        &self.prime_powers
    }

    pub fn is_trivial(&self) -> bool {
        self.prime_powers.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.prime_powers.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        let mut by_prime: BTreeMap<u64, u64> = BTreeMap::new();
        for &q in &self.prime_powers {
            let p = factorize(q)[0].0;
            let e = by_prime.entry(p).or_insert(1);
            *e = (*e).max(q);
        }
        by_prime.values().product()
    }

    /// Primes appearing in the type.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.prime_powers.iter().map(|&q| factorize(q)[0].0).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Exponents of the `p`-part, sorted descending (the partition lambda).
    pub fn exponents_of(&self, p: u64) -> Vec<u32> {
        let mut es: Vec<u32> = self
            .prime_powers
            .iter()
            .filter_map(|&q| {
                let (q_p, e) = factorize(q)[0];
                (q_p == p).then_some(e)
            })
            .collect();
        es.sort_unstable_by(|a, b| b.cmp(a));
        es
    }

    /// Disjoint union of two types.
    pub fn product(&self, other: &FiniteAbelianType) -> FiniteAbelianType {
        let mut prime_powers = self.prime_powers.clone();
        prime_powers.extend_from_slice(&other.prime_powers);
        prime_powers.sort_unstable();
        FiniteAbelianType { prime_powers }
    }

    /// Invariant factors `d1 | d2 | ... | ds` (ascending).
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &q in &self.prime_powers {
            let (p, e) = factorize(q)[0];
            by_prime.entry(p).or_default().push(e);
        }
        let mut columns: Vec<Vec<(u64, u32)>> = Vec::new();
        let depth = by_prime.values().map(Vec::len).max().unwrap_or(0);
        for (p, mut es) in by_prime {
            es.sort_unstable_by(|a, b| b.cmp(a));
            for (i, e) in es.into_iter().enumerate() {
                if columns.len() <= i {
                    columns.push(Vec::new());
                }
                columns[i].push((p, e));
            }
        }
        debug_assert_eq!(columns.len(), depth);
        let mut factors: Vec<u64> = columns
            .into_iter()
            .map(|col| col.into_iter().map(|(p, e)| p.pow(e)).product())
            .collect();
        factors.reverse();
        factors
    }
}

impl fmt::Display for FiniteAbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prime_powers.is_empty() {
            return write!(f, "1");
        }
        for (i, q) in self.prime_powers.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "Z{q}")?;
        }
        Ok(())
    }
}

/// Finitely generated abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    /// Invariant factors, ascending, `d1 | d2 | ... | ds`, each `>= 2`.
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(rank: usize, factors: Vec<u64>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Parse {
                    what: format!("invariant factors must form a chain, {} does not divide {}", w[0], w[1]),
                    at: format!("{factors:?}"),
                });
            }
        }
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::Parse {
                what: "invariant factors must be >= 2".into(),
                at: format!("{factors:?}"),
            });
        }
        Ok(AbelianGroup { rank, factors })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, factors: Vec::new() }
    }

    /// Canonicalize from a free rank and any list of cyclic torsion orders.
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> Self {
        let t = FiniteAbelianType::from_cyclic_orders(orders);
        AbelianGroup { rank, factors: t.invariant_factors() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn torsion(&self) -> FiniteAbelianType {
        FiniteAbelianType::from_cyclic_orders(&self.factors)
    }

    pub fn torsion_order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    /// Elementary divisors: the prime powers of the torsion part, sorted.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        self.torsion().prime_powers().to_vec()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut first = true;
        if self.rank > 0 {
            write!(f, "Z^{}", self.rank)?;
            first = false;
        }
        for d in &self.factors {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parse an abelian group literal: `Z^2 + Z4 + Z8`, `Z + Z6`, `Z12`, or `1`
/// for the trivial group. Torsion orders are canonicalized to
/// invariant-factor form, so `Z2 + Z3` and `Z6` denote the same group.
pub fn parse_abelian(input: &str) -> Result<AbelianGroup> {
    let input = input.trim();
    if input == "1" {
        return Ok(AbelianGroup::free(0));
    }
    let mut rank = 0usize;
    let mut orders = Vec::new();
    for part in input.split('+') {
        let part = part.trim();
        if part == "Z" {
            rank += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            let k: usize = r.trim().parse().map_err(|_| Error::Parse {
                what: "free rank".into(),
                at: part.into(),
            })?;
            rank += k;
        } else if let Some(d) = part.strip_prefix('Z') {
            let d: u64 = d.trim().parse().map_err(|_| Error::Parse {
                what: "torsion order".into(),
                at: part.into(),
            })?;
            if d < 2 {
                return Err(Error::Parse {
                    what: "torsion order must be >= 2".into(),
                    at: part.into(),
                });
            }
            orders.push(d);
        } else {
            return Err(Error::Parse {
                what: "expected Z, Z^k, or Zd".into(),
                at: part.into(),
            });
        }
    }
    Ok(AbelianGroup::from_cyclic_orders(rank, &orders))
}

/// Parse a finite abelian type literal (an abelian literal with no free
/// part).
pub fn parse_finite_type(input: &str) -> Result<FiniteAbelianType> {
    let g = parse_abelian(input)?;
    if g.rank() != 0 {
        return Err(Error::Parse {
            what: "finite type cannot have a free part".into(),
            at: input.into(),
        });
    }
    Ok(g.torsion())
}
