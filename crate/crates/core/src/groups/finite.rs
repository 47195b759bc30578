//! Finite groups given by explicit multiplication tables.
//!
//! Elements are the indices `1..=l`; index 1 is the identity. The table is
//! checked to be a genuine group table at construction: identity row/column,
//! Latin-square rows and columns, and full associativity (exhaustive, which
//! is fine at desk scale).

use crate::error::{Error, Result};

/// `l x l` multiplication table over indices `1..=l`; `table[i-1][j-1] = k`
/// encodes `x_i * x_j = x_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteTable {
    table: Vec<Vec<usize>>,
}

impl FiniteTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let l = table.len();
        if l == 0 {
            return Err(Error::InvalidTable { reason: "empty table".into() });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != l {
                return Err(Error::InvalidTable {
                    reason: format!("row {} has {} entries, expected {l}", i + 1, row.len()),
                });
            }
            for (j, &k) in row.iter().enumerate() {
                if k < 1 || k > l {
                    return Err(Error::InvalidTable {
                        reason: format!("entry at ({},{}) is {k}, outside 1..={l}", i + 1, j + 1),
                    });
                }
            }
        }
        let t = FiniteTable { table };
        // Identity must sit at index 1.
        for j in 1..=l {
            if t.mul(1, j) != j || t.mul(j, 1) != j {
                return Err(Error::InvalidTable {
                    reason: format!("index 1 is not an identity (fails on {j})"),
                });
            }
        }
        // Latin square: every row and column is a permutation.
        for i in 1..=l {
            let mut seen_row = vec![false; l + 1];
            let mut seen_col = vec![false; l + 1];
            for j in 1..=l {
                let r = t.mul(i, j);
                let c = t.mul(j, i);
                if seen_row[r] {
                    return Err(Error::InvalidTable {
                        reason: format!("row {i} repeats value {r}"),
                    });
                }
                if seen_col[c] {
                    return Err(Error::InvalidTable {
                        reason: format!("column {i} repeats value {c}"),
                    });
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // Associativity, exhaustively.
        for a in 1..=l {
            for b in 1..=l {
                for c in 1..=l {
                    if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
                        return Err(Error::InvalidTable {
                            reason: format!("associativity fails at ({a},{b},{c})"),
                        });
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i - 1][j - 1]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (1..=self.size())
            .find(|&j| self.mul(i, j) == 1)
            .expect("validated table has inverses")
    }

    /// Order of `x_i` by repeated multiplication (bounded by the table size).
    pub fn element_order(&self, i: usize) -> u64 {
        let mut acc = i;
        let mut n = 1u64;
        while acc != 1 {
            acc = self.mul(acc, i);
            n += 1;
        }
        n
    }

    pub fn is_commutative(&self) -> bool {
        let l = self.size();
        (1..=l).all(|i| (1..=l).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Indices commuting with every element.
    pub fn center(&self) -> Vec<usize> {
        let l = self.size();
        (1..=l).filter(|&i| (1..=l).all(|j| self.mul(i, j) == self.mul(j, i))).collect()
    }

    /// Subgroup generated by `gens`, as a sorted list of indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.size() + 1];
        inside[1] = true;
        let mut stack = vec![1];
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                stack.push(g);
            }
        }
        while let Some(a) = stack.pop() {
            let push = |k: usize, inside: &mut Vec<bool>, stack: &mut Vec<usize>| {
                if !inside[k] {
                    inside[k] = true;
                    stack.push(k);
                }
            };
            let members: Vec<usize> =
                (1..=self.size()).filter(|&b| inside[b]).collect();
            for b in members {
                push(self.mul(a, b), &mut inside, &mut stack);
                push(self.mul(b, a), &mut inside, &mut stack);
            }
            push(self.inverse(a), &mut inside, &mut stack);
        }
        (1..=self.size()).filter(|&i| inside[i]).collect()
    }

    /// `perm` (1-based, `perm[0]` unused slot not included: `perm[i-1]` is the
    /// image of `i`) is a table automorphism iff it is a bijection compatible
    /// with multiplication.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let l = self.size();
        if perm.len() != l {
            return false;
        }
        let mut seen = vec![false; l + 1];
        for &p in perm {
            if p < 1 || p > l || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (1..=l).all(|i| {
            (1..=l).all(|j| perm[self.mul(i, j) - 1] == self.mul(perm[i - 1], perm[j - 1]))
        })
    }

    /// Nilpotency class computed from the lower central series, or `None`
    /// when the group is not nilpotent. The trivial group reports class 0.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let mut gamma: Vec<usize> = (1..=self.size()).collect();
        let mut class = 0;
        loop {
            if gamma == [1] {
                return Some(class);
            }
            let mut comms = Vec::new();
            for &a in &gamma {
                for b in 1..=self.size() {
                    // [a,b] = a^-1 b^-1 a b
                    let c = self.mul(self.mul(self.mul(self.inverse(a), self.inverse(b)), a), b);
                    comms.push(c);
                }
            }
            let next = self.closure(&comms);
            if next == gamma {
                return None;
            }
            gamma = next;
            class += 1;
        }
    }

    /// Cyclic group table of order `n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n + 1).collect())
            .collect();
        FiniteTable::new(table).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2m` (symmetries of the m-gon; for m = 1 this
    /// is the cyclic group of order 2). Index 1 is the identity; indices
    /// `1..=m` are rotations `r^0..r^(m-1)`, indices `m+1..=2m` are the
    /// reflections `s r^0..s r^(m-1)`.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 1);
        let idx = |refl: bool, rot: usize| if refl { m + rot + 1 } else { rot + 1 };
        let mut table = vec![vec![0usize; 2 * m]; 2 * m];
        #[allow(clippy::needless_range_loop)]
        for a in 0..2 * m {
            for b in 0..2 * m {
                let (fa, ra) = (a >= m, a % m);
                let (fb, rb) = (b >= m, b % m);
                // (s^fa r^ra)(s^fb r^rb) = s^(fa xor fb) r^(rb - ra) or r^(ra + rb)
                let rot = if fb { (m + rb - ra) % m } else { (ra + rb) % m };
                table[a][b] = idx(fa ^ fb, rot);
            }
        }
        FiniteTable::new(table).expect("dihedral table is a group")
    }
}
