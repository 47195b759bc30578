//! Shared test oracles. Everything here recomputes expected values by
//! routes independent of the library code under test: string rewriting and
//! pointwise function composition for the infinite dihedral group, naive
//! i128 matrix arithmetic, homomorphism enumeration for abelian quotients,
//! and bitmask subgroup enumeration for small finite groups.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Small deterministic PRNG (xorshift64*), so randomized suites are
/// reproducible.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn index(&mut self, len: usize) -> usize {
        (self.next_u64() % len as u64) as usize
    }
}

pub mod matrix_oracle {
    /// Naive matrix product over i128.
    pub fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = a.len();
        let m = b[0].len();
        let k = b.len();
        let mut out = vec![vec![0i128; m]; n];
        for i in 0..n {
            for t in 0..k {
                if a[i][t] == 0 {
                    continue;
                }
                for j in 0..m {
                    out[i][j] += a[i][t] * b[t][j];
                }
            }
        }
        out
    }

    pub fn identity(n: usize) -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        m
    }

    /// `I + e * E(i,j)` (1-based indices).
    pub fn elementary(n: usize, i: usize, j: usize, e: i128) -> Vec<Vec<i128>> {
        let mut m = identity(n);
        m[i - 1][j - 1] = e;
        m
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = m.to_vec();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
}

/// Infinite dihedral oracle built on reduced strings over {x, y} and
/// pointwise function composition; no shared state with the library's
/// isometry representation.
pub mod dinf_oracle {
    use std::collections::BTreeSet;

    /// An isometry of the line, stored by its values at 0 and 1.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
    pub struct Iso {
        pub at0: i64,
        pub at1: i64,
    }

    pub const IDENTITY: Iso = Iso { at0: 0, at1: 1 };
    /// x: t -> -t
    pub const X: Iso = Iso { at0: 0, at1: -1 };
    /// y: t -> -t + 1
    pub const Y: Iso = Iso { at0: 1, at1: 0 };

    pub fn apply(g: Iso, t: i64) -> i64 {
        let slope = g.at1 - g.at0;
        g.at0 + slope * t
    }

    /// Function composition `(g . h)(t) = g(h(t))`, evaluated pointwise.
    pub fn compose(g: Iso, h: Iso) -> Iso {
        Iso { at0: apply(g, h.at0), at1: apply(g, h.at1) }
    }

    /// Cancel adjacent equal letters until the word is reduced.
    pub fn reduce(word: &str) -> String {
        let mut out: Vec<u8> = Vec::with_capacity(word.len());
        for &c in word.as_bytes() {
            if out.last() == Some(&c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        String::from_utf8(out).unwrap()
    }

    /// All reduced words of length at most `max_len` (alternating strings).
    pub fn reduced_words(max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        for first in ['x', 'y'] {
            for len in 1..=max_len {
                let mut w = String::new();
                let mut c = first;
                for _ in 0..len {
                    w.push(c);
                    c = if c == 'x' { 'y' } else { 'x' };
                }
                out.push(w);
            }
        }
        out
    }

    pub fn iso_of_word(w: &str) -> Iso {
        w.chars().fold(IDENTITY, |acc, c| compose(acc, if c == 'x' { X } else { Y }))
    }

    /// Canonical `dih(flag,offset)` text of an isometry, for comparison with
    /// library elements.
    pub fn canonical_text(g: Iso) -> String {
        let slope = g.at1 - g.at0;
        let flag = if slope == -1 { 1 } else { 0 };
        format!("dih({},{})", flag, g.at0)
    }

    /// Cell of the five-cell partition, decided on the reduced word alone.
    pub fn cell_of_word(w: &str) -> usize {
        match (w.chars().next(), w.len()) {
            (None, _) => 1,
            (Some('x'), 1) => 2,
            (Some('y'), 1) => 3,
            (Some('x'), _) => 4,
            (Some('y'), _) => 5,
            _ => unreachable!(),
        }
    }

    /// The configuration set of ((x, y), five cells) with witnesses of
    /// length at most `radius`, computed entirely on strings.
    pub fn config_set(radius: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for w in reduced_words(radius) {
            let c0 = cell_of_word(&w);
            let cx = cell_of_word(&reduce(&format!("x{w}")));
            let cy = cell_of_word(&reduce(&format!("y{w}")));
            out.insert(vec![c0, cx, cy]);
        }
        out
    }
}

/// Brute-force abelian quotient decision by homomorphism enumeration.
pub mod abelian_oracle {
    /// Elements of `prod Z_{orders[i]}` as coordinate tuples.
    fn elements(orders: &[u64]) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in orders {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for prefix in &out {
                for c in 0..d {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    fn add(orders: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
        orders.iter().zip(a.iter().zip(b)).map(|(&d, (&x, &y))| (x + y) % d).collect()
    }

    /// Additive order of an element.
    fn order_of(orders: &[u64], a: &[u64]) -> u64 {
        let zero = vec![0; orders.len()];
        let mut acc = a.to_vec();
        let mut k = 1;
        while acc != zero {
            acc = add(orders, &acc, a);
            k += 1;
        }
        k
    }

    /// Do the given elements generate the whole group? (additive closure)
    fn generates(orders: &[u64], gens: &[Vec<u64>]) -> bool {
        let total: u64 = orders.iter().product();
        let zero = vec![0u64; orders.len()];
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let s = add(orders, &e, g);
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        seen.len() as u64 == total
    }

    /// Is the finite abelian group `prod Z_{target[i]}` a quotient of
    /// `Z^free x prod Z_{torsion[i]}`? Decided by enumerating every
    /// homomorphism (a free generator can map to any element; a torsion
    /// generator of order `d` can map to any element killed by `d`) and
    /// checking whether some image set generates the target.
    pub fn is_finite_quotient(free: usize, torsion: &[u64], target: &[u64]) -> bool {
        let all = elements(target);
        let mut choices: Vec<Vec<usize>> = Vec::new();
        for _ in 0..free {
            choices.push((0..all.len()).collect());
        }
        for &d in torsion {
            let ok: Vec<usize> = (0..all.len())
                .filter(|&i| {
                    let o = order_of(target, &all[i]);
                    d % o == 0
                })
                .collect();
            choices.push(ok);
        }
        if choices.is_empty() {
            return all.len() == 1;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let gens: Vec<Vec<u64>> =
                idx.iter().zip(&choices).map(|(&i, c)| all[c[i]].clone()).collect();
            if generates(target, &gens) {
                return true;
            }
            let mut pos = choices.len();
            loop {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Is `Z^n x (prod Z_{target[i]})` a quotient of
    /// `Z^rank x prod Z_{torsion[i]}`?
    ///
    /// A surjection onto `Z^n x L` composed with the projection to `Z^n`
    /// kills the torsion and splits: the kernel of the free projection is
    /// `K x Tor` with `K` free of rank `rank - n`, and it surjects onto `L`.
    /// Conversely a product of surjections works. So the decision reduces to
    /// `n <= rank` plus the finite homomorphism search above.
    pub fn is_quotient(rank: usize, torsion: &[u64], n: usize, target: &[u64]) -> bool {
        n <= rank && is_finite_quotient(rank - n, torsion, target)
    }
}

/// Exhaustive subgroup enumeration for finite abelian groups of order at
/// most 64, with quotient types keyed by their element-order multisets
/// (two finite abelian groups are isomorphic iff those multisets agree).
pub mod subgroup_oracle {
    use std::collections::BTreeSet;

    pub struct FinAbelian {
        orders: Vec<u64>,
        size: usize,
        add: Vec<Vec<usize>>,
    }

    impl FinAbelian {
        pub fn new(orders: &[u64]) -> FinAbelian {
            let size: u64 = orders.iter().product();
            let size = size as usize;
            assert!(size <= 64, "bitmask oracle supports order <= 64");
            let decode = |mut i: usize| -> Vec<u64> {
                let mut v = Vec::with_capacity(orders.len());
                for &d in orders {
                    v.push((i as u64) % d);
                    i /= d as usize;
                }
                v
            };
            let encode = |v: &[u64]| -> usize {
                let mut i = 0usize;
                for (k, &d) in orders.iter().enumerate().rev() {
                    i = i * d as usize + v[k] as usize;
                }
                i
            };
            let mut add = vec![vec![0usize; size]; size];
            #[allow(clippy::needless_range_loop)]
            for a in 0..size {
                for b in 0..size {
                    let va = decode(a);
                    let vb = decode(b);
                    let sum: Vec<u64> = orders
                        .iter()
                        .zip(va.iter().zip(&vb))
                        .map(|(&d, (&x, &y))| (x + y) % d)
                        .collect();
                    add[a][b] = encode(&sum);
                }
            }
            FinAbelian { orders: orders.to_vec(), size, add }
        }

        pub fn size(&self) -> usize {
            self.size
        }

        #[allow(clippy::needless_range_loop)]
        fn closure(&self, mask: u64) -> u64 {
            let mut m = mask | 1; // identity is element 0
            loop {
                let mut grew = false;
                for a in 0..self.size {
                    if m >> a & 1 == 0 {
                        continue;
                    }
                    for b in 0..self.size {
                        if m >> b & 1 == 0 {
                            continue;
                        }
                        let c = self.add[a][b];
                        if m >> c & 1 == 0 {
                            m |= 1 << c;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    return m;
                }
            }
        }

        /// Every subgroup, as a bitmask over element indices.
        pub fn all_subgroups(&self) -> BTreeSet<u64> {
            let mut known = BTreeSet::new();
            known.insert(self.closure(1));
            let mut frontier: Vec<u64> = known.iter().copied().collect();
            while let Some(s) = frontier.pop() {
                for x in 0..self.size {
                    if s >> x & 1 == 1 {
                        continue;
                    }
                    let bigger = self.closure(s | 1 << x);
                    if known.insert(bigger) {
                        frontier.push(bigger);
                    }
                }
            }
            known
        }

        /// Multiset of coset orders of `G / N` (`N` given as a mask); this
        /// is the isomorphism key of the quotient.
        pub fn quotient_order_multiset(&self, n_mask: u64) -> Vec<u64> {
            let mut seen = vec![false; self.size];
            let mut orders = Vec::new();
            for x in 0..self.size {
                if seen[x] {
                    continue;
                }
                // mark the whole coset x + N
                for d in 0..self.size {
                    if n_mask >> d & 1 == 1 {
                        seen[self.add[x][d]] = true;
                    }
                }
                // order of the coset: least k >= 1 with k*x in N
                let mut acc = x;
                let mut k = 1u64;
                while n_mask >> acc & 1 == 0 {
                    acc = self.add[acc][x];
                    k += 1;
                }
                orders.push(k);
            }
            orders.sort_unstable();
            orders
        }
    }

    /// The element-order multiset of an explicitly built `prod Z_{orders}`
    /// (the quotient by the trivial subgroup).
    pub fn order_multiset(orders: &[u64]) -> Vec<u64> {
        FinAbelian::new(orders).quotient_order_multiset(1)
    }

    /// All quotient types of `prod Z_{orders}`, keyed by order multisets.
    pub fn all_quotient_keys(orders: &[u64]) -> BTreeSet<Vec<u64>> {
        let g = FinAbelian::new(orders);
        g.all_subgroups()
            .into_iter()
            .map(|n| g.quotient_order_multiset(n))
            .collect()
    }
}

/// All divisibility chains of length `0..=max_len` with entries drawn from
/// the pool, ascending. Used for the quotient-grid suites.
pub fn torsion_chains(pool: &[u64], max_len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for chain in &level {
            for &d in pool {
                if chain.last().is_none_or(|&last| d % last == 0) {
                    let mut c = chain.clone();
                    c.push(d);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Random unimodular matrix as a product of elementary shears and swaps.
pub fn random_unimodular_2x2(rng: &mut XorShift, steps: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![1i64, 0], vec![0, 1]];
    for _ in 0..steps {
        let c = rng.int_in(-2, 2);
        match rng.index(4) {
            0 => {
                // row0 += c * row1
                m[0][0] += c * m[1][0];
                m[0][1] += c * m[1][1];
            }
            1 => {
                m[1][0] += c * m[0][0];
                m[1][1] += c * m[0][1];
            }
            2 => m.swap(0, 1),
            _ => {
                m[0][0] = -m[0][0];
                m[0][1] = -m[0][1];
            }
        }
    }
    m
}

/// Deterministic sample of index triples covering `0..len` (all triples when
/// small, a seeded sample otherwise).
pub fn triple_sample(len: usize, cap: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    if len.pow(3) <= cap {
        let mut out = Vec::with_capacity(len.pow(3));
        for a in 0..len {
            for b in 0..len {
                for c in 0..len {
                    out.push((a, b, c));
                }
            }
        }
        out
    } else {
        let mut rng = XorShift::new(seed);
        (0..cap).map(|_| (rng.index(len), rng.index(len), rng.index(len))).collect()
    }
}


/// Convenient canonical key set for a library configuration set.
pub fn tuple_set(set: &congroup::config::ConfigurationSet) -> BTreeSet<Vec<usize>> {
    set.configurations().map(|c| c.entries().to_vec()).collect()
}
