//! Smith normal form and the quotient calculus against brute-force oracles.

mod common;

use common::{abelian_oracle, matrix_oracle, subgroup_oracle, torsion_chains, XorShift};
use congroup::abelian::quotients::{
    decide_zn_l_quotient, fa_consistency, finite_types_up_to, next_prime_above, quotient_types,
};
use congroup::abelian::snf::smith_normal_form;
use congroup::abelian::{AbelianGroup, FiniteAbelianType};
use congroup::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn random_matrix(rng: &mut XorShift, rows: usize, cols: usize) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.int_in(-9, 9)).collect())
        .collect();
    IntMatrix::from_i64(&data)
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| i128::try_from(&m[(i, j)]).unwrap()).collect())
        .collect()
}

#[test]
fn snf_property_suite_random_sample() {
    let mut rng = XorShift::new(0x51D3);
    for _ in 0..200 {
        let rows = 1 + rng.index(5);
        let cols = 1 + rng.index(5);
        let m = random_matrix(&mut rng, rows, cols);
        let snf = smith_normal_form(&m);
        // chain with zeros trailing
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero(), "zeros must trail: {diag:?}");
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {diag:?}");
            }
            assert!(!w[0].is_negative() && !w[1].is_negative());
        }
        // U M V = D and Uinv D Vinv = M, exactly
        assert_eq!(snf.u().mul(&m).mul(snf.v()), *snf.matrix());
        assert_eq!(snf.u_inv().mul(snf.matrix()).mul(snf.v_inv()), m);
        // transforms are integrally invertible (hence unimodular)
        assert!(snf.u().mul(snf.u_inv()).is_identity());
        assert!(snf.v().mul(snf.v_inv()).is_identity());
        // determinant preservation for square input, via the i128 oracle
        if rows == cols {
            let oracle = matrix_oracle::det(&to_i128(&m));
            let product: BigInt = snf.invariant_factors().iter().product::<BigInt>()
                * BigInt::from(if snf.rank() == rows { 1 } else { 0 });
            assert_eq!(product, BigInt::from(oracle.abs()), "det mismatch");
        }
    }
}

#[test]
fn quotient_types_match_exhaustive_subgroup_enumeration() {
    // every finite abelian group of order <= 64, compared by element-order
    // multisets (a complete isomorphism invariant for finite abelian groups)
    let mut groups: Vec<Vec<u64>> = Vec::new();
    for t in finite_types_up_to(64) {
        groups.push(t.prime_powers().to_vec());
    }
    assert!(groups.len() > 100, "expected all types of order <= 64");
    for orders in groups {
        let g = AbelianGroup::from_cyclic_orders(0, &orders);
        let torsion_order: u64 = orders.iter().product();
        let listed = quotient_types(&g, 0, torsion_order);
        let lib_keys: std::collections::BTreeSet<Vec<u64>> = listed
            .iter()
            .map(|q| subgroup_oracle::order_multiset(q.torsion.prime_powers()))
            .collect();
        let oracle_keys = subgroup_oracle::all_quotient_keys(&orders);
        assert_eq!(lib_keys, oracle_keys, "group {orders:?}");
    }
}

#[test]
fn decide_matches_hom_search_oracle_on_the_grid() {
    let chains = torsion_chains(&[2, 3, 4, 8], 2);
    let targets = finite_types_up_to(4);
    for rank in 0..=2usize {
        for chain in &chains {
            let g = AbelianGroup::new(rank, chain.clone()).unwrap();
            for n in 0..=2usize {
                for l in &targets {
                    let fast = decide_zn_l_quotient(&g, n, l).is_some();
                    let slow =
                        abelian_oracle::is_quotient(rank, chain, n, l.prime_powers());
                    assert_eq!(fast, slow, "G={g}, n={n}, L={l}");
                }
            }
        }
    }
}

#[test]
fn decide_matches_hom_search_on_random_mixed_prime_instances() {
    // adversarial shapes beyond the grid: mixed-prime invariant factors,
    // rank up to 3, targets up to order 8
    let pool = [2u64, 3, 4, 6, 8, 9, 12];
    let targets = finite_types_up_to(8);
    let mut rng = XorShift::new(0xFEED);
    for _ in 0..300 {
        let rank = rng.index(4);
        let mut chain: Vec<u64> = Vec::new();
        for _ in 0..rng.index(3) {
            let d = pool[rng.index(pool.len())];
            if chain.last().is_none_or(|&last| d.is_multiple_of(last)) {
                chain.push(d);
            }
        }
        let g = AbelianGroup::new(rank, chain.clone()).unwrap();
        let n = rng.index(4);
        let l = &targets[rng.index(targets.len())];
        let fast = decide_zn_l_quotient(&g, n, l).is_some();
        let slow = abelian_oracle::is_quotient(rank, &chain, n, l.prime_powers());
        assert_eq!(fast, slow, "G={g}, n={n}, L={l}");
    }
}

#[test]
fn witnesses_reproduce_their_types_across_the_grid() {
    let chains = torsion_chains(&[2, 3, 4, 8], 2);
    for rank in 0..=2usize {
        for chain in &chains {
            let g = AbelianGroup::new(rank, chain.clone()).unwrap();
            for q in quotient_types(&g, 2, 8) {
                assert_eq!(
                    q.witness.quotient_type(),
                    (q.rank, q.torsion.clone()),
                    "G={g}"
                );
            }
        }
    }
}

/// The per-prime/infinite biconditional is genuinely refutable, and the
/// checker must say so. On `G = Z^n x Z2^k`, target `Z^n x Z4`: every
/// `Z_p^n x Z4` is a quotient (one free generator covers `Z_p` and `Z4`
/// together through a composite cyclic image when needed), while `Z^n x Z4`
/// is not. Both sides are confirmed here with the independent
/// homomorphism-enumeration oracle before asserting the verdict.
#[test]
fn fa_consistency_correctly_refutes_the_biconditional() {
    let small = [2u64, 3, 5, 7, 11, 13];
    for (rank, chain) in [
        (1usize, vec![2u64]),
        (1, vec![2, 2]),
        (2, vec![2]),
        (2, vec![2, 2]),
    ] {
        let g = AbelianGroup::new(rank, chain.clone()).unwrap();
        let n = rank;
        let l = congroup::abelian::parse_finite_type("Z4").unwrap();
        let mut primes = small.to_vec();
        primes.push(next_prime_above(l.order() * g.torsion_order()));
        // oracle: every small prime really does admit the finite quotient
        // (hom enumeration into Z_p^n x L grows quadratically in p^n, so the
        // appended large prime is left to the decision procedure, which the
        // grid test checks against the oracle wherever feasible)
        for &p in primes.iter().filter(|&&p| p <= 13) {
            let mut target = vec![p; n];
            target.extend(l.prime_powers());
            assert!(
                abelian_oracle::is_quotient(rank, &chain, 0, &target),
                "G={g}: oracle rejects Z_{p}^{n} x Z4"
            );
        }
        // oracle: the infinite quotient genuinely does not exist
        assert!(
            !abelian_oracle::is_quotient(rank, &chain, n, l.prime_powers()),
            "G={g}: oracle accepts Z^{n} x Z4"
        );
        // and the checker reports exactly that
        let report = fa_consistency(&g, n, &l, &primes).unwrap();
        assert!(report.decision.is_none(), "G={g}");
        assert!(report.per_prime.iter().all(|&(_, ok)| ok), "G={g}");
        assert!(!report.consistent, "G={g}");
    }
}

#[test]
fn fa_consistency_holds_on_a_sample() {
    let gs = ["Z^2 + Z4", "Z + Z3", "Z^2", "Z8", "1", "Z + Z2 + Z8"];
    let ls = ["1", "Z2", "Z3", "Z4", "Z2 + Z2"];
    for gtext in gs {
        let g = congroup::abelian::parse_abelian(gtext).unwrap();
        for ltext in ls {
            let l = congroup::abelian::parse_finite_type(ltext).unwrap();
            for n in 0..=2usize {
                let mut primes = vec![2, 3, 5, 7, 11, 13];
                let needed = l.order() * g.torsion_order();
                primes.push(next_prime_above(needed));
                let report = fa_consistency(&g, n, &l, &primes).unwrap();
                assert!(report.consistent, "G={gtext}, n={n}, L={ltext}: {report}");
            }
        }
    }
}

#[test]
fn snf_handles_adversarial_shapes() {
    for m in [
        IntMatrix::from_i64(&[vec![0, 0], vec![0, 0]]),
        IntMatrix::from_i64(&[vec![0, 7], vec![0, 0]]),
        IntMatrix::from_i64(&[vec![6, 4], vec![4, 6]]),
        IntMatrix::from_i64(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]),
    ] {
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u().mul(&m).mul(snf.v()), *snf.matrix());
        assert_eq!(snf.u_inv().mul(snf.matrix()).mul(snf.v_inv()), m);
    }
    // diag(2,3,5) has SNF diag(1, 1, 30)? no: chain of 2,3,5 is 30 in one factor
    let m = IntMatrix::from_i64(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
    let snf = smith_normal_form(&m);
    let diag: Vec<String> = snf.diagonal().iter().map(|d| d.to_string()).collect();
    assert_eq!(diag, vec!["1", "1", "30"]);
}

#[test]
fn finite_type_enumeration_counts() {
    // orders 1..8 contribute 1+1+1+2+1+1+1+3 = 11 types
    assert_eq!(finite_types_up_to(8).len(), 11);
    // the trivial type is present
    assert!(finite_types_up_to(1).contains(&FiniteAbelianType::trivial()));
}
