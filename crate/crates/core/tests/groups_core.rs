//! Group arithmetic and ball enumeration against independent oracles.

mod common;

use common::{dinf_oracle, matrix_oracle, triple_sample, XorShift};
use congroup::groups::ball::ball;
use congroup::groups::finite::FiniteTable;
use congroup::groups::unitriangular::{generator, normal_form_exponents};
use congroup::groups::{ElementOrder, GroupDescriptor, GroupElement};
use congroup::matrix::IntMatrix;
use num_bigint::BigInt;

fn all_builtins() -> Vec<GroupDescriptor> {
    vec![
        GroupDescriptor::free_abelian(2).unwrap(),
        GroupDescriptor::finite(FiniteTable::dihedral(3)),
        GroupDescriptor::dihedral_infinite(),
        GroupDescriptor::unitriangular(3).unwrap(),
        GroupDescriptor::product(vec![
            GroupDescriptor::free_abelian(2).unwrap(),
            GroupDescriptor::finite(FiniteTable::cyclic(2)),
        ])
        .unwrap(),
        GroupDescriptor::product(vec![
            GroupDescriptor::unitriangular(3).unwrap(),
            GroupDescriptor::free_abelian(1).unwrap(),
        ])
        .unwrap(),
    ]
}

#[test]
fn group_axioms_on_radius_three_balls() {
    for d in all_builtins() {
        let gens = d.standard_generators();
        let b = ball(&d, &gens, 3).unwrap();
        let elems = b.elements();
        let id = d.identity();
        // identity and inverse laws on every ball element
        for e in elems {
            assert_eq!(d.multiply(e, &id).unwrap(), *e, "{d}");
            assert_eq!(d.multiply(&id, e).unwrap(), *e, "{d}");
            let inv = d.invert(e).unwrap();
            assert_eq!(d.multiply(e, &inv).unwrap(), id, "{d}");
            assert_eq!(d.multiply(&inv, e).unwrap(), id, "{d}");
        }
        // associativity on sampled triples
        for (i, j, k) in triple_sample(elems.len(), 20_000, 0xA55A) {
            let (a, b_, c) = (&elems[i], &elems[j], &elems[k]);
            let left = d.multiply(&d.multiply(a, b_).unwrap(), c).unwrap();
            let right = d.multiply(a, &d.multiply(b_, c).unwrap()).unwrap();
            assert_eq!(left, right, "{d}");
        }
    }
}

#[test]
fn dinf_ball_matches_word_oracle() {
    let d = GroupDescriptor::dihedral_infinite();
    let gens = d.standard_generators();
    for r in 0..=8 {
        let b = ball(&d, &gens, r).unwrap();
        let mut got: Vec<String> = b.elements().iter().map(|e| e.to_string()).collect();
        got.sort();
        let mut expect: Vec<String> = dinf_oracle::reduced_words(r)
            .iter()
            .map(|w| dinf_oracle::canonical_text(dinf_oracle::iso_of_word(w)))
            .collect();
        expect.sort();
        expect.dedup();
        assert_eq!(got, expect, "radius {r}");
        assert_eq!(b.len(), if r == 0 { 1 } else { 2 * r + 1 });
    }
}

#[test]
fn dinf_word_lengths_match_oracle() {
    let d = GroupDescriptor::dihedral_infinite();
    let gens = d.standard_generators();
    let b = ball(&d, &gens, 7).unwrap();
    for w in dinf_oracle::reduced_words(7) {
        let iso = dinf_oracle::iso_of_word(&w);
        let slope = iso.at1 - iso.at0;
        let e = GroupElement::dihedral(slope == -1, iso.at0);
        assert_eq!(b.length_of(&e), Some(w.len()), "word {w:?}");
    }
}

#[test]
fn z2_ball_is_the_l1_diamond() {
    let d = GroupDescriptor::free_abelian(2).unwrap();
    let gens = d.standard_generators();
    for r in 0..=5usize {
        let b = ball(&d, &gens, r).unwrap();
        assert_eq!(b.len(), 2 * r * r + 2 * r + 1, "radius {r}");
        for e in b.elements() {
            let c = e.free_coords();
            assert!((c[0].unsigned_abs() + c[1].unsigned_abs()) as usize <= r);
        }
    }
}

#[test]
fn unitriangular_relations_for_n_3_4_5() {
    for n in [3usize, 4, 5] {
        let d = GroupDescriptor::unitriangular(n).unwrap();
        let g = |i, j| GroupElement::Unitriangular(generator(n, i, j));
        for i in 1..n {
            for j in i + 1..=n {
                for k in 1..n {
                    for t in k + 1..=n {
                        // commuting relation when the indices do not chain
                        if i != t && j != k {
                            let ab = d.multiply(&g(i, j), &g(k, t)).unwrap();
                            let ba = d.multiply(&g(k, t), &g(i, j)).unwrap();
                            assert_eq!(ab, ba, "n={n} ({i},{j}),({k},{t})");
                        }
                    }
                }
            }
        }
        // chained relation g(k,t) g(i,k) = g(i,k) g(i,t)^-1 g(k,t)
        for i in 1..n {
            for k in i + 1..n {
                for t in k + 1..=n {
                    let lhs = d.multiply(&g(k, t), &g(i, k)).unwrap();
                    let git_inv = d.invert(&g(i, t)).unwrap();
                    let rhs = d
                        .multiply(&d.multiply(&g(i, k), &git_inv).unwrap(), &g(k, t))
                        .unwrap();
                    assert_eq!(lhs, rhs, "n={n} chain ({i},{k},{t})");
                }
            }
        }
    }
}

/// Recompose the column-by-column product formula with the naive i128
/// matrix oracle and check it reproduces the original matrix.
fn roundtrip_via_oracle(n: usize, m: &IntMatrix) {
    let exps = normal_form_exponents(m);
    let mut acc = matrix_oracle::identity(n);
    for ((i, j), e) in &exps {
        let e128 = i128::try_from(e).expect("test entries fit i128");
        acc = matrix_oracle::mul(&acc, &matrix_oracle::elementary(n, *i, *j, e128));
    }
    for i in 0..n {
        for j in 0..n {
            let got = BigInt::from(acc[i][j]);
            assert_eq!(got, m[(i, j)], "entry ({i},{j})");
        }
    }
}

#[test]
fn normal_form_roundtrip_500_random_matrices() {
    let mut rng = XorShift::new(0xBEEF);
    for case in 0..500 {
        let n = if case % 2 == 0 { 3 } else { 4 };
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = BigInt::from(rng.int_in(-9, 9));
            }
        }
        roundtrip_via_oracle(n, &m);
    }
}

#[test]
fn normal_form_spec_example() {
    // multiply out (g13^3 g23^4)(g12^2) with the oracle and compare
    let m = IntMatrix::from_i64(&[vec![1, 2, 3], vec![0, 1, 4], vec![0, 0, 1]]);
    roundtrip_via_oracle(3, &m);
    let exps = normal_form_exponents(&m);
    let lookup = |i: usize, j: usize| -> i64 {
        exps.iter()
            .find(|((a, b), _)| (*a, *b) == (i, j))
            .map(|(_, e)| i64::try_from(e).unwrap())
            .unwrap()
    };
    assert_eq!(lookup(1, 3), 3);
    assert_eq!(lookup(2, 3), 4);
    assert_eq!(lookup(1, 2), 2);
}

#[test]
fn order_matches_brute_force_on_finite_groups() {
    for table in [FiniteTable::cyclic(4), FiniteTable::dihedral(3), FiniteTable::dihedral(4)] {
        let d = GroupDescriptor::finite(table.clone());
        for i in 1..=table.size() {
            let e = GroupElement::FinitePoint(i);
            // brute force: repeated multiplication until the identity
            let mut acc = e.clone();
            let mut k = 1u64;
            while acc != d.identity() {
                acc = d.multiply(&acc, &e).unwrap();
                k += 1;
            }
            assert_eq!(d.order(&e).unwrap(), ElementOrder::Finite(k));
        }
    }
}

#[test]
fn product_order_is_lcm() {
    let d = GroupDescriptor::product(vec![
        GroupDescriptor::finite(FiniteTable::cyclic(4)),
        GroupDescriptor::finite(FiniteTable::cyclic(6)),
    ])
    .unwrap();
    let e = GroupElement::Product(vec![
        GroupElement::FinitePoint(2), // order 4
        GroupElement::FinitePoint(2), // order 6
    ]);
    assert_eq!(d.order(&e).unwrap(), ElementOrder::Finite(12));
}

#[test]
fn dihedral_composition_matches_function_oracle() {
    let d = GroupDescriptor::dihedral_infinite();
    let to_oracle = |e: &GroupElement| -> dinf_oracle::Iso {
        let GroupElement::Dihedral { flip, offset } = e else { panic!() };
        // evaluate t -> (-1)^flip t + offset at 0 and 1
        let f = |t: i64| if *flip { -t + offset } else { t + offset };
        dinf_oracle::Iso { at0: f(0), at1: f(1) }
    };
    let b = ball(&d, &d.standard_generators(), 4).unwrap();
    for a in b.elements() {
        for c in b.elements() {
            let lib = d.multiply(a, c).unwrap();
            let oracle = dinf_oracle::compose(to_oracle(a), to_oracle(c));
            assert_eq!(to_oracle(&lib), oracle, "{a} * {c}");
        }
    }
}
