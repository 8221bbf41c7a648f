use std::collections::BTreeSet;
use std::sync::Arc;

use cuntz_fock::correspondence::{enumerate_grade, forward, forward_operational, inverse};
use cuntz_fock::quant::{
    apply_boson, boson_state, boson_state_iterated, fermion_state, fermion_state_iterated,
};
use cuntz_fock::rep::{apply_s, apply_t};
use cuntz_fock::word::{index_to_word, word_to_index};
use cuntz_fock::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn raw_terms() -> impl Strategy<Value = Vec<(u64, i64, i64)>> {
    prop::collection::vec(
        (1u64..=100, -1_000_000i64..=1_000_000, 1i64..=1_000_000),
        0..=3,
    )
}

fn scalar(terms: &[(u64, i64, i64)]) -> RadicalScalar {
    let mut acc = RadicalScalar::zero();
    for &(d, n, q) in terms {
        acc += &RadicalScalar::term(d, BigRational::new(BigInt::from(n), BigInt::from(q)));
    }
    acc
}

fn letters(v: &[u8]) -> Vec<Letter> {
    v.iter()
        .map(|&b| if b == 1 { Letter::One } else { Letter::Two })
        .collect()
}

fn tail_word() -> impl Strategy<Value = TailWord> {
    (
        prop::collection::vec(1u8..=2, 1..=3),
        prop::collection::vec(1u8..=2, 0..=12),
        0usize..3,
    )
        .prop_map(|(period, prefix, phase)| {
            let k = period.len();
            TailWord::new(letters(&prefix), Arc::from(letters(&period)), phase % k)
        })
}

fn monomial(
    max_mode: u64,
    max_factors: usize,
    max_power: u64,
) -> impl Strategy<Value = BosonMonomial> {
    prop::collection::btree_map(1..=max_mode, 1..=max_power, 0..=max_factors)
        .prop_map(|m| BosonMonomial::new(m.into_iter().collect()).unwrap())
}

fn subset(max: u64) -> impl Strategy<Value = FermionSubset> {
    prop::collection::btree_set(1..=max, 0..=8)
        .prop_map(|s| FermionSubset::new(s.into_iter().collect()).unwrap())
}

fn factorial(k: u64) -> i64 {
    (1..=k as i64).product()
}

fn e(n: u64) -> State {
    State::unit(
        &RepSpace::fock(),
        index_to_word(word::BasisIndex(n)).unwrap(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn scalar_ring_axioms(a in raw_terms(), b in raw_terms(), c in raw_terms()) {
        let (a, b, c) = (scalar(&a), scalar(&b), scalar(&c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_float_agrees_with_raw_terms(t in raw_terms()) {
        let x = scalar(&t);
        let raw: Vec<f64> = t.iter().map(|&(d, n, q)| n as f64 / q as f64 * (d as f64).sqrt()).collect();
        let scale = raw.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        let expected: f64 = raw.iter().sum();
        prop_assert!((x.to_f64() - expected).abs() <= 1e-12 * scale);
    }

    #[test]
    fn behead_inverts_prepend(w in tail_word()) {
        for l in [Letter::One, Letter::Two] {
            prop_assert_eq!(w.prepend(l).behead(l), Some(w.clone()));
            if let Some(rest) = w.behead(l) {
                prop_assert_eq!(rest.prepend(l), w.clone());
            }
        }
        let alive = [Letter::One, Letter::Two].iter().filter(|&&l| w.behead(l).is_some()).count();
        prop_assert_eq!(alive, 1);
    }

    #[test]
    fn distinct_words_are_orthonormal(u in tail_word(), prefix in prop::collection::vec(1u8..=2, 0..=12)) {
        // a second word in the same space as u
        let v = TailWord::new(letters(&prefix), u.period().clone(), u.phase());
        let space = RepSpace::new(FiniteWord::new(u.period().to_vec())).unwrap();
        let (eu, ev) = (State::unit(&space, u.clone()).unwrap(), State::unit(&space, v.clone()).unwrap());
        let expected = if u == v { RadicalScalar::one() } else { RadicalScalar::zero() };
        prop_assert_eq!(eu.inner(&ev).unwrap(), expected);
        prop_assert_eq!(eu.inner(&eu).unwrap(), RadicalScalar::one());
    }

    #[test]
    fn codec_round_trip(n in 1u64..(1 << 40)) {
        let w = index_to_word(word::BasisIndex(n)).unwrap();
        prop_assert_eq!(word_to_index(&w).unwrap().0, n);
    }

    #[test]
    fn ccr_on_superpositions(
        m1 in monomial(5, 3, 2),
        m2 in monomial(5, 3, 2),
        n in 1u64..=5,
        m in 1u64..=5,
    ) {
        let lim = Limits::default();
        let psi = boson_state(&m1, &lim).unwrap()
            .add(&boson_state(&m2, &lim).unwrap().scale(&RadicalScalar::sqrt_of_nat(3)))
            .unwrap();
        let lhs = apply_boson(false, n, &apply_boson(true, m, &psi))
            .sub(&apply_boson(true, m, &apply_boson(false, n, &psi)))
            .unwrap();
        let expected = if n == m { psi.clone() } else { State::zero(psi.space()) };
        prop_assert_eq!(lhs, expected);
    }

    #[test]
    fn intertwining_on_words(w in tail_word(), n in 1u64..=4, m in 1u64..=4, create in any::<bool>()) {
        // s_n b_m = b_{m+1} s_n, and the adjoint form
        prop_assume!(w.period().contains(&Letter::One));
        let space = RepSpace::new(FiniteWord::new(w.period().to_vec())).unwrap();
        let psi = State::unit(&space, w).unwrap();
        prop_assert_eq!(
            apply_s(n, &apply_boson(create, m, &psi)),
            apply_boson(create, m + 1, &apply_s(n, &psi))
        );
    }

    #[test]
    fn correspondence_round_trip(m in monomial(16, 4, 3)) {
        let pair = forward(&m);
        prop_assert_eq!(pair.fermion.len() as u64, m.particle_number());
        let back = inverse(&pair.fermion);
        prop_assert_eq!(&back.boson, &m);
        prop_assert!(pair.coeff.mul(&back.coeff).is_one());
        let law: i64 = m.factors().iter().map(|&(_, k)| factorial(k)).product();
        prop_assert_eq!(pair.coeff.square(), RadicalScalar::from_integer(law));
    }

    #[test]
    fn inverse_round_trip(s in subset(20)) {
        let inv = inverse(&s);
        prop_assert_eq!(forward(&inv.boson).fermion, s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operational_forward_beyond_desk_family(m in monomial(10, 3, 3)) {
        let op = forward_operational(&m, &Limits::default()).unwrap();
        prop_assert_eq!(op, forward(&m));
    }
}

#[test]
fn closed_forms_match_iteration() {
    let lim = Limits::default();
    for m in BosonMonomial::all_up_to(6, 6) {
        assert_eq!(
            boson_state(&m, &lim).unwrap(),
            boson_state_iterated(&m, &lim).unwrap(),
            "{m}"
        );
    }
    for s in FermionSubset::all_subsets_of(10) {
        assert_eq!(
            fermion_state(&s, &lim).unwrap(),
            fermion_state_iterated(&s, &lim).unwrap(),
            "{s}"
        );
    }
}

#[test]
fn every_small_subset_is_a_forward_image() {
    let lim = Limits::default();
    for n in 0..=4u64 {
        let images: BTreeSet<_> = enumerate_grade(n, 8, &lim)
            .unwrap()
            .into_iter()
            .map(|p| p.fermion)
            .collect();
        for s in FermionSubset::all_subsets_of(8)
            .into_iter()
            .filter(|s| s.len() as u64 == n)
        {
            assert!(images.contains(&s), "{s} missing from grade {n}");
        }
    }
}

#[test]
fn s_generators_match_index_formula() {
    for m in 1..=16u64 {
        for n in 1..=4096u64 {
            let target = (1u64 << (m - 1)) * (2 * n - 1);
            assert_eq!(apply_s(m, &e(n)), e(target), "s{m} e{n}");
        }
    }
    // s_m as a t-composite: t₂^{m−1} t₁
    let omega = e(1);
    for m in 1..=16u64 {
        let mut v = apply_t(Letter::One, &omega);
        for _ in 1..m {
            v = apply_t(Letter::Two, &v);
        }
        assert_eq!(apply_s(m, &omega), v);
    }
}
