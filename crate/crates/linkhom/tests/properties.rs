use linkhom::model::Family;
use linkhom::{load_scheme, Algebra, GeneratorId, InvariantVector, Term, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn n_strands() -> impl Strategy<Value = usize> {
    prop_oneof![Just(4usize), Just(5usize)]
}

fn state(n: usize, bound: i64) -> impl Strategy<Value = Vec<BigInt>> {
    let len = load_scheme(n).unwrap().len();
    prop::collection::vec((-bound..=bound).prop_map(BigInt::from), len)
}

fn generator(n: usize) -> impl Strategy<Value = Term> {
    let all: Vec<Term> = [Family::Raw, Family::Simplified, Family::Conj]
        .into_iter()
        .flat_map(|f| GeneratorId::all(f, n))
        .map(Term::Gen)
        .collect();
    prop::sample::select(all)
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((generator(n), -3i64..=3), 0..=max_len).prop_map(|fs| {
        let mut w = Word::new();
        for (t, e) in fs {
            w.push(t, BigInt::from(e));
        }
        w
    })
}

fn case() -> impl Strategy<Value = (usize, Vec<BigInt>, Term)> {
    n_strands().prop_flat_map(|n| (Just(n), state(n, 9), generator(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inverse_undoes_every_generator((n, v, g) in case()) {
        let r = Algebra::get(n).unwrap().resolve(&g).unwrap();
        prop_assert_eq!(r.inverse.apply_values(&r.map.apply_values(&v)), v.clone());
        prop_assert_eq!(r.map.apply_values(&r.inverse.apply_values(&v)), v);
    }

    #[test]
    fn linking_numbers_and_zero_are_fixed((n, v, g) in case()) {
        let alg = Algebra::get(n).unwrap();
        let s = alg.scheme();
        let m = &alg.resolve(&g).unwrap().map;
        let w = m.apply_values(&v);
        let lin = s.degree_range(1);
        prop_assert_eq!(&w[lin.clone()], &v[lin]);
        let zero = vec![BigInt::from(0); s.len()];
        prop_assert_eq!(m.apply_values(&zero), zero);
    }

    #[test]
    fn power_matches_iteration((n, v, g) in case(), k in -12i64..=12) {
        let r = Algebra::get(n).unwrap().resolve(&g).unwrap();
        let (step, times) = if k < 0 { (&r.inverse, -k) } else { (&r.map, k) };
        let mut cur = v.clone();
        for _ in 0..times {
            cur = step.apply_values(&cur);
        }
        prop_assert_eq!(r.map.apply_power(&r.inverse, &v, &BigInt::from(k)), cur.clone());
        prop_assert_eq!(r.map.power(k).apply_values(&v), cur);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composites_stay_triangular_and_filtered(
        (n, w) in n_strands().prop_flat_map(|n| (Just(n), word(n, 4)))
    ) {
        let alg = Algebra::get(n).unwrap();
        let m = alg.word_map(&w).unwrap();
        prop_assert!(m.is_triangular());
        prop_assert!(m.is_filtered());
        let inv = m.invert();
        prop_assert!(inv.is_triangular() && inv.is_filtered());
        prop_assert!(m.compose(&inv).unwrap().is_identity());
        let c = linkhom::ActionMap::commutator(&m, &alg.word_map(&w.inverse()).unwrap().power(2)).unwrap();
        prop_assert!(c.is_triangular() && c.is_filtered());
    }

    #[test]
    fn numeric_words_match_symbolic(
        (n, w, v) in n_strands().prop_flat_map(|n| (Just(n), word(n, 4), state(n, 6)))
    ) {
        let alg = Algebra::get(n).unwrap();
        let m = alg.word_map(&w).unwrap();
        prop_assert_eq!(alg.apply_word_values(&w, &v).unwrap(), m.apply_values(&v));
    }

    #[test]
    fn grouped_powers_interpolate(
        (n, w, v) in n_strands().prop_flat_map(|n| (Just(n), word(n, 3), state(n, 5))),
        k in -40i64..=40,
    ) {
        let alg = Algebra::get(n).unwrap();
        let grouped = Word::single(Term::Group(w.clone()), k);
        let mut expanded = Word::new();
        for _ in 0..k.abs() {
            expanded = expanded.then_after(if k < 0 { w.inverse() } else { w.clone() });
        }
        prop_assert_eq!(
            alg.apply_word_values(&grouped, &v).unwrap(),
            alg.apply_word_values(&expanded, &v).unwrap()
        );
    }

    #[test]
    fn word_text_round_trip((n, w) in n_strands().prop_flat_map(|n| (Just(n), word(n, 6)))) {
        let text = w.to_string();
        prop_assert_eq!(Word::parse(&text, n).unwrap(), w);
    }

    #[test]
    fn vector_file_round_trip((n, v) in n_strands().prop_flat_map(|n| (Just(n), state(n, 50)))) {
        let vec = InvariantVector::from_values(load_scheme(n).unwrap(), v).unwrap();
        prop_assert_eq!(InvariantVector::parse(&vec.to_file_string()).unwrap(), vec);
    }
}
