//! Randomized invariants of membership, factorizations, MinRepl and verdicts.

use proptest::prelude::*;
use sgfl_core::factorization::{factorizations, length_summary, longest, shortest};
use sgfl_core::minrepl::{min_repl, repl_contains};
use sgfl_core::verdict::{check_formula, length_of, oracle_scan};
use sgfl_core::{Element, Factorization, Formula, Semigroup, DEFAULT_BUDGET};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn numerical() -> impl Strategy<Value = Semigroup> {
    prop::collection::btree_set(2i64..30, 2..5)
        .prop_filter("gcd 1", |g| g.iter().fold(0, |a, &b| gcd(a, b)) == 1)
        .prop_map(|g| Semigroup::from_generating_set(g.into_iter().map(Element::scalar).collect(), 1).unwrap())
}

fn affine() -> impl Strategy<Value = Semigroup> {
    prop::collection::btree_set((0i64..7, 0i64..7).prop_filter("nonzero", |&(a, b)| a + b > 0), 2..5).prop_map(|g| {
        let gens = g.into_iter().map(|(a, b)| Element::new(vec![a, b])).collect();
        Semigroup::from_generating_set(gens, 2).unwrap()
    })
}

fn any_semigroup() -> impl Strategy<Value = Semigroup> {
    prop_oneof![numerical(), affine()]
}

/// A semigroup with an element given by random exponents.
fn with_element(max: u32) -> impl Strategy<Value = (Semigroup, Vec<u32>)> {
    any_semigroup().prop_flat_map(move |s| {
        let k = s.embedding_dimension();
        (Just(s), prop::collection::vec(0..=max, k))
    })
}

/// All `c` with `φ(c) = v`, by bounding each coordinate with the grading.
fn box_factorizations(s: &Semigroup, v: &Element) -> Vec<Vec<u32>> {
    let gens = s.generators();
    let degrees = s.degrees();
    let total = s.degree(v);
    let mut out = Vec::new();
    let mut c = vec![0u32; gens.len()];
    fn go(i: usize, left: i64, c: &mut Vec<u32>, gens: &[Element], degrees: &[i64], v: &Element, out: &mut Vec<Vec<u32>>) {
        if i == gens.len() {
            let mut sum = Element::zero(v.dim());
            for (g, &k) in gens.iter().zip(c.iter()) {
                sum.add_scaled(g, k as i64);
            }
            if &sum == v {
                out.push(c.clone());
            }
            return;
        }
        for k in 0..=(left / degrees[i]) {
            c[i] = k as u32;
            go(i + 1, left - k * degrees[i], c, gens, degrees, v, out);
        }
        c[i] = 0;
    }
    go(0, total, &mut c, gens, degrees, v, &mut out);
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_under_addition((s, a) in with_element(4), b in prop::collection::vec(0u32..4, 5)) {
        let x = s.evaluate(&a);
        let b: Vec<u32> = b.into_iter().take(s.embedding_dimension()).chain(std::iter::repeat(0)).take(s.embedding_dimension()).collect();
        let y = s.evaluate(&b);
        prop_assert!(s.contains(&x) && s.contains(&y));
        prop_assert!(s.contains(&(&x + &y)));
        prop_assert_eq!(s.contains(&x), s.contains_by_search(&x));
    }

    #[test]
    fn membership_matches_search(s in numerical(), n in -5i64..120) {
        prop_assert_eq!(s.contains_scalar(n), s.contains_by_search(&Element::scalar(n)));
    }

    #[test]
    fn apery_set_definition(s in numerical(), c in prop::collection::vec(0u32..3, 4)) {
        let k = s.embedding_dimension();
        let mut c: Vec<u32> = c.into_iter().chain(std::iter::repeat(0)).take(k).collect();
        if c.iter().all(|&x| x == 0) {
            c[0] = 1;
        }
        let m = s.evaluate(&c).as_scalar().unwrap();
        let ap = s.apery_set(m).unwrap();
        prop_assert_eq!(ap.len() as i64, m);
        for (r, &w) in ap.iter().enumerate() {
            prop_assert_eq!(w.rem_euclid(m), r as i64);
            prop_assert!(s.contains_scalar(w));
            prop_assert!(!s.contains_scalar(w - m));
        }
    }

    #[test]
    fn divides_is_a_partial_order((s, a) in with_element(3), b in prop::collection::vec(0u32..3, 5), c in prop::collection::vec(0u32..3, 5)) {
        let k = s.embedding_dimension();
        let pad = |v: Vec<u32>| -> Vec<u32> { v.into_iter().chain(std::iter::repeat(0)).take(k).collect() };
        let (x, y, z) = (s.evaluate(&a), s.evaluate(&pad(b)), s.evaluate(&pad(c)));
        prop_assert!(s.divides(&x, &x));
        if s.divides(&x, &y) && s.divides(&y, &x) {
            prop_assert_eq!(&x, &y);
        }
        if s.divides(&x, &y) && s.divides(&y, &z) {
            prop_assert!(s.divides(&x, &z));
        }
    }

    #[test]
    fn generators_are_irreducible(s in any_semigroup()) {
        let gens = s.generators();
        for (i, g) in gens.iter().enumerate() {
            // Factorizations of g over the full list must be exactly e_i.
            let fs = box_factorizations(&s, g);
            let mut unit = vec![0u32; gens.len()];
            unit[i] = 1;
            prop_assert_eq!(fs, vec![unit]);
        }
    }

    #[test]
    fn factorizations_match_box_enumeration((s, a) in with_element(5)) {
        let v = s.evaluate(&a);
        prop_assume!(s.degree(&v) <= 60);
        let fast: Vec<Vec<u32>> = factorizations(&s, &v, DEFAULT_BUDGET).unwrap().iter().map(|c| c.exponents().to_vec()).collect();
        prop_assert_eq!(&fast, &box_factorizations(&s, &v));
        for c in &fast {
            prop_assert_eq!(s.evaluate(c), v.clone());
        }
        let lengths: Vec<u32> = fast.iter().map(|c| c.iter().sum()).collect();
        prop_assert_eq!(longest(&s, &v, DEFAULT_BUDGET).unwrap().0, *lengths.iter().max().unwrap());
        prop_assert_eq!(shortest(&s, &v, DEFAULT_BUDGET).unwrap().0, *lengths.iter().min().unwrap());
    }

    #[test]
    fn m_in_extremal_factorization_iff_formula((s, a) in with_element(5), pick in 0usize..8) {
        let gens = s.generators().to_vec();
        let m = &gens[pick % gens.len()];
        let mut a = a;
        a[pick % gens.len()] += 1;
        let v = s.evaluate(&a);
        let summary = length_summary(&s, &v, Some(m), DEFAULT_BUDGET).unwrap();
        let below = &v - m;
        let l_below = longest(&s, &below, DEFAULT_BUDGET).unwrap().0;
        let s_below = shortest(&s, &below, DEFAULT_BUDGET).unwrap().0;
        prop_assert_eq!(summary.has_m_in_longest.unwrap(), summary.longest == l_below + 1);
        prop_assert_eq!(summary.has_m_in_shortest.unwrap(), summary.shortest == s_below + 1);
    }

    #[test]
    fn lengths_are_super_and_subadditive((s, a) in with_element(4), b in prop::collection::vec(0u32..4, 5)) {
        let k = s.embedding_dimension();
        let b: Vec<u32> = b.into_iter().chain(std::iter::repeat(0)).take(k).collect();
        let (x, y) = (s.evaluate(&a), s.evaluate(&b));
        let l = |v: &Element| longest(&s, v, DEFAULT_BUDGET).unwrap().0;
        let sh = |v: &Element| shortest(&s, v, DEFAULT_BUDGET).unwrap().0;
        let sum = &x + &y;
        prop_assert!(l(&sum) >= l(&x) + l(&y));
        prop_assert!(sh(&sum) <= sh(&x) + sh(&y));
    }

    #[test]
    fn min_repl_is_minimal_and_upward_closed(s in any_semigroup(), pick in 0usize..8, bump in prop::collection::vec(0u32..3, 4)) {
        let m = s.generators()[pick % s.embedding_dimension()].clone();
        let report = min_repl(&s, &m, DEFAULT_BUDGET).unwrap();
        for c in &report.minimal_vectors {
            prop_assert!(repl_contains(&s, &m, c).unwrap());
            let up: Vec<u32> = c.exponents().iter().zip(bump.iter().chain(std::iter::repeat(&0))).map(|(a, b)| a + b).collect();
            prop_assert!(repl_contains(&s, &m, &Factorization::new(up)).unwrap());
            for i in 0..c.len() {
                if c.exponents()[i] > 0 {
                    let mut down = c.exponents().to_vec();
                    down[i] -= 1;
                    prop_assert!(!repl_contains(&s, &m, &Factorization::new(down)).unwrap());
                }
            }
        }
    }
}

/// For every failing `s` found by the oracle and every extremal
/// factorization `c` of `s` avoiding `m`, each minimal replaceable vector
/// below `c` fails as well.
#[test]
fn failures_propagate_to_minimal_vectors_below() {
    let corpus = sgfl_core::corpus::random_numerical(60, 31, Default::default());
    let mut exercised = 0;
    for s in &corpus {
        for (formula, m) in [
            (Formula::LongestPlusOne, s.generators()[0].clone()),
            (Formula::ShortestPlusOne, s.generators().last().unwrap().clone()),
        ] {
            let oracle = oracle_scan(s, &m, formula, None, false, true).unwrap();
            let report = min_repl(s, &m, DEFAULT_BUDGET).unwrap();
            let m_idx = s.index_of(&m).unwrap();
            for bad in oracle.counterexamples.iter().take(5) {
                let target = bad.value;
                for c in factorizations(s, &bad.s, DEFAULT_BUDGET).unwrap() {
                    if c.exponents()[m_idx] > 0 || c.length() != target {
                        continue;
                    }
                    let mut reduced = c.exponents().to_vec();
                    reduced.remove(m_idx);
                    let c = Factorization::new(reduced);
                    for (low, value) in report.minimal_vectors.iter().zip(&report.evaluations) {
                        if low.le_coordinatewise(&c) {
                            exercised += 1;
                            let here = length_of(s, value, formula, DEFAULT_BUDGET).unwrap();
                            let before = length_of(s, &(value - &m), formula, DEFAULT_BUDGET).unwrap();
                            assert_ne!(here, before + 1, "{s} m={m} {formula:?} s={} below {value}", bad.s);
                        }
                    }
                }
            }
        }
    }
    assert!(exercised > 50, "only {exercised} cases exercised");
}

/// Reported counterexamples are genuine.
#[test]
fn counterexamples_are_valid() {
    let corpus = sgfl_core::corpus::random_numerical(80, 5, Default::default());
    for s in &corpus {
        for m in s.generators() {
            for formula in [Formula::LongestPlusOne, Formula::ShortestPlusOne] {
                let v = check_formula(s, m, formula, DEFAULT_BUDGET).unwrap();
                for c in &v.counterexamples {
                    let below = &c.s - m;
                    assert!(s.contains(&c.s) && s.contains(&below));
                    assert_eq!(c.value, length_of(s, &c.s, formula, DEFAULT_BUDGET).unwrap());
                    assert_eq!(c.predicted, length_of(s, &below, formula, DEFAULT_BUDGET).unwrap() + 1);
                    assert_ne!(c.value, c.predicted);
                }
            }
        }
    }
}
