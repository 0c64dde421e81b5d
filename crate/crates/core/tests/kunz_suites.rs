//! Exhaustive checks over every valid integer point with `m ≤ 7` and all
//! coordinates at most 8.

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rayon::prelude::*;
use sgfl_core::kunz::{cominimal, integer_points, point_of_semigroup, semigroup_of_point, KunzContext, KunzPoint, PInf};
use sgfl_core::minrepl::min_repl;
use sgfl_core::verdict::check_formula_with;
use sgfl_core::{CandidateMode, Element, Formula, DEFAULT_BUDGET};

const MAX_COORD: i64 = 8;

fn scan(m: i64) -> Vec<KunzPoint> {
    let ctx = KunzContext::numerical(m).unwrap();
    integer_points(&ctx, MAX_COORD)
        .into_par_iter()
        .map(|x| KunzPoint::new(&ctx, x).unwrap())
        .collect()
}

/// One representative point per face (distinct equality sets).
fn faces(points: &[KunzPoint]) -> Vec<&KunzPoint> {
    let mut seen = BTreeSet::new();
    points.iter().filter(|p| seen.insert(p.equality_set())).collect()
}

fn applicable(p: &KunzPoint) -> bool {
    p.is_reduced() && p.is_m_atom()
}

#[test]
fn iterated_inequality_identities() {
    let mut rng = StdRng::seed_from_u64(17);
    for m in 3..=7 {
        let ctx = KunzContext::numerical(m).unwrap();
        let support: Vec<usize> = (1..m as usize).collect();
        let points = scan(m);
        for p in &points {
            for _ in 0..8 {
                let c: Vec<u32> = support.iter().map(|_| rng.random_range(0..4)).collect();
                let c2: Vec<u32> = support.iter().map(|_| rng.random_range(0..4)).collect();
                let (beta, d) = ctx.d_vec(&c, &support);
                let (beta2, d2) = ctx.d_vec(&c2, &support);
                let weighted: i64 = c.iter().zip(&support).map(|(&k, &a)| k as i64 * p.coords()[a]).sum();
                assert!(d + weighted >= p.coords()[beta], "m={m} x={:?} c={c:?}", p.coords());
                let sum: Vec<u32> = c.iter().zip(&c2).map(|(a, b)| a + b).collect();
                assert_eq!(d + d2 + ctx.d(beta, beta2), ctx.d_vec(&sum, &support).1);
            }
        }
    }
}

#[test]
fn rho_round_trip() {
    for m in 3..=7 {
        let ctx = KunzContext::numerical(m).unwrap();
        scan(m).par_iter().for_each(|p| {
            let back = point_of_semigroup(&ctx, &semigroup_of_point(p)).unwrap();
            assert_eq!(back.coords(), p.coords());
        });
    }
}

#[test]
fn oplus_is_commutative_associative_and_divisibility_is_the_poset() {
    for m in 3..=7usize {
        let points = scan(m as i64);
        let elems: Vec<PInf> = (0..m).map(PInf::Elem).chain([PInf::Infinity]).collect();
        for p in faces(&points) {
            for &a in &elems {
                for &b in &elems {
                    let ab = p.oplus(a, b);
                    assert_eq!(ab, p.oplus(b, a));
                    for &c in &elems {
                        assert_eq!(p.oplus(ab, c), p.oplus(a, p.oplus(b, c)));
                    }
                }
            }
            for a in 0..m {
                for b in 0..m {
                    let divides = elems.iter().any(|&c| p.oplus(PInf::Elem(a), c) == PInf::Elem(b));
                    assert_eq!(divides, p.precedes(a, b), "m={m} x={:?} {a} {b}", p.coords());
                }
            }
        }
    }
}

/// Minimal `∞`-factorizations, moved to the atoms of `ρ(x)` through
/// `α ↦ x_α m + α`, are exactly `MinRepl_m(ρ(x))`; `⊑` is divisibility of
/// the evaluations.
#[test]
fn translation_to_min_repl_and_divisibility() {
    for m in 3..=7 {
        let points = scan(m);
        points.par_iter().filter(|p| applicable(p)).for_each(|p| {
            let s = semigroup_of_point(p);
            let report = min_repl(&s, &Element::scalar(m), DEFAULT_BUDGET).unwrap();
            let images: Vec<Element> = p.atoms().iter().map(|&a| Element::scalar(p.apery_element(a))).collect();
            let mut sorted_images = images.clone();
            sorted_images.sort();
            assert_eq!(sorted_images, report.atom_index, "x={:?}", p.coords());
            let moved: BTreeSet<Vec<u32>> = p
                .min_inf_factorizations()
                .iter()
                .map(|f| {
                    let mut v = vec![0u32; images.len()];
                    for (k, img) in f.c.iter().zip(&images) {
                        v[report.atom_index.iter().position(|a| a == img).unwrap()] = *k;
                    }
                    v
                })
                .collect();
            let direct: BTreeSet<Vec<u32>> = report.minimal_vectors.iter().map(|c| c.exponents().to_vec()).collect();
            assert_eq!(moved, direct, "x={:?}", p.coords());
            let value = |c: &[u32]| Element::scalar(p.semigroup_value(c));
            for f in p.min_inf_factorizations() {
                for g in p.min_inf_factorizations() {
                    assert_eq!(p.sq_leq(&f.c, &g.c), s.divides(&value(&f.c), &value(&g.c)), "x={:?}", p.coords());
                }
            }
        });
    }
}

/// The inequality verdict is a faithful rendering of the reduced candidate
/// sets: it agrees with them at every applicable point.
#[test]
fn main_verdict_matches_reduced_candidate_sets() {
    for m in 3..=7 {
        let points = scan(m);
        let mismatches: Vec<String> = points
            .par_iter()
            .filter(|p| applicable(p))
            .flat_map_iter(|p| {
                let s = semigroup_of_point(p);
                [Formula::LongestPlusOne, Formula::ShortestPlusOne].into_iter().filter_map(move |f| {
                    let kunz = p.main_verdict(f).unwrap().holds;
                    let reduced = check_formula_with(&s, &Element::scalar(m), f, CandidateMode::Reduced, DEFAULT_BUDGET)
                        .unwrap()
                        .holds;
                    (kunz != reduced).then(|| format!("{:?} {f:?}", p.coords()))
                })
            })
            .collect();
        assert!(mismatches.is_empty(), "m={m}: {mismatches:#?}");
    }
}

fn template_key(p: &KunzPoint, f: Formula) -> Vec<(Vec<u32>, Vec<i64>, i64)> {
    p.main_verdict(f).unwrap().templates.into_iter().map(|t| (t.c, t.coefficients, t.rhs)).collect()
}

#[test]
fn cominimal_points_share_templates() {
    for m in 3..=7 {
        let points = scan(m);
        let mut groups: BTreeMap<(BTreeSet<(usize, usize)>, Vec<Vec<u32>>), Vec<&KunzPoint>> = BTreeMap::new();
        for p in points.iter().filter(|p| applicable(p)) {
            let pmin = p.pseudomin().into_iter().map(|f| f.c).collect();
            groups.entry((p.equality_set(), pmin)).or_default().push(p);
        }
        for group in groups.values() {
            let first = group[0];
            for f in [Formula::LongestPlusOne, Formula::ShortestPlusOne] {
                let key = template_key(first, f);
                for p in &group[1..] {
                    assert!(cominimal(first, p).unwrap());
                    assert_eq!(template_key(p, f), key, "{:?} vs {:?}", first.coords(), p.coords());
                }
            }
        }
    }
}

/// The two-part inequality system characterizing cominimality, written
/// with `⊑` evaluated at the second point.
fn cominimal_by_inequalities(x: &KunzPoint, y: &KunzPoint) -> bool {
    let all: Vec<Vec<u32>> = x.min_inf_factorizations().iter().map(|f| f.c.clone()).collect();
    let pmin_x: BTreeSet<Vec<u32>> = x.pseudomin().into_iter().map(|f| f.c).collect();
    let kept = pmin_x
        .iter()
        .all(|c| all.iter().filter(|c2| *c2 != c).all(|c2| !y.sq_leq(c2, c) || y.sq_leq(c, c2)));
    let dropped = all
        .iter()
        .filter(|c| !pmin_x.contains(*c))
        .all(|c| all.iter().any(|c2| y.sq_leq(c2, c) && !y.sq_leq(c, c2)));
    kept && dropped
}

#[test]
fn cominimality_inequality_system() {
    let mut compared = 0usize;
    for m in 3..=6 {
        let points = scan(m);
        let mut by_face: BTreeMap<BTreeSet<(usize, usize)>, Vec<&KunzPoint>> = BTreeMap::new();
        for p in points.iter().filter(|p| p.is_reduced()) {
            by_face.entry(p.equality_set()).or_default().push(p);
        }
        for group in by_face.values() {
            for x in group.iter().take(12) {
                for y in group.iter().take(12) {
                    compared += 1;
                    assert_eq!(cominimal_by_inequalities(x, y), cominimal(x, y).unwrap(), "{:?} {:?}", x.coords(), y.coords());
                }
            }
        }
    }
    assert!(compared > 1000);
}

/// When `m` is the largest atom of `ρ(x)`, every poset atom has `x_α = 0`,
/// which pins down the point: one such point per face.
#[test]
fn largest_atom_points_are_unique_in_their_face() {
    for m in 3..=7 {
        let points = scan(m);
        let mut per_face: BTreeMap<BTreeSet<(usize, usize)>, usize> = BTreeMap::new();
        for p in &points {
            let s = semigroup_of_point(p);
            if s.generators().last() != Some(&Element::scalar(m)) {
                continue;
            }
            assert!(p.atoms().iter().all(|&a| p.coords()[a] == 0), "x={:?}", p.coords());
            *per_face.entry(p.equality_set()).or_default() += 1;
        }
        assert!(!per_face.is_empty());
        assert!(per_face.values().all(|&n| n == 1), "m={m}");
    }
}
