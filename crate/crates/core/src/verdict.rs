//! Verdicts on `L(s + m) = L(s) + 1` and `ℓ(s + m) = ℓ(s) + 1` for all `s`.
//!
//! Three independent routes are provided: the finite criterion over the
//! candidate sets derived from `MinRepl_m(S)`, the single-element test for
//! numerical semigroups with three generators, and brute-force oracles that
//! compute lengths by dynamic programming without touching the
//! factorization or membership code.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{longest, shortest};
use crate::minrepl::{self, MinReplReport};
use crate::semigroup::{Element, Semigroup};

/// Default bound on `w(s)` for affine oracle scans.
pub const DEFAULT_AFFINE_BOUND: i64 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    #[serde(rename = "longest")]
    LongestPlusOne,
    #[serde(rename = "shortest")]
    ShortestPlusOne,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::LongestPlusOne => "longest",
            Formula::ShortestPlusOne => "shortest",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[serde(rename = "minrepl")]
    MinReplCriterion,
    #[serde(rename = "embdim3")]
    EmbDim3,
    #[serde(rename = "oracle")]
    OracleScan,
    #[serde(rename = "kunz")]
    KunzCriterion,
}

/// One tested element `s` (with `s - m ∈ S`): `value` is `L(s)` or `ℓ(s)`,
/// `predicted` is the same length of `s - m` plus one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checked {
    pub s: Element,
    pub value: u32,
    pub predicted: u32,
}

impl Checked {
    pub fn agrees(&self) -> bool {
        self.value == self.predicted
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub formula: Formula,
    pub m: Element,
    pub holds: bool,
    pub method: Method,
    /// Name of the candidate set that was tested, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate_set: Option<&'static str>,
    pub checked: Vec<Checked>,
    pub counterexamples: Vec<Checked>,
    /// Set when the verdict only covers a finite window without a theorem
    /// extending it to all of `S`.
    pub evidence_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    fn new(formula: Formula, m: Element, method: Method, checked: Vec<Checked>) -> Self {
        let counterexamples: Vec<Checked> = checked.iter().filter(|c| !c.agrees()).cloned().collect();
        Verdict {
            formula,
            m,
            holds: counterexamples.is_empty(),
            method,
            candidate_set: None,
            checked,
            counterexamples,
            evidence_only: false,
            bound: None,
            note: None,
        }
    }
}

/// `L(v)` or `ℓ(v)` via the factorization search.
pub fn length_of(s: &Semigroup, v: &Element, formula: Formula, budget: u64) -> Result<u32> {
    Ok(match formula {
        Formula::LongestPlusOne => longest(s, v, budget)?.0,
        Formula::ShortestPlusOne => shortest(s, v, budget)?.0,
    })
}

fn check_element(s: &Semigroup, m: &Element, x: &Element, formula: Formula, budget: u64) -> Result<Checked> {
    Ok(Checked {
        s: x.clone(),
        value: length_of(s, x, formula, budget)?,
        predicted: length_of(s, &(x - m), formula, budget)? + 1,
    })
}

/// Atoms for which the formula can hold at all: for numerical semigroups
/// only the smallest (longest) or largest (shortest) generator qualifies.
pub fn candidate_atoms(s: &Semigroup, formula: Formula) -> Vec<Element> {
    let gens = s.generators();
    if !s.is_numerical() {
        return gens.to_vec();
    }
    match formula {
        Formula::LongestPlusOne => vec![gens[0].clone()],
        Formula::ShortestPlusOne => vec![gens[gens.len() - 1].clone()],
    }
}

/// Which evaluations of `MinRepl_m(S)` the finite criterion tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateMode {
    /// Every distinct evaluation. A failing `s + m` has a longest (resp.
    /// shortest) factorization avoiding `m`; a minimal replaceable vector
    /// below it fails too, so this set always contains a counterexample
    /// when one exists.
    #[default]
    Full,
    /// The divisibility-minimal sets `M1`/`M2`, narrowed to `N1`/`N2` for
    /// the extreme generators of a numerical semigroup. Not sound in
    /// general: `<11, 12, 32>` at 11 has the counterexample 108, which is
    /// divisible by the passing evaluation 44.
    Reduced,
}

/// The candidate set tested by [`check_formula_with`] and its name.
pub fn candidate_set(
    s: &Semigroup,
    m: &Element,
    report: &MinReplReport,
    formula: Formula,
    mode: CandidateMode,
) -> (&'static str, Vec<Element>) {
    if mode == CandidateMode::Full {
        let distinct: std::collections::BTreeSet<Element> = report.evaluations.iter().cloned().collect();
        return ("MinRepl", distinct.into_iter().collect());
    }
    let k = s.embedding_dimension();
    let idx = s.index_of(m);
    let numerical = s.is_numerical() && k >= 2;
    match formula {
        Formula::LongestPlusOne if numerical && idx == Some(0) => ("N1", report.n1.clone()),
        Formula::LongestPlusOne => ("M1", report.m1.clone()),
        Formula::ShortestPlusOne if numerical && idx == Some(k - 1) => ("N2", report.n2.clone()),
        Formula::ShortestPlusOne => ("M2", report.m2.clone()),
    }
}

/// Decides the formula by testing every evaluation of `MinRepl_m(S)`.
pub fn check_formula(s: &Semigroup, m: &Element, formula: Formula, budget: u64) -> Result<Verdict> {
    check_formula_with(s, m, formula, CandidateMode::Full, budget)
}

pub fn check_formula_with(
    s: &Semigroup,
    m: &Element,
    formula: Formula,
    mode: CandidateMode,
    budget: u64,
) -> Result<Verdict> {
    let report = minrepl::analyze(s, m, budget)?;
    check_with_report(s, m, formula, mode, &report, budget)
}

pub fn check_with_report(
    s: &Semigroup,
    m: &Element,
    formula: Formula,
    mode: CandidateMode,
    report: &MinReplReport,
    budget: u64,
) -> Result<Verdict> {
    let (name, set) = candidate_set(s, m, report, formula, mode);
    let checked = set
        .iter()
        .map(|x| check_element(s, m, x, formula, budget))
        .collect::<Result<Vec<_>>>()?;
    let mut v = Verdict::new(formula, m.clone(), Method::MinReplCriterion, checked);
    v.candidate_set = Some(name);
    Ok(v)
}

/// Single-element test for `<n1, n2, n3>`: `α n2` for the longest formula
/// at `n1`, `β n2` for the shortest formula at `n3`.
pub fn embdim3_check(s: &Semigroup, formula: Formula, budget: u64) -> Result<Verdict> {
    let gens = s.scalar_generators().ok_or(Error::NotEmbDim3)?;
    if gens.len() != 3 || !s.is_numerical() {
        return Err(Error::NotEmbDim3);
    }
    let (n1, n2, n3) = (gens[0], gens[1], gens[2]);
    let m = match formula {
        Formula::LongestPlusOne => n1,
        Formula::ShortestPlusOne => n3,
    };
    let c = (1..).find(|&c| s.contains_scalar(c * n2 - m)).expect("numerical semigroups are cofinite");
    let x = Element::scalar(c * n2);
    let m = Element::scalar(m);
    let checked = vec![check_element(s, &m, &x, formula, budget)?];
    let mut v = Verdict::new(formula, m, Method::EmbDim3, checked);
    v.note = Some(format!("single test element {c}*{n2}"));
    Ok(v)
}

/// Scan range for the numerical oracle.
///
/// Past `T = (n1-1)nk - n1` every integer lies in `S` and
/// `L(n + n1) = L(n) + 1`, so `n ↦ L(n + m) - L(n)` is `n1`-periodic there
/// for any atom `m`. Checking all `s ≤ T + n1` therefore decides the formula
/// for every `s`. The shortest case is the same with `nk` and
/// `(nk-1)n_{k-1} - nk`.
pub fn numerical_scan_bound(gens: &[i64], formula: Formula) -> i64 {
    let n1 = gens[0];
    let nk = gens[gens.len() - 1];
    let prev = if gens.len() >= 2 { gens[gens.len() - 2] } else { nk };
    match formula {
        Formula::LongestPlusOne => (n1 - 1) * nk,
        Formula::ShortestPlusOne => (nk - 1) * prev,
    }
}

/// `L` and `ℓ` on `0..=limit` by dynamic programming; `None` off `S`.
pub fn length_tables(gens: &[i64], limit: usize) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
    let mut long = vec![None; limit + 1];
    let mut short = vec![None; limit + 1];
    long[0] = Some(0);
    short[0] = Some(0);
    for n in 1..=limit {
        for &g in gens {
            let g = g as usize;
            if g > n {
                continue;
            }
            if let (Some(a), Some(b)) = (long[n - g], short[n - g]) {
                long[n] = Some(long[n].map_or(a + 1, |x: u32| x.max(a + 1)));
                short[n] = Some(short[n].map_or(b + 1, |x: u32| x.min(b + 1)));
            }
        }
    }
    (long, short)
}

/// Brute-force verdict.
///
/// Numerical semigroups are scanned up to [`numerical_scan_bound`] (or
/// `bound` if given), which is exact. Affine semigroups are scanned over
/// all `s` with `w(s) <= bound`; without a bound this is an error unless
/// `allow_default` is set, and the result is always marked evidence only.
/// With `all` unset the checked list stops at the first counterexample.
pub fn oracle_scan(
    s: &Semigroup,
    m: &Element,
    formula: Formula,
    bound: Option<i64>,
    allow_default: bool,
    all: bool,
) -> Result<Verdict> {
    if s.index_of(m).is_none() {
        return Err(Error::MNotAtom(m.clone()));
    }
    let mut verdict = match s.scalar_generators().filter(|_| s.is_numerical()) {
        Some(gens) => numerical_oracle(&gens, m, formula, bound),
        None => {
            let bound = match (bound, allow_default) {
                (Some(b), _) => b,
                (None, true) => DEFAULT_AFFINE_BOUND,
                (None, false) => return Err(Error::MissingBound),
            };
            affine_oracle(s, m, formula, bound)
        }
    };
    if !all {
        if let Some(first) = verdict.checked.iter().position(|c| !c.agrees()) {
            verdict.checked.truncate(first + 1);
            verdict.counterexamples.truncate(1);
        }
    }
    Ok(verdict)
}

fn numerical_oracle(gens: &[i64], m: &Element, formula: Formula, bound: Option<i64>) -> Verdict {
    let m_val = m.coords()[0];
    let exact_bound = numerical_scan_bound(gens, formula);
    let b = bound.unwrap_or(exact_bound).max(-1);
    let limit = (b.max(0) + m_val) as usize;
    let (long, short) = length_tables(gens, limit);
    let table = match formula {
        Formula::LongestPlusOne => long,
        Formula::ShortestPlusOne => short,
    };
    let checked: Vec<Checked> = (0..=b)
        .into_par_iter()
        .filter_map(|x| {
            let value = table[(x + m_val) as usize]?;
            let base = table[x as usize]?;
            Some(Checked {
                s: Element::scalar(x + m_val),
                value,
                predicted: base + 1,
            })
        })
        .collect();
    let mut v = Verdict::new(formula, m.clone(), Method::OracleScan, checked);
    v.bound = Some(b);
    if b < exact_bound {
        v.evidence_only = true;
        v.note = Some(format!("scan stops below the exact range s <= {exact_bound}"));
    }
    v
}

/// Every element of `S` with `w(v) <= limit`, sorted by degree.
fn elements_up_to(s: &Semigroup, limit: i64) -> Vec<Element> {
    let mut seen: std::collections::HashSet<Element> = std::collections::HashSet::new();
    let zero = Element::zero(s.dim());
    seen.insert(zero.clone());
    let mut stack = vec![(zero, 0i64)];
    while let Some((v, deg)) = stack.pop() {
        for (g, &dg) in s.generators().iter().zip(s.degrees()) {
            if deg + dg <= limit {
                let w = &v + g;
                if seen.insert(w.clone()) {
                    stack.push((w, deg + dg));
                }
            }
        }
    }
    let mut out: Vec<Element> = seen.into_iter().collect();
    out.sort_by_key(|v| (s.degree(v), v.clone()));
    out
}

fn affine_oracle(s: &Semigroup, m: &Element, formula: Formula, bound: i64) -> Verdict {
    let limit = bound + s.degree(m);
    let elements = elements_up_to(s, limit);
    // Degree order makes every v - g already tabulated when v is reached.
    let mut lengths: HashMap<Element, (u32, u32)> = HashMap::with_capacity(elements.len());
    for v in &elements {
        if v.is_zero() {
            lengths.insert(v.clone(), (0, 0));
            continue;
        }
        let mut best: Option<(u32, u32)> = None;
        for g in s.generators() {
            if let Some(&(l, sh)) = lengths.get(&(v - g)) {
                best = Some(match best {
                    None => (l + 1, sh + 1),
                    Some((a, b)) => (a.max(l + 1), b.min(sh + 1)),
                });
            }
        }
        lengths.insert(v.clone(), best.expect("enumerated elements are sums of generators"));
    }
    let pick = |p: (u32, u32)| match formula {
        Formula::LongestPlusOne => p.0,
        Formula::ShortestPlusOne => p.1,
    };
    let checked: Vec<Checked> = elements
        .par_iter()
        .filter(|x| s.degree(x) <= bound)
        .map(|x| {
            let t = x + m;
            Checked {
                value: pick(lengths[&t]),
                predicted: pick(lengths[x]) + 1,
                s: t,
            }
        })
        .collect();
    let mut v = Verdict::new(formula, m.clone(), Method::OracleScan, checked);
    v.bound = Some(bound);
    v.evidence_only = true;
    v.note = Some(format!("affine scan over w(s) <= {bound}; no threshold theorem extends it"));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::DEFAULT_BUDGET;

    fn sg(g: &[i64]) -> Semigroup {
        Semigroup::numerical(g).unwrap()
    }

    #[test]
    fn candidate_atoms_by_formula() {
        let s = sg(&[10, 12, 21, 38]);
        assert_eq!(candidate_atoms(&s, Formula::LongestPlusOne), vec![Element::scalar(10)]);
        assert_eq!(candidate_atoms(&s, Formula::ShortestPlusOne), vec![Element::scalar(38)]);
        let a = Semigroup::affine(&[[2, 0], [3, 1], [0, 5]]).unwrap();
        assert_eq!(candidate_atoms(&a, Formula::LongestPlusOne).len(), 3);
    }

    #[test]
    fn longest_fails_at_48() {
        let s = sg(&[10, 12, 21, 38]);
        let expected = vec![Checked { s: 48.into(), value: 4, predicted: 2 }];
        let v = check_formula(&s, &10.into(), Formula::LongestPlusOne, DEFAULT_BUDGET).unwrap();
        assert!(!v.holds);
        assert_eq!(v.candidate_set, Some("MinRepl"));
        assert_eq!(v.checked.len(), 4);
        assert_eq!(v.counterexamples, expected);
        let v = check_formula_with(&s, &10.into(), Formula::LongestPlusOne, CandidateMode::Reduced, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.candidate_set, Some("N1"));
        assert_eq!(v.counterexamples, expected);
    }

    #[test]
    fn shortest_at_38_fails_past_the_reduced_sets() {
        let s = sg(&[10, 12, 21, 38]);
        // The reduced set N2 = {48} passes, but 84 = 4·21 has ℓ(84) = 4
        // while ℓ(46) + 1 = 5; 48 divides 84, so the reduction drops it.
        let v = check_formula_with(&s, &38.into(), Formula::ShortestPlusOne, CandidateMode::Reduced, DEFAULT_BUDGET).unwrap();
        assert!(v.holds);
        assert_eq!(v.candidate_set, Some("N2"));
        assert_eq!(v.checked, vec![Checked { s: 48.into(), value: 2, predicted: 2 }]);
        let v = check_formula(&s, &38.into(), Formula::ShortestPlusOne, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.checked.len(), 6);
        assert_eq!(v.counterexamples, vec![Checked { s: 84.into(), value: 4, predicted: 5 }]);
        let o = oracle_scan(&s, &38.into(), Formula::ShortestPlusOne, None, false, false).unwrap();
        assert_eq!(o.counterexamples, v.counterexamples);
    }

    #[test]
    fn affine_longest_fails_at_3_1() {
        let s = Semigroup::affine(&[[2, 0], [3, 1], [0, 5]]).unwrap();
        let m = Element::from([3, 1]);
        let v = check_formula(&s, &m, Formula::LongestPlusOne, DEFAULT_BUDGET).unwrap();
        assert!(!v.holds);
        assert!(v.counterexamples.iter().any(|c| c.s == Element::from([30, 10])));
    }

    #[test]
    fn reduced_sets_miss_counterexamples() {
        let s = sg(&[11, 12, 32]);
        let reduced = check_formula_with(&s, &11.into(), Formula::LongestPlusOne, CandidateMode::Reduced, DEFAULT_BUDGET).unwrap();
        assert!(reduced.holds);
        let full = check_formula(&s, &11.into(), Formula::LongestPlusOne, DEFAULT_BUDGET).unwrap();
        assert_eq!(full.counterexamples, vec![Checked { s: 108.into(), value: 9, predicted: 6 }]);
        assert!(!oracle_scan(&s, &11.into(), Formula::LongestPlusOne, None, false, false).unwrap().holds);

        let s = sg(&[8, 38, 39]);
        let full = check_formula(&s, &39.into(), Formula::ShortestPlusOne, DEFAULT_BUDGET).unwrap();
        assert_eq!(full.counterexamples, vec![Checked { s: 190.into(), value: 5, predicted: 16 }]);
    }

    #[test]
    fn embdim3_on_6_9_20() {
        let s = sg(&[6, 9, 20]);
        for f in [Formula::LongestPlusOne, Formula::ShortestPlusOne] {
            let v = embdim3_check(&s, f, DEFAULT_BUDGET).unwrap();
            assert!(v.holds);
            assert_eq!(v.checked.len(), 1);
        }
        assert!(embdim3_check(&sg(&[5, 6, 8]), Formula::LongestPlusOne, DEFAULT_BUDGET).unwrap().holds);
        assert_eq!(embdim3_check(&sg(&[10, 12, 21, 38]), Formula::LongestPlusOne, DEFAULT_BUDGET), Err(Error::NotEmbDim3));
    }

    #[test]
    fn oracle_on_worked_semigroups() {
        let v = oracle_scan(&sg(&[6, 9, 20]), &6.into(), Formula::LongestPlusOne, None, false, true).unwrap();
        assert!(v.holds && !v.evidence_only);
        assert_eq!(v.bound, Some(100));

        let v = oracle_scan(&sg(&[10, 12, 21, 38]), &10.into(), Formula::LongestPlusOne, None, false, false).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexamples[0].s, Element::scalar(48));
        assert_eq!(v.checked.last().unwrap().s, Element::scalar(48));
    }

    #[test]
    fn oracle_bound_zero_is_vacuous() {
        let v = oracle_scan(&sg(&[10, 12, 21, 38]), &10.into(), Formula::LongestPlusOne, Some(0), false, true).unwrap();
        // s = 0 is checked as the pair (m, 0).
        assert_eq!(v.checked.len(), 1);
        assert!(v.holds);
        let v = oracle_scan(&sg(&[10, 12, 21, 38]), &10.into(), Formula::LongestPlusOne, Some(-1), false, true).unwrap();
        assert!(v.checked.is_empty() && v.holds);
    }

    #[test]
    fn affine_oracle_needs_bound() {
        let s = Semigroup::affine(&[[2, 0], [3, 1], [0, 5]]).unwrap();
        let m = Element::from([3, 1]);
        assert_eq!(oracle_scan(&s, &m, Formula::LongestPlusOne, None, false, true), Err(Error::MissingBound));
        let v = oracle_scan(&s, &m, Formula::LongestPlusOne, None, true, true).unwrap();
        assert!(v.evidence_only && !v.holds);
        assert!(v.counterexamples.iter().any(|c| c.s == Element::from([30, 10]) && c.value == 17));
    }

    #[test]
    fn dp_tables_match_search() {
        let s = sg(&[6, 9, 20]);
        let (long, short) = length_tables(&[6, 9, 20], 200);
        for n in 0..=200i64 {
            let v = Element::scalar(n);
            match long[n as usize] {
                None => assert!(!s.contains(&v)),
                Some(l) => {
                    assert_eq!(length_of(&s, &v, Formula::LongestPlusOne, DEFAULT_BUDGET).unwrap(), l);
                    assert_eq!(length_of(&s, &v, Formula::ShortestPlusOne, DEFAULT_BUDGET).unwrap(), short[n as usize].unwrap());
                }
            }
        }
    }
}
