//! Replaceable factorizations.
//!
//! For an atom `m`, `Repl_m(S)` is the set of exponent vectors `c` over the
//! other atoms with `φ_S(c) - m ∈ S`. It is upward closed, so it is
//! described by its finite antichain of minimal elements `MinRepl_m(S)`.
//! From the evaluations of those minimal vectors we derive the candidate
//! sets on which the `+1` length formulas have to be checked.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diophantine::HomogeneousSystem;
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::semigroup::{Element, Semigroup};

/// How `MinRepl_m(S)` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReplSolver {
    /// Bounded frontier for numerical semigroups, Contejean–Devie otherwise.
    Auto,
    /// Minimal solutions of `φ(c) - φ(b) = m` projected to `c`.
    ContejeanDevie,
    /// Level-wise frontier inside the box `c_i <= min{k : k·n_i - m ∈ S}`;
    /// numerical semigroups only.
    BoundedFrontier,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinReplReport {
    pub m: Element,
    pub atom_index: Vec<Element>,
    #[serde(rename = "min_repl")]
    pub minimal_vectors: Vec<Factorization>,
    /// `φ_S` of each minimal vector, in the same order.
    pub evaluations: Vec<Element>,
    #[serde(rename = "M1")]
    pub m1: Vec<Element>,
    #[serde(rename = "M2")]
    pub m2: Vec<Element>,
    #[serde(rename = "N1")]
    pub n1: Vec<Element>,
    #[serde(rename = "N2")]
    pub n2: Vec<Element>,
    pub solver: ReplSolver,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl MinReplReport {
    /// Minimal vectors evaluating to `s`.
    pub fn witnesses<'a>(&'a self, s: &'a Element) -> impl Iterator<Item = &'a Factorization> + 'a {
        self.minimal_vectors
            .iter()
            .zip(&self.evaluations)
            .filter(move |(_, e)| *e == s)
            .map(|(c, _)| c)
    }
}

fn atom_position(s: &Semigroup, m: &Element) -> Result<usize> {
    s.index_of(m).ok_or_else(|| Error::MNotAtom(m.clone()))
}

fn other_atoms(s: &Semigroup, m_idx: usize) -> Vec<Element> {
    s.generators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != m_idx)
        .map(|(_, g)| g.clone())
        .collect()
}

fn evaluate_over(atoms: &[Element], c: &[u32], dim: usize) -> Element {
    let mut out = Element::zero(dim);
    for (a, &k) in atoms.iter().zip(c) {
        out.add_scaled(a, k as i64);
    }
    out
}

/// Whether `c` (over the atoms other than `m`) lies in `Repl_m(S)`.
pub fn repl_contains(s: &Semigroup, m: &Element, c: &Factorization) -> Result<bool> {
    let m_idx = atom_position(s, m)?;
    let atoms = other_atoms(s, m_idx);
    if c.len() != atoms.len() {
        return Err(Error::VectorLength {
            expected: atoms.len(),
            found: c.len(),
        });
    }
    let value = evaluate_over(&atoms, c.exponents(), s.dim());
    Ok(s.contains(&(&value - m)))
}

/// Coordinatewise-minimal elements of a set of vectors, sorted.
pub fn minimal_elements(vectors: impl IntoIterator<Item = Vec<u32>>) -> Vec<Vec<u32>> {
    let set: BTreeSet<Vec<u32>> = vectors.into_iter().collect();
    let all: Vec<Vec<u32>> = set.into_iter().collect();
    all.iter()
        .filter(|x| {
            !all.iter()
                .any(|y| y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect()
}

fn contejean_devie(s: &Semigroup, m: &Element, atoms: &[Element], budget: u64) -> Result<Vec<Vec<u32>>> {
    // Unknowns: [x0 | c over atoms \ {m} | b over all atoms] with
    // x0·(-m) + Σ c·a - Σ b·g = 0 and x0 <= 1.
    let mut columns = vec![m.scaled(-1).coords().to_vec()];
    columns.extend(atoms.iter().map(|a| a.coords().to_vec()));
    columns.extend(s.generators().iter().map(|g| g.scaled(-1).coords().to_vec()));
    let system = HomogeneousSystem::new(columns).with_cap(0, 1);
    let k = atoms.len();
    let projected = system
        .minimal_solutions(budget)?
        .into_iter()
        .filter(|x| x[0] == 1)
        .map(|x| x[1..=k].to_vec());
    Ok(minimal_elements(projected))
}

fn bounded_frontier(s: &Semigroup, m: &Element, atoms: &[Element], budget: u64) -> Result<Vec<Vec<u32>>> {
    let m_val = m.as_scalar().ok_or(Error::NotNumerical)?;
    if !s.is_numerical() {
        return Err(Error::NotNumerical);
    }
    let values: Vec<i64> = atoms.iter().map(|a| a.coords()[0]).collect();
    let caps: Vec<u32> = values
        .iter()
        .map(|&a| (1..).find(|&k| s.contains_scalar(k * a - m_val)).expect("numerical semigroups are cofinite") as u32)
        .collect();
    let k = atoms.len();
    let mut solutions: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<(Vec<u32>, i64)> = vec![(vec![0; k], 0)];
    let mut nodes = 0u64;
    while !frontier.is_empty() {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for (x, value) in &frontier {
            for j in 0..k {
                if x[j] >= caps[j] {
                    continue;
                }
                let mut y = x.clone();
                y[j] += 1;
                if seen.contains(&y) || solutions.iter().any(|sol| sol.iter().zip(&y).all(|(a, b)| a <= b)) {
                    continue;
                }
                nodes += 1;
                if nodes > budget {
                    return Err(Error::BudgetExceeded { limit: budget });
                }
                seen.insert(y.clone());
                next.push((y, value + values[j]));
            }
        }
        let (hits, rest): (Vec<_>, Vec<_>) = next.into_iter().partition(|(_, v)| s.contains_scalar(v - m_val));
        solutions.extend(hits.into_iter().map(|(y, _)| y));
        frontier = rest;
    }
    solutions.sort();
    Ok(solutions)
}

/// `MinRepl_m(S)` with evaluations filled in; the candidate sets are left
/// empty (see [`candidate_sets`]).
pub fn min_repl(s: &Semigroup, m: &Element, budget: u64) -> Result<MinReplReport> {
    min_repl_with(s, m, ReplSolver::Auto, budget)
}

pub fn min_repl_with(s: &Semigroup, m: &Element, solver: ReplSolver, budget: u64) -> Result<MinReplReport> {
    let m_idx = atom_position(s, m)?;
    let atoms = other_atoms(s, m_idx);
    let solver = match solver {
        ReplSolver::Auto if s.is_numerical() => ReplSolver::BoundedFrontier,
        ReplSolver::Auto => ReplSolver::ContejeanDevie,
        other => other,
    };
    let vectors = match solver {
        ReplSolver::BoundedFrontier => bounded_frontier(s, m, &atoms, budget)?,
        _ => contejean_devie(s, m, &atoms, budget)?,
    };
    let evaluations = vectors.iter().map(|c| evaluate_over(&atoms, c, s.dim())).collect();
    Ok(MinReplReport {
        m: m.clone(),
        atom_index: atoms,
        minimal_vectors: vectors.into_iter().map(Factorization::new).collect(),
        evaluations,
        m1: Vec::new(),
        m2: Vec::new(),
        n1: Vec::new(),
        n2: Vec::new(),
        solver,
        notes: Vec::new(),
    })
}

/// Zeros in a (possibly empty) prefix, positive entries from the first
/// nonzero coordinate on.
pub fn is_left_zero(c: &Factorization) -> bool {
    let e = c.exponents();
    match e.iter().position(|&v| v > 0) {
        Some(first) => e[first..].iter().all(|&v| v > 0),
        None => false,
    }
}

/// Positive entries up to the last nonzero coordinate, zeros after it.
pub fn is_right_zero(c: &Factorization) -> bool {
    let e = c.exponents();
    match e.iter().rposition(|&v| v > 0) {
        Some(last) => e[..=last].iter().all(|&v| v > 0),
        None => false,
    }
}

/// Fills `M1`, `M2` and, for numerical semigroups with `m` the smallest
/// (resp. largest) atom, `N1` (resp. `N2`).
pub fn candidate_sets(s: &Semigroup, m: &Element, report: &MinReplReport) -> Result<MinReplReport> {
    let m_idx = atom_position(s, m)?;
    if &report.m != m || report.atom_index != other_atoms(s, m_idx) {
        return Err(Error::ReportMismatch);
    }
    let mut out = report.clone();
    let distinct: BTreeSet<Element> = report.evaluations.iter().cloned().collect();
    if distinct.len() < report.evaluations.len() {
        out.notes.push(format!(
            "{} minimal vectors share {} distinct evaluations",
            report.evaluations.len(),
            distinct.len()
        ));
    }
    let m2: Vec<Element> = distinct
        .iter()
        .filter(|x| !distinct.iter().any(|y| y != *x && s.divides(y, x)))
        .cloned()
        .collect();
    let m1: Vec<Element> = m2
        .iter()
        .filter(|x| report.witnesses(x).any(|c| c.length() > 2))
        .cloned()
        .collect();
    let k = s.embedding_dimension();
    if s.is_numerical() && k >= 2 {
        if m_idx == 0 {
            out.n1 = m1
                .iter()
                .filter(|x| report.witnesses(x).any(|c| !is_left_zero(c)))
                .cloned()
                .collect();
        }
        if m_idx == k - 1 {
            out.n2 = m2
                .iter()
                .filter(|x| report.witnesses(x).any(|c| !is_right_zero(c)))
                .cloned()
                .collect();
        }
    }
    out.m1 = m1;
    out.m2 = m2;
    Ok(out)
}

/// `min_repl` followed by `candidate_sets`.
pub fn analyze(s: &Semigroup, m: &Element, budget: u64) -> Result<MinReplReport> {
    let report = min_repl(s, m, budget)?;
    candidate_sets(s, m, &report)
}
