//! Factorization sets `Z(s)` and the extremal lengths `L(s)` and `ℓ(s)`.
//!
//! All searches walk the atoms in storage order and choose a multiplicity
//! for each, smallest first, so vectors come out in lexicographic order.
//! A residual that has left the semigroup is abandoned immediately.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroup::{Element, Semigroup};

/// Default node limit for factorization and replacement searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// An exponent vector over an ordered atom list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization(Vec<u32>);

impl Factorization {
    pub fn new(exponents: Vec<u32>) -> Self {
        Factorization(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|(c_a)|`, the number of atoms used.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinatewise `self <= other`.
    pub fn le_coordinatewise(&self, other: &Factorization) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u32>> for Factorization {
    fn from(v: Vec<u32>) -> Self {
        Factorization(v)
    }
}

impl<const N: usize> From<[u32; N]> for Factorization {
    fn from(v: [u32; N]) -> Self {
        Factorization(v.to_vec())
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Lengths of the factorizations of one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSummary {
    pub element: Element,
    pub lengths: Vec<u32>,
    pub longest: u32,
    pub shortest: u32,
    pub witness_longest: Factorization,
    pub witness_shortest: Factorization,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub has_m_in_longest: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub has_m_in_shortest: Option<bool>,
}

/// Longest and shortest factorization with their lexicographically least
/// witnesses, found without materializing `Z(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremes {
    pub longest: u32,
    pub shortest: u32,
    pub witness_longest: Factorization,
    pub witness_shortest: Factorization,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    All,
    Longest,
    Shortest,
}

struct Search<'a> {
    s: &'a Semigroup,
    degrees: &'a [i64],
    suffix_min_degree: Vec<i64>,
    suffix_max_degree: Vec<i64>,
    goal: Goal,
    budget: u64,
    nodes: u64,
    found: Vec<Factorization>,
    best: Option<(u32, Vec<u32>)>,
}

impl<'a> Search<'a> {
    fn new(s: &'a Semigroup, goal: Goal, budget: u64) -> Self {
        let degrees = s.degrees();
        let k = degrees.len();
        let mut suffix_min_degree = vec![i64::MAX; k + 1];
        let mut suffix_max_degree = vec![0; k + 1];
        for i in (0..k).rev() {
            suffix_min_degree[i] = suffix_min_degree[i + 1].min(degrees[i]);
            suffix_max_degree[i] = suffix_max_degree[i + 1].max(degrees[i]);
        }
        Search {
            s,
            degrees,
            suffix_min_degree,
            suffix_max_degree,
            goal,
            budget,
            nodes: 0,
            found: Vec::new(),
            best: None,
        }
    }

    fn pruned(&self, i: usize, used: u32, residual_degree: i64) -> bool {
        let Some((best, _)) = &self.best else {
            return false;
        };
        match self.goal {
            Goal::All => false,
            Goal::Longest => {
                let most = residual_degree / self.suffix_min_degree[i];
                used as i64 + most <= *best as i64
            }
            Goal::Shortest => {
                let max_deg = self.suffix_max_degree[i];
                let least = (residual_degree + max_deg - 1) / max_deg;
                used as i64 + least >= *best as i64
            }
        }
    }

    fn record(&mut self, cur: &[u32]) {
        let len: u32 = cur.iter().sum();
        match self.goal {
            Goal::All => self.found.push(Factorization(cur.to_vec())),
            Goal::Longest => {
                if self.best.as_ref().is_none_or(|(b, _)| len > *b) {
                    self.best = Some((len, cur.to_vec()));
                }
            }
            Goal::Shortest => {
                if self.best.as_ref().is_none_or(|(b, _)| len < *b) {
                    self.best = Some((len, cur.to_vec()));
                }
            }
        }
    }

    fn run(&mut self, i: usize, residual: &mut Element, cur: &mut Vec<u32>, used: u32) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        let atoms = self.s.generators();
        let deg = self.s.degree(residual);
        if i == atoms.len() {
            if residual.is_zero() {
                self.record(cur);
            }
            return Ok(());
        }
        if self.pruned(i, used, deg) {
            return Ok(());
        }
        let atom = &atoms[i];
        let atom_degree = self.degrees[i];
        if i + 1 == atoms.len() {
            if deg % atom_degree == 0 {
                let k = deg / atom_degree;
                if residual == &atom.scaled(k) {
                    cur[i] = k as u32;
                    self.record(cur);
                    cur[i] = 0;
                }
            }
            return Ok(());
        }
        let max_k = deg / atom_degree;
        for k in 0..=max_k {
            if k > 0 {
                residual.add_scaled(atom, -1);
            }
            if self.s.contains(residual) {
                cur[i] = k as u32;
                self.run(i + 1, residual, cur, used + k as u32)?;
                cur[i] = 0;
            }
        }
        residual.add_scaled(atom, max_k);
        Ok(())
    }
}

fn check_dim(s: &Semigroup, v: &Element) -> Result<()> {
    if v.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

/// The complete factorization set of `v`, in lexicographic order; empty
/// when `v` is not in `S`.
pub fn factorizations(s: &Semigroup, v: &Element, budget: u64) -> Result<Vec<Factorization>> {
    check_dim(s, v)?;
    if !s.contains(v) {
        return Ok(Vec::new());
    }
    let mut search = Search::new(s, Goal::All, budget);
    let mut cur = vec![0; s.embedding_dimension()];
    search.run(0, &mut v.clone(), &mut cur, 0)?;
    Ok(search.found)
}

fn extreme(s: &Semigroup, v: &Element, goal: Goal, budget: u64) -> Result<(u32, Factorization)> {
    check_dim(s, v)?;
    if !s.contains(v) {
        return Err(Error::NotInSemigroup(v.clone()));
    }
    let mut search = Search::new(s, goal, budget);
    let mut cur = vec![0; s.embedding_dimension()];
    search.run(0, &mut v.clone(), &mut cur, 0)?;
    let (len, witness) = search.best.ok_or_else(|| Error::NotInSemigroup(v.clone()))?;
    Ok((len, Factorization(witness)))
}

/// `L(v)` with the lexicographically least factorization of that length.
pub fn longest(s: &Semigroup, v: &Element, budget: u64) -> Result<(u32, Factorization)> {
    extreme(s, v, Goal::Longest, budget)
}

/// `ℓ(v)` with the lexicographically least factorization of that length.
pub fn shortest(s: &Semigroup, v: &Element, budget: u64) -> Result<(u32, Factorization)> {
    extreme(s, v, Goal::Shortest, budget)
}

pub fn extremes(s: &Semigroup, v: &Element, budget: u64) -> Result<Extremes> {
    let (longest, witness_longest) = longest(s, v, budget)?;
    let (shortest, witness_shortest) = shortest(s, v, budget)?;
    Ok(Extremes {
        longest,
        shortest,
        witness_longest,
        witness_shortest,
    })
}

/// Full length summary of `v` from the complete factorization set. With an
/// atom `m`, also reports whether some longest (resp. shortest)
/// factorization uses `m`.
pub fn length_summary(s: &Semigroup, v: &Element, m: Option<&Element>, budget: u64) -> Result<LengthSummary> {
    let m_index = match m {
        Some(atom) => Some(s.index_of(atom).ok_or_else(|| Error::MNotAtom(atom.clone()))?),
        None => None,
    };
    let all = factorizations(s, v, budget)?;
    if all.is_empty() {
        return Err(Error::NotInSemigroup(v.clone()));
    }
    let mut lengths: Vec<u32> = all.iter().map(Factorization::length).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let longest = *lengths.last().expect("nonempty");
    let shortest = lengths[0];
    // `all` is lexicographically sorted, so the first hit is the least.
    let witness_longest = all.iter().find(|c| c.length() == longest).cloned().expect("exists");
    let witness_shortest = all.iter().find(|c| c.length() == shortest).cloned().expect("exists");
    let flag = |target: u32| {
        m_index.map(|i| all.iter().any(|c| c.length() == target && c.exponents()[i] > 0))
    };
    Ok(LengthSummary {
        element: v.clone(),
        has_m_in_longest: flag(longest),
        has_m_in_shortest: flag(shortest),
        lengths,
        longest,
        shortest,
        witness_longest,
        witness_shortest,
    })
}
