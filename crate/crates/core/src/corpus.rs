//! Seeded random numerical semigroups for cross-validation.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::semigroup::{Element, Semigroup};

#[derive(Clone, Copy, Debug)]
pub struct CorpusSpec {
    pub max_multiplicity: i64,
    pub max_generator: i64,
    pub max_generators: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_multiplicity: 12,
            max_generator: 40,
            max_generators: 5,
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// `count` distinct numerical semigroups with at least two minimal
/// generators, smallest generator at most `max_multiplicity`, all
/// generators at most `max_generator`. Deterministic in `seed`.
pub fn random_numerical(count: usize, seed: u64, spec: CorpusSpec) -> Vec<Semigroup> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 1000 {
        attempts += 1;
        let n1 = rng.random_range(2..=spec.max_multiplicity);
        let k = rng.random_range(2..=spec.max_generators);
        let mut gens: BTreeSet<i64> = BTreeSet::from([n1]);
        for _ in 1..k {
            gens.insert(rng.random_range(n1 + 1..=spec.max_generator));
        }
        if gens.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
            continue;
        }
        let Ok(s) = Semigroup::from_generating_set(gens.into_iter().map(Element::scalar).collect(), 1) else {
            continue;
        };
        let key = s.scalar_generators().expect("numerical");
        if key.len() < 2 || !seen.insert(key) {
            continue;
        }
        out.push(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_respects_limits_and_seed() {
        let a = random_numerical(50, 7, CorpusSpec::default());
        let b = random_numerical(50, 7, CorpusSpec::default());
        assert_eq!(a.len(), 50);
        assert_eq!(a, b);
        for s in &a {
            let g = s.scalar_generators().unwrap();
            assert!(s.is_numerical());
            assert!(g[0] <= 12 && *g.last().unwrap() <= 40 && g.len() <= 5 && g.len() >= 2);
        }
    }
}
