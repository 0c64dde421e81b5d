//! Minimal nonnegative solutions of homogeneous linear Diophantine systems
//! `Σ x_j · col_j = 0`, by the Contejean–Devie frontier search.
//!
//! The frontier starts at the unit vectors. A node `x` with defect
//! `d = Σ x_j col_j` is only extended along columns with `<d, col_j> < 0`,
//! which keeps the defect bounded and makes the search terminate without a
//! priori bounds on the unknowns. Nodes that dominate an already collected
//! solution are dropped. Solutions appear level by level (by `|x|`), so
//! everything collected is minimal.
//!
//! Optional per-variable caps restrict the search to the box below them;
//! every minimal solution inside the box is still reached because the path
//! to it never leaves the box.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HomogeneousSystem {
    columns: Vec<Vec<i64>>,
    caps: Vec<Option<u32>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl HomogeneousSystem {
    /// One column per unknown; all columns must share a dimension.
    pub fn new(columns: Vec<Vec<i64>>) -> Self {
        let caps = vec![None; columns.len()];
        HomogeneousSystem { columns, caps }
    }

    pub fn with_cap(mut self, var: usize, cap: u32) -> Self {
        self.caps[var] = Some(cap);
        self
    }

    pub fn num_vars(&self) -> usize {
        self.columns.len()
    }

    fn defect(&self, x: &[u32]) -> Vec<i64> {
        let dim = self.columns.first().map_or(0, Vec::len);
        let mut d = vec![0; dim];
        for (col, &k) in self.columns.iter().zip(x) {
            if k > 0 {
                for (di, ci) in d.iter_mut().zip(col) {
                    *di += k as i64 * ci;
                }
            }
        }
        d
    }

    /// All minimal nonzero solutions within the caps, sorted
    /// lexicographically. `budget` bounds the number of frontier nodes
    /// created.
    pub fn minimal_solutions(&self, budget: u64) -> Result<Vec<Vec<u32>>> {
        let n = self.num_vars();
        let mut solutions: Vec<Vec<u32>> = Vec::new();
        let mut frontier: Vec<(Vec<u32>, Vec<i64>)> = Vec::new();
        let mut nodes = 0u64;

        for j in 0..n {
            if self.caps[j] == Some(0) {
                continue;
            }
            let mut x = vec![0; n];
            x[j] = 1;
            let d = self.columns[j].clone();
            if d.iter().all(|&c| c == 0) {
                solutions.push(x);
            } else {
                frontier.push((x, d));
            }
        }

        while !frontier.is_empty() {
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            let mut next: Vec<(Vec<u32>, Vec<i64>)> = Vec::new();
            let mut new_solutions: Vec<Vec<u32>> = Vec::new();
            for (x, d) in &frontier {
                for j in 0..n {
                    if self.caps[j].is_some_and(|c| x[j] >= c) {
                        continue;
                    }
                    if dot(d, &self.columns[j]) >= 0 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[j] += 1;
                    if seen.contains(&y) || dominates_any(&y, &solutions) {
                        continue;
                    }
                    nodes += 1;
                    if nodes > budget {
                        return Err(Error::BudgetExceeded { limit: budget });
                    }
                    let dy: Vec<i64> = d.iter().zip(&self.columns[j]).map(|(a, b)| a + b).collect();
                    seen.insert(y.clone());
                    if dy.iter().all(|&c| c == 0) {
                        new_solutions.push(y);
                    } else {
                        next.push((y, dy));
                    }
                }
            }
            solutions.extend(new_solutions);
            // Same-level solutions cannot dominate each other, but they can
            // dominate frontier nodes generated alongside them.
            next.retain(|(y, _)| !dominates_any(y, &solutions));
            frontier = next;
        }
        debug_assert!(solutions.iter().all(|x| self.defect(x).iter().all(|&c| c == 0)));
        solutions.sort();
        Ok(solutions)
    }
}

fn dominates_any(y: &[u32], solutions: &[Vec<u32>]) -> bool {
    solutions.iter().any(|s| s.iter().zip(y).all(|(a, b)| a <= b))
}
