//! Finitely generated, positively graded subsemigroups of `Z^d`.
//!
//! A [`Semigroup`] is always stored through its minimal generating set (its
//! atoms) together with a grading functional `w` with `w(g) >= 1` for every
//! generator. The grading makes every element have finitely many
//! factorizations and makes the semigroup reduced, so elements and their
//! associate classes coincide.
//!
//! Numerical semigroups (dimension 1, positive generators) keep their
//! generators sorted ascending; membership is answered from an Apéry table
//! of the scaled semigroup. Higher-dimensional semigroups keep the user's
//! generator order and answer membership by a memoized depth-first search.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Mutex;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coordinate bound for the grading search when `(1, ..., 1)` is not positive.
pub const GRADING_SEARCH_BOUND: i64 = 50;

/// A vector of the ambient lattice `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<i64>);

impl Element {
    pub fn new(coords: Vec<i64>) -> Self {
        Element(coords)
    }

    pub fn scalar(n: i64) -> Self {
        Element(vec![n])
    }

    pub fn zero(dim: usize) -> Self {
        Element(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The single coordinate of a one-dimensional element.
    pub fn as_scalar(&self) -> Option<i64> {
        match self.0.as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn scaled(&self, k: i64) -> Element {
        Element(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add_scaled(&mut self, other: &Element, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }
}

impl From<i64> for Element {
    fn from(n: i64) -> Self {
        Element::scalar(n)
    }
}

impl From<Vec<i64>> for Element {
    fn from(v: Vec<i64>) -> Self {
        Element(v)
    }
}

impl From<&[i64]> for Element {
    fn from(v: &[i64]) -> Self {
        Element(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Element {
    fn from(v: [i64; N]) -> Self {
        Element(v.to_vec())
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_scalar() {
            Some(n) => write!(f, "{n}"),
            None => {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_scalar() {
            Some(n) => serializer.serialize_i64(n),
            None => self.0.serialize(serializer),
        }
    }
}

fn dot(w: &[i64], v: &[i64]) -> i64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least element of each residue class modulo `modulus` reachable as a sum
/// of `gens` (Dijkstra over `Z/modulus`). Unreachable classes are `None`.
fn residue_minima(gens: &[i64], modulus: i64) -> Vec<Option<i64>> {
    let n = modulus as usize;
    let mut best: Vec<Option<i64>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    best[0] = Some(0);
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((value, residue))) = heap.pop() {
        if best[residue] != Some(value) {
            continue;
        }
        for &g in gens {
            let next = value + g;
            let r = (next % modulus) as usize;
            if best[r].is_none_or(|b| next < b) {
                best[r] = Some(next);
                heap.push(Reverse((next, r)));
            }
        }
    }
    best
}

/// Apéry table of a one-dimensional semigroup, after dividing out the gcd.
#[derive(Clone, Debug)]
struct ScalarTable {
    gcd: i64,
    modulus: i64,
    minima: Vec<Option<i64>>,
}

impl ScalarTable {
    fn new(gens: &[i64]) -> Self {
        let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
        let scaled: Vec<i64> = gens.iter().map(|x| x / g).collect();
        let modulus = *scaled.iter().min().expect("nonempty");
        ScalarTable {
            gcd: g,
            modulus,
            minima: residue_minima(&scaled, modulus),
        }
    }

    fn contains(&self, v: i64) -> bool {
        if v < 0 || v % self.gcd != 0 {
            return false;
        }
        let u = v / self.gcd;
        match self.minima[(u % self.modulus) as usize] {
            Some(least) => u >= least,
            None => false,
        }
    }
}

/// Depth-first search for an N-combination of `pool` equal to `target`,
/// returning multiplicities indexed like `pool`.
///
/// Every pool element must have positive degree under `grading`.
pub(crate) fn find_combination(target: &[i64], pool: &[Vec<i64>], grading: &[i64]) -> Option<Vec<u32>> {
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.sort_by_key(|&i| Reverse(dot(grading, &pool[i])));
    let degrees: Vec<i64> = pool.iter().map(|p| dot(grading, p)).collect();
    let mut failed: HashSet<Vec<i64>> = HashSet::new();
    let mut path = Vec::new();

    fn rec(
        res: &mut Vec<i64>,
        pool: &[Vec<i64>],
        degrees: &[i64],
        order: &[usize],
        grading: &[i64],
        failed: &mut HashSet<Vec<i64>>,
        path: &mut Vec<usize>,
    ) -> bool {
        if res.iter().all(|&c| c == 0) {
            return true;
        }
        let deg = dot(grading, res);
        if deg <= 0 || failed.contains(res) {
            return false;
        }
        for &i in order {
            if degrees[i] > deg {
                continue;
            }
            for (r, p) in res.iter_mut().zip(&pool[i]) {
                *r -= p;
            }
            path.push(i);
            if rec(res, pool, degrees, order, grading, failed, path) {
                return true;
            }
            path.pop();
            for (r, p) in res.iter_mut().zip(&pool[i]) {
                *r += p;
            }
        }
        failed.insert(res.clone());
        false
    }

    let mut res = target.to_vec();
    if rec(&mut res, pool, &degrees, &order, grading, &mut failed, &mut path) {
        let mut counts = vec![0u32; pool.len()];
        for i in path {
            counts[i] += 1;
        }
        Some(counts)
    } else {
        None
    }
}

/// A positively graded affine semigroup given by its atoms.
pub struct Semigroup {
    dim: usize,
    generators: Vec<Element>,
    grading: Vec<i64>,
    degrees: Vec<i64>,
    scalar: Option<ScalarTable>,
    memo: Mutex<HashMap<Vec<i64>, bool>>,
}

impl Clone for Semigroup {
    fn clone(&self) -> Self {
        Semigroup {
            dim: self.dim,
            generators: self.generators.clone(),
            grading: self.grading.clone(),
            degrees: self.degrees.clone(),
            scalar: self.scalar.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semigroup")
            .field("dim", &self.dim)
            .field("generators", &self.generators)
            .field("grading", &self.grading)
            .finish()
    }
}

impl PartialEq for Semigroup {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for Semigroup {}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

fn find_grading(dim: usize, gens: &[Element]) -> Result<Vec<i64>> {
    let ones = vec![1; dim];
    if gens.iter().all(|g| dot(&ones, g.coords()) >= 1) {
        return Ok(ones);
    }
    // Walk the sup-norm shells of the search box; the first hit is kept.
    for radius in 1..=GRADING_SEARCH_BOUND {
        let side = (2 * radius + 1) as u64;
        let total = side.pow(dim as u32);
        for code in 0..total {
            let mut c = code;
            let mut w = Vec::with_capacity(dim);
            for _ in 0..dim {
                w.push((c % side) as i64 - radius);
                c /= side;
            }
            if w.iter().all(|x| x.abs() < radius) {
                continue;
            }
            if gens.iter().all(|g| dot(&w, g.coords()) >= 1) {
                return Ok(w);
            }
        }
    }
    Err(Error::NotPointed {
        bound: GRADING_SEARCH_BOUND,
    })
}

fn check_shape(generators: &[Element], dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        if g.is_zero() {
            return Err(Error::ZeroGenerator(g.clone()));
        }
    }
    Ok(())
}

impl Semigroup {
    /// Builds a semigroup from a list that must already be its minimal
    /// generating set.
    pub fn new(mut generators: Vec<Element>, dim: usize) -> Result<Self> {
        check_shape(&generators, dim)?;
        let grading = find_grading(dim, &generators)?;
        let numerical = dim == 1 && generators.iter().all(|g| g.coords()[0] > 0);
        if numerical {
            generators.sort();
        }
        for (i, g) in generators.iter().enumerate() {
            let others: Vec<Vec<i64>> = generators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.coords().to_vec())
                .collect();
            if let Some(counts) = find_combination(g.coords(), &others, &grading) {
                let other_elems = generators.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h);
                let witness = other_elems
                    .zip(counts)
                    .filter(|(_, k)| *k > 0)
                    .map(|(h, k)| (h.clone(), k))
                    .collect();
                return Err(Error::NotMinimal {
                    generator: g.clone(),
                    witness,
                });
            }
        }
        Ok(Self::assemble(generators, dim, grading))
    }

    /// Builds the semigroup generated by an arbitrary finite set, discarding
    /// duplicates and generators that factor over the others.
    pub fn from_generating_set(generators: Vec<Element>, dim: usize) -> Result<Self> {
        check_shape(&generators, dim)?;
        let grading = find_grading(dim, &generators)?;
        let mut sorted = generators;
        sorted.sort_by_key(|g| (dot(&grading, g.coords()), g.clone()));
        sorted.dedup();
        // A combination of positive-degree elements only uses strictly
        // smaller degrees, so one pass in degree order suffices.
        let mut kept: Vec<Element> = Vec::new();
        for g in sorted {
            let pool: Vec<Vec<i64>> = kept.iter().map(|k| k.coords().to_vec()).collect();
            if find_combination(g.coords(), &pool, &grading).is_none() {
                kept.push(g);
            }
        }
        Self::new(kept, dim)
    }

    pub fn numerical(generators: &[i64]) -> Result<Self> {
        Self::new(generators.iter().map(|&g| Element::scalar(g)).collect(), 1)
    }

    pub fn affine<V: AsRef<[i64]>>(generators: &[V]) -> Result<Self> {
        let gens: Vec<Element> = generators.iter().map(|g| Element::from(g.as_ref())).collect();
        let dim = gens.first().map(Element::dim).ok_or(Error::NoGenerators)?;
        Self::new(gens, dim)
    }

    fn assemble(generators: Vec<Element>, dim: usize, grading: Vec<i64>) -> Self {
        let degrees = generators.iter().map(|g| dot(&grading, g.coords())).collect();
        let scalar = (dim == 1 && generators.iter().all(|g| g.coords()[0] > 0))
            .then(|| ScalarTable::new(&generators.iter().map(|g| g.coords()[0]).collect::<Vec<_>>()));
        Semigroup {
            dim,
            generators,
            grading,
            degrees,
            scalar,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The atoms, in storage order.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    /// Grading values of the generators, in storage order.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, v: &Element) -> i64 {
        dot(&self.grading, v.coords())
    }

    /// gcd of the generators, for one-dimensional semigroups with positive
    /// generators.
    pub fn gcd(&self) -> Option<i64> {
        self.scalar.as_ref().map(|t| t.gcd)
    }

    /// Dimension 1, positive generators, gcd 1.
    pub fn is_numerical(&self) -> bool {
        self.gcd() == Some(1)
    }

    pub fn index_of(&self, atom: &Element) -> Option<usize> {
        self.generators.iter().position(|g| g == atom)
    }

    /// Integer generators of a one-dimensional semigroup.
    pub fn scalar_generators(&self) -> Option<Vec<i64>> {
        self.scalar
            .as_ref()
            .map(|_| self.generators.iter().map(|g| g.coords()[0]).collect())
    }

    /// `φ_S`: the element a factorization vector over all atoms evaluates to.
    pub fn evaluate(&self, exponents: &[u32]) -> Element {
        let mut out = Element::zero(self.dim);
        for (g, &k) in self.generators.iter().zip(exponents) {
            out.add_scaled(g, k as i64);
        }
        out
    }

    pub fn contains(&self, v: &Element) -> bool {
        if v.dim() != self.dim {
            return false;
        }
        if let Some(table) = &self.scalar {
            return table.contains(v.coords()[0]);
        }
        self.contains_by_search(v)
    }

    pub fn contains_scalar(&self, n: i64) -> bool {
        match &self.scalar {
            Some(table) => table.contains(n),
            None => self.dim == 1 && self.contains_by_search(&Element::scalar(n)),
        }
    }

    /// Membership by memoized depth-first search on residuals, largest
    /// degree first. Residuals of nonpositive degree other than 0 are
    /// rejected immediately.
    pub fn contains_by_search(&self, v: &Element) -> bool {
        if v.dim() != self.dim {
            return false;
        }
        let mut order: Vec<usize> = (0..self.generators.len()).collect();
        order.sort_by_key(|&i| Reverse(self.degrees[i]));
        let mut local = HashMap::new();
        let found = self.search(v.coords().to_vec(), &order, &mut local);
        self.memo.lock().expect("membership memo poisoned").extend(local);
        found
    }

    fn search(&self, res: Vec<i64>, order: &[usize], local: &mut HashMap<Vec<i64>, bool>) -> bool {
        if res.iter().all(|&c| c == 0) {
            return true;
        }
        let deg = dot(&self.grading, &res);
        if deg <= 0 {
            return false;
        }
        if let Some(&known) = local.get(&res) {
            return known;
        }
        if let Some(&known) = self.memo.lock().expect("membership memo poisoned").get(&res) {
            return known;
        }
        let mut found = false;
        for &i in order {
            if self.degrees[i] > deg {
                continue;
            }
            let next: Vec<i64> = res
                .iter()
                .zip(self.generators[i].coords())
                .map(|(a, b)| a - b)
                .collect();
            if self.search(next, order, local) {
                found = true;
                break;
            }
        }
        local.insert(res, found);
        found
    }

    /// `a | b` in `S`: `b - a` is an element of `S`.
    pub fn divides(&self, a: &Element, b: &Element) -> bool {
        self.contains(&(b - a))
    }

    /// Apéry set with respect to `m`, indexed by residue: entry `i` is the
    /// least element of `S` congruent to `i` modulo `m`.
    pub fn apery_set(&self, m: i64) -> Result<Vec<i64>> {
        if !self.is_numerical() {
            return Err(Error::NotNumerical);
        }
        if m <= 0 || !self.contains_scalar(m) {
            return Err(Error::NotInSemigroup(Element::scalar(m)));
        }
        let gens = self.scalar_generators().expect("numerical");
        Ok(residue_minima(&gens, m)
            .into_iter()
            .map(|v| v.expect("gcd 1 reaches every residue"))
            .collect())
    }

    /// Largest integer outside `S`, or -1 when `S` is all of `N`.
    pub fn frobenius(&self) -> Result<i64> {
        let gens = self.scalar_generators().ok_or(Error::NotNumerical)?;
        let n1 = gens[0];
        let ap = self.apery_set(n1)?;
        Ok(ap.iter().max().expect("nonempty") - n1)
    }
}
