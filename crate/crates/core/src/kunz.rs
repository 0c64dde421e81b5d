//! Kunz coordinates for numerical semigroups containing a fixed `m`.
//!
//! A semigroup `S ∋ m` is recorded by its Apéry set `{x_α m + α}` over the
//! residues `α ∈ Z/mZ`, i.e. by the integer vector `x` (with `x_0 = 0`).
//! Valid vectors are the integer points of the polytope
//! `x_α + x_β + d_{α,β} >= x_{α+β}`. Which of these inequalities are tight
//! determines the Kunz poset `⪯` and the nilsemigroup `P^∞` with its
//! operation `⊕`, and through them the minimal replaceable factorizations
//! of `S` and the face-level length criteria.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroup::{Element, Semigroup};
use crate::verdict::Formula;

/// `Z/mZ` with representatives `r_α = α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunzContext {
    m: usize,
}

impl KunzContext {
    pub fn numerical(m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        Ok(KunzContext { m: m as usize })
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.m
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        (a + self.m - b) % self.m
    }

    /// `d_{α,β}` with `r_α + r_β = d_{α,β} m + r_{α+β}`.
    pub fn d(&self, a: usize, b: usize) -> i64 {
        ((a + b) / self.m) as i64
    }

    /// `(β, d_{(c)})` for a vector `c` over the residues `support`, where
    /// `β = Σ c_i support_i` and `Σ c_i r_{support_i} = d_{(c)} m + r_β`.
    pub fn d_vec(&self, c: &[u32], support: &[usize]) -> (usize, i64) {
        let total: u64 = c.iter().zip(support).map(|(&k, &a)| k as u64 * a as u64).sum();
        ((total % self.m as u64) as usize, (total / self.m as u64) as i64)
    }

    /// `b_{(c),(c')}` with `b m = r_{β'-β} + Σ (c - c') r`.
    pub fn b(&self, c: &[u32], c2: &[u32], support: &[usize]) -> Result<i64> {
        let (beta, _) = self.d_vec(c, support);
        let (beta2, _) = self.d_vec(c2, support);
        let diff: i64 = c
            .iter()
            .zip(c2)
            .zip(support)
            .map(|((&a, &b), &r)| (a as i64 - b as i64) * r as i64)
            .sum();
        let num = self.sub(beta2, beta) as i64 + diff;
        if num % self.m as i64 != 0 {
            return Err(Error::NonIntegral);
        }
        Ok(num / self.m as i64)
    }
}

/// An element of `P^∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PInf {
    Elem(usize),
    Infinity,
}

impl Serialize for PInf {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PInf::Elem(a) => serializer.serialize_u64(*a as u64),
            PInf::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl fmt::Display for PInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PInf::Elem(a) => write!(f, "{a}"),
            PInf::Infinity => write!(f, "∞"),
        }
    }
}

/// A minimal vector over the `P^∞` atoms whose `⊕`-product is `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InfFactorization {
    pub c: Vec<u32>,
    pub beta: usize,
    pub d_value: i64,
}

impl InfFactorization {
    pub fn length(&self) -> u32 {
        self.c.iter().sum()
    }
}

/// A validated integer point with its poset, `⊕` table and factorization
/// data computed up front.
#[derive(Clone, Debug)]
pub struct KunzPoint {
    ctx: KunzContext,
    x: Vec<i64>,
    tight: Vec<Vec<bool>>,
    atoms: Vec<usize>,
    /// Vectors over `atoms` with finite `⊕`-product, and that product.
    finite: HashMap<Vec<u32>, usize>,
    min_inf: Vec<InfFactorization>,
}

impl PartialEq for KunzPoint {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.x == other.x
    }
}

impl KunzPoint {
    /// Validates `x` (length `m`, `x_0 = 0`, nonnegative, all polytope
    /// inequalities) and builds the derived data.
    pub fn new(ctx: &KunzContext, x: Vec<i64>) -> Result<Self> {
        let m = ctx.m;
        if x.len() != m {
            return Err(Error::PointLength { expected: m, found: x.len() });
        }
        if x[0] != 0 {
            return Err(Error::NonzeroOrigin(x[0]));
        }
        if let Some(i) = x.iter().position(|&v| v < 0) {
            return Err(Error::NegativeCoordinate(i));
        }
        let mut tight = vec![vec![false; m]; m];
        for a in 0..m {
            for b in 0..m {
                let lhs = x[a] + x[b] + ctx.d(a, b);
                let rhs = x[ctx.add(a, b)];
                if lhs < rhs {
                    return Err(Error::InequalityViolated { alpha: a, beta: b });
                }
                tight[a][b] = lhs == rhs;
            }
        }
        let mut point = KunzPoint {
            ctx: ctx.clone(),
            x,
            tight,
            atoms: Vec::new(),
            finite: HashMap::new(),
            min_inf: Vec::new(),
        };
        point.atoms = (1..m)
            .filter(|&a| !(1..m).any(|b| (1..m).any(|c| point.oplus(PInf::Elem(b), PInf::Elem(c)) == PInf::Elem(a))))
            .collect();
        point.build_factorizations();
        Ok(point)
    }

    /// Parses a comma-separated coordinate list.
    pub fn parse(ctx: &KunzContext, text: &str) -> Result<Self> {
        KunzPoint::new(ctx, parse_coordinates(text)?)
    }

    pub fn context(&self) -> &KunzContext {
        &self.ctx
    }

    pub fn coords(&self) -> &[i64] {
        &self.x
    }

    pub fn modulus(&self) -> usize {
        self.ctx.m
    }

    /// The Apéry element `x_α m + α`.
    pub fn apery_element(&self, a: usize) -> i64 {
        self.x[a] * self.ctx.m as i64 + a as i64
    }

    /// `E(x)`: pairs `(α, β)` with `x_α + x_β + d_{α,β} = x_{α+β}`.
    pub fn equality_set(&self) -> BTreeSet<(usize, usize)> {
        let m = self.ctx.m;
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| self.tight[a][b])
            .collect()
    }

    pub fn same_face(&self, other: &KunzPoint) -> bool {
        self.ctx == other.ctx && self.tight == other.tight
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.tight[a][self.ctx.sub(b, a)]
    }

    /// All pairs `α ⪯ β`, reflexive ones included.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let m = self.ctx.m;
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| self.precedes(a, b))
            .collect()
    }

    /// Cover relations of `⪯`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.ctx.m;
        self.relations()
            .into_iter()
            .filter(|&(a, b)| a != b && !(0..m).any(|g| g != a && g != b && self.precedes(a, g) && self.precedes(g, b)))
            .collect()
    }

    pub fn oplus(&self, a: PInf, b: PInf) -> PInf {
        match (a, b) {
            (PInf::Elem(a), PInf::Elem(b)) if self.tight[a][b] => PInf::Elem(self.ctx.add(a, b)),
            _ => PInf::Infinity,
        }
    }

    /// Atoms of `P^∞`, ascending.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Smallest `k` with the `k`-fold `⊕`-power of `α` equal to `∞`.
    pub fn nil_index(&self, a: usize) -> Option<u32> {
        let mut acc = PInf::Elem(a);
        for k in 1..=self.ctx.m as u32 + 1 {
            if acc == PInf::Infinity {
                return Some(k);
            }
            acc = self.oplus(acc, PInf::Elem(a));
        }
        None
    }

    /// `x_α + x_{-α} + d_{α,-α} > x_0` for every nonzero `α`.
    pub fn is_reduced(&self) -> bool {
        (1..self.ctx.m).all(|a| {
            let na = self.ctx.sub(0, a);
            self.x[a] + self.x[na] + self.ctx.d(a, na) > self.x[0]
        })
    }

    /// A vector `c` over the residues with `Σ c_α (x_α m + α) = m`, if any;
    /// `m` is an atom of `ρ(x)` exactly when there is none.
    pub fn m_decomposition(&self) -> Option<Vec<u32>> {
        let m = self.ctx.m;
        let mut c = vec![0u32; m];
        fn go(p: &KunzPoint, a: usize, rest: i64, c: &mut Vec<u32>) -> bool {
            if rest == 0 {
                return true;
            }
            if a == 0 {
                return false;
            }
            let v = p.apery_element(a);
            for k in (0..=rest / v).rev() {
                c[a] = k as u32;
                if go(p, a - 1, rest - k * v, c) {
                    return true;
                }
            }
            c[a] = 0;
            false
        }
        go(self, m - 1, m as i64, &mut c).then_some(c)
    }

    pub fn is_m_atom(&self) -> bool {
        self.m_decomposition().is_none()
    }

    fn product(&self, c: &[u32]) -> PInf {
        let mut acc = PInf::Elem(0);
        for (&k, &a) in c.iter().zip(&self.atoms) {
            for _ in 0..k {
                acc = self.oplus(acc, PInf::Elem(a));
            }
        }
        acc
    }

    fn build_factorizations(&mut self) {
        if !self.is_reduced() {
            return;
        }
        let n = self.atoms.len();
        let mut finite: HashMap<Vec<u32>, usize> = HashMap::new();
        let zero = vec![0u32; n];
        finite.insert(zero.clone(), 0);
        let mut queue = VecDeque::from([(zero, 0usize)]);
        let mut boundary: BTreeSet<Vec<u32>> = BTreeSet::new();
        while let Some((c, beta)) = queue.pop_front() {
            for i in 0..n {
                let mut next = c.clone();
                next[i] += 1;
                if finite.contains_key(&next) {
                    continue;
                }
                match self.oplus(PInf::Elem(beta), PInf::Elem(self.atoms[i])) {
                    PInf::Elem(b) => {
                        finite.insert(next.clone(), b);
                        queue.push_back((next, b));
                    }
                    PInf::Infinity => {
                        boundary.insert(next);
                    }
                }
            }
        }
        let min_inf = boundary
            .into_iter()
            .filter(|c| {
                (0..n).filter(|&i| c[i] > 0).all(|i| {
                    let mut d = c.clone();
                    d[i] -= 1;
                    finite.contains_key(&d)
                })
            })
            .map(|c| {
                let (beta, d_value) = self.ctx.d_vec(&c, &self.atoms);
                InfFactorization { c, beta, d_value }
            })
            .collect();
        self.finite = finite;
        self.min_inf = min_inf;
    }

    /// `min_≤ Z_{P^∞}(∞)`, sorted; empty for non-reduced points.
    pub fn min_inf_factorizations(&self) -> &[InfFactorization] {
        &self.min_inf
    }

    /// Product of `c` under `⊕`.
    pub fn evaluate(&self, c: &[u32]) -> PInf {
        self.product(c)
    }

    /// Longest and shortest `⊕`-factorization lengths of `β` into atoms.
    pub fn pinfty_length_extremes(&self, beta: usize) -> Result<(u32, u32)> {
        if beta == 0 {
            return Ok((0, 0));
        }
        self.finite
            .iter()
            .filter(|(_, &b)| b == beta)
            .map(|(c, _)| c.iter().sum::<u32>())
            .fold(None, |acc: Option<(u32, u32)>, l| Some(acc.map_or((l, l), |(a, b)| (a.max(l), b.min(l)))))
            .ok_or(Error::NoFactorization(beta))
    }

    /// `(d_{(c)}, b_{(c),(c')})` for vectors over the atoms.
    pub fn structure_constants(&self, c: &[u32], c2: &[u32]) -> Result<(i64, i64)> {
        Ok((self.ctx.d_vec(c, &self.atoms).1, self.ctx.b(c, c2, &self.atoms)?))
    }

    /// `c ⊑ c'`: `-x_{β'-β} + Σ (c' - c) x ≥ b_{(c),(c')}`.
    pub fn sq_leq(&self, c: &[u32], c2: &[u32]) -> bool {
        let (beta, _) = self.ctx.d_vec(c, &self.atoms);
        let (beta2, _) = self.ctx.d_vec(c2, &self.atoms);
        let lhs = -self.x[self.ctx.sub(beta2, beta)]
            + c.iter()
                .zip(c2)
                .zip(&self.atoms)
                .map(|((&a, &b), &r)| (b as i64 - a as i64) * self.x[r])
                .sum::<i64>();
        lhs >= self.ctx.b(c, c2, &self.atoms).expect("b is integral by construction")
    }

    /// Pseudominimal elements of `min_≤ Z_{P^∞}(∞)` under `⊑`.
    pub fn pseudomin(&self) -> Vec<InfFactorization> {
        self.min_inf
            .iter()
            .filter(|c| {
                self.min_inf
                    .iter()
                    .all(|y| !self.sq_leq(&y.c, &c.c) || self.sq_leq(&c.c, &y.c))
            })
            .cloned()
            .collect()
    }

    /// Evaluation of `c` in `ρ(x)`: `Σ c_α (x_α m + α)`.
    pub fn semigroup_value(&self, c: &[u32]) -> i64 {
        c.iter().zip(&self.atoms).map(|(&k, &a)| k as i64 * self.apery_element(a)).sum()
    }

    /// Final form of the criterion: one inequality per pseudominimal
    /// vector (of length > 2 for the longest formula).
    pub fn main_verdict(&self, formula: Formula) -> Result<KunzVerdict> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        if let Some(witness) = self.m_decomposition() {
            return Err(Error::MNotAtomAtPoint { witness });
        }
        let m = self.ctx.m;
        let mut templates = Vec::new();
        for inf in self.pseudomin() {
            if formula == Formula::LongestPlusOne && inf.length() <= 2 {
                continue;
            }
            let mut coefficients = vec![0i64; m];
            coefficients[inf.beta] -= 1;
            for (&k, &a) in inf.c.iter().zip(&self.atoms) {
                coefficients[a] += k as i64;
            }
            let (long, short) = self.pinfty_length_extremes(inf.beta)?;
            let p_len = match formula {
                Formula::LongestPlusOne => long,
                Formula::ShortestPlusOne => short,
            };
            let rhs = inf.length() as i64 - inf.d_value - p_len as i64;
            let lhs_value: i64 = coefficients.iter().zip(&self.x).map(|(a, b)| a * b).sum();
            let relation = match formula {
                Formula::LongestPlusOne => Relation::Ge,
                Formula::ShortestPlusOne => Relation::Le,
            };
            let satisfied = match relation {
                Relation::Ge => lhs_value >= rhs,
                Relation::Le => lhs_value <= rhs,
            };
            templates.push(Template {
                c: inf.c,
                beta: inf.beta,
                coefficients,
                relation,
                rhs,
                lhs_value,
                satisfied,
            });
        }
        Ok(KunzVerdict {
            formula,
            m: m as i64,
            holds: templates.iter().all(|t| t.satisfied),
            atoms: self.atoms.clone(),
            templates,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

/// `Σ coefficients_α x_α (relation) rhs`, evaluated at the point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Template {
    pub c: Vec<u32>,
    pub beta: usize,
    pub coefficients: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
    pub lhs_value: i64,
    pub satisfied: bool,
}

impl Template {
    /// The target coordinate first, then the others ascending, e.g.
    /// `-x_3 + 3x_1 >= 2`.
    pub fn render(&self) -> String {
        let mut order = vec![self.beta];
        order.extend((0..self.coefficients.len()).filter(|&a| a != self.beta));
        let mut out = String::new();
        for a in order {
            let k = self.coefficients[a];
            if k == 0 {
                continue;
            }
            let sign = if k < 0 { "-" } else { "+" };
            if out.is_empty() {
                if k < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if k.abs() != 1 {
                out.push_str(&k.abs().to_string());
            }
            out.push_str(&format!("x_{a}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        let rel = match self.relation {
            Relation::Ge => ">=",
            Relation::Le => "<=",
        };
        format!("{out} {rel} {}", self.rhs)
    }
}

impl Serialize for KunzVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rendered: Vec<String> = self.templates.iter().map(Template::render).collect();
        let mut st = serializer.serialize_struct("KunzVerdict", 7)?;
        st.serialize_field("formula", &self.formula)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("method", &crate::verdict::Method::KunzCriterion)?;
        st.serialize_field("atoms", &self.atoms)?;
        st.serialize_field("templates", &self.templates)?;
        st.serialize_field("inequalities", &rendered)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunzVerdict {
    pub formula: Formula,
    pub m: i64,
    pub holds: bool,
    pub atoms: Vec<usize>,
    pub templates: Vec<Template>,
}

/// Parses `0,1,2,1,2` (parentheses and spaces allowed).
pub fn parse_coordinates(text: &str) -> Result<Vec<i64>> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>().map_err(|_| Error::NotIntegerPoint(t.to_string()))
        })
        .collect()
}

/// `x_α = (w_α - α) / m` for the Apéry set `{w_α}` of `S` with respect to `m`.
pub fn point_of_semigroup(ctx: &KunzContext, s: &Semigroup) -> Result<KunzPoint> {
    let m = ctx.m as i64;
    let apery = s.apery_set(m)?;
    let x = apery.iter().enumerate().map(|(a, &w)| (w - a as i64) / m).collect();
    KunzPoint::new(ctx, x)
}

/// `ρ(x) = <m, x_α m + α>`, reduced to its minimal generators.
pub fn semigroup_of_point(point: &KunzPoint) -> Semigroup {
    let m = point.modulus();
    let gens: Vec<Element> = std::iter::once(m as i64)
        .chain((1..m).map(|a| point.apery_element(a)))
        .map(Element::scalar)
        .collect();
    Semigroup::from_generating_set(gens, 1).expect("positive generators with gcd 1")
}

/// Whether two points of one face interior have the same pseudominimal sets.
pub fn cominimal(x: &KunzPoint, y: &KunzPoint) -> Result<bool> {
    if x.ctx != y.ctx {
        return Err(Error::ContextMismatch);
    }
    if !x.same_face(y) {
        return Err(Error::DifferentFace);
    }
    Ok(x.pseudomin() == y.pseudomin())
}

/// Every valid integer point with coordinates in `0..=max`, in
/// lexicographic order.
pub fn integer_points(ctx: &KunzContext, max: i64) -> Vec<Vec<i64>> {
    let m = ctx.m;
    let mut out = Vec::new();
    let mut x = vec![0i64; m];
    // Assign coordinates in index order; an inequality is checked as soon
    // as all three of its coordinates are assigned.
    fn go(ctx: &KunzContext, i: usize, max: i64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let m = ctx.m;
        if i == m {
            out.push(x.clone());
            return;
        }
        for v in 0..=max {
            x[i] = v;
            let ok = (0..=i).all(|a| {
                (0..=i).all(|b| {
                    let c = ctx.add(a, b);
                    c > i || (a != i && b != i && c != i) || x[a] + x[b] + ctx.d(a, b) >= x[c]
                })
            });
            if ok {
                go(ctx, i + 1, max, x, out);
            }
        }
        x[i] = 0;
    }
    go(ctx, 1, max, &mut x, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx5() -> KunzContext {
        KunzContext::numerical(5).unwrap()
    }

    fn pt(x: &[i64]) -> KunzPoint {
        KunzPoint::new(&ctx5(), x.to_vec()).unwrap()
    }

    #[test]
    fn context_constants() {
        let c = ctx5();
        assert_eq!(c.d(1, 4), 1);
        assert_eq!(c.d(1, 2), 0);
        assert_eq!(KunzContext::numerical(2).unwrap().d(1, 1), 1);
        assert_eq!(KunzContext::numerical(1), Err(Error::BadModulus(1)));
    }

    #[test]
    fn point_validation() {
        let c = ctx5();
        assert!(matches!(KunzPoint::new(&c, vec![0, 1]), Err(Error::PointLength { expected: 5, found: 2 })));
        assert_eq!(KunzPoint::new(&c, vec![1, 1, 2, 1, 2]), Err(Error::NonzeroOrigin(1)));
        assert_eq!(KunzPoint::new(&c, vec![0, 1, 3, 1, 2]), Err(Error::InequalityViolated { alpha: 1, beta: 1 }));
        assert_eq!(KunzPoint::parse(&c, "0,1,x,1,2"), Err(Error::NotIntegerPoint("x".into())));
        assert_eq!(KunzPoint::new(&c, vec![0, -1, 0, 0, 0]), Err(Error::NegativeCoordinate(1)));
    }

    #[test]
    fn bijection_on_examples() {
        let c = ctx5();
        let s = Semigroup::numerical(&[5, 6, 8]).unwrap();
        assert_eq!(point_of_semigroup(&c, &s).unwrap().coords(), &[0, 1, 2, 1, 2]);
        let s = Semigroup::numerical(&[5, 13, 16]).unwrap();
        assert_eq!(point_of_semigroup(&c, &s).unwrap().coords(), &[0, 3, 6, 2, 5]);
        let c2 = KunzContext::numerical(2).unwrap();
        assert_eq!(point_of_semigroup(&c2, &Semigroup::numerical(&[2, 3]).unwrap()).unwrap().coords(), &[0, 1]);

        for (x, g) in [
            (vec![0, 1, 2, 1, 2], vec![5, 6, 8]),
            (vec![0, 11, 22, 32, 43], vec![5, 56, 163]),
            (vec![0, 3, 6, 8, 11], vec![5, 16, 43]),
            (vec![0, 3, 6, 2, 5], vec![5, 13, 16]),
        ] {
            assert_eq!(semigroup_of_point(&pt(&x)).scalar_generators().unwrap(), g);
        }
    }

    #[test]
    fn poset_of_example() {
        let p = pt(&[0, 1, 2, 1, 2]);
        assert_eq!(p.covers(), vec![(0, 1), (0, 3), (1, 2), (1, 4), (3, 4)]);
        let q = pt(&[0, 11, 22, 32, 43]);
        assert_eq!(p.relations(), q.relations());
        assert_eq!(p.equality_set(), q.equality_set());
        let two = KunzPoint::new(&KunzContext::numerical(2).unwrap(), vec![0, 1]).unwrap();
        assert_eq!(two.covers(), vec![(0, 1)]);
    }

    #[test]
    fn oplus_and_atoms() {
        let p = pt(&[0, 1, 2, 1, 2]);
        assert_eq!(p.oplus(PInf::Elem(1), PInf::Elem(1)), PInf::Elem(2));
        assert_eq!(p.oplus(PInf::Elem(1), PInf::Elem(2)), PInf::Infinity);
        assert_eq!(p.oplus(PInf::Elem(3), PInf::Infinity), PInf::Infinity);
        assert_eq!(p.atoms(), &[1, 3]);
        assert_eq!(p.atoms().iter().map(|&a| p.apery_element(a)).collect::<Vec<_>>(), vec![6, 8]);
        assert_eq!(p.nil_index(1), Some(3));
    }

    #[test]
    fn inf_factorizations_and_lengths() {
        let p = pt(&[0, 1, 2, 1, 2]);
        let cs: Vec<Vec<u32>> = p.min_inf_factorizations().iter().map(|f| f.c.clone()).collect();
        assert_eq!(cs, vec![vec![0, 2], vec![2, 1], vec![3, 0]]);
        assert_eq!(p.pinfty_length_extremes(3), Ok((1, 1)));
        assert_eq!(p.pinfty_length_extremes(0), Ok((0, 0)));
        assert_eq!(p.pinfty_length_extremes(2), Ok((2, 2)));
    }

    #[test]
    fn structure_constants_and_preorder() {
        let p = pt(&[0, 1, 2, 1, 2]);
        assert_eq!(p.structure_constants(&[3, 0], &[0, 2]), Ok((0, 0)));
        assert_eq!(p.structure_constants(&[0, 2], &[3, 0]).unwrap().1, 1);
        assert!(!p.sq_leq(&[3, 0], &[0, 2]));
        assert!(!p.sq_leq(&[0, 2], &[3, 0]));
        assert!(p.sq_leq(&[2, 1], &[2, 1]));
        assert_eq!(p.pseudomin().len(), 3);
    }

    #[test]
    fn cominimality() {
        let p = pt(&[0, 1, 2, 1, 2]);
        assert_eq!(cominimal(&p, &pt(&[0, 11, 22, 32, 43])), Ok(true));
        assert_eq!(cominimal(&p, &pt(&[0, 3, 6, 8, 11])), Ok(true));
        assert_eq!(cominimal(&p, &pt(&[0, 3, 6, 2, 5])), Ok(true));
        assert_eq!(cominimal(&p, &p), Ok(true));
        assert_eq!(cominimal(&p, &pt(&[0, 1, 1, 1, 1])), Err(Error::DifferentFace));
        let other = KunzPoint::new(&KunzContext::numerical(2).unwrap(), vec![0, 1]).unwrap();
        assert_eq!(cominimal(&p, &other), Err(Error::ContextMismatch));
    }

    #[test]
    fn reduced_and_m_atom() {
        let p = pt(&[0, 1, 2, 1, 2]);
        assert!(p.is_reduced() && p.is_m_atom());
        let z = pt(&[0, 0, 0, 0, 0]);
        assert_eq!(z.m_decomposition(), Some(vec![0, 1, 0, 0, 1]));
        assert!(matches!(z.main_verdict(Formula::LongestPlusOne), Err(Error::MNotAtomAtPoint { .. })));
    }

    #[test]
    fn main_verdict_examples() {
        let v = pt(&[0, 1, 2, 1, 2]).main_verdict(Formula::LongestPlusOne).unwrap();
        assert!(v.holds);
        let rendered: Vec<String> = v.templates.iter().map(Template::render).collect();
        assert_eq!(rendered, vec!["-x_0 + 2x_1 + x_3 >= 2", "-x_3 + 3x_1 >= 2"]);
        assert!(!pt(&[0, 11, 22, 32, 43]).main_verdict(Formula::LongestPlusOne).unwrap().holds);
        assert!(pt(&[0, 3, 6, 2, 5]).main_verdict(Formula::LongestPlusOne).unwrap().holds);
        assert!(!pt(&[0, 3, 6, 8, 11]).main_verdict(Formula::LongestPlusOne).unwrap().holds);
    }

    #[test]
    fn enumeration_matches_filter() {
        let c = KunzContext::numerical(4).unwrap();
        let fast = integer_points(&c, 3);
        let mut slow = Vec::new();
        for a in 0..=3 {
            for b in 0..=3 {
                for d in 0..=3 {
                    if KunzPoint::new(&c, vec![0, a, b, d]).is_ok() {
                        slow.push(vec![0, a, b, d]);
                    }
                }
            }
        }
        assert_eq!(fast, slow);
    }
}
