use thiserror::Error;

use crate::semigroup::Element;

/// Errors produced by the semigroup, factorization and Kunz routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a semigroup needs at least one generator")]
    NoGenerators,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator {0} is zero")]
    ZeroGenerator(Element),

    #[error("no positive grading found with coefficients in [-{bound}, {bound}]")]
    NotPointed { bound: i64 },

    #[error("generator {generator} is not minimal: {generator} = {}", render_witness(.witness))]
    NotMinimal {
        generator: Element,
        witness: Vec<(Element, u32)>,
    },

    #[error("semigroup is not numerical (needs dimension 1 and gcd 1)")]
    NotNumerical,

    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(Element),

    #[error("{0} is not a minimal generator of the semigroup")]
    MNotAtom(Element),

    #[error("factorization vector has {found} coordinates, expected {expected}")]
    VectorLength { expected: usize, found: usize },

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("report was produced for a different (semigroup, atom) pair")]
    ReportMismatch,

    #[error("semigroup does not have embedding dimension 3")]
    NotEmbDim3,

    #[error("affine oracle scans need an explicit bound (or allow the default)")]
    MissingBound,

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),

    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },

    #[error("coordinate {0:?} is not an integer")]
    NotIntegerPoint(String),

    #[error("coordinate x_0 must be 0, got {0}")]
    NonzeroOrigin(i64),

    #[error("coordinate x_{0} is negative")]
    NegativeCoordinate(usize),

    #[error("inequality x_{alpha} + x_{beta} + d >= x_(alpha+beta) violated at ({alpha}, {beta})")]
    InequalityViolated { alpha: usize, beta: usize },

    #[error("points do not lie in the interior of the same face")]
    DifferentFace,

    #[error("points belong to different Kunz contexts")]
    ContextMismatch,

    #[error("residue {0} has no factorization into atoms of the Kunz nilsemigroup")]
    NoFactorization(usize),

    #[error("point does not give a reduced semigroup")]
    NotReduced,

    #[error("m is not an atom at this point (witness {witness:?})")]
    MNotAtomAtPoint { witness: Vec<u32> },

    #[error("structure constant is not integral")]
    NonIntegral,

    #[error("parse error: {0}")]
    Parse(String),
}

fn render_witness(witness: &[(Element, u32)]) -> String {
    witness
        .iter()
        .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{k}*{g}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
