//! Finite criteria for the formulas `L(s + m) = L(s) + 1` and
//! `ℓ(s + m) = ℓ(s) + 1` in finitely generated reduced cancellative
//! semigroups, together with brute-force oracles for both.

pub mod corpus;
pub mod diophantine;
pub mod error;
pub mod factorization;
pub mod input;
pub mod kunz;
pub mod minrepl;
pub mod semigroup;
pub mod verdict;

pub use error::{Error, Result};
pub use factorization::{Factorization, DEFAULT_BUDGET};
pub use minrepl::MinReplReport;
pub use semigroup::{Element, Semigroup};
pub use verdict::{CandidateMode, Formula, Method, Verdict};
