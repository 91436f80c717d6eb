//! Distributive lattices of Dyck paths avoiding `DUU` and `D^(p+1)`.
//!
//! The paths of semilength `n` avoiding both patterns are counted by the
//! p-generalized Fibonacci numbers and form a sublattice of the Stanley
//! lattice for every `p` (including the `DUU`-only family at `p = inf`,
//! counted by `2^(n-1)`). This crate materializes those lattices and
//! everything needed to study them at desk scale:
//!
//! * [`dyckpath`] — path representation, family membership, enumeration;
//! * [`lattice`] — order, meet/join, covers, irreducibles, rank;
//! * [`intervals`] — boolean/linear interval classification and Möbius values;
//! * [`motzkin`] — the interval <-> bicolored-Motzkin-path bijections;
//! * [`bijections`] — Catalan words, compositions (dominance order), subsets;
//! * [`series`] — exact truncated power series and the closed-form
//!   generating functions every brute-force count is checked against;
//! * [`check`] — the brute-force-vs-formula verification harness.

pub mod bijections;
pub mod check;
pub mod dyckpath;
pub mod intervals;
pub mod lattice;
pub mod motzkin;
pub mod series;

pub use dyckpath::{DyckPath, FamilyParam, HeightProfile};

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("bad character {0:?} in step string")]
    BadCharacter(char),
    #[error("operation undefined on the empty path")]
    EmptyPath,
    #[error("path is not in the family F_n^{0}")]
    NotInFamily(FamilyParam),
    #[error("semilength mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("size guard tripped: {0}")]
    SizeGuard(String),
    #[error("composition totals differ: {0} vs {1}")]
    TotalMismatch(usize, usize),
    #[error("ambient sizes differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("invalid Catalan word: {0}")]
    InvalidWord(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("Motzkin word violates the pattern restrictions for p={0}")]
    PatternViolation(FamilyParam),
    #[error("Motzkin word leaves the quarter plane at step {0}")]
    QuarterPlaneViolation(usize),
    #[error("step demands an insertion the replay rules forbid at step {0}")]
    IllegalInsertion(usize),
    #[error("series division needs a unit denominator: {0}")]
    NonUnitDenominator(String),
    #[error("series square root needs constant term 1")]
    BadConstantTerm,
}

pub type Result<T> = std::result::Result<T, Error>;
