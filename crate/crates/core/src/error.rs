use crate::subset::Subset;

/// Which flat axiom a family failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatAxiom {
    /// Closure under intersection (the ground set counts as the empty
    /// intersection).
    Intersection,
    /// Minimal flats strictly above a flat must cover the ground set.
    Cover,
}

impl std::fmt::Display for FlatAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlatAxiom::Intersection => "(i)",
            FlatAxiom::Cover => "(ii)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("flat axiom {axiom} violated: {detail}")]
    AxiomViolation { axiom: FlatAxiom, detail: String },

    #[error("basis exchange fails for {first} and {second} at element {element}")]
    ExchangeViolation {
        first: Subset,
        second: Subset,
        element: usize,
    },

    #[error("circuit axioms violated: {0}")]
    CircuitViolation(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("element or subset out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matroid has loops")]
    HasLoops,

    #[error("matroid is not a combinatorial geometry")]
    NotSimple,

    #[error("invalid filter of flats: {0}")]
    InvalidFilter(String),

    #[error("element is not of top degree {expected} (got degree {got})")]
    NotTopDegree { expected: usize, got: usize },

    #[error("piecewise linear function is not ample: {0}")]
    NotAmple(String),

    #[error("{0} is not a maximal flat outside the filter")]
    NotMaximalFlat(Subset),

    #[error("relation not preserved by ring map: {0}")]
    RelationNotPreserved(String),

    #[error("cone is not in the fan")]
    ConeNotInFan,

    #[error("fan is not unimodular")]
    NotUnimodular,

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("integer overflow in exact elimination")]
    Overflow,

    #[error("division by T - 1 left remainder {0}")]
    NonzeroRemainder(i64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<crate::poly::NonzeroRemainder> for Error {
    fn from(e: crate::poly::NonzeroRemainder) -> Self {
        Error::NonzeroRemainder(e.remainder)
    }
}
