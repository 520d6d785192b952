use thiserror::Error;

/// Errors raised by the counting, recurrence and calculus engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension n = {0} is not supported (n must be at least 3)")]
    DimensionTooSmall(usize),

    #[error("dimension n = {n} exceeds the configured cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("operator index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("composition order k = {0} is not allowed here (k must be at least 1)")]
    OrderTooSmall(usize),

    #[error("{count} words exceed the enumeration cap of {cap}")]
    EnumerationCap { count: String, cap: usize },

    #[error("a composition word needs at least one operator")]
    EmptyWord,

    /// A non-meaningful composition: the nowhere-defined function.
    #[error("nabla_{first} followed by nabla_{second} is not composable (nowhere-defined)")]
    NotComposable { first: usize, second: usize },

    #[error("nabla_{operator} expects an input at level {expected}, got level {found}")]
    LevelMismatch {
        operator: usize,
        expected: usize,
        found: usize,
    },

    #[error("level {level} cannot be identified with forms of degree {degree} in dimension {n}")]
    IncompatibleDegree {
        level: usize,
        degree: usize,
        n: usize,
    },

    #[error("expected {expected} variables, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("invalid basis subset {subset:?} for a degree-{degree} form on R^{n}")]
    InvalidBasis {
        subset: Vec<usize>,
        degree: usize,
        n: usize,
    },

    #[error("component vector at level {level} needs {expected} entries, got {found}")]
    ComponentCount {
        level: usize,
        expected: usize,
        found: usize,
    },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("sequence has {got} terms, at least {needed} are required")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("no linear recurrence of order <= {max_order} fits the sequence")]
    NoRecurrence { max_order: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
