use thiserror::Error;

/// Row/column count of a relation, used in error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// The first condition of uniformity a relation fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformityViolation {
    Incomplete { row: usize },
    NotSurjective { col: usize },
    NotPartialUniform { row: usize, col: usize },
}

impl std::fmt::Display for UniformityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Incomplete { row } => write!(f, "incomplete: row {row} is empty"),
            Self::NotSurjective { col } => write!(f, "not surjective: column {col} is empty"),
            Self::NotPartialUniform { row, col } => {
                write!(f, "not partial uniform: ({row},{col}) is in R∘R⁻¹∘R but not in R")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left} and {right}")]
    DimensionMismatch { op: &'static str, left: Shape, right: Shape },

    #[error("relation of shape {0} is not an equivalence")]
    NotEquivalence(Shape),

    #[error("partition sizes differ: {0} vs {1}")]
    PartitionSizeMismatch(usize, usize),

    #[error("partition does not refine the coarser one: ({0},{1}) is related in the finer but not the coarser")]
    NotRefinement(usize, usize),

    #[error("relation is not uniform ({0})")]
    NotUniform(UniformityViolation),

    #[error("relation is not a function: row {row} has {count} entries")]
    NotFunctional { row: usize, count: usize },

    #[error("relation must be non-empty")]
    EmptyRelation,

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("alphabets differ: [{}] vs [{}]", .0.join(" "), .1.join(" "))]
    AlphabetMismatch(Vec<String>, Vec<String>),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("state set to keep is empty")]
    EmptyKeepSet,

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("density {0} is outside [0, 1]")]
    InvalidDensity(f64),

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{0}")]
    Io(String),

    #[error("{0} is not supported")]
    Unsupported(String),

    #[error("cross-check disagreement: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
