use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a valid simply-laced Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("unknown root system type {0:?}")]
    UnknownType(String),
    #[error("invalid simple-root order: {0}")]
    InvalidOrder(String),
    #[error("simple index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector {0:?} is not a root of this system")]
    NotARoot(Vec<i32>),
    #[error("elements belong to different root systems")]
    MismatchedSystems,
    #[error("word is not reduced; failing prefix {prefix:?}")]
    NotReduced { prefix: Vec<usize> },
    #[error("element is not an involution")]
    NotInvolution,
    #[error("divisor is not a nonzero homogeneous linear form")]
    NotLinear,
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("residual denominator after clearing positive roots: {0:?}")]
    ResidualDenominator(Vec<usize>),
    #[error("term budget exceeded ({terms} > {budget})")]
    BudgetExceeded { terms: usize, budget: usize },
    #[error("word length {len} exceeds brute-force cap {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("root {0} is not in the first column")]
    NotInFirstColumn(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
