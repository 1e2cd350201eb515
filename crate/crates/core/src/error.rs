use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {0} is not supported")]
    UnsupportedRank(usize),

    #[error("not a permutation of 1..={n}: {entries:?}")]
    NotAPermutation { entries: Vec<usize>, n: usize },

    #[error("letter {letter} is out of range 1..={max}")]
    LetterOutOfRange { letter: usize, max: usize },

    #[error("position {position} is out of range 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),

    #[error("subset element {element} is out of range 1..={max}")]
    SubsetElementOutOfRange { element: usize, max: usize },

    #[error("{element} is not a member of the subset")]
    NotAMember { element: usize },

    #[error("not a Peterson fixed point: w^-1({index}) > w^-1({next}) + 1", next = .index + 1)]
    NotAPetersonFixedPoint { index: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division in Z[t]: {dividend} / {divisor}")]
    InexactDivision { dividend: String, divisor: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
