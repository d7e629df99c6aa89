use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants flagged as theorem violations are raised by the checking hooks
/// and should never fire on valid inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pair {{{0},{1}}} is not covered by any block")]
    PairUncovered(usize, usize),
    #[error("pair {{{0},{1}}} is covered by more than one block")]
    PairDoubleCovered(usize, usize),
    #[error("block {0:?} has fewer than two points")]
    BlockTooSmall(Vec<usize>),
    #[error("degenerate design: {0}")]
    DegenerateCase(&'static str),
    #[error("point {point} out of range for a ground set of {size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("{what} exceeds the supported size ({size} > {cap})")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("no finite field backend for q = {0}")]
    UnsupportedField(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("result is not a pairwise balanced design: {0}")]
    ResultNotPbd(Box<Error>),
    #[error("design is not uniform (block sizes {0:?})")]
    NotUniform(Vec<usize>),
    #[error("complex is not a simple matroid of rank 3")]
    NotSimpleRank3Matroid,
    #[error("set {0:?} is not both a circuit and a hyperplane")]
    NotCircuitHyperplane(Vec<usize>),
    #[error("map is not a morphism")]
    NotAMorphism,
    #[error("fibers have different sizes: {0:?}")]
    NonUniformFibers(Vec<usize>),
    #[error("map has empty image")]
    EmptyImage,
    #[error("preimage of the block is empty")]
    EmptyFiber,
    #[error("GDD axiom fails for pair {{{0},{1}}}: {2}")]
    GddAxiomViolation(usize, usize, &'static str),
    #[error("invalid Latin square: {0}")]
    NotLatin(String),
    #[error("structure matrix is not reduced")]
    NotReduced,
    #[error("index set is not a two-sided ideal")]
    NotAnIdeal,
    #[error("J-class {0} is not regular")]
    NotRegularClass(usize),
    #[error("monoid has no zero")]
    NoZero,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("domain {0:?} is not open")]
    DomainNotOpen(Vec<usize>),
    #[error("map is not in the monoid")]
    NotInMonoid,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("two characterizations disagree: {0}")]
    CharacterizationMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
