use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("t-exponents differ: {0} vs {1}")]
    TExpMismatch(String, String),
    #[error("overall powers of i differ by an odd amount (i^{0} vs i^{1})")]
    UnitMismatch(u8, u8),
    #[error("series live in different weight spaces")]
    SpaceMismatch,
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("truncation after this transform needs a support bound, and the series has none")]
    UnboundedSupport,
    #[error("unsupported Cartan type {0:?}")]
    UnsupportedType(String),
    #[error("zero vector has no coroot")]
    ZeroRoot,
    #[error("Weyl group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("vector is not in the dual lattice Q*")]
    NotInDualLattice,
    #[error("u = {u} is not a boundary denominator: {reason}")]
    InvalidU { u: i64, reason: String },
    #[error("level k = -h∨ is critical")]
    CriticalLevel,
    #[error("descriptors belong to different levels or algebras")]
    LevelMismatch,
    #[error("Verlinde sum {value} is not within {tol} of an integer")]
    NonIntegerFusion { value: f64, tol: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("square root in the W-denominator is not a series: {0}")]
    SquareRootNotSeries(String),
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
}
