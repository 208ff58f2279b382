use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("det X^v = {0} is not a perfect square; not a block of a symplectic matrix")]
    NotLemmaTwoBlock(String),
    #[error("block D is singular; use the factorization path")]
    SingularBlock,
    #[error("no translation makes the D-block nonsingular")]
    DegenerateLift,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
