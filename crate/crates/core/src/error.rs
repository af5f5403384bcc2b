use thiserror::Error;

use crate::exactmat::MatrixError;
use crate::graphs::{Graph6Error, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not pattern polynomial (ell = {ell}, r = {r})")]
    NotPatternPolynomial { ell: usize, r: usize },
    #[error("graph is not a polynomial in the base graph")]
    NotPolynomial,
    #[error("vertex counts differ: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },
    #[error("pattern class index {index} out of range (r = {r})")]
    ClassOutOfRange { index: usize, r: usize },
    #[error("graph has no edges")]
    Edgeless,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
