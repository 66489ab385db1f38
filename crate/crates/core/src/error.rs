use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("arrow {arrow}: {field} index {index} out of range")]
    VertexOutOfRange { arrow: usize, field: &'static str, index: usize },
    #[error("arrow index {0} out of range")]
    ArrowOutOfRange(usize),
    #[error("{flows} flows given for {arrows} arrows")]
    FlowCount { arrows: usize, flows: usize },
    #[error("flow not conserved at {vertex:?}: outgoing {outgoing}, incoming {incoming}")]
    NotConserved { vertex: String, outgoing: BigInt, incoming: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("line {line} column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

/// Any error the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Link(#[from] crate::link::LinkError),
    #[error(transparent)]
    Move(#[from] crate::moves::MoveError),
    #[error(transparent)]
    Quandle(#[from] crate::quandle::QuandleError),
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
    #[error(transparent)]
    Census(#[from] crate::census::CensusError),
    #[error(transparent)]
    FiniteType(#[from] crate::finite_type::EvaluateError),
    #[error("{0}")]
    Parse(String),
}
