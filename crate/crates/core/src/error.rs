use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0} is not present")]
    EdgeNotPresent(Edge),
    #[error("input contains a cycle")]
    ContainsCycle,
    #[error("input is not a tree")]
    NotATree,
    #[error("order {order} is below the minimum {min}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("order {order} exceeds the solver cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("assignment has length {got}, graph has order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid assignment digit {0:?}")]
    InvalidDigit(char),
    #[error("invalid gadget parameter: {0}")]
    InvalidGadget(String),
    #[error("certificate step {step}: {reason}")]
    SideCondition { step: usize, reason: String },
    #[error("every allowed color set must be nonempty (vertex {0})")]
    EmptyConstraint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("header prefixes are not accepted")]
    Header,
    #[error("sparse6/digraph6 input is not supported")]
    NotGraph6,
    #[error("long-form orders (n > 62) are not supported")]
    LongForm,
    #[error("character {0:?} at position {1} is out of range")]
    BadChar(char, usize),
    #[error("expected {expected} data characters, found {found}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    TrailingBits,
    #[error("order {0} cannot be encoded in short form")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
