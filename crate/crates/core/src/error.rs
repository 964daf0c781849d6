use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("operation requires a simple graph, found a loop at vertex {0}")]
    LoopsNotAllowed(usize),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("{0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("graph on {n} vertices exceeds the size bound {bound}")]
    SizeBound { n: usize, bound: usize },

    #[error("component {0} is not in the basis")]
    ComponentOutsideBasis(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("identity `{0}` needs a second right-hand graph")]
    MissingRightGraph(&'static str),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("the graph is in the homomorphism distinguishing closure; no witness exists")]
    InClosure,

    #[error("probe search exhausted: {0}")]
    SearchExhausted(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("too many component types ({found}, limit {limit})")]
    TooManyComponents { found: usize, limit: usize },

    #[error("graph has {found} edges, expansion limit is {limit}")]
    TooManyEdges { found: usize, limit: usize },

    #[error("variable `{0}` is free but not assigned")]
    UncoveredVariable(String),

    #[error("formula #{0} is not a sentence")]
    NotASentence(usize),
}

impl Error {
    /// True for errors caused by a configured resource bound rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::SizeBound { .. }
                | Error::SearchExhausted(_)
                | Error::TooManyComponents { .. }
                | Error::TooManyEdges { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
