use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input exceeded a hard size cap (vertex/edge counts, terminal
    /// counts for the pairing solver, enumeration limits, ...).
    #[error("size cap exceeded: {what} is {actual}, cap is {limit}")]
    SizeCap {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// An edge endpoint was out of range for the vertex count.
    #[error("vertex {vertex} out of range (vertex count {count})")]
    InvalidVertex { vertex: usize, count: usize },

    /// Self-loops are not representable.
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    /// The graph contains an odd circuit; the witness lists its vertices.
    #[error("graph is not bipartite (odd circuit through {witness:?})")]
    NotBipartite { witness: Vec<usize> },

    /// Some connected component holds an odd number of terminals.
    #[error("odd terminal count in the component containing vertex {component_min}")]
    Parity { component_min: usize },

    /// The operation requires a connected graph.
    #[error("graph is disconnected")]
    Disconnected,

    /// The edge set is not a join of the graft.
    #[error("edge set is not a join")]
    NotAJoin,

    /// The weighting admits a negative circuit, i.e. it did not come from
    /// a minimum join.
    #[error("weighting is not conservative (underlying join is not minimum)")]
    NonConservative,

    /// The vertex set is not extreme: the named pair has negative distance.
    #[error("vertex set is not extreme: distance({u}, {v}) = {distance}")]
    NotExtreme { u: usize, v: usize, distance: i64 },

    /// The root set meets both colour classes of the bipartition.
    #[error("root set is not homogeneous (meets both colour classes)")]
    NotHomogeneous,

    /// A root or mount set was empty.
    #[error("empty root set")]
    EmptyRootSet,

    /// A structural decomposition failed to verify; the payload says where.
    #[error("structure violation: {detail}")]
    StructureViolation { detail: String },

    /// A graft document failed to parse. Line 0 marks input that did not
    /// come from a file line (command-line arguments, programmatic
    /// construction).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A file could not be read or written.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Process exit code for the CLI: parse errors 2, parity 3, size caps 4,
    /// structure violations 5, everything else 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Parity { .. } => 3,
            Error::SizeCap { .. } => 4,
            Error::StructureViolation { .. } => 5,
            _ => 1,
        }
    }
}
