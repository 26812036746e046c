use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {0} exceeds the maximum of 64 vertices")]
    OversizeGraph(usize),

    #[error("bad construction at byte {offset}: {msg}")]
    BadSpec { offset: usize, msg: String },

    #[error("graph6 parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("operation needs at least one vertex")]
    EmptyGraph,

    #[error("color-class deletion is undefined for a graph without edges")]
    Undefined,

    #[error("graph has no edges")]
    NoEdges,

    #[error("n = {n} is above the enumeration limit of {limit}")]
    Oversize { n: usize, limit: usize },

    #[error("no {mode} graph on {n} vertices avoids the family")]
    NoAdmissibleGraph { n: usize, mode: &'static str },

    #[error("corrupt cache: {0}")]
    CorruptCache(String),

    #[error("path parameter k = {0} must be at least 2")]
    BadK(usize),

    #[error("parameters out of range: {0}")]
    BadRange(String),

    #[error("chromatic number {0} of H must exceed 2")]
    ChiTooSmall(usize),

    #[error("k = {0} must be even for this theorem")]
    OddK(usize),

    #[error("k = {0} must be odd for this theorem")]
    EvenK(usize),

    #[error("probe order {n} must exceed k = {k}")]
    ProbeTooSmall { n: usize, k: usize },

    #[error("graph has no path on {0} vertices")]
    NoWitnessPath(usize),

    #[error("graph contains a path on {0} vertices")]
    HasPk(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has a Hamiltonian path")]
    HamiltonianPath,

    #[error("hypothesis not met: {0}")]
    ConditionFails(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
