//! Error type shared by the whole library.

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: malformed edge line {text:?}")]
    Parse { line: usize, text: String },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("vertex id {v} out of range (n = {n})")]
    IdRange { v: usize, n: usize },
    #[error("source vertex {v} lies in the forbidden set")]
    ForbiddenSource { v: usize },
    #[error("vertex {v} lies in the query set X; projections are defined for vertices outside X")]
    InsideX { v: usize },
    #[error("target set is not contained in the vertex set")]
    BadTargets,
    #[error("instance too large for the exact solver: n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("no connected dominating set exists (graph disconnected)")]
    NoConnectedDominatingSet,
    #[error("infeasible parameters for generator: {0}")]
    BadGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
