use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("index is {index}, the group inverse needs index at most one (rk(E^2) = {rank_sq}, rk(E) = {rank})")]
    IndexNotOne {
        index: usize,
        rank: usize,
        rank_sq: usize,
    },

    #[error("DMPGI does not exist: the criterion rk[[E0,E],[E,O]] = 2rk(E) fails with {block_rank} against {twice_std_rank}")]
    DmpgiDoesNotExist {
        block_rank: usize,
        twice_std_rank: usize,
    },

    #[error("DGGI does not exist: {reason}")]
    DggiDoesNotExist { reason: String },

    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),

    #[error("characterizations disagree for {context}: {detail}")]
    CharacterizationMismatch { context: String, detail: String },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("proven implication violated: {0}")]
    TheoremViolation(String),

    #[error("block {0} is not invertible")]
    NonInvertibleBlock(&'static str),

    #[error("block {0} cannot be perturbed: {1}")]
    BlockNotPerturbable(String, &'static str),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("trial count must be at least one")]
    InvalidTrials,
}
