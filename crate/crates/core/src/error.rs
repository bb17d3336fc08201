use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("position {pos} out of range 1..={max}")]
    PositionOutOfRange { pos: usize, max: usize },

    #[error("{seq:?} is not a permutation of 1..={n}")]
    NotAPermutation { seq: Vec<usize>, n: usize },

    #[error(
        "strand count {n} outside supported range {min}..={max} (raise the limit to override)"
    )]
    StrandCountOutOfRange { n: usize, min: usize, max: usize },

    #[error("blocks do not form a valid partition of 1..={n}: {reason}")]
    InvalidPartition { n: usize, reason: String },

    #[error("crossing type {0} is not essential")]
    NotEssential(String),

    #[error("double crossing type {0} is not essential")]
    NotEssentialDouble(String),

    #[error("operands are not compatible: {0}")]
    Incompatible(String),

    #[error("word is not pure: starts at ({start}) but ends at ({end})")]
    NotPure { start: String, end: String },

    #[error("cannot parse {input:?} as {what}: {reason}")]
    Parse {
        input: String,
        what: &'static str,
        reason: String,
    },

    #[error("brute-force search cap of {0} states exceeded")]
    SearchCapExceeded(usize),

    #[error("unknown export format {0:?} (expected plain, json or gap)")]
    UnknownFormat(String),

    #[error("generator {generator} occurs {count} times in the replacement word for {double_type}; cannot solve for it")]
    NotSolvable {
        generator: String,
        double_type: String,
        count: usize,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
