use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must satisfy 1 <= n <= 2^63 - 1")]
    InvalidModulus(u64),

    #[error("modulus {n} does not fit the residue word type ({bits} bits)")]
    ResidueOverflow { n: u64, bits: u32 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("matrix is not invertible mod {n} (determinant {det})")]
    NotInvertible { n: u64, det: u64 },

    #[error("{m} does not divide {n}")]
    NotADivisor { m: u64, n: u64 },

    #[error("moduli {0:?} are not pairwise coprime or do not multiply to the matrix modulus")]
    NonCoprimeModuli(Vec<u64>),

    #[error("closure exceeded the cap of {cap} elements ({partial} found so far)")]
    CapExceeded { cap: usize, partial: usize },

    #[error("stage {stage} is below the minimum stage {min} for the prime {prime}")]
    StageTooLow { prime: u64, stage: u32, min: u32 },

    #[error("full-preimage hypothesis failed at the prime {prime}")]
    HypothesisFailed { prime: u64 },

    #[error("prime {prime} is not in the prime set {set:?}")]
    PrimeNotInSet { prime: u64, set: Vec<u64> },

    #[error("vector has order {actual}, expected {expected}")]
    OrderMismatch { expected: u64, actual: u64 },

    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
