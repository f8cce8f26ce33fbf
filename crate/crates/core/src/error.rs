use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },

    #[error("degree {degree} at byte {offset} exceeds the limit of {limit}")]
    DegreeTooLarge {
        degree: u64,
        limit: u32,
        offset: usize,
    },

    #[error("variable signatures do not match")]
    SignatureMismatch,

    #[error("group `{0}` has no polynomial group law")]
    GroupLawUnavailable(String),

    #[error("dilation factor must be non-zero")]
    ZeroDilation,

    #[error("operation requires a Heisenberg group, got `{0}`")]
    NotHeisenberg(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial is not harmonic")]
    NotHarmonic,

    #[error("singular diagonal block at degree {degree}, t-power {gamma}")]
    SingularBlock { degree: u32, gamma: u32 },

    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),

    #[error("Gram matrix is ill-conditioned (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
