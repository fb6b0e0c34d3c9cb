use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("arity mismatch: expected {expected} exponents/coordinates, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("missing required key `{0}`")]
    MissingKey(String),

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("phi is not I-compatible: u*({generator}) has nonzero normal form {normal_form} modulo I^[q]")]
    NotCompatible {
        generator: String,
        normal_form: String,
    },

    #[error("phi/I is not surjective (I + I_e(u) is a proper ideal); use mode = general")]
    NotSurjective,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Jacobian criterion failed: {0}")]
    JacobianFailed(String),

    #[error("chain did not stabilise within {bound} applications of phi")]
    StabilizationFailed { bound: u64 },

    #[error("enumeration budget exceeded: {size} points > {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("in recursion round {round}: {source}")]
    InRound {
        round: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Whether the error reports bad input (as opposed to an engine failure).
    pub fn is_precondition(&self) -> bool {
        match self {
            Error::InRound { source, .. } => source.is_precondition(),
            Error::JacobianFailed(_)
            | Error::StabilizationFailed { .. }
            | Error::Internal(_)
            | Error::Unsupported(_) => false,
            _ => true,
        }
    }

    pub fn in_round(self, round: usize) -> Error {
        match self {
            e @ Error::InRound { .. } => e,
            e => Error::InRound {
                round,
                source: Box::new(e),
            },
        }
    }
}
