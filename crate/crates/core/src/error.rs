use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain mismatch: expected size {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },

    /// A computation would exceed one of the configured [`Limits`](crate::Limits).
    #[error("resource bound exceeded: {what} requires {requested}, limit is {limit}")]
    ResourceBound { what: String, requested: u128, limit: u128 },

    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: undeclared variable `{name}`")]
    UndeclaredVariable { name: String, line: usize, column: usize },

    #[error("{line}:{column}: variable `{name}` declared twice")]
    DuplicateVariable { name: String, line: usize, column: usize },

    #[error("unbound relation `{0}`")]
    UnboundRelation(String),

    #[error("relation `{name}` has arity {expected}, atom supplies {found} variables")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, requested: u128, limit: u128) -> Self {
        Error::ResourceBound {
            what: what.into(),
            requested,
            limit,
        }
    }

    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::ResourceBound { .. })
    }
}
