use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring size {0}: at least 2 agents are required")]
    InvalidSize(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range for a ring of {n} agents")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("no agent has dist in {{0, psi}}: the ring has no border")]
    NoBorder,

    #[error("agent {0} holds no token of the requested color")]
    NoToken(usize),

    #[error("agent {0} carries no live bullet")]
    NoLiveBullet(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("snapshot parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("snapshot field out of range: agent {agent}, field `{field}`: {message}")]
    Field {
        agent: usize,
        field: &'static str,
        message: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
