use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] weyl_bundles::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
