use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] tripleslit_core::Error),
    #[error("{failed} of {total} verification checks failed")]
    Verify { failed: usize, total: usize },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input, 3 for numerical trouble, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        use tripleslit_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Model(E::InvalidConfig { .. } | E::EmptyGrid(_) | E::ZeroCentralIntensity) => 2,
            CliError::Model(_) | CliError::Verify { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
