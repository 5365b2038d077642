use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("search budget of {budget} node expansions exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("graph has {n} vertices, exact routine supports at most {max}")]
    TooLarge { n: usize, max: usize },

    #[error("graph has {n} vertices, at least {min} required")]
    TooSmall { n: usize, min: usize },

    #[error("grid point infeasible: {0}")]
    InfeasiblePoint(String),

    #[error("no threshold crossing: {0}")]
    NoCrossing(String),

    #[error("formula undefined: {0}")]
    UndefinedFormula(String),

    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
