//! Errors of the command-line pipeline.

use std::path::PathBuf;

use sylowchar_core::groupcore::GroupError;
use sylowchar_core::posetkit::PosetError;
use sylowchar_core::resolver::ResolveError;
use sylowchar_core::rootsys::RootSysError;
use sylowchar_core::tabulate::TabulateError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Data { path: String, source: TabulateError },
    #[error(transparent)]
    RootSys(#[from] RootSysError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Tabulate(#[from] TabulateError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable kind used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Io { .. } => "io",
            Error::Data { .. } => "data",
            Error::RootSys(_) => "root-system",
            Error::Poset(_) => "poset",
            Error::Group(_) => "group",
            Error::Resolve(_) => "resolve",
            Error::Tabulate(_) => "tabulate",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
