use std::path::PathBuf;

use crate::json::JsonError;
use crate::parse::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Engine(#[from] ddkp_core::Error),

    #[error(transparent)]
    Json(#[from] JsonError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
