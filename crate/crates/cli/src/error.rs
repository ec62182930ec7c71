use std::path::PathBuf;

use thiserror::Error;
use veronese_core::geometry::GeometryError;
use veronese_core::model::ModelError;
use veronese_core::quadrature::QuadratureError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("writing output: {0}")]
    Stdout(#[source] std::io::Error),
    #[error("quadrature did not converge: estimate {estimate} (error ~ {error_estimate})")]
    NonConvergence { estimate: f64, error_estimate: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Stdout(_) => 3,
            CliError::NonConvergence { .. } => 4,
            CliError::Model(_) | CliError::Internal(_) => 1,
        }
    }
}

impl From<QuadratureError> for CliError {
    fn from(e: QuadratureError) -> Self {
        match e {
            QuadratureError::NonConvergence {
                estimate,
                error_estimate,
            } => CliError::NonConvergence {
                estimate,
                error_estimate,
            },
            QuadratureError::InvalidTolerance(t) => CliError::Usage(format!("--tol must be positive, got {t}")),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Quadrature(q) => q.into(),
            GeometryError::Model(m) => m.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}
