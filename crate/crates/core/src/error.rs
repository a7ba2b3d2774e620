use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("relation matrix has {found} columns, expected {expected}")]
    ColumnMismatch { expected: usize, found: usize },
    #[error("matrix has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("map does not send relation {row} of the source to zero")]
    NotWellDefined { row: usize },
    #[error("groups do not share an ambient presentation")]
    AmbientMismatch,
}
