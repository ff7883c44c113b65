use std::path::PathBuf;

use thiserror::Error;

use crate::complex::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("torus/cable parameters ({p},{q}) are not coprime")]
    NonCoprime { p: i64, q: i64 },
    #[error("parameters ({p},{q}) must be positive")]
    NonPositive { p: i64, q: i64 },
    #[error("polynomial {0} is not the Alexander polynomial of an L-space knot")]
    NotStaircase(String),
    #[error("no CFK constructor available: {0}")]
    NoConstructor(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
    #[error("{path}:{line}: {msg}")]
    Format { path: PathBuf, line: usize, msg: String },
    #[error("invalid complex: {}", summarize(.0))]
    Invalid(Vec<Violation>),
    #[error("complex is not of knot type: {0}")]
    NotKnotType(String),
    #[error("non-homogeneous term {source_idx} -> {target}: upower {upower}, gradings {src_grading} -> {tgt_grading}")]
    NonHomogeneous {
        source_idx: usize,
        target: usize,
        upower: u32,
        src_grading: i64,
        tgt_grading: i64,
    },
    #[error("invalid surgery: {0}")]
    Surgery(String),
    #[error("formula inapplicable: {0}")]
    Inapplicable(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

fn summarize(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// Process exit code used by the command-line front end:
    /// 1 usage/parse, 2 validation, 3 computation precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonCoprime { .. }
            | Error::NonPositive { .. }
            | Error::Syntax { .. }
            | Error::Semantic(_)
            | Error::Surgery(_)
            | Error::Io { .. } => 1,
            Error::Format { .. } | Error::Invalid(_) => 2,
            Error::NotStaircase(_)
            | Error::NoConstructor(_)
            | Error::NotKnotType(_)
            | Error::NonHomogeneous { .. }
            | Error::Inapplicable(_)
            | Error::Internal(_) => 3,
        }
    }
}
