// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TipError {
    #[error("edge list contains no edges")]
    EmptyGraph,
    #[error("graph has {0} vertices, more than the 32-bit label space allows")]
    TooLarge(usize),
    #[error("butterfly count exceeds 64-bit range")]
    Overflow,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid generator parameters: {0}")]
    Gen(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, TipError>;
