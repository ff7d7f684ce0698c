use std::io;

use thiserror::Error;

/// Every failure the library can report, across both sides of the boundary.
#[derive(Debug, Error)]
pub enum Error {
    #[error("enclave not found")]
    EnclaveNotFound,
    #[error("invalid handle")]
    InvalidHandle,
    #[error("session already finalized")]
    SessionFinalized,
    #[error("session is in use by another caller")]
    SessionBusy,
    #[error("session does not support this operation")]
    SessionMismatch,
    #[error("chunk of {0} bytes exceeds the {max} byte boundary buffer", max = crate::MAX_CHUNK)]
    ChunkTooLarge(usize),
    #[error("bad key length: {0} bits")]
    BadKeyLength(usize),
    #[error("empty HMAC key")]
    EmptyKey,
    #[error("trusted heap exhausted: {requested} bytes requested, {available} available")]
    HeapExhausted { requested: usize, available: usize },
    #[error("heap budget of {0} bytes is below the minimum")]
    InvalidBudget(usize),
    #[error("bad padding")]
    BadPadding,
    #[error("ciphertext length is not a multiple of the block size")]
    MisalignedCiphertext,
    #[error("no CBC IV is held for this key in this enclave")]
    NoIv,
    #[error("HMAC requires a key handle")]
    MissingKey,
    #[error("buffer size must be at least one byte")]
    InvalidBufferSize,
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
