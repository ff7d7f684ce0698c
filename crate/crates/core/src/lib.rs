pub mod cli;
pub mod enclave;
pub mod error;
pub mod host;
pub mod primitives;

pub use error::{Error, Result};

/// Largest temporary buffer accepted across the enclave boundary.
pub const MAX_CHUNK: usize = 4096;
