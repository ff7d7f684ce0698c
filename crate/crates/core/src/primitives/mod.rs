//! Cryptographic kernels that run inside the enclave.
//!
//! Everything here is a pure state transform with no shared state. The
//! enclave module is the only consumer; the types are public so the kernels
//! can be checked directly against published vectors.

pub mod aes;
pub mod hmac;
pub mod modes;
pub mod padding;
pub(crate) mod sbox;
pub mod sha256;

pub use aes::{AesRoundKeys, Block, BLOCK_LEN};
pub use hmac::{hmac_sha256, HmacSha256};
pub use modes::{Direction, Mode, ModeStream};
pub use padding::{pkcs7_pad, pkcs7_unpad};
pub use sha256::{Sha256, DIGEST_LEN};
