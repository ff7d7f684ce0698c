//! HMAC-SHA-256 (RFC 2104) over the incremental SHA-256 state.

use zeroize::Zeroize;

use super::sha256::{self, Sha256, BLOCK_LEN, DIGEST_LEN};
use crate::error::{Error, Result};

/// Keyed incremental MAC. Holds the inner state (already fed `K ^ ipad`) and
/// the outer state (already fed `K ^ opad`); the key itself is not retained.
#[derive(Clone)]
pub struct HmacSha256 {
    inner: Sha256,
    outer: Sha256,
}

impl HmacSha256 {
    pub fn new(key: &[u8]) -> Result<Self> {
        if key.is_empty() {
            return Err(Error::EmptyKey);
        }
        let mut block = [0u8; BLOCK_LEN];
        if key.len() > BLOCK_LEN {
            let mut hashed = sha256::digest(key);
            block[..DIGEST_LEN].copy_from_slice(&hashed);
            hashed.zeroize();
        } else {
            block[..key.len()].copy_from_slice(key);
        }

        let mut pad = [0u8; BLOCK_LEN];
        for (p, k) in pad.iter_mut().zip(block.iter()) {
            *p = k ^ 0x36;
        }
        let mut inner = Sha256::new();
        inner.update(&pad);
        for (p, k) in pad.iter_mut().zip(block.iter()) {
            *p = k ^ 0x5c;
        }
        let mut outer = Sha256::new();
        outer.update(&pad);

        pad.zeroize();
        block.zeroize();
        Ok(HmacSha256 { inner, outer })
    }

    pub fn update(&mut self, data: &[u8]) {
        self.inner.update(data);
    }

    pub fn finalize(self) -> [u8; DIGEST_LEN] {
        let HmacSha256 { inner, mut outer } = self;
        let mut inner_digest = inner.finalize();
        outer.update(&inner_digest);
        inner_digest.zeroize();
        outer.finalize()
    }
}

/// One-shot MAC over a sequence of message pieces.
pub fn hmac_sha256<'a, I>(key: &[u8], message: I) -> Result<[u8; DIGEST_LEN]>
where
    I: IntoIterator<Item = &'a [u8]>,
{
    let mut mac = HmacSha256::new(key)?;
    for piece in message {
        mac.update(piece);
    }
    Ok(mac.finalize())
}
