//! PKCS#7 padding for the 16-byte AES block.

use super::aes::{Block, BLOCK_LEN};
use crate::error::{Error, Result};

/// Pads a tail of 0..=15 bytes to a full block. An empty tail yields a block
/// of sixteen 0x10 bytes.
pub fn pkcs7_pad(tail: &[u8]) -> Block {
    assert!(tail.len() < BLOCK_LEN, "tail must be shorter than a block");
    let pad = (BLOCK_LEN - tail.len()) as u8;
    let mut block = [pad; BLOCK_LEN];
    block[..tail.len()].copy_from_slice(tail);
    block
}

/// Returns how many leading bytes of `block` are data.
///
/// Every byte is inspected regardless of where the padding ends, so the time
/// taken does not depend on the padding value.
pub fn pkcs7_data_len(block: &Block) -> Result<usize> {
    let pad = block[BLOCK_LEN - 1];
    // nonzero unless 1 <= pad <= 16
    let mut bad = ct_is_zero(pad) | ct_gt(pad, BLOCK_LEN as u8);
    let start = (BLOCK_LEN as u8).wrapping_sub(pad);
    for (i, &b) in block.iter().enumerate() {
        // position i lies in the padding when i >= 16 - pad
        let in_pad = !ct_gt(start, i as u8);
        bad |= in_pad & !ct_is_zero(b ^ pad);
    }
    if bad == 0 {
        Ok(BLOCK_LEN - pad as usize)
    } else {
        Err(Error::BadPadding)
    }
}

/// Strips padding from a full block.
pub fn pkcs7_unpad(block: &Block) -> Result<Vec<u8>> {
    let n = pkcs7_data_len(block)?;
    Ok(block[..n].to_vec())
}

/// 0xff if `x == 0`, else 0.
fn ct_is_zero(x: u8) -> u8 {
    ((x as u16).wrapping_sub(1) >> 8) as u8
}

/// 0xff if `a > b`, else 0.
fn ct_gt(a: u8, b: u8) -> u8 {
    ((b as u16).wrapping_sub(a as u16) >> 8) as u8
}
