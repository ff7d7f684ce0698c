//! ECB and CBC over arbitrarily chunked input (NIST SP 800-38A).

use zeroize::Zeroize;

use super::aes::{AesRoundKeys, Block, BLOCK_LEN};
use super::padding::{pkcs7_data_len, pkcs7_pad};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Ecb,
    Cbc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Encrypt,
    Decrypt,
}

/// Block-mode state carried between chunks.
///
/// Encryption buffers fewer than 16 bytes between calls. Decryption with
/// padding keeps the most recent plaintext block back until [`finish`], since
/// only the last block carries padding.
///
/// [`finish`]: ModeStream::finish
pub struct ModeStream {
    keys: AesRoundKeys,
    mode: Mode,
    direction: Direction,
    padding: bool,
    chain: Block,
    residual: Block,
    residual_len: usize,
    held: Option<Block>,
}

impl ModeStream {
    /// `iv` is required for CBC and ignored for ECB.
    pub fn new(
        keys: AesRoundKeys,
        mode: Mode,
        direction: Direction,
        iv: Option<Block>,
        padding: bool,
    ) -> Self {
        let chain = match mode {
            Mode::Cbc => iv.expect("CBC requires an IV"),
            Mode::Ecb => [0; BLOCK_LEN],
        };
        ModeStream {
            keys,
            mode,
            direction,
            padding,
            chain,
            residual: [0; BLOCK_LEN],
            residual_len: 0,
            held: None,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Current CBC chaining block: the IV before any block, then the last
    /// ciphertext block processed.
    pub fn chain(&self) -> &Block {
        &self.chain
    }

    /// Bytes currently buffered waiting for a complete block.
    pub fn residual_len(&self) -> usize {
        self.residual_len
    }

    /// Processes `input`, appending every block that can be released to `out`.
    pub fn update(&mut self, mut input: &[u8], out: &mut Vec<u8>) {
        out.reserve(input.len() + BLOCK_LEN);
        if self.residual_len > 0 {
            let take = (BLOCK_LEN - self.residual_len).min(input.len());
            self.residual[self.residual_len..self.residual_len + take]
                .copy_from_slice(&input[..take]);
            self.residual_len += take;
            input = &input[take..];
            if self.residual_len < BLOCK_LEN {
                return;
            }
            let block = self.residual;
            self.residual_len = 0;
            self.push_block(&block, out);
        }
        let mut blocks = input.chunks_exact(BLOCK_LEN);
        for block in &mut blocks {
            self.push_block(block.try_into().unwrap(), out);
        }
        let rest = blocks.remainder();
        self.residual[..rest.len()].copy_from_slice(rest);
        self.residual_len = rest.len();
    }

    /// Ends the stream. Encryption emits the padding block; decryption checks
    /// alignment and strips padding from the held-back block.
    pub fn finish(&mut self, out: &mut Vec<u8>) -> Result<()> {
        let result = match self.direction {
            Direction::Encrypt if self.padding => {
                let last = pkcs7_pad(&self.residual[..self.residual_len]);
                self.residual_len = 0;
                self.push_block(&last, out);
                Ok(())
            }
            Direction::Encrypt | Direction::Decrypt if self.residual_len != 0 => {
                Err(Error::MisalignedCiphertext)
            }
            Direction::Encrypt => Ok(()),
            Direction::Decrypt if self.padding => match self.held.take() {
                None => Err(Error::BadPadding),
                Some(mut last) => {
                    let r = pkcs7_data_len(&last).map(|n| out.extend_from_slice(&last[..n]));
                    last.zeroize();
                    r
                }
            },
            Direction::Decrypt => Ok(()),
        };
        self.residual.zeroize();
        self.residual_len = 0;
        result
    }

    fn push_block(&mut self, block: &Block, out: &mut Vec<u8>) {
        match self.direction {
            Direction::Encrypt => {
                let ct = match self.mode {
                    Mode::Ecb => self.keys.encrypt_block(block),
                    Mode::Cbc => {
                        let x = xor(block, &self.chain);
                        let ct = self.keys.encrypt_block(&x);
                        self.chain = ct;
                        ct
                    }
                };
                out.extend_from_slice(&ct);
            }
            Direction::Decrypt => {
                let pt = match self.mode {
                    Mode::Ecb => self.keys.decrypt_block(block),
                    Mode::Cbc => {
                        let pt = xor(&self.keys.decrypt_block(block), &self.chain);
                        self.chain = *block;
                        pt
                    }
                };
                if self.padding {
                    if let Some(prev) = self.held.replace(pt) {
                        out.extend_from_slice(&prev);
                    }
                } else {
                    out.extend_from_slice(&pt);
                }
            }
        }
    }
}

impl Drop for ModeStream {
    fn drop(&mut self) {
        self.chain.zeroize();
        self.residual.zeroize();
        if let Some(h) = self.held.as_mut() {
            h.zeroize();
        }
    }
}

fn xor(a: &Block, b: &Block) -> Block {
    core::array::from_fn(|i| a[i] ^ b[i])
}
