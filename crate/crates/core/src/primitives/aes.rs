//! AES-128/192/256 block cipher (FIPS 197).
//!
//! Rounds run entirely on the bitsliced representation from [`super::sbox`]:
//! ShiftRows is a masked rotation of each plane and MixColumns is plane-wise
//! XOR, so the cipher performs no memory access indexed by key or data.

use zeroize::Zeroize;

use super::sbox::{bitslice, inv_sub_bytes, sub_bytes, sub_word, unbitslice, Planes};
use crate::error::{Error, Result};

pub const BLOCK_LEN: usize = 16;

pub type Block = [u8; BLOCK_LEN];

const MAX_ROUNDS: usize = 14;
const MAX_WORDS: usize = 4 * (MAX_ROUNDS + 1);

/// Expanded key schedule. Word and round counts are fixed by the key length:
/// 44/10, 52/12 or 60/14.
#[derive(Clone)]
pub struct AesRoundKeys {
    words: [u32; MAX_WORDS],
    nr: usize,
    planes: [Planes; MAX_ROUNDS + 1],
}

impl AesRoundKeys {
    pub fn new(key: &[u8]) -> Result<Self> {
        let nk = match key.len() {
            16 | 24 | 32 => key.len() / 4,
            n => return Err(Error::BadKeyLength(8 * n)),
        };
        let nr = nk + 6;
        let total = 4 * (nr + 1);

        let mut words = [0u32; MAX_WORDS];
        for (w, chunk) in words.iter_mut().zip(key.chunks_exact(4)) {
            *w = u32::from_be_bytes(chunk.try_into().unwrap());
        }
        let mut rcon = 1u8;
        for i in nk..total {
            let mut temp = words[i - 1];
            if i % nk == 0 {
                temp = u32::from_be_bytes(sub_word(temp.rotate_left(8).to_be_bytes()))
                    ^ ((rcon as u32) << 24);
                rcon = xtime_public(rcon);
            } else if nk > 6 && i % nk == 4 {
                temp = u32::from_be_bytes(sub_word(temp.to_be_bytes()));
            }
            words[i] = words[i - nk] ^ temp;
        }

        let mut planes = [[0u16; 8]; MAX_ROUNDS + 1];
        for (round, p) in planes.iter_mut().enumerate().take(nr + 1) {
            let mut bytes = [0u8; BLOCK_LEN];
            for (c, w) in words[4 * round..4 * round + 4].iter().enumerate() {
                bytes[4 * c..4 * c + 4].copy_from_slice(&w.to_be_bytes());
            }
            *p = bitslice(&bytes);
            bytes.zeroize();
        }

        Ok(AesRoundKeys { words, nr, planes })
    }

    pub fn rounds(&self) -> usize {
        self.nr
    }

    /// The expanded schedule, `4 * (rounds + 1)` words.
    pub fn words(&self) -> &[u32] {
        &self.words[..4 * (self.nr + 1)]
    }

    pub fn encrypt_block(&self, block: &Block) -> Block {
        let mut s = bitslice(block);
        add_round_key(&mut s, &self.planes[0]);
        for round in 1..self.nr {
            sub_bytes(&mut s);
            shift_rows(&mut s);
            mix_columns(&mut s);
            add_round_key(&mut s, &self.planes[round]);
        }
        sub_bytes(&mut s);
        shift_rows(&mut s);
        add_round_key(&mut s, &self.planes[self.nr]);
        let out = unbitslice(&s);
        s.zeroize();
        out
    }

    pub fn decrypt_block(&self, block: &Block) -> Block {
        let mut s = bitslice(block);
        add_round_key(&mut s, &self.planes[self.nr]);
        for round in (1..self.nr).rev() {
            inv_shift_rows(&mut s);
            inv_sub_bytes(&mut s);
            add_round_key(&mut s, &self.planes[round]);
            inv_mix_columns(&mut s);
        }
        inv_shift_rows(&mut s);
        inv_sub_bytes(&mut s);
        add_round_key(&mut s, &self.planes[0]);
        let out = unbitslice(&s);
        s.zeroize();
        out
    }

    /// Bytes of schedule material held for this key length.
    pub fn footprint(&self) -> usize {
        // expanded words plus their bitsliced copies
        2 * 4 * 4 * (self.nr + 1)
    }
}

impl Drop for AesRoundKeys {
    fn drop(&mut self) {
        self.words.zeroize();
        for p in self.planes.iter_mut() {
            p.zeroize();
        }
    }
}

/// Doubling in GF(2^8); only used on the public round constant.
fn xtime_public(x: u8) -> u8 {
    (x << 1) ^ (((x >> 7) & 1) * 0x1b)
}

fn add_round_key(s: &mut Planes, rk: &Planes) {
    for (a, k) in s.iter_mut().zip(rk) {
        *a ^= k;
    }
}

// Lane j of a plane holds state byte j = 4 * column + row.
const ROW: [u16; 4] = [0x1111, 0x2222, 0x4444, 0x8888];

fn shift_rows(s: &mut Planes) {
    for p in s.iter_mut() {
        let x = *p;
        *p = (x & ROW[0])
            | (x.rotate_right(4) & ROW[1])
            | (x.rotate_right(8) & ROW[2])
            | (x.rotate_right(12) & ROW[3]);
    }
}

fn inv_shift_rows(s: &mut Planes) {
    for p in s.iter_mut() {
        let x = *p;
        *p = (x & ROW[0])
            | (x.rotate_left(4) & ROW[1])
            | (x.rotate_left(8) & ROW[2])
            | (x.rotate_left(12) & ROW[3]);
    }
}

/// Row r of each column takes the byte from row r + 1.
fn rotate_rows_1(x: u16) -> u16 {
    ((x >> 1) & 0x7777) | ((x << 3) & 0x8888)
}

fn rotate_rows_2(x: u16) -> u16 {
    ((x >> 2) & 0x3333) | ((x << 2) & 0xcccc)
}

fn xtime(t: &Planes) -> Planes {
    [
        t[7],
        t[0] ^ t[7],
        t[1],
        t[2] ^ t[7],
        t[3] ^ t[7],
        t[4],
        t[5],
        t[6],
    ]
}

fn mix_columns(s: &mut Planes) {
    let a = *s;
    let b: Planes = a.map(rotate_rows_1);
    let c: Planes = a.map(rotate_rows_2);
    let d: Planes = c.map(rotate_rows_1);
    let ab: Planes = core::array::from_fn(|i| a[i] ^ b[i]);
    let doubled = xtime(&ab);
    for i in 0..8 {
        s[i] = doubled[i] ^ b[i] ^ c[i] ^ d[i];
    }
}

fn inv_mix_columns(s: &mut Planes) {
    let a = *s;
    let ac: Planes = core::array::from_fn(|i| a[i] ^ rotate_rows_2(a[i]));
    let w = xtime(&xtime(&ac));
    for i in 0..8 {
        s[i] ^= w[i];
    }
    mix_columns(s);
}
