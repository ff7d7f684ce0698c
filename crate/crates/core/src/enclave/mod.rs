//! The simulated trusted module and its call boundary.
//!
//! Every public function here is an entry point into the enclave, addressed
//! by [`EnclaveId`]. Key material, IVs and running hash or cipher state stay
//! behind this boundary; callers only ever get identifiers, status, digests,
//! ciphertext and plaintext back. There is deliberately no operation that
//! returns key or IV bytes.
//!
//! Enclaves live in a process-wide registry. Creating, minting keys and
//! driving distinct sessions is safe from any number of threads; a single
//! session must be driven by one caller at a time, and a concurrent second
//! call is rejected with [`Error::SessionBusy`].

mod heap;
mod keystore;
mod registry;
mod rng;
mod session;

use zeroize::Zeroizing;

pub use self::heap::RECORD_OVERHEAD;
pub use self::registry::ENCLAVE_BASE_BYTES;
use self::registry::{lock, Enclave};
use self::rng::EnclaveRng;
use self::session::{CipherSession, HashSession, Session};
use crate::error::{Error, Result};
pub use crate::primitives::DIGEST_LEN;
use crate::primitives::{AesRoundKeys, Block, HmacSha256, BLOCK_LEN};
pub use crate::primitives::{Direction, Mode};
use crate::MAX_CHUNK;

/// Trusted heap given to an enclave unless the caller asks otherwise.
pub const DEFAULT_HEAP_BUDGET: usize = 102_400;

/// Smallest heap an enclave can be created with.
pub const MIN_HEAP_BUDGET: usize = 4096;

/// Identifies one enclave instance. Assigned from 1 upwards, never reused
/// within a process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnclaveId(u64);

impl EnclaveId {
    pub fn from_raw(id: u64) -> Self {
        EnclaveId(id)
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Opaque reference to a key held in one enclave's keystore.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyHandle {
    enclave: EnclaveId,
    token: u64,
    bits: usize,
}

impl KeyHandle {
    pub fn token(&self) -> u64 {
        self.token
    }

    pub fn key_bits(&self) -> usize {
        self.bits
    }

    pub fn enclave(&self) -> EnclaveId {
        self.enclave
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SessionId(u64);

impl SessionId {
    pub fn from_raw(id: u64) -> Self {
        SessionId(id)
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashKind {
    Sha256,
    HmacSha256,
}

/// Snapshot of an enclave's trusted-heap meter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeapUsage {
    pub used_bytes: usize,
    /// High-water mark since creation.
    pub peak_bytes: usize,
    pub budget_bytes: usize,
}

/// What an entry point hands back across the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Returns {
    Status,
    EnclaveId,
    KeyHandle,
    SessionId,
    Digest,
    Ciphertext,
    Plaintext,
    HeapUsage,
}

/// Every entry point of the boundary and what it returns.
pub const BOUNDARY: &[(&str, Returns)] = &[
    ("enclave_create", Returns::EnclaveId),
    ("enclave_destroy", Returns::Status),
    ("gen_key", Returns::KeyHandle),
    ("set_user_key", Returns::KeyHandle),
    ("sha256_session", Returns::SessionId),
    ("gen_sha256", Returns::Status),
    ("get_sha256", Returns::Digest),
    ("hmac_session", Returns::SessionId),
    ("gen_hmac_sha256", Returns::Status),
    ("get_hmac_sha256", Returns::Digest),
    ("cipher_session", Returns::SessionId),
    ("encrypt_aes_ecb", Returns::Ciphertext),
    ("decrypt_aes_ecb", Returns::Plaintext),
    ("encrypt_aes_cbc", Returns::Ciphertext),
    ("decrypt_aes_cbc", Returns::Plaintext),
    ("close_session", Returns::Status),
    ("heap_usage", Returns::HeapUsage),
    #[cfg(any(test, feature = "test-hooks"))]
    ("enclave_create_seeded", Returns::EnclaveId),
    #[cfg(any(test, feature = "test-hooks"))]
    ("cipher_session_with", Returns::SessionId),
];

/// Creates an enclave with `heap_budget` bytes of trusted heap and a
/// generator seeded from OS entropy.
pub fn enclave_create(heap_budget: usize) -> Result<EnclaveId> {
    create_with(heap_budget, EnclaveRng::from_entropy())
}

fn create_with(heap_budget: usize, rng: EnclaveRng) -> Result<EnclaveId> {
    if heap_budget < MIN_HEAP_BUDGET {
        return Err(Error::InvalidBudget(heap_budget));
    }
    registry::create(heap_budget, rng).map(EnclaveId)
}

/// Tears the enclave down, wiping every key and session it holds.
pub fn enclave_destroy(eid: EnclaveId) -> Result<()> {
    registry::destroy(eid.0)
}

/// Draws a fresh key of `keylen_bits` from the enclave generator. Any
/// positive multiple of 8 is accepted; AES sessions additionally require
/// 128, 192 or 256.
pub fn gen_key(eid: EnclaveId, keylen_bits: usize) -> Result<KeyHandle> {
    if keylen_bits == 0 || !keylen_bits.is_multiple_of(8) {
        return Err(Error::BadKeyLength(keylen_bits));
    }
    let enclave = registry::get(eid.0)?;
    let mut material = Zeroizing::new(vec![0u8; keylen_bits / 8]);
    lock(&enclave.rng).fill(&mut material);
    store_key(eid, &enclave, material)
}

/// Copies a caller-chosen key into the keystore. Each call mints a new handle.
pub fn set_user_key(eid: EnclaveId, key: &[u8]) -> Result<KeyHandle> {
    if key.is_empty() {
        return Err(Error::BadKeyLength(0));
    }
    let enclave = registry::get(eid.0)?;
    store_key(eid, &enclave, Zeroizing::new(key.to_vec()))
}

fn store_key(eid: EnclaveId, enclave: &Enclave, material: Zeroizing<Vec<u8>>) -> Result<KeyHandle> {
    let bits = material.len() * 8;
    let mut keys = enclave.keys.write().unwrap_or_else(|e| e.into_inner());
    enclave.charge(keystore::KeyRecord::footprint(material.len()))?;
    let token = registry::next_token();
    keys.insert(token, material);
    Ok(KeyHandle {
        enclave: eid,
        token,
        bits,
    })
}

pub fn sha256_session(eid: EnclaveId) -> Result<SessionId> {
    let enclave = registry::get(eid.0)?;
    enclave
        .open_session(Session::Hash(Box::new(HashSession::sha256())))
        .map(SessionId)
}

/// Absorbs one temporary buffer into a SHA-256 session.
pub fn gen_sha256(eid: EnclaveId, sid: SessionId, chunk: &[u8]) -> Result<()> {
    absorb(eid, sid, HashKind::Sha256, chunk)
}

/// Finalizes the session and returns its digest; repeated calls return the
/// stored digest.
pub fn get_sha256(eid: EnclaveId, sid: SessionId) -> Result<[u8; DIGEST_LEN]> {
    digest(eid, sid, HashKind::Sha256)
}

pub fn hmac_session(eid: EnclaveId, kh: KeyHandle) -> Result<SessionId> {
    let enclave = registry::get(eid.0)?;
    let mac = {
        let keys = enclave.keys.read().unwrap_or_else(|e| e.into_inner());
        let rec = resolve(eid, &keys, kh)?;
        HmacSha256::new(&rec.material)?
    };
    enclave
        .open_session(Session::Hash(Box::new(HashSession::hmac(mac))))
        .map(SessionId)
}

pub fn gen_hmac_sha256(eid: EnclaveId, sid: SessionId, chunk: &[u8]) -> Result<()> {
    absorb(eid, sid, HashKind::HmacSha256, chunk)
}

pub fn get_hmac_sha256(eid: EnclaveId, sid: SessionId) -> Result<[u8; DIGEST_LEN]> {
    digest(eid, sid, HashKind::HmacSha256)
}

fn absorb(eid: EnclaveId, sid: SessionId, kind: HashKind, chunk: &[u8]) -> Result<()> {
    let enclave = registry::get(eid.0)?;
    enclave.with_session(sid.0, |s| {
        let Session::Hash(h) = s else {
            return Err(Error::SessionMismatch);
        };
        if h.kind() != kind {
            return Err(Error::SessionMismatch);
        }
        if chunk.len() > MAX_CHUNK {
            return Err(Error::ChunkTooLarge(chunk.len()));
        }
        staged(&enclave, chunk.len(), || h.absorb(chunk))
    })
}

fn digest(eid: EnclaveId, sid: SessionId, kind: HashKind) -> Result<[u8; DIGEST_LEN]> {
    let enclave = registry::get(eid.0)?;
    enclave.with_session(sid.0, |s| match s {
        Session::Hash(h) if h.kind() == kind => Ok(h.digest()),
        _ => Err(Error::SessionMismatch),
    })
}

/// Opens an AES session on `kh`.
///
/// CBC encryption draws a fresh IV inside the enclave and remembers it
/// against the key; CBC decryption under the same key picks that IV up
/// again. Neither path ever exposes the IV.
pub fn cipher_session(
    eid: EnclaveId,
    kh: KeyHandle,
    mode: Mode,
    direction: Direction,
) -> Result<SessionId> {
    open_cipher(eid, kh, mode, direction, None, true)
}

fn open_cipher(
    eid: EnclaveId,
    kh: KeyHandle,
    mode: Mode,
    direction: Direction,
    injected_iv: Option<Block>,
    padding: bool,
) -> Result<SessionId> {
    let enclave = registry::get(eid.0)?;
    let mut keys = enclave.keys.write().unwrap_or_else(|e| e.into_inner());
    let rec = resolve_mut(eid, &mut keys, kh)?;
    let round_keys = AesRoundKeys::new(&rec.material)?;

    let iv = match (mode, direction) {
        (Mode::Ecb, _) => None,
        (Mode::Cbc, Direction::Encrypt) => {
            let iv = injected_iv.unwrap_or_else(|| {
                let mut iv = [0u8; BLOCK_LEN];
                lock(&enclave.rng).fill(&mut iv);
                iv
            });
            Some(iv)
        }
        (Mode::Cbc, Direction::Decrypt) => Some(
            injected_iv
                .or_else(|| rec.iv.as_deref().copied())
                .ok_or(Error::NoIv)?,
        ),
    };

    // the key record grows an IV slot the first time it pairs with CBC
    let new_slot = direction == Direction::Encrypt && iv.is_some() && rec.iv.is_none();
    let slot_bytes = if new_slot { BLOCK_LEN } else { 0 };
    let session_bytes = CipherSession::footprint_for(&round_keys, mode);
    enclave.charge(session_bytes + slot_bytes)?;
    if direction == Direction::Encrypt {
        if let Some(iv) = iv {
            rec.iv = Some(Zeroizing::new(iv));
        }
    }
    drop(keys);

    let session = Session::Cipher(Box::new(CipherSession::new(
        round_keys, mode, direction, iv, padding,
    )));
    Ok(SessionId(enclave.insert_session(session)))
}

/// Encrypts one temporary buffer. Whole blocks come back immediately; up to
/// 15 trailing bytes wait in the enclave for the next call. With `is_final`
/// the padding block is appended and the session closes for input.
pub fn encrypt_aes_ecb(
    eid: EnclaveId,
    sid: SessionId,
    chunk: &[u8],
    is_final: bool,
) -> Result<Vec<u8>> {
    transform(eid, sid, Mode::Ecb, Direction::Encrypt, chunk, is_final)
}

/// Decrypts one temporary buffer. The last block seen is held back until
/// `is_final`, where its padding is checked and stripped.
pub fn decrypt_aes_ecb(
    eid: EnclaveId,
    sid: SessionId,
    chunk: &[u8],
    is_final: bool,
) -> Result<Vec<u8>> {
    transform(eid, sid, Mode::Ecb, Direction::Decrypt, chunk, is_final)
}

pub fn encrypt_aes_cbc(
    eid: EnclaveId,
    sid: SessionId,
    chunk: &[u8],
    is_final: bool,
) -> Result<Vec<u8>> {
    transform(eid, sid, Mode::Cbc, Direction::Encrypt, chunk, is_final)
}

pub fn decrypt_aes_cbc(
    eid: EnclaveId,
    sid: SessionId,
    chunk: &[u8],
    is_final: bool,
) -> Result<Vec<u8>> {
    transform(eid, sid, Mode::Cbc, Direction::Decrypt, chunk, is_final)
}

fn transform(
    eid: EnclaveId,
    sid: SessionId,
    mode: Mode,
    direction: Direction,
    chunk: &[u8],
    is_final: bool,
) -> Result<Vec<u8>> {
    let enclave = registry::get(eid.0)?;
    enclave.with_session(sid.0, |s| {
        let Session::Cipher(c) = s else {
            return Err(Error::SessionMismatch);
        };
        c.check(mode, direction)?;
        if chunk.len() > MAX_CHUNK {
            return Err(Error::ChunkTooLarge(chunk.len()));
        }
        // input copy plus the output buffer
        let staging = 2 * chunk.len() + BLOCK_LEN;
        staged(&enclave, staging, || {
            let mut out = Vec::with_capacity(chunk.len() + BLOCK_LEN);
            c.process(chunk, is_final, &mut out)?;
            Ok(out)
        })
    })
}

/// Releases a session and its heap charge.
pub fn close_session(eid: EnclaveId, sid: SessionId) -> Result<()> {
    registry::get(eid.0)?.close_session(sid.0)
}

pub fn heap_usage(eid: EnclaveId) -> Result<HeapUsage> {
    let enclave = registry::get(eid.0)?;
    let meter = lock(&enclave.meter);
    Ok(HeapUsage {
        used_bytes: meter.used(),
        peak_bytes: meter.peak(),
        budget_bytes: meter.budget(),
    })
}

/// Test-only entry points: a pinned generator seed, and cipher sessions with
/// an injected IV and optional padding so standard vectors can be replayed.
#[cfg(any(test, feature = "test-hooks"))]
pub mod hooks {
    use super::*;

    pub fn enclave_create_seeded(heap_budget: usize, seed: [u8; 32]) -> Result<EnclaveId> {
        create_with(heap_budget, EnclaveRng::from_seed(seed))
    }

    pub fn cipher_session_with(
        eid: EnclaveId,
        kh: KeyHandle,
        mode: Mode,
        direction: Direction,
        iv: Option<Block>,
        padding: bool,
    ) -> Result<SessionId> {
        open_cipher(eid, kh, mode, direction, iv, padding)
    }
}

fn staged<R>(enclave: &Enclave, bytes: usize, f: impl FnOnce() -> Result<R>) -> Result<R> {
    enclave.charge(bytes)?;
    let r = f();
    enclave.release(bytes);
    r
}

fn resolve(
    eid: EnclaveId,
    keys: &keystore::Keystore,
    kh: KeyHandle,
) -> Result<&keystore::KeyRecord> {
    if kh.enclave != eid {
        return Err(Error::InvalidHandle);
    }
    keys.get(kh.token).ok_or(Error::InvalidHandle)
}

fn resolve_mut(
    eid: EnclaveId,
    keys: &mut keystore::Keystore,
    kh: KeyHandle,
) -> Result<&mut keystore::KeyRecord> {
    if kh.enclave != eid {
        return Err(Error::InvalidHandle);
    }
    keys.get_mut(kh.token).ok_or(Error::InvalidHandle)
}
