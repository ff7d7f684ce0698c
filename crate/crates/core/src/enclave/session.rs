use super::heap::RECORD_OVERHEAD;
use super::HashKind;
use crate::error::{Error, Result};
use crate::primitives::{
    sha256, AesRoundKeys, Block, Direction, HmacSha256, Mode, ModeStream, Sha256, BLOCK_LEN,
};

const DIGEST_LEN: usize = sha256::DIGEST_LEN;

pub(crate) enum Session {
    Hash(Box<HashSession>),
    Cipher(Box<CipherSession>),
    /// Left behind when the owning enclave is destroyed mid-call.
    Erased,
}

impl Session {
    pub(crate) fn footprint(&self) -> usize {
        match self {
            Session::Hash(h) => HashSession::footprint(h.kind),
            Session::Cipher(c) => c.footprint,
            Session::Erased => 0,
        }
    }
}

enum HashState {
    Sha256(Sha256),
    Hmac(HmacSha256),
}

/// Incremental hash held in the enclave. Its size does not depend on how
/// much input has been absorbed: one running state, then one stored digest.
pub(crate) struct HashSession {
    kind: HashKind,
    state: Option<HashState>,
    digest: Option<[u8; DIGEST_LEN]>,
}

impl HashSession {
    pub(crate) fn sha256() -> Self {
        HashSession {
            kind: HashKind::Sha256,
            state: Some(HashState::Sha256(Sha256::new())),
            digest: None,
        }
    }

    pub(crate) fn hmac(mac: HmacSha256) -> Self {
        HashSession {
            kind: HashKind::HmacSha256,
            state: Some(HashState::Hmac(mac)),
            digest: None,
        }
    }

    pub(crate) fn footprint(kind: HashKind) -> usize {
        let states = match kind {
            HashKind::Sha256 => 1,
            // inner and outer keyed states
            HashKind::HmacSha256 => 2,
        };
        RECORD_OVERHEAD + states * sha256::STATE_BYTES + DIGEST_LEN
    }

    pub(crate) fn kind(&self) -> HashKind {
        self.kind
    }

    pub(crate) fn absorb(&mut self, chunk: &[u8]) -> Result<()> {
        match self.state.as_mut() {
            None => Err(Error::SessionFinalized),
            Some(HashState::Sha256(st)) => {
                st.update(chunk);
                Ok(())
            }
            Some(HashState::Hmac(mac)) => {
                mac.update(chunk);
                Ok(())
            }
        }
    }

    /// Finalizes on first call; later calls return the stored digest.
    pub(crate) fn digest(&mut self) -> [u8; DIGEST_LEN] {
        if let Some(state) = self.state.take() {
            self.digest = Some(match state {
                HashState::Sha256(st) => st.finalize(),
                HashState::Hmac(mac) => mac.finalize(),
            });
        }
        self.digest.expect("finalized session holds a digest")
    }
}

/// AES mode state held in the enclave: round keys, chaining block, buffered
/// residual bytes. The stream is dropped (and wiped) at finalization.
pub(crate) struct CipherSession {
    mode: Mode,
    direction: Direction,
    stream: Option<ModeStream>,
    footprint: usize,
}

impl CipherSession {
    pub(crate) fn new(
        keys: AesRoundKeys,
        mode: Mode,
        direction: Direction,
        iv: Option<Block>,
        padding: bool,
    ) -> Self {
        let footprint = Self::footprint_for(&keys, mode);
        CipherSession {
            mode,
            direction,
            stream: Some(ModeStream::new(keys, mode, direction, iv, padding)),
            footprint,
        }
    }

    pub(crate) fn footprint_for(keys: &AesRoundKeys, mode: Mode) -> usize {
        // chain, residual and held-back block, plus the IV for CBC
        let blocks = match mode {
            Mode::Ecb => 3,
            Mode::Cbc => 4,
        };
        RECORD_OVERHEAD + keys.footprint() + blocks * BLOCK_LEN
    }

    pub(crate) fn check(&self, mode: Mode, direction: Direction) -> Result<()> {
        if self.mode != mode || self.direction != direction {
            return Err(Error::SessionMismatch);
        }
        if self.stream.is_none() {
            return Err(Error::SessionFinalized);
        }
        Ok(())
    }

    pub(crate) fn process(
        &mut self,
        chunk: &[u8],
        is_final: bool,
        out: &mut Vec<u8>,
    ) -> Result<()> {
        let stream = self.stream.as_mut().ok_or(Error::SessionFinalized)?;
        stream.update(chunk, out);
        if is_final {
            let result = stream.finish(out);
            self.stream = None;
            result?;
        }
        Ok(())
    }
}
