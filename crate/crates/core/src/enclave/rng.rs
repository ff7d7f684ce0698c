use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

/// Bytes of generator state kept in the enclave: seed, stream position and
/// the buffered output block.
pub(crate) const RNG_STATE_BYTES: usize = 32 + 16 + 256;

/// In-enclave CSPRNG. Seeded from OS entropy; test builds may pin the seed,
/// in which case the output is the ChaCha20 keystream of that seed.
pub(crate) struct EnclaveRng(ChaCha20Rng);

impl EnclaveRng {
    pub(crate) fn from_entropy() -> Self {
        EnclaveRng(ChaCha20Rng::from_os_rng())
    }

    #[cfg_attr(not(any(test, feature = "test-hooks")), allow(dead_code))]
    pub(crate) fn from_seed(seed: [u8; 32]) -> Self {
        EnclaveRng(ChaCha20Rng::from_seed(seed))
    }

    pub(crate) fn fill(&mut self, out: &mut [u8]) {
        self.0.fill_bytes(out);
    }
}
