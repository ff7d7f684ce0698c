use crate::error::{Error, Result};

/// Fixed bookkeeping charged on top of the payload of every record.
pub const RECORD_OVERHEAD: usize = 64;

/// Trusted-heap accounting. `used` never exceeds `budget`; a charge that
/// would overflow fails and leaves the meter untouched.
#[derive(Debug)]
pub(crate) struct TrustedHeapMeter {
    budget: usize,
    used: usize,
    peak: usize,
}

impl TrustedHeapMeter {
    pub(crate) fn new(budget: usize) -> Self {
        TrustedHeapMeter {
            budget,
            used: 0,
            peak: 0,
        }
    }

    pub(crate) fn charge(&mut self, bytes: usize) -> Result<()> {
        let available = self.budget - self.used;
        if bytes > available {
            return Err(Error::HeapExhausted {
                requested: bytes,
                available,
            });
        }
        self.used += bytes;
        self.peak = self.peak.max(self.used);
        Ok(())
    }

    pub(crate) fn release(&mut self, bytes: usize) {
        debug_assert!(bytes <= self.used, "releasing more than was charged");
        self.used -= bytes.min(self.used);
    }

    pub(crate) fn used(&self) -> usize {
        self.used
    }

    pub(crate) fn peak(&self) -> usize {
        self.peak
    }

    pub(crate) fn budget(&self) -> usize {
        self.budget
    }
}
