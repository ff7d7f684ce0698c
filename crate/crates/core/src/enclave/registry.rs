use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard, OnceLock, RwLock, TryLockError};

use super::heap::{TrustedHeapMeter, RECORD_OVERHEAD};
use super::keystore::Keystore;
use super::rng::{EnclaveRng, RNG_STATE_BYTES};
use super::session::Session;
use crate::error::{Error, Result};

/// Fixed cost of an empty enclave: its control record and generator state.
pub const ENCLAVE_BASE_BYTES: usize = RECORD_OVERHEAD + RNG_STATE_BYTES;

static NEXT_EID: AtomicU64 = AtomicU64::new(1);
// Keys and sessions share one counter so no two tokens ever collide, even
// across enclaves.
static NEXT_TOKEN: AtomicU64 = AtomicU64::new(1);

type Registry = RwLock<HashMap<u64, Arc<Enclave>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

pub(crate) fn next_token() -> u64 {
    NEXT_TOKEN.fetch_add(1, Ordering::Relaxed)
}

pub(crate) fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

pub(crate) struct Enclave {
    pub(crate) meter: Mutex<TrustedHeapMeter>,
    pub(crate) keys: RwLock<Keystore>,
    pub(crate) sessions: Mutex<HashMap<u64, Arc<Mutex<Session>>>>,
    pub(crate) rng: Mutex<EnclaveRng>,
}

impl Enclave {
    pub(crate) fn charge(&self, bytes: usize) -> Result<()> {
        lock(&self.meter).charge(bytes)
    }

    pub(crate) fn release(&self, bytes: usize) {
        lock(&self.meter).release(bytes)
    }

    /// Runs `f` with the session locked, failing fast if another caller holds it.
    pub(crate) fn with_session<R>(
        &self,
        sid: u64,
        f: impl FnOnce(&mut Session) -> Result<R>,
    ) -> Result<R> {
        let session = lock(&self.sessions)
            .get(&sid)
            .cloned()
            .ok_or(Error::InvalidHandle)?;
        let mut guard = match session.try_lock() {
            Ok(g) => g,
            Err(TryLockError::WouldBlock) => return Err(Error::SessionBusy),
            Err(TryLockError::Poisoned(e)) => e.into_inner(),
        };
        f(&mut guard)
    }

    /// Charges the session's footprint and registers it.
    pub(crate) fn open_session(&self, session: Session) -> Result<u64> {
        self.charge(session.footprint())?;
        Ok(self.insert_session(session))
    }

    /// Registers a session whose footprint the caller already charged.
    pub(crate) fn insert_session(&self, session: Session) -> u64 {
        let sid = next_token();
        lock(&self.sessions).insert(sid, Arc::new(Mutex::new(session)));
        sid
    }

    pub(crate) fn close_session(&self, sid: u64) -> Result<()> {
        let session = lock(&self.sessions)
            .remove(&sid)
            .ok_or(Error::InvalidHandle)?;
        let footprint = lock(&session).footprint();
        drop(session);
        self.release(footprint);
        Ok(())
    }

    fn erase(&self) {
        let freed = self.keys.write().unwrap_or_else(|e| e.into_inner()).erase();
        self.release(freed);
        let sessions: Vec<_> = lock(&self.sessions).drain().map(|(_, s)| s).collect();
        // waits for in-flight calls, then drops the state; every state type
        // wipes itself on drop
        for s in sessions {
            let mut guard = lock(&s);
            let footprint = guard.footprint();
            *guard = Session::Erased;
            drop(guard);
            self.release(footprint);
        }
    }
}

pub(crate) fn create(budget: usize, rng: EnclaveRng) -> Result<u64> {
    let mut meter = TrustedHeapMeter::new(budget);
    meter.charge(ENCLAVE_BASE_BYTES)?;
    let enclave = Arc::new(Enclave {
        meter: Mutex::new(meter),
        keys: RwLock::new(Keystore::default()),
        sessions: Mutex::new(HashMap::new()),
        rng: Mutex::new(rng),
    });
    let mut reg = registry().write().unwrap_or_else(|e| e.into_inner());
    let eid = NEXT_EID.fetch_add(1, Ordering::Relaxed);
    reg.insert(eid, enclave);
    Ok(eid)
}

pub(crate) fn get(eid: u64) -> Result<Arc<Enclave>> {
    registry()
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .get(&eid)
        .cloned()
        .ok_or(Error::EnclaveNotFound)
}

pub(crate) fn destroy(eid: u64) -> Result<()> {
    let enclave = registry()
        .write()
        .unwrap_or_else(|e| e.into_inner())
        .remove(&eid)
        .ok_or(Error::EnclaveNotFound)?;
    enclave.erase();
    Ok(())
}
