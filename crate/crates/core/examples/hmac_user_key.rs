//! Authenticate a message under a caller-supplied key. The key is copied
//! into the enclave once; afterwards only its handle is used.

use nondisclosure::enclave::{self, DEFAULT_HEAP_BUDGET};

fn main() -> nondisclosure::Result<()> {
    let eid = enclave::enclave_create(DEFAULT_HEAP_BUDGET)?;
    let kh = enclave::set_user_key(eid, b"Jefe")?;

    let sid = enclave::hmac_session(eid, kh)?;
    // feed the message in two temporary buffers
    enclave::gen_hmac_sha256(eid, sid, b"what do ya want ")?;
    enclave::gen_hmac_sha256(eid, sid, b"for nothing?")?;
    let tag = enclave::get_hmac_sha256(eid, sid)?;
    println!("HMAC-SHA-256: {}", hex::encode(tag));

    // the same key handle in a fresh session gives the same tag
    let again = enclave::hmac_session(eid, kh)?;
    enclave::gen_hmac_sha256(eid, again, b"what do ya want for nothing?")?;
    assert_eq!(enclave::get_hmac_sha256(eid, again)?, tag);

    enclave::enclave_destroy(eid)
}
