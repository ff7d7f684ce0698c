//! Watch the trusted heap meter: hashing does not grow with input size, and
//! a small enclave refuses work it cannot hold.

use nondisclosure::enclave::{self, Direction, Mode, DEFAULT_HEAP_BUDGET};
use nondisclosure::{Error, MAX_CHUNK};

fn main() -> nondisclosure::Result<()> {
    let eid = enclave::enclave_create(DEFAULT_HEAP_BUDGET)?;
    println!("empty enclave: {:?}", enclave::heap_usage(eid)?);

    let sid = enclave::sha256_session(eid)?;
    let buffer = [0u8; MAX_CHUNK];
    for mib in 1..=4 {
        for _ in 0..(1 << 20) / MAX_CHUNK {
            enclave::gen_sha256(eid, sid, &buffer)?;
        }
        println!(
            "after {mib} MiB hashed: {} bytes in use",
            enclave::heap_usage(eid)?.used_bytes
        );
    }
    enclave::get_sha256(eid, sid)?;
    enclave::close_session(eid, sid)?;
    enclave::enclave_destroy(eid)?;

    // 6 KiB fits a session, but not a full buffer staged in and out
    let small = enclave::enclave_create(6 * 1024)?;
    let kh = enclave::gen_key(small, 256)?;
    let sid = enclave::cipher_session(small, kh, Mode::Cbc, Direction::Encrypt)?;
    match enclave::encrypt_aes_cbc(small, sid, &buffer, false) {
        Err(e @ Error::HeapExhausted { .. }) => println!("small enclave: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    println!(
        "smaller buffers still work: {} bytes out",
        enclave::encrypt_aes_cbc(small, sid, &buffer[..1024], false)?.len()
    );
    enclave::enclave_destroy(small)
}
