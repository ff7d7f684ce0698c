//! Key handles only mean something to the enclave that issued them, and
//! die with it.

use nondisclosure::enclave::{self, Direction, Mode, DEFAULT_HEAP_BUDGET};
use nondisclosure::Error;

fn main() -> nondisclosure::Result<()> {
    let alice = enclave::enclave_create(DEFAULT_HEAP_BUDGET)?;
    let bob = enclave::enclave_create(DEFAULT_HEAP_BUDGET)?;
    let kh = enclave::gen_key(alice, 128)?;
    println!(
        "enclave {} issued a {}-bit key handle",
        alice.get(),
        kh.key_bits()
    );

    let refused = enclave::cipher_session(bob, kh, Mode::Ecb, Direction::Decrypt);
    assert!(matches!(refused, Err(Error::InvalidHandle)));
    println!("enclave {} refuses it: {}", bob.get(), refused.unwrap_err());

    enclave::enclave_destroy(alice)?;
    let gone = enclave::hmac_session(alice, kh);
    assert!(matches!(gone, Err(Error::EnclaveNotFound)));
    println!("after teardown: {}", gone.unwrap_err());

    enclave::enclave_destroy(bob)
}
