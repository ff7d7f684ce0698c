//! Encrypt and decrypt a short message with AES-128-ECB, calling the
//! enclave directly in irregular chunk sizes.

use nondisclosure::enclave::{self, Direction, Mode, DEFAULT_HEAP_BUDGET};

fn main() -> nondisclosure::Result<()> {
    let eid = enclave::enclave_create(DEFAULT_HEAP_BUDGET)?;
    let kh = enclave::gen_key(eid, 128)?;
    let message = b"Blocks of sixteen bytes, padded at the end.";

    let enc = enclave::cipher_session(eid, kh, Mode::Ecb, Direction::Encrypt)?;
    let mut ciphertext = Vec::new();
    for piece in message.chunks(7) {
        // partial blocks wait inside the enclave until they fill up
        ciphertext.extend(enclave::encrypt_aes_ecb(eid, enc, piece, false)?);
    }
    ciphertext.extend(enclave::encrypt_aes_ecb(eid, enc, &[], true)?);
    println!(
        "{} plaintext bytes -> {} ciphertext bytes",
        message.len(),
        ciphertext.len()
    );

    let dec = enclave::cipher_session(eid, kh, Mode::Ecb, Direction::Decrypt)?;
    let mut plaintext = Vec::new();
    for piece in ciphertext.chunks(20) {
        plaintext.extend(enclave::decrypt_aes_ecb(eid, dec, piece, false)?);
    }
    plaintext.extend(enclave::decrypt_aes_ecb(eid, dec, &[], true)?);
    println!("recovered: {}", String::from_utf8_lossy(&plaintext));
    assert_eq!(plaintext, message);

    enclave::enclave_destroy(eid)
}
