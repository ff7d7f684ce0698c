//! Stream a file through AES-256-CBC and back with the host helpers. The
//! IV is drawn inside the enclave and never leaves it; decryption under the
//! same key handle picks it up again.
//!
//!     cargo run --example cbc_stream -- path/to/file

use std::fs;

use nondisclosure::enclave::{self, Mode, DEFAULT_HEAP_BUDGET};
use nondisclosure::host::{self, ChunkSource, JobOutput};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let input = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let p = dir.path().join("sample.bin");
            fs::write(
                &p,
                (0..100_000u32).map(|i| (i % 251) as u8).collect::<Vec<_>>(),
            )?;
            p
        }
    };
    let eid = enclave::enclave_create(DEFAULT_HEAP_BUDGET)?;
    let kh = enclave::gen_key(eid, 256)?;

    let enc_path = dir.path().join("sample.enc");
    let enc = host::run_encrypt(
        eid,
        Mode::Cbc,
        kh,
        &ChunkSource::file(&input),
        Some(&enc_path),
    )?;
    let dec_path = dir.path().join("sample.dec");
    let dec = host::run_decrypt(
        eid,
        Mode::Cbc,
        kh,
        &ChunkSource::file(&enc_path),
        Some(&dec_path),
    )?;

    for job in [&enc, &dec] {
        if let JobOutput::Path(p) = &job.output {
            println!(
                "{:?}: {} bytes in -> {} ({} bytes)",
                job.kind,
                job.bytes_processed,
                p.display(),
                fs::metadata(p)?.len()
            );
        }
    }
    assert_eq!(fs::read(&input)?, fs::read(&dec_path)?);
    println!("round trip ok");

    enclave::enclave_destroy(eid)?;
    Ok(())
}
