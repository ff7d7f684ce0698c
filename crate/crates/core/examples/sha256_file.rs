//! Hash a file (or this example's own source) through a SHA-256 session.
//!
//!     cargo run --example sha256_file -- path/to/file

use nondisclosure::enclave::{self, DEFAULT_HEAP_BUDGET};
use nondisclosure::host::{self, ChunkSource, HashAlgo, JobOutput};

fn main() -> nondisclosure::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sha256_file.rs").into());
    let eid = enclave::enclave_create(DEFAULT_HEAP_BUDGET)?;

    let job = host::run_hash(eid, HashAlgo::Sha256, None, &ChunkSource::file(&path))?;
    if let JobOutput::Digest(d) = job.output {
        println!("{}  {path} ({} bytes)", hex::encode(d), job.bytes_processed);
    }

    enclave::enclave_destroy(eid)
}
