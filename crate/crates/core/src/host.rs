//! The untrusted side: reads inputs in fixed-size temporary buffers, drives
//! enclave sessions over them and writes the results.
//!
//! Nothing here can see key or IV bytes. Jobs only hold the identifiers the
//! enclave hands out, and everything they do goes through [`crate::enclave`].

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::enclave::{self, Direction, EnclaveId, KeyHandle, Mode, SessionId, DIGEST_LEN};
use crate::error::{Error, Result};

/// Temporary buffer size used unless a job asks for another.
pub const DEFAULT_BUFFER_SIZE: usize = crate::MAX_CHUNK;

/// Where a job's input comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    File(PathBuf),
    Inline(Vec<u8>),
}

/// An input plus the size of the buffers it is cut into.
#[derive(Debug, Clone)]
pub struct ChunkSource {
    origin: Origin,
    buffer_size: usize,
}

impl ChunkSource {
    pub fn file(path: impl Into<PathBuf>) -> Self {
        ChunkSource {
            origin: Origin::File(path.into()),
            buffer_size: DEFAULT_BUFFER_SIZE,
        }
    }

    pub fn inline(bytes: impl Into<Vec<u8>>) -> Self {
        ChunkSource {
            origin: Origin::Inline(bytes.into()),
            buffer_size: DEFAULT_BUFFER_SIZE,
        }
    }

    /// Sets the buffer size. The enclave accepts at most
    /// [`crate::MAX_CHUNK`] bytes per call, so larger buffers make every
    /// job fail with [`Error::ChunkTooLarge`].
    pub fn with_buffer_size(mut self, buffer_size: usize) -> Result<Self> {
        if buffer_size == 0 {
            return Err(Error::InvalidBufferSize);
        }
        self.buffer_size = buffer_size;
        Ok(self)
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn buffer_size(&self) -> usize {
        self.buffer_size
    }

    /// `<input>.enc` or `<input>.dec` next to a file input; `intext.enc` or
    /// `intext.dec` in the working directory for inline text.
    pub fn default_output(&self, direction: Direction) -> PathBuf {
        let ext = match direction {
            Direction::Encrypt => "enc",
            Direction::Decrypt => "dec",
        };
        match &self.origin {
            Origin::File(p) => {
                let mut name = p.clone().into_os_string();
                name.push(".");
                name.push(ext);
                name.into()
            }
            Origin::Inline(_) => PathBuf::from(format!("intext.{ext}")),
        }
    }
}

/// Ordered, lossless chunks of a source. Every chunk is exactly
/// `buffer_size` bytes except possibly the last; an empty input yields none.
pub struct Chunks<'a> {
    reader: Box<dyn Read + 'a>,
    buffer_size: usize,
    done: bool,
}

impl Iterator for Chunks<'_> {
    type Item = Result<Vec<u8>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut buf = vec![0u8; self.buffer_size];
        let mut filled = 0;
        while filled < buf.len() {
            match self.reader.read(&mut buf[filled..]) {
                Ok(0) => break,
                Ok(n) => filled += n,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(e) => {
                    self.done = true;
                    return Some(Err(e.into()));
                }
            }
        }
        if filled < buf.len() {
            self.done = true;
        }
        if filled == 0 {
            return None;
        }
        buf.truncate(filled);
        Some(Ok(buf))
    }
}

/// Opens the source for reading. A missing or unreadable file fails here.
pub fn stream_chunks(src: &ChunkSource) -> Result<Chunks<'_>> {
    let reader: Box<dyn Read + '_> = match &src.origin {
        Origin::File(p) => Box::new(File::open(p)?),
        Origin::Inline(bytes) => Box::new(bytes.as_slice()),
    };
    Ok(Chunks {
        reader,
        buffer_size: src.buffer_size,
        done: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HashAlgo {
    Sha256,
    HmacSha256,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JobKind {
    Digest,
    Ciphertext,
    Plaintext,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobOutput {
    Digest([u8; DIGEST_LEN]),
    Path(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobResult {
    pub kind: JobKind,
    /// Exact length of the input.
    pub bytes_processed: u64,
    pub output: JobOutput,
}

/// Closes the session however the job ends.
struct SessionGuard {
    eid: EnclaveId,
    sid: SessionId,
}

impl Drop for SessionGuard {
    fn drop(&mut self) {
        // already gone if the enclave was torn down under us
        let _ = enclave::close_session(self.eid, self.sid);
    }
}

/// Hashes the source. HMAC needs `key`; plain SHA-256 ignores it.
pub fn run_hash(
    eid: EnclaveId,
    algo: HashAlgo,
    key: Option<KeyHandle>,
    src: &ChunkSource,
) -> Result<JobResult> {
    let chunks = stream_chunks(src)?;
    let sid = match algo {
        HashAlgo::Sha256 => enclave::sha256_session(eid)?,
        HashAlgo::HmacSha256 => enclave::hmac_session(eid, key.ok_or(Error::MissingKey)?)?,
    };
    let _guard = SessionGuard { eid, sid };
    let absorb = match algo {
        HashAlgo::Sha256 => enclave::gen_sha256,
        HashAlgo::HmacSha256 => enclave::gen_hmac_sha256,
    };
    let finish = match algo {
        HashAlgo::Sha256 => enclave::get_sha256,
        HashAlgo::HmacSha256 => enclave::get_hmac_sha256,
    };

    let mut total = 0u64;
    for chunk in chunks {
        let chunk = chunk?;
        absorb(eid, sid, &chunk)?;
        total += chunk.len() as u64;
    }
    Ok(JobResult {
        kind: JobKind::Digest,
        bytes_processed: total,
        output: JobOutput::Digest(finish(eid, sid)?),
    })
}

/// Encrypts the source with PKCS#7 padding into `out`, or the default
/// output name when `out` is `None`.
pub fn run_encrypt(
    eid: EnclaveId,
    mode: Mode,
    kh: KeyHandle,
    src: &ChunkSource,
    out: Option<&Path>,
) -> Result<JobResult> {
    run_cipher(eid, mode, Direction::Encrypt, kh, src, out)
}

/// Decrypts and unpads the source. On any failure, including bad padding
/// on the last block, no output file is left behind.
pub fn run_decrypt(
    eid: EnclaveId,
    mode: Mode,
    kh: KeyHandle,
    src: &ChunkSource,
    out: Option<&Path>,
) -> Result<JobResult> {
    run_cipher(eid, mode, Direction::Decrypt, kh, src, out)
}

type CipherCall = fn(EnclaveId, SessionId, &[u8], bool) -> Result<Vec<u8>>;

fn cipher_call(mode: Mode, direction: Direction) -> CipherCall {
    match (mode, direction) {
        (Mode::Ecb, Direction::Encrypt) => enclave::encrypt_aes_ecb,
        (Mode::Ecb, Direction::Decrypt) => enclave::decrypt_aes_ecb,
        (Mode::Cbc, Direction::Encrypt) => enclave::encrypt_aes_cbc,
        (Mode::Cbc, Direction::Decrypt) => enclave::decrypt_aes_cbc,
    }
}

fn run_cipher(
    eid: EnclaveId,
    mode: Mode,
    direction: Direction,
    kh: KeyHandle,
    src: &ChunkSource,
    out: Option<&Path>,
) -> Result<JobResult> {
    let mut chunks = stream_chunks(src)?.peekable();
    let sid = enclave::cipher_session(eid, kh, mode, direction)?;
    let _guard = SessionGuard { eid, sid };
    let call = cipher_call(mode, direction);

    let out_path = out.map_or_else(|| src.default_output(direction), Path::to_path_buf);
    let dir = match out_path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut writer = BufWriter::with_capacity(1 << 16, NamedTempFile::new_in(dir)?);

    let mut total = 0u64;
    if chunks.peek().is_none() {
        // empty input still produces (or consumes) the padding block
        writer.write_all(&call(eid, sid, &[], true)?)?;
    }
    while let Some(chunk) = chunks.next() {
        let chunk = chunk?;
        let last = chunks.peek().is_none();
        writer.write_all(&call(eid, sid, &chunk, last)?)?;
        total += chunk.len() as u64;
    }

    let tmp = writer.into_inner().map_err(|e| e.into_error())?;
    tmp.as_file().sync_all()?;
    tmp.persist(&out_path).map_err(|e| e.error)?;
    Ok(JobResult {
        kind: match direction {
            Direction::Encrypt => JobKind::Ciphertext,
            Direction::Decrypt => JobKind::Plaintext,
        },
        bytes_processed: total,
        output: JobOutput::Path(out_path),
    })
}
