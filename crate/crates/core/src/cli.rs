//! Command-line front end: argument parsing, one enclave per run, one result
//! line on stdout.
//!
//! ```text
//! ./app -a <sha256|hmac_sha256|aes_ecb|aes_cbc> [-userkey|-randomkey <key|keylen>] -intext|-infile <input>
//!       [-d] [-out <path>] [--buffer-size <bytes>] [--roundtrip]
//! ```
//!
//! Exit codes are listed in [`EXIT_CODES`]; each library error has its own.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use zeroize::Zeroizing;

use crate::enclave::{self, Direction, EnclaveId, Mode, DEFAULT_HEAP_BUDGET};
use crate::error::Error;
use crate::host::{self, ChunkSource, HashAlgo, JobOutput, JobResult};

pub const USAGE: &str = "usage: ./app -a <sha256|hmac_sha256|aes_ecb|aes_cbc> \
[-userkey|-randomkey <key|keylen>] -intext|-infile <input>
       [-d] [-out <path>] [--buffer-size <bytes>] [--roundtrip]";

/// Overrides the trusted heap budget, in bytes.
pub const HEAP_ENV: &str = "ENCLAVE_HEAP_BYTES";
/// 64 hex digits pinning the enclave generator. Honoured only in builds
/// with the `test-hooks` feature.
pub const SEED_ENV: &str = "ENCLAVE_TEST_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Sha256,
    HmacSha256,
    AesEcb,
    AesCbc,
}

impl Algo {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "sha256" => Algo::Sha256,
            "hmac_sha256" => Algo::HmacSha256,
            "aes_ecb" => Algo::AesEcb,
            "aes_cbc" => Algo::AesCbc,
            _ => return None,
        })
    }

    fn mode(self) -> Option<Mode> {
        match self {
            Algo::AesEcb => Some(Mode::Ecb),
            Algo::AesCbc => Some(Mode::Cbc),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeySpec {
    User(Zeroizing<Vec<u8>>),
    Random(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Text(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliRequest {
    pub algo: Algo,
    pub key: Option<KeySpec>,
    pub input: Input,
    pub direction: Direction,
    pub out: Option<PathBuf>,
    pub buffer_size: Option<usize>,
    pub roundtrip: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}\n{USAGE}")]
    Usage(String),
    #[error("conflicting flags: {0}")]
    ConflictingFlags(String),
    #[error("round trip mismatch: decrypted output differs from the input")]
    RoundtripMismatch,
    #[error(transparent)]
    Run(#[from] Error),
}

/// Stable exit codes, one per failure kind.
pub const EXIT_CODES: &[(u8, &str)] = &[
    (0, "success"),
    (2, "usage error"),
    (3, "conflicting flags"),
    (4, "I/O error"),
    (5, "bad key length"),
    (6, "empty HMAC key"),
    (7, "missing key"),
    (8, "invalid buffer size"),
    (9, "chunk too large"),
    (10, "bad padding"),
    (11, "misaligned ciphertext"),
    (12, "no CBC IV for this key"),
    (13, "invalid handle"),
    (14, "enclave not found"),
    (15, "session finalized"),
    (16, "session busy"),
    (17, "session mismatch"),
    (18, "trusted heap exhausted"),
    (19, "invalid heap budget"),
    (20, "round trip mismatch"),
];

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::ConflictingFlags(_) => 3,
            CliError::RoundtripMismatch => 20,
            CliError::Run(e) => match e {
                Error::Io(_) => 4,
                Error::BadKeyLength(_) => 5,
                Error::EmptyKey => 6,
                Error::MissingKey => 7,
                Error::InvalidBufferSize => 8,
                Error::ChunkTooLarge(_) => 9,
                Error::BadPadding => 10,
                Error::MisalignedCiphertext => 11,
                Error::NoIv => 12,
                Error::InvalidHandle => 13,
                Error::EnclaveNotFound => 14,
                Error::SessionFinalized => 15,
                Error::SessionBusy => 16,
                Error::SessionMismatch => 17,
                Error::HeapExhausted { .. } => 18,
                Error::InvalidBudget(_) => 19,
            },
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses the arguments after the program name.
pub fn parse_args<I, S>(args: I) -> Result<CliRequest, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut algo = None;
    let mut userkey: Option<String> = None;
    let mut randomkey: Option<String> = None;
    let mut intext: Option<String> = None;
    let mut infile: Option<String> = None;
    let mut out = None;
    let mut buffer_size = None;
    let mut decrypt = false;
    let mut roundtrip = false;

    let mut args = args.into_iter().map(Into::into);
    while let Some(flag) = args.next() {
        let slot = match flag.as_str() {
            "-a" => &mut algo,
            "-userkey" => &mut userkey,
            "-randomkey" => &mut randomkey,
            "-intext" => &mut intext,
            "-infile" => &mut infile,
            "-out" => &mut out,
            "--buffer-size" => &mut buffer_size,
            "-d" | "--roundtrip" => {
                let seen = if flag == "-d" {
                    &mut decrypt
                } else {
                    &mut roundtrip
                };
                if std::mem::replace(seen, true) {
                    return Err(usage(format!("{flag} given twice")));
                }
                continue;
            }
            _ => return Err(usage(format!("unknown argument: {flag}"))),
        };
        let value = args
            .next()
            .ok_or_else(|| usage(format!("{flag} needs a value")))?;
        if slot.replace(value).is_some() {
            return Err(usage(format!("{flag} given twice")));
        }
    }

    if userkey.is_some() && randomkey.is_some() {
        return Err(CliError::ConflictingFlags("-userkey and -randomkey".into()));
    }
    if intext.is_some() && infile.is_some() {
        return Err(CliError::ConflictingFlags("-intext and -infile".into()));
    }

    let algo_name = algo.ok_or_else(|| usage("missing -a"))?;
    let algo =
        Algo::parse(&algo_name).ok_or_else(|| usage(format!("unknown algorithm: {algo_name}")))?;
    let input = match (intext, infile) {
        (Some(t), None) => Input::Text(t),
        (None, Some(f)) => Input::File(f.into()),
        _ => return Err(usage("one of -intext or -infile is required")),
    };

    let key = match (userkey, randomkey) {
        (Some(hex_key), None) => {
            let bytes = hex::decode(&hex_key)
                .map_err(|_| usage(format!("-userkey is not valid hex: {hex_key}")))?;
            if bytes.is_empty() {
                return Err(usage("-userkey is empty"));
            }
            Some(KeySpec::User(Zeroizing::new(bytes)))
        }
        (None, Some(bits)) => {
            let n: usize = bits
                .parse()
                .map_err(|_| usage(format!("-randomkey is not a bit length: {bits}")))?;
            let ok = match algo {
                Algo::AesEcb | Algo::AesCbc => matches!(n, 128 | 192 | 256),
                _ => n > 0 && n.is_multiple_of(8),
            };
            if !ok {
                return Err(usage(format!(
                    "unsupported key length for {algo_name}: {n}"
                )));
            }
            Some(KeySpec::Random(n))
        }
        _ => None,
    };
    match (algo, &key) {
        (Algo::Sha256, Some(_)) => return Err(usage("sha256 takes no key")),
        (Algo::Sha256, None) => {}
        (_, None) => return Err(usage(format!("{algo_name} needs -userkey or -randomkey"))),
        _ => {}
    }

    let is_cipher = algo.mode().is_some();
    if !is_cipher && (decrypt || roundtrip || out.is_some()) {
        return Err(usage(
            "-d, -out and --roundtrip apply to aes_ecb and aes_cbc only",
        ));
    }
    if roundtrip && (decrypt || out.is_some()) {
        return Err(usage("--roundtrip cannot be combined with -d or -out"));
    }

    let buffer_size = buffer_size
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| usage(format!("--buffer-size is not a byte count: {s}")))
        })
        .transpose()?;

    Ok(CliRequest {
        algo,
        key,
        input,
        direction: if decrypt {
            Direction::Decrypt
        } else {
            Direction::Encrypt
        },
        out: out.map(PathBuf::from),
        buffer_size,
        roundtrip,
    })
}

/// Enclave settings for one run.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub heap_budget: Option<usize>,
    pub seed: Option<[u8; 32]>,
}

impl RunConfig {
    /// Reads [`HEAP_ENV`] and, in test-hook builds, [`SEED_ENV`].
    pub fn from_env() -> Result<Self, CliError> {
        let heap_budget = match std::env::var(HEAP_ENV) {
            Ok(v) => Some(
                v.parse()
                    .map_err(|_| usage(format!("{HEAP_ENV} is not a byte count: {v}")))?,
            ),
            Err(_) => None,
        };
        let seed = match std::env::var(SEED_ENV) {
            Ok(v) if cfg!(feature = "test-hooks") => {
                let mut seed = [0u8; 32];
                hex::decode_to_slice(&v, &mut seed)
                    .map_err(|_| usage(format!("{SEED_ENV} must be 64 hex digits")))?;
                Some(seed)
            }
            _ => None,
        };
        Ok(RunConfig { heap_budget, seed })
    }
}

/// What a successful run prints, plus the enclave's heap high-water mark.
#[derive(Debug, Clone)]
pub struct Report {
    pub line: String,
    pub peak_heap_bytes: usize,
}

/// Runs one request in a fresh enclave, which is destroyed before returning.
pub fn run(req: &CliRequest, config: &RunConfig) -> Result<Report, CliError> {
    let budget = config.heap_budget.unwrap_or(DEFAULT_HEAP_BUDGET);
    let eid = create_enclave(budget, config.seed)?;
    let result = run_in(eid, req).and_then(|line| {
        let peak = enclave::heap_usage(eid)?.peak_bytes;
        Ok(Report {
            line,
            peak_heap_bytes: peak,
        })
    });
    enclave::enclave_destroy(eid)?;
    result
}

#[cfg(feature = "test-hooks")]
fn create_enclave(budget: usize, seed: Option<[u8; 32]>) -> Result<EnclaveId, Error> {
    match seed {
        Some(seed) => enclave::hooks::enclave_create_seeded(budget, seed),
        None => enclave::enclave_create(budget),
    }
}

#[cfg(not(feature = "test-hooks"))]
fn create_enclave(budget: usize, _seed: Option<[u8; 32]>) -> Result<EnclaveId, Error> {
    enclave::enclave_create(budget)
}

fn run_in(eid: EnclaveId, req: &CliRequest) -> Result<String, CliError> {
    let mut src = match &req.input {
        Input::Text(t) => ChunkSource::inline(t.as_bytes().to_vec()),
        Input::File(p) => ChunkSource::file(p),
    };
    if let Some(n) = req.buffer_size {
        src = src.with_buffer_size(n)?;
    }
    let key = match &req.key {
        Some(KeySpec::User(bytes)) => Some(enclave::set_user_key(eid, bytes)?),
        Some(KeySpec::Random(bits)) => Some(enclave::gen_key(eid, *bits)?),
        None => None,
    };

    let Some(mode) = req.algo.mode() else {
        let algo = match req.algo {
            Algo::Sha256 => HashAlgo::Sha256,
            _ => HashAlgo::HmacSha256,
        };
        let job = host::run_hash(eid, algo, key, &src)?;
        let JobOutput::Digest(d) = job.output else {
            unreachable!("hash jobs return a digest")
        };
        return Ok(hex::encode(d));
    };
    let kh = key.expect("cipher requests carry a key");

    if !req.roundtrip {
        let job = match req.direction {
            Direction::Encrypt => host::run_encrypt(eid, mode, kh, &src, req.out.as_deref())?,
            Direction::Decrypt => host::run_decrypt(eid, mode, kh, &src, req.out.as_deref())?,
        };
        return describe(&job);
    }

    let enc = host::run_encrypt(eid, mode, kh, &src, None)?;
    let enc_path = output_path(&enc);
    let dec_out = src.default_output(Direction::Decrypt);
    let dec = host::run_decrypt(eid, mode, kh, &ChunkSource::file(enc_path), Some(&dec_out))?;
    if !same_content(&src, &ChunkSource::file(&dec_out))? {
        return Err(CliError::RoundtripMismatch);
    }
    Ok(format!(
        "roundtrip ok: {}; {}",
        describe(&enc)?,
        describe(&dec)?
    ))
}

fn output_path(job: &JobResult) -> &Path {
    match &job.output {
        JobOutput::Path(p) => p,
        JobOutput::Digest(_) => unreachable!("cipher jobs write a file"),
    }
}

fn describe(job: &JobResult) -> Result<String, CliError> {
    let path = output_path(job);
    let written = std::fs::metadata(path).map_err(Error::from)?.len();
    Ok(format!(
        "{} ({} bytes in, {} bytes out)",
        path.display(),
        job.bytes_processed,
        written
    ))
}

fn same_content(a: &ChunkSource, b: &ChunkSource) -> Result<bool, CliError> {
    let mut left = host::stream_chunks(a)?;
    let mut right = host::stream_chunks(b)?;
    loop {
        match (left.next().transpose()?, right.next().transpose()?) {
            (None, None) => return Ok(true),
            (Some(x), Some(y)) if x == y => {}
            _ => return Ok(false),
        }
    }
}

/// Entry point for the `app` binary.
pub fn main(args: impl IntoIterator<Item = String>) -> ExitCode {
    let outcome = parse_args(args).and_then(|req| run(&req, &RunConfig::from_env()?));
    match outcome {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", report.line) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => ExitCode::from(CliError::Run(e.into()).exit_code()),
            }
        }
        Err(e) => {
            eprintln!("app: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
