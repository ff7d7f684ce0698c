//! Static audit of the enclave boundary, read from its source.

use nondisclosure::enclave::{Returns, BOUNDARY};

pub const SOURCE: &str = include_str!("../../src/enclave/mod.rs");

#[derive(Debug)]
pub struct Signature {
    pub name: String,
    pub returns: String,
    /// Free function, as opposed to a method on a handle type.
    pub entry_point: bool,
}

/// Every `pub fn` in the boundary module, with its normalized return type.
pub fn signatures() -> Vec<Signature> {
    signatures_in(SOURCE)
}

pub fn signatures_in(source: &str) -> Vec<Signature> {
    let mut out = Vec::new();
    let mut offset = 0;
    while let Some(pos) = source[offset..].find("pub fn ") {
        let at = offset + pos;
        let sig_end = at + source[at..].find('{').unwrap();
        let sig = source[at..sig_end]
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        let name = sig["pub fn ".len()..]
            .split(['(', '<'])
            .next()
            .unwrap()
            .to_string();
        let returns = sig
            .rsplit_once("->")
            .map_or("()", |(_, r)| r.trim())
            .to_string();
        out.push(Signature {
            name,
            returns,
            entry_point: !enclosing_impl(&source[..at]),
        });
        offset = sig_end;
    }
    out
}

/// True when the innermost open brace before `prefix` belongs to an `impl`.
fn enclosing_impl(prefix: &str) -> bool {
    let mut stack: Vec<bool> = Vec::new();
    for line in prefix.lines() {
        let trimmed = line.trim_start();
        for c in line.chars() {
            match c {
                '{' => stack.push(trimmed.starts_with("impl")),
                '}' => {
                    stack.pop();
                }
                _ => {}
            }
        }
    }
    stack.last().copied().unwrap_or(false)
}

/// Return types that can carry nothing secret.
const SAFE_RETURNS: &[&str] = &[
    "Result<()>",
    "Result<EnclaveId>",
    "Result<KeyHandle>",
    "Result<SessionId>",
    "Result<HeapUsage>",
    "Self",
    "u64",
    "usize",
    "EnclaveId",
];

pub fn expected_returns(r: Returns) -> &'static str {
    match r {
        Returns::Status => "Result<()>",
        Returns::EnclaveId => "Result<EnclaveId>",
        Returns::KeyHandle => "Result<KeyHandle>",
        Returns::SessionId => "Result<SessionId>",
        Returns::Digest => "Result<[u8; DIGEST_LEN]>",
        Returns::Ciphertext | Returns::Plaintext => "Result<Vec<u8>>",
        Returns::HeapUsage => "Result<HeapUsage>",
    }
}

/// Problems found; empty means the boundary discloses no key or IV bytes.
pub fn findings() -> Vec<String> {
    findings_in(SOURCE)
}

pub fn findings_in(source: &str) -> Vec<String> {
    let mut problems = Vec::new();
    let sigs = signatures_in(source);
    let entries: Vec<&Signature> = sigs.iter().filter(|s| s.entry_point).collect();

    for s in &sigs {
        let declared = BOUNDARY.iter().find(|(n, _)| *n == s.name);
        match (s.entry_point, declared) {
            (true, None) => problems.push(format!("{} is not in the boundary table", s.name)),
            (true, Some((_, r))) => {
                if s.returns != expected_returns(*r) {
                    problems.push(format!(
                        "{} returns {} but is declared {:?}",
                        s.name, s.returns, r
                    ));
                }
                let bytes_ok = match r {
                    Returns::Digest => s.name.starts_with("get_"),
                    Returns::Ciphertext => s.name.starts_with("encrypt_"),
                    Returns::Plaintext => s.name.starts_with("decrypt_"),
                    _ => SAFE_RETURNS.contains(&s.returns.as_str()),
                };
                if !bytes_ok {
                    problems.push(format!(
                        "{} returns bytes outside a digest or cipher call",
                        s.name
                    ));
                }
            }
            (false, _) => {
                if !SAFE_RETURNS.contains(&s.returns.as_str()) {
                    problems.push(format!("method {} returns {}", s.name, s.returns));
                }
            }
        }
        let lower = s.name.to_lowercase();
        if ["export", "get_key", "get_iv", "read_key", "dump"]
            .iter()
            .any(|w| lower.contains(w))
        {
            problems.push(format!("{} looks like a key or IV accessor", s.name));
        }
    }
    for (name, _) in BOUNDARY {
        if !entries.iter().any(|s| s.name == *name) {
            problems.push(format!(
                "boundary table lists {name} but no such function exists"
            ));
        }
    }
    // internal state modules must stay private
    for module in ["heap", "keystore", "registry", "rng", "session"] {
        if source.contains(&format!("pub mod {module}")) {
            problems.push(format!("internal module {module} is public"));
        }
    }
    // public data types expose no byte fields
    let byte_field = |l: &str| {
        let l = l.trim_start();
        l.starts_with("pub ")
            && !l.starts_with("pub fn")
            && (l.contains(": [u8") || l.contains(": Vec<u8>"))
    };
    if source.lines().any(byte_field) {
        problems.push("a public field holds raw bytes".to_string());
    }
    problems
}
