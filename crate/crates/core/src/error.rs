//! Error type shared by every module, with the stable code table the CLI
//! prints. Failures that audits are meant to *report* (a violated axiom, a
//! non-iso comparison map) are not errors; they are report content.

use crate::key::Key;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dangling reference: {0}")]
    DanglingRef(String),

    #[error("hom-set not enumerable: {0}")]
    NonEnumerableHom(String),

    #[error("no terminal object; near misses: {near_misses:?}")]
    NoTerminal { near_misses: Vec<Key> },

    #[error("no pullback exists for the cospan: {0}")]
    NoPullback(String),

    #[error("no coproduct exists: {0}")]
    NoCoproduct(String),

    #[error("morphism is not monic: {0}")]
    NotMonic(String),

    #[error("no coequaliser found: {0}")]
    NoCoequalizer(String),

    #[error("input is not an internal equivalence groupoid: missing factorisation for horn {horn}")]
    NotInternalGroupoid { horn: usize },

    #[error("saturation did not terminate within bound {bound}")]
    SaturationBound { bound: usize },

    #[error("enumeration cap exceeded: {need} candidates > cap {cap}")]
    CapExceeded { need: u128, cap: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid certificate: {0}")]
    BadCertificate(String),
}

impl Error {
    /// Stable machine-readable code, documented in the README.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DanglingRef(_) => "E_DANGLING_REF",
            Error::NonEnumerableHom(_) => "E_NON_ENUMERABLE",
            Error::NoTerminal { .. } => "E_NO_TERMINAL",
            Error::NoPullback(_) => "E_NO_PULLBACK",
            Error::NoCoproduct(_) => "E_NO_COPRODUCT",
            Error::NotMonic(_) => "E_NOT_MONIC",
            Error::NoCoequalizer(_) => "E_NO_COEQUALIZER",
            Error::NotInternalGroupoid { .. } => "E_NOT_INTERNAL_GROUPOID",
            Error::SaturationBound { .. } => "E_SATURATION_BOUND",
            Error::CapExceeded { .. } => "E_CAP_EXCEEDED",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Malformed(_) => "E_MALFORMED",
            Error::BadCertificate(_) => "E_BAD_CERTIFICATE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration cap, overridable through `LEXCAT_CAP`.
pub fn enumeration_cap() -> u64 {
    static CAP: std::sync::OnceLock<u64> = std::sync::OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("LEXCAT_CAP")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(1_000_000)
    })
}

/// Fails loudly when a candidate count exceeds the cap.
pub fn guard_cap(need: u128) -> Result<()> {
    let cap = enumeration_cap();
    if need > cap as u128 {
        return Err(Error::CapExceeded { need, cap });
    }
    Ok(())
}
