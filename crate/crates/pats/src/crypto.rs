//! RSA keys and PKCS#1 v1.5 / SHA-256 signatures over wire bytes.

use std::path::{Path, PathBuf};

use pats_core::dist::PublicKey;
use rsa::pkcs1v15::{Signature, SigningKey, VerifyingKey};
use rsa::pkcs8::{DecodePrivateKey, DecodePublicKey, EncodePrivateKey, EncodePublicKey, LineEnding};
use rsa::sha2::Sha256;
use rsa::signature::{SignatureEncoding, Signer, Verifier};
use rsa::traits::PublicKeyParts;
use rsa::{BigUint, RsaPrivateKey, RsaPublicKey};

pub const KEY_BITS: usize = 2048;

#[derive(Debug, thiserror::Error)]
pub enum KeyError {
    #[error("rsa: {0}")]
    Rsa(#[from] rsa::Error),
    #[error("key encoding: {0}")]
    Pkcs8(#[from] rsa::pkcs8::Error),
    #[error("key encoding: {0}")]
    Spki(#[from] rsa::pkcs8::spki::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> KeyError + '_ {
    move |source| KeyError::Io { path: path.display().to_string(), source }
}

#[derive(Clone)]
pub struct KeyPair {
    pub private: RsaPrivateKey,
}

impl KeyPair {
    pub fn generate() -> Result<KeyPair, KeyError> {
        Self::generate_bits(KEY_BITS)
    }

    pub fn generate_bits(bits: usize) -> Result<KeyPair, KeyError> {
        Ok(KeyPair { private: RsaPrivateKey::new(&mut rand::thread_rng(), bits)? })
    }

    pub fn public(&self) -> RsaPublicKey {
        self.private.to_public_key()
    }

    pub fn wire_public(&self) -> PublicKey {
        to_wire(&self.public())
    }

    pub fn sign(&self, msg: &[u8]) -> Vec<u8> {
        SigningKey::<Sha256>::new(self.private.clone()).sign(msg).to_vec()
    }

    /// Writes `<stem>.pem` (private, PKCS#8) and `<stem>.pub.pem` (SPKI).
    pub fn save(&self, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf), KeyError> {
        let private = dir.join(format!("{stem}.pem"));
        let public = dir.join(format!("{stem}.pub.pem"));
        let pem = self.private.to_pkcs8_pem(LineEnding::LF)?;
        std::fs::write(&private, pem.as_bytes()).map_err(io(&private))?;
        std::fs::write(&public, self.public().to_public_key_pem(LineEnding::LF)?).map_err(io(&public))?;
        Ok((private, public))
    }

    /// Reads a PKCS#8 private key, PEM or DER.
    pub fn load(path: &Path) -> Result<KeyPair, KeyError> {
        let bytes = std::fs::read(path).map_err(io(path))?;
        let private = match std::str::from_utf8(&bytes) {
            Ok(s) if s.contains("-----BEGIN") => RsaPrivateKey::from_pkcs8_pem(s)?,
            _ => RsaPrivateKey::from_pkcs8_der(&bytes)?,
        };
        Ok(KeyPair { private })
    }
}

/// Reads an SPKI public key, PEM or DER.
pub fn load_public(path: &Path) -> Result<PublicKey, KeyError> {
    let bytes = std::fs::read(path).map_err(io(path))?;
    let key = match std::str::from_utf8(&bytes) {
        Ok(s) if s.contains("-----BEGIN") => RsaPublicKey::from_public_key_pem(s)?,
        _ => RsaPublicKey::from_public_key_der(&bytes)?,
    };
    Ok(to_wire(&key))
}

pub fn to_wire(k: &RsaPublicKey) -> PublicKey {
    PublicKey { modulus: k.n().to_bytes_be(), exponent: k.e().to_bytes_be() }
}

pub fn from_wire(k: &PublicKey) -> Result<RsaPublicKey, KeyError> {
    Ok(RsaPublicKey::new(BigUint::from_bytes_be(&k.modulus), BigUint::from_bytes_be(&k.exponent))?)
}

pub fn verify(key: &PublicKey, msg: &[u8], sig: &[u8]) -> bool {
    let Ok(pk) = from_wire(key) else { return false };
    let Ok(sig) = Signature::try_from(sig) else { return false };
    VerifyingKey::<Sha256>::new(pk).verify(msg, &sig).is_ok()
}
