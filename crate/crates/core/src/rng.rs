//! Seed derivation.
//!
//! Every random draw in the crate comes from a ChaCha8 stream whose 256-bit
//! key is `SHA-256(master_le || trial_le || purpose)`. Streams for distinct
//! trials or purposes are independent, and a given `(master, trial, purpose)`
//! produces the same draws on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub type StreamRng = ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    pub trial: u64,
    pub purpose: String,
}

impl Seed {
    pub fn new(master: u64) -> Self {
        Seed {
            master,
            trial: 0,
            purpose: String::new(),
        }
    }

    pub fn trial(&self, trial: u64) -> Self {
        Seed {
            trial,
            ..self.clone()
        }
    }

    /// Appends a `/`-separated tag to the purpose path.
    pub fn purpose(&self, tag: &str) -> Self {
        let purpose = if self.purpose.is_empty() {
            tag.to_string()
        } else {
            format!("{}/{}", self.purpose, tag)
        };
        Seed {
            purpose,
            ..self.clone()
        }
    }

    pub fn key(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(self.master.to_le_bytes());
        h.update(self.trial.to_le_bytes());
        h.update(self.purpose.as_bytes());
        h.finalize().into()
    }

    pub fn rng(&self) -> StreamRng {
        ChaCha8Rng::from_seed(self.key())
    }

    /// Compact label for reports, e.g. `7:3:plant`.
    pub fn label(&self) -> String {
        format!("{}:{}:{}", self.master, self.trial, self.purpose)
    }
}
