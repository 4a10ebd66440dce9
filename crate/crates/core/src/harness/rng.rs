//! Counter-based per-trial random streams.
//!
//! Every trial draws from a ChaCha stream whose key is derived from the
//! master seed and the suite identifier and whose stream number is the trial
//! index, so a trial's inputs do not depend on which thread runs it or on
//! how many trials ran before it.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

pub type TrialRng = ChaCha12Rng;

/// Random stream for trial `trial` of suite `suite` under `seed`.
pub fn trial_rng(seed: u64, suite: &str, trial: u64) -> TrialRng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update((suite.len() as u64).to_le_bytes());
    hasher.update(suite.as_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    let mut rng = ChaCha12Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}
