use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use alloc::vec::Vec;

use crate::ambient::AmbientVector;

/// Independent random streams a trial can draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    /// Configuration sampling.
    Config = 1,
    /// Probe points for the cross-check in [`super::verify_vn`].
    Probe = 2,
    /// Constructive quadruples for the four-point form.
    FourPoint = 3,
    /// The counterexample generator.
    Counterexample = 4,
    /// Nested subspace pairs and other property checks.
    Property = 5,
    /// Displacement of the foot in a negative control.
    Perturb = 6,
}

/// Counter-based generator keyed by `(seed, trial, stream)`.
///
/// Each key yields an independent ChaCha8 stream, so trials can run in any
/// order or in parallel and still draw identical numbers.
#[derive(Debug, Clone)]
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    /// Generator for one trial and stream.
    pub fn new(seed: u64, trial: u64, stream: Stream) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&trial.to_le_bytes());
        key[16..24].copy_from_slice(b"spcform1");
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream as u64);
        Self(rng)
    }

    /// Standard normal deviate.
    pub fn normal(&mut self) -> f64 {
        self.0.sample(StandardNormal)
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.random_range(lo..hi)
    }

    /// Vector of i.i.d. standard normals.
    pub fn gaussian(&mut self, dim: usize) -> AmbientVector {
        let coords: Vec<f64> = (0..dim).map(|_| self.normal()).collect();
        AmbientVector::from_vec(coords)
    }

    /// Raw 64-bit draw.
    pub fn next_u64(&mut self) -> u64 {
        self.0.random()
    }
}

/// Seed of trial `index` in a run with base seed `base` (SplitMix64 mixing).
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
