//! Deterministic sampling.
//!
//! Every random draw comes from a ChaCha8 generator whose key is built
//! from `(seed, stream, index)`, so each sample of each suite can be
//! regenerated independently of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{GeometryError, Result};
use crate::numlin::AmbientVector;
use crate::sphere3s::{SpherePoint, TangentVector, ThreeSasakiStructure};

/// Counter-based stream keyed by a global seed and a stream id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleStream {
    seed: u64,
    stream: u64,
}

impl SampleStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        SampleStream { seed, stream }
    }

    /// Child stream, e.g. one per sub-check of a suite.
    pub fn substream(&self, sub: u64) -> Self {
        SampleStream {
            seed: self.seed,
            stream: self.stream.wrapping_mul(0x100).wrapping_add(sub + 1),
        }
    }

    /// Generator for the `index`-th sample.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream.to_le_bytes());
        key[16..24].copy_from_slice(&index.to_le_bytes());
        key[24..].copy_from_slice(b"hkc/smpl");
        ChaCha8Rng::from_seed(key)
    }

    /// A frame seed derived from this stream for sample `index`.
    pub fn frame_seed(&self, index: u64) -> u64 {
        self.rng(index).random()
    }
}

fn gaussian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> AmbientVector {
    AmbientVector::new((0..dim).map(|_| rng.sample(StandardNormal)).collect())
}

/// Uniformly distributed point of the sphere.
pub fn random_point<R: Rng + ?Sized>(s: &ThreeSasakiStructure, rng: &mut R) -> SpherePoint {
    loop {
        if let Ok(p) = SpherePoint::normalize(gaussian(s.ambient_dim(), rng)) {
            return p;
        }
    }
}

/// Gaussian tangent vector (not normalized).
pub fn random_tangent<R: Rng + ?Sized>(
    s: &ThreeSasakiStructure,
    x: &SpherePoint,
    rng: &mut R,
) -> TangentVector {
    TangentVector::project(x, &gaussian(s.ambient_dim(), rng)).expect("dimension matches structure")
}

/// Gaussian vector of `H_x` (not normalized). Errors when `n = 0`.
pub fn random_h<R: Rng + ?Sized>(
    s: &ThreeSasakiStructure,
    x: &SpherePoint,
    rng: &mut R,
) -> Result<TangentVector> {
    if s.n() == 0 {
        return Err(GeometryError::Precondition(
            "the contact distribution is trivial for n = 0".to_string(),
        ));
    }
    Ok(s.project_h(&random_tangent(s, x, rng)))
}

/// Unit vector of `H_x`, uniform on the unit sphere of `H_x`.
pub fn sample_unit_h<R: Rng + ?Sized>(
    s: &ThreeSasakiStructure,
    x: &SpherePoint,
    rng: &mut R,
) -> Result<TangentVector> {
    loop {
        let h = random_h(s, x, rng)?;
        let norm = h.norm();
        if norm > 1e-6 {
            let u = h.scaled(1.0 / norm);
            // one re-projection pass removes the rounding drift out of H
            let u = s.project_h(&u);
            return Ok(u.scaled(1.0 / u.norm()));
        }
    }
}
