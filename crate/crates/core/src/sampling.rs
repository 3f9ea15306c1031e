//! Seeded random sources for casts and needle drops.
//!
//! Each `(seed, stream_id)` pair selects one ChaCha8 keystream: the 256-bit
//! key is expanded from `seed` and `stream_id` is the 64-bit ChaCha stream
//! (nonce). Streams under one seed share the key and never overlap, so a batch
//! gives run `k` stream `k` and can schedule runs on any thread.
//!
//! Uniform reals are built from the top 53 bits of each 64-bit output, which
//! keeps sequences identical across platforms.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngConfig {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngConfig {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngConfig { seed, stream_id }
    }

    pub fn stream(&self) -> SampleStream {
        SampleStream::new(*self)
    }
}

/// The random variables of one triangle cast.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CastSample<T> {
    /// In `[0, 2π)`.
    pub rotation: T,
    /// In `[0, L)`.
    pub offset_x: T,
    /// In `[0, L)`.
    pub offset_y: T,
}

/// One needle drop: distance from the needle's midpoint to the nearest line
/// (in units of the line spacing) and the needle's angle to the lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeedleDrop<T> {
    /// In `[0, 1/2)`.
    pub distance: T,
    /// In `[0, π)`.
    pub angle: T,
}

/// Anything that can supply triangle casts: a seeded stream, or a fixed
/// sequence in tests.
pub trait CastSource<T> {
    fn next_cast(&mut self, spacing: T) -> Result<CastSample<T>>;
}

pub trait NeedleSource<T> {
    fn next_drop(&mut self) -> NeedleDrop<T>;
}

/// Single-owner generator state for one `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct SampleStream {
    config: RngConfig,
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(config: RngConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(config.stream_id);
        SampleStream { config, rng }
    }

    pub fn config(&self) -> RngConfig {
        self.config
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 bits of resolution.
    #[inline]
    pub fn unit_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[0, upper)`; `upper` must be positive and finite.
    ///
    /// A draw that rounds up to `upper` in `T` is redrawn.
    #[inline]
    fn uniform_below<T: Scalar>(&mut self, upper: T) -> T {
        loop {
            let x = T::lit(self.unit_f64()) * upper;
            if x < upper {
                return x;
            }
        }
    }

    /// Uniform on `[0, 2π)`.
    pub fn sample_rotation<T: Scalar>(&mut self) -> T {
        self.uniform_below(T::TAU())
    }

    /// Uniform on `[0, spacing)`.
    pub fn sample_offset<T: Scalar>(&mut self, spacing: T) -> Result<T> {
        if !spacing.is_positive_finite() {
            return Err(Error::invalid(format!("grid spacing must be positive and finite, got {spacing}")));
        }
        Ok(self.uniform_below(spacing))
    }

    /// Draws rotation, then `offset_x`, then `offset_y`.
    pub fn sample_cast<T: Scalar>(&mut self, spacing: T) -> Result<CastSample<T>> {
        if !spacing.is_positive_finite() {
            return Err(Error::invalid(format!("grid spacing must be positive and finite, got {spacing}")));
        }
        let rotation = self.sample_rotation();
        let offset_x = self.uniform_below(spacing);
        let offset_y = self.uniform_below(spacing);
        Ok(CastSample { rotation, offset_x, offset_y })
    }

    /// Draws distance, then angle.
    pub fn sample_needle<T: Scalar>(&mut self) -> NeedleDrop<T> {
        let distance = self.uniform_below(T::lit(0.5));
        let angle = self.uniform_below(T::PI());
        NeedleDrop { distance, angle }
    }
}

impl<T: Scalar> CastSource<T> for SampleStream {
    #[inline]
    fn next_cast(&mut self, spacing: T) -> Result<CastSample<T>> {
        self.sample_cast(spacing)
    }
}

impl<T: Scalar> NeedleSource<T> for SampleStream {
    #[inline]
    fn next_drop(&mut self) -> NeedleDrop<T> {
        self.sample_needle()
    }
}

/// Replays a fixed list of casts, cycling when exhausted.
#[derive(Debug, Clone)]
pub struct FixedCasts<T> {
    casts: Vec<CastSample<T>>,
    next: usize,
}

impl<T> FixedCasts<T> {
    pub fn new(casts: Vec<CastSample<T>>) -> Self {
        assert!(!casts.is_empty(), "FixedCasts needs at least one cast");
        FixedCasts { casts, next: 0 }
    }
}

impl<T: Scalar> CastSource<T> for FixedCasts<T> {
    fn next_cast(&mut self, spacing: T) -> Result<CastSample<T>> {
        let cast = self.casts[self.next];
        self.next = (self.next + 1) % self.casts.len();
        if !(cast.offset_x >= T::zero()
            && cast.offset_x < spacing
            && cast.offset_y >= T::zero()
            && cast.offset_y < spacing)
        {
            return Err(Error::invalid("fixed cast offsets must lie in [0, spacing)"));
        }
        Ok(cast)
    }
}
