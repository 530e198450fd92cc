//! Seeded random streams.
//!
//! Each stream is a ChaCha8 generator keyed by a 64-bit seed and selected by
//! a 64-bit stream id, so draws depend only on `(seed, stream_id, index)` on
//! every platform. Floats are built from the top 53 bits of each output;
//! nothing here goes through `rand`'s distribution code, whose algorithms
//! are allowed to change between releases.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

/// Stream ids used by the simulators.
pub mod streams {
    pub const ARRIVALS: u64 = 0;
    pub const RETRANSMIT: u64 = 1;
    pub const BACKOFF: u64 = 2;
    /// Per-station arrival streams start here.
    pub const STATION_ARRIVALS: u64 = 1 << 32;
    /// Per-station backoff/retransmission streams start here.
    pub const STATION_BACKOFF: u64 = 2 << 32;
}

#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on (0, upper].
    pub fn uniform_open_closed(&mut self, upper: f64) -> f64 {
        upper * (1.0 - self.uniform())
    }

    /// Uniform integer on [1, n]. Rejection sampling keeps it unbiased.
    pub fn uniform_int(&mut self, n: u64) -> u64 {
        assert!(n >= 1);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return 1 + v % n;
            }
        }
    }

    /// Exponential with the given rate (mean 1/rate), by inversion.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        // 1 - u lies in (0, 1], so the log is finite
        -(1.0 - self.uniform()).ln() / rate
    }
}

/// Time to the next event of a Poisson process with intensity `rate_g`.
pub fn next_poisson_arrival(stream: &mut RandomStream, rate_g: f64) -> Result<f64> {
    if !(rate_g > 0.0 && rate_g.is_finite()) {
        return Err(Error::Domain { what: "arrival rate", value: rate_g });
    }
    Ok(stream.exponential(rate_g))
}

/// SplitMix64 finalizer. A bijection on u64.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
