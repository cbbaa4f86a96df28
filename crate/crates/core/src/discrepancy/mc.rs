//! Monte Carlo machinery: mergeable running moments and seeded shard streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Number of independent random streams a Monte Carlo run is split into.
/// Fixed, so results do not depend on how many threads process the shards.
pub const DEFAULT_SHARDS: usize = 16;

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    /// Sample standard deviation over `√samples`.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Running mean and sum of squared deviations (Welford), mergeable with the
/// pairwise update of Chan, Golub and LeVeque.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.count as f64, other.count as f64);
        self.mean += delta * nb / n as f64;
        self.m2 += other.m2 + delta * delta * na * nb / n as f64;
        self.count = n;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance (0 for fewer than two samples).
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// `scale · mean` with standard error `scale · sd/√n`.
    pub fn estimate(&self, scale: f64, seed: u64) -> McEstimate {
        let stderr = if self.count == 0 { 0.0 } else { libm::sqrt(self.variance() / self.count as f64) };
        McEstimate { value: scale * self.mean, stderr: scale * stderr, samples: self.count, seed }
    }
}

/// The random stream of shard `index` for `seed`.
pub fn shard_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Samples assigned to shard `index` when `total` are split over `shards`.
pub fn shard_len(total: u64, shards: usize, index: usize) -> u64 {
    let s = shards as u64;
    total / s + u64::from((index as u64) < total % s)
}
