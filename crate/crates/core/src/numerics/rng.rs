//! Counter-based SplitMix64 random streams.
//!
//! A stream is the pair `(key, counter)`. Draw `i` of substream `s` is
//!
//! ```text
//! counter = (s << 40) + i + 1
//! output  = mix64(key + counter * 0x9e3779b97f4a7c15)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer (a bijection on `u64`). Substream 0
//! of seed `k` therefore reproduces the reference SplitMix64 sequence seeded with
//! `k` bit for bit. Because `counter -> output` is a bijection for a fixed key,
//! distinct substreams never share a counter value for their first 2^40 - 1
//! draws and so never overlap.
//!
//! Reference values (seed 0): `0xe220a8397b1dcdaf`, `0x6e789e6aa1b965f4`,
//! `0x06c45d188009454f`.

use serde::{Deserialize, Serialize};

use super::special::normal_quantile;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
const SUBSTREAM_SHIFT: u32 = 40;

/// Largest number of draws a single substream can make before it would run
/// into the counter range of the next one.
pub const SUBSTREAM_CAPACITY: u64 = (1 << SUBSTREAM_SHIFT) - 1;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A deterministic random stream. Advanced explicitly by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    seed: u64,
    substream: u64,
    position: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    /// Substream `index` of `seed`. Indices must be below 2^24.
    pub fn substream(seed: u64, index: u64) -> Self {
        assert!(
            index < (1 << (64 - SUBSTREAM_SHIFT)),
            "substream index out of range"
        );
        Self {
            seed,
            substream: index,
            position: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of values drawn so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        debug_assert!(self.position < SUBSTREAM_CAPACITY, "substream exhausted");
        let counter = (self.substream << SUBSTREAM_SHIFT) + self.position + 1;
        self.position += 1;
        mix64(self.seed.wrapping_add(counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..bound` by rejection (no modulo bias).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Standard normal draw by inverse-CDF transform of one uniform.
    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        let u = self.next_open01();
        normal_quantile(u).expect("open-interval uniform is always a valid probability")
    }

    pub fn normal(&mut self, mean: f64, std: f64) -> f64 {
        mean + std * self.standard_normal()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substream_zero_matches_reference_splitmix64() {
        let mut s = RngStream::new(0);
        assert_eq!(s.next_u64(), 0xe220_a839_7b1d_cdaf);
        assert_eq!(s.next_u64(), 0x6e78_9e6a_a1b9_65f4);
        assert_eq!(s.next_u64(), 0x06c4_5d18_8009_454f);

        let mut s = RngStream::new(42);
        assert_eq!(s.next_u64(), 0xbdd7_3226_2feb_6e95);
        assert_eq!(s.next_u64(), 0x28ef_e333_b266_f103);
    }

    #[test]
    fn substream_one_vector() {
        let mut s = RngStream::substream(42, 1);
        assert_eq!(s.next_u64(), 0x83d3_8e0e_dbd4_3334);
        assert_eq!(s.next_u64(), 0x7a4e_3171_f91b_eaf9);
    }

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::new(7);
        let mut b = RngStream::new(7);
        for _ in 0..1000 {
            assert_eq!(a.standard_normal().to_bits(), b.standard_normal().to_bits());
        }
    }

    #[test]
    fn different_seeds_disagree_on_first_100() {
        let mut a = RngStream::new(1);
        let mut b = RngStream::new(2);
        for _ in 0..100 {
            assert_ne!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn substreams_do_not_share_counters() {
        // Substream s covers counters (s << 40) + 1 ..= (s << 40) + 2^40 - 1.
        let last_of_zero = (0u64 << SUBSTREAM_SHIFT) + SUBSTREAM_CAPACITY;
        let first_of_one = (1u64 << SUBSTREAM_SHIFT) + 1;
        assert!(last_of_zero < first_of_one);
    }

    #[test]
    fn open01_stays_open() {
        let mut s = RngStream::new(3);
        for _ in 0..10_000 {
            let u = s.next_open01();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn next_below_in_range() {
        let mut s = RngStream::new(5);
        let mut seen = [0usize; 7];
        for _ in 0..7000 {
            seen[s.next_below(7) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| c > 800 && c < 1200), "{seen:?}");
    }

    #[test]
    fn standard_normal_moments_over_a_million_draws() {
        let n = 1_000_000;
        let mut s = RngStream::new(2024);
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let z = s.standard_normal();
            sum += z;
            sum_sq += z * z;
        }
        let mean = sum / n as f64;
        let var = (sum_sq - n as f64 * mean * mean) / (n as f64 - 1.0);
        assert!(mean.abs() < 0.005, "mean {mean}");
        assert!((var - 1.0).abs() < 0.01, "var {var}");
    }
}
