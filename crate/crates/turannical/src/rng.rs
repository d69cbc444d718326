//! Deterministic, platform-independent random number generation.
//!
//! All randomness in this crate flows from SplitMix64, used in counter mode:
//! the j-th output for a given seed is a pure function of `(seed, j)`, so any
//! draw can be addressed directly without generating its predecessors. This
//! makes per-index coupling across probability grids and order-independent
//! parallel trials possible, and the output is bit-identical on every
//! platform and thread count.

pub const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

const SALT_HYPERGRAPH: u64 = 0x48_59_50_45_52_01;
const SALT_GRAPH: u64 = 0x47_52_41_50_48_02;

/// Finalizer from SplitMix64 (Steele, Lea & Flood).
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z
}

/// The j-th raw output of the stream identified by `seed`.
#[inline]
pub fn indexed_u64(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// The j-th uniform draw in `[0, 1)` of the stream identified by `seed`.
#[inline]
pub fn indexed_unit(seed: u64, index: u64) -> f64 {
    to_unit(indexed_u64(seed, index))
}

/// Maps a raw 64-bit value to `[0, 1)` with 53-bit resolution.
#[inline]
pub fn to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seed for trial `t` of an ensemble with the given master seed.
///
/// Trials are keyed by `master_seed XOR trial_index`; results for a fixed
/// master seed therefore merge associatively regardless of scheduling.
#[inline]
pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    master_seed ^ trial
}

/// Domain-separated seed for hypergraph sampling within a trial.
#[inline]
pub fn hypergraph_seed(seed: u64) -> u64 {
    mix64(seed ^ SALT_HYPERGRAPH)
}

/// Domain-separated seed for graph sampling within a trial; `slot`
/// distinguishes independent graphs drawn in the same trial.
#[inline]
pub fn graph_seed(seed: u64, slot: u64) -> u64 {
    mix64(seed ^ SALT_GRAPH ^ mix64(slot.wrapping_mul(GOLDEN)))
}

/// Sequential SplitMix64 stream, for draws that are inherently ordered
/// (geometric skip sampling, local-search restarts).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        to_unit(self.next_u64())
    }

    /// Uniform integer in `[0, bound)` via rejection-free multiply-shift.
    #[inline]
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexed_matches_sequential() {
        let seed = 0xDEADBEEF;
        let mut sm = SplitMix64::new(seed);
        for j in 0..100 {
            assert_eq!(sm.next_u64(), indexed_u64(seed, j));
        }
    }

    #[test]
    fn unit_range() {
        for j in 0..10_000 {
            let u = indexed_unit(42, j);
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn golden_values_are_stable() {
        // Frozen outputs; a change here breaks every seeded contract.
        // mix64(GOLDEN) is the published first output of SplitMix64 seeded with 0.
        assert_eq!(mix64(GOLDEN), 0xE220_A839_7B1D_CDAF);
        assert_eq!(indexed_u64(0, 0), mix64(GOLDEN));
        let frozen: [u64; 4] = [
            0x63CB_E1E4_5932_0DD7,
            0x044C_3CD7_F43C_661C,
            0xE698_4080_BAB1_2A02,
            0x953A_EB70_673E_29CB,
        ];
        for (j, want) in frozen.iter().enumerate() {
            assert_eq!(indexed_u64(7, j as u64), *want);
        }
        assert_eq!(indexed_unit(42, 0), 7.415_648_787_718_233e-1);
    }

    #[test]
    fn next_below_in_range() {
        let mut sm = SplitMix64::new(9);
        for _ in 0..1000 {
            assert!(sm.next_below(7) < 7);
        }
    }
}
