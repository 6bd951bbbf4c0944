//! Tiny deterministic generator (splitmix64) for seeded sampling in the
//! verification sweeps. Not cryptographic; stable across platforms.

#[derive(Debug, Clone)]
pub(crate) struct Rng {
    state: u64,
}

impl Rng {
    pub(crate) fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..m` (bias negligible for tiny m).
    pub(crate) fn below(&mut self, m: u64) -> u64 {
        debug_assert!(m > 0);
        self.next_u64() % m
    }
}
