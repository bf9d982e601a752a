//! Deterministic pseudo-random generator for experiments.
//!
//! xoshiro256** seeded through splitmix64, as published by Blackman and
//! Vigna. The algorithm is fixed here so a recorded seed reproduces the
//! exact same experiment on every run; cryptographic quality is not a goal.

#[derive(Clone, Debug)]
pub struct SeededRng {
    state: [u64; 4],
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let state = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        SeededRng { state }
    }

    /// Independent substream `index` of a master seed, for per-sample rngs.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut sm = seed ^ index.wrapping_mul(0xa0761d6478bd642f);
        let _ = splitmix64(&mut sm);
        SeededRng::new(splitmix64(&mut sm))
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform value in `[0, bound)` by rejection; `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform f64 in `[0, 1)` using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `count` distinct values from `[0, n)`, returned sorted.
    pub fn sample_distinct(&mut self, n: u64, count: u64) -> Vec<u64> {
        assert!(count <= n, "cannot sample {count} from {n}");
        let mut pool: Vec<u64> = (0..n).collect();
        let take = count as usize;
        for i in 0..take {
            let j = i + self.below(n - i as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(take);
        pool.sort_unstable();
        pool
    }

    /// Nonempty subset of `[0, n)` with uniformly chosen size, sorted.
    pub fn nonempty_subset(&mut self, n: u64) -> Vec<u64> {
        let size = 1 + self.below(n);
        self.sample_distinct(n, size)
    }
}
