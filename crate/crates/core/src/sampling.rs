//! Uniform random words, the geometric-runs construction, and uniform Lyndon
//! words by rejection.
//!
//! All randomness comes from [`RngState`], a ChaCha8 stream keyed by a 64-bit
//! seed and a stream index, so that every worker of a parallel run draws from
//! its own reproducible sequence.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::words::{least_rotation_index, smallest_period_with, Alphabet, Word};

pub const GENERATOR_NAME: &str = "ChaCha8Rng (rand_chacha 0.9), stream = worker index";

/// Deterministic generator for one `(seed, stream)` pair.
#[derive(Debug, Clone)]
pub struct RngState {
    rng: ChaCha8Rng,
    seed: u64,
    stream: u64,
}

impl RngState {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngState { rng, seed, stream }
    }

    pub fn from_seed(seed: u64) -> Self {
        RngState::new(seed, 0)
    }

    /// Independent stream `index` under the same seed.
    pub fn derive(&self, index: u64) -> Self {
        RngState::new(self.seed, index)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Fills `buf` with `n` independent uniform letters.
pub fn fill_uniform(buf: &mut Vec<u8>, n: usize, q: usize, rng: &mut RngState) {
    buf.clear();
    buf.reserve(n);
    if q.is_power_of_two() {
        let bits = q.trailing_zeros();
        let per_word = (64 / bits) as usize;
        let mask = (q - 1) as u64;
        while buf.len() < n {
            let mut x = rng.rng.next_u64();
            for _ in 0..per_word.min(n - buf.len()) {
                buf.push((x & mask) as u8);
                x >>= bits;
            }
        }
    } else {
        let q = q as u8;
        buf.extend((0..n).map(|_| rng.rng.random_range(0..q)));
    }
}

/// Uniform word of length `n`.
pub fn sample_word(n: usize, alphabet: Alphabet, rng: &mut RngState) -> Word {
    let mut buf = Vec::new();
    fill_uniform(&mut buf, n, alphabet.size(), rng);
    Word::from_trusted(buf, alphabet)
}

/// Uniform word built run by run: i.i.d. geometric run lengths with success
/// probability `(q-1)/q`, the first letter uniform and every later letter
/// uniform among those different from its predecessor, truncated to `n`.
pub fn sample_word_geometric(n: usize, alphabet: Alphabet, rng: &mut RngState) -> Word {
    let q = alphabet.size();
    let run_len = Geometric::new((q - 1) as f64 / q as f64).expect("valid probability");
    let mut buf = Vec::with_capacity(n);
    let mut letter = rng.rng.random_range(0..q) as u8;
    loop {
        let len = 1 + run_len.sample(&mut rng.rng) as usize;
        let take = len.min(n - buf.len());
        buf.extend(std::iter::repeat_n(letter, take));
        if buf.len() == n {
            break;
        }
        let next = rng.rng.random_range(0..q - 1) as u8;
        letter = if next >= letter { next + 1 } else { next };
    }
    Word::from_trusted(buf, alphabet)
}

/// Reusable buffers for drawing many Lyndon words of one length.
#[derive(Debug, Clone)]
pub struct LyndonSampler {
    n: usize,
    alphabet: Alphabet,
    buf: Vec<u8>,
    border: Vec<u32>,
}

impl LyndonSampler {
    pub fn new(n: usize, alphabet: Alphabet) -> Self {
        assert!(n >= 1, "Lyndon words have length >= 1");
        LyndonSampler {
            n,
            alphabet,
            buf: Vec::with_capacity(n),
            border: Vec::with_capacity(n),
        }
    }

    /// Draws uniform words until one is primitive and returns its least
    /// rotation, together with the number of rejected draws.
    pub fn draw(&mut self, rng: &mut RngState) -> (&[u8], u64) {
        let n = self.n;
        let mut rejected = 0u64;
        loop {
            fill_uniform(&mut self.buf, n, self.alphabet.size(), rng);
            let p = smallest_period_with(&self.buf, &mut self.border);
            if p == n || !n.is_multiple_of(p) {
                break;
            }
            rejected += 1;
        }
        let k = least_rotation_index(&self.buf);
        self.buf.rotate_left(k);
        debug_assert!(crate::words::is_lyndon_slice(&self.buf));
        (&self.buf, rejected)
    }
}

/// Uniform Lyndon word of length `n`.
pub fn sample_lyndon(n: usize, alphabet: Alphabet, rng: &mut RngState) -> Word {
    let mut sampler = LyndonSampler::new(n, alphabet);
    let (letters, _) = sampler.draw(rng);
    Word::from_trusted(letters.to_vec(), alphabet)
}
