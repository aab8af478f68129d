//! Seeded random words for property checks and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::rational;
use crate::realization::LengthAssignment;
use crate::word::{Letter, Segment, Sign, Tail, Word};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign(rng: &mut SampleRng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

pub fn letter(rng: &mut SampleRng, letters: u64) -> Letter {
    Letter::new(rng.gen_range(1..=letters), sign(rng))
}

/// An unreduced finite word of length `0..=max_len` over `a_1..a_letters`.
pub fn finite_letters(rng: &mut SampleRng, max_len: usize, letters: u64) -> Vec<Letter> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| letter(rng, letters)).collect()
}

pub fn finite_word(rng: &mut SampleRng, max_len: usize, letters: u64) -> Word {
    Word::from_letters(finite_letters(rng, max_len, letters)).reduce()
}

/// Shapes of tails drawn by [`word`].
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub segments: usize,
    pub letters: u64,
    pub max_start: u64,
    pub max_stride: u64,
}

impl Default for Shape {
    fn default() -> Shape {
        Shape {
            segments: 4,
            letters: 5,
            max_start: 4,
            max_stride: 2,
        }
    }
}

pub fn tail(rng: &mut SampleRng, shape: &Shape) -> Tail {
    Tail::new(
        rng.gen_range(1..=shape.max_start),
        rng.gen_range(1..=shape.max_stride),
        sign(rng),
    )
}

/// A reduced word of up to `shape.segments` segments.
pub fn word(rng: &mut SampleRng, shape: &Shape) -> Word {
    let n = rng.gen_range(1..=shape.segments);
    let mut segs = Vec::with_capacity(n);
    for _ in 0..n {
        segs.push(match rng.gen_range(0..3) {
            0 => {
                let k = rng.gen_range(1..=3);
                Segment::Finite((0..k).map(|_| letter(rng, shape.letters)).collect())
            }
            1 => Segment::Forward(tail(rng, shape)),
            _ => Segment::Backward(tail(rng, shape)),
        });
    }
    Word::from_segments(segs).expect("valid segments").reduce()
}

/// A reduced word whose tails all eventually agree with `α^{±1}`.
pub fn alpha_word(rng: &mut SampleRng, segments: usize, letters: u64) -> Word {
    let mut w = Word::empty();
    for _ in 0..rng.gen_range(1..=segments) {
        let piece = match rng.gen_range(0..3) {
            0 => finite_word(rng, 3, letters),
            1 => Word::forward(rng.gen_range(1..=3), 1, Sign::Pos),
            _ => Word::backward(rng.gen_range(1..=3), 1, Sign::Neg),
        };
        w = w.concat(&piece);
    }
    w.reduce()
}

/// A handful of length assignments with closed-form tails.
pub fn iotas() -> Vec<LengthAssignment> {
    let q = rational::ratio;
    vec![
        LengthAssignment::dyadic(),
        LengthAssignment::geometric(q(2, 3), q(1, 3)).expect("valid"),
        LengthAssignment::geometric(q(1, 1), q(2, 5)).expect("valid"),
        LengthAssignment::with_overrides(vec![q(1, 1), q(1, 2), q(1, 2)], q(1, 2), q(1, 2)).expect("valid"),
    ]
}
