#![allow(dead_code)]

use bigfree::realization::LengthAssignment;
use bigfree::sample;
use bigfree::tame::TameOracle;
use bigfree::{Letter, Segment, Sign, Tail, Word};
use proptest::prelude::*;

pub fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Pos), Just(Sign::Neg)]
}

pub fn letter(max: u64) -> impl Strategy<Value = Letter> {
    (1..=max, sign()).prop_map(|(i, s)| Letter::new(i, s))
}

pub fn tail() -> impl Strategy<Value = Tail> {
    (1u64..=4, 1u64..=2, sign()).prop_map(|(s, d, e)| Tail::new(s, d, e))
}

pub fn segment() -> impl Strategy<Value = Segment> {
    prop_oneof![
        prop::collection::vec(letter(5), 1..4).prop_map(Segment::Finite),
        tail().prop_map(Segment::Forward),
        tail().prop_map(Segment::Backward),
    ]
}

/// Unreduced words mixing finite runs and tails.
pub fn raw_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(segment(), 0..5).prop_map(|s| Word::from_segments(s).expect("segments are valid"))
}

pub fn word() -> impl Strategy<Value = Word> {
    raw_word().prop_map(|w| w.reduce())
}

pub fn finite_word(len: usize, letters: u64) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(letters), 0..=len).prop_map(Word::from_letters)
}

/// Words whose tails are all `α` or `α⁻¹` up to a finite prefix.
pub fn alpha_word() -> impl Strategy<Value = Word> {
    any::<u64>().prop_map(|seed| sample::alpha_word(&mut sample::rng(seed), 4, 4))
}

pub fn iota() -> impl Strategy<Value = LengthAssignment> {
    prop::sample::select(sample::iotas())
}

pub fn oracle() -> impl Strategy<Value = TameOracle> {
    prop_oneof![
        Just(TameOracle::fa()),
        Just(TameOracle::fa_alpha()),
        Just(TameOracle::bf())
    ]
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
