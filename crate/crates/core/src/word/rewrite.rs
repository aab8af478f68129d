//! Single-step cancellation rewriting.
//!
//! [`Word::reduce`] applies cancellations in one fixed order. This module
//! exposes the individual steps so that any order can be explored; every
//! maximal rewriting sequence should end at the same canonical form.

use std::collections::VecDeque;

use super::reduce::{cancel_step, canonicalize, junction_cancellable};
use super::{Segment, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    /// Letters `offset` and `offset + 1` of a finite segment are inverse.
    Adjacent { segment: usize, offset: usize },
    /// The junction between segment `left` and `left + 1` admits a cancellation.
    Junction { left: usize },
}

pub fn redexes(w: &Word) -> Vec<Redex> {
    let segs = w.segments();
    let mut out = Vec::new();
    for (i, s) in segs.iter().enumerate() {
        if let Segment::Finite(l) = s {
            for k in 0..l.len().saturating_sub(1) {
                if l[k].is_inverse_of(l[k + 1]) {
                    out.push(Redex::Adjacent { segment: i, offset: k });
                }
            }
        }
        if i + 1 < segs.len() && junction_cancellable(s, &segs[i + 1]) {
            out.push(Redex::Junction { left: i });
        }
    }
    out
}

/// Applies one unit of cancellation at `r`. Segments are left unmerged.
pub fn contract(w: &Word, r: Redex) -> Word {
    let mut segs = w.segments().to_vec();
    match r {
        Redex::Adjacent { segment, offset } => {
            if let Segment::Finite(l) = &mut segs[segment] {
                l.drain(offset..offset + 2);
            }
            Word::from_raw(segs)
        }
        Redex::Junction { left } => {
            let mut right: VecDeque<Segment> = segs.split_off(left + 1).into();
            let mut head = segs;
            let mut tail_rest: VecDeque<Segment> = VecDeque::new();
            // isolate the first right segment so a step only touches this junction
            if let Some(front) = right.pop_front() {
                tail_rest = std::mem::take(&mut right);
                right.push_back(front);
            }
            cancel_step(&mut head, &mut right);
            head.extend(right);
            head.extend(tail_rest);
            Word::from_raw(head)
        }
    }
}

/// Rewrites to a normal form, choosing among available redexes with `pick`.
pub fn normalize_with(w: &Word, mut pick: impl FnMut(usize) -> usize) -> Word {
    let mut cur = w.clone();
    loop {
        let rs = redexes(&cur);
        if rs.is_empty() {
            return Word::from_raw(canonicalize(cur.into_segments()));
        }
        let r = rs[pick(rs.len()) % rs.len()];
        cur = contract(&cur, r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_both_kinds_of_redex() {
        let w: Word = "a1 A1 T(1) R'(1)".parse().unwrap();
        let rs = redexes(&w);
        assert!(rs.contains(&Redex::Adjacent { segment: 0, offset: 0 }));
        assert!(rs.contains(&Redex::Junction { left: 1 }));
    }

    #[test]
    fn every_order_reaches_the_same_form() {
        let w: Word = "a2 T(1) R'(3) A1 a1 A2 R(1) T'(1) a4".parse().unwrap();
        let expected = w.reduce();
        for seed in 0..40u64 {
            let mut state = seed;
            let nf = normalize_with(&w, |n| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 33) as usize % n
            });
            assert_eq!(nf, expected, "seed {seed}");
        }
    }
}
