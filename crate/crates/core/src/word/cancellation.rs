//! Checking a proposed cancellation `(T, ∗)` against the four conditions:
//! `∗` is an involution on `T`; `[t, t∗]_S ⊆ T`; `[t, t∗]` is closed under
//! `∗`; and `w(t∗) = w(t)⁻¹`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Cut, Position, Segment, Word};
use crate::error::{Error, Result};

/// Pairs offset `left_skip + t` of tail segment `left` with offset
/// `right_skip + t` of tail segment `right`, for every `t >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorRule {
    pub left: usize,
    pub right: usize,
    pub left_skip: u64,
    pub right_skip: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationPairing {
    pub pairs: Vec<(Position, Position)>,
    pub mirrors: Vec<MirrorRule>,
}

impl CancellationPairing {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.mirrors.is_empty()
    }
}

/// Contiguous offsets `[lo, hi)` of one segment; `hi == None` is unbounded.
#[derive(Clone, Copy, Debug)]
struct Piece {
    segment: usize,
    lo: u64,
    hi: Option<u64>,
}

impl Piece {
    fn contains(&self, offset: u64) -> bool {
        offset >= self.lo && self.hi.is_none_or(|h| offset < h)
    }
}

struct Pairing<'a> {
    word: &'a Word,
    pairs: &'a [(Position, Position)],
    finite: HashSet<Position>,
    /// (segment, skip) for every ray of every mirror rule.
    rays: Vec<(usize, u64)>,
}

impl Pairing<'_> {
    fn in_t(&self, p: Position) -> bool {
        self.finite.contains(&p) || self.rays.iter().any(|&(s, k)| s == p.segment && p.offset >= k)
    }

    /// Offsets of each segment strictly between two cuts.
    fn pieces(&self, from: Cut, to: Cut) -> Vec<Piece> {
        let w = self.word;
        let n = w.segments().len();
        let (lo_seg, lo_off) = match from {
            Cut::Boundary(i) => (i, None),
            Cut::Inside { segment, offset } => (segment, Some(offset)),
        };
        let (hi_seg, hi_off) = match to {
            Cut::Boundary(0) => return Vec::new(),
            Cut::Boundary(i) => (i - 1, None),
            Cut::Inside { segment, offset } => (segment, Some(offset)),
        };
        let mut out = Vec::new();
        for i in lo_seg..=hi_seg.min(n.saturating_sub(1)) {
            let a = if i == lo_seg { lo_off } else { None };
            let b = if i == hi_seg { hi_off } else { None };
            let piece = match &w.segments()[i] {
                Segment::Finite(l) => Piece {
                    segment: i,
                    lo: a.unwrap_or(0),
                    hi: Some(b.unwrap_or(l.len() as u64)),
                },
                Segment::Forward(_) => Piece {
                    segment: i,
                    lo: a.unwrap_or(0),
                    hi: b,
                },
                // offsets count from the end: the lower cut bounds them above
                Segment::Backward(_) => Piece {
                    segment: i,
                    lo: b.unwrap_or(0),
                    hi: a,
                },
            };
            if piece.hi.is_none_or(|h| h > piece.lo) {
                out.push(piece);
            }
        }
        out
    }

    fn in_region(pieces: &[Piece], p: Position) -> bool {
        pieces.iter().any(|q| q.segment == p.segment && q.contains(p.offset))
    }

    /// `region ⊆ T` and `region∗ ⊆ region`.
    fn region_ok(&self, pieces: &[Piece], rules: &[MirrorRule]) -> bool {
        for piece in pieces {
            match piece.hi {
                Some(h) => {
                    if !(piece.lo..h).all(|o| self.in_t(Position::new(piece.segment, o))) {
                        return false;
                    }
                }
                None => {
                    let Some(&(_, skip)) = self.rays.iter().find(|(s, _)| *s == piece.segment) else {
                        return false;
                    };
                    if !(piece.lo..skip.max(piece.lo)).all(|o| self.finite.contains(&Position::new(piece.segment, o))) {
                        return false;
                    }
                }
            }
        }
        for &(p, q) in self.pairs {
            if Self::in_region(pieces, p) != Self::in_region(pieces, q) {
                return false;
            }
        }
        for r in rules {
            for (a, sa, b, sb) in [
                (r.left, r.left_skip, r.right, r.right_skip),
                (r.right, r.right_skip, r.left, r.left_skip),
            ] {
                let Some(src) = pieces.iter().find(|x| x.segment == a) else {
                    continue;
                };
                let lo = src.lo.max(sa);
                if src.hi.is_some_and(|h| h <= lo) {
                    continue;
                }
                let image_lo = lo - sa + sb;
                let image_hi = src.hi.map(|h| h - sa + sb);
                let Some(dst) = pieces.iter().find(|x| x.segment == b) else {
                    return false;
                };
                let lo_ok = image_lo >= dst.lo;
                let hi_ok = match (image_hi, dst.hi) {
                    (_, None) => true,
                    (None, Some(_)) => false,
                    (Some(x), Some(y)) => x <= y,
                };
                if !(lo_ok && hi_ok) {
                    return false;
                }
            }
        }
        true
    }
}

impl Word {
    /// Whether `p` satisfies all four cancellation conditions on this word.
    /// The empty pairing is vacuously valid.
    pub fn validate_cancellation(&self, p: &CancellationPairing) -> Result<bool> {
        for &(a, b) in &p.pairs {
            self.check_position(a)?;
            self.check_position(b)?;
        }
        let mut rules = Vec::new();
        for r in &p.mirrors {
            for s in [r.left, r.right] {
                match self.segments().get(s) {
                    Some(seg) if seg.is_tail() => {}
                    _ => {
                        return Err(Error::InvalidPosition(format!(
                            "mirror rule on segment {s} needs a tail"
                        )))
                    }
                }
            }
            if r.left == r.right {
                return Ok(false);
            }
            rules.push(if r.left < r.right {
                *r
            } else {
                MirrorRule {
                    left: r.right,
                    right: r.left,
                    left_skip: r.right_skip,
                    right_skip: r.left_skip,
                }
            });
        }

        // involution: every element paired exactly once, never with itself
        let mut finite = HashSet::new();
        for &(a, b) in &p.pairs {
            if a == b || !finite.insert(a) || !finite.insert(b) {
                return Ok(false);
            }
        }
        let rays: Vec<(usize, u64)> = rules
            .iter()
            .flat_map(|r| [(r.left, r.left_skip), (r.right, r.right_skip)])
            .collect();
        for (i, &(s, _)) in rays.iter().enumerate() {
            if rays[i + 1..].iter().any(|&(t, _)| t == s) {
                return Ok(false);
            }
        }
        let pairing = Pairing {
            word: self,
            pairs: &p.pairs,
            finite: finite.clone(),
            rays,
        };
        if finite
            .iter()
            .any(|&x| pairing.rays.iter().any(|&(s, k)| s == x.segment && x.offset >= k))
        {
            return Ok(false);
        }

        // w(t∗) = w(t)⁻¹
        for &(a, b) in &p.pairs {
            if !self.letter_at(a)?.is_inverse_of(self.letter_at(b)?) {
                return Ok(false);
            }
        }
        for r in &rules {
            let (la, lb) = (&self.segments()[r.left], &self.segments()[r.right]);
            let (ta, tb) = match (la, lb) {
                (Segment::Forward(a), Segment::Backward(b)) | (Segment::Backward(a), Segment::Forward(b)) => (a, b),
                // same orientation on both sides: the pairs interleave
                _ => return Ok(false),
            };
            let aligned = ta.stride == tb.stride
                && ta.sign != tb.sign
                && ta.start + r.left_skip * ta.stride == tb.start + r.right_skip * tb.stride;
            if !aligned {
                return Ok(false);
            }
        }

        // interval conditions, checked on one generating interval per pair or rule
        for &(a, b) in &p.pairs {
            let (a, b) = if self.cmp_cuts(self.cut_before(a)?, self.cut_before(b)?).is_lt() {
                (a, b)
            } else {
                (b, a)
            };
            let pieces = pairing.pieces(self.cut_before(a)?, self.cut_after(b)?);
            if !pairing.region_ok(&pieces, &rules) {
                return Ok(false);
            }
        }
        for r in &rules {
            let from = self.cut_before(Position::new(r.left, r.left_skip))?;
            let to = self.cut_after(Position::new(r.right, r.right_skip))?;
            let pieces = pairing.pieces(from, to);
            if !pairing.region_ok(&pieces, &rules) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn pairs(ps: &[(u64, u64)]) -> CancellationPairing {
        CancellationPairing {
            pairs: ps
                .iter()
                .map(|&(a, b)| (Position::new(0, a), Position::new(0, b)))
                .collect(),
            mirrors: Vec::new(),
        }
    }

    #[test]
    fn adjacent_inverse_pair_is_valid() {
        assert!(w("a1 A1").validate_cancellation(&pairs(&[(0, 1)])).unwrap());
    }

    #[test]
    fn crossing_pairs_fail_closure() {
        let x = w("a1 a2 A1 A2");
        assert!(!x.validate_cancellation(&pairs(&[(0, 2), (1, 3)])).unwrap());
    }

    #[test]
    fn nested_pairs_are_valid() {
        let x = w("a1 a2 A2 A1");
        assert!(x.validate_cancellation(&pairs(&[(0, 3), (1, 2)])).unwrap());
        // outer pair alone leaves an unpaired letter inside
        assert!(!x.validate_cancellation(&pairs(&[(0, 3)])).unwrap());
    }

    #[test]
    fn letter_mismatch_and_self_pairs_fail() {
        assert!(!w("a1 a1").validate_cancellation(&pairs(&[(0, 1)])).unwrap());
        assert!(!w("a1 A1").validate_cancellation(&pairs(&[(0, 0)])).unwrap());
        assert!(w("a1 A1").validate_cancellation(&pairs(&[(0, 5)])).is_err());
    }

    #[test]
    fn mirror_rule_on_omega_plus_omega_star() {
        let x = w("T(1) R'(1)");
        let p = CancellationPairing {
            pairs: vec![],
            mirrors: vec![MirrorRule {
                left: 0,
                right: 1,
                left_skip: 0,
                right_skip: 0,
            }],
        };
        assert!(x.validate_cancellation(&p).unwrap());
    }

    #[test]
    fn partial_mirror_rule() {
        let x = w("T(1) R'(3)");
        let ok = CancellationPairing {
            pairs: vec![],
            mirrors: vec![MirrorRule {
                left: 0,
                right: 1,
                left_skip: 2,
                right_skip: 0,
            }],
        };
        assert!(x.validate_cancellation(&ok).unwrap());
        let misaligned = CancellationPairing {
            pairs: vec![],
            mirrors: vec![MirrorRule {
                left: 0,
                right: 1,
                left_skip: 0,
                right_skip: 0,
            }],
        };
        assert!(!x.validate_cancellation(&misaligned).unwrap());
    }

    #[test]
    fn mirror_with_unpaired_letter_between_fails() {
        let x = w("T(1) a5 R'(1)");
        let p = CancellationPairing {
            pairs: vec![],
            mirrors: vec![MirrorRule {
                left: 0,
                right: 2,
                left_skip: 5,
                right_skip: 5,
            }],
        };
        assert!(!x.validate_cancellation(&p).unwrap());
    }

    #[test]
    fn backward_then_forward_mirror() {
        let x = w("R(1) T'(1)");
        let p = CancellationPairing {
            pairs: vec![],
            mirrors: vec![MirrorRule {
                left: 0,
                right: 1,
                left_skip: 0,
                right_skip: 0,
            }],
        };
        assert!(x.validate_cancellation(&p).unwrap());
        // skipping the innermost letters leaves them unpaired between partners
        let skip = CancellationPairing {
            pairs: vec![],
            mirrors: vec![MirrorRule {
                left: 0,
                right: 1,
                left_skip: 1,
                right_skip: 1,
            }],
        };
        assert!(!x.validate_cancellation(&skip).unwrap());
        let completed = CancellationPairing {
            pairs: vec![(Position::new(0, 0), Position::new(1, 0))],
            mirrors: skip.mirrors.clone(),
        };
        assert!(x.validate_cancellation(&completed).unwrap());
    }

    #[test]
    fn same_orientation_mirror_fails() {
        let x = w("T(1) T'(1)");
        let p = CancellationPairing {
            pairs: vec![],
            mirrors: vec![MirrorRule {
                left: 0,
                right: 1,
                left_skip: 0,
                right_skip: 0,
            }],
        };
        assert!(!x.validate_cancellation(&p).unwrap());
    }
}
