//! Transfinite words in the segment class.
//!
//! A [`Word`] is a finite list of segments. Each segment is either a finite
//! run of letters, an ω-ordered tail `a_s a_{s+d} a_{s+2d} …`, or an
//! ω*-ordered tail `… a_{s+2d} a_{s+d} a_s`. Every letter occurs finitely
//! often in such a word.

mod cancellation;
mod parse;
mod reduce;
mod retract;
pub mod rewrite;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cancellation::{CancellationPairing, MirrorRule};
pub use reduce::cancel_junction;
pub use retract::AlphabetSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// `a_index` or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: u64,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: u64, sign: Sign) -> Letter {
        assert!(index >= 1, "letter index must be at least 1");
        Letter { index, sign }
    }

    pub fn pos(index: u64) -> Letter {
        Letter::new(index, Sign::Pos)
    }

    pub fn neg(index: u64) -> Letter {
        Letter::new(index, Sign::Neg)
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "a{}", self.index),
            Sign::Neg => write!(f, "A{}", self.index),
        }
    }
}

/// Arithmetic progression of letters `a_start^sign, a_{start+stride}^sign, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tail {
    pub start: u64,
    pub stride: u64,
    pub sign: Sign,
}

impl Tail {
    pub fn new(start: u64, stride: u64, sign: Sign) -> Tail {
        assert!(start >= 1 && stride >= 1, "tail start and stride must be positive");
        Tail { start, stride, sign }
    }

    /// The `j`-th generated letter.
    pub fn letter(&self, j: u64) -> Letter {
        Letter::new(self.start + j * self.stride, self.sign)
    }

    /// Drops the first `j` generated letters.
    pub fn advance(&self, j: u64) -> Tail {
        Tail {
            start: self.start + j * self.stride,
            ..*self
        }
    }

    /// The first `n` generated letters in generation order.
    pub fn take(&self, n: u64) -> Vec<Letter> {
        (0..n).map(|j| self.letter(j)).collect()
    }

    /// Offset of `index` within the progression, if it occurs.
    pub fn offset_of(&self, index: u64) -> Option<u64> {
        if index >= self.start && (index - self.start).is_multiple_of(self.stride) {
            Some((index - self.start) / self.stride)
        } else {
            None
        }
    }

    /// Same letters eventually: equal strides, signs and residues.
    pub fn eventually_equal(&self, other: &Tail) -> bool {
        self.stride == other.stride && self.sign == other.sign && self.start % self.stride == other.start % other.stride
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Segment {
    Finite(Vec<Letter>),
    /// ω-ordered: `a_s a_{s+d} …`.
    Forward(Tail),
    /// ω*-ordered: `… a_{s+d} a_s`.
    Backward(Tail),
}

impl Segment {
    pub fn first_letter(&self) -> Option<Letter> {
        match self {
            Segment::Finite(l) => l.first().copied(),
            Segment::Forward(t) => Some(t.letter(0)),
            Segment::Backward(_) => None,
        }
    }

    pub fn last_letter(&self) -> Option<Letter> {
        match self {
            Segment::Finite(l) => l.last().copied(),
            Segment::Forward(_) => None,
            Segment::Backward(t) => Some(t.letter(0)),
        }
    }

    /// The letter at `offset` (for backward tails, offset 0 is the last letter).
    pub fn letter_at(&self, offset: u64) -> Option<Letter> {
        match self {
            Segment::Finite(l) => usize::try_from(offset).ok().and_then(|i| l.get(i)).copied(),
            Segment::Forward(t) | Segment::Backward(t) => Some(t.letter(offset)),
        }
    }

    /// Number of letters, `None` for tails.
    pub fn finite_len(&self) -> Option<u64> {
        match self {
            Segment::Finite(l) => Some(l.len() as u64),
            _ => None,
        }
    }

    pub fn is_tail(&self) -> bool {
        !matches!(self, Segment::Finite(_))
    }

    pub fn inverse(&self) -> Segment {
        match self {
            Segment::Finite(l) => Segment::Finite(l.iter().rev().map(|x| x.inverse()).collect()),
            Segment::Forward(t) => Segment::Backward(Tail {
                sign: t.sign.flip(),
                ..*t
            }),
            Segment::Backward(t) => Segment::Forward(Tail {
                sign: t.sign.flip(),
                ..*t
            }),
        }
    }

    fn multiplicity(&self, n: u64) -> u64 {
        match self {
            Segment::Finite(l) => l.iter().filter(|x| x.index == n).count() as u64,
            Segment::Forward(t) | Segment::Backward(t) => u64::from(t.offset_of(n).is_some()),
        }
    }
}

/// Address of one letter occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub segment: usize,
    /// Finite: index into the letters. Tails: the generated-letter offset,
    /// counted from the ω* end for backward tails.
    pub offset: u64,
}

impl Position {
    pub fn new(segment: usize, offset: u64) -> Position {
        Position { segment, offset }
    }
}

/// A Dedekind cut of the letter order; these correspond one-to-one with the
/// points of `C` once the word is laid out on an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cut {
    /// Immediately before segment `i` (`i == segments.len()` is the end).
    Boundary(usize),
    /// Strictly inside a segment. For finite and forward segments `offset`
    /// counts the segment's letters before the cut; for backward tails it
    /// counts the letters after it. Always `>= 1`.
    Inside { segment: usize, offset: u64 },
}

/// Endpoint of an inclusive subword range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Start,
    At(Position),
    End,
}

#[derive(Clone, Copy, Debug)]
enum Local {
    Start,
    Inner(u64),
    End,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    segments: Vec<Segment>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_segments(segments: Vec<Segment>) -> Result<Word> {
        for s in &segments {
            match s {
                Segment::Finite(l) if l.is_empty() => return Err(Error::EmptyFiniteSegment),
                Segment::Finite(l) if l.iter().any(|x| x.index == 0) => return Err(Error::ZeroIndex { offset: 0 }),
                Segment::Forward(t) | Segment::Backward(t) if t.start == 0 || t.stride == 0 => {
                    return Err(Error::ZeroIndex { offset: 0 })
                }
                _ => {}
            }
        }
        Ok(Word { segments })
    }

    /// Builds from segments known to be valid; empty finite runs are dropped.
    pub(crate) fn from_raw(segments: Vec<Segment>) -> Word {
        Word {
            segments: segments
                .into_iter()
                .filter(|s| !matches!(s, Segment::Finite(l) if l.is_empty()))
                .collect(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word::from_raw(vec![Segment::Finite(letters)])
    }

    pub fn letter(l: Letter) -> Word {
        Word::from_letters(vec![l])
    }

    pub fn forward(start: u64, stride: u64, sign: Sign) -> Word {
        Word::from_raw(vec![Segment::Forward(Tail::new(start, stride, sign))])
    }

    pub fn backward(start: u64, stride: u64, sign: Sign) -> Word {
        Word::from_raw(vec![Segment::Backward(Tail::new(start, stride, sign))])
    }

    /// `α = a_1 a_2 a_3 …`.
    pub fn alpha() -> Word {
        Word::forward(1, 1, Sign::Pos)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<Segment> {
        self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.segments.iter().all(|s| !s.is_tail())
    }

    /// All letters when the word is finite.
    pub fn finite_letters(&self) -> Option<Vec<Letter>> {
        let mut out = Vec::new();
        for s in &self.segments {
            match s {
                Segment::Finite(l) => out.extend_from_slice(l),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Number of letters when finite.
    pub fn finite_len(&self) -> Option<u64> {
        self.segments.iter().map(|s| s.finite_len()).sum()
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.segments.first().and_then(|s| s.first_letter())
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.segments.last().and_then(|s| s.last_letter())
    }

    /// Structural validity: no empty finite runs, positive indices, and
    /// hence finitely many occurrences of each letter.
    pub fn validate(&self) -> Result<()> {
        Word::from_segments(self.segments.clone()).map(|_| ())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Word { segments }
    }

    pub fn invert(&self) -> Word {
        Word {
            segments: self.segments.iter().rev().map(Segment::inverse).collect(),
        }
    }

    /// Occurrences of `a_n` and `a_n⁻¹` together.
    pub fn multiplicity(&self, n: u64) -> u64 {
        self.segments.iter().map(|s| s.multiplicity(n)).sum()
    }

    /// Largest letter index present in finite segments or as a tail start.
    pub fn max_explicit_index(&self) -> u64 {
        self.segments
            .iter()
            .map(|s| match s {
                Segment::Finite(l) => l.iter().map(|x| x.index).max().unwrap_or(0),
                Segment::Forward(t) | Segment::Backward(t) => t.start,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn reduce(&self) -> Word {
        reduce::reduce(self)
    }

    /// Equality in the group: canonical reduced forms coincide.
    pub fn equals(&self, other: &Word) -> bool {
        self.reduce() == other.reduce()
    }

    /// The reduced product.
    pub fn mul(&self, other: &Word) -> Word {
        self.concat(other).reduce()
    }

    pub fn check_position(&self, p: Position) -> Result<()> {
        let seg = self
            .segments
            .get(p.segment)
            .ok_or_else(|| Error::InvalidPosition(format!("segment {} of {}", p.segment, self.segments.len())))?;
        match seg.finite_len() {
            Some(n) if p.offset >= n => Err(Error::InvalidPosition(format!(
                "offset {} in finite segment of length {n}",
                p.offset
            ))),
            _ => Ok(()),
        }
    }

    pub fn letter_at(&self, p: Position) -> Result<Letter> {
        self.check_position(p)?;
        Ok(self.segments[p.segment].letter_at(p.offset).expect("checked"))
    }

    pub fn cut_before(&self, p: Position) -> Result<Cut> {
        self.check_position(p)?;
        Ok(match &self.segments[p.segment] {
            Segment::Finite(_) | Segment::Forward(_) => self.inside(p.segment, p.offset),
            Segment::Backward(_) => Cut::Inside {
                segment: p.segment,
                offset: p.offset + 1,
            },
        })
    }

    pub fn cut_after(&self, p: Position) -> Result<Cut> {
        self.check_position(p)?;
        Ok(match &self.segments[p.segment] {
            Segment::Finite(_) | Segment::Forward(_) => self.inside(p.segment, p.offset + 1),
            Segment::Backward(_) => {
                if p.offset == 0 {
                    Cut::Boundary(p.segment + 1)
                } else {
                    Cut::Inside {
                        segment: p.segment,
                        offset: p.offset,
                    }
                }
            }
        })
    }

    /// Normalizes a finite/forward "letters before" count into a cut.
    fn inside(&self, segment: usize, before: u64) -> Cut {
        if before == 0 {
            return Cut::Boundary(segment);
        }
        match self.segments[segment].finite_len() {
            Some(n) if before >= n => Cut::Boundary(segment + 1),
            _ => Cut::Inside {
                segment,
                offset: before,
            },
        }
    }

    pub fn check_cut(&self, c: Cut) -> Result<()> {
        match c {
            Cut::Boundary(i) if i <= self.segments.len() => Ok(()),
            Cut::Inside { segment, offset } if offset >= 1 => match self.segments.get(segment) {
                Some(Segment::Finite(l)) if offset < l.len() as u64 => Ok(()),
                Some(Segment::Forward(_)) | Some(Segment::Backward(_)) => Ok(()),
                _ => Err(Error::InvalidPosition(format!("{c:?}"))),
            },
            _ => Err(Error::InvalidPosition(format!("{c:?}"))),
        }
    }

    /// Total-order key for cuts of this word.
    pub fn cut_key(&self, c: Cut) -> (usize, u8, u64) {
        match c {
            Cut::Boundary(i) => (i, 0, 0),
            Cut::Inside { segment, offset } => match self.segments[segment] {
                Segment::Backward(_) => (segment, 1, u64::MAX - offset),
                _ => (segment, 1, offset),
            },
        }
    }

    pub fn cmp_cuts(&self, a: Cut, b: Cut) -> Ordering {
        self.cut_key(a).cmp(&self.cut_key(b))
    }

    /// The letters strictly between two cuts, re-expressed as segments.
    pub fn between(&self, from: Cut, to: Cut) -> Result<Word> {
        self.check_cut(from)?;
        self.check_cut(to)?;
        if self.cmp_cuts(from, to) == Ordering::Greater {
            return Err(Error::UnorderedBounds(format!("{from:?} after {to:?}")));
        }
        let (lo_seg, lo) = match from {
            Cut::Boundary(i) => (i, Local::Start),
            Cut::Inside { segment, offset } => (segment, Local::Inner(offset)),
        };
        let (hi_seg, hi) = match to {
            Cut::Boundary(0) => return Ok(Word::empty()),
            Cut::Boundary(i) => (i - 1, Local::End),
            Cut::Inside { segment, offset } => (segment, Local::Inner(offset)),
        };
        if lo_seg > hi_seg {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for i in lo_seg..=hi_seg {
            let a = if i == lo_seg { lo } else { Local::Start };
            let b = if i == hi_seg { hi } else { Local::End };
            if let Some(s) = slice_segment(&self.segments[i], a, b) {
                out.push(s);
            }
        }
        Ok(Word::from_raw(out))
    }

    /// Restriction to the closed range `[from, to]` of positions.
    pub fn subword(&self, from: Bound, to: Bound) -> Result<Word> {
        let c1 = match from {
            Bound::Start => Cut::Boundary(0),
            Bound::End => Cut::Boundary(self.segments.len()),
            Bound::At(p) => self.cut_before(p)?,
        };
        let c2 = match to {
            Bound::Start => Cut::Boundary(0),
            Bound::End => Cut::Boundary(self.segments.len()),
            Bound::At(p) => self.cut_after(p)?,
        };
        if self.cmp_cuts(c1, c2) == Ordering::Greater {
            return Err(Error::UnorderedBounds(format!("{from:?} after {to:?}")));
        }
        self.between(c1, c2)
    }

    /// Every cut at a segment boundary or between two letters of a finite
    /// segment, plus the first `tail_depth` cuts into each end of every tail.
    pub fn sample_cuts(&self, tail_depth: u64) -> Vec<Cut> {
        let mut cuts = Vec::new();
        for (i, s) in self.segments.iter().enumerate() {
            cuts.push(Cut::Boundary(i));
            match s {
                Segment::Finite(l) => cuts.extend((1..l.len() as u64).map(|k| Cut::Inside { segment: i, offset: k })),
                Segment::Forward(_) | Segment::Backward(_) => {
                    cuts.extend((1..=tail_depth).map(|k| Cut::Inside { segment: i, offset: k }))
                }
            }
        }
        cuts.push(Cut::Boundary(self.segments.len()));
        cuts.sort_by_key(|c| self.cut_key(*c));
        cuts
    }
}

fn slice_segment(seg: &Segment, a: Local, b: Local) -> Option<Segment> {
    match seg {
        Segment::Finite(l) => {
            let idx = |x: Local| match x {
                Local::Start => 0,
                Local::Inner(k) => k as usize,
                Local::End => l.len(),
            };
            let (i, j) = (idx(a), idx(b));
            (i < j).then(|| Segment::Finite(l[i..j].to_vec()))
        }
        Segment::Forward(t) => {
            let i = match a {
                Local::Start => 0,
                Local::Inner(k) => k,
                Local::End => return None,
            };
            match b {
                Local::End => Some(Segment::Forward(t.advance(i))),
                Local::Inner(j) => (i < j).then(|| Segment::Finite((i..j).map(|k| t.letter(k)).collect())),
                Local::Start => None,
            }
        }
        Segment::Backward(t) => {
            // offsets count letters after the cut
            let lo = match b {
                Local::End => 0,
                Local::Inner(k) => k,
                Local::Start => return None,
            };
            match a {
                Local::Start => Some(Segment::Backward(t.advance(lo))),
                Local::Inner(hi) => (lo < hi).then(|| Segment::Finite((lo..hi).rev().map(|k| t.letter(k)).collect())),
                Local::End => None,
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_word(self))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse::parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    parse::parse_word(text)
}

pub fn format_word(w: &Word) -> String {
    parse::format_word(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn concat_keeps_order_and_identity() {
        let joined = w("a1").concat(&w("a2"));
        assert_eq!(joined.segments().len(), 2);
        assert_eq!(joined.reduce(), w("a1 a2"));
        assert_eq!(Word::empty().concat(&w("a3 A1")), w("a3 A1"));
        let omega_plus_star = w("T(1)").concat(&w("R'(1)"));
        assert_eq!(omega_plus_star.segments().len(), 2);
        assert_eq!(omega_plus_star.to_string(), "T(1) R'(1)");
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("a1 a2").invert(), w("A2 A1"));
        assert_eq!(w("T(1)").invert(), w("R'(1)"));
        assert_eq!(Word::empty().invert(), Word::empty());
        let x = w("a3 T(2,3) R'(4) A1");
        assert_eq!(x.invert().invert(), x);
    }

    #[test]
    fn multiplicity_examples() {
        let x = w("a2 a1 a1 A2");
        assert_eq!(x.multiplicity(1), 2);
        assert_eq!(x.multiplicity(2), 2);
        assert_eq!(w("T(1)").multiplicity(7), 1);
        assert_eq!(w("T(1,2)").multiplicity(8), 0);
        assert_eq!(Word::empty().multiplicity(5), 0);
    }

    #[test]
    fn subword_examples() {
        let x = w("a2 a1 a1 A2");
        let sub = x
            .subword(Bound::At(Position::new(0, 1)), Bound::At(Position::new(0, 2)))
            .unwrap();
        assert_eq!(sub, w("a1 a1"));
        let alpha = Word::alpha();
        assert_eq!(
            alpha.subword(Bound::At(Position::new(0, 2)), Bound::End).unwrap(),
            w("T(3)")
        );
        assert_eq!(x.subword(Bound::Start, Bound::End).unwrap(), x);
    }

    #[test]
    fn subword_of_backward_tail() {
        let x = w("R(1) a9");
        // letters a3 a2 a1 (offsets 2..0)
        let sub = x
            .subword(Bound::At(Position::new(0, 2)), Bound::At(Position::new(0, 0)))
            .unwrap();
        assert_eq!(sub, w("a3 a2 a1"));
        let head = x.subword(Bound::Start, Bound::At(Position::new(0, 3))).unwrap();
        assert_eq!(head, w("R(4)"));
    }

    #[test]
    fn subword_rejects_unordered_bounds() {
        let x = w("a1 a2 a3");
        let err = x.subword(Bound::At(Position::new(0, 2)), Bound::At(Position::new(0, 0)));
        assert!(matches!(err, Err(Error::UnorderedBounds(_))));
    }

    #[test]
    fn invalid_position_is_reported() {
        let x = w("a1 a2");
        assert!(x.letter_at(Position::new(0, 5)).is_err());
        assert!(x.letter_at(Position::new(3, 0)).is_err());
    }

    #[test]
    fn cut_order_matches_word_order() {
        let x = w("T(1) R(2) a5");
        let cuts = x.sample_cuts(3);
        for pair in cuts.windows(2) {
            assert_eq!(x.cmp_cuts(pair[0], pair[1]), Ordering::Less);
        }
        // backward tail: more letters after the cut means earlier
        let a = Cut::Inside { segment: 1, offset: 3 };
        let b = Cut::Inside { segment: 1, offset: 1 };
        assert_eq!(x.cmp_cuts(a, b), Ordering::Less);
    }
}
