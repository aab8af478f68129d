//! Laying a word out on `[0, L_w]` under a length assignment.
//!
//! Letter `a_n` (either sign) gets an open interval of length `l_n`, and each
//! interval starts at the total length of everything before it. The
//! complement `C` of the union of these intervals is never materialized:
//! points are classified by locating them between interval endpoints, and
//! the points of `C` are exactly the cuts of the word.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::word::{Cut, Letter, Position, Segment, Tail, Word};

/// A non-increasing, positive, summable sequence `l_1, l_2, …`: finitely many
/// explicit leading terms followed by `l_n = c·r^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthAssignment {
    overrides: Vec<Rational>,
    c: Rational,
    r: Rational,
}

impl LengthAssignment {
    pub fn geometric(c: Rational, r: Rational) -> Result<LengthAssignment> {
        LengthAssignment::with_overrides(Vec::new(), c, r)
    }

    pub fn with_overrides(overrides: Vec<Rational>, c: Rational, r: Rational) -> Result<LengthAssignment> {
        if c <= Rational::zero() {
            return Err(Error::InvalidLengths("c must be positive".into()));
        }
        if r <= Rational::zero() || r >= Rational::one() {
            return Err(Error::InvalidLengths("r must lie in (0, 1)".into()));
        }
        let iota = LengthAssignment { overrides, c, r };
        let k = iota.overrides.len() as u64;
        for n in 1..=k {
            if iota.length(n) <= Rational::zero() {
                return Err(Error::InvalidLengths(format!("l_{n} is not positive")));
            }
            if iota.length(n + 1) > iota.length(n) {
                return Err(Error::InvalidLengths(format!("l_{} exceeds l_{n}", n + 1)));
            }
        }
        Ok(iota)
    }

    /// `l_n = 2^(-n)`.
    pub fn dyadic() -> LengthAssignment {
        LengthAssignment::geometric(rational::ratio(1, 2), rational::ratio(1, 2)).expect("valid")
    }

    pub fn ratio(&self) -> &Rational {
        &self.r
    }

    pub fn length(&self, n: u64) -> Rational {
        assert!(n >= 1);
        match self.overrides.get((n - 1) as usize) {
            Some(l) => l.clone(),
            None => &self.c * rational::pow(&self.r, n - 1),
        }
    }

    /// Lengths of the successive letters of `t`.
    pub fn tail_lengths<'a>(&'a self, t: &Tail) -> impl Iterator<Item = Rational> + 'a {
        let t = *t;
        let step = rational::pow(&self.r, t.stride);
        let mut j = 0u64;
        let mut geometric: Option<Rational> = None;
        std::iter::from_fn(move || {
            let n = t.start + j * t.stride;
            j += 1;
            if (n as usize) <= self.overrides.len() {
                return Some(self.length(n));
            }
            let next = match geometric.take() {
                Some(prev) => prev * &step,
                None => self.length(n),
            };
            geometric = Some(next.clone());
            Some(next)
        })
    }

    /// Number of leading letters of `t` that take explicit override lengths.
    fn explicit_prefix(&self, t: &Tail) -> u64 {
        let k = self.overrides.len() as u64;
        if t.start > k {
            0
        } else {
            (k - t.start) / t.stride + 1
        }
    }

    /// `Σ_{i<j} l_{s+i·d}` in closed form.
    pub fn partial_sum(&self, t: &Tail, j: u64) -> Rational {
        let e = self.explicit_prefix(t).min(j);
        let mut sum: Rational = (0..e).map(|i| self.length(t.start + i * t.stride)).sum();
        if j > e {
            let first = self.length(t.start + e * t.stride);
            let rd = rational::pow(&self.r, t.stride);
            let count = j - e;
            sum += first * (Rational::one() - rational::pow(&rd, count)) / (Rational::one() - rd);
        }
        sum
    }

    /// `Σ_{i≥0} l_{s+i·d}` in closed form.
    pub fn tail_sum(&self, t: &Tail) -> Rational {
        let e = self.explicit_prefix(t);
        let explicit: Rational = (0..e).map(|i| self.length(t.start + i * t.stride)).sum();
        let first = self.length(t.start + e * t.stride);
        let rd = rational::pow(&self.r, t.stride);
        explicit + first / (Rational::one() - rd)
    }

    pub fn segment_length(&self, s: &Segment) -> Rational {
        match s {
            Segment::Finite(l) => l.iter().map(|x| self.length(x.index)).sum(),
            Segment::Forward(t) | Segment::Backward(t) => self.tail_sum(t),
        }
    }

    /// `Σ k_n·l_n`; `None` would signal divergence, which cannot happen for
    /// geometric assignments and words of the segment class.
    pub fn weighted_total(&self, w: &Word) -> Option<Rational> {
        Some(w.segments().iter().map(|s| self.segment_length(s)).sum())
    }

    /// `geometric:c=<rat>,r=<rat>` or `override:l=<rat>|<rat>|…,c=<rat>,r=<rat>`.
    pub fn parse(text: &str) -> Result<LengthAssignment> {
        let bad = |m: &str| Error::InvalidLengths(format!("{m} in {text:?}"));
        let (kind, rest) = text.split_once(':').ok_or_else(|| bad("missing kind"))?;
        let mut c = None;
        let mut r = None;
        let mut overrides = Vec::new();
        for part in rest.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match k.trim() {
                "c" => c = Some(rational::parse(v)?),
                "r" => r = Some(rational::parse(v)?),
                "l" if kind == "override" => {
                    overrides = v.split('|').map(rational::parse).collect::<Result<_>>()?;
                }
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        let (c, r) = (c.ok_or_else(|| bad("missing c"))?, r.ok_or_else(|| bad("missing r"))?);
        match kind {
            "geometric" => LengthAssignment::geometric(c, r),
            "override" => LengthAssignment::with_overrides(overrides, c, r),
            _ => Err(bad("unknown kind")),
        }
    }
}

impl fmt::Display for LengthAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, r) = (rational::format(&self.c), rational::format(&self.r));
        if self.overrides.is_empty() {
            write!(f, "geometric:c={c},r={r}")
        } else {
            let l: Vec<String> = self.overrides.iter().map(rational::format).collect();
            write!(f, "override:l={},c={c},r={r}", l.join("|"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointClass {
    /// Strictly inside the interval of this letter occurrence.
    InsideLetter {
        position: Position,
        interval: (Rational, Rational),
    },
    InC(Cut),
}

#[derive(Clone, Debug, Serialize)]
pub struct LetterRow {
    pub index: u64,
    pub sign: i8,
    #[serde(serialize_with = "ser_rational")]
    pub start: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub end: Rational,
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::format(q))
}

#[derive(Clone, Debug)]
pub struct Realization {
    word: Word,
    iota: LengthAssignment,
    /// `starts[i]` is where segment `i` begins; the last entry is `L_w`.
    starts: Vec<Rational>,
}

impl Realization {
    pub fn new(word: &Word, iota: &LengthAssignment) -> Realization {
        let word = word.reduce();
        let mut starts = Vec::with_capacity(word.segments().len() + 1);
        let mut acc = Rational::zero();
        starts.push(acc.clone());
        for s in word.segments() {
            acc += iota.segment_length(s);
            starts.push(acc.clone());
        }
        Realization {
            word,
            iota: iota.clone(),
            starts,
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn iota(&self) -> &LengthAssignment {
        &self.iota
    }

    /// `L_w`.
    pub fn total(&self) -> &Rational {
        self.starts.last().expect("at least one entry")
    }

    pub fn segment_span(&self, i: usize) -> (Rational, Rational) {
        (self.starts[i].clone(), self.starts[i + 1].clone())
    }

    pub fn letter_interval(&self, p: Position) -> Result<(Rational, Rational)> {
        let letter = self.word.letter_at(p)?;
        let len = self.iota.length(letter.index);
        let (lo, hi) = self.segment_span(p.segment);
        Ok(match &self.word.segments()[p.segment] {
            Segment::Finite(l) => {
                let before: Rational = l[..p.offset as usize].iter().map(|x| self.iota.length(x.index)).sum();
                let start = lo + before;
                let end = &start + len;
                (start, end)
            }
            Segment::Forward(t) => {
                let start = lo + self.iota.partial_sum(t, p.offset);
                let end = &start + len;
                (start, end)
            }
            Segment::Backward(t) => {
                let end = hi - self.iota.partial_sum(t, p.offset);
                let start = &end - len;
                (start, end)
            }
        })
    }

    /// The point of `C` corresponding to a cut.
    pub fn cut_point(&self, c: Cut) -> Result<Rational> {
        self.word.check_cut(c)?;
        Ok(match c {
            Cut::Boundary(i) => self.starts[i].clone(),
            Cut::Inside { segment, offset } => {
                let (lo, hi) = self.segment_span(segment);
                match &self.word.segments()[segment] {
                    Segment::Finite(l) => {
                        lo + l[..offset as usize]
                            .iter()
                            .map(|x| self.iota.length(x.index))
                            .sum::<Rational>()
                    }
                    Segment::Forward(t) => lo + self.iota.partial_sum(t, offset),
                    Segment::Backward(t) => hi - self.iota.partial_sum(t, offset),
                }
            }
        })
    }

    pub fn point_class(&self, q: &Rational) -> Result<PointClass> {
        if *q < Rational::zero() || q > self.total() {
            return Err(Error::PointOutOfRange(rational::format(q)));
        }
        // last segment start <= q
        let i = self.starts.partition_point(|s| s <= q) - 1;
        if self.starts[i] == *q {
            return Ok(PointClass::InC(Cut::Boundary(i)));
        }
        let inside = |offset: u64, interval| PointClass::InsideLetter {
            position: Position::new(i, offset),
            interval,
        };
        let cut = |offset: u64| PointClass::InC(Cut::Inside { segment: i, offset });
        match &self.word.segments()[i] {
            Segment::Finite(l) => {
                let mut p = self.starts[i].clone();
                for (k, x) in l.iter().enumerate() {
                    let next = &p + self.iota.length(x.index);
                    if *q == p {
                        return Ok(cut(k as u64));
                    }
                    if *q < next {
                        return Ok(inside(k as u64, (p, next)));
                    }
                    p = next;
                }
                unreachable!("q lies before the next segment start")
            }
            Segment::Forward(t) => {
                let mut p = self.starts[i].clone();
                for (j, len) in self.iota.tail_lengths(t).enumerate() {
                    let next = &p + len;
                    if *q == p {
                        return Ok(cut(j as u64));
                    }
                    if *q < next {
                        return Ok(inside(j as u64, (p, next)));
                    }
                    p = next;
                }
                unreachable!("tail lengths are infinite")
            }
            Segment::Backward(t) => {
                let mut p = self.starts[i + 1].clone();
                for (j, len) in self.iota.tail_lengths(t).enumerate() {
                    let prev = &p - len;
                    if *q > prev {
                        return Ok(inside(j as u64, (prev, p)));
                    }
                    if *q == prev {
                        return Ok(cut(j as u64 + 1));
                    }
                    p = prev;
                }
                unreachable!("tail lengths are infinite")
            }
        }
    }

    /// The cut at `q`, which must lie in `C`.
    pub fn cut_at(&self, q: &Rational) -> Result<Cut> {
        match self.point_class(q)? {
            PointClass::InC(c) => Ok(c),
            PointClass::InsideLetter { .. } => Err(Error::NotInC(rational::format(q))),
        }
    }

    /// The subword whose letter intervals lie in `(a, b)`, for `a, b ∈ C`.
    pub fn interval_to_subword(&self, a: &Rational, b: &Rational) -> Result<Word> {
        if a > b {
            return Err(Error::UnorderedBounds(format!(
                "{} > {}",
                rational::format(a),
                rational::format(b)
            )));
        }
        let (ca, cb) = (self.cut_at(a)?, self.cut_at(b)?);
        Ok(self.word.between(ca, cb)?.reduce())
    }

    /// Letter intervals in word order; tails contribute `depth` letters from
    /// their finite end.
    pub fn layout(&self, depth: u64) -> Vec<LetterRow> {
        let mut rows = Vec::new();
        let row = |l: Letter, (start, end): (Rational, Rational)| LetterRow {
            index: l.index,
            sign: if l.sign == crate::word::Sign::Pos { 1 } else { -1 },
            start,
            end,
        };
        for (i, s) in self.word.segments().iter().enumerate() {
            let offsets: Vec<u64> = match s {
                Segment::Finite(l) => (0..l.len() as u64).collect(),
                Segment::Forward(_) => (0..depth).collect(),
                Segment::Backward(_) => (0..depth).rev().collect(),
            };
            for o in offsets {
                let p = Position::new(i, o);
                let l = self.word.letter_at(p).expect("valid");
                rows.push(row(l, self.letter_interval(p).expect("valid")));
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn two_letter_interval_example() {
        // a2 a1 a1 A2 with l1 = 1/2, l2 = 1/4
        let r = Realization::new(&w("a2 a1 a1 A2"), &LengthAssignment::dyadic());
        assert_eq!(*r.total(), ratio(3, 2));
        let got: Vec<_> = (0..4)
            .map(|k| r.letter_interval(Position::new(0, k)).unwrap())
            .collect();
        assert_eq!(
            got,
            vec![
                (int(0), ratio(1, 4)),
                (ratio(1, 4), ratio(3, 4)),
                (ratio(3, 4), ratio(5, 4)),
                (ratio(5, 4), ratio(3, 2)),
            ]
        );
    }

    #[test]
    fn tail_totals() {
        let d = LengthAssignment::dyadic();
        assert_eq!(*Realization::new(&Word::alpha(), &d).total(), int(1));
        assert_eq!(*Realization::new(&w("T(1,2)"), &d).total(), ratio(2, 3));
        assert_eq!(*Realization::new(&w("R(2,2)"), &d).total(), ratio(1, 3));
        assert_eq!(*Realization::new(&Word::empty(), &d).total(), int(0));
    }

    #[test]
    fn tail_letter_intervals() {
        let r = Realization::new(&Word::alpha(), &LengthAssignment::dyadic());
        assert_eq!(
            r.letter_interval(Position::new(0, 2)).unwrap(),
            (ratio(3, 4), ratio(7, 8))
        );
        let r = Realization::new(&w("R(1)"), &LengthAssignment::dyadic());
        // a1 is last: (1/2, 1)
        assert_eq!(r.letter_interval(Position::new(0, 0)).unwrap(), (ratio(1, 2), int(1)));
    }

    #[test]
    fn point_classification() {
        let d = LengthAssignment::dyadic();
        let alpha = Realization::new(&Word::alpha(), &d);
        assert_eq!(
            alpha.point_class(&ratio(3, 4)).unwrap(),
            PointClass::InC(Cut::Inside { segment: 0, offset: 2 })
        );
        assert_eq!(alpha.point_class(&int(0)).unwrap(), PointClass::InC(Cut::Boundary(0)));
        assert_eq!(alpha.point_class(&int(1)).unwrap(), PointClass::InC(Cut::Boundary(1)));
        let x = Realization::new(&w("a2 a1 a1 A2"), &d);
        assert_eq!(
            x.point_class(&ratio(1, 8)).unwrap(),
            PointClass::InsideLetter {
                position: Position::new(0, 0),
                interval: (int(0), ratio(1, 4))
            }
        );
        assert!(x.point_class(&int(2)).is_err());
    }

    #[test]
    fn interval_to_subword_examples() {
        let d = LengthAssignment::dyadic();
        let alpha = Realization::new(&Word::alpha(), &d);
        assert_eq!(alpha.interval_to_subword(&int(0), &ratio(3, 4)).unwrap(), w("a1 a2"));
        assert_eq!(alpha.interval_to_subword(&int(0), &int(1)).unwrap(), Word::alpha());
        assert!(alpha
            .interval_to_subword(&ratio(3, 4), &ratio(3, 4))
            .unwrap()
            .is_empty());
        assert!(matches!(
            alpha.interval_to_subword(&int(0), &ratio(2, 3)),
            Err(Error::NotInC(_))
        ));
    }

    #[test]
    fn overrides_and_closed_forms_agree_with_summation() {
        let iota =
            LengthAssignment::with_overrides(vec![int(1), ratio(1, 2), ratio(1, 2)], ratio(1, 2), ratio(1, 3)).unwrap();
        let t = Tail::new(2, 1, crate::word::Sign::Pos);
        let direct: Rational = iota.tail_lengths(&t).take(6).sum();
        assert_eq!(iota.partial_sum(&t, 6), direct);
        assert!(iota.tail_sum(&t) > direct);
    }

    #[test]
    fn rejects_bad_assignments() {
        assert!(LengthAssignment::geometric(int(1), int(1)).is_err());
        assert!(LengthAssignment::geometric(int(0), ratio(1, 2)).is_err());
        assert!(LengthAssignment::with_overrides(vec![ratio(1, 8)], int(1), ratio(1, 2)).is_err());
    }

    #[test]
    fn parses_and_prints_specs() {
        let g = LengthAssignment::parse("geometric:c=1/2,r=1/2").unwrap();
        assert_eq!(g, LengthAssignment::dyadic());
        assert_eq!(g.to_string(), "geometric:c=1/2,r=1/2");
        let o = LengthAssignment::parse("override:l=1|1/2,c=1/8,r=1/2").unwrap();
        assert_eq!(LengthAssignment::parse(&o.to_string()).unwrap(), o);
        assert!(LengthAssignment::parse("geometric:c=1/2").is_err());
    }
}
