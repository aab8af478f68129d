//! Singular points, the neighbourhoods `C_m` around them, and the excised
//! word `h_{ι,m}(w)`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::rational::{self, Rational};
use crate::realization::{ser_rational, LengthAssignment, PointClass, Realization};
use crate::tame::TameOracle;
use crate::word::{cancel_junction, Cut, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub cut: Cut,
    #[serde(serialize_with = "ser_rational")]
    pub point: Rational,
    pub left_regular: bool,
    pub right_regular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentClass {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    pub class: ComponentClass,
    pub enlarged: bool,
}

impl Component {
    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeptBlock {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    #[serde(serialize_with = "ser_word")]
    pub word: Word,
}

fn ser_word<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct ExcisionPlan {
    pub m: u64,
    #[serde(serialize_with = "ser_rational")]
    pub total: Rational,
    pub singular: Vec<SingularPoint>,
    /// Components of the union of the `I^r`, `I^l` intervals, before enlargement.
    pub raw_components: Vec<Component>,
    /// Components after enlarging first-class endpoints into `C`.
    pub components: Vec<Component>,
    pub kept: Vec<KeptBlock>,
}

impl ExcisionPlan {
    pub fn kept_words(&self) -> Vec<Word> {
        self.kept.iter().map(|b| b.word.clone()).collect()
    }

    /// Reduced product of the kept blocks.
    pub fn h(&self) -> Word {
        self.kept
            .iter()
            .fold(Word::empty(), |acc, b| acc.concat(&b.word))
            .reduce()
    }
}

/// The singular points of a realized word, ascending.
///
/// Only segment boundaries of the canonical word can be singular: any other
/// point of `C` has a letter immediately on each side.
pub fn singular_points(r: &Realization, h: &TameOracle) -> Result<Vec<SingularPoint>> {
    h.ensure_usable()?;
    let segs = r.word().segments();
    let mut out = Vec::new();
    for i in 0..=segs.len() {
        let before = Word::from_segments(segs[..i].to_vec())?;
        let after = Word::from_segments(segs[i..].to_vec())?;
        let left_regular = h.regular_left(&before);
        let right_regular = h.regular_right(&after);
        if !(left_regular && right_regular) {
            out.push(SingularPoint {
                cut: Cut::Boundary(i),
                point: r.cut_point(Cut::Boundary(i))?,
                left_regular,
                right_regular,
            });
        }
    }
    Ok(out)
}

/// A realized word with its singular set, ready for excision at any `m`.
#[derive(Clone, Debug)]
pub struct Excision {
    realization: Realization,
    oracle: TameOracle,
    singular: Vec<SingularPoint>,
}

impl Excision {
    pub fn new(w: &Word, iota: &LengthAssignment, h: &TameOracle) -> Result<Excision> {
        let realization = Realization::new(w, iota);
        let singular = singular_points(&realization, h)?;
        Ok(Excision {
            realization,
            oracle: h.clone(),
            singular,
        })
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn singular(&self) -> &[SingularPoint] {
        &self.singular
    }

    pub fn oracle(&self) -> &TameOracle {
        &self.oracle
    }

    /// `I^r_{x,m}`: trivial on a regular side, otherwise reaching to the
    /// last singular point within `1/m`, or a full `1/m` if there is none.
    fn right_interval(&self, x: &SingularPoint, step: &Rational) -> (Rational, Rational) {
        if x.right_regular {
            return (x.point.clone(), x.point.clone());
        }
        let reach = &x.point + step;
        let sup = self
            .singular
            .iter()
            .map(|s| &s.point)
            .filter(|p| **p >= x.point && **p <= reach)
            .max()
            .expect("x itself qualifies");
        if *sup == x.point {
            (x.point.clone(), reach.min(self.realization.total().clone()))
        } else {
            (x.point.clone(), sup.clone())
        }
    }

    fn left_interval(&self, x: &SingularPoint, step: &Rational) -> (Rational, Rational) {
        if x.left_regular {
            return (x.point.clone(), x.point.clone());
        }
        let reach = &x.point - step;
        let inf = self
            .singular
            .iter()
            .map(|s| &s.point)
            .filter(|p| **p <= x.point && **p >= reach)
            .min()
            .expect("x itself qualifies");
        if *inf == x.point {
            (reach.max(Rational::zero()), x.point.clone())
        } else {
            (inf.clone(), x.point.clone())
        }
    }

    pub fn plan(&self, m: u64) -> Result<ExcisionPlan> {
        if m == 0 {
            return Err(Error::InvalidPosition("m must be positive".into()));
        }
        let step = rational::reciprocal(m);
        let mut intervals: Vec<(Rational, Rational)> = self
            .singular
            .iter()
            .flat_map(|x| [self.left_interval(x, &step), self.right_interval(x, &step)])
            .collect();
        intervals.sort();
        let mut raw: Vec<Component> = merge(intervals.into_iter().map(|(lo, hi)| Component {
            lo,
            hi,
            class: ComponentClass::Second,
            enlarged: false,
        }));
        for c in &mut raw {
            c.class = classify(&c.lo, &c.hi, &step);
        }

        let mut enlarged = Vec::with_capacity(raw.len());
        for c in &raw {
            let mut c = c.clone();
            if c.class == ComponentClass::First {
                if let PointClass::InsideLetter { interval, .. } = self.realization.point_class(&c.lo)? {
                    c.lo = interval.0;
                    c.enlarged = true;
                }
                if let PointClass::InsideLetter { interval, .. } = self.realization.point_class(&c.hi)? {
                    c.hi = interval.1;
                    c.enlarged = true;
                }
            } else {
                for end in [&c.lo, &c.hi] {
                    if !matches!(self.realization.point_class(end)?, PointClass::InC(_)) {
                        return Err(Error::ExcisionInvariant(format!(
                            "second-class endpoint {} is not in C",
                            rational::format(end)
                        )));
                    }
                }
            }
            enlarged.push(c);
        }
        let components = merge(enlarged);

        let mut kept = Vec::new();
        let mut cursor = Rational::zero();
        let total = self.realization.total().clone();
        let gaps = components
            .iter()
            .map(|c| (c.lo.clone(), c.hi.clone()))
            .chain(std::iter::once((total.clone(), total.clone())));
        for (lo, hi) in gaps {
            if lo > cursor {
                let word = self.realization.interval_to_subword(&cursor, &lo)?;
                if !self.oracle.contains(&word) {
                    return Err(Error::OracleViolation {
                        oracle: self.oracle.name(),
                        word: word.to_string(),
                    });
                }
                kept.push(KeptBlock {
                    lo: cursor.clone(),
                    hi: lo,
                    word,
                });
            }
            cursor = cursor.max(hi);
        }
        Ok(ExcisionPlan {
            m,
            total,
            singular: self.singular.clone(),
            raw_components: raw,
            components,
            kept,
        })
    }

    pub fn excise(&self, m: u64) -> Result<Vec<Word>> {
        Ok(self.plan(m)?.kept_words())
    }

    /// `h_{ι,m}(w)`.
    pub fn h(&self, m: u64) -> Result<Word> {
        Ok(self.plan(m)?.h())
    }
}

fn classify(lo: &Rational, hi: &Rational, step: &Rational) -> ComponentClass {
    if hi - lo >= *step {
        ComponentClass::First
    } else {
        ComponentClass::Second
    }
}

/// Merges sorted closed intervals that overlap or touch. A merged component
/// is first class if any part was.
fn merge(items: impl IntoIterator<Item = Component>) -> Vec<Component> {
    let mut out: Vec<Component> = Vec::new();
    for c in items {
        match out.last_mut() {
            Some(last) if c.lo <= last.hi => {
                if c.hi > last.hi {
                    last.hi = c.hi;
                }
                if c.class == ComponentClass::First {
                    last.class = ComponentClass::First;
                }
                last.enlarged |= c.enlarged;
            }
            _ => out.push(c),
        }
    }
    out
}

pub fn build_plan(w: &Word, iota: &LengthAssignment, h: &TameOracle, m: u64) -> Result<ExcisionPlan> {
    Excision::new(w, iota, h)?.plan(m)
}

pub fn excise(w: &Word, iota: &LengthAssignment, h: &TameOracle, m: u64) -> Result<Vec<Word>> {
    Excision::new(w, iota, h)?.excise(m)
}

pub fn h(w: &Word, iota: &LengthAssignment, oracle: &TameOracle, m: u64) -> Result<Word> {
    Excision::new(w, iota, oracle)?.h(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JunctionCase {
    /// One side is empty, nothing to separate.
    Empty,
    BothRegular,
    /// Singular from the left only.
    LeftSingular,
    /// Singular from the right only.
    RightSingular,
    BothSingular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Junction {
    #[serde(serialize_with = "ser_word")]
    pub left: Word,
    #[serde(serialize_with = "ser_word")]
    pub right: Word,
    pub case: JunctionCase,
    /// Distance to the nearest relevant singular point, if any.
    #[serde(serialize_with = "ser_opt_rational")]
    pub distance: Option<Rational>,
    pub threshold: u64,
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&rational::format(q)),
        None => s.serialize_none(),
    }
}

/// Bound beyond which `h(u·v) = h(u)·h(v)`, for reduced `u`, `v` whose
/// product has no cancellation.
pub fn junction_threshold(u: &Word, v: &Word, iota: &LengthAssignment, oracle: &TameOracle) -> Result<Junction> {
    let mut j = Junction {
        left: u.clone(),
        right: v.clone(),
        case: JunctionCase::Empty,
        distance: None,
        threshold: 1,
    };
    if u.is_empty() || v.is_empty() {
        return Ok(j);
    }
    let left_regular = oracle.regular_left(u);
    let right_regular = oracle.regular_right(v);
    let ex = Excision::new(&u.concat(v), iota, oracle)?;
    let at = Realization::new(u, iota).total().clone();
    let distances = ex.singular().iter().filter_map(|s| {
        let relevant = match (left_regular, right_regular) {
            (true, true) => true,
            (false, true) => s.point > at,
            (true, false) => s.point < at,
            (false, false) => false,
        };
        (relevant && s.point != at).then(|| (&s.point - &at).abs())
    });
    j.case = match (left_regular, right_regular) {
        (true, true) => JunctionCase::BothRegular,
        (false, true) => JunctionCase::LeftSingular,
        (true, false) => JunctionCase::RightSingular,
        (false, false) => JunctionCase::BothSingular,
    };
    j.distance = distances.min();
    if let Some(d) = &j.distance {
        j.threshold = rational::floor_u64(&(Rational::one() / d)) + 1;
    }
    Ok(j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub threshold: u64,
    pub junctions: Vec<Junction>,
    /// `m` values checked after the threshold.
    pub window: u64,
}

/// Whether `h(w1·w2, m) = h(w1, m)·h(w2, m)`.
pub fn eq1_holds(w1: &Word, w2: &Word, iota: &LengthAssignment, oracle: &TameOracle, m: u64) -> Result<bool> {
    let lhs = h(&w1.mul(w2), iota, oracle, m)?;
    let rhs = h(w1, iota, oracle, m)?.mul(&h(w2, iota, oracle, m)?);
    Ok(lhs.equals(&rhs))
}

/// A certified threshold for the product `w1·w2`, validated on
/// `[M, M + window]`.
///
/// With `w1 = w'·c` and `w2 = c⁻¹·w̃'` for the cancelled part `c`, the bound
/// is the largest junction threshold among `w'|w̃'`, `w'|c` and `c⁻¹|w̃'`.
pub fn threshold(
    w1: &Word,
    w2: &Word,
    iota: &LengthAssignment,
    oracle: &TameOracle,
    window: u64,
    exec: Execution,
) -> Result<ThresholdReport> {
    oracle.ensure_usable()?;
    let (w1, w2) = (w1.reduce(), w2.reduce());
    let (left, right) = cancel_junction(&w1, &w2);
    let cancelled = left.invert().mul(&w1);
    let junctions = vec![
        junction_threshold(&left, &right, iota, oracle)?,
        junction_threshold(&left, &cancelled, iota, oracle)?,
        junction_threshold(&cancelled.invert(), &right, iota, oracle)?,
    ];
    let threshold = junctions.iter().map(|j| j.threshold).max().unwrap_or(1);

    let whole = Excision::new(&w1.mul(&w2), iota, oracle)?;
    let first = Excision::new(&w1, iota, oracle)?;
    let second = Excision::new(&w2, iota, oracle)?;
    let results = exec::map_range(exec, threshold, threshold + window, |m| -> Result<bool> {
        Ok(whole.h(m)?.equals(&first.h(m)?.mul(&second.h(m)?)))
    });
    for (k, r) in results.into_iter().enumerate() {
        if !r? {
            return Err(Error::ThresholdValidation {
                threshold,
                witness: threshold + k as u64,
            });
        }
    }
    Ok(ThresholdReport {
        threshold,
        junctions,
        window,
    })
}
