//! Tame subgroups: membership, regularity and sampled tameness checks.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Cut, Segment, Sign, Tail, Word};

/// How deep into a tail regularity queries look for a member sub-tail.
const REGULARITY_DEPTH: u64 = 16;

/// A membership predicate on reduced words.
pub trait Membership: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn contains(&self, w: &Word) -> bool;

    /// Whether every single letter `a_n^{±1}` is a member.
    fn contains_letters(&self) -> bool;

    /// Tails that, with the letters, generate the subgroup.
    fn tail_generators(&self) -> Vec<Segment> {
        Vec::new()
    }
}

/// Subgroup generated by the letters and finitely many tails.
///
/// A reduced word is a member iff each of its tail segments eventually agrees
/// with a generator or the inverse of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeOnTails {
    name: String,
    generators: Vec<Segment>,
}

impl FreeOnTails {
    pub fn new(name: impl Into<String>, generators: Vec<Segment>) -> Result<FreeOnTails> {
        for (i, g) in generators.iter().enumerate() {
            if !g.is_tail() {
                return Err(Error::InvalidGroup(format!("generator {i} is not a tail")));
            }
            if generators[..i]
                .iter()
                .any(|h| same_class(g, h) || same_class(&g.inverse(), h))
            {
                return Err(Error::InvalidGroup(format!("generator {i} duplicates an earlier one")));
            }
        }
        Ok(FreeOnTails {
            name: name.into(),
            generators,
        })
    }

    /// `F(A)`.
    pub fn letters() -> FreeOnTails {
        FreeOnTails::new("fa", Vec::new()).expect("valid")
    }

    /// `F(A ∪ α)` with `α = T(1)`.
    pub fn letters_and_alpha() -> FreeOnTails {
        FreeOnTails::new("fa-alpha", vec![Segment::Forward(Tail::new(1, 1, Sign::Pos))]).expect("valid")
    }

    pub fn generators(&self) -> &[Segment] {
        &self.generators
    }

    fn admits(&self, s: &Segment) -> bool {
        self.generators
            .iter()
            .any(|g| same_class(s, g) || same_class(s, &g.inverse()))
    }
}

/// Two tail segments of the same shape that eventually agree.
pub fn same_class(a: &Segment, b: &Segment) -> bool {
    match (a, b) {
        (Segment::Forward(x), Segment::Forward(y)) | (Segment::Backward(x), Segment::Backward(y)) => {
            x.eventually_equal(y)
        }
        _ => false,
    }
}

impl Membership for FreeOnTails {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn contains(&self, w: &Word) -> bool {
        w.reduce()
            .segments()
            .iter()
            .filter(|s| s.is_tail())
            .all(|s| self.admits(s))
    }

    fn contains_letters(&self) -> bool {
        true
    }

    fn tail_generators(&self) -> Vec<Segment> {
        self.generators.clone()
    }
}

/// All of `BF(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WholeGroup;

impl Membership for WholeGroup {
    fn name(&self) -> String {
        "bf".into()
    }

    fn contains(&self, _: &Word) -> bool {
        true
    }

    fn contains_letters(&self) -> bool {
        true
    }
}

/// The cyclic subgroup generated by a finite word. Not tame in general.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclic {
    generator: Word,
}

impl Cyclic {
    pub fn new(generator: Word) -> Result<Cyclic> {
        let generator = generator.reduce();
        if !generator.is_finite() {
            return Err(Error::InvalidGroup("cyclic generator must be a finite word".into()));
        }
        Ok(Cyclic { generator })
    }

    fn power(&self, k: i64) -> Word {
        let base = if k < 0 {
            self.generator.invert()
        } else {
            self.generator.clone()
        };
        (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| acc.mul(&base))
    }
}

impl Membership for Cyclic {
    fn name(&self) -> String {
        format!("cyclic({})", self.generator)
    }

    fn contains(&self, w: &Word) -> bool {
        let Some(n) = w.finite_len() else {
            return false;
        };
        if self.generator.is_empty() {
            return w.reduce().is_empty();
        }
        // |g^k| >= |k| for nontrivial g
        let bound = n as i64 + 1;
        let w = w.reduce();
        (-bound..=bound).any(|k| self.power(k) == w)
    }

    fn contains_letters(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Tameness {
    /// Tame by construction.
    BuiltIn,
    Verified,
    Failed(TameReport),
    Unchecked,
}

/// A membership predicate together with its tameness status.
#[derive(Clone, Debug)]
pub struct TameOracle {
    inner: Arc<dyn Membership>,
    tameness: Tameness,
}

impl TameOracle {
    pub fn builtin(m: impl Membership + 'static) -> TameOracle {
        TameOracle {
            inner: Arc::new(m),
            tameness: Tameness::BuiltIn,
        }
    }

    /// Wraps a custom predicate after a tameness pass over `seeds`.
    pub fn custom(m: impl Membership + 'static, seeds: &[Word]) -> TameOracle {
        let mut oracle = TameOracle {
            inner: Arc::new(m),
            tameness: Tameness::Unchecked,
        };
        let report = check_tame(&oracle, seeds);
        oracle.tameness = if report.passed {
            Tameness::Verified
        } else {
            Tameness::Failed(report)
        };
        oracle
    }

    pub fn fa() -> TameOracle {
        TameOracle::builtin(FreeOnTails::letters())
    }

    pub fn fa_alpha() -> TameOracle {
        TameOracle::builtin(FreeOnTails::letters_and_alpha())
    }

    pub fn bf() -> TameOracle {
        TameOracle::builtin(WholeGroup)
    }

    /// `fa`, `fa-alpha`, `bf` or `custom:<file>`.
    pub fn from_selector(text: &str) -> Result<TameOracle> {
        match text {
            "fa" => Ok(TameOracle::fa()),
            "fa-alpha" => Ok(TameOracle::fa_alpha()),
            "bf" => Ok(TameOracle::bf()),
            _ => match text.strip_prefix("custom:") {
                Some(path) => load_custom(Path::new(path)),
                None => Err(Error::InvalidGroup(format!(
                    "unknown oracle {text:?}; expected fa, fa-alpha, bf or custom:<file>"
                ))),
            },
        }
    }

    pub fn name(&self) -> String {
        self.inner.name()
    }

    pub fn tameness(&self) -> &Tameness {
        &self.tameness
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.inner.contains(w)
    }

    pub fn contains_letters(&self) -> bool {
        self.inner.contains_letters()
    }

    pub fn tail_generators(&self) -> Vec<Segment> {
        self.inner.tail_generators()
    }

    /// Fails unless the oracle is usable for excision.
    pub fn ensure_usable(&self) -> Result<()> {
        match self.tameness {
            Tameness::BuiltIn | Tameness::Verified => {}
            _ => return Err(Error::UnverifiedOracle(self.name())),
        }
        if !self.contains_letters() {
            return Err(Error::OracleMissingLetters(self.name()));
        }
        Ok(())
    }

    /// Whether some initial segment of `after` is a member; an empty `after`
    /// counts as regular.
    pub fn regular_right(&self, after: &Word) -> bool {
        let after = after.reduce();
        match after.segments().first() {
            None => true,
            Some(Segment::Backward(t)) => {
                (0..=REGULARITY_DEPTH).any(|k| self.contains(&Word::from_raw(vec![Segment::Backward(t.advance(k))])))
            }
            Some(s) => self.contains(&Word::letter(s.first_letter().expect("starts with a letter"))),
        }
    }

    /// Whether some final segment of `before` is a member; an empty `before`
    /// counts as regular.
    pub fn regular_left(&self, before: &Word) -> bool {
        let before = before.reduce();
        match before.segments().last() {
            None => true,
            Some(Segment::Forward(t)) => {
                (0..=REGULARITY_DEPTH).any(|k| self.contains(&Word::from_raw(vec![Segment::Forward(t.advance(k))])))
            }
            Some(s) => self.contains(&Word::letter(s.last_letter().expect("ends with a letter"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sample: String,
    pub subword: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameReport {
    pub passed: bool,
    pub samples: usize,
    pub subwords_checked: usize,
    /// Samples that were not members and so were not checked.
    pub skipped: usize,
    pub violation: Option<Violation>,
}

/// Tail offsets examined by [`check_tame`].
pub const TAME_DEPTH: u64 = 3;

/// Checks that every subword between two sampled cuts of each member sample
/// is a member; stops at the first violation.
pub fn check_tame(h: &TameOracle, samples: &[Word]) -> TameReport {
    let mut report = TameReport {
        passed: true,
        samples: samples.len(),
        subwords_checked: 0,
        skipped: 0,
        violation: None,
    };
    for sample in samples {
        let w = sample.reduce();
        if !h.contains(&w) {
            report.skipped += 1;
            continue;
        }
        let cuts: Vec<Cut> = w.sample_cuts(TAME_DEPTH);
        for (i, &a) in cuts.iter().enumerate() {
            for &b in &cuts[i..] {
                let sub = w.between(a, b).expect("sorted cuts").reduce();
                if sub.is_empty() {
                    continue;
                }
                report.subwords_checked += 1;
                if !h.contains(&sub) {
                    report.passed = false;
                    report.violation = Some(Violation {
                        sample: w.to_string(),
                        subword: sub.to_string(),
                    });
                    return report;
                }
            }
        }
    }
    report
}

/// Words used to vet custom oracles.
pub fn seed_corpus() -> Vec<Word> {
    [
        "a1",
        "A1",
        "a1 a2",
        "a1 A2 a3",
        "a2 a1 a1 A2",
        "T(1)",
        "R'(1)",
        "T(3)",
        "a1 R'(1)",
        "T(1,2)",
        "R(2,2)",
        "T(1,2) R(2,2)",
        "R(1) T(1)",
        "a5 T(2) a1",
    ]
    .iter()
    .map(|s| s.parse().expect("seed words parse"))
    .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CustomFile {
    Tails { name: Option<String>, tails: Vec<String> },
    Cyclic { cyclic: String },
}

/// Loads `{"name": .., "tails": ["T(1)", ..]}` or `{"cyclic": "a1 a2"}`.
pub fn load_custom(path: &Path) -> Result<TameOracle> {
    let text = std::fs::read_to_string(path)?;
    parse_custom(&text)
}

pub fn parse_custom(text: &str) -> Result<TameOracle> {
    let seeds = seed_corpus();
    match serde_json::from_str::<CustomFile>(text)? {
        CustomFile::Tails { name, tails } => {
            let generators = tails
                .iter()
                .map(|t| {
                    let w: Word = t.parse()?;
                    match w.segments() {
                        [s] if s.is_tail() => Ok(s.clone()),
                        _ => Err(Error::InvalidGroup(format!("{t:?} is not a single tail"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let oracle = FreeOnTails::new(name.unwrap_or_else(|| "custom".into()), generators)?;
            Ok(TameOracle::custom(oracle, &seeds))
        }
        CustomFile::Cyclic { cyclic } => {
            let g: Word = cyclic.parse()?;
            let mut seeds = seeds;
            seeds.push(g.clone());
            Ok(TameOracle::custom(Cyclic::new(g)?, &seeds))
        }
    }
}
