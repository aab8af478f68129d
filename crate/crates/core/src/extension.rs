//! The sequences `m ↦ f(h_{ι,m}(w))` and computable stand-ins for taking
//! their limits.
//!
//! Limits are certified only when the structure forces eventual constancy
//! or periodicity. Otherwise the analysis lists the values the sequence keeps
//! returning to, and a [`Strategy`] picks one; that choice is a convention,
//! not a canonical limit.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::excision::{self, Excision};
use crate::exec::{self, Execution};
use crate::group::{Element, FiniteGroup};
use crate::hom::Homomorphism;
use crate::rational::{self, Rational};
use crate::realization::LengthAssignment;
use crate::word::{AlphabetSet, Segment, Word};

/// Default number of terms sampled when nothing is certified.
pub const DEFAULT_BUDGET: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Provably constant for `m >= from`.
    Constant {
        from: u64,
    },
    /// Provably periodic with this period for `m >= from`.
    Periodic {
        from: u64,
        period: u64,
    },
    None,
}

/// A group-valued sequence indexed by `m >= 1`.
pub trait SequenceSource: Sync {
    fn value(&self, m: u64) -> Result<Element>;

    fn certificate(&self) -> Certificate {
        Certificate::None
    }
}

/// `prefix` followed by `cycle` repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitSequence {
    pub prefix: Vec<Element>,
    pub cycle: Vec<Element>,
}

impl SequenceSource for ExplicitSequence {
    fn value(&self, m: u64) -> Result<Element> {
        assert!(m >= 1 && !self.cycle.is_empty());
        let i = (m - 1) as usize;
        Ok(match self.prefix.get(i) {
            Some(&e) => e,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        })
    }

    fn certificate(&self) -> Certificate {
        Certificate::Periodic {
            from: self.prefix.len() as u64 + 1,
            period: self.cycle.len() as u64,
        }
    }
}

/// An opaque closure; never certified.
pub struct FnSequence<F>(pub F);

impl<F: Fn(u64) -> Element + Sync> SequenceSource for FnSequence<F> {
    fn value(&self, m: u64) -> Result<Element> {
        Ok((self.0)(m))
    }
}

/// `m ↦ f(h_{ι,m}(w))`.
#[derive(Clone, Debug)]
pub struct GSequence {
    excision: Option<Excision>,
    hom: Homomorphism,
    certificate: Certificate,
}

impl GSequence {
    pub fn new(w: &Word, iota: &LengthAssignment, f: &Homomorphism) -> Result<GSequence> {
        if iota.weighted_total(w).is_none() {
            // infinite total length: the sequence is the identity throughout
            return Ok(GSequence {
                excision: None,
                hom: f.clone(),
                certificate: Certificate::Constant { from: 1 },
            });
        }
        let excision = Excision::new(w, iota, f.oracle())?;
        let certificate = certify(&excision, f, iota);
        Ok(GSequence {
            excision: Some(excision),
            hom: f.clone(),
            certificate,
        })
    }

    pub fn hom(&self) -> &Homomorphism {
        &self.hom
    }
}

impl SequenceSource for GSequence {
    fn value(&self, m: u64) -> Result<Element> {
        match &self.excision {
            Some(ex) => self.hom.eval(&ex.h(m)?),
            None => Ok(self.hom.group().identity()),
        }
    }

    fn certificate(&self) -> Certificate {
        self.certificate
    }
}

/// Offset into `t`'s letters beyond which every image is the identity.
fn identity_offset(f: &Homomorphism, s: &Segment) -> Option<u64> {
    let (Segment::Forward(t) | Segment::Backward(t)) = s else {
        return None;
    };
    let rule = f.rule();
    let g = f.group();
    let past_exceptions = rule.exceptions.keys().next_back().map_or(0, |&k| k / t.stride + 1);
    let cycle = rule.period().max(1);
    let last = past_exceptions + cycle;
    if (past_exceptions..last).any(|j| rule.image(g, t.letter(j).index) != g.identity()) {
        return None;
    }
    Some(
        (0..past_exceptions)
            .rev()
            .find(|&j| rule.image(g, t.letter(j).index) != g.identity())
            .map_or(0, |j| j + 1),
    )
}

/// Constant from some `m` if every singular side borders a tail whose far
/// letters map to the identity: once `2/m` is below the spacing of singular
/// points and `1/m` below each such tail's identity part, growing `m` only
/// restores identity letters.
fn certify(ex: &Excision, f: &Homomorphism, iota: &LengthAssignment) -> Certificate {
    let singular = ex.singular();
    if singular.is_empty() {
        return Certificate::Constant { from: 1 };
    }
    let segs = ex.realization().word().segments();
    let mut smallest: Option<Rational> = None;
    let mut note = |q: Rational| {
        if smallest.as_ref().is_none_or(|s| q < *s) {
            smallest = Some(q);
        }
    };
    for s in singular {
        let crate::word::Cut::Boundary(i) = s.cut else {
            return Certificate::None;
        };
        let sides = [(!s.left_regular, i.checked_sub(1)), (!s.right_regular, Some(i))];
        for (singular_side, seg) in sides {
            if !singular_side {
                continue;
            }
            let Some(seg) = seg.and_then(|k| segs.get(k)) else {
                return Certificate::None;
            };
            let Some(k) = identity_offset(f, seg) else {
                return Certificate::None;
            };
            let (Segment::Forward(t) | Segment::Backward(t)) = seg else {
                return Certificate::None;
            };
            note(iota.tail_sum(&t.advance(k)));
        }
    }
    for pair in singular.windows(2) {
        note((&pair[1].point - &pair[0].point) / rational::int(2));
    }
    match smallest {
        Some(q) if !q.is_zero() => Certificate::Constant {
            from: rational::floor_u64(&(Rational::from_integer(1.into()) / q)) + 1,
        },
        _ => Certificate::None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Analysis {
    Constant {
        value: Element,
        from: u64,
    },
    Periodic {
        from: u64,
        period: u64,
        /// Values at `from, from + 1, …, from + period - 1`.
        values: Vec<Element>,
    },
    Unknown {
        /// Values the sampled sequence kept returning to, ascending.
        accumulation: Vec<Element>,
        window: (u64, u64),
    },
}

impl Analysis {
    pub fn kind(&self) -> &'static str {
        match self {
            Analysis::Constant { .. } => "constant",
            Analysis::Periodic { .. } => "periodic",
            Analysis::Unknown { .. } => "unknown",
        }
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let names = |xs: &[Element]| xs.iter().map(|&x| g.name(x)).collect::<Vec<_>>();
        match self {
            Analysis::Constant { value, from } => json!({"kind": "constant", "value": g.name(*value), "from": from}),
            Analysis::Periodic { from, period, values } => {
                json!({"kind": "periodic", "from": from, "period": period, "values": names(values)})
            }
            Analysis::Unknown { accumulation, window } => json!({
                "kind": "unknown",
                "accumulation": names(accumulation),
                "window": [window.0, window.1],
            }),
        }
    }

    pub fn describe(&self, g: &FiniteGroup) -> String {
        let names = |xs: &[Element]| xs.iter().map(|&x| g.name(x)).collect::<Vec<_>>().join(", ");
        match self {
            Analysis::Constant { value, from } => format!("Constant({}, from m={from})", g.name(*value)),
            Analysis::Periodic { from, period, values } => {
                format!("Periodic(from m={from}, period {period}, [{}])", names(values))
            }
            Analysis::Unknown { accumulation, window } => format!(
                "Unknown(accumulation {{{}}} over m={}..{})",
                names(accumulation),
                window.0,
                window.1
            ),
        }
    }
}

/// Classifies a sequence, sampling `1..=budget` when nothing is certified.
pub fn detect_eventual_period(source: &dyn SequenceSource, budget: u64, exec: Execution) -> Result<Analysis> {
    match source.certificate() {
        Certificate::Constant { from } => Ok(Analysis::Constant {
            value: source.value(from)?,
            from,
        }),
        Certificate::Periodic { from, period } => periodic(source, from, period),
        Certificate::None => {
            let budget = budget.max(1);
            let values = exec::try_map_range(exec, 1, budget, |m| source.value(m))?;
            Ok(Analysis::Unknown {
                accumulation: accumulation(&values),
                window: (1, budget),
            })
        }
    }
}

fn periodic(source: &dyn SequenceSource, mut from: u64, period: u64) -> Result<Analysis> {
    let cycle: Vec<Element> = (from..from + period).map(|m| source.value(m)).collect::<Result<_>>()?;
    let p = (1..=period)
        .find(|&p| period.is_multiple_of(p) && (0..period as usize).all(|i| cycle[i] == cycle[i % p as usize]))
        .expect("period itself qualifies");
    let mut values = cycle[..p as usize].to_vec();
    // pull the start back while the earlier terms already fit the cycle
    while from > 1 && source.value(from - 1)? == values[(p - 1) as usize] {
        values.rotate_right(1);
        from -= 1;
    }
    Ok(if p == 1 {
        Analysis::Constant { value: values[0], from }
    } else {
        Analysis::Periodic {
            from,
            period: p,
            values,
        }
    })
}

/// Values occurring in at least two separate runs, plus the value of the
/// final run.
fn accumulation(values: &[Element]) -> Vec<Element> {
    let mut runs: Vec<Element> = Vec::new();
    for &v in values {
        if runs.last() != Some(&v) {
            runs.push(v);
        }
    }
    let mut out: Vec<Element> = runs
        .iter()
        .copied()
        .filter(|v| runs.iter().filter(|r| *r == v).count() >= 2)
        .chain(runs.last().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    RequireConvergence,
    /// The value on the residue class `r` modulo the detected period.
    ResidueSelection(u64),
    MinAccumulation,
    /// Evaluate at a common index beyond every threshold with these words.
    FamilyCoherent(Vec<Word>),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::RequireConvergence => write!(f, "require"),
            Strategy::ResidueSelection(r) => write!(f, "residue:{r}"),
            Strategy::MinAccumulation => write!(f, "min-accum"),
            Strategy::FamilyCoherent(ws) => {
                let ws: Vec<String> = ws.iter().map(Word::to_string).collect();
                write!(f, "family:{}", ws.join(";"))
            }
        }
    }
}

impl Strategy {
    /// `require`, `residue:<r>`, `residue:odd|even`, `min-accum`, or
    /// `family:<w>;<w>;…`.
    pub fn parse(text: &str) -> Result<Strategy> {
        let bad = || Error::Syntax {
            offset: 0,
            message: format!("unknown strategy {text:?}; expected require, residue:<r>, min-accum or family:<words>"),
        };
        match text {
            "require" => Ok(Strategy::RequireConvergence),
            "min-accum" => Ok(Strategy::MinAccumulation),
            _ => {
                if let Some(r) = text.strip_prefix("residue:") {
                    let r = match r {
                        "even" => 0,
                        "odd" => 1,
                        r => r.parse().map_err(|_| bad())?,
                    };
                    Ok(Strategy::ResidueSelection(r))
                } else if let Some(ws) = text.strip_prefix("family:") {
                    let ws = ws
                        .split(';')
                        .filter(|s| !s.trim().is_empty())
                        .map(str::parse)
                        .collect::<Result<_>>()?;
                    Ok(Strategy::FamilyCoherent(ws))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

pub fn select_limit(analysis: &Analysis, strategy: &Strategy) -> Result<Element> {
    let mismatch = || Error::StrategyMismatch {
        strategy: strategy.to_string(),
        analysis: analysis.kind().into(),
    };
    match (analysis, strategy) {
        (Analysis::Constant { value, .. }, _) => Ok(*value),
        (_, Strategy::RequireConvergence) => Err(Error::NotConvergent(analysis.kind().into())),
        (Analysis::Periodic { from, period, values }, Strategy::ResidueSelection(r)) => {
            if r >= period {
                return Err(Error::ResidueOutOfRange {
                    residue: *r,
                    period: *period,
                });
            }
            Ok(values[((r + period - from % period) % period) as usize])
        }
        (Analysis::Periodic { values, .. }, Strategy::MinAccumulation) => {
            Ok(*values.iter().min().expect("nonempty cycle"))
        }
        (Analysis::Unknown { accumulation, .. }, Strategy::MinAccumulation) => {
            accumulation.first().copied().ok_or_else(mismatch)
        }
        _ => Err(mismatch()),
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub value: Element,
    pub analysis: Analysis,
    /// Sampled `(m, g_m)` pairs.
    pub sample: Vec<(u64, Element)>,
    /// Index used by a family-coherent evaluation.
    pub evaluated_at: Option<u64>,
}

impl Extension {
    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        json!({
            "value": g.name(self.value),
            "analysis": self.analysis.to_json(g),
            "sample": self.sample.iter().map(|(m, x)| json!({"m": m, "g": g.name(*x)})).collect::<Vec<_>>(),
            "evaluated_at": self.evaluated_at,
        })
    }
}

/// `g_{ι,m}` for `m` in `lo..=hi`.
pub fn g_sequence(
    w: &Word,
    iota: &LengthAssignment,
    f: &Homomorphism,
    lo: u64,
    hi: u64,
    exec: Execution,
) -> Result<Vec<Element>> {
    let seq = GSequence::new(w, iota, f)?;
    exec::try_map_range(exec, lo.max(1), hi, |m| seq.value(m))
}

/// The extended homomorphism at `w` under `strategy`.
pub fn extend_eval(
    w: &Word,
    iota: &LengthAssignment,
    f: &Homomorphism,
    strategy: &Strategy,
    budget: u64,
    exec: Execution,
) -> Result<Extension> {
    let seq = GSequence::new(w, iota, f)?;
    let analysis = detect_eventual_period(&seq, budget, exec)?;
    let sample_hi = match &analysis {
        Analysis::Constant { from, .. } => (*from).max(8),
        _ => 16,
    };
    let sample = exec::try_map_range(exec, 1, sample_hi, |m| Ok::<_, Error>((m, seq.value(m)?)))?;
    if let (Strategy::FamilyCoherent(words), false) = (strategy, matches!(analysis, Analysis::Constant { .. })) {
        let mut at = 1;
        for u in words {
            at = at.max(excision::threshold(w, u, iota, f.oracle(), 0, exec)?.threshold);
            at = at.max(excision::threshold(u, w, iota, f.oracle(), 0, exec)?.threshold);
        }
        return Ok(Extension {
            value: seq.value(at)?,
            analysis,
            sample,
            evaluated_at: Some(at),
        });
    }
    Ok(Extension {
        value: select_limit(&analysis, strategy)?,
        analysis,
        sample,
        evaluated_at: None,
    })
}

/// `f̂(words[product]) = f̂(words[left])·f̂(words[right])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub left: usize,
    pub right: usize,
    pub product: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationCheck {
    pub equation: Equation,
    pub threshold: u64,
    /// Holds at every `m` in `[m_star, m_star + window]`.
    pub holds: bool,
    pub first_failure: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub m_star: u64,
    pub window: u64,
    pub values: Vec<Element>,
    pub checks: Vec<EquationCheck>,
}

impl FamilyReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Evaluates a family of words at a common index past every threshold and
/// checks the listed product equations there and over the next `window` indices.
pub fn family_eval(
    words: &[Word],
    equations: &[Equation],
    iota: &LengthAssignment,
    f: &Homomorphism,
    window: u64,
    exec: Execution,
) -> Result<FamilyReport> {
    for e in equations {
        let (Some(a), Some(b), Some(c)) = (words.get(e.left), words.get(e.right), words.get(e.product)) else {
            return Err(Error::InvalidEquation(format!("{e:?} refers past the family")));
        };
        if !a.mul(b).equals(c) {
            return Err(Error::InvalidEquation(format!("{c} is not {a}·{b}")));
        }
    }
    let thresholds = equations
        .iter()
        .map(|e| excision::threshold(&words[e.left], &words[e.right], iota, f.oracle(), window, exec))
        .collect::<Result<Vec<_>>>()?;
    let m_star = thresholds.iter().map(|t| t.threshold).max().unwrap_or(1);
    let seqs = words
        .iter()
        .map(|w| GSequence::new(w, iota, f))
        .collect::<Result<Vec<_>>>()?;
    let table: Vec<Vec<Element>> = exec::try_map_range(exec, m_star, m_star + window, |m| {
        seqs.iter().map(|s| s.value(m)).collect::<Result<Vec<_>>>()
    })?;
    let g = f.group();
    let checks = equations
        .iter()
        .zip(&thresholds)
        .map(|(e, t)| {
            let first_failure = table
                .iter()
                .enumerate()
                .find(|(_, row)| row[e.product] != g.mul(row[e.left], row[e.right]))
                .map(|(k, _)| m_star + k as u64);
            EquationCheck {
                equation: *e,
                threshold: t.threshold,
                holds: first_failure.is_none(),
                first_failure,
            }
        })
        .collect();
    Ok(FamilyReport {
        m_star,
        window,
        values: table[0].clone(),
        checks,
    })
}

/// Product of `f` over the pieces of `w`'s split string (restricted to
/// `keep`) that occur in `j`, directly or inverted.
pub fn lemma2_net(w: &Word, keep: &AlphabetSet, f: &Homomorphism, j: &[Word]) -> Result<Element> {
    let g = f.group();
    let mut acc = g.identity();
    for piece in w.split_string(keep) {
        let inverse = piece.invert();
        if j.iter().any(|u| u.equals(&piece) || u.equals(&inverse)) {
            acc = g.mul(acc, f.eval(&piece)?);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hom::LetterRule;
    use crate::tame::TameOracle;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn z3_ones(oracle: TameOracle) -> Homomorphism {
        Homomorphism::new(
            Arc::new(FiniteGroup::cyclic(3).unwrap()),
            oracle,
            LetterRule::periodic(vec![1]),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn alpha_sequence_into_z3() {
        let f = z3_ones(TameOracle::fa());
        let got = g_sequence(
            &Word::alpha(),
            &LengthAssignment::dyadic(),
            &f,
            2,
            8,
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(got, vec![1, 1, 2, 2, 2, 2, 0]);
        let seq = GSequence::new(&Word::alpha(), &LengthAssignment::dyadic(), &f).unwrap();
        assert_eq!(seq.certificate(), Certificate::None);
        let a = detect_eventual_period(&seq, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        assert_eq!(
            a,
            Analysis::Unknown {
                accumulation: vec![0, 1, 2],
                window: (1, DEFAULT_BUDGET)
            }
        );
        assert_eq!(select_limit(&a, &Strategy::MinAccumulation).unwrap(), 0);
        assert!(matches!(
            select_limit(&a, &Strategy::RequireConvergence),
            Err(Error::NotConvergent(_))
        ));
    }

    #[test]
    fn words_in_h_give_constant_sequences() {
        let f = z3_ones(TameOracle::fa());
        let seq = GSequence::new(&w("a1 a2"), &LengthAssignment::dyadic(), &f).unwrap();
        assert_eq!(seq.certificate(), Certificate::Constant { from: 1 });
        let e = extend_eval(
            &w("a1 a2"),
            &LengthAssignment::dyadic(),
            &f,
            &Strategy::RequireConvergence,
            64,
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(e.value, 2);
    }

    #[test]
    fn eventually_identity_rules_certify_tails() {
        let g = Arc::new(FiniteGroup::cyclic(5).unwrap());
        let mut ex = std::collections::BTreeMap::new();
        ex.insert(1, 1);
        ex.insert(3, 2);
        let f = Homomorphism::new(g, TameOracle::fa(), LetterRule::eventually_identity(ex), vec![]).unwrap();
        let seq = GSequence::new(&Word::alpha(), &LengthAssignment::dyadic(), &f).unwrap();
        let Certificate::Constant { from } = seq.certificate() else {
            panic!("expected a certificate");
        };
        // identity part of T(1) starts at a4, which has tail length 1/8
        assert_eq!(from, 9);
        for m in from..from + 40 {
            assert_eq!(seq.value(m).unwrap(), 3);
        }
    }

    #[test]
    fn sign_sequence_is_periodic() {
        let g =
            FiniteGroup::parse_json(r#"{"cayley": {"elements": ["+1", "-1"], "table": [["+1","-1"],["-1","+1"]]}}"#)
                .unwrap();
        let (plus, minus) = (g.parse("+1").unwrap(), g.parse("-1").unwrap());
        let seq = ExplicitSequence {
            prefix: vec![],
            cycle: vec![minus, plus],
        };
        let a = detect_eventual_period(&seq, 16, Execution::Sequential).unwrap();
        assert_eq!(
            a,
            Analysis::Periodic {
                from: 1,
                period: 2,
                values: vec![minus, plus]
            }
        );
        assert_eq!(select_limit(&a, &Strategy::ResidueSelection(1)).unwrap(), minus);
        assert_eq!(select_limit(&a, &Strategy::ResidueSelection(0)).unwrap(), plus);
        assert!(matches!(
            select_limit(&a, &Strategy::ResidueSelection(2)),
            Err(Error::ResidueOutOfRange { .. })
        ));
    }

    #[test]
    fn periodic_detection_normalizes() {
        let seq = ExplicitSequence {
            prefix: vec![2, 0, 1],
            cycle: vec![0, 1, 0, 1],
        };
        let a = detect_eventual_period(&seq, 16, Execution::Sequential).unwrap();
        assert_eq!(
            a,
            Analysis::Periodic {
                from: 2,
                period: 2,
                values: vec![0, 1]
            }
        );
        let c = ExplicitSequence {
            prefix: vec![1],
            cycle: vec![2, 2],
        };
        assert_eq!(
            detect_eventual_period(&c, 16, Execution::Sequential).unwrap(),
            Analysis::Constant { value: 2, from: 2 }
        );
    }

    #[test]
    fn opaque_sequences_report_accumulation() {
        let seq = FnSequence(|m: u64| (m % 2) as usize);
        let a = detect_eventual_period(&seq, 32, Execution::Sequential).unwrap();
        assert_eq!(
            a,
            Analysis::Unknown {
                accumulation: vec![0, 1],
                window: (1, 32)
            }
        );
    }

    #[test]
    fn family_with_alpha() {
        let f = z3_ones(TameOracle::fa());
        let words = vec![w("a1"), Word::alpha(), w("a1").mul(&Word::alpha())];
        let eq = Equation {
            left: 0,
            right: 1,
            product: 2,
        };
        let r = family_eval(&words, &[eq], &LengthAssignment::dyadic(), &f, 20, Execution::Parallel).unwrap();
        assert_eq!(r.m_star, 2);
        assert!(r.all_hold());

        let words = vec![Word::alpha(), Word::alpha().invert(), Word::empty()];
        let r = family_eval(&words, &[eq], &LengthAssignment::dyadic(), &f, 20, Execution::Parallel).unwrap();
        assert_eq!(r.m_star, 1);
        assert!(r.all_hold());

        let bad = family_eval(
            &words,
            &[Equation {
                left: 0,
                right: 0,
                product: 2,
            }],
            &LengthAssignment::dyadic(),
            &f,
            5,
            Execution::Sequential,
        );
        assert!(matches!(bad, Err(Error::InvalidEquation(_))));
    }

    #[test]
    fn lemma2_examples() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let mut ex = std::collections::BTreeMap::new();
        ex.insert(1, g.parse("(12)").unwrap());
        ex.insert(2, g.parse("(23)").unwrap());
        ex.insert(3, g.parse("(123)").unwrap());
        ex.insert(5, g.parse("(13)").unwrap());
        let f = Homomorphism::new(g.clone(), TameOracle::fa(), LetterRule::eventually_identity(ex), vec![]).unwrap();

        let x = w("a1 a1 a2 A1 a3 a2 a2 a3 a3 a1 a1 a1");
        let keep = AlphabetSet::finite([1, 2]);
        assert_eq!(
            lemma2_net(&x, &keep, &f, &[w("a2 a2")]).unwrap(),
            f.eval(&w("a2 a2")).unwrap()
        );
        assert_eq!(lemma2_net(&x, &keep, &f, &[]).unwrap(), g.identity());
        let all = x.split_string(&keep);
        assert_eq!(
            lemma2_net(&x, &keep, &f, &all).unwrap(),
            f.eval(&x.retract(&keep)).unwrap()
        );

        let keep = AlphabetSet::finite([2, 3, 5]);
        let (w1, w2) = (w("a1 a2 a3 a4"), w("A4 A3 a5 a6"));
        let j0: Vec<Word> = ["a2", "a3", "a5", "a2 a3", "A3 a5", "a2 a5"]
            .iter()
            .map(|s| w(s))
            .collect();
        let lhs = lemma2_net(&w1.mul(&w2), &keep, &f, &j0).unwrap();
        let rhs = g.mul(
            lemma2_net(&w1, &keep, &f, &j0).unwrap(),
            lemma2_net(&w2, &keep, &f, &j0).unwrap(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategies_parse() {
        assert_eq!(Strategy::parse("residue:odd").unwrap(), Strategy::ResidueSelection(1));
        assert_eq!(Strategy::parse("min-accum").unwrap(), Strategy::MinAccumulation);
        assert_eq!(
            Strategy::parse("family:a1;T(1)").unwrap(),
            Strategy::FamilyCoherent(vec![w("a1"), Word::alpha()])
        );
        assert!(Strategy::parse("ultrafilter").is_err());
    }
}
