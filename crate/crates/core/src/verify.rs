//! Invariant suites behind `verify all`, keyed by the property they check.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::excision::{self, ComponentClass, Excision, ExcisionPlan};
use crate::exec::{self, Execution};
use crate::extension::{self, Equation, Strategy};
use crate::group::FiniteGroup;
use crate::hom::{Homomorphism, LetterRule};
use crate::rational::{self, Rational};
use crate::realization::{LengthAssignment, PointClass, Realization};
use crate::sample::{self, Shape};
use crate::tame::{check_tame, TameOracle};
use crate::word::{rewrite, AlphabetSet, Word};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

type Check = Result<usize, String>;

fn finish(name: &'static str, r: Check) -> SuiteResult {
    match r {
        Ok(cases) => SuiteResult {
            name,
            passed: true,
            cases,
            detail: String::new(),
        },
        Err(detail) => SuiteResult {
            name,
            passed: false,
            cases: 0,
            detail,
        },
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::error::Error) -> String {
    e.to_string()
}

/// Named outcomes, one per property.
pub type Checks = Vec<(&'static str, Result<(), String>)>;

/// Lemma checks on one plan. Each entry is `(name, outcome)`.
pub fn plan_lemmas(ex: &Excision, plan: &ExcisionPlan) -> Checks {
    let r = ex.realization();
    let step = rational::reciprocal(plan.m);
    let in_c = |q: &Rational| matches!(r.point_class(q), Ok(PointClass::InC(_)));
    let total = r.total();
    let second: Vec<_> = plan
        .raw_components
        .iter()
        .filter(|c| c.class == ComponentClass::Second)
        .collect();
    let spaced = |ends: Vec<&Rational>| {
        let mut ends: Vec<&Rational> = ends.into_iter().filter(|q| !q.is_zero() && *q != total).collect();
        ends.sort();
        ends.windows(2).all(|p| p[1] - p[0] >= step)
    };
    let first = plan
        .raw_components
        .iter()
        .filter(|c| c.class == ComponentClass::First)
        .count();
    vec![
        (
            "second-class-endpoints-in-C",
            ensure(second.iter().all(|c| in_c(&c.lo) && in_c(&c.hi)), || {
                format!("m={}: a second-class endpoint is inside a letter", plan.m)
            }),
        ),
        (
            "like-endpoint-spacing",
            ensure(
                spaced(second.iter().map(|c| &c.lo).collect()) && spaced(second.iter().map(|c| &c.hi).collect()),
                || format!("m={}: second-class endpoints closer than 1/m", plan.m),
            ),
        ),
        (
            "first-class-count",
            ensure(
                Rational::from_integer(first.into()) <= Rational::from_integer(plan.m.into()) * total,
                || format!("m={}: {first} first-class components exceed m·L", plan.m),
            ),
        ),
        (
            "singular-points-covered",
            ensure(
                plan.singular
                    .iter()
                    .all(|s| plan.components.iter().any(|c| c.lo <= s.point && s.point <= c.hi)),
                || format!("m={}: a singular point lies outside every component", plan.m),
            ),
        ),
        (
            "kept-blocks-in-H",
            ensure(
                plan.kept
                    .iter()
                    .all(|b| ex.oracle().contains(&b.word) && in_c(&b.lo) && in_c(&b.hi)),
                || format!("m={}: a kept block is not a member or not bounded by C", plan.m),
            ),
        ),
    ]
}

/// A configuration `(w, ι, H)` for the excision suites.
#[derive(Clone, Debug)]
pub struct Config {
    pub word: Word,
    pub iota: LengthAssignment,
    pub oracle: TameOracle,
}

/// Seeded configurations mixing random words, built-in oracles and several
/// length assignments; always includes the two-sided singular word.
pub fn configs(seed: u64, count: usize) -> Vec<Config> {
    let mut rng = sample::rng(seed);
    let iotas = sample::iotas();
    let oracles = [TameOracle::fa(), TameOracle::fa_alpha(), TameOracle::bf()];
    let fixed = ["T(1,2) R(2,2)", "T(1)", "R'(1) a3 T(2)", "a1 T(2,2) R(1) a5"];
    let mut out: Vec<Config> = fixed
        .iter()
        .map(|s| Config {
            word: s.parse().expect("fixed words parse"),
            iota: LengthAssignment::dyadic(),
            oracle: TameOracle::fa(),
        })
        .collect();
    let shape = Shape::default();
    while out.len() < count {
        let word = sample::word(&mut rng, &shape);
        let iota = iotas[rng.gen_range(0..iotas.len())].clone();
        let oracle = oracles[rng.gen_range(0..oracles.len())].clone();
        out.push(Config { word, iota, oracle });
    }
    out
}

fn excision_lemmas(exec: Execution) -> Vec<SuiteResult> {
    let cfgs = configs(11, 60);
    let per_config = exec::map(exec, &cfgs, |c| -> Result<Checks, String> {
        let ex = Excision::new(&c.word, &c.iota, &c.oracle).map_err(err)?;
        let mut out = Vec::new();
        for m in 1..=24 {
            let plan = ex.plan(m).map_err(err)?;
            out.extend(plan_lemmas(&ex, &plan));
        }
        Ok(out)
    });
    let mut names: Vec<&'static str> = Vec::new();
    let mut results: Vec<Check> = Vec::new();
    for r in per_config {
        let r = match r {
            Ok(r) => r,
            Err(e) => return vec![finish("excision-plan", Err(e))],
        };
        for (name, outcome) in r {
            let i = names.iter().position(|n| *n == name).unwrap_or_else(|| {
                names.push(name);
                results.push(Ok(0));
                names.len() - 1
            });
            results[i] = match (&results[i], outcome) {
                (Ok(n), Ok(())) => Ok(n + 1),
                (Ok(_), Err(e)) => Err(e),
                (Err(e), _) => Err(e.clone()),
            };
        }
    }
    names.into_iter().zip(results).map(|(n, r)| finish(n, r)).collect()
}

fn inverse_symmetry(exec: Execution) -> Check {
    let cfgs = configs(12, 60);
    let counts = exec::map(exec, &cfgs, |c| -> Check {
        let ex = Excision::new(&c.word, &c.iota, &c.oracle).map_err(err)?;
        let inv = Excision::new(&c.word.invert(), &c.iota, &c.oracle).map_err(err)?;
        for m in 1..=24 {
            let (a, b) = (ex.h(m).map_err(err)?, inv.h(m).map_err(err)?);
            ensure(b.equals(&a.invert()), || format!("{} at m={m}", c.word))?;
        }
        Ok(24)
    });
    counts.into_iter().sum()
}

fn confluence(_: Execution) -> Check {
    let mut rng = sample::rng(3);
    let shape = Shape::default();
    for case in 0..200 {
        let parts: Vec<Word> = (0..3).map(|_| sample::word(&mut rng, &shape)).collect();
        let raw = parts.iter().fold(Word::empty(), |acc, p| acc.concat(p));
        let expected = raw.reduce();
        let mut state: u64 = rng.gen();
        let nf = rewrite::normalize_with(&raw, |n| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as usize % n
        });
        ensure(nf == expected, || {
            format!("case {case}: {raw} gave {nf} and {expected}")
        })?;
    }
    Ok(200)
}

fn group_laws(_: Execution) -> Check {
    let mut rng = sample::rng(4);
    let shape = Shape::default();
    for case in 0..200 {
        let (a, b, c) = (
            sample::word(&mut rng, &shape),
            sample::word(&mut rng, &shape),
            sample::word(&mut rng, &shape),
        );
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || {
            format!("case {case}: associativity")
        })?;
        ensure(a.mul(&a.invert()).is_empty(), || {
            format!("case {case}: {a} times its inverse")
        })?;
        ensure(a.reduce() == a, || format!("case {case}: reduce not idempotent on {a}"))?;
    }
    Ok(200)
}

fn reflection(_: Execution) -> Check {
    let mut rng = sample::rng(5);
    let shape = Shape::default();
    let iotas = sample::iotas();
    let mut cases = 0;
    for iota in &iotas {
        for _ in 0..25 {
            let w = sample::word(&mut rng, &shape);
            let (r, s) = (Realization::new(&w, iota), Realization::new(&w.invert(), iota));
            ensure(r.total() == s.total(), || format!("L differs for {w}"))?;
            for row in r.layout(3) {
                let (a, b) = (r.total() - &row.end, r.total() - &row.start);
                let mid = (&a + &b) / rational::int(2);
                let hit = match s.point_class(&mid).map_err(err)? {
                    PointClass::InsideLetter { position, interval } => {
                        let l = s.word().letter_at(position).map_err(err)?;
                        interval == (a, b)
                            && l.index == row.index
                            && (l.sign == crate::word::Sign::Pos) == (row.sign < 0)
                    }
                    PointClass::InC(_) => false,
                };
                ensure(hit, || format!("reflection fails on {w}"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn tameness(_: Execution) -> Check {
    let mut rng = sample::rng(6);
    let mut samples: Vec<Word> = (0..20).map(|_| sample::alpha_word(&mut rng, 3, 4)).collect();
    samples.push(Word::alpha());
    let mut cases = 0;
    for h in [TameOracle::fa(), TameOracle::fa_alpha()] {
        let r = check_tame(&h, &samples);
        ensure(r.passed, || format!("{}: {:?}", h.name(), r.violation))?;
        cases += r.subwords_checked;
        for (u, v) in samples.iter().zip(samples.iter().skip(1)) {
            if h.contains(u) && h.contains(v) {
                ensure(h.contains(&u.mul(v)), || {
                    format!("{} not closed under {u}·{v}", h.name())
                })?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn eq1(exec: Execution) -> Check {
    let pairs = [
        ("a1", "T(1)"),
        ("T(1)", "a1"),
        ("T(1)", "R(2)"),
        ("T(1,2)", "R(2,2)"),
        ("a1 T(2)", "R'(3) a4"),
        ("a2 R(1)", "T'(1) a3"),
        ("T(1)", "R'(1)"),
        ("R(3) a1", "T(1)"),
    ];
    let oracles = [TameOracle::fa(), TameOracle::fa_alpha()];
    let mut cases = 0;
    for h in &oracles {
        for iota in &sample::iotas()[..2] {
            for (a, b) in pairs {
                let (a, b): (Word, Word) = (a.parse().map_err(err)?, b.parse().map_err(err)?);
                excision::threshold(&a, &b, iota, h, 20, exec).map_err(|e| format!("{a} · {b}: {e}"))?;
                cases += 21;
            }
        }
    }
    Ok(cases)
}

fn hom_laws(_: Execution) -> Check {
    let g = Arc::new(FiniteGroup::symmetric(3).expect("S3"));
    let rule = LetterRule::periodic(vec![1, 3, 2]);
    let f = Homomorphism::new(
        g.clone(),
        TameOracle::fa_alpha(),
        rule,
        vec![(Word::alpha().segments()[0].clone(), 4)],
    )
    .map_err(err)?;
    let mut rng = sample::rng(8);
    for case in 0..100 {
        let (u, v) = (sample::alpha_word(&mut rng, 3, 5), sample::alpha_word(&mut rng, 3, 5));
        let (fu, fv) = (f.eval(&u).map_err(err)?, f.eval(&v).map_err(err)?);
        ensure(f.eval(&u.mul(&v)).map_err(err)? == g.mul(fu, fv), || {
            format!("case {case}: {u}, {v}")
        })?;
        ensure(f.eval(&u.invert()).map_err(err)? == g.inverse(fu), || {
            format!("case {case}: inverse of {u}")
        })?;
    }
    Ok(200)
}

fn agreement_on_h(exec: Execution) -> Check {
    let g = Arc::new(FiniteGroup::cyclic(6).expect("Z6"));
    let f = Homomorphism::new(g, TameOracle::fa(), LetterRule::periodic(vec![1, 5, 2]), vec![]).map_err(err)?;
    let mut rng = sample::rng(9);
    let strategies = [
        Strategy::RequireConvergence,
        Strategy::MinAccumulation,
        Strategy::ResidueSelection(0),
    ];
    let mut cases = 0;
    for _ in 0..30 {
        let w = sample::finite_word(&mut rng, 8, 6);
        for iota in &sample::iotas()[..3] {
            for s in &strategies {
                let e = extension::extend_eval(&w, iota, &f, s, 32, exec).map_err(err)?;
                ensure(e.value == f.eval(&w).map_err(err)?, || format!("{w} under {s}"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn nonuniqueness(exec: Execution) -> Check {
    let g = Arc::new(FiniteGroup::cyclic(6).expect("Z6"));
    let alpha = Word::alpha().segments()[0].clone();
    let rule = LetterRule::periodic(vec![1]);
    let f0 = Homomorphism::new(
        g.clone(),
        TameOracle::fa_alpha(),
        rule.clone(),
        vec![(alpha.clone(), 0)],
    )
    .map_err(err)?;
    let f1 = Homomorphism::new(g, TameOracle::fa_alpha(), rule, vec![(alpha, 1)]).map_err(err)?;
    let iota = LengthAssignment::dyadic();
    let mut rng = sample::rng(10);
    for _ in 0..50 {
        let w = sample::finite_word(&mut rng, 8, 5);
        let a = extension::extend_eval(&w, &iota, &f0, &Strategy::RequireConvergence, 32, exec).map_err(err)?;
        let b = extension::extend_eval(&w, &iota, &f1, &Strategy::RequireConvergence, 32, exec).map_err(err)?;
        ensure(a.value == b.value, || format!("extensions differ on {w}"))?;
    }
    let a = extension::extend_eval(&Word::alpha(), &iota, &f0, &Strategy::RequireConvergence, 32, exec).map_err(err)?;
    let b = extension::extend_eval(&Word::alpha(), &iota, &f1, &Strategy::RequireConvergence, 32, exec).map_err(err)?;
    ensure(a.value != b.value, || "extensions agree at α".into())?;
    Ok(51)
}

fn lemma2(_: Execution) -> Check {
    let g = Arc::new(FiniteGroup::symmetric(4).expect("S4"));
    let images = ["(12)", "(234)", "(13)(24)", "(1234)", "(23)", "(14)"]
        .iter()
        .map(|s| g.parse(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let f = Homomorphism::new(g.clone(), TameOracle::fa(), LetterRule::periodic(images), vec![]).map_err(err)?;
    let keep = AlphabetSet::finite([2, 3, 5]);
    let w1: Word = "a1 a2 a3 a4".parse().map_err(err)?;
    let w2: Word = "A4 A3 a5 a6".parse().map_err(err)?;
    let j0: Vec<Word> = ["a2", "a3", "a5", "a2 a3", "A3 a5", "a2 a5"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut rng = sample::rng(13);
    for case in 0..20 {
        let mut j = j0.clone();
        for _ in 0..rng.gen_range(0..5) {
            let extra = sample::finite_word(&mut rng, 3, 5).retract(&keep);
            j.push(extra);
        }
        let lhs = extension::lemma2_net(&w1.mul(&w2), &keep, &f, &j).map_err(err)?;
        let rhs = g.mul(
            extension::lemma2_net(&w1, &keep, &f, &j).map_err(err)?,
            extension::lemma2_net(&w2, &keep, &f, &j).map_err(err)?,
        );
        ensure(lhs == rhs, || format!("case {case}: coherence fails"))?;
    }
    Ok(20)
}

fn family(exec: Execution) -> Check {
    let g = Arc::new(FiniteGroup::cyclic(3).expect("Z3"));
    let f = Homomorphism::new(g, TameOracle::fa(), LetterRule::periodic(vec![1]), vec![]).map_err(err)?;
    let a1: Word = "a1".parse().map_err(err)?;
    let words = vec![a1.clone(), Word::alpha(), a1.mul(&Word::alpha())];
    let eq = Equation {
        left: 0,
        right: 1,
        product: 2,
    };
    let r = extension::family_eval(&words, &[eq], &LengthAssignment::dyadic(), &f, 20, exec).map_err(err)?;
    ensure(r.all_hold(), || format!("family equation fails from m={}", r.m_star))?;
    Ok(21)
}

fn refinement(_: Execution) -> Check {
    let ex = Excision::new(&Word::alpha(), &LengthAssignment::dyadic(), &TameOracle::fa()).map_err(err)?;
    let mut prev = 0;
    for m in 1..=64 {
        let k = ex.h(m).map_err(err)?.finite_len().unwrap_or(0);
        ensure(k >= prev, || format!("kept prefix shrinks at m={m}"))?;
        prev = k;
    }
    Ok(64)
}

type Suite = (&'static str, fn(Execution) -> Check);

const SUITES: &[Suite] = &[
    ("reduction-confluence", confluence),
    ("group-laws", group_laws),
    ("realization-reflection", reflection),
    ("tameness", tameness),
    ("inverse-symmetry", inverse_symmetry),
    ("eq1-threshold", eq1),
    ("hom-multiplicative", hom_laws),
    ("agreement-on-H", agreement_on_h),
    ("extension-nonuniqueness", nonuniqueness),
    ("lemma2-coherence", lemma2),
    ("family-coherence", family),
    ("monotone-refinement", refinement),
];

/// Runs every suite; independent suites run in parallel under `exec`.
pub fn run_all(exec: Execution) -> Vec<SuiteResult> {
    let mut out = exec::map(exec, SUITES, |(name, suite)| finish(name, suite(exec)));
    out.extend(excision_lemmas(exec));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for r in run_all(Execution::Parallel) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
            assert!(r.cases > 0, "{} checked nothing", r.name);
        }
    }
}
