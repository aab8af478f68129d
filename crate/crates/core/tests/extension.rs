mod common;

use std::sync::Arc;

use bigfree::excision;
use bigfree::exec::Execution;
use bigfree::extension::{
    self, detect_eventual_period, select_limit, Analysis, ExplicitSequence, FnSequence, Strategy,
};
use bigfree::group::FiniteGroup;
use bigfree::hom::{Homomorphism, LetterRule};
use bigfree::rational;
use bigfree::realization::LengthAssignment;
use bigfree::tame::TameOracle;
use bigfree::{AlphabetSet, Segment, Sign, Tail, Word};
use common::*;
use proptest::prelude::*;

const EXEC: Execution = Execution::Sequential;

fn z6_alpha(alpha_image: usize) -> Homomorphism {
    let g = Arc::new(FiniteGroup::cyclic(6).unwrap());
    let alpha = Segment::Forward(Tail::new(1, 1, Sign::Pos));
    Homomorphism::new(
        g,
        TameOracle::fa_alpha(),
        LetterRule::periodic(vec![1, 4]),
        vec![(alpha, alpha_image)],
    )
    .unwrap()
}

fn z3_letters() -> Homomorphism {
    let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
    Homomorphism::new(g, TameOracle::fa(), LetterRule::periodic(vec![1]), vec![]).unwrap()
}

fn strategies() -> Vec<Strategy> {
    ["require", "residue:0", "residue:1", "min-accum", "family:a1;T(1)"]
        .iter()
        .map(|s| Strategy::parse(s).unwrap())
        .collect()
}

fn iotas() -> Vec<LengthAssignment> {
    let q = rational::ratio;
    vec![
        LengthAssignment::dyadic(),
        LengthAssignment::geometric(q(2, 3), q(1, 3)).unwrap(),
        LengthAssignment::geometric(q(3, 5), q(2, 5)).unwrap(),
    ]
}

#[test]
fn strategies_parse_and_print() {
    for s in ["require", "residue:3", "min-accum", "family:a1;T(1)"] {
        assert_eq!(Strategy::parse(s).unwrap().to_string(), s);
    }
    assert_eq!(Strategy::parse("residue:odd").unwrap(), Strategy::ResidueSelection(1));
    assert!(Strategy::parse("nearest").is_err());
}

#[test]
fn explicit_period_is_minimised() {
    let seq = ExplicitSequence {
        prefix: vec![2, 0, 1],
        cycle: vec![0, 1, 0, 1],
    };
    match detect_eventual_period(&seq, 64, EXEC).unwrap() {
        Analysis::Periodic { from, period, values } => {
            assert_eq!((from, period), (2, 2));
            assert_eq!(values, [0, 1]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn uncertified_sequences_report_accumulation() {
    let seq = FnSequence(|m: u64| [1, 1, 2, 2, 2, 2, 0][(m as usize - 1).min(6)]);
    let a = detect_eventual_period(&seq, 7, EXEC).unwrap();
    assert_eq!(
        a,
        Analysis::Unknown {
            accumulation: vec![0],
            window: (1, 7)
        }
    );
    assert_eq!(select_limit(&a, &Strategy::MinAccumulation).unwrap(), 0);
    assert!(select_limit(&a, &Strategy::RequireConvergence).is_err());
}

#[test]
fn alpha_outside_h_is_a_representative_choice() {
    let f = z3_letters();
    let iota = LengthAssignment::dyadic();
    let require = extension::extend_eval(&Word::alpha(), &iota, &f, &Strategy::RequireConvergence, 64, EXEC);
    assert!(require.is_err());
    let family = Strategy::parse("family:a1;a1 T(1)").unwrap();
    let e = extension::extend_eval(&Word::alpha(), &iota, &f, &family, 64, EXEC).unwrap();
    assert!(e.evaluated_at.is_some());
}

#[test]
fn family_equation_holds() {
    let f = z3_letters();
    let a1: Word = "a1".parse().unwrap();
    let words = vec![a1.clone(), Word::alpha(), a1.mul(&Word::alpha())];
    let eq = extension::Equation {
        left: 0,
        right: 1,
        product: 2,
    };
    let r = extension::family_eval(&words, &[eq], &LengthAssignment::dyadic(), &f, 20, EXEC).unwrap();
    assert!(r.all_hold());
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn agrees_on_h_under_every_strategy(w in alpha_word()) {
        let f = z6_alpha(5);
        let direct = f.eval(&w).unwrap();
        for s in strategies() {
            for iota in iotas() {
                let e = extension::extend_eval(&w, &iota, &f, &s, 32, EXEC).unwrap();
                prop_assert_eq!(e.value, direct, "{} under {}", w, s);
            }
        }
    }

    #[test]
    fn g_sequences_multiply_past_threshold(u in word(), v in word()) {
        let f = z3_letters();
        let iota = LengthAssignment::dyadic();
        let t = excision::threshold(&u, &v, &iota, f.oracle(), 0, EXEC).unwrap().threshold;
        let g = f.group();
        let hi = t + 20;
        let gu = extension::g_sequence(&u, &iota, &f, t, hi, EXEC).unwrap();
        let gv = extension::g_sequence(&v, &iota, &f, t, hi, EXEC).unwrap();
        let guv = extension::g_sequence(&u.mul(&v), &iota, &f, t, hi, EXEC).unwrap();
        for k in 0..gu.len() {
            prop_assert_eq!(guv[k], g.mul(gu[k], gv[k]));
        }
    }

    #[test]
    fn g_sequences_invert(w in word()) {
        let f = z3_letters();
        let iota = LengthAssignment::dyadic();
        let g = f.group();
        let a = extension::g_sequence(&w, &iota, &f, 1, 24, EXEC).unwrap();
        let b = extension::g_sequence(&w.invert(), &iota, &f, 1, 24, EXEC).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(*y, g.inverse(*x));
        }
    }

    #[test]
    fn constant_extensions_do_not_depend_on_lengths(w in word()) {
        let f = z3_letters();
        let mut seen = Vec::new();
        for iota in iotas() {
            let e = extension::extend_eval(&w, &iota, &f, &Strategy::MinAccumulation, 32, EXEC).unwrap();
            if matches!(e.analysis, Analysis::Constant { .. }) {
                seen.push(e.value);
            }
        }
        if seen.len() == iotas().len() {
            prop_assert!(seen.windows(2).all(|p| p[0] == p[1]));
        }
    }

    #[test]
    fn lemma2_net_is_f_on_words_over_keep(w in finite_word(10, 6)) {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let f = Homomorphism::new(g, TameOracle::fa(), LetterRule::periodic(vec![1, 3, 5]), vec![]).unwrap();
        let keep = AlphabetSet::finite([1, 2, 4]);
        let w = w.retract(&keep);
        let mut j = w.split_string(&keep);
        j.push("a1 a4".parse().unwrap());
        prop_assert_eq!(extension::lemma2_net(&w, &keep, &f, &j).unwrap(), f.eval(&w).unwrap());
    }

    #[test]
    fn residues_pick_the_cycle(prefix in prop::collection::vec(0usize..4, 0..5), cycle in prop::collection::vec(0usize..4, 1..5), r in 0u64..4) {
        let seq = ExplicitSequence { prefix: prefix.clone(), cycle: cycle.clone() };
        let a = detect_eventual_period(&seq, 64, EXEC).unwrap();
        match &a {
            Analysis::Periodic { from, period, .. } => {
                let r = r % period;
                let got = select_limit(&a, &Strategy::ResidueSelection(r)).unwrap();
                let m = (*from..).find(|m| m % period == r).unwrap();
                prop_assert_eq!(got, bigfree::extension::SequenceSource::value(&seq, m).unwrap());
            }
            Analysis::Constant { value, .. } => {
                prop_assert!(cycle.iter().all(|x| x == value));
            }
            Analysis::Unknown { .. } => prop_assert!(false, "certified sequence analysed as unknown"),
        }
    }
}
