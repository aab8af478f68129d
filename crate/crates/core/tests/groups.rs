mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use bigfree::group::FiniteGroup;
use bigfree::hom::{Homomorphism, LetterRule};
use bigfree::tame::TameOracle;
use bigfree::{Error, Segment, Sign, Tail, Word};
use common::*;
use proptest::prelude::*;

fn s4() -> FiniteGroup {
    FiniteGroup::symmetric(4).unwrap()
}

#[test]
fn symmetric_orders() {
    let orders: Vec<usize> = (1..=5).map(|n| FiniteGroup::symmetric(n).unwrap().order()).collect();
    assert_eq!(orders, [1, 2, 6, 24, 120]);
    assert!(FiniteGroup::symmetric(9).is_err());
}

#[test]
fn composition_applies_the_right_factor_first() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let x = g.mul(g.parse("(12)").unwrap(), g.parse("(23)").unwrap());
    assert_eq!(g.name(x), "(123)");
}

#[test]
fn cayley_tables_are_validated() {
    let bad =
        FiniteGroup::parse_json(r#"{"cayley": {"elements": ["e", "x", "y"], "table": [[0,1,2],[1,2,0],[2,0,0]]}}"#);
    assert!(bad.is_err());
    let z3 = FiniteGroup::parse_json(
        r#"{"cayley": {"elements": ["e", "x", "y"], "table": [["e","x","y"],["x","y","e"],["y","e","x"]]}}"#,
    )
    .unwrap();
    assert_eq!(z3.inverse(1), 2);
}

#[test]
fn tail_generators_need_images() {
    let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
    let r = Homomorphism::new(g.clone(), TameOracle::fa_alpha(), LetterRule::periodic(vec![1]), vec![]);
    assert!(matches!(r, Err(Error::MissingTailImage(_))));
    let alpha = Segment::Forward(Tail::new(1, 1, Sign::Pos));
    assert!(Homomorphism::new(
        g,
        TameOracle::fa_alpha(),
        LetterRule::periodic(vec![1]),
        vec![(alpha, 3)]
    )
    .is_ok());
}

#[test]
fn outside_the_domain_is_an_error() {
    let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
    let f = Homomorphism::new(g, TameOracle::fa(), LetterRule::periodic(vec![1]), vec![]).unwrap();
    assert!(matches!(f.eval(&Word::alpha()), Err(Error::NotInSubgroup(_))));
}

fn s3_hom() -> Homomorphism {
    let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
    let exceptions: BTreeMap<u64, usize> = [(1, 1), (2, 3), (4, 5)].into_iter().collect();
    let alpha = Segment::Forward(Tail::new(1, 1, Sign::Pos));
    Homomorphism::new(
        g,
        TameOracle::fa_alpha(),
        LetterRule {
            exceptions,
            images: vec![2, 4],
        },
        vec![(alpha, 4)],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn group_laws(x in 0usize..24, y in 0usize..24, z in 0usize..24) {
        let g = s4();
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.identity()), x);
        prop_assert_eq!(g.mul(g.inverse(x), x), g.identity());
    }

    #[test]
    fn names_round_trip(x in 0usize..24) {
        let g = s4();
        prop_assert_eq!(g.parse(&g.name(x)).unwrap(), x);
    }

    #[test]
    fn hom_is_multiplicative(u in alpha_word(), v in alpha_word()) {
        let f = s3_hom();
        let g = f.group();
        prop_assert_eq!(f.eval(&u.mul(&v)).unwrap(), g.mul(f.eval(&u).unwrap(), f.eval(&v).unwrap()));
        prop_assert_eq!(f.eval(&u.invert()).unwrap(), g.inverse(f.eval(&u).unwrap()));
    }

    #[test]
    fn hom_on_letters_matches_the_rule(w in finite_word(10, 9)) {
        let f = s3_hom();
        let g = f.group();
        let expected = g.product(w.finite_letters().unwrap().into_iter().map(|l| {
            let x = f.rule().image(g, l.index);
            if l.sign == Sign::Pos { x } else { g.inverse(x) }
        }));
        prop_assert_eq!(f.eval(&w).unwrap(), expected);
    }
}
