use proptest::prelude::*;
use sparc_core::aspcore::{self, oracle, DEFAULT_NODE_CAP};
use sparc_core::ground::{AnswerSet, GroundLiteral, GroundRule, WeakConstraint};

fn literal() -> impl Strategy<Value = GroundLiteral> {
    (0..5u8, prop::bool::weighted(0.25)).prop_map(|(i, neg)| GroundLiteral::new(neg, &format!("a{i}"), vec![]))
}

fn rule() -> impl Strategy<Value = GroundRule> {
    (
        prop::collection::vec(literal(), 0..3),
        prop::collection::vec(literal(), 0..3),
        prop::collection::vec(literal(), 0..3),
    )
        .prop_map(|(head, pos, neg)| GroundRule::regular(head, pos, neg))
}

fn program() -> impl Strategy<Value = Vec<GroundRule>> {
    prop::collection::vec(rule(), 0..9)
}

fn weak() -> impl Strategy<Value = WeakConstraint> {
    (prop::collection::vec(literal(), 0..2), prop::collection::vec(literal(), 0..2))
        .prop_map(|(pos, neg)| WeakConstraint { pos, neg })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn engine_matches_brute_force(rules in program()) {
        let expected = oracle::answer_sets(&rules).unwrap();
        let got = aspcore::answer_sets(&rules, 0, DEFAULT_NODE_CAP).unwrap();
        prop_assert_eq!(&got, &expected);
        for a in &got {
            prop_assert!(aspcore::is_answer_set(&rules, a));
        }
        // no answer set contains another
        for a in &got {
            for b in &got {
                prop_assert!(a == b || !a.is_subset(b));
            }
        }
        prop_assert_eq!(aspcore::is_consistent_program(&rules, DEFAULT_NODE_CAP).unwrap(), !expected.is_empty());
    }

    #[test]
    fn horn_programs_have_their_least_model(rules in program()) {
        let horn: Vec<GroundRule> = rules
            .into_iter()
            .filter(|r| r.head.len() == 1)
            .map(|r| GroundRule { neg: vec![], ..r })
            .collect();
        let least = aspcore::least_model(&horn);
        let got = aspcore::answer_sets(&horn, 0, DEFAULT_NODE_CAP).unwrap();
        if sparc_core::ground::is_consistent(&least) {
            prop_assert_eq!(got, vec![least]);
        } else {
            prop_assert!(got.is_empty());
        }
    }

    #[test]
    fn weak_minimization_is_exact(rules in program(), weaks in prop::collection::vec(weak(), 0..4)) {
        let all = aspcore::answer_sets(&rules, 0, DEFAULT_NODE_CAP).unwrap();
        let best = aspcore::answer_sets_weak(&rules, &weaks, 0, DEFAULT_NODE_CAP).unwrap();
        prop_assert_eq!(&best, &oracle::answer_sets_weak(&rules, &weaks).unwrap());
        let min = all.iter().map(|a| aspcore::violations(&weaks, a)).min();
        let kept: Vec<AnswerSet> = all.iter().filter(|a| Some(aspcore::violations(&weaks, a)) == min).cloned().collect();
        prop_assert_eq!(best, kept);
    }
}

#[test]
fn brute_force_refuses_large_programs() {
    let rules: Vec<GroundRule> =
        (0..21).map(|i| GroundRule::fact(GroundLiteral::atom(&format!("x{i}"), vec![]))).collect();
    assert!(oracle::answer_sets(&rules).is_none());
    assert_eq!(aspcore::answer_sets(&rules, 0, DEFAULT_NODE_CAP).unwrap().len(), 1);
}
