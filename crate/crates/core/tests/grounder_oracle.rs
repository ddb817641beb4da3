use std::collections::BTreeSet;

use proptest::prelude::*;
use sparc_core::grounder::ground_program;
use sparc_core::{load, GroundProgram, Limits};

const CONSTS: [&str; 3] = ["a", "b", "c"];
const VARS: [&str; 2] = ["X", "Y"];

/// Predicates: p(s1), q(s1,s2), r(s2), and the sort predicate s1.
#[derive(Clone, Debug)]
struct Lit {
    pred: usize,
    args: [String; 2],
    negated: bool,
    naf: bool,
}

#[derive(Clone, Debug)]
struct TestRule {
    cr: bool,
    head: Vec<Lit>,
    body: Vec<Lit>,
    /// `X != Y` when true, `X = Y` when false.
    relation: Option<bool>,
}

#[derive(Clone, Debug)]
struct Sorts {
    s1: BTreeSet<usize>,
    s2: BTreeSet<usize>,
}

fn arity(pred: usize) -> usize {
    if pred == 1 {
        2
    } else {
        1
    }
}

fn pred_name(pred: usize) -> &'static str {
    ["p", "q", "r", "s1"][pred]
}

impl Lit {
    fn text(&self, args: &[String]) -> String {
        let sign = if self.negated { "-" } else { "" };
        format!("{sign}{}({})", pred_name(self.pred), args[..arity(self.pred)].join(","))
    }

    fn vars(&self) -> impl Iterator<Item = &String> {
        self.args[..arity(self.pred)].iter().filter(|a| VARS.contains(&a.as_str()))
    }
}

fn arg() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => (0..2usize).prop_map(|i| VARS[i].to_owned()),
        1 => (0..3usize).prop_map(|i| CONSTS[i].to_owned()),
    ]
}

fn lit(preds: std::ops::Range<usize>) -> impl Strategy<Value = Lit> {
    (preds, arg(), arg(), prop::bool::weighted(0.2), prop::bool::weighted(0.25))
        .prop_map(|(pred, a, b, negated, naf)| Lit { pred, args: [a, b], negated: negated && pred != 3, naf })
}

fn test_rule() -> impl Strategy<Value = TestRule> {
    (
        prop::bool::weighted(0.2),
        prop::collection::vec(lit(0..3), 0..3),
        prop::collection::vec(lit(0..4), 0..4),
        prop::option::weighted(0.3, any::<bool>()),
    )
        .prop_map(|(cr, mut head, mut body, relation)| {
            for l in &mut head {
                l.naf = false;
            }
            if cr {
                head.truncate(1);
            }
            let cr = cr && !head.is_empty();
            if head.is_empty() && body.is_empty() {
                body.push(Lit { pred: 0, args: ["X".into(), "X".into()], negated: false, naf: false });
            }
            let mut rule = TestRule { cr, head, body, relation };
            // every variable needs a sorted position
            let bound: BTreeSet<String> = rule
                .head
                .iter()
                .chain(&rule.body)
                .filter(|l| l.pred != 3 || !l.naf)
                .flat_map(Lit::vars)
                .cloned()
                .collect();
            let mut used: BTreeSet<String> = rule.head.iter().chain(&rule.body).flat_map(Lit::vars).cloned().collect();
            if rule.relation.is_some() {
                used.extend(VARS.iter().map(|v| v.to_string()));
            }
            for v in used.difference(&bound) {
                rule.body.push(Lit { pred: 0, args: [v.clone(), v.clone()], negated: false, naf: false });
            }
            rule
        })
}

fn sorts() -> impl Strategy<Value = Sorts> {
    (prop::collection::btree_set(0..3usize, 1..=3), prop::collection::btree_set(0..3usize, 1..=3))
        .prop_map(|(s1, s2)| Sorts { s1, s2 })
}

fn rule_text(rule: &TestRule, args_of: impl Fn(&Lit) -> Vec<String>) -> (String, Vec<String>) {
    let head: Vec<String> = rule.head.iter().map(|l| l.text(&args_of(l))).collect();
    let mut body: Vec<String> = rule
        .body
        .iter()
        .map(|l| {
            let t = l.text(&args_of(l));
            if l.naf {
                format!("not {t}")
            } else {
                t
            }
        })
        .collect();
    if let Some(ne) = rule.relation {
        body.push(if ne { "X != Y".into() } else { "X = Y".into() });
    }
    (head.join(" v "), body)
}

fn source(sorts: &Sorts, rule: &TestRule, extra_sort: bool) -> String {
    let mut s = String::from("sorts definition\n");
    for &c in &sorts.s1 {
        s += &format!("s1({}).\n", CONSTS[c]);
    }
    for &c in &sorts.s2 {
        s += &format!("s2({}).\n", CONSTS[c]);
    }
    if extra_sort {
        s += "s9(z).\n";
    }
    s += "predicates declaration\np(s1)\nq(s1,s2)\nr(s2)\nprogram rules\n";
    let (head, body) = rule_text(rule, |l| l.args.to_vec());
    let arrow = if rule.cr { ":+" } else { ":-" };
    s += &match (body.is_empty(), head.is_empty()) {
        (true, _) if rule.cr => format!("{head} :+ .\n"),
        (true, _) => format!("{head}.\n"),
        (false, true) => format!("{arrow} {}.\n", body.join(", ")),
        (false, false) => format!("{head} {arrow} {}.\n", body.join(", ")),
    };
    s
}

/// Every instance over all of {a,b,c}, filtered by sorts, in colex order of
/// `var_order`. Each entry is the printed rule and, for cr-rules, its name.
fn brute_force(sorts: &Sorts, rule: &TestRule, var_order: &[String]) -> Vec<(String, Option<String>)> {
    let in_sort =
        |sort: &BTreeSet<usize>, t: &str| CONSTS.iter().position(|c| *c == t).is_some_and(|i| sort.contains(&i));
    let mut out: Vec<(String, Option<String>)> = Vec::new();
    let mut seen = BTreeSet::new();
    let n = var_order.len();
    for code in 0..3usize.pow(n as u32) {
        let values: Vec<&str> = (0..n).map(|k| CONSTS[code / 3usize.pow(k as u32) % 3]).collect();
        let value = |a: &String| match var_order.iter().position(|v| v == a) {
            Some(k) => values[k].to_owned(),
            None => a.clone(),
        };
        let args_of = |l: &Lit| l.args.iter().map(value).collect::<Vec<_>>();
        let respects = |l: &Lit| {
            let a = args_of(l);
            match l.pred {
                0 => in_sort(&sorts.s1, &a[0]),
                1 => in_sort(&sorts.s1, &a[0]) && in_sort(&sorts.s2, &a[1]),
                2 => in_sort(&sorts.s2, &a[0]),
                _ => true,
            }
        };
        if !rule.head.iter().chain(&rule.body).all(respects) {
            continue;
        }
        if let Some(ne) = rule.relation {
            if (value(&"X".into()) != value(&"Y".into())) != ne {
                continue;
            }
        }
        if !rule.body.iter().filter(|l| l.pred == 3).all(|l| in_sort(&sorts.s1, &args_of(l)[0]) != l.naf) {
            continue;
        }
        let (pos, neg): (Vec<Lit>, Vec<Lit>) = rule.body.iter().filter(|l| l.pred != 3).cloned().partition(|l| !l.naf);
        let kept = TestRule { body: pos.into_iter().chain(neg).collect(), relation: None, ..rule.clone() };
        let (head, body) = rule_text(&kept, |l| args_of(l));
        let arrow = if rule.cr { ":+" } else { ":-" };
        let printed = match (body.is_empty(), head.is_empty()) {
            (true, _) if rule.cr => format!("{head} :+ ."),
            (true, _) => format!("{head}."),
            (false, true) => format!("{arrow} {}.", body.join(", ")),
            (false, false) => format!("{head} {arrow} {}.", body.join(", ")),
        };
        if seen.insert(printed.clone()) {
            let name = rule.cr.then(|| {
                let mut parts = vec!["1".to_owned()];
                parts.extend(values.iter().map(|v| v.to_string()));
                format!("rn({})", parts.join(","))
            });
            out.push((printed, name));
        }
    }
    out
}

/// Whether some constant sits where no instance could type-check, which the
/// declaration check rejects outright.
fn statically_mistyped(sorts: &Sorts, rule: &TestRule) -> bool {
    let of = |t: &str| CONSTS.iter().position(|c| *c == t);
    let bad = |sort: &BTreeSet<usize>, t: &String| of(t).is_some_and(|i| !sort.contains(&i));
    let all: BTreeSet<usize> = sorts.s1.union(&sorts.s2).copied().collect();
    rule.head.iter().chain(&rule.body).any(|l| match l.pred {
        0 => bad(&sorts.s1, &l.args[0]),
        1 => bad(&sorts.s1, &l.args[0]) || bad(&sorts.s2, &l.args[1]),
        2 => bad(&sorts.s2, &l.args[0]),
        _ => bad(&all, &l.args[0]),
    })
}

fn printed(gp: &GroundProgram) -> Vec<(String, Option<String>)> {
    gp.rules_in_order().iter().map(|r| (r.to_string(), r.name.as_ref().map(ToString::to_string))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn grounding_matches_brute_force(sorts in sorts(), rule in test_rule()) {
        let limits = Limits::default();
        let src = source(&sorts, &rule, false);
        let loaded = load(&src, &limits);
        prop_assert_eq!(loaded.is_err(), statically_mistyped(&sorts, &rule), "{}", src);
        let Ok(checked) = loaded else { return Ok(()) };
        let var_order = checked.program.rules[0].vars();
        let gp = ground_program(&checked, &limits).unwrap();
        let got = printed(&gp);
        prop_assert_eq!(&got, &brute_force(&sorts, &rule, &var_order), "{}", src);

        for f in &gp.sort_facts {
            prop_assert!(checked.sorts.atoms.contains(f));
        }
        prop_assert_eq!(&ground_program(&checked, &limits).unwrap(), &gp);

        let widened = load(&source(&sorts, &rule, true), &limits).unwrap();
        prop_assert_eq!(printed(&ground_program(&widened, &limits).unwrap()), got);
    }
}
