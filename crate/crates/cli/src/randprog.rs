//! Seeded random programs for cross-checking the two semantics.
//!
//! One sort `s = {a, b}`, unary predicates `p` and `q` over it and 0-ary
//! predicates `r` and `w`, so at most 6 ground atoms. Rules mix
//! disjunction, constraints, both negations and consistency-restoring rules.

use rand::Rng;

const UNARY: [&str; 2] = ["p", "q"];
const NULLARY: [&str; 2] = ["r", "w"];

fn atom<R: Rng>(rng: &mut R, var: bool) -> String {
    let sign = if rng.gen_bool(0.3) { "-" } else { "" };
    if rng.gen_bool(0.6) {
        let arg = if var {
            "X"
        } else if rng.gen_bool(0.5) {
            "a"
        } else {
            "b"
        };
        format!("{sign}{}({arg})", UNARY[rng.gen_range(0..2)])
    } else {
        format!("{sign}{}", NULLARY[rng.gen_range(0..2)])
    }
}

fn body<R: Rng>(rng: &mut R, var: bool) -> Vec<String> {
    (0..rng.gen_range(0..=2))
        .map(|_| {
            let a = atom(rng, var);
            if rng.gen_bool(0.45) {
                format!("not {a}")
            } else {
                a
            }
        })
        .collect()
}

/// A program with at most `max_rules` rules of which at most `max_cr` are
/// consistency-restoring.
pub fn random_program<R: Rng>(rng: &mut R, max_rules: usize, max_cr: usize) -> String {
    let mut rules = Vec::new();
    let n = rng.gen_range(1..=max_rules);
    let mut cr = 0;
    for _ in 0..n {
        let var = rng.gen_bool(0.5);
        let body = body(rng, var);
        let body_text = body.join(", ");
        let roll = rng.gen_range(0..10);
        let rule = if roll < 3 && cr < max_cr {
            cr += 1;
            format!("{} :+ {body_text}.", atom(rng, var))
        } else if roll < 4 && !body.is_empty() {
            format!(":- {body_text}.")
        } else {
            let mut head = vec![atom(rng, var)];
            if rng.gen_bool(0.2) {
                head.push(atom(rng, var));
            }
            let head = head.join(" v ");
            if body.is_empty() {
                format!("{head}.")
            } else {
                format!("{head} :- {body_text}.")
            }
        };
        rules.push(rule);
    }
    format!(
        "sorts definition\ns(a).\ns(b).\npredicates declaration\np(s)\nq(s)\nr()\nw()\nprogram rules\n{}\n",
        rules.join("\n")
    )
}
