//! Validation and evaluation of the sort definition, and declaration checks.
//!
//! The sort definition must be stratified; its unique answer set is computed
//! bottom-up, stratum by stratum, with semi-naive iteration inside each
//! stratum. `nat` is never enumerated: it is only a membership test.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::diag::{Diagnostic, Error, Pos};
use crate::eval::{eval, eval_relation_atom, match_args, EvalError, Subst};
use crate::ground::GroundLiteral;
use crate::syntax::{Atom, Literal, Program, Rule, Term};

pub const NAT: &str = "nat";
pub const DEFAULT_ATOM_CAP: usize = 100_000;
/// Function-term nesting bound during sort evaluation.
pub const MAX_TERM_DEPTH: usize = 64;

/// The unique answer set of the sort definition, viewed as sorts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SortInterpretation {
    /// Unary predicates of the sort definition and their extensions.
    pub defined: BTreeMap<String, BTreeSet<Term>>,
    /// Every atom of the answer set, unary or not.
    pub atoms: BTreeSet<GroundLiteral>,
    /// Every term with at least one defined sort.
    pub ground_terms: BTreeSet<Term>,
}

impl SortInterpretation {
    pub fn is_sort(&self, name: &str) -> bool {
        name == NAT || self.defined.contains_key(name)
    }

    pub fn has_sort(&self, term: &Term, sort: &str) -> bool {
        if sort == NAT {
            return matches!(term, Term::Nat(_));
        }
        self.defined.get(sort).is_some_and(|m| m.contains(term))
    }

    pub fn members(&self, sort: &str) -> Option<&BTreeSet<Term>> {
        self.defined.get(sort)
    }

    pub fn contains(&self, lit: &GroundLiteral) -> bool {
        self.atoms.contains(lit)
    }

    /// Atoms of a given predicate and arity.
    pub fn atoms_of<'a>(&'a self, pred: &'a str, arity: usize) -> impl Iterator<Item = &'a GroundLiteral> + 'a {
        let lo = GroundLiteral::atom(pred, vec![]);
        self.atoms.range(lo..).take_while(move |l| l.pred == pred).filter(move |l| l.args.len() == arity)
    }
}

/// Declared argument sorts keyed by predicate symbol and arity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeclarationTable {
    pub entries: BTreeMap<(String, usize), Vec<String>>,
}

impl DeclarationTable {
    pub fn get(&self, pred: &str, arity: usize) -> Option<&[String]> {
        self.entries.get(&(pred.to_owned(), arity)).map(Vec::as_slice)
    }
}

/// The language a program is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Language {
    /// Ground terms defined by the sort definition. Natural numbers belong to
    /// the language as well but are not enumerated.
    pub terms: BTreeSet<Term>,
    pub predicates: Vec<(String, usize)>,
}

fn pred_atoms(rule: &Rule) -> impl Iterator<Item = &Literal> {
    rule.literals().filter(|l| !l.is_relation())
}

fn key(lit: &Literal) -> Option<(String, usize)> {
    lit.atom.pred_name().map(|(n, a)| (n.to_owned(), a))
}

fn start(rule: &Rule) -> Pos {
    rule.span.start
}

/// Assigns each predicate of the sort definition a stratum. Errors name a
/// rule taking part in a cycle through negation.
fn stratify(rules: &[Rule]) -> Result<BTreeMap<(String, usize), usize>, Diagnostic> {
    let mut strata: BTreeMap<(String, usize), usize> = BTreeMap::new();
    for r in rules {
        for l in pred_atoms(r) {
            strata.insert(key(l).unwrap(), 0);
        }
    }
    let bound = strata.len();
    loop {
        let mut changed = false;
        for r in rules {
            let head = key(&r.head[0]).unwrap();
            let mut need = strata[&head];
            for b in &r.body {
                if let Some(k) = key(&b.lit) {
                    need = need.max(strata[&k] + usize::from(b.naf));
                }
            }
            if need > strata[&head] {
                if need > bound {
                    return Err(Diagnostic::error(
                        start(r),
                        format!("sort definition is not stratified: `{}` depends negatively on itself", head.0),
                    ));
                }
                strata.insert(head, need);
                changed = true;
            }
        }
        if !changed {
            return Ok(strata);
        }
    }
}

fn bound_vars(rule: &Rule) -> Vec<String> {
    let mut out = Vec::new();
    for l in rule.pos_body() {
        if let Atom::Pred { args, .. } = &l.atom {
            for a in args {
                collect_matchable_vars(a, &mut out);
            }
        }
    }
    out
}

/// Variables a match against a ground term can bind (not those only inside
/// arithmetic).
fn collect_matchable_vars(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Var(v) if !out.contains(v) => out.push(v.clone()),
        Term::Func(_, args) => args.iter().for_each(|a| collect_matchable_vars(a, out)),
        _ => {}
    }
}

/// Checks the sort definition: heads free of relations, safety of negated
/// variables, stratified negation, every variable bound by a positive body
/// atom, and a non-empty Herbrand universe.
pub fn validate_sort_rules(rules: &[Rule]) -> Result<(), Vec<Diagnostic>> {
    let mut errors = Vec::new();
    for r in rules {
        if r.head.len() != 1 || r.head[0].negated || r.head[0].is_relation() {
            errors.push(Diagnostic::error(start(r), "sort definition rules need a single atom head without relations"));
            continue;
        }
        let mut positive = Vec::new();
        for l in r.pos_body() {
            l.atom.collect_vars(&mut positive);
        }
        let mut negative = Vec::new();
        for l in r.neg_body() {
            l.atom.collect_vars(&mut negative);
        }
        let unsafe_vars: Vec<_> = negative.iter().filter(|v| !positive.contains(v)).cloned().collect();
        if !unsafe_vars.is_empty() {
            errors.push(Diagnostic::error(
                start(r),
                format!(
                    "unsafe rule: variable(s) {} occur under `not` but in no positive body atom",
                    unsafe_vars.join(", ")
                ),
            ));
            continue;
        }
        let bound = bound_vars(r);
        let unbound: Vec<_> = r.vars().into_iter().filter(|v| !bound.contains(v)).collect();
        if !unbound.is_empty() {
            errors.push(Diagnostic::error(
                start(r),
                format!("variable(s) {} must occur in a positive body atom", unbound.join(", ")),
            ));
        }
    }
    if errors.is_empty() {
        if let Err(e) = stratify(rules) {
            errors.push(e);
        }
    }
    if !rules.is_empty() && !rules.iter().any(|r| r.pos_body().all(Literal::is_relation)) {
        errors.push(Diagnostic::error(
            start(&rules[0]),
            "the sort definition constructs no ground term: it needs a fact or a rule without positive body atoms",
        ));
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

/// Argument tuples per predicate and arity.
type Facts = BTreeMap<(String, usize), Vec<Vec<Term>>>;

struct Derivation {
    cap: usize,
    atoms: BTreeSet<GroundLiteral>,
    by_pred: Facts,
}

impl Derivation {
    fn insert(&mut self, lit: GroundLiteral) -> bool {
        if self.atoms.contains(&lit) {
            return false;
        }
        self.by_pred.entry((lit.pred.clone(), lit.args.len())).or_default().push(lit.args.clone());
        self.atoms.insert(lit);
        true
    }

    /// Enumerates substitutions matching the positive predicate atoms of
    /// `rule`; with `delta = Some((i, facts))` the i-th atom ranges over
    /// `facts` only.
    fn join(
        &self,
        atoms: &[(&str, &[Term])],
        delta: Option<(usize, &[Vec<Term>])>,
        idx: usize,
        s: &mut Subst,
        out: &mut Vec<Subst>,
    ) {
        if idx == atoms.len() {
            out.push(s.clone());
            return;
        }
        let (pred, pats) = atoms[idx];
        let empty = Vec::new();
        let candidates: &[Vec<Term>] = match delta {
            Some((i, facts)) if i == idx => facts,
            _ => self.by_pred.get(&(pred.to_owned(), pats.len())).unwrap_or(&empty),
        };
        for args in candidates {
            let mut ext = s.clone();
            if match_args(pats, args, &mut ext) {
                self.join(atoms, delta, idx + 1, &mut ext, out);
            }
        }
    }

    fn fire(&self, rule: &Rule, s: &Subst, new: &mut Vec<GroundLiteral>) -> Result<(), Error> {
        for b in &rule.body {
            match &b.lit.atom {
                Atom::Rel { .. } => {
                    if !matches!(eval_relation_atom(&b.lit.atom, s), Ok(true)) {
                        return Ok(());
                    }
                }
                Atom::Pred { name, args } => {
                    let Ok(args) = args.iter().map(|a| eval(a, s)).collect::<Result<Vec<_>, _>>() else {
                        if b.naf {
                            continue;
                        }
                        return Ok(());
                    };
                    let held = !b.lit.negated && self.atoms.contains(&GroundLiteral::atom(name, args));
                    if held == b.naf {
                        return Ok(());
                    }
                }
            }
        }
        let head = &rule.head[0];
        let Atom::Pred { name, args } = &head.atom else { unreachable!() };
        let mut values = Vec::with_capacity(args.len());
        for a in args {
            match eval(a, s) {
                Ok(v) => values.push(v),
                Err(EvalError::Negative(n)) => {
                    return Err(Error::Check(vec![Diagnostic::error(
                        head.span.start,
                        format!("head argument `{a}` evaluates to {n}, which is not a natural number"),
                    )]));
                }
                Err(e) => {
                    return Err(Error::Check(vec![Diagnostic::error(
                        head.span.start,
                        format!("cannot evaluate head argument `{a}`: {e:?}"),
                    )]));
                }
            }
        }
        if values.iter().any(|v| v.depth() > MAX_TERM_DEPTH) {
            return Err(Error::CapacityAt(Diagnostic::error(
                head.span.start,
                format!("derivation does not terminate: terms of `{name}` nest deeper than {MAX_TERM_DEPTH}"),
            )));
        }
        new.push(GroundLiteral::atom(name, values));
        Ok(())
    }

    fn run_stratum(&mut self, level: usize, rules: &[&Rule]) -> Result<(), Error> {
        let mut delta: Option<Facts> = None;
        loop {
            let mut new = Vec::new();
            for rule in rules {
                if rule.pos_body().any(|l| l.negated && !l.is_relation()) {
                    continue;
                }
                let atoms: Vec<(&str, &[Term])> = rule
                    .pos_body()
                    .filter_map(|l| match &l.atom {
                        Atom::Pred { name, args } => Some((name.as_str(), args.as_slice())),
                        Atom::Rel { .. } => None,
                    })
                    .collect();
                let mut substs = Vec::new();
                match &delta {
                    None => self.join(&atoms, None, 0, &mut Subst::new(), &mut substs),
                    Some(d) => {
                        for (i, (pred, pats)) in atoms.iter().enumerate() {
                            if let Some(facts) = d.get(&(pred.to_string(), pats.len())) {
                                self.join(&atoms, Some((i, facts)), 0, &mut Subst::new(), &mut substs);
                            }
                        }
                    }
                }
                for s in &substs {
                    self.fire(rule, s, &mut new)?;
                }
            }
            let mut next = Facts::new();
            for lit in new {
                if self.insert(lit.clone()) {
                    next.entry((lit.pred, lit.args.len())).or_default().push(lit.args);
                }
            }
            if self.atoms.len() > self.cap {
                let preds: BTreeSet<String> =
                    rules.iter().map(|r| r.head[0].atom.pred_name().unwrap().0.to_owned()).collect();
                return Err(Error::CapacityAt(Diagnostic::error(
                    rules[0].span.start,
                    format!(
                        "sort derivation exceeds {} atoms in stratum {level} ({}); it probably does not terminate",
                        self.cap,
                        preds.into_iter().collect::<Vec<_>>().join(", ")
                    ),
                )));
            }
            if next.is_empty() {
                return Ok(());
            }
            delta = Some(next);
        }
    }
}

/// Computes the unique answer set of a validated sort definition. Exceeding
/// `atom_cap` atoms or the term depth cap is a capacity error.
pub fn evaluate_sorts(rules: &[Rule], atom_cap: usize) -> Result<SortInterpretation, Error> {
    let strata = stratify(rules).map_err(|e| Error::Check(vec![e]))?;
    let mut by_level: BTreeMap<usize, Vec<&Rule>> = BTreeMap::new();
    for r in rules {
        by_level.entry(strata[&key(&r.head[0]).unwrap()]).or_default().push(r);
    }
    let mut d = Derivation { cap: atom_cap, atoms: BTreeSet::new(), by_pred: BTreeMap::new() };
    for (level, level_rules) in &by_level {
        d.run_stratum(*level, level_rules)?;
    }

    let mut interp = SortInterpretation::default();
    for (name, arity) in strata.keys() {
        if *arity == 1 {
            interp.defined.insert(name.clone(), BTreeSet::new());
        }
    }
    for lit in &d.atoms {
        if lit.args.len() == 1 {
            interp.defined.get_mut(&lit.pred).unwrap().insert(lit.args[0].clone());
            interp.ground_terms.insert(lit.args[0].clone());
        }
    }
    interp.atoms = d.atoms;

    let mut errors = Vec::new();
    let mut reported = HashSet::new();
    for lit in &interp.atoms {
        for t in &lit.args {
            if t.is_symbolic_ground() && !interp.ground_terms.contains(t) && reported.insert(t.clone()) {
                let at = rules
                    .iter()
                    .find(|r| r.head[0].atom.pred_name().unwrap().0 == lit.pred)
                    .map(start)
                    .unwrap_or_default();
                errors.push(Diagnostic::error(at, format!("term `{t}` (in `{lit}`) has no defined sort")));
            }
        }
    }
    if errors.is_empty() {
        Ok(interp)
    } else {
        Err(Error::Check(errors))
    }
}

/// Checks declarations against the sort interpretation and the rules of the
/// program against the declarations.
pub fn validate_declarations(
    program: &Program,
    sorts: &SortInterpretation,
) -> Result<DeclarationTable, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    let mut table = DeclarationTable::default();
    let sort_preds = program.sort_predicates();
    let sort_names = program.sort_predicate_names();

    for d in &program.declarations {
        let k = (d.pred.clone(), d.sorts.len());
        if sort_names.contains(&d.pred) {
            errors.push(Diagnostic::error(
                d.span.start,
                format!("`{}` is a predicate of the sort definition and cannot be declared", d.pred),
            ));
        }
        for s in &d.sorts {
            if !sorts.is_sort(s) {
                errors.push(Diagnostic::error(
                    d.span.start,
                    format!("unknown sort `{s}` in declaration of `{}`", d.pred),
                ));
            }
        }
        if table.entries.contains_key(&k) {
            errors.push(Diagnostic::error(d.span.start, format!("duplicate declaration of `{}/{}`", k.0, k.1)));
            continue;
        }
        table.entries.insert(k, d.sorts.clone());
    }

    for rule in &program.rules {
        for (i, lit) in rule.literals().enumerate() {
            let in_head = i < rule.head.len();
            match &lit.atom {
                Atom::Rel { lhs, rhs, .. } => {
                    for t in [lhs, rhs] {
                        check_has_sort(t, sorts, lit.span.start, &mut errors);
                    }
                }
                Atom::Pred { name, args } => {
                    if sort_names.contains(name) {
                        if in_head {
                            errors.push(Diagnostic::error(
                                lit.span.start,
                                format!("sort-definition predicate `{name}` may not occur in a rule head"),
                            ));
                        } else if !sort_preds.iter().any(|(n, a)| n == name && *a == args.len()) {
                            errors.push(Diagnostic::error(
                                lit.span.start,
                                format!(
                                    "`{name}` is used with {} argument(s), unlike in the sort definition",
                                    args.len()
                                ),
                            ));
                        }
                        for t in args {
                            check_has_sort(t, sorts, lit.span.start, &mut errors);
                        }
                        continue;
                    }
                    let Some(decl) = table.get(name, args.len()) else {
                        errors.push(Diagnostic::error(
                            lit.span.start,
                            format!("undeclared predicate `{name}/{}`", args.len()),
                        ));
                        continue;
                    };
                    for (j, (t, s)) in args.iter().zip(decl).enumerate() {
                        if let Some(msg) = argument_error(t, s, sorts) {
                            errors.push(Diagnostic::error(
                                lit.span.start,
                                format!("argument {} of `{name}`: {msg}", j + 1),
                            ));
                        }
                    }
                }
            }
        }
    }

    if errors.is_empty() {
        Ok(table)
    } else {
        Err(errors)
    }
}

fn check_has_sort(t: &Term, sorts: &SortInterpretation, at: Pos, errors: &mut Vec<Diagnostic>) {
    if t.is_symbolic_ground() && !sorts.ground_terms.contains(t) {
        errors.push(Diagnostic::error(at, format!("term `{t}` has no defined sort")));
    }
}

/// Why `t` can never be of sort `sort`, if that is statically evident.
fn argument_error(t: &Term, sort: &str, sorts: &SortInterpretation) -> Option<String> {
    if !sorts.is_sort(sort) {
        return None;
    }
    if t.is_ground() {
        return (!sorts.has_sort(t, sort)).then(|| format!("`{t}` is not of sort `{sort}`"));
    }
    match t {
        Term::Func(..) if sort == NAT => Some(format!("`{t}` can never be a natural number")),
        Term::Func(..) if !t.vars().is_empty() && !contains_arith(t) => {
            let fits = sorts
                .members(sort)?
                .iter()
                .any(|m| match_args(std::slice::from_ref(t), std::slice::from_ref(m), &mut Subst::new()));
            (!fits).then(|| format!("`{t}` matches no term of sort `{sort}`"))
        }
        _ => None,
    }
}

fn contains_arith(t: &Term) -> bool {
    match t {
        Term::Arith(..) => true,
        Term::Func(_, args) => args.iter().any(contains_arith),
        _ => false,
    }
}

/// Terms defined by the sort definition and the program's predicate symbols.
pub fn extract_language(program: &Program, sorts: &SortInterpretation) -> Language {
    let mut predicates = program.sort_predicates();
    for d in &program.declarations {
        let k = (d.pred.clone(), d.sorts.len());
        if !predicates.contains(&k) {
            predicates.push(k);
        }
    }
    Language { terms: sorts.ground_terms.clone(), predicates }
}
