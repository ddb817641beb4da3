//! Toolchain for sorted Answer Set Prolog with consistency-restoring rules.
//!
//! Pipeline: [`syntax`] parses source text, [`sortcheck`] evaluates the sort
//! definition and validates declarations, [`grounder`] produces the
//! sort-respecting grounding, [`crsolver`] computes answer sets via minimal
//! abductive supports on top of the [`aspcore`] engine, and [`translate`]
//! compiles a program to a weak-constraint counterpart.

pub mod aspcore;
pub mod crsolver;
pub mod diag;
pub mod eval;
pub mod ground;
pub mod grounder;
pub mod sortcheck;
pub mod syntax;
pub mod translate;

pub use diag::{Diagnostic, Error, Pos, Result, Span};
pub use ground::{AnswerSet, GroundLiteral, GroundProgram, GroundRule, WeakConstraint};
pub use syntax::{parse_source, Program};

use sortcheck::{DeclarationTable, SortInterpretation};
use translate::FreshNames;

/// Resource caps shared by the pipeline stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Atoms the sort definition may derive.
    pub atom_cap: usize,
    /// Search nodes the answer-set engine may explore per call.
    pub candidate_cap: u64,
    /// Substitutions the grounder may try per rule.
    pub substitution_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self { atom_cap: sortcheck::DEFAULT_ATOM_CAP, candidate_cap: 1 << 22, substitution_cap: 1 << 24 }
    }
}

/// A program that passed every static check, with its sort interpretation.
#[derive(Clone, Debug)]
pub struct CheckedProgram {
    pub program: Program,
    pub sorts: SortInterpretation,
    pub decls: DeclarationTable,
    pub fresh: FreshNames,
}

/// Runs the sort checker and the grounder's safety check.
pub fn check_program(program: Program, limits: &Limits) -> Result<CheckedProgram> {
    sortcheck::validate_sort_rules(&program.sort_rules).map_err(Error::Check)?;
    let sorts = sortcheck::evaluate_sorts(&program.sort_rules, limits.atom_cap)?;
    let decls = sortcheck::validate_declarations(&program, &sorts).map_err(Error::Check)?;
    grounder::check_safety(&program, &sorts, &decls).map_err(Error::Check)?;
    let fresh = FreshNames::for_program(&program);
    Ok(CheckedProgram { program, sorts, decls, fresh })
}

/// Parses and checks source text.
pub fn load(src: &str, limits: &Limits) -> Result<CheckedProgram> {
    check_program(parse_source(src)?, limits)
}
