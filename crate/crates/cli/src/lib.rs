//! The `sparc` command-line front end.

pub mod bench;
pub mod randprog;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sparc_core::ground::{format_literal_set, AnswerSet};
use sparc_core::{crsolver, grounder, translate, CheckedProgram, Error, Limits};

/// Exit statuses.
pub const EXIT_FOUND: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "sparc", version, about = "Sorted answer set programs with consistency-restoring rules")]
pub struct RunConfig {
    #[command(subcommand)]
    pub verb: Verb,
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Atoms the sort definition may derive.
    #[arg(long, global = true, env = "SPARC_ATOM_CAP", default_value_t = 100_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub atom_cap: u64,
    /// Search nodes per answer-set computation.
    #[arg(long, global = true, env = "SPARC_CANDIDATE_CAP", default_value_t = 1 << 22,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub candidate_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Check a program and print its sorts.
    Check { input: PathBuf },
    /// Print the sort-respecting grounding.
    Ground { input: PathBuf },
    /// Print the answer sets.
    Solve {
        input: PathBuf,
        /// Maximum number of answer sets; 0 prints all.
        #[arg(long, default_value_t = 0)]
        limit: usize,
        /// Include every atom of the sort definition.
        #[arg(long)]
        show_sorts: bool,
        /// Print the names of the consistency-restoring rules used.
        #[arg(long)]
        show_support: bool,
    },
    /// Print the weak-constraint counterpart, or solve it with an external solver.
    Translate {
        input: PathBuf,
        /// Solver executable; the counterpart file is passed as its last argument.
        #[arg(long)]
        solver: Option<PathBuf>,
        /// Extra argument for the solver (repeatable).
        #[arg(long = "solver-arg", allow_hyphen_values = true)]
        solver_args: Vec<String>,
    },
    /// Generate and solve a random shortest-path instance.
    Bench {
        #[arg(short = 'n', long)]
        vertices: usize,
        #[arg(short, long)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the generated program instead of solving it.
        #[arg(long)]
        emit: bool,
    },
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits { atom_cap: self.atom_cap as usize, candidate_cap: self.candidate_cap, ..Limits::default() }
    }
}

#[derive(Serialize)]
struct Record<'a> {
    answer_set: Vec<String>,
    support: Vec<String>,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bench: Option<&'a bench::BenchInstance>,
}

fn sorted_strings<'a>(it: impl IntoIterator<Item = impl ToString + 'a>) -> Vec<String> {
    let mut v: Vec<String> = it.into_iter().map(|x| x.to_string()).collect();
    v.sort();
    v
}

fn report_error(err: &Error, file: &Path, stderr: &mut dyn Write) -> i32 {
    let diags = err.diagnostics();
    if diags.is_empty() {
        let _ = writeln!(stderr, "{}: error: {err}", file.display());
    }
    for d in diags {
        let _ = writeln!(stderr, "{}:{d}", file.display());
    }
    if err.is_capacity() {
        EXIT_CAPACITY
    } else {
        EXIT_ERROR
    }
}

fn load(path: &Path, limits: &Limits) -> Result<CheckedProgram, Error> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read file: {e}")))?;
    sparc_core::load(&src, limits)
}

/// Answer sets as the `solve` verb reports them, with the support names.
pub fn solve_checked(
    checked: &CheckedProgram,
    limit: usize,
    show_sorts: bool,
    limits: &Limits,
) -> Result<Vec<(AnswerSet, Vec<String>)>, Error> {
    let ground = grounder::ground_program(checked, limits)?;
    let solutions = crsolver::solve(&ground, limit, limits.candidate_cap)?;
    Ok(solutions
        .into_iter()
        .map(|s| {
            let mut set = s.answer_set;
            if show_sorts {
                set.extend(checked.sorts.atoms.iter().cloned());
            } else {
                set.extend(ground.sort_facts.iter().filter(|l| l.args.len() != 1).cloned());
            }
            (set, sorted_strings(crsolver::support_names(&ground, &s.support)))
        })
        .collect())
}

fn with_path(p: &Path) -> impl Fn(Error) -> (Error, PathBuf) + '_ {
    move |e| (e, p.to_owned())
}

fn execute(cfg: &RunConfig, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, (Error, PathBuf)> {
    let limits = cfg.limits();
    let started = Instant::now();
    match &cfg.verb {
        Verb::Check { input } => {
            let c = load(input, &limits).map_err(with_path(input))?;
            for (name, members) in &c.sorts.defined {
                let _ = writeln!(out, "sort {name} = {{{}}}", sorted_strings(members).join(","));
            }
            Ok(EXIT_FOUND)
        }
        Verb::Ground { input } => {
            let c = load(input, &limits).map_err(with_path(input))?;
            let g = grounder::ground_program(&c, &limits).map_err(with_path(input))?;
            for r in g.rules_in_order() {
                let _ = writeln!(out, "{r}");
            }
            Ok(EXIT_FOUND)
        }
        Verb::Solve { input, limit, show_sorts, show_support } => {
            let c = load(input, &limits).map_err(with_path(input))?;
            let sets = solve_checked(&c, *limit, *show_sorts, &limits).map_err(with_path(input))?;
            let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
            for (set, support) in &sets {
                match cfg.format {
                    Format::Text if *show_support => {
                        let _ = writeln!(out, "{} % support: {{{}}}", format_literal_set(set), support.join(", "));
                    }
                    Format::Text => {
                        let _ = writeln!(out, "{}", format_literal_set(set));
                    }
                    Format::Json => {
                        let rec = Record {
                            answer_set: sorted_strings(set),
                            support: support.clone(),
                            elapsed_ms,
                            bench: None,
                        };
                        let _ = writeln!(out, "{}", serde_json::to_string(&rec).unwrap());
                    }
                }
            }
            Ok(if sets.is_empty() { EXIT_INCONSISTENT } else { EXIT_FOUND })
        }
        Verb::Translate { input, solver, solver_args } => {
            let c = load(input, &limits).map_err(with_path(input))?;
            let counterpart = translate::translate(&c);
            let text = translate::emit_dlv_text(&counterpart);
            let Some(solver) = solver else {
                let _ = out.write_all(text.as_bytes());
                return Ok(EXIT_FOUND);
            };
            let raw = translate::external::run_external_solver(&text, solver, solver_args)
                .map_err(|e| (Error::from(e), input.to_owned()))?;
            for set in &raw {
                let _ = writeln!(out, "{}", format_literal_set(&translate::strip_appl(set, &counterpart.appl)));
            }
            Ok(if raw.is_empty() { EXIT_INCONSISTENT } else { EXIT_FOUND })
        }
        Verb::Bench { vertices, density, seed, emit } => {
            let inst = match bench::gen_shortest_path(*vertices, *density, *seed) {
                Ok(i) => i,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return Ok(EXIT_ERROR);
                }
            };
            let program = inst.program();
            if *emit {
                let _ = out.write_all(program.as_bytes());
                return Ok(EXIT_FOUND);
            }
            let name = PathBuf::from(format!("bench-{vertices}-{density}-{seed}.sp"));
            let c = sparc_core::load(&program, &limits).map_err(with_path(&name))?;
            let sets = solve_checked(&c, 1, false, &limits).map_err(with_path(&name))?;
            let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
            let Some((set, support)) = sets.first() else {
                let _ = writeln!(stderr, "error: no answer set for a connected pair");
                return Ok(EXIT_INCONSISTENT);
            };
            match cfg.format {
                Format::Text => {
                    let path = inst.path_length(set).map_or("invalid".to_owned(), |l| l.to_string());
                    let _ = writeln!(
                        out,
                        "vertices={} edges={} source={} target={} bfs_distance={} path_length={path} support={} elapsed_ms={elapsed_ms:.1}",
                        inst.vertices,
                        inst.edges.len(),
                        inst.source,
                        inst.target,
                        inst.distance,
                        support.len()
                    );
                }
                Format::Json => {
                    let rec = Record {
                        answer_set: sorted_strings(set),
                        support: support.clone(),
                        elapsed_ms,
                        bench: Some(&inst),
                    };
                    let _ = writeln!(out, "{}", serde_json::to_string(&rec).unwrap());
                }
            }
            Ok(EXIT_FOUND)
        }
    }
}

/// Runs one verb, writing results to `stdout` (or the output file) and
/// diagnostics to `stderr`. Returns the exit status.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut buf = Vec::new();
    let code = match execute(cfg, &mut buf, stderr) {
        Ok(code) => code,
        Err((e, path)) => return report_error(&e, &path, stderr),
    };
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &buf) {
                let _ = writeln!(stderr, "{}: error: cannot write output: {e}", path.display());
                return EXIT_ERROR;
            }
        }
        None => {
            let _ = stdout.write_all(&buf);
        }
    }
    code
}
