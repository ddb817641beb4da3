//! Running an external answer-set solver on counterpart text.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;

use crate::ground::{AnswerSet, GroundLiteral};
use crate::syntax::parse_literal_list;

#[derive(Debug, thiserror::Error)]
pub enum ExternalError {
    #[error("cannot launch solver {path}: {source}")]
    Launch { path: PathBuf, source: std::io::Error },
    #[error("solver exited with {}: {stderr}", code.map_or("a signal".to_owned(), |c| format!("status {c}")))]
    NonZeroExit { code: Option<i32>, stderr: String },
    #[error("unparseable solver output line {line_no}: {line}")]
    Unparseable { line_no: usize, line: String },
    #[error("cannot write solver input: {0}")]
    Io(#[from] std::io::Error),
}

fn parse_set(inner: &str, line_no: usize, line: &str) -> Result<AnswerSet, ExternalError> {
    let bad = || ExternalError::Unparseable { line_no, line: line.to_owned() };
    let lits = parse_literal_list(inner).map_err(|_| bad())?;
    lits.iter().map(|l| GroundLiteral::from_literal(l).ok_or_else(bad)).collect()
}

/// Parses DLV-style output: one `{l1, ..., ln}` per answer set, or
/// `Best model: {...}` lines when weak constraints are present, in which
/// case the last (optimal) model is returned. `Cost` lines, banner lines
/// starting with `DLV` and blank lines are ignored.
pub fn parse_output(out: &str) -> Result<Vec<AnswerSet>, ExternalError> {
    let mut plain = Vec::new();
    let mut best = None;
    for (i, raw) in out.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("Cost") || line.starts_with("DLV") {
            continue;
        }
        let (is_best, body) = match line.strip_prefix("Best model:") {
            Some(rest) => (true, rest.trim()),
            None => (false, line),
        };
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| ExternalError::Unparseable { line_no: i + 1, line: raw.to_owned() })?;
        let set = parse_set(inner, i + 1, raw)?;
        if is_best {
            best = Some(set);
        } else {
            plain.push(set);
        }
    }
    Ok(match best {
        Some(b) => vec![b],
        None => plain,
    })
}

/// Writes `text` to a temporary file, runs `solver args... file`, and parses
/// its standard output.
pub fn run_external_solver(text: &str, solver: &Path, args: &[String]) -> Result<Vec<AnswerSet>, ExternalError> {
    let mut file = tempfile::Builder::new().suffix(".dlv").tempfile()?;
    file.write_all(text.as_bytes())?;
    file.flush()?;
    let output = Command::new(solver)
        .args(args)
        .arg(file.path())
        .output()
        .map_err(|source| ExternalError::Launch { path: solver.to_owned(), source })?;
    if !output.status.success() {
        return Err(ExternalError::NonZeroExit {
            code: output.status.code(),
            stderr: String::from_utf8_lossy(&output.stderr).trim().to_owned(),
        });
    }
    parse_output(&String::from_utf8_lossy(&output.stdout))
}
