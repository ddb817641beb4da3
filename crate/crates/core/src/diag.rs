//! Source positions, diagnostics and the crate-wide error type.

use std::fmt;

/// A 1-based line/column position plus the byte offset into the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
    pub offset: usize,
}

impl Pos {
    pub fn new(line: u32, col: u32, offset: usize) -> Self {
        Self { line, col, offset }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Half-open byte range `[start, end)` of a syntax node.
///
/// Spans are metadata: two spans always compare equal and hash to nothing, so
/// AST equality is structural. Synthesized nodes (e.g. translator output) use
/// [`Span::default`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(start: Pos, end: Pos) -> Self {
        Self { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Span {}
impl PartialOrd for Span {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Span {
    fn cmp(&self, _: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}
impl std::hash::Hash for Span {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A positioned message. Rendered as `line:col: severity: message`; the CLI
/// prefixes the file name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(pos: Pos, message: impl Into<String>) -> Self {
        Self { pos, severity: Severity::Error, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.pos, self.severity, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{} syntax error(s), first: {}", .0.len(), first(.0))]
    Syntax(Vec<Diagnostic>),
    #[error("{} check error(s), first: {}", .0.len(), first(.0))]
    Check(Vec<Diagnostic>),
    #[error("resource cap exceeded: {0}")]
    Capacity(String),
    /// A resource cap exceeded while deriving from a particular rule.
    #[error("resource cap exceeded: {0}")]
    CapacityAt(Diagnostic),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    External(#[from] crate::translate::external::ExternalError),
}

impl Error {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            Error::Syntax(d) | Error::Check(d) => d,
            Error::CapacityAt(d) => std::slice::from_ref(d),
            _ => &[],
        }
    }
}

fn first(diags: &[Diagnostic]) -> String {
    diags.first().map(ToString::to_string).unwrap_or_default()
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_) | Error::CapacityAt(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
