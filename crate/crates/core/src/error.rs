use std::collections::BTreeSet;
use std::fmt;

use crate::interface::ServiceName;
use crate::statechart::StateRef;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid identifier {0:?}: expected letters, digits or underscores")]
    InvalidIdentifier(String),

    #[error("component {component}: services both provided and required: {}", join(.services))]
    DisjointnessViolation {
        component: String,
        services: BTreeSet<ServiceName>,
    },

    #[error("component {component}: internal map entry {from} -> {to} is not a required -> provided pair")]
    InvalidInternalMap {
        component: String,
        from: ServiceName,
        to: ServiceName,
    },

    #[error("not composable: S is empty for ({left}, {right})")]
    NotComposable { left: String, right: String },

    #[error("composition needs at least two components, got {0}")]
    TooFewComponents(usize),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid statechart {component}: {message}")]
    InvalidStatechart { component: String, message: String },

    #[error("duplicate component {0} in chart set")]
    DuplicateComponent(String),

    #[error("no interaction: the charts share no cross-component services")]
    NoInteraction,

    #[error("schema error: {0}")]
    Schema(String),

    #[error("duplicate test id {0}")]
    DuplicateTestId(String),

    #[error("test id {0} uses the reserved \"tnew_\" prefix")]
    ReservedTestId(String),

    #[error("provider state {0} is unreachable from its initial state")]
    UnreachableProvider(StateRef),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Schema(err.to_string())
    }
}

fn join(services: &BTreeSet<ServiceName>) -> String {
    services
        .iter()
        .map(ServiceName::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownState,
    DuplicateState,
    MissingInitial,
    DuplicateComponent,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownState => "unknown state",
            ParseErrorKind::DuplicateState => "duplicate state",
            ParseErrorKind::MissingInitial => "missing initial state",
            ParseErrorKind::DuplicateComponent => "duplicate component header",
        };
        f.write_str(s)
    }
}

/// A statechart DSL failure, positioned at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(
        kind: ParseErrorKind,
        line: usize,
        column: usize,
        message: impl Into<String>,
    ) -> Self {
        Self {
            kind,
            line,
            column,
            message: message.into(),
        }
    }
}
