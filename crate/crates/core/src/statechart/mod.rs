//! Flat statecharts: states, an initial state and transitions carrying an
//! optional trigger event, an optional opaque guard and emitted actions.
//!
//! Charts are read from and written to a small line-oriented DSL:
//!
//! ```text
//! component Dispenser
//! state Empty
//! state Enabled
//! initial Empty
//! transition Empty -> Enabled on setCredit guard [credit>=price]
//! transition Enabled -> Empty on dispense do ok
//! end
//! ```
//!
//! A transition without `on` is automatic. Action parameters are kept as
//! verbatim tokens (`setCredit(2..max)`).

mod parser;
mod writer;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interface::{check_identifier, Component, ServiceName};

pub use parser::parse_statechart;
pub use writer::serialize_statechart;

/// A state of a named component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StateRef {
    pub component: String,
    pub state: String,
}

impl StateRef {
    pub fn new(component: impl Into<String>, state: impl Into<String>) -> Self {
        Self {
            component: component.into(),
            state: state.into(),
        }
    }
}

impl fmt::Display for StateRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.component, self.state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionEmission {
    pub action: ServiceName,
    pub params: Vec<String>,
}

impl ActionEmission {
    pub fn new(action: ServiceName) -> Self {
        Self {
            action,
            params: Vec::new(),
        }
    }

    pub fn with_params<I, S>(action: ServiceName, params: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            action,
            params: params.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub source: String,
    pub target: String,
    /// `None` for an automatic transition.
    pub event: Option<ServiceName>,
    pub guard: Option<String>,
    pub actions: Vec<ActionEmission>,
}

impl Transition {
    pub fn new(source: impl Into<String>, target: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            target: target.into(),
            event: None,
            guard: None,
            actions: Vec::new(),
        }
    }

    pub fn on(mut self, event: ServiceName) -> Self {
        self.event = Some(event);
        self
    }

    pub fn guard(mut self, guard: impl Into<String>) -> Self {
        self.guard = Some(guard.into());
        self
    }

    pub fn emit(mut self, action: ActionEmission) -> Self {
        self.actions.push(action);
        self
    }

    pub fn is_automatic(&self) -> bool {
        self.event.is_none()
    }

    pub fn emits(&self, service: &ServiceName) -> bool {
        self.actions.iter().any(|a| &a.action == service)
    }
}

pub(crate) fn is_valid_guard(guard: &str) -> bool {
    !guard.is_empty() && guard.trim() == guard && !guard.contains(['[', ']', '#', '\n', '\r'])
}

pub(crate) fn is_valid_param(param: &str) -> bool {
    !param.is_empty()
        && !param
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '(' | ')' | '[' | ']' | '#'))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statechart {
    component: String,
    states: Vec<String>,
    initial: String,
    transitions: Vec<Transition>,
}

impl Statechart {
    pub fn new(
        component: impl Into<String>,
        states: Vec<String>,
        initial: impl Into<String>,
        transitions: Vec<Transition>,
    ) -> Result<Self> {
        let component = component.into();
        let initial = initial.into();
        check_identifier(&component)?;
        let invalid = |message: String| Error::InvalidStatechart {
            component: component.clone(),
            message,
        };
        let mut seen = HashSet::new();
        for s in &states {
            check_identifier(s)?;
            if !seen.insert(s.as_str()) {
                return Err(invalid(format!("duplicate state {s}")));
            }
        }
        if !seen.contains(initial.as_str()) {
            return Err(invalid(format!("initial state {initial} is not declared")));
        }
        for t in &transitions {
            for end in [&t.source, &t.target] {
                if !seen.contains(end.as_str()) {
                    return Err(invalid(format!(
                        "transition references unknown state {end}"
                    )));
                }
            }
            if let Some(g) = &t.guard {
                if !is_valid_guard(g) {
                    return Err(invalid(format!("unrepresentable guard {g:?}")));
                }
            }
            for p in t.actions.iter().flat_map(|a| &a.params) {
                if !is_valid_param(p) {
                    return Err(invalid(format!("unrepresentable parameter {p:?}")));
                }
            }
        }
        Ok(Self {
            component,
            states,
            initial,
            transitions,
        })
    }

    pub fn component(&self) -> &str {
        &self.component
    }

    /// States in declaration order.
    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn has_state(&self, state: &str) -> bool {
        self.state_index(state).is_some()
    }

    pub fn outgoing<'a>(&'a self, state: &'a str) -> impl Iterator<Item = &'a Transition> + 'a {
        self.transitions.iter().filter(move |t| t.source == state)
    }

    pub fn state_ref(&self, state: &str) -> StateRef {
        StateRef::new(&self.component, state)
    }

    /// Every trigger event name used by a transition.
    pub fn triggers(&self) -> BTreeSet<ServiceName> {
        self.transitions
            .iter()
            .filter_map(|t| t.event.clone())
            .collect()
    }

    /// Every emitted action name.
    pub fn actions(&self) -> BTreeSet<ServiceName> {
        self.transitions
            .iter()
            .flat_map(|t| t.actions.iter().map(|a| a.action.clone()))
            .collect()
    }
}

/// Reads a chart's interfaces: triggers are provided, emitted actions are
/// required. A name used both ways is a [`Error::DisjointnessViolation`].
pub fn extract_interfaces(chart: &Statechart) -> Result<Component> {
    Component::new(chart.component(), chart.triggers(), chart.actions())
}

/// Charts of distinct components, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSet {
    charts: Vec<Statechart>,
}

impl ChartSet {
    pub fn new(charts: Vec<Statechart>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &charts {
            if !seen.insert(c.component()) {
                return Err(Error::DuplicateComponent(c.component().to_owned()));
            }
        }
        Ok(Self { charts })
    }

    pub fn charts(&self) -> &[Statechart] {
        &self.charts
    }

    pub fn get(&self, component: &str) -> Option<&Statechart> {
        self.charts.iter().find(|c| c.component() == component)
    }

    pub fn component_index(&self, component: &str) -> Option<usize> {
        self.charts.iter().position(|c| c.component() == component)
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    /// Position of a state in (chart order, declaration order).
    pub(crate) fn order_key(&self, state: &StateRef) -> (usize, usize) {
        let ci = self.component_index(&state.component).unwrap_or(usize::MAX);
        let si = self
            .charts
            .get(ci)
            .and_then(|c| c.state_index(&state.state))
            .unwrap_or(usize::MAX);
        (ci, si)
    }
}
