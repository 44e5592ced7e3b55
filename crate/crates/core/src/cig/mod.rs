//! Component Interaction Graph construction from a set of statecharts.
//!
//! A service is *cross* when one component's state emits it as an action and
//! a state of a different component accepts it as a trigger. Construction:
//!
//! 1. switching states (every outgoing transition is automatic and emits a
//!    cross service) are removed;
//! 2. cross services are recomputed without the removed states;
//! 3. emitters become provided interfaces, acceptors required interfaces,
//!    everything else intermediate;
//! 4. every provided emitter is linked to every required acceptor of the
//!    same service in another component.

mod dot;
mod json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::interface::ServiceName;
use crate::statechart::{ChartSet, StateRef};

pub use dot::cig_to_dot;
pub use json::{cig_from_json, cig_to_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Provided,
    Required,
    ProvidedRequired,
    Intermediate,
    Removed,
}

/// Per-node kind letters as used in JSON and DOT labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InterfaceKind {
    Provided,
    Required,
    Intermediate,
}

impl InterfaceKind {
    pub fn letter(self) -> &'static str {
        match self {
            InterfaceKind::Provided => "P",
            InterfaceKind::Required => "R",
            InterfaceKind::Intermediate => "G",
        }
    }
}

impl Classification {
    fn from_flags(provided: bool, required: bool) -> Self {
        match (provided, required) {
            (true, true) => Classification::ProvidedRequired,
            (true, false) => Classification::Provided,
            (false, true) => Classification::Required,
            (false, false) => Classification::Intermediate,
        }
    }

    pub fn is_provided(self) -> bool {
        matches!(
            self,
            Classification::Provided | Classification::ProvidedRequired
        )
    }

    pub fn is_required(self) -> bool {
        matches!(
            self,
            Classification::Required | Classification::ProvidedRequired
        )
    }

    /// Empty for `Removed`.
    pub fn kinds(self) -> Vec<InterfaceKind> {
        match self {
            Classification::Provided => vec![InterfaceKind::Provided],
            Classification::Required => vec![InterfaceKind::Required],
            Classification::ProvidedRequired => {
                vec![InterfaceKind::Provided, InterfaceKind::Required]
            }
            Classification::Intermediate => vec![InterfaceKind::Intermediate],
            Classification::Removed => vec![],
        }
    }

    pub(crate) fn from_kinds(kinds: &[InterfaceKind]) -> Option<Self> {
        let set: BTreeSet<_> = kinds.iter().copied().collect();
        if set.len() != kinds.len() {
            return None;
        }
        let has = |k| set.contains(&k);
        match (
            has(InterfaceKind::Provided),
            has(InterfaceKind::Required),
            has(InterfaceKind::Intermediate),
        ) {
            (false, false, true) => Some(Classification::Intermediate),
            (p, r, false) if p || r => Some(Self::from_flags(p, r)),
            _ => None,
        }
    }

    /// `P`, `R`, `P,R`, `G` or `Removed`.
    pub fn label(self) -> String {
        match self {
            Classification::Removed => "Removed".to_owned(),
            other => other
                .kinds()
                .iter()
                .map(|k| k.letter())
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CigNode {
    pub component: String,
    pub state: String,
    pub classification: Classification,
}

impl CigNode {
    pub fn state_ref(&self) -> StateRef {
        StateRef::new(&self.component, &self.state)
    }
}

/// `from` provides `service`, which `to` requires.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CigEdge {
    pub from: StateRef,
    pub to: StateRef,
    pub service: ServiceName,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cig {
    components: Vec<String>,
    removed: Vec<StateRef>,
    nodes: Vec<CigNode>,
    edges: Vec<CigEdge>,
}

impl Cig {
    /// Assembles a graph after checking its structural invariants.
    pub fn new(
        components: Vec<String>,
        removed: Vec<StateRef>,
        nodes: Vec<CigNode>,
        edges: Vec<CigEdge>,
    ) -> Result<Self> {
        let schema = |m: String| Err(Error::Schema(m));
        let comps: BTreeSet<&str> = components.iter().map(String::as_str).collect();
        if comps.len() != components.len() {
            return schema("duplicate component".into());
        }
        let mut index = BTreeMap::new();
        for n in &nodes {
            if !comps.contains(n.component.as_str()) {
                return schema(format!(
                    "node {}.{} has unknown component",
                    n.component, n.state
                ));
            }
            if n.classification == Classification::Removed {
                return schema(format!(
                    "node {}.{} is classified Removed",
                    n.component, n.state
                ));
            }
            if index.insert(n.state_ref(), n.classification).is_some() {
                return schema(format!("duplicate node {}.{}", n.component, n.state));
            }
        }
        for r in &removed {
            if index.contains_key(r) {
                return schema(format!("removed state {r} is also a node"));
            }
        }
        for e in &edges {
            let (Some(from), Some(to)) = (index.get(&e.from), index.get(&e.to)) else {
                return schema(format!(
                    "edge {} -> {} has a missing endpoint",
                    e.from, e.to
                ));
            };
            if e.from.component == e.to.component {
                return schema(format!(
                    "edge {} -> {} stays inside a component",
                    e.from, e.to
                ));
            }
            if !from.is_provided() || !to.is_required() {
                return schema(format!(
                    "edge {} -> {} must run from a provided to a required interface",
                    e.from, e.to
                ));
            }
        }
        Ok(Self {
            components,
            removed,
            nodes,
            edges,
        })
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn removed(&self) -> &[StateRef] {
        &self.removed
    }

    pub fn nodes(&self) -> &[CigNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[CigEdge] {
        &self.edges
    }

    pub fn node(&self, state: &StateRef) -> Option<&CigNode> {
        self.nodes
            .iter()
            .find(|n| n.component == state.component && n.state == state.state)
    }

    pub fn has_edge(&self, from: &StateRef, to: &StateRef, service: &str) -> bool {
        self.edges
            .iter()
            .any(|e| &e.from == from && &e.to == to && e.service.as_str() == service)
    }
}

/// Emitting and accepting states of one cross-component service.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossService {
    pub emitters: Vec<StateRef>,
    pub acceptors: Vec<StateRef>,
}

fn cross_services_excluding(
    charts: &ChartSet,
    excluded: &BTreeSet<StateRef>,
) -> BTreeMap<ServiceName, CrossService> {
    let mut raw: BTreeMap<ServiceName, CrossService> = BTreeMap::new();
    for chart in charts.charts() {
        for t in chart.transitions() {
            let source = chart.state_ref(&t.source);
            if excluded.contains(&source) {
                continue;
            }
            for a in &t.actions {
                raw.entry(a.action.clone())
                    .or_default()
                    .emitters
                    .push(source.clone());
            }
            if let Some(e) = &t.event {
                raw.entry(e.clone())
                    .or_default()
                    .acceptors
                    .push(source.clone());
            }
        }
    }

    let order = |s: &StateRef| charts.order_key(s);
    raw.into_iter()
        .filter_map(|(service, all)| {
            let pick = |side: &[StateRef], other: &[StateRef]| {
                let mut v: Vec<StateRef> = side
                    .iter()
                    .filter(|s| other.iter().any(|o| o.component != s.component))
                    .cloned()
                    .collect();
                v.sort_by_key(order);
                v.dedup();
                v
            };
            let emitters = pick(&all.emitters, &all.acceptors);
            let acceptors = pick(&all.acceptors, &all.emitters);
            (!emitters.is_empty() && !acceptors.is_empty()).then_some((
                service,
                CrossService {
                    emitters,
                    acceptors,
                },
            ))
        })
        .collect()
}

/// Services emitted by one component and accepted by another, with the
/// states on each side in chart/declaration order. Environment-only
/// services are omitted.
pub fn cross_services(charts: &ChartSet) -> BTreeMap<ServiceName, CrossService> {
    cross_services_excluding(charts, &BTreeSet::new())
}

/// States whose outgoing transitions are all automatic and all emit a
/// cross service: they only hand control to another component.
pub fn find_switching_states(charts: &ChartSet) -> BTreeSet<StateRef> {
    let cross = cross_services(charts);
    let mut out = BTreeSet::new();
    for chart in charts.charts() {
        for state in chart.states() {
            let me = chart.state_ref(state);
            let mut outgoing = chart.outgoing(state).peekable();
            if outgoing.peek().is_none() {
                continue;
            }
            let switching = outgoing.all(|t| {
                t.is_automatic()
                    && t.actions.iter().any(|a| {
                        cross
                            .get(&a.action)
                            .is_some_and(|c| c.emitters.contains(&me))
                    })
            });
            if switching {
                out.insert(me);
            }
        }
    }
    out
}

fn classify_with(
    charts: &ChartSet,
    removed: &BTreeSet<StateRef>,
    cross: &BTreeMap<ServiceName, CrossService>,
) -> Vec<(StateRef, Classification)> {
    let emitters: BTreeSet<&StateRef> = cross.values().flat_map(|c| &c.emitters).collect();
    let acceptors: BTreeSet<&StateRef> = cross.values().flat_map(|c| &c.acceptors).collect();
    charts
        .charts()
        .iter()
        .flat_map(|chart| chart.states().iter().map(|s| chart.state_ref(s)))
        .map(|s| {
            let class = if removed.contains(&s) {
                Classification::Removed
            } else {
                Classification::from_flags(emitters.contains(&s), acceptors.contains(&s))
            };
            (s, class)
        })
        .collect()
}

/// Classification of every state of every chart.
pub fn classify_states(charts: &ChartSet) -> BTreeMap<StateRef, Classification> {
    let removed = find_switching_states(charts);
    let cross = cross_services_excluding(charts, &removed);
    classify_with(charts, &removed, &cross)
        .into_iter()
        .collect()
}

/// Builds the interaction graph. Nodes follow chart then declaration order;
/// edges are ordered by source node, target node, then service.
pub fn build_cig(charts: &ChartSet) -> Result<Cig> {
    let removed = find_switching_states(charts);
    let cross = cross_services_excluding(charts, &removed);
    if cross.is_empty() {
        return Err(Error::NoInteraction);
    }

    let nodes: Vec<CigNode> = classify_with(charts, &removed, &cross)
        .into_iter()
        .filter(|(_, c)| *c != Classification::Removed)
        .map(|(s, classification)| CigNode {
            component: s.component,
            state: s.state,
            classification,
        })
        .collect();

    let mut edges = Vec::new();
    for (service, c) in &cross {
        for p in &c.emitters {
            for r in c.acceptors.iter().filter(|r| r.component != p.component) {
                edges.push(CigEdge {
                    from: p.clone(),
                    to: r.clone(),
                    service: service.clone(),
                });
            }
        }
    }
    edges.sort_by(|a, b| {
        (
            charts.order_key(&a.from),
            charts.order_key(&a.to),
            &a.service,
        )
            .cmp(&(
                charts.order_key(&b.from),
                charts.order_key(&b.to),
                &b.service,
            ))
    });

    let mut removed: Vec<StateRef> = removed.into_iter().collect();
    removed.sort_by_key(|s| charts.order_key(s));
    let components = charts
        .charts()
        .iter()
        .map(|c| c.component().to_owned())
        .collect();
    Cig::new(components, removed, nodes, edges)
}

/// Plain-text table of every state and its classification, in chart order.
pub fn classification_report(charts: &ChartSet) -> String {
    let removed = find_switching_states(charts);
    let cross = cross_services_excluding(charts, &removed);
    let rows = classify_with(charts, &removed, &cross);
    let cw = rows
        .iter()
        .map(|(s, _)| s.component.len())
        .max()
        .unwrap_or(0)
        .max(9);
    let sw = rows
        .iter()
        .map(|(s, _)| s.state.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:cw$}  {:sw$}  kind", "component", "state");
    for (s, c) in rows {
        let _ = writeln!(out, "{:cw$}  {:sw$}  {}", s.component, s.state, c.label());
    }
    out
}
