use std::collections::HashMap;

use super::{Origin, TestCase, TestLibrary, TestStep, GENERATED_PREFIX};
use crate::cig::{Cig, CigEdge};
use crate::error::{Error, Result};
use crate::statechart::{ChartSet, StateRef, Statechart, Transition};

/// Ordering key of a path: fewer events first, then lexicographic events.
type PathKey<'a> = (usize, Vec<&'a str>);

fn key_of<'a>(chart: &'a Statechart, path: &[usize]) -> PathKey<'a> {
    let events: Vec<&str> = path
        .iter()
        .filter_map(|&i| chart.transitions()[i].event.as_ref().map(|e| e.as_str()))
        .collect();
    (events.len(), events)
}

/// Shortest event path (as transition indices) from the initial state to
/// `target`. Automatic transitions cost nothing; ties go to the
/// lexicographically smallest event sequence. Guards are ignored.
fn shortest_path(chart: &Statechart, target: &str) -> Option<Vec<usize>> {
    let mut best: HashMap<&str, Vec<usize>> = HashMap::new();
    best.insert(chart.initial(), Vec::new());
    // The key order is preserved under extension, so relaxing to a fixed
    // point yields the minimum for every state.
    loop {
        let mut changed = false;
        for (i, t) in chart.transitions().iter().enumerate() {
            let Some(prefix) = best.get(t.source.as_str()) else {
                continue;
            };
            let mut candidate = prefix.clone();
            candidate.push(i);
            let better = match best.get(t.target.as_str()) {
                None => true,
                Some(current) => key_of(chart, &candidate) < key_of(chart, current),
            };
            if better {
                best.insert(t.target.as_str(), candidate);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    best.remove(target)
}

fn steps_along(chart: &Statechart, path: &[usize]) -> Vec<TestStep> {
    let mut steps: Vec<TestStep> = Vec::new();
    for &i in path {
        let t = &chart.transitions()[i];
        let reached = chart.state_ref(&t.target);
        let emitted = t.actions.iter().map(|a| a.action.clone());
        match &t.event {
            Some(event) => steps.push(TestStep {
                event: event.clone(),
                expected_state: Some(reached),
                expected_actions: emitted.collect(),
            }),
            // Automatic hops fold into the step that led to them; hops
            // before the first event happen at start-up.
            None => {
                if let Some(last) = steps.last_mut() {
                    last.expected_state = Some(reached);
                    last.expected_actions.extend(emitted);
                }
            }
        }
    }
    steps
}

fn lookup<'a>(charts: &'a ChartSet, s: &StateRef) -> Result<&'a Statechart> {
    charts
        .get(&s.component)
        .filter(|c| c.has_state(&s.state))
        .ok_or_else(|| Error::Schema(format!("graph state {s} is not in the given charts")))
}

/// Id of the case covering `edge`.
pub(crate) fn case_id(edge: &CigEdge) -> String {
    format!(
        "{GENERATED_PREFIX}{}_{}_{}_{}_{}",
        edge.from.component, edge.from.state, edge.service, edge.to.component, edge.to.state
    )
}

fn case_for_edge(edge: &CigEdge, charts: &ChartSet) -> Result<TestCase> {
    let emitter = lookup(charts, &edge.from)?;
    let acceptor = lookup(charts, &edge.to)?;

    let emitting: Vec<&Transition> = emitter
        .outgoing(&edge.from.state)
        .filter(|t| t.emits(&edge.service))
        .collect();
    let trigger = emitting
        .iter()
        .filter(|t| t.event.is_some())
        .min_by(|a, b| a.event.cmp(&b.event))
        .copied();
    if emitting.is_empty() {
        return Err(Error::Schema(format!(
            "{} does not emit {}",
            edge.from, edge.service
        )));
    }

    let path = shortest_path(emitter, &edge.from.state)
        .ok_or_else(|| Error::UnreachableProvider(edge.from.clone()))?;
    let mut steps = steps_along(emitter, &path);

    let accepting: Vec<&Transition> = acceptor
        .outgoing(&edge.to.state)
        .filter(|t| t.event.as_ref() == Some(&edge.service))
        .collect();
    let acceptor_state = match accepting.as_slice() {
        [only] => Some(acceptor.state_ref(&only.target)),
        _ => None,
    };

    match trigger {
        Some(t) => steps.push(TestStep {
            event: t.event.clone().expect("triggered transition"),
            expected_state: acceptor_state,
            expected_actions: t.actions.iter().map(|a| a.action.clone()).collect(),
        }),
        // Only automatic transitions emit the service: the emission happens
        // on arrival, so it is expected from the last step.
        None => {
            if let Some(last) = steps.last_mut() {
                last.expected_actions.push(edge.service.clone());
                last.expected_state = acceptor_state;
            }
        }
    }

    Ok(TestCase {
        id: case_id(edge),
        owner: edge.from.component.clone(),
        origin: Origin::Generated,
        services: [edge.service.clone()].into_iter().collect(),
        steps,
    })
}

/// One generated case per graph edge, ordered by id. Each case drives the
/// emitting component from its initial state into the provided interface
/// state and then fires the transition that emits the edge's service.
pub fn generate_new_tests(cig: &Cig, charts: &ChartSet) -> Result<TestLibrary> {
    let mut cases = cig
        .edges()
        .iter()
        .map(|e| case_for_edge(e, charts))
        .collect::<Result<Vec<_>>>()?;
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    TestLibrary::new(cases)
}
