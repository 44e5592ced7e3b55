//! Test-only oracles, kept independent of the library's implementation.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cig_core::interface::services;
use cig_core::statechart::{ActionEmission, Transition};
use cig_core::testlib::TestCase;
use cig_core::{Component, ServiceName, StateRef, Statechart};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn component(name: &str, p: &[&str], r: &[&str]) -> Component {
    Component::new(name, services(p), services(r)).unwrap()
}

/// Composition evaluated name by name over the universe of all mentioned
/// services: membership in P, R and S decided directly from the defining
/// formulas.
pub struct BruteForce {
    pub provided: BTreeSet<String>,
    pub required: BTreeSet<String>,
    pub satisfied: BTreeSet<String>,
}

pub fn brute_force_compose(c1: &Component, c2: &Component) -> BruteForce {
    let has = |set: &BTreeSet<ServiceName>, x: &str| set.iter().any(|s| s.as_str() == x);
    let universe: BTreeSet<String> = [c1.provided(), c1.required(), c2.provided(), c2.required()]
        .into_iter()
        .flatten()
        .map(|s| s.as_str().to_owned())
        .collect();
    let mut out = BruteForce {
        provided: BTreeSet::new(),
        required: BTreeSet::new(),
        satisfied: BTreeSet::new(),
    };
    for x in &universe {
        let p1 = has(c1.provided(), x);
        let r1 = has(c1.required(), x);
        let p2 = has(c2.provided(), x);
        let r2 = has(c2.required(), x);
        let in_s = (p1 && r2) || (p2 && r1);
        if in_s {
            out.satisfied.insert(x.clone());
        }
        if (p1 || p2) && !in_s {
            out.provided.insert(x.clone());
        }
        if (r1 || r2) && !in_s {
            out.required.insert(x.clone());
        }
    }
    out
}

pub fn names(set: &BTreeSet<ServiceName>) -> BTreeSet<String> {
    set.iter().map(|s| s.as_str().to_owned()).collect()
}

/// Every well-formed component over `universe`: each name is provided,
/// required or absent.
pub fn all_components(name: &str, universe: &[&str]) -> Vec<Component> {
    let n = universe.len();
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            let mut p = Vec::new();
            let mut r = Vec::new();
            for x in universe {
                match code % 3 {
                    1 => p.push(*x),
                    2 => r.push(*x),
                    _ => {}
                }
                code /= 3;
            }
            component(name, &p, &r)
        })
        .collect()
}

/// Random well-formed component with at most `max` services drawn from a
/// universe of `universe` names.
pub fn random_component(rng: &mut StdRng, name: &str, universe: usize, max: usize) -> Component {
    let count = rng.random_range(0..=max);
    let mut p = BTreeSet::new();
    let mut r = BTreeSet::new();
    for _ in 0..count {
        let s = format!("s{}", rng.random_range(0..universe));
        if p.contains(&s) || r.contains(&s) {
            continue;
        }
        if rng.random_bool(0.5) {
            p.insert(s);
        } else {
            r.insert(s);
        }
    }
    component(
        name,
        &p.iter().map(String::as_str).collect::<Vec<_>>(),
        &r.iter().map(String::as_str).collect::<Vec<_>>(),
    )
}

const EVENTS: &[&str] = &["a", "b", "c", "go", "stop", "ping", "pong", "tick"];
const GUARDS: &[&str] = &["x>0", "credit < price", "ready && !busy", "n==2"];
const PARAMS: &[&str] = &["1", "2..max", "x", "0", "-3", "a.b"];

/// Random valid chart with the given component name.
pub fn random_chart(rng: &mut StdRng, component: &str) -> Statechart {
    let n_states = rng.random_range(1..=5);
    let states: Vec<String> = (0..n_states).map(|i| format!("S{i}")).collect();
    let initial = states[rng.random_range(0..n_states)].clone();
    let n_trans = rng.random_range(0..=8);
    let pick = |rng: &mut StdRng, pool: &[&str]| pool[rng.random_range(0..pool.len())].to_owned();
    let transitions = (0..n_trans)
        .map(|_| {
            let mut t = Transition::new(
                states[rng.random_range(0..n_states)].clone(),
                states[rng.random_range(0..n_states)].clone(),
            );
            if rng.random_bool(0.8) {
                t = t.on(ServiceName::new(pick(rng, EVENTS)).unwrap());
            }
            if rng.random_bool(0.3) {
                t = t.guard(pick(rng, GUARDS));
            }
            for _ in 0..rng.random_range(0..=2) {
                let params: Vec<String> = (0..rng.random_range(0..=2))
                    .map(|_| pick(rng, PARAMS))
                    .collect();
                t = t.emit(ActionEmission::with_params(
                    ServiceName::new(pick(rng, EVENTS)).unwrap(),
                    params,
                ));
            }
            t
        })
        .collect();
    Statechart::new(component, states, initial, transitions).unwrap()
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn automatic_closure(chart: &Statechart, mut set: BTreeSet<String>) -> BTreeSet<String> {
    loop {
        let extra: Vec<String> = chart
            .transitions()
            .iter()
            .filter(|t| t.event.is_none() && set.contains(&t.source) && !set.contains(&t.target))
            .map(|t| t.target.clone())
            .collect();
        if extra.is_empty() {
            return set;
        }
        set.extend(extra);
    }
}

/// Replays a generated case on its emitter chart with nondeterministic
/// semantics (automatic transitions may fire at any time). Checks that
/// every intermediate expectation holds, that `provider` is reachable when
/// the final step fires, and that the final step fires a transition out of
/// `provider` emitting `service`.
pub fn replay_reaches_and_emits(
    chart: &Statechart,
    case: &TestCase,
    provider: &StateRef,
    service: &ServiceName,
) -> Result<(), String> {
    let mut current = automatic_closure(chart, [chart.initial().to_owned()].into());
    let Some((last, setup)) = case.steps.split_last() else {
        return Err("case has no steps".into());
    };
    for (i, step) in setup.iter().enumerate() {
        let next: BTreeSet<String> = chart
            .transitions()
            .iter()
            .filter(|t| current.contains(&t.source) && t.event.as_ref() == Some(&step.event))
            .map(|t| t.target.clone())
            .collect();
        if next.is_empty() {
            return Err(format!("step {i} ({}) is not enabled", step.event));
        }
        current = automatic_closure(chart, next);
        if let Some(exp) = &step.expected_state {
            if exp.component != chart.component() || !current.contains(&exp.state) {
                return Err(format!("step {i} cannot reach expected state {exp}"));
            }
        }
    }
    if !current.contains(&provider.state) {
        return Err(format!("{provider} not reached before the final step"));
    }
    let fires = chart.outgoing(&provider.state).any(|t| {
        t.event.as_ref() == Some(&last.event) && t.actions.iter().any(|a| &a.action == service)
    });
    if !fires {
        return Err(format!(
            "final event {} does not emit {service} from {provider}",
            last.event
        ));
    }
    if !last.expected_actions.contains(service) {
        return Err("final step does not expect the service".into());
    }
    Ok(())
}
