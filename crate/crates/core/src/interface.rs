//! Components as provided/required service sets and their composition.
//!
//! A [`Component`] is the pair `(P, R)` of provided and required service
//! names, with `P ∩ R = ∅`. Two components are composable when one provides
//! something the other requires; composing them removes the matched
//! ("satisfied") services from both unions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn check_identifier(s: &str) -> Result<()> {
    if is_identifier(s) {
        Ok(())
    } else {
        Err(Error::InvalidIdentifier(s.to_owned()))
    }
}

/// Name of a service interface. Compared by exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ServiceName(String);

impl ServiceName {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        check_identifier(&name)?;
        Ok(Self(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ServiceName {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl TryFrom<&str> for ServiceName {
    type Error = Error;

    fn try_from(value: &str) -> Result<Self> {
        Self::new(value)
    }
}

impl From<ServiceName> for String {
    fn from(value: ServiceName) -> Self {
        value.0
    }
}

impl fmt::Display for ServiceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for ServiceName {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Builds a service set from string literals, panicking on invalid names.
///
/// Intended for tests and examples.
pub fn services<I, S>(names: I) -> BTreeSet<ServiceName>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names
        .into_iter()
        .map(|n| ServiceName::new(n.as_ref()).expect("valid service name"))
        .collect()
}

/// A component described only by its interfaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComponent")]
pub struct Component {
    name: String,
    provided: BTreeSet<ServiceName>,
    required: BTreeSet<ServiceName>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    internal_map: BTreeMap<ServiceName, ServiceName>,
}

#[derive(Deserialize)]
struct RawComponent {
    name: String,
    provided: BTreeSet<ServiceName>,
    required: BTreeSet<ServiceName>,
    #[serde(default)]
    internal_map: BTreeMap<ServiceName, ServiceName>,
}

impl TryFrom<RawComponent> for Component {
    type Error = Error;

    fn try_from(raw: RawComponent) -> Result<Self> {
        Component::new(raw.name, raw.provided, raw.required)?.with_internal_map(raw.internal_map)
    }
}

impl Component {
    /// Fails with [`Error::DisjointnessViolation`] if a service is both
    /// provided and required.
    pub fn new(
        name: impl Into<String>,
        provided: BTreeSet<ServiceName>,
        required: BTreeSet<ServiceName>,
    ) -> Result<Self> {
        let name = name.into();
        check_identifier(&name)?;
        let overlap: BTreeSet<_> = provided.intersection(&required).cloned().collect();
        if !overlap.is_empty() {
            return Err(Error::DisjointnessViolation {
                component: name,
                services: overlap,
            });
        }
        Ok(Self {
            name,
            provided,
            required,
            internal_map: BTreeMap::new(),
        })
    }

    /// Attaches the internal required -> provided mapping.
    pub fn with_internal_map(mut self, map: BTreeMap<ServiceName, ServiceName>) -> Result<Self> {
        for (from, to) in &map {
            if !self.required.contains(from) || !self.provided.contains(to) {
                return Err(Error::InvalidInternalMap {
                    component: self.name.clone(),
                    from: from.clone(),
                    to: to.clone(),
                });
            }
        }
        self.internal_map = map;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provided(&self) -> &BTreeSet<ServiceName> {
        &self.provided
    }

    pub fn required(&self) -> &BTreeSet<ServiceName> {
        &self.required
    }

    pub fn internal_map(&self) -> &BTreeMap<ServiceName, ServiceName> {
        &self.internal_map
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("component serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// True iff one component provides a service the other requires.
pub fn is_composable(c1: &Component, c2: &Component) -> bool {
    !c1.provided.is_disjoint(&c2.required) || !c2.provided.is_disjoint(&c1.required)
}

/// `(c1.P ∩ c2.R) ∪ (c2.P ∩ c1.R)`
pub fn satisfied_services(c1: &Component, c2: &Component) -> BTreeSet<ServiceName> {
    c1.provided
        .intersection(&c2.required)
        .chain(c2.provided.intersection(&c1.required))
        .cloned()
        .collect()
}

/// One fold step of a composition: which operands met and what they consumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionStep {
    pub left: String,
    pub right: String,
    pub satisfied: BTreeSet<ServiceName>,
}

/// Outcome of `left ⊗ right`, keeping operand snapshots and fold provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCompositionResult")]
pub struct CompositionResult {
    left_name: String,
    right_name: String,
    order: Vec<String>,
    composed: Component,
    satisfied: BTreeSet<ServiceName>,
    steps: Vec<CompositionStep>,
    left: Component,
    right: Component,
}

#[derive(Deserialize)]
struct RawCompositionResult {
    left_name: String,
    right_name: String,
    order: Vec<String>,
    composed: Component,
    satisfied: BTreeSet<ServiceName>,
    steps: Vec<CompositionStep>,
    left: Component,
    right: Component,
}

impl TryFrom<RawCompositionResult> for CompositionResult {
    type Error = Error;

    fn try_from(raw: RawCompositionResult) -> Result<Self> {
        let expected = compose(&raw.left, &raw.right)?;
        let consistent = raw.left_name == raw.left.name
            && raw.right_name == raw.right.name
            && raw.composed == expected.composed
            && raw.satisfied == expected.satisfied
            && raw.steps.last() == expected.steps.last()
            && raw.order.len() == raw.steps.len() + 1;
        if !consistent {
            return Err(Error::Schema(
                "composition result does not match its operand snapshots".into(),
            ));
        }
        Ok(Self {
            left_name: raw.left_name,
            right_name: raw.right_name,
            order: raw.order,
            composed: raw.composed,
            satisfied: raw.satisfied,
            steps: raw.steps,
            left: raw.left,
            right: raw.right,
        })
    }
}

impl CompositionResult {
    pub fn composed(&self) -> &Component {
        &self.composed
    }

    /// Services consumed by the last composition step.
    pub fn satisfied(&self) -> &BTreeSet<ServiceName> {
        &self.satisfied
    }

    /// Services consumed by every step of the fold.
    pub fn satisfied_overall(&self) -> BTreeSet<ServiceName> {
        self.steps
            .iter()
            .flat_map(|s| s.satisfied.iter().cloned())
            .collect()
    }

    pub fn left_name(&self) -> &str {
        &self.left_name
    }

    pub fn right_name(&self) -> &str {
        &self.right_name
    }

    pub fn left(&self) -> &Component {
        &self.left
    }

    pub fn right(&self) -> &Component {
        &self.right
    }

    /// Operand names in fold order.
    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn steps(&self) -> &[CompositionStep] {
        &self.steps
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("composition serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `c1 ⊗ c2`. The composite is named `"<c1>_x_<c2>"` and has no internal map.
pub fn compose(c1: &Component, c2: &Component) -> Result<CompositionResult> {
    let satisfied = satisfied_services(c1, c2);
    if satisfied.is_empty() {
        return Err(Error::NotComposable {
            left: c1.name.clone(),
            right: c2.name.clone(),
        });
    }
    let provided = c1
        .provided
        .union(&c2.provided)
        .filter(|s| !satisfied.contains(*s))
        .cloned()
        .collect();
    let required = c1
        .required
        .union(&c2.required)
        .filter(|s| !satisfied.contains(*s))
        .cloned()
        .collect();
    let composed = Component {
        name: format!("{}_x_{}", c1.name, c2.name),
        provided,
        required,
        internal_map: BTreeMap::new(),
    };
    debug_assert!(composed.provided.is_disjoint(&composed.required));
    Ok(CompositionResult {
        left_name: c1.name.clone(),
        right_name: c2.name.clone(),
        order: vec![c1.name.clone(), c2.name.clone()],
        composed,
        steps: vec![CompositionStep {
            left: c1.name.clone(),
            right: c2.name.clone(),
            satisfied: satisfied.clone(),
        }],
        satisfied,
        left: c1.clone(),
        right: c2.clone(),
    })
}

/// Left fold of [`compose`] in list order. The failing pair is reported by
/// name; after the first step the left name is the running composite.
pub fn compose_many(components: &[Component]) -> Result<CompositionResult> {
    let (first, rest) = match components {
        [first, rest @ ..] if !rest.is_empty() => (first, rest),
        _ => return Err(Error::TooFewComponents(components.len())),
    };
    let mut acc = compose(first, &rest[0])?;
    for next in &rest[1..] {
        let step = compose(&acc.composed, next)?;
        let mut order = std::mem::take(&mut acc.order);
        order.push(next.name.clone());
        let mut steps = std::mem::take(&mut acc.steps);
        steps.extend(step.steps.iter().cloned());
        acc = CompositionResult {
            order,
            steps,
            ..step
        };
    }
    Ok(acc)
}
