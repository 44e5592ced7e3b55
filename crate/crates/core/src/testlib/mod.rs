//! Test cases, test libraries and the composed-library law
//! `T(C1 ⊗ C2) = ((T1 ∪ T2) \ Ts) ∪ Tnew`.

mod algebra;
mod generate;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interface::ServiceName;
use crate::statechart::StateRef;

pub use algebra::{compose_libraries, satisfied_tests, ComposedLibraryResult};
pub use generate::generate_new_tests;

/// Prefix reserved for generated case ids.
pub const GENERATED_PREFIX: &str = "tnew_";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestStep {
    pub event: ServiceName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_state: Option<StateRef>,
    #[serde(default)]
    pub expected_actions: Vec<ServiceName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Library,
    Generated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestCase {
    pub id: String,
    pub owner: String,
    pub origin: Origin,
    /// Services this case exercises; decides membership in `Ts`.
    pub services: BTreeSet<ServiceName>,
    pub steps: Vec<TestStep>,
}

impl TestCase {
    /// An authored case with no steps, tagged with the given services.
    pub fn authored(
        id: impl Into<String>,
        owner: impl Into<String>,
        services: BTreeSet<ServiceName>,
    ) -> Self {
        Self {
            id: id.into(),
            owner: owner.into(),
            origin: Origin::Library,
            services,
            steps: Vec::new(),
        }
    }

    pub fn with_steps(mut self, steps: Vec<TestStep>) -> Self {
        self.steps = steps;
        self
    }

    pub fn touches(&self, services: &BTreeSet<ServiceName>) -> bool {
        !self.services.is_disjoint(services)
    }
}

/// Ordered cases with unique ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLibrary")]
pub struct TestLibrary {
    cases: Vec<TestCase>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLibrary {
    cases: Vec<TestCase>,
}

impl TryFrom<RawLibrary> for TestLibrary {
    type Error = Error;

    fn try_from(raw: RawLibrary) -> Result<Self> {
        TestLibrary::new(raw.cases)
    }
}

impl TestLibrary {
    pub fn new(cases: Vec<TestCase>) -> Result<Self> {
        let mut ids = HashSet::new();
        for c in &cases {
            if c.id.is_empty() {
                return Err(Error::Schema("test case with empty id".into()));
            }
            if !ids.insert(c.id.as_str()) {
                return Err(Error::DuplicateTestId(c.id.clone()));
            }
            if c.origin == Origin::Generated && c.services.is_empty() {
                return Err(Error::Schema(format!(
                    "generated case {} lists no services",
                    c.id
                )));
            }
        }
        Ok(Self { cases })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn cases(&self) -> &[TestCase] {
        &self.cases
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&TestCase> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.cases.iter().map(|c| c.id.as_str())
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("library serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawLibrary = serde_json::from_str(text)?;
        TestLibrary::new(raw.cases)
    }
}
