use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{Origin, TestCase, TestLibrary, GENERATED_PREFIX};
use crate::error::{Error, Result};
use crate::interface::ServiceName;

/// The four libraries involved in one application of the composition law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposedLibraryResult {
    pub retained: TestLibrary,
    /// `Ts`: cases touching a satisfied service.
    pub removed: TestLibrary,
    /// `Tnew`
    pub generated: TestLibrary,
    #[serde(rename = "final")]
    pub final_library: TestLibrary,
}

impl ComposedLibraryResult {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("result serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn check_disjoint<'a>(libraries: impl IntoIterator<Item = &'a TestLibrary>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in libraries.into_iter().flat_map(TestLibrary::ids) {
        if !seen.insert(id) {
            return Err(Error::DuplicateTestId(id.to_owned()));
        }
    }
    Ok(())
}

fn check_authored(lib: &TestLibrary) -> Result<()> {
    match lib
        .cases()
        .iter()
        .find(|c| c.origin == Origin::Library && c.id.starts_with(GENERATED_PREFIX))
    {
        Some(c) => Err(Error::ReservedTestId(c.id.clone())),
        None => Ok(()),
    }
}

/// Splits `t1 ∪ t2` into the cases untouched by `satisfied` and the cases
/// (`Ts`) whose declared services intersect it. Order is preserved, `t1`
/// first.
pub fn satisfied_tests(
    t1: &TestLibrary,
    t2: &TestLibrary,
    satisfied: &BTreeSet<ServiceName>,
) -> Result<(TestLibrary, TestLibrary)> {
    check_disjoint([t1, t2])?;
    check_authored(t1)?;
    check_authored(t2)?;
    let (removed, retained): (Vec<TestCase>, Vec<TestCase>) = t1
        .cases()
        .iter()
        .chain(t2.cases())
        .cloned()
        .partition(|c| c.touches(satisfied));
    Ok((TestLibrary::new(retained)?, TestLibrary::new(removed)?))
}

/// Applies `((t1 ∪ t2) \ Ts) ∪ tnew`. The final library lists retained
/// cases first, then `tnew` in its own order.
pub fn compose_libraries(
    t1: &TestLibrary,
    t2: &TestLibrary,
    satisfied: &BTreeSet<ServiceName>,
    tnew: &TestLibrary,
) -> Result<ComposedLibraryResult> {
    check_disjoint([t1, t2, tnew])?;
    let (retained, removed) = satisfied_tests(t1, t2, satisfied)?;
    let final_library = TestLibrary::new(
        retained
            .cases()
            .iter()
            .chain(tnew.cases())
            .cloned()
            .collect(),
    )?;
    Ok(ComposedLibraryResult {
        retained,
        removed,
        generated: tnew.clone(),
        final_library,
    })
}
