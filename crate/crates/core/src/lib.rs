//! Component composition analysis driven by statecharts.
//!
//! * [`interface`]: components as provided/required service sets and the
//!   `⊗` composition operator.
//! * [`statechart`]: the statechart model, its text DSL and interface
//!   extraction (triggers are provided, emitted actions are required).
//! * [`cig`]: the Component Interaction Graph built from a set of charts,
//!   with DOT and JSON output.
//! * [`testlib`]: test libraries, the composition law
//!   `((T1 ∪ T2) \ Ts) ∪ Tnew` and generation of `Tnew` from graph edges.
//! * [`cli`]: the `cig` command line.
//!
//! ```
//! use cig_core::{build_cig, fixtures};
//!
//! let charts = fixtures::vending_pair();
//! let cig = build_cig(&charts).unwrap();
//! assert_eq!(cig.edges().len(), 5);
//! ```

pub mod cig;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod interface;
pub mod statechart;
pub mod testlib;

pub use cig::{
    build_cig, cig_from_json, cig_to_dot, cig_to_json, classify_states, Cig, Classification,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use interface::{
    compose, compose_many, is_composable, satisfied_services, Component, CompositionResult,
    ServiceName,
};
pub use statechart::{
    extract_interfaces, parse_statechart, serialize_statechart, ChartSet, StateRef, Statechart,
};
pub use testlib::{compose_libraries, generate_new_tests, satisfied_tests, TestCase, TestLibrary};
