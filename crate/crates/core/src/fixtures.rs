//! The vending machine / dispenser pair used throughout the docs and tests.

use crate::statechart::{parse_statechart, ChartSet, Statechart};

pub const VENDING_MACHINE: &str = include_str!("../fixtures/vending_machine.sc");
pub const DISPENSER: &str = include_str!("../fixtures/dispenser.sc");

pub fn vending_machine() -> Statechart {
    parse_statechart(VENDING_MACHINE).expect("vending machine fixture parses")
}

pub fn dispenser() -> Statechart {
    parse_statechart(DISPENSER).expect("dispenser fixture parses")
}

/// Vending machine first, dispenser second.
pub fn vending_pair() -> ChartSet {
    ChartSet::new(vec![vending_machine(), dispenser()]).expect("distinct components")
}
