//! Parsing, canonical serialization and interface extraction.
//!
//! ```bash
//! cargo run -p cig-core --example statechart_dsl
//! ```

use cig_core::{extract_interfaces, fixtures, parse_statechart, serialize_statechart};

fn main() -> cig_core::Result<()> {
    let chart = parse_statechart(fixtures::VENDING_MACHINE)?;
    println!(
        "{} states, initial {}",
        chart.states().len(),
        chart.initial()
    );
    print!("{}", serialize_statechart(&chart));

    let component = extract_interfaces(&chart)?;
    let show = |set: &std::collections::BTreeSet<cig_core::ServiceName>| {
        set.iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("provided: {}", show(component.provided()));
    println!("required: {}", show(component.required()));

    let broken = "component A\nstate X\ninitial X\ntransition X -> Y on go\n";
    match parse_statechart(broken) {
        Ok(_) => unreachable!(),
        Err(e) => println!("diagnostic: {e}"),
    }
    Ok(())
}
