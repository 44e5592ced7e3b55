//! Switching-state removal, state classification and the resulting graph.
//!
//! ```bash
//! cargo run -p cig-core --example interaction_graph
//! ```

use cig_core::cig::{classification_report, cross_services, find_switching_states};
use cig_core::{build_cig, fixtures};

fn main() -> cig_core::Result<()> {
    let charts = fixtures::vending_pair();

    for (service, sides) in cross_services(&charts) {
        let show = |v: &[cig_core::StateRef]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!(
            "{service}: {} -> {}",
            show(&sides.emitters),
            show(&sides.acceptors)
        );
    }
    for s in find_switching_states(&charts) {
        println!("switching state: {s}");
    }
    print!("{}", classification_report(&charts));

    let cig = build_cig(&charts)?;
    for e in cig.edges() {
        println!("{} -> {} [{}]", e.from, e.to, e.service);
    }
    Ok(())
}
