//! Interface sets, composability and the composition operator.
//!
//! ```bash
//! cargo run -p cig-core --example component_algebra
//! ```

use cig_core::interface::services;
use cig_core::{compose, compose_many, is_composable, satisfied_services, Component};

fn main() -> cig_core::Result<()> {
    let vending = Component::new(
        "VendingMachine",
        services(["insert", "cancel", "vend", "nok", "ok"]),
        services(["setCredit", "dispense", "returnCoins"]),
    )?;
    let dispenser = Component::new(
        "Dispenser",
        services(["setCredit", "dispense"]),
        services(["nok", "ok"]),
    )?;

    println!("composable: {}", is_composable(&vending, &dispenser));
    let satisfied: Vec<_> = satisfied_services(&vending, &dispenser)
        .into_iter()
        .map(String::from)
        .collect();
    println!("satisfied:  {satisfied:?}");

    let result = compose(&vending, &dispenser)?;
    print!("{}", result.composed().to_json());

    // A provider chain folded left to right.
    let chain = [
        Component::new("Source", services(["a"]), services([] as [&str; 0]))?,
        Component::new("Relay", services(["b"]), services(["a"]))?,
        Component::new("Sink", services([] as [&str; 0]), services(["b"]))?,
    ];
    let folded = compose_many(&chain)?;
    println!("fold order: {:?}", folded.order());
    for step in folded.steps() {
        let consumed: Vec<_> = step.satisfied.iter().map(|s| s.as_str()).collect();
        println!("  {} + {} consumed {consumed:?}", step.left, step.right);
    }

    // Overlapping provided and required sets are rejected.
    let bad = Component::new("X", services(["a"]), services(["a"]));
    println!("ill-formed: {}", bad.unwrap_err());
    Ok(())
}
