//! Composing two components' test libraries with the generated tests.
//!
//! ```bash
//! cargo run -p cig-core --example compose_libraries
//! ```

use cig_core::interface::services;
use cig_core::testlib::{TestCase, TestLibrary};
use cig_core::{
    build_cig, compose, compose_libraries, extract_interfaces, fixtures, generate_new_tests,
};

fn main() -> cig_core::Result<()> {
    let charts = fixtures::vending_pair();
    let vending = extract_interfaces(&charts.charts()[0])?;
    let dispenser = extract_interfaces(&charts.charts()[1])?;
    let composition = compose(&vending, &dispenser)?;

    let t1 = TestLibrary::new(vec![
        TestCase::authored(
            "vm_single_coin_vend",
            "VendingMachine",
            services(["insert", "vend", "setCredit"]),
        ),
        TestCase::authored("vm_cancel", "VendingMachine", services(["cancel"])),
    ])?;
    let t2 = TestLibrary::new(vec![TestCase::authored(
        "dp_enabled_ok",
        "Dispenser",
        services(["dispense", "ok"]),
    )])?;
    let tnew = generate_new_tests(&build_cig(&charts)?, &charts)?;

    let result = compose_libraries(&t1, &t2, composition.satisfied(), &tnew)?;
    println!(
        "removed (Ts): {:?}",
        result.removed.ids().collect::<Vec<_>>()
    );
    println!(
        "retained:     {:?}",
        result.retained.ids().collect::<Vec<_>>()
    );
    println!("final:        {} cases", result.final_library.len());
    Ok(())
}
