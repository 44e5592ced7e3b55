//! DOT and JSON output of an interaction graph.
//!
//! ```bash
//! cargo run -p cig-core --example graph_export | dot -Tsvg > cig.svg
//! ```

use cig_core::{build_cig, cig_from_json, cig_to_dot, cig_to_json, fixtures};

fn main() -> cig_core::Result<()> {
    let cig = build_cig(&fixtures::vending_pair())?;
    let json = cig_to_json(&cig);
    assert_eq!(cig_from_json(&json)?, cig);
    eprint!("{json}");
    print!("{}", cig_to_dot(&cig));
    Ok(())
}
