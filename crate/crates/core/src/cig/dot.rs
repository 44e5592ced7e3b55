use std::fmt::Write;

use super::Cig;
use crate::statechart::StateRef;

fn node_id(s: &StateRef) -> String {
    format!("\"{}.{}\"", s.component, s.state)
}

/// Graphviz rendering: one dashed cluster per component, ellipse interface
/// nodes labelled with their kinds, edges labelled with the service.
pub fn cig_to_dot(cig: &Cig) -> String {
    let mut out = String::new();
    out.push_str("digraph CIG {\n");
    out.push_str("  node [shape=ellipse];\n");
    for component in cig.components() {
        let _ = writeln!(out, "  subgraph \"cluster_{component}\" {{");
        let _ = writeln!(out, "    label=\"{component}\";");
        out.push_str("    style=dashed;\n");
        for n in cig.nodes().iter().filter(|n| &n.component == component) {
            let _ = writeln!(
                out,
                "    {} [label=\"{}\\n[{}]\"];",
                node_id(&n.state_ref()),
                n.state,
                n.classification.label()
            );
        }
        out.push_str("  }\n");
    }
    for e in cig.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            node_id(&e.from),
            node_id(&e.to),
            e.service
        );
    }
    out.push_str("}\n");
    out
}
