use std::fmt::{self, Write};

use super::{Statechart, Transition};

fn write_transition(out: &mut String, t: &Transition) -> fmt::Result {
    write!(out, "transition {} -> {}", t.source, t.target)?;
    if let Some(event) = &t.event {
        write!(out, " on {event}")?;
    }
    if let Some(guard) = &t.guard {
        write!(out, " guard [{guard}]")?;
    }
    for a in &t.actions {
        write!(out, " do {}", a.action)?;
        if !a.params.is_empty() {
            write!(out, "({})", a.params.join(","))?;
        }
    }
    out.push('\n');
    Ok(())
}

/// Canonical DSL text: header, states and transitions in declaration order,
/// closed by `end`.
pub fn serialize_statechart(chart: &Statechart) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "component {}", chart.component);
    for s in &chart.states {
        let _ = writeln!(out, "state {s}");
    }
    let _ = writeln!(out, "initial {}", chart.initial);
    for t in &chart.transitions {
        let _ = write_transition(&mut out, t);
    }
    out.push_str("end\n");
    out
}

impl fmt::Display for Statechart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_statechart(self))
    }
}
