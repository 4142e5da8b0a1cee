//! Graphviz export of a rotor configuration.

use std::fmt::Write as _;

use crate::equivalence::RotorCycle;
use crate::rotor::{RotorConfiguration, RotorSystem};

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph of every arc. Retrospective arcs are bold, arcs of the
/// highlighted cycle are red and bold, targets are shaded.
pub fn export_dot(
    sys: &RotorSystem,
    rho: &RotorConfiguration,
    highlight: Option<&RotorCycle>,
) -> String {
    let g = sys.graph();
    let mut out = String::from("digraph rotors {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let shade = if g.is_target(v) {
            ", style=filled, fillcolor=lightgray"
        } else {
            ""
        };
        let peripheries = if v == g.source() {
            ", peripheries=2"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} [label={}{shade}{peripheries}];",
            quote(g.label(v)),
            quote(g.label(v))
        );
    }
    for arc in g.arcs() {
        let retro = rho.slot(arc.tail) == arc.slot;
        let on_cycle = retro && highlight.is_some_and(|c| c.contains(arc.tail));
        let style = if on_cycle {
            "color=red, penwidth=2.5, style=bold"
        } else if retro {
            "color=black, penwidth=2.5, style=bold"
        } else {
            "color=gray70"
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\", {style}];",
            quote(g.label(arc.tail)),
            quote(g.label(arc.head)),
            arc.slot
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;

    fn g5() -> RotorSystem {
        RotorSystem::from_spec(&GraphSpec::from_lists(
            &[(1, &[3, 4, 5][..]), (2, &[3][..]), (3, &[4, 2][..])],
            1,
            &[4, 5],
        ))
        .unwrap()
    }

    #[test]
    fn acyclic_export_has_no_red_arcs() {
        let sys = g5();
        let rho = sys.canonical(&sys.initial_configuration()).unwrap();
        let dot = export_dot(&sys, &rho, sys.find_cycle(&rho).as_ref());
        assert!(!dot.contains("color=red"));
        assert_eq!(dot.matches("style=bold").count(), 3);
        assert_eq!(dot.matches("fillcolor=lightgray").count(), 2);
    }

    #[test]
    fn two_cycle_is_highlighted() {
        let sys = g5();
        let three = sys.graph().vertex("3").unwrap();
        let rho = sys.configuration(&[(three, 2)]).unwrap();
        let cycle = sys.find_cycle(&rho).unwrap();
        let dot = export_dot(&sys, &rho, Some(&cycle));
        assert_eq!(dot.matches("color=red").count(), 2);
        assert_eq!(dot, export_dot(&sys, &rho, Some(&cycle)));
    }
}
