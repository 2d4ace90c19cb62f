//! DOT emission: nodes become DOT nodes, arcs become directed edges with
//! the arc identifier (and label, when present) as the edge label.

use std::collections::BTreeMap;

use graphtopos::classifier::TruthValue;
use graphtopos::graph::{ArcId, FiniteGraph};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(name: &str, graph: &FiniteGraph, labels: Option<&BTreeMap<ArcId, String>>) -> String {
    render(name, graph, |a| match labels.and_then(|m| m.get(a)) {
        Some(l) => format!("{a}:{l}"),
        None => a.to_string(),
    })
}

/// DOT for the classifier, with arcs carrying their truth-value names.
pub fn omega_to_dot(graph: &FiniteGraph) -> String {
    render("omega", graph, |a| {
        TruthValue::from_id(a.as_str())
            .map(|tv| tv.label().to_owned())
            .unwrap_or_else(|| a.to_string())
    })
}

fn render(name: &str, graph: &FiniteGraph, edge_label: impl Fn(&ArcId) -> String) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}\" {{\n", escape(name)));
    for n in graph.nodes() {
        out.push_str(&format!("  \"{}\";\n", escape(n.as_str())));
    }
    for (a, s, t) in graph.arcs() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            escape(s.as_str()),
            escape(t.as_str()),
            escape(&edge_label(a)),
        ));
    }
    out.push_str("}\n");
    out
}
