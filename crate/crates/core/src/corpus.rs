//! Exhaustive test corpora: every graph (and every labelled graph) up to
//! isomorphism within declared size caps. Oracles that quantify over "all
//! objects" are run relative to such a corpus, so corpus generation is part
//! of the library rather than the test suite.

use std::collections::BTreeMap;

use crate::graph::{are_isomorphic, iso_search, ArcId, FiniteGraph, GraphMorphism};
use crate::slice::{Alphabet, LabelledGraph};

/// Every graph with at most `max_nodes` nodes and `max_arcs` arcs, one
/// representative per isomorphism class, in a deterministic order. Nodes
/// are named `v0, v1, ...` and arcs `a0, a1, ...`.
pub fn graph_corpus(max_nodes: usize, max_arcs: usize) -> Vec<FiniteGraph> {
    let mut out: Vec<FiniteGraph> = Vec::new();
    for n in 0..=max_nodes {
        let node_names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .collect();
        for m in 0..=max_arcs {
            if n == 0 && m > 0 {
                break;
            }
            // Arc identifiers are interchangeable, so a sorted endpoint
            // multiset is enough: combinations with replacement.
            let mut chosen: Vec<usize> = Vec::new();
            combinations_with_replacement(pairs.len(), m, &mut chosen, &mut |combo| {
                let nodes: Vec<&str> = node_names.iter().map(|s| s.as_str()).collect();
                let arcs: Vec<(String, &str, &str)> = combo
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| {
                        let (s, t) = pairs[p];
                        (format!("a{i}"), nodes[s], nodes[t])
                    })
                    .collect();
                let arc_refs: Vec<(&str, &str, &str)> = arcs
                    .iter()
                    .map(|(a, s, t)| (a.as_str(), *s, *t))
                    .collect();
                let candidate = FiniteGraph::build(&nodes, &arc_refs).expect("corpus graph");
                let duplicate = out
                    .iter()
                    .filter(|g| g.node_count() == n && g.arc_count() == m)
                    .any(|g| are_isomorphic(g, &candidate).is_some());
                if !duplicate {
                    out.push(candidate);
                }
            });
        }
    }
    out
}

fn combinations_with_replacement(
    options: usize,
    slots: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == slots {
        visit(chosen);
        return;
    }
    let start = chosen.last().copied().unwrap_or(0);
    for i in start..options {
        chosen.push(i);
        combinations_with_replacement(options, slots, chosen, visit);
        chosen.pop();
    }
}

/// The complete graph with self-loops on `n` nodes: exactly one arc for
/// every ordered pair of nodes.
pub fn complete_with_loops(n: usize) -> FiniteGraph {
    let nodes: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let node_refs: Vec<&str> = nodes.iter().map(|s| s.as_str()).collect();
    let arcs: Vec<(String, &str, &str)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (format!("e{i}.{j}"), node_refs[i], node_refs[j]))
        .collect();
    let arc_refs: Vec<(&str, &str, &str)> = arcs.iter().map(|(a, s, t)| (a.as_str(), *s, *t)).collect();
    FiniteGraph::build(&node_refs, &arc_refs).expect("complete graph")
}

/// Isomorphism of labelled graphs: an isomorphism of the underlying graphs
/// matching arcs only within equal labels.
pub fn are_labelled_isomorphic(l: &LabelledGraph, m: &LabelledGraph) -> Option<GraphMorphism> {
    if l.alphabet() != m.alphabet() {
        return None;
    }
    let class_l = |a: &ArcId| l.label(a).to_owned();
    let class_m = |a: &ArcId| m.label(a).to_owned();
    iso_search(l.graph(), m.graph(), &class_l, &class_m)
}

/// Every labelled graph over `alphabet` within the caps, one representative
/// per labelled-isomorphism class: each corpus graph is decorated with every
/// labelling of its arcs, and duplicates are removed.
pub fn labelled_corpus(
    max_nodes: usize,
    max_arcs: usize,
    alphabet: &Alphabet,
) -> Vec<LabelledGraph> {
    let symbols: Vec<&str> = alphabet.symbols().map(|s| s.as_str()).collect();
    let mut out: Vec<LabelledGraph> = Vec::new();
    for g in graph_corpus(max_nodes, max_arcs) {
        let arcs: Vec<ArcId> = g.arc_ids().cloned().collect();
        let mut odometer = vec![0usize; arcs.len()];
        loop {
            let labels: BTreeMap<ArcId, String> = arcs
                .iter()
                .zip(&odometer)
                .map(|(a, &k)| (a.clone(), symbols[k].to_owned()))
                .collect();
            let candidate =
                LabelledGraph::new(g.clone(), labels, alphabet.clone()).expect("total labelling");
            let duplicate = out
                .iter()
                .filter(|l| {
                    l.graph().node_count() == g.node_count()
                        && l.graph().arc_count() == g.arc_count()
                })
                .any(|l| are_labelled_isomorphic(l, &candidate).is_some());
            if !duplicate {
                out.push(candidate);
            }
            // Advance the labelling odometer.
            let mut i = arcs.len();
            let mut wrapped = true;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                odometer[i] += 1;
                if odometer[i] < symbols.len() {
                    wrapped = false;
                    break;
                }
                odometer[i] = 0;
            }
            if wrapped {
                break;
            }
        }
    }
    out
}
