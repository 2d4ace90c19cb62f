//! Exhaustive enumeration of graph morphisms.
//!
//! Hom-sets are the basic observable of the category: exponentials, the
//! classifier uniqueness checks and every universal-property test are built
//! on top of [`enumerate_homs`]. Enumeration is backtracking over node
//! assignments (pruned by arc compatibility) followed by an odometer over
//! the admissible arc assignments, which yields a deterministic order:
//! lexicographic on the sorted node assignment vector, then on the sorted
//! arc assignment vector.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{representable_arc, representable_node, ArcId, FiniteGraph, GraphMorphism, NodeId};

/// Default bound on `|H(N)|^|G(N)| * |H(A)|^|G(A)|`, the raw candidate count
/// before any pruning. Exceeding it is a hard error, never a truncation.
pub const DEFAULT_HOM_CAP: f64 = 1e7;

/// Raw candidate count for morphisms `G -> H` before pruning.
pub fn candidate_count(g: &FiniteGraph, h: &FiniteGraph) -> f64 {
    (h.node_count() as f64).powi(g.node_count() as i32)
        * (h.arc_count() as f64).powi(g.arc_count() as i32)
}

/// All morphisms `G -> H` under the default cap.
pub fn enumerate_homs(g: &FiniteGraph, h: &FiniteGraph) -> Result<Vec<GraphMorphism>> {
    enumerate_homs_capped(g, h, DEFAULT_HOM_CAP)
}

/// Number of morphisms `G -> H`.
pub fn hom_count(g: &FiniteGraph, h: &FiniteGraph) -> Result<usize> {
    Ok(enumerate_homs(g, h)?.len())
}

/// All morphisms `G -> H`, complete and duplicate-free, in a deterministic
/// order. Errors with [`Error::SizeCap`] when the raw candidate count
/// exceeds `cap`.
pub fn enumerate_homs_capped(
    g: &FiniteGraph,
    h: &FiniteGraph,
    cap: f64,
) -> Result<Vec<GraphMorphism>> {
    let candidates = candidate_count(g, h);
    if candidates > cap {
        return Err(Error::SizeCap {
            what: "morphism enumeration",
            candidates,
            cap,
        });
    }

    let g_nodes: Vec<&NodeId> = g.nodes().collect();
    let h_nodes: Vec<&NodeId> = h.nodes().collect();
    let g_arcs: Vec<&ArcId> = g.arc_ids().collect();

    if !g_nodes.is_empty() && h_nodes.is_empty() {
        return Ok(Vec::new());
    }

    // Arcs of h indexed by (source, target); vectors are sorted by arc id.
    let mut h_by_pair: BTreeMap<(&NodeId, &NodeId), Vec<&ArcId>> = BTreeMap::new();
    for (a, s, t) in h.arcs() {
        h_by_pair.entry((s, t)).or_default().push(a);
    }

    let node_index: BTreeMap<&NodeId, usize> =
        g_nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    // For each node position, the arcs whose endpoints are fully assigned
    // once that position is chosen.
    let mut arcs_ready_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g_nodes.len()];
    let g_arc_endpoints: Vec<(usize, usize)> = g_arcs
        .iter()
        .map(|a| (node_index[g.src(a)], node_index[g.tgt(a)]))
        .collect();
    for &(si, ti) in &g_arc_endpoints {
        arcs_ready_at[si.max(ti)].push((si, ti));
    }

    let mut out = Vec::new();
    let mut assignment: Vec<usize> = Vec::with_capacity(g_nodes.len());

    // Recursive node assignment with arc-compatibility pruning, then an
    // odometer over arc choices.
    struct Search<'a> {
        g: &'a FiniteGraph,
        h: &'a FiniteGraph,
        g_nodes: &'a [&'a NodeId],
        h_nodes: &'a [&'a NodeId],
        g_arcs: &'a [&'a ArcId],
        g_arc_endpoints: &'a [(usize, usize)],
        arcs_ready_at: &'a [Vec<(usize, usize)>],
        h_by_pair: &'a BTreeMap<(&'a NodeId, &'a NodeId), Vec<&'a ArcId>>,
        out: Vec<GraphMorphism>,
    }

    impl<'a> Search<'a> {
        fn node_step(&mut self, assignment: &mut Vec<usize>) {
            if assignment.len() == self.g_nodes.len() {
                self.arc_sweep(assignment);
                return;
            }
            let pos = assignment.len();
            for j in 0..self.h_nodes.len() {
                let ok = self.arcs_ready_at[pos].iter().all(|&(si, ti)| {
                    let sj = if si == pos { j } else { assignment[si] };
                    let tj = if ti == pos { j } else { assignment[ti] };
                    self.h_by_pair
                        .contains_key(&(self.h_nodes[sj], self.h_nodes[tj]))
                });
                if !ok {
                    continue;
                }
                assignment.push(j);
                self.node_step(assignment);
                assignment.pop();
            }
        }

        fn arc_sweep(&mut self, assignment: &[usize]) {
            let node_map: BTreeMap<NodeId, NodeId> = self
                .g_nodes
                .iter()
                .zip(assignment)
                .map(|(n, j)| ((*n).clone(), self.h_nodes[*j].clone()))
                .collect();
            let choices: Vec<&Vec<&ArcId>> = self
                .g_arc_endpoints
                .iter()
                .map(|&(si, ti)| {
                    self.h_by_pair
                        .get(&(self.h_nodes[assignment[si]], self.h_nodes[assignment[ti]]))
                        .expect("pruned to nonempty")
                })
                .collect();
            if self.g_arcs.is_empty() {
                self.out.push(GraphMorphism::assemble(
                    self.g.clone(),
                    self.h.clone(),
                    node_map,
                    BTreeMap::new(),
                ));
                return;
            }
            let mut odometer = vec![0usize; self.g_arcs.len()];
            loop {
                let arc_map: BTreeMap<ArcId, ArcId> = self
                    .g_arcs
                    .iter()
                    .zip(&odometer)
                    .enumerate()
                    .map(|(i, (a, k))| ((*a).clone(), choices[i][*k].clone()))
                    .collect();
                self.out.push(GraphMorphism::assemble(
                    self.g.clone(),
                    self.h.clone(),
                    node_map.clone(),
                    arc_map,
                ));
                // Advance the odometer, last position fastest.
                let mut i = self.g_arcs.len();
                loop {
                    if i == 0 {
                        return;
                    }
                    i -= 1;
                    odometer[i] += 1;
                    if odometer[i] < choices[i].len() {
                        break;
                    }
                    odometer[i] = 0;
                }
            }
        }
    }

    let mut search = Search {
        g,
        h,
        g_nodes: &g_nodes,
        h_nodes: &h_nodes,
        g_arcs: &g_arcs,
        g_arc_endpoints: &g_arc_endpoints,
        arcs_ready_at: &arcs_ready_at,
        h_by_pair: &h_by_pair,
        out: Vec::new(),
    };
    search.node_step(&mut assignment);
    out.append(&mut search.out);
    Ok(out)
}

/// Representable-probe equality: `f = g` iff `f . h = g . h` for every
/// probe `h` from the single node and from the single arc. Coincides with
/// componentwise equality because the representables generate the topos.
pub fn generators_check(f: &GraphMorphism, g: &GraphMorphism) -> Result<bool> {
    if !f.is_parallel_to(g) {
        return Err(Error::NotParallel);
    }
    for probe_src in [representable_node(), representable_arc()] {
        for h in enumerate_homs(&probe_src, f.dom())? {
            if h.then(f)? != h.then(g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
