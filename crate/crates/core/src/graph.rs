//! Finite directed multigraphs, their morphisms, and canonical subobjects.
//!
//! A [`FiniteGraph`] is a node set, an arc set, and total source/target
//! assignments. A [`GraphMorphism`] maps nodes to nodes and arcs to arcs so
//! that sources and targets are preserved. A [`Subobject`] is the canonical
//! representative of a mono into a graph: a node subset together with an arc
//! subset whose endpoints all lie in the node subset.
//!
//! Everything is immutable after construction, so values can be shared
//! freely across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type! {
    /// Opaque node identifier. Ordering is lexicographic on the raw string.
    NodeId
}

id_type! {
    /// Opaque arc identifier. Ordering is lexicographic on the raw string.
    ArcId
}

/// Canonical identifier for a pair, used by products and pullbacks.
pub(crate) fn pair_id(left: &str, right: &str) -> String {
    format!("({left},{right})")
}

/// A finite directed multigraph. Parallel arcs and self-loops are allowed.
///
/// Node and arc identifiers are unique within their sort and the two sorts
/// are disjoint, so a mixed list of identifiers is unambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    nodes: BTreeSet<NodeId>,
    arcs: BTreeMap<ArcId, (NodeId, NodeId)>,
}

impl FiniteGraph {
    /// Builds a graph, validating that endpoints exist and identifiers are
    /// unique within their sort and disjoint across sorts.
    pub fn new<N, A>(nodes: N, arcs: A) -> Result<Self>
    where
        N: IntoIterator<Item = NodeId>,
        A: IntoIterator<Item = (ArcId, NodeId, NodeId)>,
    {
        let mut node_set = BTreeSet::new();
        for n in nodes {
            if !node_set.insert(n.clone()) {
                return Err(Error::DuplicateId {
                    sort: "node",
                    id: n.0,
                });
            }
        }
        let mut arc_map = BTreeMap::new();
        for (a, s, t) in arcs {
            if node_set.contains(a.as_str()) {
                return Err(Error::SortCollision { id: a.0 });
            }
            if !node_set.contains(&s) {
                return Err(Error::DanglingEndpoint {
                    arc: a.0,
                    which: "source",
                    node: s.0,
                });
            }
            if !node_set.contains(&t) {
                return Err(Error::DanglingEndpoint {
                    arc: a.0,
                    which: "target",
                    node: t.0,
                });
            }
            if arc_map.insert(a.clone(), (s, t)).is_some() {
                return Err(Error::DuplicateId {
                    sort: "arc",
                    id: a.0,
                });
            }
        }
        Ok(FiniteGraph {
            nodes: node_set,
            arcs: arc_map,
        })
    }

    /// Convenience constructor from string slices, mostly for tests and
    /// fixtures: `build(&["x", "y"], &[("a", "x", "y")])`.
    pub fn build(nodes: &[&str], arcs: &[(&str, &str, &str)]) -> Result<Self> {
        FiniteGraph::new(
            nodes.iter().map(|n| NodeId::from(*n)),
            arcs.iter()
                .map(|(a, s, t)| (ArcId::from(*a), NodeId::from(*s), NodeId::from(*t))),
        )
    }

    /// The graph with no nodes and no arcs.
    pub fn empty() -> Self {
        FiniteGraph {
            nodes: BTreeSet::new(),
            arcs: BTreeMap::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Nodes in ascending identifier order.
    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.nodes.iter()
    }

    /// Arc identifiers in ascending order.
    pub fn arc_ids(&self) -> impl Iterator<Item = &ArcId> + '_ {
        self.arcs.keys()
    }

    /// `(arc, source, target)` triples in ascending arc order.
    pub fn arcs(&self) -> impl Iterator<Item = (&ArcId, &NodeId, &NodeId)> + '_ {
        self.arcs.iter().map(|(a, (s, t))| (a, s, t))
    }

    pub fn has_node(&self, n: &NodeId) -> bool {
        self.nodes.contains(n)
    }

    pub fn has_arc(&self, a: &ArcId) -> bool {
        self.arcs.contains_key(a)
    }

    /// Source of an arc. Panics if the arc does not belong to this graph.
    pub fn src(&self, a: &ArcId) -> &NodeId {
        &self.arcs.get(a).expect("arc not in graph").0
    }

    /// Target of an arc. Panics if the arc does not belong to this graph.
    pub fn tgt(&self, a: &ArcId) -> &NodeId {
        &self.arcs.get(a).expect("arc not in graph").1
    }

    pub fn endpoints(&self, a: &ArcId) -> Option<(&NodeId, &NodeId)> {
        self.arcs.get(a).map(|(s, t)| (s, t))
    }

    /// Arcs from `u` to `v`, in ascending identifier order.
    pub fn arcs_between(&self, u: &NodeId, v: &NodeId) -> Vec<&ArcId> {
        self.arcs
            .iter()
            .filter(|(_, (s, t))| s == u && t == v)
            .map(|(a, _)| a)
            .collect()
    }

    /// All canonical subobjects, in a deterministic order: node subsets are
    /// enumerated by binary counting over the sorted node list, and for each
    /// node subset the admissible arc subsets likewise. Meant for desk-scale
    /// graphs; the result has up to `2^(nodes + arcs)` entries.
    pub fn subobjects(&self) -> Vec<Subobject> {
        let nodes: Vec<&NodeId> = self.nodes.iter().collect();
        let mut out = Vec::new();
        for node_mask in 0u64..(1u64 << nodes.len()) {
            let node_subset: BTreeSet<NodeId> = nodes
                .iter()
                .enumerate()
                .filter(|(i, _)| node_mask >> i & 1 == 1)
                .map(|(_, n)| (*n).clone())
                .collect();
            let available: Vec<&ArcId> = self
                .arcs
                .iter()
                .filter(|(_, (s, t))| node_subset.contains(s) && node_subset.contains(t))
                .map(|(a, _)| a)
                .collect();
            for arc_mask in 0u64..(1u64 << available.len()) {
                let arc_subset: BTreeSet<ArcId> = available
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| arc_mask >> i & 1 == 1)
                    .map(|(_, a)| (*a).clone())
                    .collect();
                out.push(Subobject {
                    ambient: self.clone(),
                    nodes: node_subset.clone(),
                    arcs: arc_subset,
                });
            }
        }
        out
    }
}

/// The representable graph on the node object: a single node, no arcs.
pub fn representable_node() -> FiniteGraph {
    FiniteGraph::build(&["N"], &[]).expect("static graph")
}

/// The representable graph on the arc object: one arc `A` from `s` to `t`.
pub fn representable_arc() -> FiniteGraph {
    FiniteGraph::build(&["s", "t"], &[("A", "s", "t")]).expect("static graph")
}

/// A graph morphism: node and arc assignments preserving source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    dom: FiniteGraph,
    cod: FiniteGraph,
    node_map: BTreeMap<NodeId, NodeId>,
    arc_map: BTreeMap<ArcId, ArcId>,
}

/// Arcs of `dom` on which the given assignments fail to preserve source or
/// target. Empty iff the assignments form a morphism.
pub fn naturality_violations(
    dom: &FiniteGraph,
    cod: &FiniteGraph,
    node_map: &BTreeMap<NodeId, NodeId>,
    arc_map: &BTreeMap<ArcId, ArcId>,
) -> Vec<ArcId> {
    let mut bad = Vec::new();
    for (a, s, t) in dom.arcs() {
        let (img, ns, nt) = match (arc_map.get(a), node_map.get(s), node_map.get(t)) {
            (Some(img), Some(ns), Some(nt)) => (img, ns, nt),
            _ => {
                bad.push(a.clone());
                continue;
            }
        };
        match cod.endpoints(img) {
            Some((is, it)) if is == ns && it == nt => {}
            _ => bad.push(a.clone()),
        }
    }
    bad
}

impl GraphMorphism {
    /// Builds a morphism, validating totality of both assignments and the
    /// source/target preservation on every arc.
    pub fn new(
        dom: &FiniteGraph,
        cod: &FiniteGraph,
        node_map: BTreeMap<NodeId, NodeId>,
        arc_map: BTreeMap<ArcId, ArcId>,
    ) -> Result<Self> {
        for n in dom.nodes() {
            match node_map.get(n) {
                None => {
                    return Err(Error::MissingImage {
                        what: "node map",
                        id: n.to_string(),
                    })
                }
                Some(img) if !cod.has_node(img) => {
                    return Err(Error::UnknownId {
                        what: "node map",
                        id: img.to_string(),
                    })
                }
                _ => {}
            }
        }
        for n in node_map.keys() {
            if !dom.has_node(n) {
                return Err(Error::UnknownId {
                    what: "node map",
                    id: n.to_string(),
                });
            }
        }
        for a in dom.arc_ids() {
            match arc_map.get(a) {
                None => {
                    return Err(Error::MissingImage {
                        what: "arc map",
                        id: a.to_string(),
                    })
                }
                Some(img) if !cod.has_arc(img) => {
                    return Err(Error::UnknownId {
                        what: "arc map",
                        id: img.to_string(),
                    })
                }
                _ => {}
            }
        }
        for a in arc_map.keys() {
            if !dom.has_arc(a) {
                return Err(Error::UnknownId {
                    what: "arc map",
                    id: a.to_string(),
                });
            }
        }
        let bad = naturality_violations(dom, cod, &node_map, &arc_map);
        if !bad.is_empty() {
            return Err(Error::NotNatural {
                arcs: bad.into_iter().map(|a| a.0).collect(),
            });
        }
        Ok(GraphMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            node_map,
            arc_map,
        })
    }

    /// Convenience constructor from string pairs, mostly for tests.
    pub fn build(
        dom: &FiniteGraph,
        cod: &FiniteGraph,
        nodes: &[(&str, &str)],
        arcs: &[(&str, &str)],
    ) -> Result<Self> {
        GraphMorphism::new(
            dom,
            cod,
            nodes
                .iter()
                .map(|(k, v)| (NodeId::from(*k), NodeId::from(*v)))
                .collect(),
            arcs.iter()
                .map(|(k, v)| (ArcId::from(*k), ArcId::from(*v)))
                .collect(),
        )
    }

    /// Internal constructor for assignments already known to be a morphism.
    pub(crate) fn assemble(
        dom: FiniteGraph,
        cod: FiniteGraph,
        node_map: BTreeMap<NodeId, NodeId>,
        arc_map: BTreeMap<ArcId, ArcId>,
    ) -> Self {
        debug_assert!(naturality_violations(&dom, &cod, &node_map, &arc_map).is_empty());
        GraphMorphism {
            dom,
            cod,
            node_map,
            arc_map,
        }
    }

    pub fn identity(g: &FiniteGraph) -> Self {
        GraphMorphism {
            dom: g.clone(),
            cod: g.clone(),
            node_map: g.nodes().map(|n| (n.clone(), n.clone())).collect(),
            arc_map: g.arc_ids().map(|a| (a.clone(), a.clone())).collect(),
        }
    }

    pub fn dom(&self) -> &FiniteGraph {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteGraph {
        &self.cod
    }

    pub fn node_map(&self) -> &BTreeMap<NodeId, NodeId> {
        &self.node_map
    }

    pub fn arc_map(&self) -> &BTreeMap<ArcId, ArcId> {
        &self.arc_map
    }

    /// Image of a node. Panics if the node is not in the domain.
    pub fn on_node(&self, n: &NodeId) -> &NodeId {
        self.node_map.get(n).expect("node not in domain")
    }

    /// Image of an arc. Panics if the arc is not in the domain.
    pub fn on_arc(&self, a: &ArcId) -> &ArcId {
        self.arc_map.get(a).expect("arc not in domain")
    }

    pub fn is_parallel_to(&self, other: &GraphMorphism) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    /// Composition in diagram order: `self` then `other`.
    pub fn then(&self, other: &GraphMorphism) -> Result<GraphMorphism> {
        if self.cod != other.dom {
            return Err(Error::CompositionMismatch);
        }
        let node_map = self
            .node_map
            .iter()
            .map(|(k, v)| (k.clone(), other.on_node(v).clone()))
            .collect();
        let arc_map = self
            .arc_map
            .iter()
            .map(|(k, v)| (k.clone(), other.on_arc(v).clone()))
            .collect();
        Ok(GraphMorphism::assemble(
            self.dom.clone(),
            other.cod.clone(),
            node_map,
            arc_map,
        ))
    }

    /// Monomorphisms are exactly the pointwise injections on both sorts.
    pub fn is_mono(&self) -> bool {
        let node_images: BTreeSet<_> = self.node_map.values().collect();
        let arc_images: BTreeSet<_> = self.arc_map.values().collect();
        node_images.len() == self.node_map.len() && arc_images.len() == self.arc_map.len()
    }

    /// Epimorphisms are exactly the pointwise surjections on both sorts.
    pub fn is_epi(&self) -> bool {
        let node_images: BTreeSet<_> = self.node_map.values().collect();
        let arc_images: BTreeSet<_> = self.arc_map.values().collect();
        node_images.len() == self.cod.node_count() && arc_images.len() == self.cod.arc_count()
    }

    /// The image as a canonical subobject of the codomain. Naturality makes
    /// the arc image automatically endpoint-closed.
    pub fn image(&self) -> Subobject {
        Subobject {
            ambient: self.cod.clone(),
            nodes: self.node_map.values().cloned().collect(),
            arcs: self.arc_map.values().cloned().collect(),
        }
    }

    /// Canonical subobject represented by a monomorphism.
    pub fn canonical_subobject(&self) -> Result<Subobject> {
        if !self.is_mono() {
            return Err(Error::NotMono);
        }
        Ok(self.image())
    }
}

/// A canonical subobject: node and arc subsets of an ambient graph, with
/// every selected arc having both endpoints selected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject {
    ambient: FiniteGraph,
    nodes: BTreeSet<NodeId>,
    arcs: BTreeSet<ArcId>,
}

impl Subobject {
    /// Builds a subobject, validating membership and endpoint closure.
    pub fn new(
        ambient: &FiniteGraph,
        nodes: BTreeSet<NodeId>,
        arcs: BTreeSet<ArcId>,
    ) -> Result<Self> {
        for n in &nodes {
            if !ambient.has_node(n) {
                return Err(Error::UnknownId {
                    what: "subobject node",
                    id: n.to_string(),
                });
            }
        }
        for a in &arcs {
            let (s, t) = ambient.endpoints(a).ok_or_else(|| Error::UnknownId {
                what: "subobject arc",
                id: a.to_string(),
            })?;
            if !nodes.contains(s) || !nodes.contains(t) {
                return Err(Error::NotEndpointClosed { arc: a.to_string() });
            }
        }
        Ok(Subobject {
            ambient: ambient.clone(),
            nodes,
            arcs,
        })
    }

    /// Convenience constructor from string slices.
    pub fn build(ambient: &FiniteGraph, nodes: &[&str], arcs: &[&str]) -> Result<Self> {
        Subobject::new(
            ambient,
            nodes.iter().map(|n| NodeId::from(*n)).collect(),
            arcs.iter().map(|a| ArcId::from(*a)).collect(),
        )
    }

    pub fn full(ambient: &FiniteGraph) -> Self {
        Subobject {
            ambient: ambient.clone(),
            nodes: ambient.nodes().cloned().collect(),
            arcs: ambient.arc_ids().cloned().collect(),
        }
    }

    pub fn empty(ambient: &FiniteGraph) -> Self {
        Subobject {
            ambient: ambient.clone(),
            nodes: BTreeSet::new(),
            arcs: BTreeSet::new(),
        }
    }

    pub fn ambient(&self) -> &FiniteGraph {
        &self.ambient
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn arcs(&self) -> &BTreeSet<ArcId> {
        &self.arcs
    }

    pub fn has_node(&self, n: &NodeId) -> bool {
        self.nodes.contains(n)
    }

    pub fn has_arc(&self, a: &ArcId) -> bool {
        self.arcs.contains(a)
    }

    pub fn is_full(&self) -> bool {
        self.nodes.len() == self.ambient.node_count() && self.arcs.len() == self.ambient.arc_count()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.arcs.is_empty()
    }

    /// Inclusion order on subobjects of the same ambient graph.
    pub fn contains(&self, other: &Subobject) -> bool {
        self.ambient == other.ambient
            && other.nodes.is_subset(&self.nodes)
            && other.arcs.is_subset(&self.arcs)
    }

    /// The subobject as a graph in its own right, keeping identifiers.
    pub fn to_graph(&self) -> FiniteGraph {
        FiniteGraph {
            nodes: self.nodes.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| {
                    let (s, t) = self.ambient.endpoints(a).expect("arc in ambient");
                    (a.clone(), (s.clone(), t.clone()))
                })
                .collect(),
        }
    }

    /// The inclusion morphism of [`Subobject::to_graph`] into the ambient.
    pub fn inclusion(&self) -> GraphMorphism {
        let g = self.to_graph();
        GraphMorphism::assemble(
            g,
            self.ambient.clone(),
            self.nodes.iter().map(|n| (n.clone(), n.clone())).collect(),
            self.arcs.iter().map(|a| (a.clone(), a.clone())).collect(),
        )
    }

    /// Preimage along a morphism into the ambient graph: the subobject of
    /// `m`'s domain whose nodes and arcs map into `self`. This is the
    /// pullback of the subobject along `m`.
    pub fn preimage_along(&self, m: &GraphMorphism) -> Result<Subobject> {
        if *m.cod() != self.ambient {
            return Err(Error::CompositionMismatch);
        }
        let nodes = m
            .dom()
            .nodes()
            .filter(|n| self.nodes.contains(m.on_node(n)))
            .cloned()
            .collect();
        let arcs = m
            .dom()
            .arc_ids()
            .filter(|a| self.arcs.contains(m.on_arc(a)))
            .cloned()
            .collect();
        // Naturality keeps the preimage endpoint-closed.
        Subobject::new(m.dom(), nodes, arcs)
    }
}

/// Searches for an isomorphism, exhaustively with degree-profile pruning.
/// Returns one witness when the graphs are isomorphic.
pub fn are_isomorphic(g: &FiniteGraph, h: &FiniteGraph) -> Option<GraphMorphism> {
    iso_search(g, h, &|_| String::new(), &|_| String::new())
}

/// Isomorphism search refined by an arc classifier: arcs may only be matched
/// when their classes agree. `are_isomorphic` uses the trivial class; the
/// labelled-graph variant keys arcs by their label.
pub(crate) fn iso_search(
    g: &FiniteGraph,
    h: &FiniteGraph,
    class_g: &dyn Fn(&ArcId) -> String,
    class_h: &dyn Fn(&ArcId) -> String,
) -> Option<GraphMorphism> {
    if g.node_count() != h.node_count() || g.arc_count() != h.arc_count() {
        return None;
    }

    fn degree_profile<'a>(
        gr: &'a FiniteGraph,
        class: &dyn Fn(&ArcId) -> String,
    ) -> BTreeMap<&'a NodeId, BTreeMap<(bool, String), usize>> {
        let mut per_node: BTreeMap<&NodeId, BTreeMap<(bool, String), usize>> =
            gr.nodes().map(|n| (n, BTreeMap::new())).collect();
        for (a, s, t) in gr.arcs() {
            let c = class(a);
            *per_node
                .get_mut(s)
                .unwrap()
                .entry((true, c.clone()))
                .or_insert(0) += 1;
            *per_node.get_mut(t).unwrap().entry((false, c)).or_insert(0) += 1;
        }
        per_node
    }
    let prof_g = degree_profile(g, class_g);
    let prof_h = degree_profile(h, class_h);
    {
        let mut gm: Vec<_> = prof_g.values().collect();
        let mut hm: Vec<_> = prof_h.values().collect();
        gm.sort();
        hm.sort();
        if gm != hm {
            return None;
        }
    }

    // Arcs from u to v grouped by class, sorted for a deterministic witness.
    fn arcs_by_pair<'a>(
        gr: &'a FiniteGraph,
        class: &dyn Fn(&ArcId) -> String,
    ) -> BTreeMap<(&'a NodeId, &'a NodeId), BTreeMap<String, Vec<&'a ArcId>>> {
        let mut m: BTreeMap<(&NodeId, &NodeId), BTreeMap<String, Vec<&ArcId>>> = BTreeMap::new();
        for (a, s, t) in gr.arcs() {
            m.entry((s, t)).or_default().entry(class(a)).or_default().push(a);
        }
        m
    }
    let pairs_g = arcs_by_pair(g, class_g);
    let pairs_h = arcs_by_pair(h, class_h);

    let g_nodes: Vec<&NodeId> = g.nodes().collect();
    let h_nodes: Vec<&NodeId> = h.nodes().collect();
    let n = g_nodes.len();

    let class_count = |pairs: &BTreeMap<(&NodeId, &NodeId), BTreeMap<String, Vec<&ArcId>>>,
                       u: &NodeId,
                       v: &NodeId|
     -> BTreeMap<String, usize> {
        pairs
            .get(&(u, v))
            .map(|by_class| {
                by_class
                    .iter()
                    .map(|(c, arcs)| (c.clone(), arcs.len()))
                    .collect()
            })
            .unwrap_or_default()
    };

    struct IsoSearch<'a> {
        g_nodes: &'a [&'a NodeId],
        h_nodes: &'a [&'a NodeId],
        prof_g: &'a BTreeMap<&'a NodeId, BTreeMap<(bool, String), usize>>,
        prof_h: &'a BTreeMap<&'a NodeId, BTreeMap<(bool, String), usize>>,
        count_g: &'a dyn Fn(&NodeId, &NodeId) -> BTreeMap<String, usize>,
        count_h: &'a dyn Fn(&NodeId, &NodeId) -> BTreeMap<String, usize>,
        used: Vec<bool>,
    }

    impl IsoSearch<'_> {
        // assignment[i] = index into h_nodes for g_nodes[i]
        fn backtrack(&mut self, assignment: &mut Vec<usize>) -> bool {
            let pos = assignment.len();
            if pos == self.g_nodes.len() {
                return true;
            }
            let gn = self.g_nodes[pos];
            for j in 0..self.h_nodes.len() {
                let hn = self.h_nodes[j];
                if self.used[j] || self.prof_g[gn] != self.prof_h[hn] {
                    continue;
                }
                let ok = (0..=pos).all(|k| {
                    let gk = self.g_nodes[k];
                    let hk = if k == pos {
                        hn
                    } else {
                        self.h_nodes[assignment[k]]
                    };
                    (self.count_g)(gn, gk) == (self.count_h)(hn, hk)
                        && (self.count_g)(gk, gn) == (self.count_h)(hk, hn)
                });
                if !ok {
                    continue;
                }
                assignment.push(j);
                self.used[j] = true;
                if self.backtrack(assignment) {
                    return true;
                }
                self.used[j] = false;
                assignment.pop();
            }
            false
        }
    }

    let count_g = |u: &NodeId, v: &NodeId| class_count(&pairs_g, u, v);
    let count_h = |u: &NodeId, v: &NodeId| class_count(&pairs_h, u, v);
    let mut assignment: Vec<usize> = Vec::with_capacity(n);
    let mut search = IsoSearch {
        g_nodes: &g_nodes,
        h_nodes: &h_nodes,
        prof_g: &prof_g,
        prof_h: &prof_h,
        count_g: &count_g,
        count_h: &count_h,
        used: vec![false; n],
    };
    if !search.backtrack(&mut assignment) {
        return None;
    }

    let node_map: BTreeMap<NodeId, NodeId> = g_nodes
        .iter()
        .zip(assignment.iter())
        .map(|(gn, j)| ((*gn).clone(), h_nodes[*j].clone()))
        .collect();
    // Pair off parallel arcs class by class; counts match by construction.
    let mut arc_map: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    for ((u, v), by_class) in &pairs_g {
        let hu = &node_map[*u];
        let hv = &node_map[*v];
        let h_classes = pairs_h.get(&(hu, hv)).expect("counts matched");
        for (c, g_arcs) in by_class {
            let h_arcs = &h_classes[c];
            for (ga, ha) in g_arcs.iter().zip(h_arcs.iter()) {
                arc_map.insert((*ga).clone(), (*ha).clone());
            }
        }
    }
    Some(GraphMorphism::assemble(
        g.clone(),
        h.clone(),
        node_map,
        arc_map,
    ))
}
