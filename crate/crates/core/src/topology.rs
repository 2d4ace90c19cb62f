//! Lawvere-Tierney topologies on the classifier, closure and density of
//! subobjects, and the separated-object / sheaf predicates.
//!
//! A topology is an endomorphism `j` of the classifier that preserves
//! truth and conjunction and is idempotent. In this category there are
//! exactly four: the identity, the constant-true endomorphism, double
//! negation, and the closed topology. Closure of a subobject composes its
//! characteristic arrow with `j`; a subobject is dense when its closure is
//! everything.

use std::collections::BTreeMap;

use crate::classifier::{
    characteristic, conjunction, endo_from_table, endo_table, negation, omega, omega_square,
    subobject_from_characteristic, true_arrow, TruthValue,
};
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, GraphMorphism, NodeId, Subobject};
use crate::hom::{enumerate_homs, enumerate_homs_capped};
use crate::limits::product_morphism;

/// The four topologies, ordered from bottom to top of their lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TopologyName {
    Identity,
    DoubleNegation,
    Closed,
    Top,
}

impl TopologyName {
    pub const ALL: [TopologyName; 4] = [
        TopologyName::Identity,
        TopologyName::DoubleNegation,
        TopologyName::Closed,
        TopologyName::Top,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TopologyName::Identity => "identity",
            TopologyName::DoubleNegation => "double-negation",
            TopologyName::Closed => "closed",
            TopologyName::Top => "top",
        }
    }

    /// The known truth table of this topology.
    pub fn table(self) -> BTreeMap<TruthValue, TruthValue> {
        use TruthValue::*;
        let entries: [(TruthValue, TruthValue); 7] = match self {
            TopologyName::Identity => [
                (NodeOut, NodeOut),
                (NodeIn, NodeIn),
                (ArcOut, ArcOut),
                (SourceOnly, SourceOnly),
                (TargetOnly, TargetOnly),
                (Endpoints, Endpoints),
                (ArcIn, ArcIn),
            ],
            TopologyName::DoubleNegation => [
                (NodeOut, NodeOut),
                (NodeIn, NodeIn),
                (ArcOut, ArcOut),
                (SourceOnly, SourceOnly),
                (TargetOnly, TargetOnly),
                (Endpoints, ArcIn),
                (ArcIn, ArcIn),
            ],
            TopologyName::Closed => [
                (NodeOut, NodeIn),
                (NodeIn, NodeIn),
                (ArcOut, Endpoints),
                (SourceOnly, Endpoints),
                (TargetOnly, Endpoints),
                (Endpoints, Endpoints),
                (ArcIn, ArcIn),
            ],
            TopologyName::Top => [
                (NodeOut, NodeIn),
                (NodeIn, NodeIn),
                (ArcOut, ArcIn),
                (SourceOnly, ArcIn),
                (TargetOnly, ArcIn),
                (Endpoints, ArcIn),
                (ArcIn, ArcIn),
            ],
        };
        entries.into_iter().collect()
    }

    fn match_table(table: &BTreeMap<TruthValue, TruthValue>) -> Option<TopologyName> {
        TopologyName::ALL
            .into_iter()
            .find(|name| name.table() == *table)
    }
}

impl std::fmt::Display for TopologyName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A Lawvere-Tierney topology: a named endomorphism of the classifier that
/// has been checked against the three axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    endo: GraphMorphism,
    name: TopologyName,
}

impl Topology {
    pub fn endo(&self) -> &GraphMorphism {
        &self.endo
    }

    pub fn name(&self) -> TopologyName {
        self.name
    }

    pub fn table(&self) -> BTreeMap<TruthValue, TruthValue> {
        endo_table(&self.endo).expect("topology endomorphism")
    }

    fn from_name(name: TopologyName) -> Topology {
        let endo = endo_from_table(&name.table()).expect("known tables are morphisms");
        debug_assert_eq!(is_topology(&endo), Ok(true));
        Topology { endo, name }
    }
}

/// Checks the three topology axioms for an endomorphism of the classifier:
/// it preserves truth, it is idempotent, and it commutes with conjunction.
pub fn is_topology(j: &GraphMorphism) -> Result<bool> {
    let om = omega();
    if *j.dom() != om || *j.cod() != om {
        return Err(Error::WrongShape {
            expected: "an endomorphism of the subobject classifier",
        });
    }
    let top = true_arrow();
    if top.then(j)? != top {
        return Ok(false);
    }
    if j.then(j)? != *j {
        return Ok(false);
    }
    let square = omega_square();
    let meet = conjunction();
    let j_square = product_morphism(j, j, &square, &square)?;
    Ok(meet.then(j)? == j_square.then(&meet)?)
}

/// The identity topology.
pub fn identity_topology() -> Topology {
    Topology::from_name(TopologyName::Identity)
}

/// The constant-true topology, the top of the lattice.
pub fn top_topology() -> Topology {
    Topology::from_name(TopologyName::Top)
}

/// The double negation topology, computed as negation composed with itself.
pub fn double_negation() -> Topology {
    let neg = negation();
    let endo = neg.then(&neg).expect("composable");
    let table = endo_table(&endo).expect("endomorphism of omega");
    let name = TopologyName::match_table(&table).expect("double negation matches its table");
    debug_assert_eq!(name, TopologyName::DoubleNegation);
    Topology { endo, name }
}

/// The closed topology, given by its table: all nodes become present, and
/// every absent arc is promoted to present endpoints.
pub fn closed_topology() -> Topology {
    Topology::from_name(TopologyName::Closed)
}

pub fn topology_by_name(name: TopologyName) -> Topology {
    match name {
        TopologyName::DoubleNegation => double_negation(),
        other => Topology::from_name(other),
    }
}

/// Filters every endomorphism of the classifier through the topology
/// axioms. Returns exactly the four topologies, in the deterministic
/// enumeration order of the underlying hom-set.
pub fn enumerate_topologies() -> Vec<Topology> {
    let om = omega();
    enumerate_homs(&om, &om)
        .expect("hom(omega, omega) is small")
        .into_iter()
        .filter(|j| is_topology(j).expect("endomorphism of omega"))
        .map(|endo| {
            let table = endo_table(&endo).expect("endomorphism of omega");
            let name = TopologyName::match_table(&table)
                .expect("every topology on graphs matches one of the four known tables");
            Topology { endo, name }
        })
        .collect()
}

/// The closure of a subobject: the subobject classified by `j` composed
/// with the characteristic arrow.
pub fn closure(sub: &Subobject, j: &Topology) -> Subobject {
    let chi = characteristic(sub);
    let composed = chi.then(&j.endo).expect("composable");
    subobject_from_characteristic(&composed).expect("classified subobject")
}

/// A subobject is dense when its closure is the whole graph.
pub fn is_dense(sub: &Subobject, j: &Topology) -> bool {
    closure(sub, j).is_full()
}

/// The minimum dense subobject: everything for the identity topology, the
/// node set for double negation, the arc set with its endpoints for the
/// closed topology, and the empty subobject for the top topology.
pub fn minimum_dense(g: &FiniteGraph, j: &Topology) -> Subobject {
    let sub = match j.name {
        TopologyName::Identity => Subobject::full(g),
        TopologyName::Top => Subobject::empty(g),
        TopologyName::DoubleNegation => {
            Subobject::new(g, g.nodes().cloned().collect(), Default::default())
                .expect("nodes only")
        }
        TopologyName::Closed => {
            let nodes: std::collections::BTreeSet<NodeId> = g
                .arcs()
                .flat_map(|(_, s, t)| [s.clone(), t.clone()])
                .collect();
            Subobject::new(g, nodes, g.arc_ids().cloned().collect())
                .expect("arcs with their endpoints")
        }
    };
    debug_assert!(is_dense(&sub, j));
    sub
}

/// Separatedness via the known characterizations: every graph for the
/// identity; no parallel arcs for double negation; at most one node for the
/// closed topology; subobjects of the terminal for the top topology.
pub fn is_separated(g: &FiniteGraph, j: &Topology) -> bool {
    match j.name {
        TopologyName::Identity => true,
        TopologyName::DoubleNegation => no_parallel_arcs(g),
        TopologyName::Closed => g.node_count() <= 1,
        TopologyName::Top => g.node_count() <= 1 && g.arc_count() <= 1,
    }
}

/// Sheaves via the known characterizations: every graph for the identity;
/// complete graphs with self-loops for double negation; one-node graphs for
/// the closed topology; the terminal object for the top topology.
pub fn is_sheaf(g: &FiniteGraph, j: &Topology) -> bool {
    match j.name {
        TopologyName::Identity => true,
        TopologyName::DoubleNegation => is_complete_with_loops(g),
        TopologyName::Closed => g.node_count() == 1,
        TopologyName::Top => g.node_count() == 1 && g.arc_count() == 1,
    }
}

/// No two distinct arcs share source and target.
pub fn no_parallel_arcs(g: &FiniteGraph) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    g.arcs().all(|(_, s, t)| seen.insert((s.clone(), t.clone())))
}

/// Exactly one arc for every ordered pair of nodes (self-loops included).
pub fn is_complete_with_loops(g: &FiniteGraph) -> bool {
    if g.arc_count() != g.node_count() * g.node_count() {
        return false;
    }
    g.nodes()
        .all(|u| g.nodes().all(|v| g.arcs_between(u, v).len() == 1))
}

/// Verdict of the definitional separation oracle, relative to a probe
/// corpus; the corpus is part of the statement, so its size is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationReport {
    pub separated: bool,
    pub complete: bool,
    /// Number of (probe graph, dense subobject, morphism) triples examined.
    pub probes: usize,
}

impl SeparationReport {
    pub fn is_sheaf(&self) -> bool {
        self.separated && self.complete
    }
}

/// The definitional oracle: for every probe `Y` in the corpus, every
/// `j`-dense subobject `S` of `Y` and every morphism `f : S -> X`, counts
/// the factorizations of `f` through the inclusion. `X` is separated
/// (relative to the corpus) when every count is at most one, and complete
/// when every count is at least one.
pub fn definitional_separation_oracle(
    x: &FiniteGraph,
    j: &Topology,
    corpus: &[FiniteGraph],
    cap: f64,
) -> Result<SeparationReport> {
    let mut separated = true;
    let mut complete = true;
    let mut probes = 0;
    for y in corpus {
        let from_y = enumerate_homs_capped(y, x, cap)?;
        for sub in y.subobjects() {
            if !is_dense(&sub, j) {
                continue;
            }
            let s_graph = sub.to_graph();
            let inclusion = sub.inclusion();
            let from_sub = enumerate_homs_capped(&s_graph, x, cap)?;
            let mut extension_counts: BTreeMap<_, usize> = BTreeMap::new();
            for g in &from_y {
                let restricted = inclusion.then(g)?;
                *extension_counts
                    .entry((restricted.node_map().clone(), restricted.arc_map().clone()))
                    .or_insert(0) += 1;
            }
            for f in &from_sub {
                probes += 1;
                let count = extension_counts
                    .get(&(f.node_map().clone(), f.arc_map().clone()))
                    .copied()
                    .unwrap_or(0);
                if count > 1 {
                    separated = false;
                }
                if count == 0 {
                    complete = false;
                }
            }
        }
    }
    Ok(SeparationReport {
        separated,
        complete,
        probes,
    })
}

/// For double-negation sheaves the node functor induces a bijection on
/// hom-sets; checks `|Hom(G, H)| = |H(N)| ^ |G(N)|`.
pub fn sheaf_category_equivalence_check(g: &FiniteGraph, h: &FiniteGraph) -> Result<bool> {
    let nn = double_negation();
    if !is_sheaf(g, &nn) || !is_sheaf(h, &nn) {
        return Err(Error::WrongShape {
            expected: "a pair of double-negation sheaves",
        });
    }
    let homs = enumerate_homs(g, h)?.len();
    let expected = h.node_count().pow(g.node_count() as u32);
    Ok(homs == expected)
}

/// Pointwise comparison of two topologies in the order inherited from the
/// truth-value order.
pub fn pointwise_leq(a: &Topology, b: &Topology) -> bool {
    let ta = a.table();
    let tb = b.table();
    TruthValue::ALL.into_iter().all(|v| ta[&v].leq(tb[&v]))
}
