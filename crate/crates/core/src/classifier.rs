//! The subobject classifier and the internal logic.
//!
//! The classifier is built from its definition: the nodes of `omega` are the
//! subobjects of the single-node representable, its arcs are the five
//! subobjects of the single-arrow representable, and sources/targets come
//! from pulling those subobjects back along the two endpoint inclusions.
//! The hard-coded two-node five-arc graph is kept as a golden fixture that
//! the construction must reproduce.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{
    pair_id, representable_arc, representable_node, ArcId, FiniteGraph, GraphMorphism, NodeId,
    Subobject,
};
use crate::limits::{pair_morphism, product, terminal, to_terminal, Product};

/// The seven truth values: two at node stage, five at arc stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    /// `0_N`: the node is not in the subgraph.
    NodeOut,
    /// `N`: the node is in the subgraph.
    NodeIn,
    /// `0_A`: neither the arc nor its endpoints are in the subgraph.
    ArcOut,
    /// `s`: only the source of the arc is in the subgraph.
    SourceOnly,
    /// `t`: only the target of the arc is in the subgraph.
    TargetOnly,
    /// `(s t)`: both endpoints are in the subgraph, the arc is not.
    Endpoints,
    /// `A`: the arc itself is in the subgraph.
    ArcIn,
}

impl TruthValue {
    pub const ALL: [TruthValue; 7] = [
        TruthValue::NodeOut,
        TruthValue::NodeIn,
        TruthValue::ArcOut,
        TruthValue::SourceOnly,
        TruthValue::TargetOnly,
        TruthValue::Endpoints,
        TruthValue::ArcIn,
    ];

    pub const NODE_STAGE: [TruthValue; 2] = [TruthValue::NodeOut, TruthValue::NodeIn];

    pub const ARC_STAGE: [TruthValue; 5] = [
        TruthValue::ArcOut,
        TruthValue::SourceOnly,
        TruthValue::TargetOnly,
        TruthValue::Endpoints,
        TruthValue::ArcIn,
    ];

    /// The identifier this value carries inside the classifier graph.
    pub fn id(self) -> &'static str {
        match self {
            TruthValue::NodeOut => "0_N",
            TruthValue::NodeIn => "N",
            TruthValue::ArcOut => "0_A",
            TruthValue::SourceOnly => "s",
            TruthValue::TargetOnly => "t",
            TruthValue::Endpoints => "st",
            TruthValue::ArcIn => "A",
        }
    }

    /// Conventional display name; `Endpoints` prints as `(s t)`.
    pub fn label(self) -> &'static str {
        match self {
            TruthValue::Endpoints => "(s t)",
            other => other.id(),
        }
    }

    pub fn from_id(id: &str) -> Option<TruthValue> {
        TruthValue::ALL.into_iter().find(|tv| tv.id() == id)
    }

    pub fn is_node_stage(self) -> bool {
        matches!(self, TruthValue::NodeOut | TruthValue::NodeIn)
    }

    pub fn is_arc_stage(self) -> bool {
        !self.is_node_stage()
    }

    /// The stored order on truth values: `0_N < N` at node stage and
    /// `0_A < s, t < (s t) < A` at arc stage, with `s` and `t` incomparable.
    /// Values at different stages are incomparable.
    pub fn leq(self, other: TruthValue) -> bool {
        use TruthValue::*;
        let rank = |tv: TruthValue| match tv {
            NodeOut => 0,
            NodeIn => 1,
            ArcOut => 0,
            SourceOnly | TargetOnly => 1,
            Endpoints => 2,
            ArcIn => 3,
        };
        if self.is_node_stage() != other.is_node_stage() {
            return false;
        }
        if self == other {
            return true;
        }
        if (self == SourceOnly && other == TargetOnly)
            || (self == TargetOnly && other == SourceOnly)
        {
            return false;
        }
        rank(self) < rank(other)
    }
}

impl std::fmt::Display for TruthValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The golden fixture: the classifier graph written out by hand.
pub fn omega_fixture() -> FiniteGraph {
    FiniteGraph::build(
        &["0_N", "N"],
        &[
            ("0_A", "0_N", "0_N"),
            ("s", "N", "0_N"),
            ("t", "0_N", "N"),
            ("st", "N", "N"),
            ("A", "N", "N"),
        ],
    )
    .expect("static graph")
}

/// The subobject classifier, constructed from its definition: subobjects of
/// the representables, with sources and targets given by preimage along the
/// two endpoint inclusions of the single node into the single arrow.
pub fn omega() -> FiniteGraph {
    let n = representable_node();
    let a = representable_arc();
    let s_hat = GraphMorphism::build(&n, &a, &[("N", "s")], &[]).expect("endpoint inclusion");
    let t_hat = GraphMorphism::build(&n, &a, &[("N", "t")], &[]).expect("endpoint inclusion");

    // A subobject of the single node is determined by whether the node is in.
    let node_name = |sub: &Subobject| -> NodeId {
        if sub.nodes().is_empty() {
            NodeId::from(TruthValue::NodeOut.id())
        } else {
            NodeId::from(TruthValue::NodeIn.id())
        }
    };

    let nodes: Vec<NodeId> = n.subobjects().iter().map(node_name).collect();

    let mut arcs = Vec::new();
    for sub in a.subobjects() {
        let src = node_name(&sub.preimage_along(&s_hat).expect("same ambient"));
        let tgt = node_name(&sub.preimage_along(&t_hat).expect("same ambient"));
        let has_arc = !sub.arcs().is_empty();
        let value = match (has_arc, src.as_str(), tgt.as_str()) {
            (true, _, _) => TruthValue::ArcIn,
            (false, "N", "N") => TruthValue::Endpoints,
            (false, "N", "0_N") => TruthValue::SourceOnly,
            (false, "0_N", "N") => TruthValue::TargetOnly,
            (false, _, _) => TruthValue::ArcOut,
        };
        arcs.push((ArcId::from(value.id()), src, tgt));
    }

    FiniteGraph::new(nodes, arcs).expect("classifier construction")
}

/// The true arrow `1 -> omega`: the node goes to `N`, the loop to `A`.
pub fn true_arrow() -> GraphMorphism {
    GraphMorphism::build(&terminal(), &omega(), &[("*", "N")], &[("loop", "A")])
        .expect("true arrow")
}

/// The false arrow `1 -> omega`: the classifier of the empty subobject of
/// the terminal object.
pub fn false_arrow() -> GraphMorphism {
    characteristic(&Subobject::empty(&terminal()))
}

/// The characteristic arrow of a canonical subobject, by the five-case rule:
/// nodes go to `N` or `0_N` according to membership; an arc in the subgraph
/// goes to `A`; an arc outside it goes to `(s t)`, `s`, `t` or `0_A`
/// according to which of its endpoints are members.
pub fn characteristic(sub: &Subobject) -> GraphMorphism {
    let g = sub.ambient();
    let node_map: BTreeMap<NodeId, NodeId> = g
        .nodes()
        .map(|n| {
            let value = if sub.has_node(n) {
                TruthValue::NodeIn
            } else {
                TruthValue::NodeOut
            };
            (n.clone(), NodeId::from(value.id()))
        })
        .collect();
    let arc_map: BTreeMap<ArcId, ArcId> = g
        .arcs()
        .map(|(a, s, t)| {
            let value = if sub.has_arc(a) {
                TruthValue::ArcIn
            } else {
                match (sub.has_node(s), sub.has_node(t)) {
                    (true, true) => TruthValue::Endpoints,
                    (true, false) => TruthValue::SourceOnly,
                    (false, true) => TruthValue::TargetOnly,
                    (false, false) => TruthValue::ArcOut,
                }
            };
            (a.clone(), ArcId::from(value.id()))
        })
        .collect();
    GraphMorphism::new(g, &omega(), node_map, arc_map).expect("the five-case rule is natural")
}

/// The subobject classified by a morphism into the classifier: nodes sent to
/// `N` and arcs sent to `A`. This is (the canonical form of) the pullback of
/// the true arrow along `chi`.
pub fn subobject_from_characteristic(chi: &GraphMorphism) -> Result<Subobject> {
    if *chi.cod() != omega() {
        return Err(Error::WrongShape {
            expected: "a morphism into the subobject classifier",
        });
    }
    let nodes = chi
        .dom()
        .nodes()
        .filter(|n| chi.on_node(n).as_str() == TruthValue::NodeIn.id())
        .cloned()
        .collect();
    let arcs = chi
        .dom()
        .arc_ids()
        .filter(|a| chi.on_arc(a).as_str() == TruthValue::ArcIn.id())
        .cloned()
        .collect();
    // Naturality forces endpoints of an A-valued arc to be N-valued.
    Subobject::new(chi.dom(), nodes, arcs)
}

/// The product `omega x omega`, domain of the conjunction.
pub fn omega_square() -> Product {
    product(&omega(), &omega()).expect("small product")
}

/// Internal conjunction: the characteristic arrow of the image of
/// `<true, true> : 1 -> omega x omega`.
pub fn conjunction() -> GraphMorphism {
    let square = omega_square();
    let tt = pair_morphism(&true_arrow(), &true_arrow(), &square).expect("pairing");
    characteristic(&tt.image())
}

/// Internal negation: the characteristic arrow of the image of the false
/// arrow.
pub fn negation() -> GraphMorphism {
    characteristic(&false_arrow().image())
}

/// Reads off the truth table of an endomorphism of the classifier.
pub fn endo_table(j: &GraphMorphism) -> Result<BTreeMap<TruthValue, TruthValue>> {
    let om = omega();
    if *j.dom() != om || *j.cod() != om {
        return Err(Error::WrongShape {
            expected: "an endomorphism of the subobject classifier",
        });
    }
    let mut table = BTreeMap::new();
    for tv in TruthValue::NODE_STAGE {
        let img = j.on_node(&NodeId::from(tv.id()));
        table.insert(tv, TruthValue::from_id(img.as_str()).expect("omega node"));
    }
    for tv in TruthValue::ARC_STAGE {
        let img = j.on_arc(&ArcId::from(tv.id()));
        table.insert(tv, TruthValue::from_id(img.as_str()).expect("omega arc"));
    }
    Ok(table)
}

/// Builds the endomorphism of the classifier with the given truth table.
/// Fails if the table is not a graph morphism.
pub fn endo_from_table(table: &BTreeMap<TruthValue, TruthValue>) -> Result<GraphMorphism> {
    let om = omega();
    let mut node_map = BTreeMap::new();
    let mut arc_map = BTreeMap::new();
    for (from, to) in table {
        if from.is_node_stage() {
            node_map.insert(NodeId::from(from.id()), NodeId::from(to.id()));
        } else {
            arc_map.insert(ArcId::from(from.id()), ArcId::from(to.id()));
        }
    }
    GraphMorphism::new(&om, &om, node_map, arc_map)
}

/// Reads off the table of a binary operation `omega x omega -> omega` on the
/// stage-compatible pairs of truth values.
pub fn binary_table(m: &GraphMorphism) -> Result<BTreeMap<(TruthValue, TruthValue), TruthValue>> {
    let square = omega_square();
    if *m.dom() != square.graph || *m.cod() != omega() {
        return Err(Error::WrongShape {
            expected: "a morphism omega x omega -> omega",
        });
    }
    let mut table = BTreeMap::new();
    for a in TruthValue::NODE_STAGE {
        for b in TruthValue::NODE_STAGE {
            let id = NodeId::from(pair_id(a.id(), b.id()));
            let img = m.on_node(&id);
            table.insert((a, b), TruthValue::from_id(img.as_str()).expect("omega node"));
        }
    }
    for a in TruthValue::ARC_STAGE {
        for b in TruthValue::ARC_STAGE {
            let id = ArcId::from(pair_id(a.id(), b.id()));
            let img = m.on_arc(&id);
            table.insert((a, b), TruthValue::from_id(img.as_str()).expect("omega arc"));
        }
    }
    Ok(table)
}

/// Number of canonical subobjects; equals the number of morphisms into the
/// classifier.
pub fn count_subobjects(g: &FiniteGraph) -> usize {
    g.subobjects().len()
}

/// The constant-true arrow `G -> omega`, i.e. the characteristic of the full
/// subobject.
pub fn constant_true(g: &FiniteGraph) -> GraphMorphism {
    to_terminal(g).then(&true_arrow()).expect("composable")
}
