//! Cartesian closed structure: exponential graphs, evaluation and currying.
//!
//! A node of `H^G` is a function from the nodes of `G` to the nodes of `H`.
//! An arc of `H^G` is a morphism from the twisted product `A x G` to `H`,
//! where `A x G` consists of two copies of `G`'s nodes with every arc of `G`
//! running from its source in the first copy to its target in the second.
//! The source (target) of such an arc is the function induced on the first
//! (second) copy; in particular its self-loops are exactly the morphisms
//! `G -> H`.
//!
//! Identifiers are self-describing: a node of `H^G` spells out its function
//! as a sorted assignment list, and an arc spells out the node and arc
//! assignments of its morphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{ArcId, FiniteGraph, GraphMorphism, NodeId};
use crate::hom::{enumerate_homs_capped, DEFAULT_HOM_CAP};
use crate::limits::{product, Product};

/// The twisted product `A x G` together with the two copy maps on nodes.
#[derive(Debug, Clone)]
pub struct TwistedProduct {
    pub graph: FiniteGraph,
    first: BTreeMap<NodeId, NodeId>,
    second: BTreeMap<NodeId, NodeId>,
}

fn first_copy_id(n: &NodeId) -> NodeId {
    NodeId::from(format!("s({n})"))
}

fn second_copy_id(n: &NodeId) -> NodeId {
    NodeId::from(format!("t({n})"))
}

impl TwistedProduct {
    /// Where a node of `G` lands in the first (source) copy.
    pub fn first_copy(&self, n: &NodeId) -> &NodeId {
        self.first.get(n).expect("node of the base graph")
    }

    /// Where a node of `G` lands in the second (target) copy.
    pub fn second_copy(&self, n: &NodeId) -> &NodeId {
        self.second.get(n).expect("node of the base graph")
    }
}

/// Builds `A x G` directly: two copies of the nodes of `G`, with each arc of
/// `G` (keeping its identifier) rerouted from the first copy of its source
/// to the second copy of its target. Isomorphic to `product(A, G)`.
pub fn twisted_product_with_a(g: &FiniteGraph) -> TwistedProduct {
    let first: BTreeMap<NodeId, NodeId> =
        g.nodes().map(|n| (n.clone(), first_copy_id(n))).collect();
    let second: BTreeMap<NodeId, NodeId> =
        g.nodes().map(|n| (n.clone(), second_copy_id(n))).collect();
    let nodes = first.values().chain(second.values()).cloned();
    let arcs = g
        .arcs()
        .map(|(a, s, t)| (a.clone(), first[s].clone(), second[t].clone()));
    let graph = FiniteGraph::new(nodes, arcs).expect("copies are disjoint");
    TwistedProduct {
        graph,
        first,
        second,
    }
}

/// The exponential `H^G` with the meaning of every node and arc retained.
#[derive(Debug, Clone)]
pub struct Exponential {
    pub graph: FiniteGraph,
    base: FiniteGraph,
    target: FiniteGraph,
    twisted: TwistedProduct,
    node_meaning: BTreeMap<NodeId, BTreeMap<NodeId, NodeId>>,
    arc_meaning: BTreeMap<ArcId, GraphMorphism>,
}

fn function_id(f: &BTreeMap<NodeId, NodeId>) -> NodeId {
    let body: Vec<String> = f.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    NodeId::from(format!("[{}]", body.join(",")))
}

fn morphism_id(m: &GraphMorphism) -> ArcId {
    let nodes: Vec<String> = m
        .node_map()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    let arcs: Vec<String> = m
        .arc_map()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    ArcId::from(format!("[{}|{}]", nodes.join(","), arcs.join(",")))
}

impl Exponential {
    /// The exponent `G`.
    pub fn base(&self) -> &FiniteGraph {
        &self.base
    }

    /// The graph `H` being raised to the power.
    pub fn target(&self) -> &FiniteGraph {
        &self.target
    }

    pub fn twisted(&self) -> &TwistedProduct {
        &self.twisted
    }

    /// The function a node of `H^G` stands for.
    pub fn node_meaning(&self, n: &NodeId) -> &BTreeMap<NodeId, NodeId> {
        self.node_meaning.get(n).expect("node of the exponential")
    }

    /// The morphism `A x G -> H` an arc of `H^G` stands for.
    pub fn arc_meaning(&self, a: &ArcId) -> &GraphMorphism {
        self.arc_meaning.get(a).expect("arc of the exponential")
    }

    /// Self-loop arcs of `H^G` are exactly the morphisms `G -> H`; this
    /// converts one. Returns an error for an arc that is not a self-loop.
    pub fn loop_as_morphism(&self, a: &ArcId) -> Result<GraphMorphism> {
        if self.graph.src(a) != self.graph.tgt(a) {
            return Err(Error::WrongShape {
                expected: "a self-loop arc of the exponential",
            });
        }
        let phi = self.arc_meaning(a);
        let node_map = self
            .base
            .nodes()
            .map(|n| (n.clone(), phi.on_node(self.twisted.first_copy(n)).clone()))
            .collect();
        let arc_map = self
            .base
            .arc_ids()
            .map(|x| (x.clone(), phi.on_arc(x).clone()))
            .collect();
        GraphMorphism::new(&self.base, &self.target, node_map, arc_map)
    }

    /// The global element `1 -> H^G` corresponding to a morphism `G -> H`.
    pub fn global_element(&self, f: &GraphMorphism) -> Result<GraphMorphism> {
        if f.dom() != &self.base || f.cod() != &self.target {
            return Err(Error::CompositionMismatch);
        }
        // The corresponding arc maps both copies via f.
        let mut node_map = BTreeMap::new();
        let mut arc_map = BTreeMap::new();
        for n in self.base.nodes() {
            node_map.insert(self.twisted.first_copy(n).clone(), f.on_node(n).clone());
            node_map.insert(self.twisted.second_copy(n).clone(), f.on_node(n).clone());
        }
        for a in self.base.arc_ids() {
            arc_map.insert(a.clone(), f.on_arc(a).clone());
        }
        let phi = GraphMorphism::new(&self.twisted.graph, &self.target, node_map, arc_map)?;
        let loop_id = morphism_id(&phi);
        let node_id = function_id(f.node_map());
        GraphMorphism::new(
            &crate::limits::terminal(),
            &self.graph,
            [(NodeId::from("*"), node_id)].into(),
            [(ArcId::from("loop"), loop_id)].into(),
        )
    }
}

/// Computes `H^G` under the default enumeration cap.
pub fn exponential(g: &FiniteGraph, h: &FiniteGraph) -> Result<Exponential> {
    exponential_capped(g, h, DEFAULT_HOM_CAP)
}

pub fn exponential_capped(g: &FiniteGraph, h: &FiniteGraph, cap: f64) -> Result<Exponential> {
    let node_candidates = (h.node_count() as f64).powi(g.node_count() as i32);
    if node_candidates > cap {
        return Err(Error::SizeCap {
            what: "exponential nodes",
            candidates: node_candidates,
            cap,
        });
    }
    let twisted = twisted_product_with_a(g);

    // Nodes: every function G(N) -> H(N), enumerated in lexicographic order.
    let g_nodes: Vec<&NodeId> = g.nodes().collect();
    let h_nodes: Vec<&NodeId> = h.nodes().collect();
    let mut node_meaning: BTreeMap<NodeId, BTreeMap<NodeId, NodeId>> = BTreeMap::new();
    if g_nodes.is_empty() {
        node_meaning.insert(function_id(&BTreeMap::new()), BTreeMap::new());
    } else if !h_nodes.is_empty() {
        let mut odometer = vec![0usize; g_nodes.len()];
        loop {
            let f: BTreeMap<NodeId, NodeId> = g_nodes
                .iter()
                .zip(&odometer)
                .map(|(n, j)| ((*n).clone(), h_nodes[*j].clone()))
                .collect();
            node_meaning.insert(function_id(&f), f);
            let mut i = g_nodes.len();
            let mut wrapped = true;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                odometer[i] += 1;
                if odometer[i] < h_nodes.len() {
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

    // Arcs: every morphism A x G -> H.
    let mut arc_meaning: BTreeMap<ArcId, GraphMorphism> = BTreeMap::new();
    let mut arcs = Vec::new();
    for phi in enumerate_homs_capped(&twisted.graph, h, cap)? {
        let src_fn: BTreeMap<NodeId, NodeId> = g
            .nodes()
            .map(|n| (n.clone(), phi.on_node(twisted.first_copy(n)).clone()))
            .collect();
        let tgt_fn: BTreeMap<NodeId, NodeId> = g
            .nodes()
            .map(|n| (n.clone(), phi.on_node(twisted.second_copy(n)).clone()))
            .collect();
        let id = morphism_id(&phi);
        arcs.push((id.clone(), function_id(&src_fn), function_id(&tgt_fn)));
        arc_meaning.insert(id, phi);
    }

    let graph = FiniteGraph::new(node_meaning.keys().cloned(), arcs)?;
    Ok(Exponential {
        graph,
        base: g.clone(),
        target: h.clone(),
        twisted,
        node_meaning,
        arc_meaning,
    })
}

/// The evaluation morphism `H^G x G -> H`, returned together with the
/// product it is defined on.
pub fn eval(exp: &Exponential) -> Result<(Product, GraphMorphism)> {
    let prod = product(&exp.graph, &exp.base)?;
    let node_map: BTreeMap<NodeId, NodeId> = prod
        .graph
        .nodes()
        .map(|pn| {
            let f = exp.node_meaning(prod.proj_left.on_node(pn));
            let x = prod.proj_right.on_node(pn);
            (pn.clone(), f[x].clone())
        })
        .collect();
    let arc_map: BTreeMap<ArcId, ArcId> = prod
        .graph
        .arc_ids()
        .map(|pa| {
            let phi = exp.arc_meaning(prod.proj_left.on_arc(pa));
            let a = prod.proj_right.on_arc(pa);
            // The arc of G is also the corresponding arc of A x G.
            (pa.clone(), phi.on_arc(a).clone())
        })
        .collect();
    let map = GraphMorphism::new(&prod.graph, &exp.target, node_map, arc_map)?;
    Ok((prod, map))
}

/// Transposes `f : F x G -> H` to `curry(f) : F -> H^G`.
///
/// `fg` must be the product of `F` and `exp.base()`, and `f` must land in
/// `exp.target()`.
pub fn curry(f: &GraphMorphism, fg: &Product, exp: &Exponential) -> Result<GraphMorphism> {
    if f.dom() != &fg.graph || f.cod() != exp.target() || fg.proj_right.cod() != exp.base() {
        return Err(Error::CompositionMismatch);
    }
    let big_f = fg.proj_left.cod();
    let g = exp.base();
    let pair = |a: &str, b: &str| crate::graph::pair_id(a, b);

    let node_map: BTreeMap<NodeId, NodeId> = big_f
        .nodes()
        .map(|x| {
            let fun: BTreeMap<NodeId, NodeId> = g
                .nodes()
                .map(|y| {
                    let p = NodeId::from(pair(x.as_str(), y.as_str()));
                    (y.clone(), f.on_node(&p).clone())
                })
                .collect();
            (x.clone(), function_id(&fun))
        })
        .collect();

    let arc_map: BTreeMap<ArcId, ArcId> = big_f
        .arc_ids()
        .map(|c| {
            let (cs, ct) = big_f.endpoints(c).expect("arc of F");
            let mut phi_nodes = BTreeMap::new();
            for y in g.nodes() {
                let sp = NodeId::from(pair(cs.as_str(), y.as_str()));
                let tp = NodeId::from(pair(ct.as_str(), y.as_str()));
                phi_nodes.insert(exp.twisted().first_copy(y).clone(), f.on_node(&sp).clone());
                phi_nodes.insert(exp.twisted().second_copy(y).clone(), f.on_node(&tp).clone());
            }
            let phi_arcs: BTreeMap<ArcId, ArcId> = g
                .arc_ids()
                .map(|a| {
                    let p = ArcId::from(pair(c.as_str(), a.as_str()));
                    (a.clone(), f.on_arc(&p).clone())
                })
                .collect();
            let phi = GraphMorphism::new(&exp.twisted().graph, exp.target(), phi_nodes, phi_arcs)
                .expect("transpose of a morphism is a morphism");
            (c.clone(), morphism_id(&phi))
        })
        .collect();

    GraphMorphism::new(big_f, &exp.graph, node_map, arc_map)
}

/// Transposes `k : F -> H^G` back to `uncurry(k) : F x G -> H`.
///
/// `fg` must be the product of `F` and `exp.base()`.
pub fn uncurry(k: &GraphMorphism, fg: &Product, exp: &Exponential) -> Result<GraphMorphism> {
    if k.cod() != &exp.graph
        || fg.proj_left.cod() != k.dom()
        || fg.proj_right.cod() != exp.base()
    {
        return Err(Error::CompositionMismatch);
    }
    let node_map: BTreeMap<NodeId, NodeId> = fg
        .graph
        .nodes()
        .map(|pn| {
            let x = fg.proj_left.on_node(pn);
            let y = fg.proj_right.on_node(pn);
            (pn.clone(), exp.node_meaning(k.on_node(x))[y].clone())
        })
        .collect();
    let arc_map: BTreeMap<ArcId, ArcId> = fg
        .graph
        .arc_ids()
        .map(|pa| {
            let c = fg.proj_left.on_arc(pa);
            let a = fg.proj_right.on_arc(pa);
            (pa.clone(), exp.arc_meaning(k.on_arc(c)).on_arc(a).clone())
        })
        .collect();
    GraphMorphism::new(&fg.graph, exp.target(), node_map, arc_map)
}
