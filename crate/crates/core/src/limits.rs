//! Finite limits and colimits, computed pointwise on nodes and arcs.
//!
//! Products pair up nodes and arcs componentwise; coproducts are disjoint
//! unions; equalizers carve out agreement subobjects; coequalizers quotient
//! by the generated equivalence. Pullbacks and pushouts are derived from
//! these in the usual way. Composite identifiers follow a fixed scheme,
//! `(x,y)` for pairs, `l.x`/`r.x` for coproduct summands, and the minimum
//! member for quotient classes, so equal inputs give identical outputs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{pair_id, ArcId, FiniteGraph, GraphMorphism, NodeId, Subobject};

/// Default bound on the number of nodes plus arcs a construction may create.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// The initial object: the empty graph.
pub fn initial() -> FiniteGraph {
    FiniteGraph::empty()
}

/// The terminal object: one node carrying one self-loop.
pub fn terminal() -> FiniteGraph {
    FiniteGraph::build(&["*"], &[("loop", "*", "*")]).expect("static graph")
}

/// The unique morphism from the initial object.
pub fn from_initial(g: &FiniteGraph) -> GraphMorphism {
    GraphMorphism::new(&initial(), g, BTreeMap::new(), BTreeMap::new()).expect("empty maps")
}

/// The unique morphism to the terminal object.
pub fn to_terminal(g: &FiniteGraph) -> GraphMorphism {
    let one = terminal();
    GraphMorphism::new(
        g,
        &one,
        g.nodes().map(|n| (n.clone(), NodeId::from("*"))).collect(),
        g.arc_ids()
            .map(|a| (a.clone(), ArcId::from("loop")))
            .collect(),
    )
    .expect("collapse is natural")
}

/// A binary product together with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub graph: FiniteGraph,
    pub proj_left: GraphMorphism,
    pub proj_right: GraphMorphism,
}

/// The product `G x H`: node pairs, arc pairs, endpoints componentwise.
pub fn product(g: &FiniteGraph, h: &FiniteGraph) -> Result<Product> {
    product_capped(g, h, DEFAULT_ELEMENT_CAP)
}

pub fn product_capped(g: &FiniteGraph, h: &FiniteGraph, cap: usize) -> Result<Product> {
    let elements = g.node_count() * h.node_count() + g.arc_count() * h.arc_count();
    if elements > cap {
        return Err(Error::SizeCap {
            what: "product",
            candidates: elements as f64,
            cap: cap as f64,
        });
    }
    let mut nodes = Vec::new();
    let mut left_nodes = BTreeMap::new();
    let mut right_nodes = BTreeMap::new();
    for gn in g.nodes() {
        for hn in h.nodes() {
            let id = NodeId::from(pair_id(gn.as_str(), hn.as_str()));
            left_nodes.insert(id.clone(), gn.clone());
            right_nodes.insert(id.clone(), hn.clone());
            nodes.push(id);
        }
    }
    let mut arcs = Vec::new();
    let mut left_arcs = BTreeMap::new();
    let mut right_arcs = BTreeMap::new();
    for (ga, gs, gt) in g.arcs() {
        for (ha, hs, ht) in h.arcs() {
            let id = ArcId::from(pair_id(ga.as_str(), ha.as_str()));
            left_arcs.insert(id.clone(), ga.clone());
            right_arcs.insert(id.clone(), ha.clone());
            arcs.push((
                id,
                NodeId::from(pair_id(gs.as_str(), hs.as_str())),
                NodeId::from(pair_id(gt.as_str(), ht.as_str())),
            ));
        }
    }
    let graph = FiniteGraph::new(nodes, arcs)?;
    let proj_left = GraphMorphism::new(&graph, g, left_nodes, left_arcs)?;
    let proj_right = GraphMorphism::new(&graph, h, right_nodes, right_arcs)?;
    Ok(Product {
        graph,
        proj_left,
        proj_right,
    })
}

/// The pairing `<f, g> : X -> G x H` of two morphisms with a common domain.
pub fn pair_morphism(
    f: &GraphMorphism,
    g: &GraphMorphism,
    target: &Product,
) -> Result<GraphMorphism> {
    if f.dom() != g.dom() {
        return Err(Error::NotParallel);
    }
    if f.cod() != target.proj_left.cod() || g.cod() != target.proj_right.cod() {
        return Err(Error::CompositionMismatch);
    }
    let node_map = f
        .dom()
        .nodes()
        .map(|n| {
            (
                n.clone(),
                NodeId::from(pair_id(f.on_node(n).as_str(), g.on_node(n).as_str())),
            )
        })
        .collect();
    let arc_map = f
        .dom()
        .arc_ids()
        .map(|a| {
            (
                a.clone(),
                ArcId::from(pair_id(f.on_arc(a).as_str(), g.on_arc(a).as_str())),
            )
        })
        .collect();
    GraphMorphism::new(f.dom(), &target.graph, node_map, arc_map)
}

/// `f x g : G x H -> G' x H'` acting componentwise.
pub fn product_morphism(
    f: &GraphMorphism,
    g: &GraphMorphism,
    source: &Product,
    target: &Product,
) -> Result<GraphMorphism> {
    pair_morphism(
        &source.proj_left.then(f)?,
        &source.proj_right.then(g)?,
        target,
    )
}

/// A binary coproduct together with its injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub graph: FiniteGraph,
    pub inj_left: GraphMorphism,
    pub inj_right: GraphMorphism,
}

fn inl(id: &str) -> String {
    format!("l.{id}")
}

fn inr(id: &str) -> String {
    format!("r.{id}")
}

/// The coproduct `G + H`: disjoint union on both sorts.
pub fn coproduct(g: &FiniteGraph, h: &FiniteGraph) -> Result<Coproduct> {
    let mut nodes = Vec::new();
    let mut left_nodes = BTreeMap::new();
    let mut right_nodes = BTreeMap::new();
    for gn in g.nodes() {
        let id = NodeId::from(inl(gn.as_str()));
        left_nodes.insert(gn.clone(), id.clone());
        nodes.push(id);
    }
    for hn in h.nodes() {
        let id = NodeId::from(inr(hn.as_str()));
        right_nodes.insert(hn.clone(), id.clone());
        nodes.push(id);
    }
    let mut arcs = Vec::new();
    let mut left_arcs = BTreeMap::new();
    let mut right_arcs = BTreeMap::new();
    for (a, s, t) in g.arcs() {
        let id = ArcId::from(inl(a.as_str()));
        left_arcs.insert(a.clone(), id.clone());
        arcs.push((
            id,
            NodeId::from(inl(s.as_str())),
            NodeId::from(inl(t.as_str())),
        ));
    }
    for (a, s, t) in h.arcs() {
        let id = ArcId::from(inr(a.as_str()));
        right_arcs.insert(a.clone(), id.clone());
        arcs.push((
            id,
            NodeId::from(inr(s.as_str())),
            NodeId::from(inr(t.as_str())),
        ));
    }
    let graph = FiniteGraph::new(nodes, arcs)?;
    let inj_left = GraphMorphism::new(g, &graph, left_nodes, left_arcs)?;
    let inj_right = GraphMorphism::new(h, &graph, right_nodes, right_arcs)?;
    Ok(Coproduct {
        graph,
        inj_left,
        inj_right,
    })
}

/// The copairing `[f, g] : G + H -> X` of two morphisms with a common codomain.
pub fn copair(f: &GraphMorphism, g: &GraphMorphism, source: &Coproduct) -> Result<GraphMorphism> {
    if f.cod() != g.cod() {
        return Err(Error::NotParallel);
    }
    if f.dom() != source.inj_left.dom() || g.dom() != source.inj_right.dom() {
        return Err(Error::CompositionMismatch);
    }
    let mut node_map = BTreeMap::new();
    let mut arc_map = BTreeMap::new();
    for (n, img) in source.inj_left.node_map() {
        node_map.insert(img.clone(), f.on_node(n).clone());
    }
    for (n, img) in source.inj_right.node_map() {
        node_map.insert(img.clone(), g.on_node(n).clone());
    }
    for (a, img) in source.inj_left.arc_map() {
        arc_map.insert(img.clone(), f.on_arc(a).clone());
    }
    for (a, img) in source.inj_right.arc_map() {
        arc_map.insert(img.clone(), g.on_arc(a).clone());
    }
    GraphMorphism::new(&source.graph, f.cod(), node_map, arc_map)
}

/// The equalizer of a parallel pair, as a subobject of the common domain:
/// the nodes and arcs on which the two morphisms agree.
pub fn equalizer(f: &GraphMorphism, g: &GraphMorphism) -> Result<Subobject> {
    if !f.is_parallel_to(g) {
        return Err(Error::NotParallel);
    }
    let nodes: BTreeSet<NodeId> = f
        .dom()
        .nodes()
        .filter(|n| f.on_node(n) == g.on_node(n))
        .cloned()
        .collect();
    let arcs: BTreeSet<ArcId> = f
        .dom()
        .arc_ids()
        .filter(|a| f.on_arc(a) == g.on_arc(a))
        .cloned()
        .collect();
    // Agreement on an arc forces agreement on its endpoints, so the subset
    // is endpoint-closed.
    Subobject::new(f.dom(), nodes, arcs)
}

/// A coequalizer: the quotient graph and the projection onto it.
#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub graph: FiniteGraph,
    pub quotient: GraphMorphism,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            // Smaller index wins, so the class representative is the minimum.
            let (lo, hi) = (ri.min(rj), ri.max(rj));
            self.parent[hi] = lo;
        }
    }
}

/// The coequalizer of a parallel pair `f, g : G -> H`: the quotient of `H`
/// by the equivalence generated by `f(x) ~ g(x)` on both sorts. Classes are
/// named by their minimum member.
pub fn coequalizer(f: &GraphMorphism, g: &GraphMorphism) -> Result<Coequalizer> {
    if !f.is_parallel_to(g) {
        return Err(Error::NotParallel);
    }
    let h = f.cod();
    let h_nodes: Vec<&NodeId> = h.nodes().collect();
    let h_arcs: Vec<&ArcId> = h.arc_ids().collect();
    let node_index: BTreeMap<&NodeId, usize> =
        h_nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let arc_index: BTreeMap<&ArcId, usize> =
        h_arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();

    let mut node_uf = UnionFind::new(h_nodes.len());
    for n in f.dom().nodes() {
        node_uf.union(node_index[f.on_node(n)], node_index[g.on_node(n)]);
    }
    let mut arc_uf = UnionFind::new(h_arcs.len());
    for a in f.dom().arc_ids() {
        arc_uf.union(arc_index[f.on_arc(a)], arc_index[g.on_arc(a)]);
    }

    let node_rep: Vec<&NodeId> = (0..h_nodes.len()).map(|i| h_nodes[node_uf.find(i)]).collect();
    let arc_rep: Vec<&ArcId> = (0..h_arcs.len()).map(|i| h_arcs[arc_uf.find(i)]).collect();

    let q_nodes: BTreeSet<NodeId> = node_rep.iter().map(|n| (*n).clone()).collect();
    let mut q_arcs = BTreeMap::new();
    for (i, a) in h_arcs.iter().enumerate() {
        let rep = arc_rep[i];
        // Source/target of a class are the classes of any member's
        // endpoints; naturality of f and g makes this well-defined.
        let s = node_rep[node_index[h.src(a)]].clone();
        let t = node_rep[node_index[h.tgt(a)]].clone();
        if let Some(prev) = q_arcs.insert(rep.clone(), (s.clone(), t.clone())) {
            debug_assert_eq!(prev, (s, t), "quotient endpoints must be well-defined");
        }
    }
    let graph = FiniteGraph::new(q_nodes, q_arcs.into_iter().map(|(a, (s, t))| (a, s, t)))?;
    let quotient = GraphMorphism::new(
        h,
        &graph,
        h_nodes
            .iter()
            .enumerate()
            .map(|(i, n)| ((*n).clone(), node_rep[i].clone()))
            .collect(),
        h_arcs
            .iter()
            .enumerate()
            .map(|(i, a)| ((*a).clone(), arc_rep[i].clone()))
            .collect(),
    )?;
    Ok(Coequalizer { graph, quotient })
}

/// A pullback with its two projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub graph: FiniteGraph,
    pub proj_left: GraphMorphism,
    pub proj_right: GraphMorphism,
}

/// The pullback of `f : X -> Z` and `g : Y -> Z`, computed as the equalizer
/// of the two composites out of `X x Y`.
pub fn pullback(f: &GraphMorphism, g: &GraphMorphism) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(Error::CompositionMismatch);
    }
    let prod = product(f.dom(), g.dom())?;
    let eq = equalizer(&prod.proj_left.then(f)?, &prod.proj_right.then(g)?)?;
    let incl = eq.inclusion();
    Ok(Pullback {
        graph: eq.to_graph(),
        proj_left: incl.then(&prod.proj_left)?,
        proj_right: incl.then(&prod.proj_right)?,
    })
}

/// A pushout with its two injections.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub graph: FiniteGraph,
    pub inj_left: GraphMorphism,
    pub inj_right: GraphMorphism,
}

/// The pushout of `f : Z -> X` and `g : Z -> Y`, computed as the coequalizer
/// of the two composites into `X + Y`.
pub fn pushout(f: &GraphMorphism, g: &GraphMorphism) -> Result<Pushout> {
    if f.dom() != g.dom() {
        return Err(Error::CompositionMismatch);
    }
    let cop = coproduct(f.cod(), g.cod())?;
    let ce = coequalizer(&f.then(&cop.inj_left)?, &g.then(&cop.inj_right)?)?;
    Ok(Pushout {
        graph: ce.graph.clone(),
        inj_left: cop.inj_left.then(&ce.quotient)?,
        inj_right: cop.inj_right.then(&ce.quotient)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, representable_arc, representable_node};
    use crate::hom::enumerate_homs;

    #[test]
    fn initial_and_terminal_are_the_stated_graphs() {
        assert_eq!(initial().node_count(), 0);
        assert_eq!(initial().arc_count(), 0);
        assert_eq!(terminal().node_count(), 1);
        assert_eq!(terminal().arc_count(), 1);
        let one = terminal();
        let loop_arc = one.arc_ids().next().unwrap();
        assert_eq!(one.src(loop_arc), one.tgt(loop_arc));
    }

    #[test]
    fn no_morphism_from_terminal_to_initial() {
        assert_eq!(enumerate_homs(&terminal(), &initial()).unwrap().len(), 0);
    }

    #[test]
    fn terminal_is_the_one_self_loop_up_to_iso() {
        let hand_built = FiniteGraph::build(&["pt"], &[("self", "pt", "pt")]).unwrap();
        assert!(are_isomorphic(&hand_built, &terminal()).is_some());
    }

    #[test]
    fn unique_maps_in_and_out() {
        let g = FiniteGraph::build(&["x", "y"], &[("a", "x", "y")]).unwrap();
        assert_eq!(enumerate_homs(&initial(), &g).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&g, &terminal()).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&g, &terminal()).unwrap()[0], to_terminal(&g));
    }

    #[test]
    fn product_of_one_arrow_with_itself() {
        let a = representable_arc();
        let p = product(&a, &a).unwrap();
        assert_eq!(p.graph.node_count(), 4);
        assert_eq!(p.graph.arc_count(), 1);
    }

    #[test]
    fn product_with_node_strips_arcs() {
        let n = representable_node();
        let g = FiniteGraph::build(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]).unwrap();
        let p = product(&n, &g).unwrap();
        assert_eq!(p.graph.node_count(), g.node_count());
        assert_eq!(p.graph.arc_count(), 0);
    }

    #[test]
    fn product_with_terminal_is_identity_up_to_iso() {
        let g = FiniteGraph::build(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
        let p = product(&terminal(), &g).unwrap();
        assert!(are_isomorphic(&p.graph, &g).is_some());
    }

    #[test]
    fn coproduct_counts_and_units() {
        let n = representable_node();
        let two = coproduct(&n, &n).unwrap();
        assert_eq!(two.graph.node_count(), 2);
        assert_eq!(two.graph.arc_count(), 0);
        assert!(two.inj_left.is_mono());
        assert!(two.inj_right.is_mono());

        let a = representable_arc();
        let doubled = coproduct(&a, &a).unwrap();
        assert_eq!(doubled.graph.node_count(), 4);
        assert_eq!(doubled.graph.arc_count(), 2);

        let g = FiniteGraph::build(&["x"], &[("a", "x", "x")]).unwrap();
        let from_zero = coproduct(&initial(), &g).unwrap();
        assert!(are_isomorphic(&from_zero.graph, &g).is_some());
    }

    #[test]
    fn equalizer_of_equal_pair_is_full() {
        let a = representable_arc();
        let id = GraphMorphism::identity(&a);
        assert!(equalizer(&id, &id).unwrap().is_full());
    }

    #[test]
    fn equalizer_of_source_and_target_picks_is_empty() {
        let n = representable_node();
        let a = representable_arc();
        let s_hat = GraphMorphism::build(&n, &a, &[("N", "s")], &[]).unwrap();
        let t_hat = GraphMorphism::build(&n, &a, &[("N", "t")], &[]).unwrap();
        assert!(equalizer(&s_hat, &t_hat).unwrap().is_empty());
        assert!(equalizer(&s_hat, &t_hat).unwrap().inclusion().is_mono());
    }

    #[test]
    fn coequalizer_glues_endpoints_into_a_loop() {
        let n = representable_node();
        let a = representable_arc();
        let s_hat = GraphMorphism::build(&n, &a, &[("N", "s")], &[]).unwrap();
        let t_hat = GraphMorphism::build(&n, &a, &[("N", "t")], &[]).unwrap();
        let ce = coequalizer(&s_hat, &t_hat).unwrap();
        assert!(are_isomorphic(&ce.graph, &terminal()).is_some());
        assert!(ce.quotient.is_epi());
        // Class representative is the minimum identifier.
        assert!(ce.graph.has_node(&"s".into()));
    }

    #[test]
    fn pullback_of_identities_recovers_the_object() {
        let a = representable_arc();
        let id = GraphMorphism::identity(&a);
        let pb = pullback(&id, &id).unwrap();
        assert!(are_isomorphic(&pb.graph, &a).is_some());
    }

    #[test]
    fn pushout_of_identities_recovers_the_object() {
        let a = representable_arc();
        let id = GraphMorphism::identity(&a);
        let po = pushout(&id, &id).unwrap();
        assert!(are_isomorphic(&po.graph, &a).is_some());
    }

    #[test]
    fn pairing_satisfies_projection_equations() {
        let a = representable_arc();
        let g = FiniteGraph::build(&["x", "y", "z"], &[("a", "x", "y"), ("b", "x", "z")]).unwrap();
        let p = product(&a, &g).unwrap();
        for f in enumerate_homs(&a, &a).unwrap() {
            for h in enumerate_homs(&a, &g).unwrap() {
                let paired = pair_morphism(&f, &h, &p).unwrap();
                assert_eq!(paired.then(&p.proj_left).unwrap(), f);
                assert_eq!(paired.then(&p.proj_right).unwrap(), h);
            }
        }
    }

    #[test]
    fn copairing_satisfies_injection_equations() {
        let n = representable_node();
        let a = representable_arc();
        let cop = coproduct(&n, &n).unwrap();
        let s_hat = GraphMorphism::build(&n, &a, &[("N", "s")], &[]).unwrap();
        let t_hat = GraphMorphism::build(&n, &a, &[("N", "t")], &[]).unwrap();
        let st = copair(&s_hat, &t_hat, &cop).unwrap();
        assert_eq!(cop.inj_left.then(&st).unwrap(), s_hat);
        assert_eq!(cop.inj_right.then(&st).unwrap(), t_hat);
        assert!(st.is_mono());
    }

    #[test]
    fn product_size_cap_is_enforced() {
        let g = FiniteGraph::build(&["x", "y"], &[]).unwrap();
        let err = product_capped(&g, &g, 3).unwrap_err();
        assert!(err.is_size_cap());
    }
}
