//! The slice category of arc-labelled graphs and its transition systems.
//!
//! An object over an alphabet is a graph together with a total labelling of
//! its arcs; equivalently, a morphism into the one-node graph whose
//! self-loops are the symbols. Slice morphisms are graph morphisms that
//! preserve labels. The slice classifier is the product of that one-node
//! graph with the classifier, labelled by the first projection.
//!
//! Transition systems are the labelled graphs with at most one arc per
//! (source, target, label) triple; they coincide with the objects separated
//! for the labelwise double-negation topology, and their strong subobjects
//! are exactly the induced labelled subgraphs (state removals).

use std::collections::{BTreeMap, BTreeSet};

use crate::classifier::{characteristic, omega, TruthValue};
use crate::error::{Error, Result};
use crate::graph::{pair_id, ArcId, FiniteGraph, GraphMorphism, NodeId, Subobject};
use crate::hom::enumerate_homs_capped;
use crate::limits::product;
use crate::topology::{double_negation, is_dense};

/// A finite, nonempty set of arc labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Alphabet(BTreeSet<String>);

impl Alphabet {
    pub fn new<I: IntoIterator<Item = String>>(symbols: I) -> Result<Self> {
        let set: BTreeSet<String> = symbols.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet(set))
    }

    pub fn build(symbols: &[&str]) -> Result<Self> {
        Alphabet::new(symbols.iter().map(|s| (*s).to_owned()))
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.0.contains(symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; emptiness is ruled out at construction.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The one-node graph whose self-loops are the symbols of the alphabet.
pub fn sigma_graph(alphabet: &Alphabet) -> FiniteGraph {
    FiniteGraph::new(
        [NodeId::from("*")],
        alphabet
            .symbols()
            .map(|sym| (ArcId::from(sym.as_str()), NodeId::from("*"), NodeId::from("*"))),
    )
    .expect("symbols are distinct and distinct from *")
}

/// A graph with a total arc labelling into an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    graph: FiniteGraph,
    labels: BTreeMap<ArcId, String>,
    alphabet: Alphabet,
}

impl LabelledGraph {
    pub fn new(
        graph: FiniteGraph,
        labels: BTreeMap<ArcId, String>,
        alphabet: Alphabet,
    ) -> Result<Self> {
        for a in graph.arc_ids() {
            match labels.get(a) {
                None => {
                    return Err(Error::MissingLabel { arc: a.to_string() });
                }
                Some(l) if !alphabet.contains(l) => {
                    return Err(Error::UnknownLabel {
                        arc: a.to_string(),
                        label: l.clone(),
                    });
                }
                _ => {}
            }
        }
        for a in labels.keys() {
            if !graph.has_arc(a) {
                return Err(Error::UnknownId {
                    what: "labelling",
                    id: a.to_string(),
                });
            }
        }
        Ok(LabelledGraph {
            graph,
            labels,
            alphabet,
        })
    }

    /// Convenience constructor: arcs are `(id, src, tgt, label)`.
    pub fn build(
        nodes: &[&str],
        arcs: &[(&str, &str, &str, &str)],
        alphabet: &Alphabet,
    ) -> Result<Self> {
        let graph = FiniteGraph::build(
            nodes,
            &arcs
                .iter()
                .map(|(a, s, t, _)| (*a, *s, *t))
                .collect::<Vec<_>>(),
        )?;
        let labels = arcs
            .iter()
            .map(|(a, _, _, l)| (ArcId::from(*a), (*l).to_owned()))
            .collect();
        LabelledGraph::new(graph, labels, alphabet.clone())
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn labels(&self) -> &BTreeMap<ArcId, String> {
        &self.labels
    }

    /// Label of an arc. Panics if the arc is not in the graph.
    pub fn label(&self, a: &ArcId) -> &str {
        self.labels.get(a).expect("labelled arc")
    }

    /// The labelling as a morphism into the one-node symbol graph.
    pub fn label_morphism(&self) -> GraphMorphism {
        let sigma = sigma_graph(&self.alphabet);
        GraphMorphism::new(
            &self.graph,
            &sigma,
            self.graph
                .nodes()
                .map(|n| (n.clone(), NodeId::from("*")))
                .collect(),
            self.labels
                .iter()
                .map(|(a, l)| (a.clone(), ArcId::from(l.as_str())))
                .collect(),
        )
        .expect("labelling is natural")
    }

    /// The same labelled graph regarded over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<LabelledGraph> {
        LabelledGraph::new(self.graph.clone(), self.labels.clone(), alphabet)
    }

    /// The labelled graph carried by a subobject of the underlying graph.
    pub fn restrict_to(&self, sub: &Subobject) -> Result<LabelledGraph> {
        if sub.ambient() != &self.graph {
            return Err(Error::CompositionMismatch);
        }
        let graph = sub.to_graph();
        let labels = graph
            .arc_ids()
            .map(|a| (a.clone(), self.labels[a].clone()))
            .collect();
        LabelledGraph::new(graph, labels, self.alphabet.clone())
    }
}

/// Checks that `f` is a label-preserving morphism from `l` to `m`.
pub fn validate_slice_morphism(f: &GraphMorphism, l: &LabelledGraph, m: &LabelledGraph) -> bool {
    f.dom() == l.graph()
        && f.cod() == m.graph()
        && l.alphabet == m.alphabet
        && f.arc_map()
            .iter()
            .all(|(a, img)| l.label(a) == m.label(img))
}

/// All label-preserving morphisms between two labelled graphs, in the
/// enumeration order of the underlying hom-set.
pub fn enumerate_slice_homs(
    l: &LabelledGraph,
    m: &LabelledGraph,
    cap: f64,
) -> Result<Vec<GraphMorphism>> {
    if l.alphabet() != m.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(enumerate_homs_capped(l.graph(), m.graph(), cap)?
        .into_iter()
        .filter(|f| {
            f.arc_map()
                .iter()
                .all(|(a, img)| l.label(a) == m.label(img))
        })
        .collect())
}

/// A transition system has at most one arc per (source, target, label).
pub fn is_transition_system(l: &LabelledGraph) -> bool {
    transition_system_violation(l).is_none()
}

/// The first pair of arcs sharing source, target and label, if any.
pub fn transition_system_violation(l: &LabelledGraph) -> Option<(ArcId, ArcId)> {
    let mut seen: BTreeMap<(&NodeId, &NodeId, &str), &ArcId> = BTreeMap::new();
    for (a, s, t) in l.graph().arcs() {
        if let Some(first) = seen.insert((s, t, l.label(a)), a) {
            return Some((first.clone(), a.clone()));
        }
    }
    None
}

/// The slice classifier: the product of the symbol graph with the
/// classifier, labelled by the first projection. Two nodes, five arcs per
/// symbol.
pub fn slice_classifier(alphabet: &Alphabet) -> LabelledGraph {
    let sigma = sigma_graph(alphabet);
    let prod = product(&sigma, &omega()).expect("small product");
    let labels = prod
        .graph
        .arc_ids()
        .map(|a| {
            let sym = prod.proj_left.on_arc(a);
            (a.clone(), sym.to_string())
        })
        .collect();
    LabelledGraph::new(prod.graph.clone(), labels, alphabet.clone())
        .expect("projection labelling is total")
}

/// The true arrow of the slice: the terminal labelled graph (the symbol
/// graph over itself) into the slice classifier.
pub fn slice_true(alphabet: &Alphabet) -> GraphMorphism {
    let sigma = sigma_graph(alphabet);
    let classifier = slice_classifier(alphabet);
    GraphMorphism::new(
        &sigma,
        classifier.graph(),
        [(
            NodeId::from("*"),
            NodeId::from(pair_id("*", TruthValue::NodeIn.id())),
        )]
        .into(),
        alphabet
            .symbols()
            .map(|sym| {
                (
                    ArcId::from(sym.as_str()),
                    ArcId::from(pair_id(sym, TruthValue::ArcIn.id())),
                )
            })
            .collect(),
    )
    .expect("true arrow of the slice")
}

/// The terminal object of the slice: the symbol graph labelled by itself.
pub fn slice_terminal(alphabet: &Alphabet) -> LabelledGraph {
    let sigma = sigma_graph(alphabet);
    let labels = sigma
        .arc_ids()
        .map(|a| (a.clone(), a.to_string()))
        .collect();
    LabelledGraph::new(sigma, labels, alphabet.clone()).expect("identity labelling")
}

/// The characteristic arrow of a labelled subobject into the slice
/// classifier: pairs the label of each arc with its unlabelled truth value.
pub fn slice_characteristic(l: &LabelledGraph, sub: &Subobject) -> Result<GraphMorphism> {
    if sub.ambient() != l.graph() {
        return Err(Error::CompositionMismatch);
    }
    let chi = characteristic(sub);
    let classifier = slice_classifier(l.alphabet());
    let node_map = l
        .graph()
        .nodes()
        .map(|n| {
            (
                n.clone(),
                NodeId::from(pair_id("*", chi.on_node(n).as_str())),
            )
        })
        .collect();
    let arc_map = l
        .graph()
        .arc_ids()
        .map(|a| {
            (
                a.clone(),
                ArcId::from(pair_id(l.label(a), chi.on_arc(a).as_str())),
            )
        })
        .collect();
    GraphMorphism::new(l.graph(), classifier.graph(), node_map, arc_map)
}

/// The labelled subobject classified by a slice morphism into the slice
/// classifier.
pub fn slice_subobject_from_characteristic(
    l: &LabelledGraph,
    chi: &GraphMorphism,
) -> Result<Subobject> {
    let classifier = slice_classifier(l.alphabet());
    if chi.dom() != l.graph() || chi.cod() != classifier.graph() {
        return Err(Error::WrongShape {
            expected: "a slice morphism into the slice classifier",
        });
    }
    let node_in = NodeId::from(pair_id("*", TruthValue::NodeIn.id()));
    let nodes = l
        .graph()
        .nodes()
        .filter(|n| *chi.on_node(n) == node_in)
        .cloned()
        .collect();
    let arcs = l
        .graph()
        .arc_ids()
        .filter(|a| {
            *chi.on_arc(a) == ArcId::from(pair_id(l.label(a), TruthValue::ArcIn.id()))
        })
        .cloned()
        .collect();
    Subobject::new(l.graph(), nodes, arcs)
}

/// Separatedness of a labelled graph for the labelwise double-negation
/// topology coincides with being a transition system.
pub fn is_separated_ts(l: &LabelledGraph) -> bool {
    is_transition_system(l)
}

/// Verdict of the slice separation oracle; mirrors
/// [`crate::topology::SeparationReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceSeparationReport {
    pub separated: bool,
    pub complete: bool,
    pub probes: usize,
}

/// The definitional separation oracle in the slice, for the labelwise
/// double-negation topology. Density in the slice coincides with density of
/// the underlying subobject: closure adds every arc (with its label) whose
/// endpoints are present, so a subobject is dense exactly when it has all
/// the nodes.
pub fn slice_separation_oracle(
    x: &LabelledGraph,
    corpus: &[LabelledGraph],
    cap: f64,
) -> Result<SliceSeparationReport> {
    let nn = double_negation();
    let mut separated = true;
    let mut complete = true;
    let mut probes = 0;
    for y in corpus {
        if y.alphabet() != x.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let from_y = enumerate_slice_homs(y, x, cap)?;
        for sub in y.graph().subobjects() {
            if !is_dense(&sub, &nn) {
                continue;
            }
            let s = y.restrict_to(&sub)?;
            let inclusion = sub.inclusion();
            let from_sub = enumerate_slice_homs(&s, x, cap)?;
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
    Ok(SliceSeparationReport {
        separated,
        complete,
        probes,
    })
}

/// The product in the slice: the synchronous product. Nodes are node pairs;
/// arcs are pairs of equally-labelled arcs, carrying the common label.
pub fn slice_product(l: &LabelledGraph, m: &LabelledGraph) -> Result<LabelledGraph> {
    if l.alphabet() != m.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut nodes = Vec::new();
    for ln in l.graph().nodes() {
        for mn in m.graph().nodes() {
            nodes.push(NodeId::from(pair_id(ln.as_str(), mn.as_str())));
        }
    }
    let mut arcs = Vec::new();
    let mut labels = BTreeMap::new();
    for (la, ls, lt) in l.graph().arcs() {
        for (ma, ms, mt) in m.graph().arcs() {
            if l.label(la) != m.label(ma) {
                continue;
            }
            let id = ArcId::from(pair_id(la.as_str(), ma.as_str()));
            labels.insert(id.clone(), l.label(la).to_owned());
            arcs.push((
                id,
                NodeId::from(pair_id(ls.as_str(), ms.as_str())),
                NodeId::from(pair_id(lt.as_str(), mt.as_str())),
            ));
        }
    }
    let graph = FiniteGraph::new(nodes, arcs)?;
    LabelledGraph::new(graph, labels, l.alphabet().clone())
}

/// Strong monomorphisms into a transition system are the induced labelled
/// subgraph inclusions: the image must contain every ambient arc running
/// between image nodes, whatever its label.
pub fn is_strong_mono(f: &GraphMorphism, l: &LabelledGraph, m: &LabelledGraph) -> Result<bool> {
    if !validate_slice_morphism(f, l, m) {
        return Err(Error::WrongShape {
            expected: "a label-preserving morphism between the given labelled graphs",
        });
    }
    if !f.is_mono() {
        return Err(Error::NotMono);
    }
    let image = f.image();
    Ok(m.graph().arcs().all(|(a, s, t)| {
        !(image.has_node(s) && image.has_node(t)) || image.has_arc(a)
    }))
}

/// The definitional strong-mono check: every commutative square over an
/// epimorphism of transition systems admits a diagonal.
///
/// Epimorphisms in the category of transition systems are the
/// node-surjective morphisms: the image of such a map contains a dense
/// subobject, and morphisms into a separated object agreeing on a dense
/// subobject are equal; conversely a missed node can be duplicated to build
/// two distinct morphisms agreeing on the image. The probe squares range
/// over the transition systems in `corpus`.
pub fn strong_mono_fillin_oracle(
    f: &GraphMorphism,
    l: &LabelledGraph,
    m: &LabelledGraph,
    corpus: &[LabelledGraph],
    cap: f64,
) -> Result<bool> {
    if !validate_slice_morphism(f, l, m) {
        return Err(Error::WrongShape {
            expected: "a label-preserving morphism between the given labelled graphs",
        });
    }
    if !f.is_mono() {
        return Err(Error::NotMono);
    }
    let systems: Vec<&LabelledGraph> = corpus
        .iter()
        .filter(|y| is_transition_system(y))
        .collect();
    for x in &systems {
        let into_l = enumerate_slice_homs(x, l, cap)?;
        if into_l.is_empty() {
            continue;
        }
        for y in &systems {
            let epis: Vec<GraphMorphism> = enumerate_slice_homs(x, y, cap)?
                .into_iter()
                .filter(|e| {
                    let images: BTreeSet<_> = e.node_map().values().collect();
                    images.len() == y.graph().node_count()
                })
                .collect();
            if epis.is_empty() {
                continue;
            }
            let into_m = enumerate_slice_homs(y, m, cap)?;
            let diagonals = enumerate_slice_homs(y, l, cap)?;
            for e in &epis {
                for top in &into_l {
                    let left = top.then(f)?;
                    for bottom in &into_m {
                        if e.then(bottom)? != left {
                            continue;
                        }
                        let has_diagonal = diagonals.iter().any(|d| {
                            e.then(d).expect("composable") == *top
                                && d.then(f).expect("composable") == *bottom
                        });
                        if !has_diagonal {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// A nondeterministic automaton: a target-set transition function over an
/// alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    states: BTreeSet<String>,
    alphabet: Alphabet,
    delta: BTreeMap<(String, String), BTreeSet<String>>,
}

impl Automaton {
    /// Builds an automaton; `delta` entries are `((symbol, state), targets)`
    /// and missing entries default to the empty set, so the function is
    /// total.
    pub fn new<I>(states: BTreeSet<String>, alphabet: Alphabet, delta: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((String, String), BTreeSet<String>)>,
    {
        let mut table: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
        for ((symbol, state), targets) in delta {
            if !alphabet.contains(&symbol) {
                return Err(Error::UnknownLabel {
                    arc: state,
                    label: symbol,
                });
            }
            if !states.contains(&state) {
                return Err(Error::UnknownId {
                    what: "transition source",
                    id: state,
                });
            }
            for t in &targets {
                if !states.contains(t) {
                    return Err(Error::UnknownId {
                        what: "transition target",
                        id: t.clone(),
                    });
                }
            }
            table.insert((symbol, state), targets);
        }
        for symbol in alphabet.symbols() {
            for state in &states {
                table.entry((symbol.clone(), state.clone())).or_default();
            }
        }
        Ok(Automaton {
            states,
            alphabet,
            delta: table,
        })
    }

    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Targets of `state` under `symbol`.
    pub fn targets(&self, symbol: &str, state: &str) -> &BTreeSet<String> {
        self.delta
            .get(&(symbol.to_owned(), state.to_owned()))
            .expect("delta is total")
    }
}

fn transition_arc_id(state: &str, symbol: &str, target: &str) -> ArcId {
    ArcId::from(format!("({state},{symbol},{target})"))
}

/// The transition graph of an automaton: states become nodes and
/// `y in delta(symbol, x)` becomes an arc `x -> y` labelled `symbol`.
pub fn automaton_to_lts(a: &Automaton) -> Result<LabelledGraph> {
    let mut arcs = Vec::new();
    let mut labels = BTreeMap::new();
    for ((symbol, state), targets) in &a.delta {
        for target in targets {
            let id = transition_arc_id(state, symbol, target);
            labels.insert(id.clone(), symbol.clone());
            arcs.push((id, NodeId::from(state.as_str()), NodeId::from(target.as_str())));
        }
    }
    let graph = FiniteGraph::new(a.states.iter().map(|s| NodeId::from(s.as_str())), arcs)?;
    LabelledGraph::new(graph, labels, a.alphabet.clone())
}

/// The automaton of a transition system. Rejects labelled graphs with
/// parallel equally-labelled arcs, which have no target-set representation.
pub fn lts_to_automaton(l: &LabelledGraph) -> Result<Automaton> {
    if let Some((first, second)) = transition_system_violation(l) {
        return Err(Error::NotTransitionSystem {
            first: first.to_string(),
            second: second.to_string(),
        });
    }
    let states: BTreeSet<String> = l.graph().nodes().map(|n| n.to_string()).collect();
    let mut delta: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    for (a, s, t) in l.graph().arcs() {
        delta
            .entry((l.label(a).to_owned(), s.to_string()))
            .or_default()
            .insert(t.to_string());
    }
    Automaton::new(states, l.alphabet().clone(), delta)
}

/// The automaton morphism condition for a map of states:
/// `f(delta(symbol, x))` must be contained in `delta'(symbol, f(x))`.
pub fn is_automaton_morphism(
    a: &Automaton,
    b: &Automaton,
    f: &BTreeMap<String, String>,
) -> Result<bool> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    for state in &a.states {
        match f.get(state) {
            None => {
                return Err(Error::MissingImage {
                    what: "state map",
                    id: state.clone(),
                })
            }
            Some(img) if !b.states.contains(img) => {
                return Err(Error::UnknownId {
                    what: "state map",
                    id: img.clone(),
                })
            }
            _ => {}
        }
    }
    for ((symbol, state), targets) in &a.delta {
        let image_targets = b.targets(symbol, &f[state]);
        for t in targets {
            if !image_targets.contains(&f[t]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Extends a node map to a label-preserving morphism between transition
/// systems, if possible. The extension is unique because the target has at
/// most one candidate arc per (source, target, label).
pub fn extend_node_map_to_slice(
    l: &LabelledGraph,
    m: &LabelledGraph,
    node_map: &BTreeMap<NodeId, NodeId>,
) -> Result<Option<GraphMorphism>> {
    if let Some((first, second)) = transition_system_violation(m) {
        return Err(Error::NotTransitionSystem {
            first: first.to_string(),
            second: second.to_string(),
        });
    }
    let mut arc_map = BTreeMap::new();
    for (a, s, t) in l.graph().arcs() {
        let (ms, mt) = match (node_map.get(s), node_map.get(t)) {
            (Some(ms), Some(mt)) => (ms, mt),
            _ => {
                return Err(Error::MissingImage {
                    what: "node map",
                    id: s.to_string(),
                })
            }
        };
        let candidate = m
            .graph()
            .arcs_between(ms, mt)
            .into_iter()
            .find(|b| m.label(b) == l.label(a));
        match candidate {
            Some(b) => {
                arc_map.insert(a.clone(), b.clone());
            }
            None => return Ok(None),
        }
    }
    match GraphMorphism::new(l.graph(), m.graph(), node_map.clone(), arc_map) {
        Ok(f) => Ok(Some(f)),
        Err(_) => Ok(None),
    }
}
