//! The text format for graphs, labelled graphs and automata.
//!
//! One declaration per line, `#` starts a comment:
//!
//! ```text
//! graph G
//! node x
//! node y
//! arc a x y         # unlabelled arc
//! arc b x y beta    # labelled arc
//! sub S { x y a }   # named subobject, endpoint closure is validated
//! ```
//!
//! Either every arc carries a label or none does. Automaton files use
//! `automaton`, `symbol`, `state` and `trans` declarations instead:
//!
//! ```text
//! automaton M
//! symbol alpha
//! state q0
//! state q1
//! trans alpha q0 q1   # q1 is in delta(alpha, q0)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use graphtopos::graph::{ArcId, FiniteGraph, NodeId, Subobject};
use graphtopos::slice::{Alphabet, Automaton, LabelledGraph};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A parsed graph document: the graph (labelled or not) plus its named
/// subobjects.
#[derive(Debug, Clone)]
pub struct GraphDocument {
    pub name: String,
    pub object: ParsedObject,
    pub subobjects: BTreeMap<String, Subobject>,
}

#[derive(Debug, Clone)]
pub enum ParsedObject {
    Plain(FiniteGraph),
    Labelled(LabelledGraph),
}

impl ParsedObject {
    pub fn graph(&self) -> &FiniteGraph {
        match self {
            ParsedObject::Plain(g) => g,
            ParsedObject::Labelled(l) => l.graph(),
        }
    }

    pub fn labelled(&self) -> Option<&LabelledGraph> {
        match self {
            ParsedObject::Plain(_) => None,
            ParsedObject::Labelled(l) => Some(l),
        }
    }
}

fn check_identifier(token: &str, line: usize) -> Result<(), ParseError> {
    if token.contains(['{', '}', '#']) {
        return err(line, format!("identifier {token} may not contain {{, }} or #"));
    }
    Ok(())
}

/// Splits a line into tokens, dropping `#` comments.
fn tokens(line: &str) -> Vec<&str> {
    let code = line.split('#').next().unwrap_or("");
    code.split_whitespace().collect()
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, ParseError> {
    let mut name: Option<String> = None;
    let mut nodes: Vec<(usize, String)> = Vec::new();
    let mut arcs: Vec<(usize, String, String, String, Option<String>)> = Vec::new();
    let mut subs: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "graph" => {
                if toks.len() != 2 {
                    return err(line, "expected: graph <name>");
                }
                if name.is_some() {
                    return err(line, "duplicate graph declaration");
                }
                check_identifier(toks[1], line)?;
                name = Some(toks[1].to_owned());
            }
            "node" => {
                if toks.len() != 2 {
                    return err(line, "expected: node <id>");
                }
                check_identifier(toks[1], line)?;
                nodes.push((line, toks[1].to_owned()));
            }
            "arc" => {
                if toks.len() != 4 && toks.len() != 5 {
                    return err(line, "expected: arc <id> <src> <tgt> [<label>]");
                }
                for t in &toks[1..] {
                    check_identifier(t, line)?;
                }
                arcs.push((
                    line,
                    toks[1].to_owned(),
                    toks[2].to_owned(),
                    toks[3].to_owned(),
                    toks.get(4).map(|s| (*s).to_owned()),
                ));
            }
            "sub" => {
                if toks.len() < 4 || toks[2] != "{" || *toks.last().unwrap() != "}" {
                    return err(line, "expected: sub <name> { <id> ... }");
                }
                check_identifier(toks[1], line)?;
                let ids = toks[3..toks.len() - 1]
                    .iter()
                    .map(|s| (*s).to_owned())
                    .collect();
                subs.push((line, toks[1].to_owned(), ids));
            }
            other => return err(line, format!("unknown declaration {other}")),
        }
    }

    let name = match name {
        Some(n) => n,
        None => return err(1, "missing graph declaration"),
    };

    // Reference checking with line numbers before handing off to the
    // library constructors.
    let mut node_set = BTreeSet::new();
    for (line, n) in &nodes {
        if !node_set.insert(n.clone()) {
            return err(*line, format!("duplicate node {n}"));
        }
    }
    let mut arc_set = BTreeSet::new();
    for (line, a, s, t, _) in &arcs {
        if node_set.contains(a) {
            return err(*line, format!("{a} is already a node identifier"));
        }
        if !arc_set.insert(a.clone()) {
            return err(*line, format!("duplicate arc {a}"));
        }
        if !node_set.contains(s) {
            return err(*line, format!("unknown node {s}"));
        }
        if !node_set.contains(t) {
            return err(*line, format!("unknown node {t}"));
        }
    }

    let graph = FiniteGraph::new(
        nodes.iter().map(|(_, n)| NodeId::from(n.as_str())),
        arcs.iter().map(|(_, a, s, t, _)| {
            (
                ArcId::from(a.as_str()),
                NodeId::from(s.as_str()),
                NodeId::from(t.as_str()),
            )
        }),
    )
    .map_err(|e| ParseError {
        line: 1,
        message: e.to_string(),
    })?;

    // All-or-nothing labelling.
    let labelled_count = arcs.iter().filter(|(_, _, _, _, l)| l.is_some()).count();
    let object = if labelled_count == 0 {
        ParsedObject::Plain(graph.clone())
    } else if labelled_count == arcs.len() {
        let labels: BTreeMap<ArcId, String> = arcs
            .iter()
            .map(|(_, a, _, _, l)| (ArcId::from(a.as_str()), l.clone().unwrap()))
            .collect();
        let alphabet = Alphabet::new(labels.values().cloned())
            .expect("nonempty since labelled_count > 0");
        let labelled = LabelledGraph::new(graph.clone(), labels, alphabet).map_err(|e| {
            ParseError {
                line: 1,
                message: e.to_string(),
            }
        })?;
        ParsedObject::Labelled(labelled)
    } else {
        let (line, a, ..) = arcs.iter().find(|(_, _, _, _, l)| l.is_none()).unwrap();
        return err(*line, format!("arc {a} is missing a label while other arcs are labelled"));
    };

    let mut subobjects = BTreeMap::new();
    for (line, sub_name, ids) in subs {
        if subobjects.contains_key(&sub_name) {
            return err(line, format!("duplicate subobject {sub_name}"));
        }
        let mut sub_nodes = BTreeSet::new();
        let mut sub_arcs = BTreeSet::new();
        for id in &ids {
            if node_set.contains(id) {
                sub_nodes.insert(NodeId::from(id.as_str()));
            } else if arc_set.contains(id) {
                sub_arcs.insert(ArcId::from(id.as_str()));
            } else {
                return err(line, format!("unknown identifier {id} in subobject {sub_name}"));
            }
        }
        // Endpoint closure is validated, not inferred.
        let sub = Subobject::new(&graph, sub_nodes, sub_arcs).map_err(|e| ParseError {
            line,
            message: format!("subobject {sub_name}: {e}"),
        })?;
        subobjects.insert(sub_name, sub);
    }

    Ok(GraphDocument {
        name,
        object,
        subobjects,
    })
}

/// Emits a graph document; parsing the result yields an identical object.
pub fn emit_graph(
    name: &str,
    graph: &FiniteGraph,
    labels: Option<&BTreeMap<ArcId, String>>,
    subobjects: &BTreeMap<String, Subobject>,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {name}\n"));
    for n in graph.nodes() {
        out.push_str(&format!("node {n}\n"));
    }
    for (a, s, t) in graph.arcs() {
        match labels.and_then(|m| m.get(a)) {
            Some(l) => out.push_str(&format!("arc {a} {s} {t} {l}\n")),
            None => out.push_str(&format!("arc {a} {s} {t}\n")),
        }
    }
    for (sub_name, sub) in subobjects {
        out.push_str(&format!("sub {sub_name} {{"));
        for n in sub.nodes() {
            out.push_str(&format!(" {n}"));
        }
        for a in sub.arcs() {
            out.push_str(&format!(" {a}"));
        }
        out.push_str(" }\n");
    }
    out
}

pub fn parse_automaton(text: &str) -> Result<(String, Automaton), ParseError> {
    let mut name: Option<String> = None;
    let mut symbols: Vec<String> = Vec::new();
    let mut states: BTreeSet<String> = BTreeSet::new();
    let mut transitions: Vec<(usize, String, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "automaton" => {
                if toks.len() != 2 {
                    return err(line, "expected: automaton <name>");
                }
                if name.is_some() {
                    return err(line, "duplicate automaton declaration");
                }
                name = Some(toks[1].to_owned());
            }
            "symbol" => {
                if toks.len() != 2 {
                    return err(line, "expected: symbol <id>");
                }
                symbols.push(toks[1].to_owned());
            }
            "state" => {
                if toks.len() != 2 {
                    return err(line, "expected: state <id>");
                }
                if !states.insert(toks[1].to_owned()) {
                    return err(line, format!("duplicate state {}", toks[1]));
                }
            }
            "trans" => {
                if toks.len() != 4 {
                    return err(line, "expected: trans <symbol> <from> <to>");
                }
                transitions.push((
                    line,
                    toks[1].to_owned(),
                    toks[2].to_owned(),
                    toks[3].to_owned(),
                ));
            }
            other => return err(line, format!("unknown declaration {other}")),
        }
    }

    let name = match name {
        Some(n) => n,
        None => return err(1, "missing automaton declaration"),
    };
    let alphabet = Alphabet::new(symbols.iter().cloned()).map_err(|_| ParseError {
        line: 1,
        message: "automaton needs at least one symbol".to_owned(),
    })?;
    let mut delta: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    for (line, symbol, from, to) in transitions {
        if !alphabet.contains(&symbol) {
            return err(line, format!("unknown symbol {symbol}"));
        }
        if !states.contains(&from) {
            return err(line, format!("unknown state {from}"));
        }
        if !states.contains(&to) {
            return err(line, format!("unknown state {to}"));
        }
        delta.entry((symbol, from)).or_default().insert(to);
    }
    let automaton = Automaton::new(states, alphabet, delta).map_err(|e| ParseError {
        line: 1,
        message: e.to_string(),
    })?;
    Ok((name, automaton))
}

pub fn emit_automaton(name: &str, automaton: &Automaton) -> String {
    let mut out = String::new();
    out.push_str(&format!("automaton {name}\n"));
    for symbol in automaton.alphabet().symbols() {
        out.push_str(&format!("symbol {symbol}\n"));
    }
    for state in automaton.states() {
        out.push_str(&format!("state {state}\n"));
    }
    for symbol in automaton.alphabet().symbols() {
        for state in automaton.states() {
            for target in automaton.targets(symbol, state) {
                out.push_str(&format!("trans {symbol} {state} {target}\n"));
            }
        }
    }
    out
}
