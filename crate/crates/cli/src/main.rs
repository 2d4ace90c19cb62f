//! Command-line front end: parse graph and automaton files, run the
//! constructions, print tables, graph documents or DOT.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 size cap
//! exceeded.

mod dot;
mod format;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use format::{GraphDocument, ParsedObject};
use graphtopos::classifier::{characteristic, omega, TruthValue};
use graphtopos::corpus::{graph_corpus, labelled_corpus};
use graphtopos::exponential::exponential_capped;
use graphtopos::graph::{representable_arc, representable_node, FiniteGraph, Subobject};
use graphtopos::hom::enumerate_homs_capped;
use graphtopos::limits::{initial, product, terminal};
use graphtopos::slice::{
    automaton_to_lts, enumerate_slice_homs, is_strong_mono, is_transition_system,
    lts_to_automaton, slice_characteristic, slice_product, slice_separation_oracle,
    strong_mono_fillin_oracle, transition_system_violation, LabelledGraph,
};
use graphtopos::topology::{
    closure, definitional_separation_oracle, enumerate_topologies, is_dense, is_separated,
    is_sheaf, minimum_dense, topology_by_name, Topology, TopologyName,
};

#[derive(Parser)]
#[command(
    name = "graphtopos",
    version,
    about = "Computations in the topos of finite directed multigraphs",
    after_help = "Graph arguments accept a file in the graph format or one of the \
builtin names 0, 1, N, A, omega. See the README for the file formats."
)]
struct Cli {
    /// Cap on raw assignment candidates for morphism enumeration.
    #[arg(
        long,
        global = true,
        env = "GRAPHTOPOS_CAP_HOMS",
        default_value_t = graphtopos::DEFAULT_HOM_CAP
    )]
    cap_homs: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the subobject classifier as a graph document.
    ShowOmega {
        /// Emit DOT with truth-value names on the arcs.
        #[arg(long)]
        dot: bool,
    },
    /// List the four Lawvere-Tierney topologies with their truth tables.
    Topologies,
    /// Product of two graphs (synchronous product for labelled graphs).
    Product {
        left: String,
        right: String,
        #[arg(long)]
        dot: bool,
    },
    /// Coproduct (disjoint union) of two graphs.
    Coproduct {
        left: String,
        right: String,
        #[arg(long)]
        dot: bool,
    },
    /// Exponential H^G; arguments are the exponent G, then the base H.
    Exponential {
        exponent: String,
        base: String,
        #[arg(long)]
        dot: bool,
    },
    /// Number of morphisms between two graphs (label-preserving when both
    /// are labelled).
    HomCount { from: String, to: String },
    /// Characteristic arrow of a named subobject.
    Classify { file: String, sub: String },
    /// Count and list every subobject of a graph.
    Subobjects { file: String },
    /// Closure of a named subobject under a topology.
    Closure {
        file: String,
        sub: String,
        #[arg(long, value_enum)]
        topology: TopologyArg,
    },
    /// Density of a named subobject, or the minimum dense subobject.
    Dense {
        file: String,
        #[arg(long)]
        sub: Option<String>,
        #[arg(long, value_enum)]
        topology: TopologyArg,
    },
    /// Separatedness for a topology. Labelled graphs are checked labelwise
    /// for the double-negation topology.
    Separated {
        file: String,
        #[arg(long, value_enum)]
        topology: TopologyArg,
        /// Also run the definitional oracle over a probe corpus.
        #[arg(long)]
        oracle: bool,
        #[arg(long, env = "GRAPHTOPOS_CORPUS_MAX_NODES", default_value_t = 2)]
        corpus_max_nodes: usize,
        #[arg(long, env = "GRAPHTOPOS_CORPUS_MAX_ARCS", default_value_t = 2)]
        corpus_max_arcs: usize,
    },
    /// Sheaf check for a topology (unlabelled graphs).
    Sheaf {
        file: String,
        #[arg(long, value_enum)]
        topology: TopologyArg,
        #[arg(long)]
        oracle: bool,
        #[arg(long, env = "GRAPHTOPOS_CORPUS_MAX_NODES", default_value_t = 2)]
        corpus_max_nodes: usize,
        #[arg(long, env = "GRAPHTOPOS_CORPUS_MAX_ARCS", default_value_t = 2)]
        corpus_max_arcs: usize,
    },
    /// Transition-system check for a labelled graph.
    LtsCheck { file: String },
    /// Strong-mono check for the inclusion of a named subobject of a
    /// labelled graph.
    StrongMono {
        file: String,
        sub: String,
        /// Also run the diagonal fill-in oracle over a probe corpus.
        #[arg(long)]
        oracle: bool,
        #[arg(long, env = "GRAPHTOPOS_CORPUS_MAX_NODES", default_value_t = 2)]
        corpus_max_nodes: usize,
        #[arg(long, env = "GRAPHTOPOS_CORPUS_MAX_ARCS", default_value_t = 2)]
        corpus_max_arcs: usize,
    },
    /// Convert an automaton file to a labelled graph document.
    Aut2lts {
        file: String,
        #[arg(long)]
        dot: bool,
    },
    /// Convert a labelled transition system to an automaton file.
    Lts2aut { file: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    /// double negation
    Nn,
    /// the closed topology
    Closed,
    /// the identity topology
    Id,
    /// the constant-true topology
    Top,
}

impl TopologyArg {
    fn resolve(self) -> Topology {
        let name = match self {
            TopologyArg::Nn => TopologyName::DoubleNegation,
            TopologyArg::Closed => TopologyName::Closed,
            TopologyArg::Id => TopologyName::Identity,
            TopologyArg::Top => TopologyName::Top,
        };
        topology_by_name(name)
    }
}

enum CliError {
    Domain(String),
    Cap(String),
}

impl From<graphtopos::Error> for CliError {
    fn from(e: graphtopos::Error) -> Self {
        if e.is_size_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn builtin(name: &str) -> Option<GraphDocument> {
    let graph = match name {
        "0" => initial(),
        "1" => terminal(),
        "N" => representable_node(),
        "A" => representable_arc(),
        "omega" => omega(),
        _ => return None,
    };
    Some(GraphDocument {
        name: if name == "0" || name == "1" {
            format!("g{name}")
        } else {
            name.to_owned()
        },
        object: ParsedObject::Plain(graph),
        subobjects: BTreeMap::new(),
    })
}

fn load(arg: &str) -> Result<GraphDocument, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| domain(format!("{arg}: {e}")))?;
        format::parse_graph(&text).map_err(|e| domain(format!("{arg}: {e}")))
    } else {
        builtin(arg).ok_or_else(|| {
            domain(format!(
                "{arg}: no such file or builtin graph (builtins: 0, 1, N, A, omega)"
            ))
        })
    }
}

fn load_labelled(arg: &str) -> Result<(GraphDocument, LabelledGraph), CliError> {
    let doc = load(arg)?;
    match doc.object.labelled() {
        Some(l) => {
            let l = l.clone();
            Ok((doc, l))
        }
        None => Err(domain(format!("{arg}: expected a labelled graph"))),
    }
}

fn named_sub(doc: &GraphDocument, name: &str) -> Result<Subobject, CliError> {
    doc.subobjects
        .get(name)
        .cloned()
        .ok_or_else(|| domain(format!("no subobject named {name}")))
}

/// Regards two labelled graphs over the union of their alphabets, so files
/// that mention different labels still live in a common slice.
fn common_alphabet(
    l: &LabelledGraph,
    m: &LabelledGraph,
) -> Result<(LabelledGraph, LabelledGraph), CliError> {
    let union = graphtopos::slice::Alphabet::new(
        l.alphabet().symbols().chain(m.alphabet().symbols()).cloned(),
    )?;
    Ok((l.with_alphabet(union.clone())?, m.with_alphabet(union)?))
}

fn print_subobject(sub: &Subobject) -> String {
    let nodes: Vec<String> = sub.nodes().iter().map(|n| n.to_string()).collect();
    let arcs: Vec<String> = sub.arcs().iter().map(|a| a.to_string()).collect();
    format!("nodes: {}\narcs: {}\n", nodes.join(" "), arcs.join(" "))
}

fn emit_result(
    name: &str,
    graph: &FiniteGraph,
    labels: Option<&BTreeMap<graphtopos::graph::ArcId, String>>,
    want_dot: bool,
) -> String {
    if want_dot {
        dot::to_dot(name, graph, labels)
    } else {
        format::emit_graph(name, graph, labels, &BTreeMap::new())
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let cap = cli.cap_homs;
    match cli.command {
        Command::ShowOmega { dot: want_dot } => {
            let om = omega();
            if want_dot {
                Ok(dot::omega_to_dot(&om))
            } else {
                Ok(format::emit_graph("omega", &om, None, &BTreeMap::new()))
            }
        }

        Command::Topologies => {
            let mut out = String::new();
            let mut topologies = enumerate_topologies();
            topologies.sort_by_key(|t| t.name());
            for t in &topologies {
                let table = t.table();
                let cells: Vec<String> = TruthValue::ALL
                    .iter()
                    .map(|v| format!("{}->{}", v.label(), table[v].label()))
                    .collect();
                let _ = writeln!(out, "{:<16} {}", t.name().to_string(), cells.join("  "));
            }
            Ok(out)
        }

        Command::Product {
            left,
            right,
            dot: want_dot,
        } => {
            let l = load(&left)?;
            let r = load(&right)?;
            match (&l.object, &r.object) {
                (ParsedObject::Plain(g), ParsedObject::Plain(h)) => {
                    let p = product(g, h)?;
                    Ok(emit_result("product", &p.graph, None, want_dot))
                }
                (ParsedObject::Labelled(g), ParsedObject::Labelled(h)) => {
                    let (g, h) = common_alphabet(g, h)?;
                    let p = slice_product(&g, &h)?;
                    Ok(emit_result(
                        "product",
                        p.graph(),
                        Some(p.labels()),
                        want_dot,
                    ))
                }
                _ => Err(domain(
                    "product needs two plain graphs or two labelled graphs over the same alphabet",
                )),
            }
        }

        Command::Coproduct {
            left,
            right,
            dot: want_dot,
        } => {
            let l = load(&left)?;
            let r = load(&right)?;
            let c = graphtopos::limits::coproduct(l.object.graph(), r.object.graph())?;
            Ok(emit_result("coproduct", &c.graph, None, want_dot))
        }

        Command::Exponential {
            exponent,
            base,
            dot: want_dot,
        } => {
            let g = load(&exponent)?;
            let h = load(&base)?;
            if g.object.labelled().is_some() || h.object.labelled().is_some() {
                return Err(domain("exponential expects unlabelled graphs"));
            }
            let exp = exponential_capped(g.object.graph(), h.object.graph(), cap)?;
            Ok(emit_result("exponential", &exp.graph, None, want_dot))
        }

        Command::HomCount { from, to } => {
            let g = load(&from)?;
            let h = load(&to)?;
            let count = match (&g.object, &h.object) {
                (ParsedObject::Labelled(l), ParsedObject::Labelled(m)) => {
                    let (l, m) = common_alphabet(l, m)?;
                    enumerate_slice_homs(&l, &m, cap)?.len()
                }
                _ => enumerate_homs_capped(g.object.graph(), h.object.graph(), cap)?.len(),
            };
            Ok(format!("{count}\n"))
        }

        Command::Classify { file, sub } => {
            let doc = load(&file)?;
            let sub = named_sub(&doc, &sub)?;
            let chi = match &doc.object {
                ParsedObject::Plain(_) => characteristic(&sub),
                ParsedObject::Labelled(l) => slice_characteristic(l, &sub)?,
            };
            let mut out = String::new();
            for n in doc.object.graph().nodes() {
                let _ = writeln!(out, "node {n} -> {}", chi.on_node(n));
            }
            for a in doc.object.graph().arc_ids() {
                let _ = writeln!(out, "arc {a} -> {}", chi.on_arc(a));
            }
            Ok(out)
        }

        Command::Subobjects { file } => {
            let doc = load(&file)?;
            let subs = doc.object.graph().subobjects();
            let mut out = format!("{} subobjects\n", subs.len());
            for sub in &subs {
                let ids: Vec<String> = sub
                    .nodes()
                    .iter()
                    .map(|n| n.to_string())
                    .chain(sub.arcs().iter().map(|a| a.to_string()))
                    .collect();
                let _ = writeln!(out, "{{ {} }}", ids.join(" "));
            }
            Ok(out)
        }

        Command::Closure {
            file,
            sub,
            topology,
        } => {
            let doc = load(&file)?;
            let sub = named_sub(&doc, &sub)?;
            Ok(print_subobject(&closure(&sub, &topology.resolve())))
        }

        Command::Dense {
            file,
            sub,
            topology,
        } => {
            let doc = load(&file)?;
            let j = topology.resolve();
            match sub {
                Some(name) => {
                    let sub = named_sub(&doc, &name)?;
                    Ok(format!("dense: {}\n", is_dense(&sub, &j)))
                }
                None => Ok(print_subobject(&minimum_dense(doc.object.graph(), &j))),
            }
        }

        Command::Separated {
            file,
            topology,
            oracle,
            corpus_max_nodes,
            corpus_max_arcs,
        } => {
            let doc = load(&file)?;
            let j = topology.resolve();
            let mut out = String::new();
            match (&doc.object, j.name()) {
                (ParsedObject::Labelled(l), TopologyName::DoubleNegation) => {
                    let verdict = graphtopos::slice::is_separated_ts(l);
                    let _ = writeln!(out, "separated: {verdict}");
                    if oracle {
                        let probes =
                            labelled_corpus(corpus_max_nodes, corpus_max_arcs, l.alphabet());
                        let report = slice_separation_oracle(l, &probes, cap)?;
                        let _ = writeln!(
                            out,
                            "oracle (probes <={corpus_max_nodes} nodes, <={corpus_max_arcs} arcs, {} labelled graphs): separated={} complete={} agree={}",
                            probes.len(),
                            report.separated,
                            report.complete,
                            report.separated == verdict
                        );
                    }
                }
                (object, _) => {
                    let g = object.graph();
                    let verdict = is_separated(g, &j);
                    let _ = writeln!(out, "separated: {verdict}");
                    if oracle {
                        let probes = graph_corpus(corpus_max_nodes, corpus_max_arcs);
                        let report = definitional_separation_oracle(g, &j, &probes, cap)?;
                        let _ = writeln!(
                            out,
                            "oracle (probes <={corpus_max_nodes} nodes, <={corpus_max_arcs} arcs, {} graphs): separated={} complete={} agree={}",
                            probes.len(),
                            report.separated,
                            report.complete,
                            report.separated == verdict
                        );
                    }
                }
            }
            Ok(out)
        }

        Command::Sheaf {
            file,
            topology,
            oracle,
            corpus_max_nodes,
            corpus_max_arcs,
        } => {
            let doc = load(&file)?;
            if doc.object.labelled().is_some() {
                return Err(domain("sheaf check expects an unlabelled graph"));
            }
            let g = doc.object.graph();
            let j = topology.resolve();
            let verdict = is_sheaf(g, &j);
            let mut out = format!("sheaf: {verdict}\n");
            if oracle {
                let probes = graph_corpus(corpus_max_nodes, corpus_max_arcs);
                let report = definitional_separation_oracle(g, &j, &probes, cap)?;
                let _ = writeln!(
                    out,
                    "oracle (probes <={corpus_max_nodes} nodes, <={corpus_max_arcs} arcs, {} graphs): separated={} complete={} agree={}",
                    probes.len(),
                    report.separated,
                    report.complete,
                    report.is_sheaf() == verdict
                );
            }
            Ok(out)
        }

        Command::LtsCheck { file } => {
            let (_, l) = load_labelled(&file)?;
            match transition_system_violation(&l) {
                None => Ok("transition system: true\n".to_owned()),
                Some((first, second)) => Ok(format!(
                    "transition system: false (arcs {first} and {second} share source, target and label)\n"
                )),
            }
        }

        Command::StrongMono {
            file,
            sub,
            oracle,
            corpus_max_nodes,
            corpus_max_arcs,
        } => {
            let (doc, m) = load_labelled(&file)?;
            let sub = named_sub(&doc, &sub)?;
            let l = m.restrict_to(&sub)?;
            let inclusion = sub.inclusion();
            let verdict = is_strong_mono(&inclusion, &l, &m)?;
            let mut out = format!("strong mono: {verdict}\n");
            if oracle {
                let probes = labelled_corpus(corpus_max_nodes, corpus_max_arcs, m.alphabet());
                let fillin = strong_mono_fillin_oracle(&inclusion, &l, &m, &probes, cap)?;
                let _ = writeln!(
                    out,
                    "oracle (squares <={corpus_max_nodes} nodes, <={corpus_max_arcs} arcs): fill-in={} agree={}",
                    fillin,
                    fillin == verdict
                );
            }
            Ok(out)
        }

        Command::Aut2lts { file, dot: want_dot } => {
            let text =
                fs::read_to_string(&file).map_err(|e| domain(format!("{file}: {e}")))?;
            let (name, automaton) =
                format::parse_automaton(&text).map_err(|e| domain(format!("{file}: {e}")))?;
            let lts = automaton_to_lts(&automaton)?;
            Ok(emit_result(&name, lts.graph(), Some(lts.labels()), want_dot))
        }

        Command::Lts2aut { file } => {
            let (doc, l) = load_labelled(&file)?;
            if !is_transition_system(&l) {
                let (first, second) = transition_system_violation(&l).expect("not a ts");
                return Err(domain(format!(
                    "not a transition system: arcs {first} and {second} share source, target and label"
                )));
            }
            let automaton = lts_to_automaton(&l)?;
            Ok(format::emit_automaton(&doc.name, &automaton))
        }
    }
}
