//! Algebraic laws checked by exhaustive enumeration over small corpora:
//! category laws, mono/epi versus cancellation, universal properties via
//! hom counting, closure axioms, and the conjunction lattice laws.

use graphtopos::classifier::{binary_table, characteristic, conjunction, TruthValue};
use graphtopos::corpus::graph_corpus;
use graphtopos::graph::{
    are_isomorphic, representable_arc, representable_node, FiniteGraph, GraphMorphism,
};
use graphtopos::hom::{enumerate_homs, generators_check};
use graphtopos::limits::{coequalizer, coproduct, equalizer, product, pullback, terminal};
use graphtopos::topology::{
    closed_topology, closure, double_negation, identity_topology, top_topology, Topology,
};
use graphtopos::Subobject;

/// A fixed family of graphs within three nodes and four arcs.
fn family() -> Vec<FiniteGraph> {
    vec![
        FiniteGraph::empty(),
        representable_node(),
        representable_arc(),
        terminal(),
        FiniteGraph::build(&["x", "y"], &[]).unwrap(),
        FiniteGraph::build(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap(),
        FiniteGraph::build(
            &["x", "y", "z"],
            &[("a", "x", "y"), ("b", "y", "z"), ("c", "z", "z"), ("d", "z", "x")],
        )
        .unwrap(),
    ]
}

#[test]
fn composition_is_associative_with_identities() {
    let objects = vec![
        representable_node(),
        representable_arc(),
        terminal(),
        FiniteGraph::build(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap(),
    ];
    for g in &objects {
        for h in &objects {
            let homs_gh = enumerate_homs(g, h).unwrap();
            for f in &homs_gh {
                assert_eq!(&GraphMorphism::identity(g).then(f).unwrap(), f);
                assert_eq!(&f.then(&GraphMorphism::identity(h)).unwrap(), f);
            }
            for k in &objects {
                let homs_hk = enumerate_homs(h, k).unwrap();
                for l in &objects {
                    let homs_kl = enumerate_homs(k, l).unwrap();
                    for f in &homs_gh {
                        for g2 in &homs_hk {
                            for h2 in &homs_kl {
                                let left = f.then(g2).unwrap().then(h2).unwrap();
                                let right = f.then(&g2.then(h2).unwrap()).unwrap();
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn mono_agrees_with_left_cancellation() {
    let objects = family();
    let probes = [representable_node(),
        representable_arc(),
        FiniteGraph::build(&["x", "y"], &[]).unwrap()];
    for g in &objects {
        for h in &objects {
            for f in enumerate_homs(g, h).unwrap() {
                let cancellable = probes.iter().all(|p| {
                    let candidates = enumerate_homs(p, g).unwrap();
                    candidates.iter().all(|h1| {
                        candidates.iter().all(|h2| {
                            h1.then(&f).unwrap() != h2.then(&f).unwrap() || h1 == h2
                        })
                    })
                });
                assert_eq!(f.is_mono(), cancellable, "{f:?}");
            }
        }
    }
}

#[test]
fn epi_agrees_with_right_cancellation() {
    let objects = family();
    // The classifier separates subobjects, so it is a sufficient probe
    // codomain; the single arrow and terminal are thrown in for variety.
    let probes = [graphtopos::classifier::omega(),
        representable_arc(),
        terminal()];
    for g in &objects {
        for h in &objects {
            for f in enumerate_homs(g, h).unwrap() {
                let cancellable = probes.iter().all(|q| {
                    let candidates = enumerate_homs(h, q).unwrap();
                    candidates.iter().all(|h1| {
                        candidates.iter().all(|h2| {
                            f.then(h1).unwrap() != f.then(h2).unwrap() || h1 == h2
                        })
                    })
                });
                assert_eq!(f.is_epi(), cancellable, "{f:?}");
            }
        }
    }
}

#[test]
fn generators_check_coincides_with_equality() {
    let objects = vec![
        representable_node(),
        representable_arc(),
        FiniteGraph::build(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap(),
        FiniteGraph::build(&["x", "y"], &[]).unwrap(),
    ];
    for g in &objects {
        for h in &objects {
            let homs = enumerate_homs(g, h).unwrap();
            for f1 in &homs {
                for f2 in &homs {
                    assert_eq!(generators_check(f1, f2).unwrap(), f1 == f2);
                }
            }
        }
    }
}

#[test]
fn canonical_subobject_with_inclusion_reproduces_monos() {
    let objects = family();
    for g in &objects {
        for h in &objects {
            for f in enumerate_homs(g, h).unwrap() {
                if !f.is_mono() {
                    continue;
                }
                let sub = f.canonical_subobject().unwrap();
                // Corestriction of f onto its image, then inclusion, is f.
                let image_graph = sub.to_graph();
                let corestriction = GraphMorphism::new(
                    g,
                    &image_graph,
                    f.node_map().clone(),
                    f.arc_map().clone(),
                )
                .unwrap();
                assert!(corestriction.is_mono() && corestriction.is_epi());
                assert_eq!(corestriction.then(&sub.inclusion()).unwrap(), f);
            }
        }
    }
}

#[test]
fn hom_counts_respect_products_and_coproducts() {
    let corpus = graph_corpus(2, 2);
    for g in &corpus {
        for h in &corpus {
            let prod = product(g, h).unwrap();
            let cop = coproduct(g, h).unwrap();
            for x in &corpus {
                assert_eq!(
                    enumerate_homs(x, &prod.graph).unwrap().len(),
                    enumerate_homs(x, g).unwrap().len() * enumerate_homs(x, h).unwrap().len(),
                );
                assert_eq!(
                    enumerate_homs(&cop.graph, x).unwrap().len(),
                    enumerate_homs(g, x).unwrap().len() * enumerate_homs(h, x).unwrap().len(),
                );
            }
        }
    }
}

#[test]
fn binary_limit_constructions_are_symmetric_up_to_iso() {
    let corpus = graph_corpus(2, 2);
    for g in &corpus {
        for h in &corpus {
            let p_gh = product(g, h).unwrap();
            let p_hg = product(h, g).unwrap();
            assert!(are_isomorphic(&p_gh.graph, &p_hg.graph).is_some());
            let c_gh = coproduct(g, h).unwrap();
            let c_hg = coproduct(h, g).unwrap();
            assert!(are_isomorphic(&c_gh.graph, &c_hg.graph).is_some());
        }
    }
}

#[test]
fn equalizers_and_coequalizers_over_enumerated_parallel_pairs() {
    let corpus = graph_corpus(2, 2);
    for g in &corpus {
        for h in &corpus {
            let homs = enumerate_homs(g, h).unwrap();
            for f1 in &homs {
                for f2 in &homs {
                    let eq = equalizer(f1, f2).unwrap();
                    assert!(eq.inclusion().is_mono());
                    assert_eq!(eq, equalizer(f2, f1).unwrap());
                    // The equalizer really equalizes.
                    let incl = eq.inclusion();
                    assert_eq!(incl.then(f1).unwrap(), incl.then(f2).unwrap());

                    let ce = coequalizer(f1, f2).unwrap();
                    assert!(ce.quotient.is_epi());
                    assert_eq!(f1.then(&ce.quotient).unwrap(), f2.then(&ce.quotient).unwrap());
                }
            }
        }
    }
}

#[test]
fn pullbacks_are_symmetric_up_to_iso() {
    let a = representable_arc();
    let parallel = FiniteGraph::build(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
    for f in enumerate_homs(&a, &parallel).unwrap() {
        for g in enumerate_homs(&a, &parallel).unwrap() {
            let pb_fg = pullback(&f, &g).unwrap();
            let pb_gf = pullback(&g, &f).unwrap();
            assert!(are_isomorphic(&pb_fg.graph, &pb_gf.graph).is_some());
            // The square commutes.
            assert_eq!(
                pb_fg.proj_left.then(&f).unwrap(),
                pb_fg.proj_right.then(&g).unwrap()
            );
        }
    }
}

#[test]
fn conjunction_is_a_commutative_idempotent_monoid_with_true_as_unit() {
    let table = binary_table(&conjunction()).unwrap();
    let meet = |a: TruthValue, b: TruthValue| table[&(a, b)];
    for &a in &TruthValue::ALL {
        let unit = if a.is_node_stage() {
            TruthValue::NodeIn
        } else {
            TruthValue::ArcIn
        };
        assert_eq!(meet(unit, a), a);
        assert_eq!(meet(a, unit), a);
        assert_eq!(meet(a, a), a);
        for &b in &TruthValue::ALL {
            if a.is_node_stage() != b.is_node_stage() {
                continue;
            }
            assert_eq!(meet(a, b), meet(b, a));
            for &c in &TruthValue::ALL {
                if b.is_node_stage() != c.is_node_stage() {
                    continue;
                }
                assert_eq!(meet(meet(a, b), c), meet(a, meet(b, c)));
            }
        }
    }
}

#[test]
fn closure_is_extensive_idempotent_and_monotone() {
    let corpus = graph_corpus(3, 3);
    let topologies: Vec<Topology> = vec![
        identity_topology(),
        double_negation(),
        closed_topology(),
        top_topology(),
    ];
    for g in &corpus {
        let subs = g.subobjects();
        for j in &topologies {
            let closures: Vec<Subobject> = subs.iter().map(|s| closure(s, j)).collect();
            for (s, c) in subs.iter().zip(&closures) {
                assert!(c.contains(s), "closure must contain the subobject");
                assert_eq!(&closure(c, j), c, "closure must be idempotent");
            }
            for (i, s1) in subs.iter().enumerate() {
                for (k, s2) in subs.iter().enumerate() {
                    if s2.contains(s1) {
                        assert!(closures[k].contains(&closures[i]), "closure must be monotone");
                    }
                }
            }
        }
    }
}

#[test]
fn characteristic_round_trips_over_the_corpus() {
    for g in graph_corpus(3, 2) {
        for sub in g.subobjects() {
            let chi = characteristic(&sub);
            assert_eq!(
                graphtopos::classifier::subobject_from_characteristic(&chi).unwrap(),
                sub
            );
        }
    }
}

#[test]
fn trivial_topology_characterizations_match_the_oracle() {
    use graphtopos::topology::{definitional_separation_oracle, is_separated, is_sheaf};
    let corpus = graph_corpus(2, 2);
    for g in &corpus {
        for j in [identity_topology(), top_topology()] {
            let report = definitional_separation_oracle(g, &j, &corpus, 1e7).unwrap();
            assert_eq!(report.separated, is_separated(g, &j), "{} on {g:?}", j.name());
            assert_eq!(report.is_sheaf(), is_sheaf(g, &j), "{} on {g:?}", j.name());
        }
    }
}
