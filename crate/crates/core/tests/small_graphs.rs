use std::sync::Arc;

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;

use invdiam::certificates::mad_exact;
use invdiam::constructive::{good_ordering, is_good_ordering, subcubic_realisation};
use invdiam::generators::{self, census};
use invdiam::solver::{bfs_diameter, inversion_diameter, SolveOptions};
use invdiam::{EdgeLabeling, Graph};

fn planar(g: &Graph) -> bool {
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(u, v)| (u as u32, v as u32)).collect();
    let mut h = UnGraph::<(), ()>::from_edges(&edges);
    while h.node_count() < g.n() {
        h.add_node(());
    }
    is_planar(&h)
}

#[test]
fn good_orderings_on_every_cubic_multigraph() {
    let mut cases = 0;
    for n in [2, 4, 6] {
        for g in census::cubic_multigraphs(n).unwrap() {
            let g = Arc::new(g);
            for mask in 0..1u64 << g.m() {
                let pi = EdgeLabeling::from_u64(g.clone(), mask).unwrap();
                // parallel edges must carry one label to be reachable at all
                let consistent = (0..g.m()).all(|e| (0..g.m()).all(|f| g.endpoints(e) != g.endpoints(f) || pi.get(e) == pi.get(f)));
                if !consistent {
                    continue;
                }
                let order = good_ordering(&pi).unwrap();
                assert!(is_good_ordering(&pi, &order).unwrap(), "{g:?} mask {mask}");
                if !g.has_parallel_edges() {
                    assert_eq!(subcubic_realisation(&pi).unwrap().dim(), 4);
                }
                cases += 1;
            }
        }
    }
    assert!(cases > 1000);
}

#[test]
fn simple_graph_census_size() {
    // OEIS A000088
    assert_eq!(census::simple_graphs(8).unwrap().len(), 12346);
}

#[test]
fn planar_constructions_are_planar() {
    let fig = generators::fig_planar5();
    assert!(planar(fig.graph()));
    assert_eq!(fig.graph().m(), 3 * fig.graph().n() - 6);
    for g in [8, 10, 12] {
        let pc = generators::pendant_cycle(g);
        assert!(planar(&pc));
        assert_eq!(mad_exact(&pc), num_rational::Rational64::from_integer(2));
    }
    assert!(!planar(&generators::complete(5)));
    assert!(!planar(&generators::fig_5regular()));
}

/// Frozen values, each computed by both the solver and breadth-first search.
#[test]
fn golden_diameters() {
    let golden: [(&str, Graph, usize); 9] = [
        ("P2", generators::path(2), 1),
        ("P4", generators::path(4), 2),
        ("K1,3", generators::star(3), 1),
        ("C4", generators::cycle(4), 2),
        ("C5", generators::cycle(5), 2),
        ("K4", generators::complete(4), 3),
        ("K2,3", generators::complete_bipartite(2, 3), 2),
        ("K3,3", generators::complete_bipartite(3, 3), 3),
        ("subdivided K4", generators::subdivided_complete(4), 3),
    ];
    for (name, g, d) in golden {
        let g = Arc::new(g);
        assert_eq!(inversion_diameter(&g, &SolveOptions::default()).unwrap().value, d, "{name}");
        assert_eq!(bfs_diameter(&g).unwrap(), d, "{name}");
    }
}
