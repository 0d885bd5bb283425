use std::sync::Arc;

use proptest::prelude::*;

use invdiam::constructive::{transform, Method};
use invdiam::generators::random;
use invdiam::io;
use invdiam::reductions::min_indegree_orientation;
use invdiam::solver::{inversion_distance, verify_sequence, SolveOptions};
use invdiam::{EdgeLabeling, Graph, InversionSequence, Orientation, Realisation};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |keep| {
            let all = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            Graph::new(n, all.zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e).collect()).unwrap()
        })
    })
}

fn graph_with_masks(max_n: usize) -> impl Strategy<Value = (Graph, u64, u64)> {
    (graph(max_n), any::<u64>(), any::<u64>())
}

fn orient(g: &Arc<Graph>, mask: u64) -> Orientation {
    Orientation::from_u64(g.clone(), mask & ((1u64 << g.m()) - 1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_formats_round_trip((g, a, b) in graph_with_masks(9)) {
        let g = Arc::new(g);
        prop_assert_eq!(&io::parse_graph(&io::write_edge_list(&g)).unwrap(), &*g);
        prop_assert_eq!(&io::parse_graph6(&io::write_graph6(&g).unwrap()).unwrap(), &*g);
        let o = orient(&g, a);
        prop_assert_eq!(io::parse_orientation(g.clone(), &io::write_orientation(&o)).unwrap(), o);
        let pi = EdgeLabeling::from_u64(g.clone(), b & ((1u64 << g.m()) - 1)).unwrap();
        prop_assert_eq!(io::parse_labeling(g.clone(), &io::write_labeling(&pi)).unwrap(), pi);
    }

    #[test]
    fn sequences_and_realisations_correspond(n in 1usize..10, sets in proptest::collection::vec(any::<u16>(), 0..6)) {
        let lists: Vec<Vec<usize>> = sets.iter().map(|s| (0..n).filter(|&v| s >> v & 1 == 1).collect()).collect();
        let seq = InversionSequence::from_lists(n, &lists).unwrap();
        prop_assert_eq!(io::parse_sequence(n, &io::write_sequence(&seq)).unwrap().to_lists(), seq.to_lists());
        let r = Realisation::from_sequence(&seq).unwrap();
        prop_assert_eq!(r.to_sequence().to_lists(), seq.to_lists());
        prop_assert_eq!(io::parse_realisation(n, &io::write_realisation(&r)).unwrap(), r);
    }

    #[test]
    fn distance_is_a_metric((g, a, b) in graph_with_masks(6), c in any::<u64>()) {
        let g = Arc::new(g);
        let opts = SolveOptions::default();
        let (x, y, z) = (orient(&g, a), orient(&g, b), orient(&g, c));
        let dxy = inversion_distance(&x, &y, &opts).unwrap();
        prop_assert!(verify_sequence(&x, &dxy.sequence, &y));
        prop_assert_eq!(dxy.value, inversion_distance(&y, &x, &opts).unwrap().value);
        let dyz = inversion_distance(&y, &z, &opts).unwrap().value;
        let dxz = inversion_distance(&x, &z, &opts).unwrap().value;
        prop_assert!(dxz <= dxy.value + dyz);
        prop_assert_eq!(dxy.value == 0, x == y);
    }

    #[test]
    fn auto_transform_is_verified_and_not_shorter_than_distance((g, a, b) in graph_with_masks(7)) {
        let g = Arc::new(g);
        let (x, y) = (orient(&g, a), orient(&g, b));
        let (_, s) = transform(&x, &y, Method::Auto).unwrap();
        prop_assert!(verify_sequence(&x, &s, &y));
        prop_assert!(s.len() >= inversion_distance(&x, &y, &SolveOptions::default()).unwrap().value);
    }

    #[test]
    fn balanced_orientation(seed in any::<u64>(), n in 2usize..40, p in 0.05f64..0.9) {
        let g = Arc::new(random::gnp(n, p, &mut random::rng(seed)));
        let o = min_indegree_orientation(&g);
        for v in 0..n {
            prop_assert!(o.in_degree(v) >= g.degree(v) / 2);
            prop_assert!(o.out_degree(v) >= g.degree(v) / 2);
        }
    }
}
