//! Constructive transforms on random graphs: each method against the exact distance.
use std::sync::Arc;

use invdiam::constructive::{transform, Method};
use invdiam::generators::random;
use invdiam::solver::{inversion_distance, verify_sequence, SolveOptions};
use invdiam::Graph;

fn main() -> invdiam::Result<()> {
    let mut rng = random::rng(42);
    let cases: Vec<(&str, Graph, &[Method])> = vec![
        ("tree", random::tree(12, &mut rng), &[Method::Forest, Method::Elim, Method::Auto]),
        ("cycle", invdiam::generators::cycle(11), &[Method::Cycle, Method::Greedy, Method::Auto]),
        ("cubic", random::cubic(10, &mut rng), &[Method::Subcubic, Method::Greedy, Method::Coloring, Method::Auto]),
        ("gnp", random::gnp(8, 0.5, &mut rng), &[Method::Elim, Method::Greedy, Method::Coloring, Method::Auto]),
    ];
    for (name, g, methods) in cases {
        let g = Arc::new(g);
        let o1 = random::orientation(g.clone(), &mut rng);
        let o2 = random::orientation(g.clone(), &mut rng);
        let exact = inversion_distance(&o1, &o2, &SolveOptions::default())?.value;
        print!("{name:6} exact {exact}:");
        for &m in methods {
            let (used, seq) = transform(&o1, &o2, m)?;
            assert!(verify_sequence(&o1, &seq, &o2));
            print!("  {m}={}", seq.len());
            if m == Method::Auto {
                print!(" ({used})");
            }
        }
        println!();
    }
    Ok(())
}
