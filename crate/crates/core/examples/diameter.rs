//! Inversion diameter of small graphs, cross-checked against the BFS oracle.
use std::sync::Arc;
use std::time::Instant;

use invdiam::generators;
use invdiam::io::write_labeling;
use invdiam::solver::{bfs_diameter, diameter_at_most, inversion_diameter, SolveOptions};

fn main() -> invdiam::Result<()> {
    let opts = SolveOptions { parallel_pi_chunks: 4, ..SolveOptions::default() };
    let graphs = [
        ("C5", generators::cycle(5)),
        ("K4", generators::complete(4)),
        ("K3,3", generators::complete_bipartite(3, 3)),
        ("pendant C8", generators::pendant_cycle(8)),
    ];
    for (name, g) in graphs {
        let g = Arc::new(g);
        let start = Instant::now();
        let d = inversion_diameter(&g, &opts)?;
        let oracle = if g.m() <= 12 { bfs_diameter(&g)?.to_string() } else { "-".into() };
        println!("{name:11} n={:2} m={:2} diameter {} (bfs {oracle}) in {:?}", g.n(), g.m(), d.value, start.elapsed());
        if d.value > 0 {
            // a labeling that needs the full dimension
            let hard = diameter_at_most(&g, d.value - 1, &opts)?.expect("counterexample");
            print!("{}", write_labeling(&hard));
        }
    }
    Ok(())
}
