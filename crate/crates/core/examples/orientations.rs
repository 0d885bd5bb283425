//! Balanced orientations and the disagreement labeling between two orientations.
use std::sync::Arc;

use invdiam::generators::random;
use invdiam::io::{write_labeling, write_orientation};
use invdiam::reductions::min_indegree_orientation;
use invdiam::Orientation;

fn main() -> invdiam::Result<()> {
    let g = Arc::new(random::gnp(7, 0.5, &mut random::rng(5)));
    let balanced = min_indegree_orientation(&g);
    for v in 0..g.n() {
        println!("vertex {v}: degree {} in {} out {}", g.degree(v), balanced.in_degree(v), balanced.out_degree(v));
    }
    print!("{}", write_orientation(&balanced));

    let pi = balanced.disagreement(&Orientation::canonical(g.clone()))?;
    println!("disagrees with the canonical orientation on {} edges", pi.disagree_edges().len());
    print!("{}", write_labeling(&pi));
    Ok(())
}
