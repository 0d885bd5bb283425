//! Exact inversion distance between two orientations of a path, with the inverted sets.
use std::sync::Arc;

use invdiam::solver::{inversion_distance, verify_sequence, SolveOptions};
use invdiam::{generators, Orientation};

fn main() -> invdiam::Result<()> {
    let g = Arc::new(generators::path(5));
    let o1 = Orientation::canonical(g.clone());
    let o2 = Orientation::from_arcs(g.clone(), &[(1, 0), (1, 2), (3, 2), (3, 4)])?;

    let d = inversion_distance(&o1, &o2, &SolveOptions::default())?;
    println!("distance {}", d.value);
    for (i, set) in d.sequence.to_lists().iter().enumerate() {
        println!("  invert #{i}: {set:?}");
    }
    assert!(verify_sequence(&o1, &d.sequence, &o2));
    println!("realisation dim {}: {:?}", d.witness.dim(), d.witness.vectors().iter().map(|v| v.to_bit_string()).collect::<Vec<_>>());
    Ok(())
}
