//! Lower-bound certificates next to the constructive upper bounds.
use std::sync::Arc;

use invdiam::certificates::{lower_bound_report, multipartite_hard_labeling, pigeonhole_bound};
use invdiam::constructive::upper_bounds;
use invdiam::generators;
use invdiam::solver::{inversion_distance, min_dimension, SolveOptions};

fn main() -> invdiam::Result<()> {
    for g in [generators::pendant_cycle(8), generators::complete(5), generators::complete_bipartite(3, 3)] {
        let g = Arc::new(g);
        let report = lower_bound_report(&g, Some(&SolveOptions::default()))?;
        print!("{report}");
        for ub in upper_bounds(&g) {
            println!("CONSTRUCTION {} BOUND {}", ub.rule, ub.bound);
        }
        println!();
    }

    let (pi, claimed) = multipartite_hard_labeling(3, 2)?;
    let d = min_dimension(&pi, &SolveOptions::default())?;
    println!("multipartite K(3x2): claimed {claimed}, exact {}", d.value);

    let (_, o1, o2, bound) = pigeonhole_bound(3)?;
    let d = inversion_distance(&o1, &o2, &SolveOptions::default())?;
    println!("pigeonhole pair: bound {bound}, exact {}", d.value);
    Ok(())
}
