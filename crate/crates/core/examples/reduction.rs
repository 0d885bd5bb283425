//! Subdivision instances: distance at most k exactly when the base graph is (2^k - 1)-colourable.
use std::sync::Arc;

use invdiam::generators;
use invdiam::reductions::{chromatic_number, coloring_to_subdivision_realisation, colouring_vectors, subdivision_instance, ReductionInstance};
use invdiam::solver::{distance_at_most, SolveOptions};

fn main() -> invdiam::Result<()> {
    let k = 2;
    for (name, base) in [("C5", generators::cycle(5)), ("K4", generators::complete(4)), ("K3,3", generators::complete_bipartite(3, 3))] {
        let base = Arc::new(base);
        let (chi, colouring) = chromatic_number(&base)?;
        let inst = subdivision_instance(&base, k)?;
        let exact = distance_at_most(&inst.o1, &inst.o2, k, &SolveOptions::default())?.is_some();
        println!("{name:5} chi={chi} subdivided n={} m={} predict {} exact {}", inst.subdivided.n(), inst.subdivided.m(), chi < 1 << k, exact);
        if chi < 1 << k {
            let r = coloring_to_subdivision_realisation(&inst, &colouring_vectors(&colouring, k)?, &inst.pi0)?;
            assert!(r.realises(&inst.pi0));
        }
    }

    let dir = tempfile::tempdir().expect("tempdir");
    let inst = subdivision_instance(&Arc::new(generators::cycle(5)), k)?;
    inst.write_dir(dir.path())?;
    let back = ReductionInstance::read_dir(dir.path())?;
    println!("round trip ok: {}", back.pi0 == inst.pi0);
    Ok(())
}
