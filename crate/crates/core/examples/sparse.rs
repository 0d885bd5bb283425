//! Sparse graphs: maximum average degree, degeneracy and the three-dimensional realisation.
use std::sync::Arc;

use invdiam::certificates::{degeneracy_ordering, densest_subgraph, mad_exact};
use invdiam::constructive::{sparse3_realisation, SPARSE3_MAD};
use invdiam::generators::{self, random};

fn main() -> invdiam::Result<()> {
    let mut rng = random::rng(11);
    for g in [generators::pendant_cycle(10), random::subdivided(&generators::complete(5), 2)] {
        let g = Arc::new(g);
        let mad = mad_exact(&g);
        let (k, _) = degeneracy_ordering(&g);
        let (_, dense) = densest_subgraph(&g);
        println!("n={} m={} mad {mad} degeneracy {k} densest part {} vertices", g.n(), g.m(), dense.len());
        if mad <= SPARSE3_MAD {
            let pi = random::labeling(g.clone(), &mut rng);
            let r = sparse3_realisation(&pi)?;
            assert!(r.realises(&pi));
            println!("  random labeling realised in F2^{}", r.dim());
        }
    }
    Ok(())
}
