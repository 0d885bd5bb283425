//! Every labeling of a graph with maximum degree 3 is realised in F2^4.
use std::sync::Arc;

use invdiam::constructive::{good_ordering, is_good_ordering, subcubic_realisation};
use invdiam::generators::random;

fn main() -> invdiam::Result<()> {
    let mut rng = random::rng(3);
    for n in [8, 16, 40, 200] {
        let g = Arc::new(random::cubic(n, &mut rng));
        let pi = random::labeling(g.clone(), &mut rng);
        let order = good_ordering(&pi)?;
        assert!(is_good_ordering(&pi, &order)?);
        let r = subcubic_realisation(&pi)?;
        assert!(r.realises(&pi));
        println!("cubic n={n:3}: {} disagreeing edges, realised in F2^{}", pi.disagree_edges().len(), r.dim());
    }
    Ok(())
}
