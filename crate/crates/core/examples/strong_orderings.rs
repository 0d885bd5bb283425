//! Strong vertex orderings and the greedy realisations they give.
use std::sync::Arc;

use invdiam::constructive::{best_strong_ordering, build_ordering, check_t_strong, greedy_realisation, min_degree_decomposition, treedec_realisation, Strategy};
use invdiam::generators::random;
use invdiam::EdgeLabeling;

fn main() -> invdiam::Result<()> {
    let mut rng = random::rng(7);
    let g = Arc::new(random::bounded_degree(14, 4, 200, &mut rng));

    for (name, s) in [("identity", Strategy::Identity), ("degeneracy", Strategy::Degeneracy)] {
        let so = build_ordering(&g, &s)?;
        let report = check_t_strong(&so.graph, &so.order, so.t)?;
        println!("{name:10} t={} holds={} min slack {:.2}", so.t, report.holds, report.min_slack());
    }

    let td = min_degree_decomposition(&g);
    td.validate(&g)?;
    println!("tree decomposition: {} bags, width {}", td.bags.len(), td.width());

    let best = best_strong_ordering(&g)?;
    println!("best ordering t={}", best.t);

    let pi = random::labeling(g.clone(), &mut rng);
    let lifted = EdgeLabeling::from_fn(best.graph.clone(), |_, (u, v)| g.edge_between(u, v).is_some_and(|e| pi.get(e)));
    let r = greedy_realisation(&lifted, &best.order, best.t)?;
    assert!(r.realises(&lifted));
    println!("greedy realisation in F2^{}", r.dim());

    let r = treedec_realisation(&pi, &td)?;
    assert!(r.realises(&pi));
    println!("tree-decomposition realisation in F2^{}", r.dim());
    Ok(())
}
