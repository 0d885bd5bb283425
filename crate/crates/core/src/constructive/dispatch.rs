//! Method selection for constructive transforms, and the best constructive upper bound on
//! the diameter of a graph.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::certificates::{classify_forest, mad_exact};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, InversionSequence, Orientation};

use super::{
    build_ordering, check_pair, degree_two_transform, elimination_transform, forest_transform, greedy_homogeneous_coloring,
    greedy_realisation, homogeneous_coloring_transform, min_degree_decomposition, sparse3_realisation, subcubic_realisation, verified,
    Strategy, StrongOrdering, SPARSE3_MAD,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Forest,
    Cycle,
    Elim,
    Greedy,
    Subcubic,
    Sparse3,
    Coloring,
}

impl Method {
    pub const ALL: [Method; 8] =
        [Method::Auto, Method::Forest, Method::Cycle, Method::Elim, Method::Greedy, Method::Subcubic, Method::Sparse3, Method::Coloring];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Forest => "forest",
            Method::Cycle => "cycle",
            Method::Elim => "elim",
            Method::Greedy => "greedy",
            Method::Subcubic => "subcubic",
            Method::Sparse3 => "sparse3",
            Method::Coloring => "coloring",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
            format!("unknown method {s:?}; expected one of {}", names.join(", "))
        })
    }
}

fn sparse_applicable(g: &Graph) -> bool {
    !g.has_parallel_edges() && mad_exact(g) <= SPARSE3_MAD
}

/// The strongest ordering among the built-in strategies.
pub fn best_strong_ordering(g: &Arc<Graph>) -> Result<StrongOrdering> {
    let td = min_degree_decomposition(g);
    let strategies = [Strategy::Identity, Strategy::Bipartite, Strategy::Degeneracy, Strategy::TreeDecomposition(td)];
    strategies
        .iter()
        .filter_map(|s| build_ordering(g, s).ok())
        .min_by_key(|o| o.t)
        .map_or_else(|| precondition("no strong ordering applies"), Ok)
}

fn run(o1: &Orientation, o2: &Orientation, method: Method) -> Result<InversionSequence> {
    let pi = check_pair(o1, o2)?;
    let g = o1.graph();
    let via = |r: crate::graph::Realisation| verified(o1, o2, r.to_sequence());
    match method {
        Method::Forest => forest_transform(o1, o2),
        Method::Cycle => degree_two_transform(o1, o2),
        Method::Elim => elimination_transform(o1, o2),
        Method::Subcubic => via(subcubic_realisation(&pi)?),
        Method::Sparse3 => via(sparse3_realisation(&pi)?),
        Method::Greedy => {
            let ord = best_strong_ordering(g)?;
            // the ordering may be strong only for a supergraph; the labeling extends by zeros
            let labels = if Arc::ptr_eq(&ord.graph, g) {
                pi.clone()
            } else {
                crate::graph::EdgeLabeling::from_fn(ord.graph.clone(), |_, (u, v)| g.edge_between(u, v).is_some_and(|e| pi.get(e)))
            };
            let r = greedy_realisation(&labels, &ord.order, ord.t)?;
            via(r)
        }
        Method::Coloring => homogeneous_coloring_transform(o1, o2, &greedy_homogeneous_coloring(&pi)),
        Method::Auto => unreachable!("resolved by transform"),
    }
}

/// Verified inversion sequence turning `o1` into `o2` by `method`, together with the method
/// actually used. `Auto` tries forest, cycle, sparse3 and subcubic in turn where they apply,
/// then keeps the shortest of elimination, greedy and colouring.
pub fn transform(o1: &Orientation, o2: &Orientation, method: Method) -> Result<(Method, InversionSequence)> {
    if method != Method::Auto {
        return run(o1, o2, method).map(|s| (method, s));
    }
    check_pair(o1, o2)?;
    let g = o1.graph();
    let simple = !g.has_parallel_edges();
    let candidates = [
        (Method::Forest, g.is_forest()),
        (Method::Cycle, simple && g.max_degree() <= 2),
        (Method::Sparse3, sparse_applicable(g)),
        (Method::Subcubic, g.max_degree() <= 3),
    ];
    for (m, ok) in candidates {
        if ok {
            match run(o1, o2, m) {
                Ok(s) => return Ok((m, s)),
                Err(Error::Precondition(_)) | Err(Error::DischargingContradiction { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let mut best = (Method::Elim, run(o1, o2, Method::Elim)?);
    for m in [Method::Greedy, Method::Coloring] {
        if let Ok(s) = run(o1, o2, m) {
            if s.len() < best.1.len() {
                best = (m, s);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub bound: usize,
    pub rule: String,
}

/// Every constructive upper bound on the inversion diameter that applies to `g`.
pub fn upper_bounds(g: &Arc<Graph>) -> Vec<UpperBound> {
    let mut out = Vec::new();
    let mut add = |bound: usize, rule: &str| out.push(UpperBound { bound, rule: rule.into() });
    if g.m() == 0 {
        add(0, "edgeless");
        return out;
    }
    if let Some(d) = classify_forest(g).diameter() {
        add(d, "forest");
    }
    if g.max_degree() <= 2 {
        add(2, "cycle");
    }
    if sparse_applicable(g) {
        add(3, "sparse3");
    }
    if g.max_degree() <= 3 {
        add(4, "subcubic");
    }
    if !g.has_parallel_edges() {
        let td = min_degree_decomposition(g);
        for (name, s) in [
            ("identity", Strategy::Identity),
            ("bipartite", Strategy::Bipartite),
            ("degeneracy", Strategy::Degeneracy),
            ("treewidth", Strategy::TreeDecomposition(td)),
        ] {
            if let Ok(o) = build_ordering(g, &s) {
                add(o.t, name);
            }
        }
    }
    add(g.n().saturating_sub(1), "elimination");
    out
}

pub fn best_upper_bound(g: &Arc<Graph>) -> UpperBound {
    upper_bounds(g).into_iter().min_by_key(|u| u.bound).expect("elimination always applies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, random};
    use crate::solver::{inversion_diameter, SolveOptions};

    #[test]
    fn every_method_is_verified_when_it_applies() {
        let mut r = random::rng(8);
        for i in 0..300 {
            let g = Arc::new(match i % 4 {
                0 => random::tree(12, &mut r),
                1 => generators::cycle(5 + i % 7),
                2 => random::cubic(10, &mut r),
                _ => random::gnp(9, 0.4, &mut r),
            });
            let o1 = random::orientation(g.clone(), &mut r);
            let o2 = random::orientation(g.clone(), &mut r);
            for m in Method::ALL {
                match transform(&o1, &o2, m) {
                    Ok((_, s)) => assert!(crate::solver::verify_sequence(&o1, &s, &o2)),
                    Err(Error::Precondition(_)) | Err(Error::NotStrong { .. }) => assert_ne!(m, Method::Auto),
                    Err(e) => panic!("{m}: {e}"),
                }
            }
        }
    }

    #[test]
    fn auto_choices() {
        let g = Arc::new(generators::path(6));
        let o1 = Orientation::canonical(g.clone());
        let o2 = crate::graph::EdgeLabeling::from_u64(g, 0b10101).unwrap().to_orientation_pair().1;
        let (m, s) = transform(&o1, &o2, Method::Auto).unwrap();
        assert_eq!(m, Method::Forest);
        assert!(s.len() <= 2);
        assert_eq!("sparse3".parse::<Method>().unwrap(), Method::Sparse3);
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn upper_bounds_dominate_exact_diameter() {
        let mut r = random::rng(9);
        for _ in 0..40 {
            let g = Arc::new(random::gnp(6, 0.5, &mut r));
            let d = inversion_diameter(&g, &SolveOptions::default()).unwrap().value;
            for u in upper_bounds(&g) {
                assert!(u.bound >= d, "{} gives {} < {d}", u.rule, u.bound);
            }
        }
        assert_eq!(best_upper_bound(&Arc::new(generators::pendant_cycle(8))).bound, 3);
    }
}
