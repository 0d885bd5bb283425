//! Seeded random graphs, labelings and orientations.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeLabeling, Graph, Orientation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("gnp")
}

/// Uniform random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn tree(n: usize, rng: &mut impl Rng) -> Graph {
    Graph::new(n, (1..n).map(|i| (rng.gen_range(0..i), i)).collect()).expect("tree")
}

/// Random forest: each vertex joins an earlier one with probability `p`.
pub fn forest(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges = (1..n).filter_map(|i| rng.gen_bool(p).then(|| (rng.gen_range(0..i), i))).collect();
    Graph::new(n, edges).expect("forest")
}

/// Random simple graph with maximum degree at most `max_deg`, built from
/// `attempts` random vertex pairs that are kept when they fit.
pub fn bounded_degree(n: usize, max_deg: usize, attempts: usize, rng: &mut impl Rng) -> Graph {
    let mut deg = vec![0; n];
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    if n < 2 {
        return Graph::empty(n);
    }
    for _ in 0..attempts {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || deg[u] >= max_deg || deg[v] >= max_deg || !seen.insert((u.min(v), u.max(v))) {
            continue;
        }
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
    }
    Graph::new(n, edges).expect("bounded degree")
}

/// Random bipartite graph with parts `0..a` and `a..a+b`, maximum degree `max_deg`.
pub fn bounded_degree_bipartite(a: usize, b: usize, max_deg: usize, attempts: usize, rng: &mut impl Rng) -> Graph {
    let mut deg = vec![0; a + b];
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    if a == 0 || b == 0 {
        return Graph::empty(a + b);
    }
    for _ in 0..attempts {
        let u = rng.gen_range(0..a);
        let v = a + rng.gen_range(0..b);
        if deg[u] >= max_deg || deg[v] >= max_deg || !seen.insert((u, v)) {
            continue;
        }
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
    }
    Graph::new(a + b, edges).expect("bipartite")
}

/// Random cubic simple graph via the pairing model with restarts (`n` even, `n >= 4`).
pub fn cubic(n: usize, rng: &mut impl Rng) -> Graph {
    assert!(n >= 4 && n % 2 == 0, "cubic graphs need an even number of at least 4 vertices");
    loop {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(rng);
        let edges: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::new(n, edges) {
            return g;
        }
    }
}

/// Random graph with every edge subdivided `k` times.
pub fn subdivided(g: &Graph, k: usize) -> Graph {
    let mut n = g.n();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..k {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(n, edges).expect("subdivided")
}

pub fn labeling(g: Arc<Graph>, rng: &mut impl Rng) -> EdgeLabeling {
    let values: Vec<bool> = (0..g.m()).map(|_| rng.gen()).collect();
    EdgeLabeling::from_values(g, &values).expect("labeling")
}

pub fn orientation(g: Arc<Graph>, rng: &mut impl Rng) -> Orientation {
    let arcs: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| if rng.gen() { (u, v) } else { (v, u) }).collect();
    Orientation::from_arcs(g, &arcs).expect("orientation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generators_are_deterministic() {
        assert_eq!(gnp(10, 0.4, &mut rng(3)), gnp(10, 0.4, &mut rng(3)));
        let c = cubic(12, &mut rng(1));
        assert!((0..12).all(|v| c.degree(v) == 3));
        assert!(tree(30, &mut rng(2)).is_forest());
        assert!(bounded_degree(30, 4, 200, &mut rng(5)).max_degree() <= 4);
    }
}
