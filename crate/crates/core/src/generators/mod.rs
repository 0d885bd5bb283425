//! Graph families, fixed instances and seeded random graphs.

pub mod census;
mod gadgets;
pub mod random;

pub use gadgets::{fig_5regular, fig_planar5, tw2_gadget, tw_lower};

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("cycle")
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Graph {
    Graph::new(k + 1, (1..=k).map(|i| (0, i)).collect()).expect("star")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            edges.push((i, j));
        }
    }
    Graph::new(n, edges).expect("complete")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    Graph::new(a + b, edges).expect("complete bipartite")
}

/// Vertex index of `(part, j)` in [`complete_multipartite`].
pub fn multipartite_index(t: usize, part: usize, j: usize) -> usize {
    part * t + j
}

/// `K_r[K̄_t]`: `r` independent parts of size `t`, all edges between parts.
pub fn complete_multipartite(r: usize, t: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..r {
        for k in i + 1..r {
            for j in 0..t {
                for l in 0..t {
                    edges.push((multipartite_index(t, i, j), multipartite_index(t, k, l)));
                }
            }
        }
    }
    Graph::new(r * t, edges).expect("complete multipartite")
}

/// Subdivides every edge once. Edge `e = uv` becomes edges `2e = u x_e` and
/// `2e + 1 = x_e v`, where `x_e = n + e`.
pub fn subdivide_once(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + e));
        edges.push((n + e, v));
    }
    Graph::new(n + g.m(), edges).expect("subdivision")
}

pub fn subdivided_complete(k: usize) -> Graph {
    subdivide_once(&complete(k))
}

/// Cycle `C_g` on `0..g` with a pendant vertex `g + i` attached to each `i`.
pub fn pendant_cycle(g: usize) -> Graph {
    let mut edges: Vec<_> = (0..g).map(|i| (i, (i + 1) % g)).collect();
    edges.extend((0..g).map(|i| (i, g + i)));
    Graph::new(2 * g, edges).expect("pendant cycle")
}

/// Incremental graph-and-labeling builder used by the fixed instances.
#[derive(Default)]
pub(crate) struct Builder {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<bool>,
}

impl Builder {
    pub fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn edge(&mut self, u: usize, v: usize, label: u8) {
        self.edges.push((u, v));
        self.labels.push(label == 1);
    }

    pub fn finish(self) -> (Graph, Vec<bool>) {
        (Graph::new(self.n, self.edges).expect("builder graph"), self.labels)
    }
}
