use std::sync::Arc;

use super::Builder;
use crate::graph::{EdgeLabeling, Graph};

fn labeled(b: Builder) -> EdgeLabeling {
    let (g, labels) = b.finish();
    EdgeLabeling::from_values(Arc::new(g), &labels).expect("labels match edges")
}

/// Planar triangulation on 9 vertices with a labeling that has no realisation in F2^4.
pub fn fig_planar5() -> EdgeLabeling {
    const EDGES: [(usize, usize, u8); 21] = [
        (7, 1, 0),
        (1, 2, 1),
        (2, 3, 0),
        (7, 6, 1),
        (6, 1, 0),
        (1, 8, 0),
        (8, 2, 0),
        (2, 4, 0),
        (4, 3, 1),
        (6, 8, 0),
        (8, 4, 0),
        (6, 5, 1),
        (8, 5, 1),
        (4, 5, 0),
        (0, 7, 1),
        (0, 1, 0),
        (0, 2, 0),
        (0, 3, 0),
        (0, 6, 0),
        (0, 5, 0),
        (0, 4, 0),
    ];
    let mut b = Builder { n: 9, ..Builder::default() };
    for (u, v, l) in EDGES {
        b.edge(u, v, l);
    }
    labeled(b)
}

/// Two copies of `K_5` joined by a perfect matching (`u_i = i`, `v_i = 5 + i`).
pub fn fig_5regular() -> Graph {
    let mut edges = Vec::new();
    for side in [0, 5] {
        for j in 1..5 {
            for i in 0..j {
                edges.push((side + i, side + j));
            }
        }
    }
    edges.extend((0..5).map(|i| (i, 5 + i)));
    Graph::new(10, edges).expect("5-regular graph")
}

fn gadget1(b: &mut Builder, x: usize, y: usize) {
    let u = b.vertex();
    b.edge(x, u, 0);
    b.edge(y, u, 1);
}

fn gadget2(b: &mut Builder, x: usize, y: usize) {
    let u = b.vertex();
    let w = b.vertex();
    let w2 = b.vertex();
    b.edge(x, u, 0);
    b.edge(y, u, 0);
    b.edge(x, w, 0);
    b.edge(w, u, 1);
    b.edge(y, w2, 0);
    b.edge(u, w2, 1);
}

fn gadget3(b: &mut Builder, x: usize) {
    let v = b.vertex();
    let top = b.vertex();
    let w = b.vertex();
    b.edge(x, v, 1);
    b.edge(x, top, 0);
    b.edge(x, w, 0);
    b.edge(v, top, 1);
    b.edge(v, w, 0);
    gadget2(b, v, w);
}

/// Base vertices are `a=0, b=1, c=2, d=3`; gadget vertices follow in construction order.
fn tw2_builder() -> Builder {
    let mut b = Builder { n: 4, ..Builder::default() };
    let (a, bb, c, d) = (0, 1, 2, 3);
    b.edge(a, bb, 1);
    b.edge(bb, c, 1);
    b.edge(c, d, 1);
    b.edge(a, c, 0);
    b.edge(bb, d, 0);
    gadget1(&mut b, a, c);
    gadget2(&mut b, a, c);
    gadget1(&mut b, bb, d);
    gadget2(&mut b, bb, d);
    for x in [a, bb, c, d] {
        gadget3(&mut b, x);
    }
    b
}

/// Treewidth-2 graph on 36 vertices with a labeling that has no realisation in F2^3.
pub fn tw2_gadget() -> EdgeLabeling {
    labeled(tw2_builder())
}

/// Treewidth-`t` graph with a labeling that has no realisation in F2^(t+1); `t = 2` is [`tw2_gadget`].
pub fn tw_lower(t: usize) -> EdgeLabeling {
    assert!((2..=4).contains(&t), "tw_lower supports 2 <= t <= 4");
    labeled(tw_lower_builder(t))
}

fn tw_lower_builder(t: usize) -> Builder {
    if t == 2 {
        return tw2_builder();
    }
    let prev = tw_lower_builder(t - 1);
    let mut b = Builder::default();
    let v: Vec<usize> = (0..t).map(|_| b.vertex()).collect();
    let w: Vec<usize> = (0..1usize << t).map(|_| b.vertex()).collect();
    for (x, &wx) in w.iter().enumerate() {
        for (i, &vi) in v.iter().enumerate() {
            b.edge(vi, wx, ((x >> i) & 1) as u8);
        }
    }
    for &vi in &v {
        for &wx in &w {
            let a = b.vertex();
            b.edge(a, vi, 0);
            b.edge(a, wx, 1);
        }
    }
    for &base in v.iter().chain(&w) {
        let offset = b.n;
        b.n += prev.n;
        for (&(p, q), &l) in prev.edges.iter().zip(&prev.labels) {
            b.edge(offset + p, offset + q, l as u8);
        }
        for z in 0..prev.n {
            b.edge(base, offset + z, 0);
        }
    }
    b
}
