//! Transforms for forests, star forests, cycles and graphs of maximum degree 2.

use std::sync::Arc;

use crate::error::{precondition, Result};
use crate::graph::{vertex_set, Graph, InversionSequence, Orientation};

use super::{check_pair, verified};

fn union_find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Two inversions for a forest: contract the components of the disagreeing edges and
/// 2-colour the contracted forest.
pub fn forest_transform(o1: &Orientation, o2: &Orientation) -> Result<InversionSequence> {
    let pi = check_pair(o1, o2)?;
    let g = o1.graph();
    if !g.is_forest() {
        return precondition("forest transform needs a forest");
    }
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in pi.disagree_edges() {
        let (u, v) = g.endpoints(e);
        let (a, b) = (union_find_root(&mut parent, u), union_find_root(&mut parent, v));
        parent[a] = b;
    }
    let comp: Vec<usize> = (0..n).map(|v| union_find_root(&mut parent, v)).collect();
    let mut cadj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in pi.agree_edges() {
        let (u, v) = g.endpoints(e);
        cadj[comp[u]].push(comp[v]);
        cadj[comp[v]].push(comp[u]);
    }
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if comp[s] != s || colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(c) = stack.pop() {
            for &d in &cadj[c] {
                if colour[d] == u8::MAX {
                    colour[d] = 1 - colour[c];
                    stack.push(d);
                }
            }
        }
    }
    let mut seq = InversionSequence::new(n);
    for c in 0..2 {
        seq.push(vertex_set(n, (0..n).filter(|&v| colour[comp[v]] == c)));
    }
    verified(o1, o2, seq.compact(g))
}

pub fn is_star_forest(g: &Graph) -> bool {
    g.is_forest() && g.edges().iter().all(|&(u, v)| g.degree(u) <= 1 || g.degree(v) <= 1)
}

/// One inversion for a star forest: each star's centre together with its disagreeing leaves.
pub fn star_forest_transform(o1: &Orientation, o2: &Orientation) -> Result<InversionSequence> {
    let pi = check_pair(o1, o2)?;
    let g = o1.graph();
    if !is_star_forest(g) {
        return precondition("star forest transform needs a forest of stars");
    }
    let mut x = Vec::new();
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let centre = *comp.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).expect("component");
        let leaves: Vec<usize> = g.incident(centre).iter().filter(|&&(_, e)| pi.get(e)).map(|&(w, _)| w).collect();
        if !leaves.is_empty() {
            x.push(centre);
            x.extend(leaves);
        }
    }
    let mut seq = InversionSequence::new(g.n());
    if !x.is_empty() {
        seq.push(vertex_set(g.n(), x));
    }
    verified(o1, o2, seq)
}

/// Vertices of a cycle in cyclic order, with `edges[i]` joining `order[i]` and `order[i+1]`.
fn cyclic_order(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) != 2) || g.has_parallel_edges() {
        return None;
    }
    let mut order = vec![0];
    let mut edges = Vec::new();
    let mut prev_edge = usize::MAX;
    let mut cur = 0;
    loop {
        let &(next, e) = g.incident(cur).iter().find(|&&(_, e)| e != prev_edge).expect("degree 2");
        edges.push(e);
        if next == 0 {
            break;
        }
        order.push(next);
        prev_edge = e;
        cur = next;
    }
    Some((order, edges))
}

/// At most two inversions for a cycle.
pub fn cycle_transform(o1: &Orientation, o2: &Orientation) -> Result<InversionSequence> {
    let pi = check_pair(o1, o2)?;
    let g = o1.graph();
    let n = g.n();
    let Some((order, edges)) = cyclic_order(g) else {
        return precondition("cycle transform needs a cycle");
    };
    let len = order.len();
    let agree = |i: usize| !pi.get(edges[i % len]);
    // two consecutive agreeing edges: delete their common vertex and solve a path
    if let Some(i) = (0..len).find(|&i| agree(i) && agree(i + 1)) {
        let x = order[(i + 1) % len];
        let rest: Vec<usize> = (0..n).filter(|&v| v != x).collect();
        let (h, vs, em) = g.induced_subgraph(&rest);
        let h = Arc::new(h);
        let seq = forest_transform(&o1.restrict(h.clone(), &em), &o2.restrict(h, &em))?;
        return verified(o1, o2, seq.relabel(n, |v| vs[v]));
    }
    let mut seq = InversionSequence::new(n);
    let Some(start) = (0..len).find(|&i| agree(i)) else {
        seq.push(vertex_set(n, 0..n));
        return verified(o1, o2, seq);
    };
    // walk from just after the agreeing edge `start`, splitting at agreeing edges
    let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
    for step in 0..len {
        let i = (start + 1 + step) % len;
        paths.last_mut().expect("current path").push(order[i]);
        if agree(i) && step + 1 < len {
            paths.push(Vec::new());
        }
    }
    let t = paths.len();
    let (x, y) = (order[start], order[(start + 1) % len]);
    let odd: Vec<usize> = paths.iter().step_by(2).flatten().copied().collect();
    let mut even: Vec<usize> = paths.iter().skip(1).step_by(2).flatten().copied().collect();
    if t % 2 == 1 {
        even.extend([x, y]);
    }
    seq.push(vertex_set(n, odd));
    seq.push(vertex_set(n, even));
    verified(o1, o2, seq.compact(g))
}

/// At most two inversions when every vertex has degree at most 2.
pub fn degree_two_transform(o1: &Orientation, o2: &Orientation) -> Result<InversionSequence> {
    check_pair(o1, o2)?;
    let g = o1.graph();
    if g.max_degree() > 2 || g.has_parallel_edges() {
        return precondition("degree-2 transform needs a simple graph of maximum degree 2");
    }
    let n = g.n();
    let mut parts = Vec::new();
    let mut tree_vertices = Vec::new();
    for comp in g.components() {
        let (h, vs, em) = g.induced_subgraph(&comp);
        if h.m() + 1 == h.n() {
            tree_vertices.extend(vs);
            continue;
        }
        let h = Arc::new(h);
        let s = cycle_transform(&o1.restrict(h.clone(), &em), &o2.restrict(h, &em))?;
        parts.push(s.relabel(n, |v| vs[v]));
    }
    if !tree_vertices.is_empty() {
        let (h, vs, em) = g.induced_subgraph(&tree_vertices);
        let h = Arc::new(h);
        let s = forest_transform(&o1.restrict(h.clone(), &em), &o2.restrict(h, &em))?;
        parts.push(s.relabel(n, |v| vs[v]));
    }
    verified(o1, o2, InversionSequence::merge_parallel(n, &parts).compact(g))
}
