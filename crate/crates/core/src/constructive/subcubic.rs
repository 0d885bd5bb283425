//! Good orderings of subcubic multigraphs and realisations in F2^4.

use crate::constructive::strong::greedy_extend;
use crate::error::{precondition, Error, Result};
use crate::f2::F2Vector;
use crate::graph::{EdgeLabeling, Realisation};

type Edges = Vec<(usize, usize, bool)>;

fn incidence(n: usize, edges: &Edges) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); n];
    for (e, &(a, b, _)) in edges.iter().enumerate() {
        inc[a].push(e);
        inc[b].push(e);
    }
    inc
}

fn other(edge: (usize, usize, bool), x: usize) -> usize {
    if edge.0 == x {
        edge.1
    } else {
        edge.0
    }
}

fn bad_vertices(n: usize, edges: &Edges, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let inc = incidence(n, edges);
    order
        .iter()
        .copied()
        .filter(|&v| {
            let early_zero = inc[v].iter().filter(|&&e| !edges[e].2 && pos[other(edges[e], v)] < pos[v]).count();
            let late_one = inc[v].iter().any(|&e| edges[e].2 && pos[other(edges[e], v)] > pos[v]);
            early_zero >= 2 && late_one
        })
        .collect()
}

/// True if no vertex has two earlier 0-edges and a later 1-edge.
pub fn is_good_ordering(pi: &EdgeLabeling, order: &[usize]) -> Result<bool> {
    let g = pi.graph();
    let edges: Edges = g.edges().iter().enumerate().map(|(e, &(a, b))| (a, b, pi.get(e))).collect();
    let mut seen = vec![false; g.n()];
    if order.len() != g.n() || order.iter().any(|&v| v >= g.n() || std::mem::replace(&mut seen[v], true)) {
        return precondition("ordering is not a permutation");
    }
    Ok(bad_vertices(g.n(), &edges, order).is_empty())
}

/// How to reinsert a removed critical edge `u v` into an ordering of the reduced graph.
enum Step {
    /// Both endpoints see one neighbour twice: `t` (of `u`) and `w` (of `v`).
    Doubled { u: usize, v: usize, t: usize, w: usize },
    /// `v` sees `x` twice and `u` sees `x` once; `x` is removed as well.
    Triangle { u: usize, v: usize, x: usize },
    /// `v` sees `w` twice; `u` sees distinct `t1`, `t2`.
    Fork { u: usize, v: usize, t1: usize, t2: usize, w: usize },
    /// Both endpoints see two distinct neighbours.
    Split { u: usize, v: usize, t: [usize; 2], w: [usize; 2] },
}

fn find_critical(n: usize, alive: &[bool], edges: &Edges) -> Option<usize> {
    let inc = incidence(n, edges);
    let key = |e: usize| {
        let (a, b, _) = edges[e];
        (a.min(b), a.max(b))
    };
    (0..edges.len()).find(|&e| {
        let (u, v, one) = edges[e];
        one && alive[u]
            && alive[v]
            && inc[u].len() == 3
            && inc[v].len() == 3
            && inc[u].iter().all(|&f| f == e || key(f) != key(e))
            && inc[u].iter().chain(&inc[v]).all(|&f| f == e || !edges[f].2)
    })
}

fn place(order: &[usize], n: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Replaces `at` in `order` by `with` (which may contain `at`).
fn splice(order: &mut Vec<usize>, at: usize, with: &[usize]) {
    let i = order.iter().position(|&x| x == at).expect("vertex present");
    order.splice(i..=i, with.iter().copied());
}

impl Step {
    fn apply(&self, order: &mut Vec<usize>, n: usize) {
        let pos = place(order, n);
        match *self {
            Step::Doubled { u, v, t, w } => {
                // after whichever outside neighbour comes first, put the far endpoint then the near one
                if pos[t] < pos[w] {
                    splice(order, t, &[t, v, u]);
                } else {
                    splice(order, w, &[w, u, v]);
                }
            }
            Step::Triangle { u, v, x } => order.extend([u, v, x]),
            Step::Fork { u, v, t1, t2, w } => {
                let j = pos[t1].max(pos[t2]);
                if pos[w] < j {
                    splice(order, w, &[u, w, v]);
                } else {
                    splice(order, w, &[v, u, w]);
                }
            }
            Step::Split { u, v, t, w } => {
                let t2 = if pos[t[0]] < pos[t[1]] { t[1] } else { t[0] };
                let w2 = if pos[w[0]] < pos[w[1]] { w[1] } else { w[0] };
                let (u, t2, v, w2) = if pos[t2] <= pos[w2] { (u, t2, v, w2) } else { (v, w2, u, t2) };
                if t2 == w2 {
                    splice(order, t2, &[u, v, t2]);
                } else {
                    splice(order, t2, &[u, t2]);
                    splice(order, w2, &[v, w2]);
                }
            }
        }
    }
}

fn reduce(n: usize, alive: &mut [bool], edges: &mut Edges, e: usize) -> Step {
    let (u, v, _) = edges[e];
    let inc = incidence(n, edges);
    let nb = |x: usize| -> [usize; 2] {
        let v: Vec<usize> = inc[x].iter().filter(|&&f| f != e).map(|&f| other(edges[f], x)).collect();
        [v[0], v[1]]
    };
    let (tu, tv) = (nb(u), nb(v));
    let keep = |f: &(usize, usize, bool)| f.0 != u && f.1 != u && f.0 != v && f.1 != v;
    let mut next: Edges = edges.iter().copied().filter(keep).collect();
    alive[u] = false;
    alive[v] = false;
    let step = match (tu[0] == tu[1], tv[0] == tv[1]) {
        (true, true) => {
            next.push((tu[0], tv[0], false));
            next.push((tu[0], tv[0], false));
            Step::Doubled { u, v, t: tu[0], w: tv[0] }
        }
        (true, false) | (false, true) => {
            let (u, v, t, w) = if tv[0] == tv[1] { (u, v, tu, tv[0]) } else { (v, u, tv, tu[0]) };
            if t.contains(&w) {
                alive[w] = false;
                next.retain(|f| f.0 != w && f.1 != w);
                Step::Triangle { u, v, x: w }
            } else {
                next.push((t[0], w, false));
                next.push((t[1], w, false));
                Step::Fork { u, v, t1: t[0], t2: t[1], w }
            }
        }
        (false, false) => {
            next.push((tu[0], tu[1], false));
            next.push((tv[0], tv[1], false));
            Step::Split { u, v, t: tu, w: tv }
        }
    };
    *edges = next;
    step
}

/// A good ordering for a labeled multigraph of maximum degree at most three.
pub fn good_ordering(pi: &EdgeLabeling) -> Result<Vec<usize>> {
    let g = pi.graph();
    let n = g.n();
    if g.max_degree() > 3 {
        return precondition(format!("good orderings need maximum degree at most 3, found {}", g.max_degree()));
    }
    let original: Edges = g.edges().iter().enumerate().map(|(e, &(a, b))| (a, b, pi.get(e))).collect();
    let mut edges = original.clone();
    let mut alive = vec![true; n];
    let mut steps = Vec::new();
    while let Some(e) = find_critical(n, &alive, &edges) {
        steps.push(reduce(n, &mut alive, &mut edges, e));
    }
    let inc = incidence(n, &edges);
    let in_v0 = |v: usize| inc[v].len() == 3 && inc[v].iter().filter(|&&e| edges[e].2).count() == 1;
    let mut order: Vec<usize> = (0..n).filter(|&v| alive[v] && !in_v0(v)).collect();
    order.extend((0..n).filter(|&v| alive[v] && in_v0(v)));
    for step in steps.iter().rev() {
        step.apply(&mut order, n);
    }
    let bad = bad_vertices(n, &original, &order);
    if order.len() != n || !bad.is_empty() {
        return Err(Error::Invariant(format!("good ordering surgery left bad vertices {bad:?}")));
    }
    Ok(order)
}

/// Realisation in F2^4 of any labeling of a simple graph with maximum degree at most three.
pub fn subcubic_realisation(pi: &EdgeLabeling) -> Result<Realisation> {
    let g = pi.graph();
    if g.has_parallel_edges() {
        return precondition("subcubic realisation needs a simple graph");
    }
    if g.max_degree() > 3 {
        return precondition(format!("maximum degree {} exceeds 3", g.max_degree()));
    }
    let n = g.n();
    // vertices whose remaining edges are all 0 get the zero vector; peel until none remain
    let mut alive = vec![true; n];
    loop {
        let dead: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && g.incident(v).iter().all(|&(w, e)| !alive[w] || !pi.get(e)))
            .collect();
        if dead.is_empty() {
            break;
        }
        for v in dead {
            alive[v] = false;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let (sub, vs, edge_map) = g.induced_subgraph(&keep);
    let sub = std::sync::Arc::new(sub);
    let sub_pi = pi.restrict(sub.clone(), &edge_map);
    let order = good_ordering(&sub_pi)?;
    let labels: Vec<bool> = (0..sub.m()).map(|e| sub_pi.get(e)).collect();
    let Some(vectors) = greedy_extend(&sub, &labels, &order, 4)? else {
        return Err(Error::Invariant("no admissible vector along a good ordering".into()));
    };
    let mut out = vec![F2Vector::zero(4); n];
    for (i, &v) in vs.iter().enumerate() {
        out[v] = vectors[i];
    }
    let r = Realisation::new(4, out, false)?;
    if !r.realises(pi) {
        return Err(Error::Invariant("subcubic realisation fails verification".into()));
    }
    Ok(r)
}
