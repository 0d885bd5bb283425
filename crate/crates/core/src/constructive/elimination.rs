use crate::error::Result;
use crate::graph::{vertex_set, Graph, InversionSequence, Orientation};

use super::{check_pair, verified};

/// Independent set chosen greedily by minimum remaining degree (ties by id).
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    while let Some(v) = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)) {
        out.push(v);
        let mut gone = vec![v];
        gone.extend(g.neighbors(v).filter(|&w| !removed[w]));
        gone.sort_unstable();
        gone.dedup();
        for &x in &gone {
            removed[x] = true;
        }
        for &x in &gone {
            for y in g.neighbors(x) {
                deg[y] = deg[y].saturating_sub(1);
            }
        }
    }
    out.sort_unstable();
    out
}

/// At most `n - |I|` inversions: peel the vertices outside an independent set `I`
/// one by one, each time inverting the vertex with its disagreeing remaining neighbours.
pub fn elimination_transform(o1: &Orientation, o2: &Orientation) -> Result<InversionSequence> {
    check_pair(o1, o2)?;
    let g = o1.graph();
    let n = g.n();
    let keep = greedy_independent_set(g);
    let mut in_keep = vec![false; n];
    for &v in &keep {
        in_keep[v] = true;
    }
    let mut cur = o1.clone();
    let mut peeled = vec![false; n];
    let mut seq = InversionSequence::new(n);
    for v in (0..n).filter(|&v| !in_keep[v]) {
        let mut x = vec![v];
        for &(w, e) in g.incident(v) {
            if !peeled[w] && cur.is_reversed(e) != o2.is_reversed(e) {
                x.push(w);
            }
        }
        let set = vertex_set(n, x);
        cur.invert_in_place(&set);
        seq.push(set);
        peeled[v] = true;
    }
    verified(o1, o2, seq.compact(g))
}
