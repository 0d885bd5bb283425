//! Even cycles through vertices of degree at least three.

use std::collections::VecDeque;

use crate::graph::Graph;

/// An even cycle of `g` (as a closed vertex walk without repetition) all of whose
/// vertices satisfy `keep`, searching component by component in vertex order.
pub fn even_cycle_in(g: &Graph, keep: &[bool]) -> Option<Vec<usize>> {
    let vs: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    let (h, map, _) = g.induced_subgraph(&vs);
    let h = simple(&h);
    for comp in h.components() {
        if comp.len() < 4 {
            continue;
        }
        let min_deg = comp.iter().map(|&v| h.degree(v)).min().unwrap_or(0);
        let found = if min_deg >= 3 { maximal_path_cycle(&h, comp[0]) } else { None };
        if let Some(c) = found.or_else(|| block_even_cycle(&h, &comp)) {
            return Some(c.into_iter().map(|v| map[v]).collect());
        }
    }
    None
}

fn simple(g: &Graph) -> Graph {
    let mut seen = std::collections::HashSet::new();
    let edges = g.edges().iter().copied().filter(|&(u, v)| seen.insert((u.min(v), u.max(v)))).collect();
    Graph::new(g.n(), edges).expect("deduplicated")
}

/// With minimum degree 3: grow a path until its end has all neighbours on it, then read
/// off three cycles through that end, one of which is even.
fn maximal_path_cycle(g: &Graph, start: usize) -> Option<Vec<usize>> {
    let mut path = vec![start];
    let mut pos = vec![usize::MAX; g.n()];
    pos[start] = 0;
    loop {
        let y = *path.last().expect("nonempty");
        match g.neighbors(y).filter(|&w| pos[w] == usize::MAX).min() {
            Some(w) => {
                pos[w] = path.len();
                path.push(w);
            }
            None => break,
        }
    }
    let l = path.len() - 1;
    let y = path[l];
    let mut back: Vec<usize> = g.neighbors(y).map(|w| pos[w]).filter(|&p| p + 1 < l).collect();
    back.sort_unstable();
    if back.len() < 2 {
        return None;
    }
    let (p1, p2) = (back[0], back[1]);
    // |C1| = p2 - p1 + 2, |C2| = l - p2 + 1, |C3| = l - p1 + 1
    if (p2 - p1) % 2 == 0 {
        let mut c: Vec<usize> = path[p1..=p2].to_vec();
        c.push(y);
        Some(c)
    } else if (l - p2 + 1) % 2 == 0 {
        Some(path[p2..=l].to_vec())
    } else {
        Some(path[p1..=l].to_vec())
    }
}

/// Biconnected components as edge lists (Hopcroft-Tarjan, iterative).
fn blocks(g: &Graph, comp: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let root = comp[0];
    // frames: (vertex, parent edge id, next incident index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    disc[root] = time;
    low[root] = time;
    time += 1;
    while let Some(&(v, pe, i)) = stack.last() {
        if i < g.incident(v).len() {
            let (w, e) = g.incident(v)[i];
            stack.last_mut().expect("frame").2 += 1;
            if e == pe {
                continue;
            }
            if disc[w] == usize::MAX {
                estack.push((v, w));
                disc[w] = time;
                low[w] = time;
                time += 1;
                stack.push((w, e, 0));
            } else if disc[w] < disc[v] {
                estack.push((v, w));
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut block = Vec::new();
                    while let Some(edge) = estack.pop() {
                        block.push(edge);
                        if edge == (p, v) {
                            break;
                        }
                    }
                    out.push(block);
                }
            }
        }
    }
    out
}

fn cycle_in_block(n: usize, adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    // DFS until a back edge closes a cycle
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(start, 0usize)];
    depth[start] = 0;
    while let Some((v, i)) = stack.pop() {
        if i < adj[v].len() {
            stack.push((v, i + 1));
            let w = adj[v][i];
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut c = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    c.push(x);
                }
                return c;
            }
        }
    }
    Vec::new()
}

/// In a 2-connected block that is not a cycle, a cycle plus an ear gives three internally
/// disjoint paths between two vertices; two of them have equal parity.
fn block_even_cycle(g: &Graph, comp: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    for block in blocks(g, comp) {
        if block.len() < 3 {
            continue;
        }
        let mut adj = vec![Vec::new(); n];
        let mut verts = Vec::new();
        for &(u, v) in &block {
            adj[u].push(v);
            adj[v].push(u);
            verts.extend([u, v]);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        verts.sort_unstable();
        verts.dedup();
        let cycle = cycle_in_block(n, &adj, verts[0]);
        if block.len() == verts.len() {
            if cycle.len() % 2 == 0 {
                return Some(cycle);
            }
            continue;
        }
        let k = cycle.len();
        let mut at = vec![usize::MAX; n];
        for (i, &v) in cycle.iter().enumerate() {
            at[v] = i;
        }
        let on_cycle_edge = |a: usize, b: usize| {
            at[a] != usize::MAX && at[b] != usize::MAX && {
                let d = (at[a] + k - at[b]) % k;
                d == 1 || d == k - 1
            }
        };
        // ear from x: a chord, or a path through vertices off the cycle back to another cycle vertex
        let mut ear: Option<Vec<usize>> = None;
        'outer: for &x in &cycle {
            for &w in &adj[x] {
                if on_cycle_edge(x, w) {
                    continue;
                }
                if at[w] != usize::MAX {
                    ear = Some(vec![x, w]);
                    break 'outer;
                }
                let mut prev = vec![usize::MAX; n];
                prev[w] = x;
                let mut q = VecDeque::from([w]);
                while let Some(y) = q.pop_front() {
                    for &z in &adj[y] {
                        if at[z] != usize::MAX {
                            if z != x {
                                let mut p = vec![z, y];
                                let mut c = y;
                                while c != w {
                                    c = prev[c];
                                    p.push(c);
                                }
                                p.push(x);
                                p.reverse();
                                ear = Some(p);
                                break 'outer;
                            }
                        } else if prev[z] == usize::MAX {
                            prev[z] = y;
                            q.push_back(z);
                        }
                    }
                }
            }
        }
        let ear = ear?;
        let (x, y) = (ear[0], *ear.last().expect("ear"));
        let (i, j) = (at[x], at[y]);
        let forward: Vec<usize> = (0..=((j + k - i) % k)).map(|s| cycle[(i + s) % k]).collect();
        let backward: Vec<usize> = (0..=((i + k - j) % k)).map(|s| cycle[(j + s) % k]).collect();
        let (lf, lb, le) = (forward.len() - 1, backward.len() - 1, ear.len() - 1);
        let c = if (lf + le) % 2 == 0 {
            // x .. y along the cycle, then back along the ear
            let mut c = forward;
            c.extend(ear[1..ear.len() - 1].iter().rev());
            c
        } else if (lb + le) % 2 == 0 {
            let mut c = backward;
            c.extend(&ear[1..ear.len() - 1]);
            c
        } else {
            cycle.clone()
        };
        debug_assert!(c.len() % 2 == 0);
        return Some(c);
    }
    None
}
