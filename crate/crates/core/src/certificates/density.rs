//! Maximum average degree, densest subgraphs and degeneracy.

use std::collections::VecDeque;

use num_rational::Rational64;

use crate::graph::Graph;

/// Dinic max-flow on a small dense-ish network.
struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, c: i64) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &a in &self.head[x] {
                if self.cap[a] > 0 && level[self.to[a]] == usize::MAX {
                    level[self.to[a]] = level[x] + 1;
                    q.push_back(self.to[a]);
                }
            }
        }
        level
    }

    fn push(&mut self, x: usize, t: usize, f: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if x == t {
            return f;
        }
        while it[x] < self.head[x].len() {
            let a = self.head[x][it[x]];
            let y = self.to[a];
            if self.cap[a] > 0 && level[y] == level[x] + 1 {
                let d = self.push(y, t, f.min(self.cap[a]), level, it);
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            it[x] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut it = vec![0; self.head.len()];
            loop {
                let f = self.push(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }
}

/// Vertex set maximising `q·2|E(S)| - p·|S|`, or `None` when that maximum is not positive.
fn best_closure(g: &Graph, p: i64, q: i64) -> Option<Vec<usize>> {
    let (n, m) = (g.n(), g.m());
    let (s, t) = (n + m, n + m + 1);
    let mut f = Flow::new(n + m + 2);
    let inf = i64::MAX / 4;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        f.arc(s, n + e, 2 * q);
        f.arc(n + e, u, inf);
        f.arc(n + e, v, inf);
    }
    for v in 0..n {
        f.arc(v, t, p);
    }
    let cut = f.max_flow(s, t);
    if cut >= 2 * q * m as i64 {
        return None;
    }
    let reach = f.levels(s);
    let set: Vec<usize> = (0..n).filter(|&v| reach[v] != usize::MAX).collect();
    Some(set)
}

fn edges_within(g: &Graph, set: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    g.edges().iter().filter(|&&(u, v)| inside[u] && inside[v]).count()
}

/// Exact maximum average degree together with a subgraph attaining it.
pub fn densest_subgraph(g: &Graph) -> (Rational64, Vec<usize>) {
    if g.n() == 0 {
        return (Rational64::from_integer(0), Vec::new());
    }
    let mut best: Vec<usize> = (0..g.n()).collect();
    let mut ratio = Rational64::new(2 * g.m() as i64, g.n() as i64);
    while let Some(next) = best_closure(g, *ratio.numer(), *ratio.denom()) {
        let r = Rational64::new(2 * edges_within(g, &next) as i64, next.len() as i64);
        debug_assert!(r > ratio);
        ratio = r;
        best = next;
    }
    (ratio, best)
}

pub fn mad_exact(g: &Graph) -> Rational64 {
    densest_subgraph(g).0
}

/// Degeneracy and an ordering in which every vertex has at most that many earlier neighbours.
pub fn degeneracy_ordering(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
        d = d.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    (d, order)
}
