//! Strong orderings and the greedy realisation they guarantee.

use std::collections::VecDeque;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::certificates::degeneracy_ordering;
use crate::error::{precondition, Error, Result};
use crate::f2::{solve_affine, Echelon, F2Vector};
use crate::graph::{EdgeLabeling, Graph, Realisation};

pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexSlack {
    pub vertex: usize,
    /// `|N_<(u)|`.
    pub back: usize,
    /// Number of sets `X` contained in `N_{<u}(v)` for some later neighbour `v`; `None` for sinks.
    pub union_size: Option<u128>,
    /// `t - back - log2(union_size)` (or `t - back` for sinks); the condition needs it positive
    /// (nonnegative for sinks).
    pub slack: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrongReport {
    pub t: usize,
    pub holds: bool,
    pub vertices: Vec<VertexSlack>,
    pub first_violation: Option<usize>,
}

impl StrongReport {
    pub fn min_slack(&self) -> f64 {
        self.vertices.iter().map(|v| v.slack).fold(f64::INFINITY, f64::min)
    }
}

fn check_permutation(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: order.len() });
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return precondition(format!("ordering is not a permutation (vertex {v})"));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// `|P(A_1) ∪ ... ∪ P(A_k)|` by inclusion-exclusion over the maximal sets.
fn powerset_union_size(n: usize, mut sets: Vec<FixedBitSet>) -> Result<u128> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.count_ones(..)));
    let mut maximal: Vec<FixedBitSet> = Vec::new();
    for s in sets {
        if !maximal.iter().any(|m| s.is_subset(m)) {
            maximal.push(s);
        }
    }
    if maximal.len() > 24 {
        return precondition(format!("{} maximal neighbourhoods exceed the inclusion-exclusion guard", maximal.len()));
    }
    fn rec(sets: &[FixedBitSet], i: usize, inter: &FixedBitSet, size: usize, acc: &mut i128) {
        for j in i..sets.len() {
            let mut next = inter.clone();
            next.intersect_with(&sets[j]);
            let sign: i128 = if size % 2 == 0 { 1 } else { -1 };
            let c = next.count_ones(..);
            *acc += sign * (1i128 << c);
            if c == 0 {
                // extensions by later sets all contribute 1 with alternating sign
                if j + 1 < sets.len() {
                    *acc -= sign;
                }
                continue;
            }
            rec(sets, j + 1, &next, size + 1, acc);
        }
    }
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let mut acc = 0i128;
    rec(&maximal, 0, &full, 0, &mut acc);
    Ok(acc as u128)
}

/// Evaluates the `t`-strong condition at every vertex of `order`.
pub fn check_t_strong(g: &Graph, order: &[usize], t: usize) -> Result<StrongReport> {
    let n = g.n();
    let pos = check_permutation(n, order)?;
    let mut vertices = Vec::with_capacity(n);
    for &u in order {
        let pu = pos[u];
        let mut back = FixedBitSet::with_capacity(n);
        let mut fwd = FixedBitSet::with_capacity(n);
        for w in g.neighbors(u) {
            if pos[w] < pu {
                back.insert(w);
            } else {
                fwd.insert(w);
            }
        }
        let b = back.count_ones(..);
        let (union_size, slack, holds) = if fwd.count_ones(..) == 0 {
            (None, t as f64 - b as f64, b <= t)
        } else {
            let sets: Vec<FixedBitSet> = fwd
                .ones()
                .map(|v| {
                    let mut s = FixedBitSet::with_capacity(n);
                    for w in g.neighbors(v) {
                        if pos[w] < pu {
                            s.insert(w);
                        }
                    }
                    s
                })
                .collect();
            let size = powerset_union_size(n, sets)?;
            let holds = b < t && (t - b >= 127 || size < (1u128 << (t - b)));
            (Some(size), t as f64 - b as f64 - (size as f64).log2(), holds)
        };
        vertices.push(VertexSlack { vertex: u, back: b, union_size, slack, holds });
    }
    let first_violation = vertices.iter().find(|v| !v.holds).map(|v| v.vertex);
    Ok(StrongReport { t, holds: first_violation.is_none(), vertices, first_violation })
}

/// A tree decomposition: bags of vertices and the tree edges between bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.bags.len();
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        if k == 0 {
            return if g.n() == 0 { Ok(()) } else { bad("no bags".into()) };
        }
        if self.edges.len() + 1 != k {
            return bad(format!("{} tree edges for {k} bags", self.edges.len()));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &self.edges {
            if a >= k || b >= k || a == b {
                return bad(format!("bad tree edge {a}-{b}"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return bad("bag tree is disconnected".into());
        }
        let mut holders = vec![Vec::new(); g.n()];
        let mut member = vec![FixedBitSet::with_capacity(g.n()); k];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return bad(format!("bag {i} holds unknown vertex {v}"));
                }
                holders[v].push(i);
                member[i].insert(v);
            }
        }
        for (v, h) in holders.iter().enumerate() {
            if h.is_empty() {
                return bad(format!("vertex {v} is in no bag"));
            }
            // bags holding v must induce a connected subtree
            let mut reached = vec![false; k];
            let mut stack = vec![h[0]];
            reached[h[0]] = true;
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !reached[y] && member[y].contains(v) {
                        reached[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            if count != h.len() {
                return bad(format!("bags holding vertex {v} are not connected"));
            }
        }
        for &(u, v) in g.edges() {
            if !holders[u].iter().any(|&i| member[i].contains(v)) {
                return bad(format!("edge {u}-{v} is in no bag"));
            }
        }
        Ok(())
    }
}

/// Tree decomposition from the minimum-degree elimination heuristic (exact for treewidth at most 2).
pub fn min_degree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut alive = vec![true; n];
    let mut elim_order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (adj[v].count_ones(..), v)).expect("alive vertex");
        let nb: Vec<usize> = adj[v].ones().collect();
        for &a in &nb {
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
            adj[a].set(v, false);
        }
        alive[v] = false;
        let mut bag = vec![v];
        bag.extend(nb);
        bags.push(bag);
        elim_order.push(v);
    }
    let mut step = vec![0; n];
    for (i, &v) in elim_order.iter().enumerate() {
        step[v] = i;
    }
    let mut edges = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let parent = bags[i][1..].iter().map(|&w| step[w]).min().unwrap_or(i + 1);
        edges.push((i, parent));
    }
    TreeDecomposition { bags, edges }
}

#[derive(Clone, Debug)]
pub enum Strategy {
    /// Vertex ids in order; `2Δ - 1`-strong.
    Identity,
    /// One side of a bipartition first; `Δ + ⌈log Δ⌉ - 1`-strong for `Δ >= 2`.
    Bipartite,
    /// A degeneracy ordering; `2δ* - 1 + ⌈log Δ⌉`-strong for `Δ >= 2`.
    Degeneracy,
    /// Depth of each vertex's highest bag; `2·width`-strong on the bag-completed graph.
    TreeDecomposition(TreeDecomposition),
}

#[derive(Clone, Debug)]
pub struct StrongOrdering {
    pub order: Vec<usize>,
    pub t: usize,
    /// Graph the ordering is strong for (the input, or its bag completion).
    pub graph: Arc<Graph>,
}

fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    q.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

fn completed(g: &Graph, td: &TreeDecomposition) -> Graph {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        if seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    for bag in &td.bags {
        for (i, &a) in bag.iter().enumerate() {
            for &b in &bag[i + 1..] {
                if a != b && seen.insert((a.min(b), a.max(b))) {
                    edges.push((a, b));
                }
            }
        }
    }
    Graph::new(g.n(), edges).expect("completion is simple")
}

/// Builds an ordering with the advertised strength and checks the condition holds.
pub fn build_ordering(g: &Arc<Graph>, strategy: &Strategy) -> Result<StrongOrdering> {
    if g.has_parallel_edges() {
        return precondition("strong orderings are defined for simple graphs");
    }
    let delta = g.max_degree();
    let n = g.n();
    let small = |t: usize| if delta <= 1 { delta } else { t };
    let out = match strategy {
        Strategy::Identity => StrongOrdering { order: (0..n).collect(), t: (2 * delta).saturating_sub(1), graph: g.clone() },
        Strategy::Bipartite => {
            let Some(side) = bipartition(g) else {
                return precondition("bipartite ordering needs a bipartite graph");
            };
            let mut order: Vec<usize> = (0..n).filter(|&v| side[v] == 0).collect();
            order.extend((0..n).filter(|&v| side[v] == 1));
            let t = small((delta + ceil_log2(delta)).saturating_sub(1));
            StrongOrdering { order, t, graph: g.clone() }
        }
        Strategy::Degeneracy => {
            let (d, order) = degeneracy_ordering(g);
            let t = small((2 * d + ceil_log2(delta)).saturating_sub(1));
            StrongOrdering { order, t, graph: g.clone() }
        }
        Strategy::TreeDecomposition(td) => {
            td.validate(g)?;
            let h = Arc::new(completed(g, td));
            let k = td.bags.len();
            let mut adj = vec![Vec::new(); k];
            for &(a, b) in &td.edges {
                adj[a].push(b);
                adj[b].push(a);
            }
            let mut bfs_index = vec![usize::MAX; k];
            let mut next = 0;
            for root in 0..k {
                if bfs_index[root] != usize::MAX {
                    continue;
                }
                let mut q = VecDeque::from([root]);
                bfs_index[root] = next;
                next += 1;
                while let Some(x) = q.pop_front() {
                    for &y in &adj[x] {
                        if bfs_index[y] == usize::MAX {
                            bfs_index[y] = next;
                            next += 1;
                            q.push_back(y);
                        }
                    }
                }
            }
            let mut top = vec![usize::MAX; n];
            for (i, bag) in td.bags.iter().enumerate() {
                for &v in bag {
                    top[v] = top[v].min(bfs_index[i]);
                }
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| (top[v], v));
            StrongOrdering { order, t: 2 * td.width(), graph: h }
        }
    };
    let report = check_t_strong(&out.graph, &out.order, out.t)?;
    if !report.holds {
        return Err(Error::Invariant(format!(
            "{strategy:?} ordering is not {}-strong at vertex {:?}",
            out.t, report.first_violation
        )));
    }
    Ok(out)
}

/// Greedy vector assignment along `order`: each vector solves the constraints to earlier
/// neighbours and avoids the span of every later neighbour's already placed neighbours.
/// Returns `None` when some step has no admissible vector.
pub(crate) fn greedy_extend(g: &Graph, labels: &[bool], order: &[usize], t: usize) -> Result<Option<Vec<F2Vector>>> {
    let n = g.n();
    let pos = check_permutation(n, order)?;
    let mut value: Vec<Option<F2Vector>> = vec![None; n];
    for (i, &u) in order.iter().enumerate() {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut later = Vec::new();
        for &(w, e) in g.incident(u) {
            if pos[w] < i {
                rows.push(value[w].expect("earlier vertex placed"));
                rhs.push(labels[e]);
            } else {
                later.push(w);
            }
        }
        let space = solve_affine(&rows, &rhs, t)?;
        let spans: Vec<Echelon> = later
            .iter()
            .map(|&w| {
                let mut e = Echelon::new(t);
                for x in g.neighbors(w) {
                    if pos[x] < i {
                        e.insert(value[x].expect("placed").bits());
                    }
                }
                e
            })
            .collect();
        let Some(x) = space.iter().find(|x| spans.iter().all(|s| !s.contains(x.bits()))) else {
            return Ok(None);
        };
        value[u] = Some(x);
        for &w in &later {
            let mut e = Echelon::new(t);
            for y in g.neighbors(w) {
                if pos[y] <= i && !e.insert(value[y].expect("placed").bits()) {
                    return Err(Error::Invariant(format!("placed neighbours of vertex {w} became dependent")));
                }
            }
        }
    }
    Ok(Some(value.into_iter().map(|v| v.expect("all placed")).collect()))
}

/// Realisation in F2^t along a `t`-strong ordering.
pub fn greedy_realisation(pi: &EdgeLabeling, order: &[usize], t: usize) -> Result<Realisation> {
    let g = pi.graph();
    if g.has_parallel_edges() {
        return precondition("greedy realisation needs a simple graph");
    }
    let report = check_t_strong(g, order, t)?;
    if let Some(v) = report.first_violation {
        return Err(Error::NotStrong { t, vertex: v });
    }
    let labels: Vec<bool> = (0..g.m()).map(|e| pi.get(e)).collect();
    let Some(vectors) = greedy_extend(g, &labels, order, t)? else {
        return Err(Error::Invariant("greedy step found no admissible vector on a strong ordering".into()));
    };
    let r = Realisation::new(t, vectors, false)?;
    if !r.realises(pi) {
        return Err(Error::Invariant("greedy realisation fails verification".into()));
    }
    Ok(r)
}

/// Realisation in F2^(2·width): complete the bags, label the new edges 0, run the greedy step.
pub fn treedec_realisation(pi: &EdgeLabeling, td: &TreeDecomposition) -> Result<Realisation> {
    let g = pi.graph();
    let so = build_ordering(g, &Strategy::TreeDecomposition(td.clone()))?;
    let h = so.graph.clone();
    let ext = EdgeLabeling::from_fn(h.clone(), |_, (u, v)| g.edge_between(u, v).is_some_and(|e| pi.get(e)));
    let r = greedy_realisation(&ext, &so.order, so.t)?;
    if !r.realises(pi) {
        return Err(Error::Invariant("tree-decomposition realisation fails on the original graph".into()));
    }
    Ok(r)
}
