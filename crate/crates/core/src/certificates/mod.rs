//! Lower-bound certificates for the inversion diameter.

mod cycles;
mod density;

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::Serialize;

pub use cycles::even_cycle_in;
pub use density::{degeneracy_ordering, densest_subgraph, mad_exact};

use crate::error::{precondition, Result};
use crate::f2::gram;
use crate::generators::{complete_multipartite, multipartite_index, subdivided_complete};
use crate::graph::{EdgeLabeling, Graph, Orientation, Realisation};
use crate::solver::{inversion_diameter, SolveOptions};

/// How a bound is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Proof {
    /// A counting or structural argument about the witness.
    Argument,
    /// An exhaustive search by the exact solver.
    Solver,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Edge { u: usize, v: usize },
    Subgraph { vertices: Vec<usize> },
    Cycle { vertices: Vec<usize> },
    Labeling { disagree: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub rule: String,
    pub bound: usize,
    pub proof: Proof,
    pub witness: Witness,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub best: usize,
    pub witnesses: Vec<Certificate>,
}

impl LowerBoundReport {
    fn add(&mut self, c: Certificate) {
        self.best = self.best.max(c.bound);
        self.witnesses.push(c);
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Edge { u, v } => write!(f, "edge {u}-{v}"),
            Witness::Subgraph { vertices } => write!(f, "subgraph {}", join(vertices)),
            Witness::Cycle { vertices } => write!(f, "cycle {}", join(vertices)),
            Witness::Labeling { disagree } => write!(f, "labeling {}", join(disagree)),
        }
    }
}

impl fmt::Display for LowerBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lower bound {}", self.best)?;
        for c in &self.witnesses {
            let proof = match c.proof {
                Proof::Argument => "argument",
                Proof::Solver => "solver",
            };
            writeln!(f, "RULE {} BOUND {} WITNESS {} PROOF {}", c.rule, c.bound, c.witness, proof)?;
        }
        Ok(())
    }
}

/// `⌈Mad/2⌉` with a densest subgraph as witness.
pub fn mad_lower_bound(g: &Graph) -> (usize, Vec<usize>) {
    let (mad, set) = densest_subgraph(g);
    let half = mad / Rational64::from_integer(2);
    (half.ceil().to_integer() as usize, set)
}

/// Forest trichotomy: exact diameter of a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForestClass {
    Edgeless,
    StarForest,
    Other,
    NotAForest,
}

impl ForestClass {
    pub fn diameter(self) -> Option<usize> {
        match self {
            ForestClass::Edgeless => Some(0),
            ForestClass::StarForest => Some(1),
            ForestClass::Other => Some(2),
            ForestClass::NotAForest => None,
        }
    }
}

/// A path on four vertices or a triangle in `g` (not necessarily induced); exists iff
/// `g` is not a star forest.
pub fn p4_or_triangle(g: &Graph) -> Option<Vec<usize>> {
    for &(u, v) in g.edges() {
        let a: Vec<usize> = g.neighbors(u).filter(|&x| x != v).collect();
        let b: Vec<usize> = g.neighbors(v).filter(|&x| x != u).collect();
        if a.is_empty() || b.is_empty() {
            continue;
        }
        for &x in &a {
            if let Some(&y) = b.iter().find(|&&y| y != x) {
                return Some(vec![x, u, v, y]);
            }
        }
        return Some(vec![u, v, a[0]]);
    }
    None
}

pub fn classify_forest(g: &Graph) -> ForestClass {
    if !g.is_forest() {
        ForestClass::NotAForest
    } else if g.m() == 0 {
        ForestClass::Edgeless
    } else if p4_or_triangle(g).is_none() {
        ForestClass::StarForest
    } else {
        ForestClass::Other
    }
}

/// Even cycle through vertices of degree at least 3, with the labeling that needs three
/// inversions: agree on the cycle except its closing edge, disagree everywhere else.
pub fn even_cycle_deg3_bound(g: &Arc<Graph>) -> Option<(Vec<usize>, EdgeLabeling)> {
    let keep: Vec<bool> = (0..g.n()).map(|v| g.degree(v) >= 3).collect();
    let c = even_cycle_in(g, &keep)?;
    let k = c.len();
    let mut agree = vec![false; g.m()];
    for i in 0..k - 1 {
        let e = g.edge_between(c[i], c[i + 1]).expect("cycle edge");
        agree[e] = true;
    }
    let pi = EdgeLabeling::from_fn(g.clone(), |e, _| !agree[e]);
    Some((c, pi))
}

/// Labeling of `K_r[K̄_t]` forcing `(r - 1)t` inversions: 1 exactly between equal
/// positions of consecutive parts.
pub fn multipartite_hard_labeling(r: usize, t: usize) -> Result<(EdgeLabeling, usize)> {
    if r == 0 || t == 0 {
        return precondition("parts and part size must be positive");
    }
    let g = Arc::new(complete_multipartite(r, t));
    let pi = EdgeLabeling::from_fn(g, |_, (a, b)| {
        let (i, j) = (a / t, a % t);
        let (i2, j2) = (b / t, b % t);
        debug_assert_eq!(multipartite_index(t, i, j), a);
        i.abs_diff(i2) == 1 && j == j2
    });
    Ok((pi, (r - 1) * t))
}

/// Rank of the Gram matrix of a realisation: a lower bound on its dimension.
pub fn gram_rank(r: &Realisation) -> usize {
    gram(r.vectors()).expect("uniform dimension").rank()
}

pub const PIGEONHOLE_MAX_CLIQUE: usize = 12;

/// Once-subdivided `K_{2^(l-1)+1}` with orientations giving every subdivision vertex
/// in-degree 1 and 2 respectively; any `l - 1` inversions leave two original vertices
/// with equal membership, so the pair is at distance at least `l`.
pub fn pigeonhole_bound(l: usize) -> Result<(Arc<Graph>, Orientation, Orientation, usize)> {
    if l == 0 || l > usize::BITS as usize || (1usize << (l - 1)) + 1 > PIGEONHOLE_MAX_CLIQUE {
        return precondition(format!("pigeonhole instance for l={l} exceeds the size guard"));
    }
    let k = (1usize << (l - 1)) + 1;
    let g = Arc::new(subdivided_complete(k));
    // subdivision vertices have the largest ids, so the canonical orientation points into them
    let o2 = Orientation::canonical(g.clone());
    let mut o1 = o2.clone();
    for e in (1..g.m()).step_by(2) {
        o1.flip_edge(e);
    }
    Ok((g, o1, o2, l))
}

/// Largest clique by branch and bound (small graphs only).
pub fn max_clique(g: &Graph) -> Vec<usize> {
    fn grow(g: &Graph, cur: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for (i, &v) in cand.iter().enumerate() {
            if cur.len() + cand.len() - i <= best.len() {
                return;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.adjacent(v, w)).collect();
            cur.push(v);
            grow(g, cur, next, best);
            cur.pop();
        }
    }
    let mut best = Vec::new();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    grow(g, &mut Vec::new(), order, &mut best);
    best.sort_unstable();
    best
}

/// Every lower bound that applies, optionally including the exact diameter when the
/// solver is given options and the graph is within its edge guard.
pub fn lower_bound_report(g: &Arc<Graph>, exact: Option<&SolveOptions>) -> Result<LowerBoundReport> {
    let mut rep = LowerBoundReport::default();
    if let Some(&(u, v)) = g.edges().first() {
        rep.add(Certificate { rule: "edge".into(), bound: 1, proof: Proof::Argument, witness: Witness::Edge { u, v } });
    }
    if let Some(vs) = p4_or_triangle(g) {
        let rule = if vs.len() == 3 { "triangle" } else { "path4" };
        rep.add(Certificate { rule: rule.into(), bound: 2, proof: Proof::Argument, witness: Witness::Subgraph { vertices: vs } });
    }
    let (b, set) = mad_lower_bound(g);
    if b > 0 {
        rep.add(Certificate { rule: "mad".into(), bound: b, proof: Proof::Argument, witness: Witness::Subgraph { vertices: set } });
    }
    if g.n() <= 64 {
        let clique = max_clique(g);
        if clique.len() >= 2 {
            rep.add(Certificate {
                rule: "clique".into(),
                bound: clique.len() - 1,
                proof: Proof::Argument,
                witness: Witness::Subgraph { vertices: clique },
            });
        }
    }
    if let Some((c, _)) = even_cycle_deg3_bound(g) {
        rep.add(Certificate { rule: "even-cycle".into(), bound: 3, proof: Proof::Argument, witness: Witness::Cycle { vertices: c } });
    }
    if let Some(opts) = exact {
        if g.m() <= opts.max_edges || opts.force {
            let d = inversion_diameter(g, opts)?;
            rep.add(Certificate {
                rule: "exact".into(),
                bound: d.value,
                proof: Proof::Solver,
                witness: Witness::Labeling { disagree: d.extremal.disagree_edges() },
            });
        }
    }
    Ok(rep)
}
