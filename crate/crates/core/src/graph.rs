//! Graphs, orientations, edge labelings, inversion sequences and realisations.
//!
//! Edge ids are positions in the edge list, so parallel edges are distinct.
//! An orientation stores one bit per edge: `false` means the arc runs from the
//! smaller endpoint to the larger one.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::f2::F2Vector;

pub type VertexSet = FixedBitSet;

pub fn vertex_set(n: usize, vertices: impl IntoIterator<Item = usize>) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in vertices {
        s.insert(v);
    }
    s
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    multi: bool,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// A simple graph; parallel edges are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        Self::build(n, edges, false)
    }

    /// A loopless multigraph.
    pub fn new_multi(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        Self::build(n, edges, true)
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], multi: false }
    }

    fn build(n: usize, edges: Vec<(usize, usize)>, multi: bool) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !multi && !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::ParallelEdge(u, v));
            }
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        Ok(Graph { n, edges, adj, multi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbour, edge id)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn allows_parallel(&self) -> bool {
        self.multi
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        !self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n
    }

    /// Graph induced by `vertices` (renumbered in increasing order) and the
    /// original id of each kept edge. Increasing renumbering keeps orientation bits meaningful.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>, Vec<usize>) {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
                edge_map.push(e);
            }
        }
        let g = Self::build(vs.len(), edges, self.multi).expect("induced subgraph is valid");
        (g, vs, edge_map)
    }

    /// Subgraph on all vertices keeping only the listed edges (ids renumbered in order).
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        let edges = keep.iter().map(|&e| self.edges[e]).collect();
        Self::build(self.n, edges, self.multi).expect("edge subgraph is valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Self::build(self.n + other.n, edges, self.multi || other.multi).expect("union is valid")
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_len(m: usize, bits: &FixedBitSet) -> Result<()> {
    if bits.len() != m {
        return Err(Error::LengthMismatch { expected: m, got: bits.len() });
    }
    Ok(())
}

fn bits_from_u64(m: usize, mask: u64) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(m);
    for e in 0..m.min(64) {
        if (mask >> e) & 1 == 1 {
            b.insert(e);
        }
    }
    b
}

fn bits_to_u64(bits: &FixedBitSet) -> Option<u64> {
    if bits.len() > 64 {
        return None;
    }
    Some(bits.ones().fold(0u64, |acc, e| acc | (1 << e)))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Orientation {
    graph: Arc<Graph>,
    reversed: FixedBitSet,
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<_> = (0..self.graph.m()).map(|e| self.arc(e)).collect();
        write!(f, "Orientation({arcs:?})")
    }
}

impl Orientation {
    /// Every arc from its smaller endpoint to its larger one.
    pub fn canonical(graph: Arc<Graph>) -> Orientation {
        let m = graph.m();
        Orientation { graph, reversed: FixedBitSet::with_capacity(m) }
    }

    pub fn from_bits(graph: Arc<Graph>, reversed: FixedBitSet) -> Result<Orientation> {
        check_len(graph.m(), &reversed)?;
        Ok(Orientation { graph, reversed })
    }

    pub fn from_u64(graph: Arc<Graph>, mask: u64) -> Result<Orientation> {
        if graph.m() > 64 {
            return Err(Error::TooManyEdges { count: graph.m(), limit: 64 });
        }
        let reversed = bits_from_u64(graph.m(), mask);
        Ok(Orientation { graph, reversed })
    }

    /// Builds an orientation from one `(tail, head)` arc per edge, in edge order.
    pub fn from_arcs(graph: Arc<Graph>, arcs: &[(usize, usize)]) -> Result<Orientation> {
        if arcs.len() != graph.m() {
            return Err(Error::LengthMismatch { expected: graph.m(), got: arcs.len() });
        }
        let mut reversed = FixedBitSet::with_capacity(graph.m());
        for (e, &(t, h)) in arcs.iter().enumerate() {
            let (u, v) = graph.endpoints(e);
            if !((t == u && h == v) || (t == v && h == u)) {
                return Err(Error::Precondition(format!("arc {t}->{h} does not match edge {u}-{v}")));
            }
            reversed.set(e, t > h);
        }
        Ok(Orientation { graph, reversed })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.reversed
    }

    pub fn to_u64(&self) -> Option<u64> {
        bits_to_u64(&self.reversed)
    }

    pub fn is_reversed(&self, e: usize) -> bool {
        self.reversed.contains(e)
    }

    /// `(tail, head)` of edge `e`.
    pub fn arc(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.graph.endpoints(e);
        let (lo, hi) = (u.min(v), u.max(v));
        if self.reversed.contains(e) {
            (hi, lo)
        } else {
            (lo, hi)
        }
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.graph.incident(v).iter().filter(|&&(_, e)| self.arc(e).1 == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.graph.degree(v) - self.in_degree(v)
    }

    pub fn flip_edge(&mut self, e: usize) {
        self.reversed.toggle(e);
    }

    /// Reverses every arc with both endpoints in `x`.
    pub fn invert(&self, x: &VertexSet) -> Orientation {
        let mut out = self.clone();
        out.invert_in_place(x);
        out
    }

    pub fn invert_in_place(&mut self, x: &VertexSet) {
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            if x.contains(u) && x.contains(v) {
                self.reversed.toggle(e);
            }
        }
    }

    pub fn apply(&self, seq: &InversionSequence) -> Orientation {
        let mut out = self.clone();
        for x in seq.sets() {
            out.invert_in_place(x);
        }
        out
    }

    /// Labels each edge 1 where the two orientations disagree.
    pub fn disagreement(&self, other: &Orientation) -> Result<EdgeLabeling> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        let mut bits = self.reversed.clone();
        bits.symmetric_difference_with(&other.reversed);
        Ok(EdgeLabeling { graph: self.graph.clone(), bits })
    }

    /// Restriction to an induced subgraph produced by [`Graph::induced_subgraph`].
    pub fn restrict(&self, sub: Arc<Graph>, edge_map: &[usize]) -> Orientation {
        let mut reversed = FixedBitSet::with_capacity(sub.m());
        for (i, &e) in edge_map.iter().enumerate() {
            reversed.set(i, self.reversed.contains(e));
        }
        Orientation { graph: sub, reversed }
    }
}

/// A 0/1 label per edge; 1 marks an edge whose orientations disagree.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    graph: Arc<Graph>,
    bits: FixedBitSet,
}

impl fmt::Debug for EdgeLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ones: Vec<_> = self.bits.ones().map(|e| self.graph.endpoints(e)).collect();
        write!(f, "EdgeLabeling(ones={ones:?})")
    }
}

impl EdgeLabeling {
    pub fn zeros(graph: Arc<Graph>) -> EdgeLabeling {
        let m = graph.m();
        EdgeLabeling { graph, bits: FixedBitSet::with_capacity(m) }
    }

    pub fn from_bits(graph: Arc<Graph>, bits: FixedBitSet) -> Result<EdgeLabeling> {
        check_len(graph.m(), &bits)?;
        Ok(EdgeLabeling { graph, bits })
    }

    pub fn from_u64(graph: Arc<Graph>, mask: u64) -> Result<EdgeLabeling> {
        if graph.m() > 64 {
            return Err(Error::TooManyEdges { count: graph.m(), limit: 64 });
        }
        let bits = bits_from_u64(graph.m(), mask);
        Ok(EdgeLabeling { graph, bits })
    }

    pub fn from_values(graph: Arc<Graph>, values: &[bool]) -> Result<EdgeLabeling> {
        if values.len() != graph.m() {
            return Err(Error::LengthMismatch { expected: graph.m(), got: values.len() });
        }
        let bits = vertex_set(values.len(), values.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e));
        Ok(EdgeLabeling { graph, bits })
    }

    pub fn from_fn(graph: Arc<Graph>, f: impl Fn(usize, (usize, usize)) -> bool) -> EdgeLabeling {
        let m = graph.m();
        let bits = vertex_set(m, (0..m).filter(|&e| f(e, graph.endpoints(e))));
        EdgeLabeling { graph, bits }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn get(&self, e: usize) -> bool {
        self.bits.contains(e)
    }

    pub fn set(&mut self, e: usize, value: bool) {
        self.bits.set(e, value);
    }

    pub fn to_u64(&self) -> Option<u64> {
        bits_to_u64(&self.bits)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.count_ones(..) == 0
    }

    pub fn agree_edges(&self) -> Vec<usize> {
        (0..self.graph.m()).filter(|&e| !self.get(e)).collect()
    }

    pub fn disagree_edges(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn restrict(&self, sub: Arc<Graph>, edge_map: &[usize]) -> EdgeLabeling {
        let bits = vertex_set(sub.m(), (0..edge_map.len()).filter(|&i| self.get(edge_map[i])));
        EdgeLabeling { graph: sub, bits }
    }

    /// The pair (canonical orientation, canonical orientation reversed on label-1 edges).
    pub fn to_orientation_pair(&self) -> (Orientation, Orientation) {
        let o1 = Orientation::canonical(self.graph.clone());
        let o2 = Orientation { graph: self.graph.clone(), reversed: self.bits.clone() };
        (o1, o2)
    }
}

/// Ordered list of vertex subsets of a vertex set `0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct InversionSequence {
    n: usize,
    sets: Vec<VertexSet>,
}

impl InversionSequence {
    pub fn new(n: usize) -> InversionSequence {
        InversionSequence { n, sets: Vec::new() }
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<InversionSequence> {
        let mut s = InversionSequence::new(n);
        for l in lists {
            for &v in l {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            s.push(vertex_set(n, l.iter().copied()));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn push(&mut self, mut x: VertexSet) {
        x.grow(self.n);
        self.sets.push(x);
    }

    pub fn extend(&mut self, other: InversionSequence) {
        for x in other.sets {
            self.push(x);
        }
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|s| s.ones().collect()).collect()
    }

    /// Drops sets that contain no edge of `g`; the effect on any orientation is unchanged.
    pub fn compact(mut self, g: &Graph) -> InversionSequence {
        self.sets.retain(|x| g.edges().iter().any(|&(u, v)| x.contains(u) && x.contains(v)));
        self
    }

    /// Maps every set through `f` into a vertex set of size `n`.
    pub fn relabel(&self, n: usize, f: impl Fn(usize) -> usize) -> InversionSequence {
        let mut out = InversionSequence::new(n);
        for s in &self.sets {
            out.push(vertex_set(n, s.ones().map(&f)));
        }
        out
    }

    /// Index-wise union of sequences acting on vertex-disjoint parts with no edges between them.
    pub fn merge_parallel(n: usize, parts: &[InversionSequence]) -> InversionSequence {
        let len = parts.iter().map(|p| p.len()).max().unwrap_or(0);
        let mut out = InversionSequence::new(n);
        for i in 0..len {
            let mut x = FixedBitSet::with_capacity(n);
            for p in parts {
                if let Some(s) = p.sets.get(i) {
                    x.union_with(s);
                }
            }
            out.push(x);
        }
        out
    }
}

/// Assignment of a vector of F2^dim to every vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Realisation {
    dim: usize,
    vectors: Vec<F2Vector>,
    strict: bool,
}

impl Realisation {
    pub fn new(dim: usize, vectors: Vec<F2Vector>, strict: bool) -> Result<Realisation> {
        if dim > crate::f2::MAX_DIM {
            return Err(Error::DimensionOutOfRange(dim));
        }
        for v in &vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.dim() });
            }
            if strict && v.is_zero() {
                return Err(Error::Precondition("strict realisation with a zero vector".into()));
            }
        }
        Ok(Realisation { dim, vectors, strict })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[F2Vector] {
        &self.vectors
    }

    pub fn vector(&self, v: usize) -> F2Vector {
        self.vectors[v]
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// First edge whose scalar product differs from its label, if any.
    pub fn first_violation(&self, pi: &EdgeLabeling) -> Option<usize> {
        let g = pi.graph();
        if self.vectors.len() != g.n() {
            return Some(usize::MAX);
        }
        (0..g.m()).find(|&e| {
            let (u, v) = g.endpoints(e);
            self.vectors[u].dot(&self.vectors[v]) != pi.get(e)
        })
    }

    pub fn realises(&self, pi: &EdgeLabeling) -> bool {
        self.first_violation(pi).is_none() && (!self.strict || self.vectors.iter().all(|v| !v.is_zero()))
    }

    /// `X_i = {u : u_i = 1}` for `i = 0..dim`.
    pub fn to_sequence(&self) -> InversionSequence {
        let n = self.vectors.len();
        let mut seq = InversionSequence::new(n);
        for i in 0..self.dim {
            seq.push(vertex_set(n, (0..n).filter(|&u| self.vectors[u].get(i))));
        }
        seq
    }

    pub fn from_sequence(seq: &InversionSequence) -> Result<Realisation> {
        let t = seq.len();
        if t > crate::f2::MAX_DIM {
            return Err(Error::DimensionOutOfRange(t));
        }
        let vectors = (0..seq.n())
            .map(|u| {
                let bits = seq.sets().iter().enumerate().fold(0u64, |a, (i, s)| a | ((s.contains(u) as u64) << i));
                F2Vector::new(t, bits).expect("dimension checked")
            })
            .collect();
        Ok(Realisation { dim: t, vectors, strict: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Arc<Graph> {
        Arc::new(Graph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap())
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, vec![(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(Graph::new(3, vec![(0, 1), (1, 0)]), Err(Error::ParallelEdge(1, 0))));
        assert!(matches!(Graph::new(2, vec![(0, 2)]), Err(Error::VertexOutOfRange { .. })));
        assert!(Graph::new_multi(2, vec![(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn invert_flips_inner_edges_only() {
        let g = path(4);
        let o = Orientation::canonical(g.clone());
        let x = vertex_set(4, [1, 2, 3]);
        let o2 = o.invert(&x);
        assert_eq!(o2.arc(0), (0, 1));
        assert_eq!(o2.arc(1), (2, 1));
        assert_eq!(o2.arc(2), (3, 2));
        assert_eq!(o2.invert(&x), o);
    }

    #[test]
    fn sequence_realisation_roundtrip() {
        let g = path(4);
        let seq = InversionSequence::from_lists(4, &[vec![0, 1], vec![1, 2, 3], vec![]]).unwrap();
        let o1 = Orientation::canonical(g.clone());
        let o2 = o1.apply(&seq);
        let pi = o1.disagreement(&o2).unwrap();
        let r = Realisation::from_sequence(&seq).unwrap();
        assert!(r.realises(&pi));
        assert_eq!(r.to_sequence(), seq);
    }

    #[test]
    fn parallel_edges_are_independent() {
        let g = Arc::new(Graph::new_multi(2, vec![(0, 1), (1, 0)]).unwrap());
        let o = Orientation::from_arcs(g.clone(), &[(0, 1), (0, 1)]).unwrap();
        assert!(!o.is_reversed(0) && !o.is_reversed(1));
        let mut o2 = o.clone();
        o2.flip_edge(1);
        let pi = o.disagreement(&o2).unwrap();
        assert_eq!(pi.disagree_edges(), vec![1]);
    }

    #[test]
    fn induced_subgraph_keeps_relative_order() {
        let g = Graph::new(5, vec![(4, 2), (0, 1), (2, 3)]).unwrap();
        let (h, vs, em) = g.induced_subgraph(&[4, 2, 3]);
        assert_eq!(vs, vec![2, 3, 4]);
        assert_eq!(h.edges(), &[(2, 0), (0, 1)]);
        assert_eq!(em, vec![0, 2]);
    }
}
