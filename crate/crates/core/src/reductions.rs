//! Hardness machinery: balanced orientations, the once-subdivided instance tying distance
//! to chromatic number, and oriented colourings read off inversion sequences.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::certificates::max_clique;
use crate::constructive::is_oriented_coloring;
use crate::error::{precondition, Error, Result};
use crate::f2::{solve_affine, F2Vector};
use crate::generators::subdivide_once;
use crate::graph::{EdgeLabeling, Graph, InversionSequence, Orientation, Realisation};
use crate::io;

/// Orientation in which every vertex has in- and out-degree at least `⌊d/2⌋`: Euler tours of
/// the graph with odd vertices joined to a virtual vertex.
pub fn min_indegree_orientation(g: &Arc<Graph>) -> Orientation {
    let n = g.n();
    let virt = n;
    let mut ends: Vec<(usize, usize)> = g.edges().to_vec();
    for v in 0..n {
        if g.degree(v) % 2 == 1 {
            ends.push((v, virt));
        }
    }
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (e, &(a, b)) in ends.iter().enumerate() {
        inc[a].push(e);
        inc[b].push(e);
    }
    let mut used = vec![false; ends.len()];
    let mut head = vec![usize::MAX; ends.len()];
    let mut ptr = vec![0; n + 1];
    for start in 0..=n {
        // Hierholzer; each traversed edge is oriented in the walking direction
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            while ptr[v] < inc[v].len() && used[inc[v][ptr[v]]] {
                ptr[v] += 1;
            }
            if ptr[v] == inc[v].len() {
                stack.pop();
                continue;
            }
            let e = inc[v][ptr[v]];
            used[e] = true;
            let (a, b) = ends[e];
            let w = if a == v { b } else { a };
            head[e] = w;
            stack.push(w);
        }
    }
    let mut o = Orientation::canonical(g.clone());
    for e in 0..g.m() {
        if o.arc(e).1 != head[e] {
            o.flip_edge(e);
        }
    }
    o
}

/// The once-subdivided instance: distance of `o1`, `o2` at most `k` iff the diameter of the
/// subdivision is at most `k` iff `χ(base) ≤ 2^k - 1`.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub base: Arc<Graph>,
    pub k: usize,
    /// Vertex `n + e` subdivides base edge `e`; edges `2e`, `2e+1` are its two halves.
    pub subdivided: Arc<Graph>,
    pub base_orientation: Orientation,
    pub o1: Orientation,
    pub o2: Orientation,
    pub pi0: EdgeLabeling,
}

pub fn subdivision_instance(base: &Arc<Graph>, k: usize) -> Result<ReductionInstance> {
    if k < 2 {
        return precondition("the reduction needs k >= 2");
    }
    if base.n() == 0 || base.min_degree() < 2 {
        return precondition("the reduction needs minimum degree at least 2");
    }
    let orient = min_indegree_orientation(base);
    let sub = Arc::new(subdivide_once(base));
    let n = base.n();
    let pi0 = EdgeLabeling::from_fn(sub.clone(), |e, _| {
        let base_edge = e / 2;
        let (_, head) = orient.arc(base_edge);
        let (u, v) = base.endpoints(base_edge);
        // half 2e touches u, half 2e+1 touches v; the half at the head is 1
        let near = if e % 2 == 0 { u } else { v };
        debug_assert!(sub.endpoints(e) == (near, n + base_edge) || sub.endpoints(e) == (n + base_edge, near));
        near == head
    });
    let o1 = Orientation::canonical(sub.clone());
    let mut o2 = o1.clone();
    for e in pi0.disagree_edges() {
        o2.flip_edge(e);
    }
    Ok(ReductionInstance { base: base.clone(), k, subdivided: sub, base_orientation: orient, o1, o2, pi0 })
}

fn base_hash(g: &Graph) -> String {
    let digest = Sha256::digest(io::write_edge_list(g).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl ReductionInstance {
    /// Writes `graph.el`, `O1.or`, `O2.or`, `pi0.lb` and `meta` into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("graph.el"), io::write_edge_list(&self.subdivided))?;
        fs::write(dir.join("O1.or"), io::write_orientation(&self.o1))?;
        fs::write(dir.join("O2.or"), io::write_orientation(&self.o2))?;
        fs::write(dir.join("pi0.lb"), io::write_labeling(&self.pi0))?;
        let meta = format!(
            "k {}\nbase_vertices {}\nbase_edges {}\nbase_hash {}\n",
            self.k,
            self.base.n(),
            self.base.m(),
            base_hash(&self.base)
        );
        fs::write(dir.join("meta"), meta)?;
        Ok(())
    }

    pub fn read_dir(dir: &Path) -> Result<ReductionInstance> {
        let meta = fs::read_to_string(dir.join("meta"))?;
        let field = |name: &str| -> Result<String> {
            meta.lines()
                .find_map(|l| l.strip_prefix(name).map(|r| r.trim().to_string()))
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("meta lacks {name}") })
        };
        let num = |name: &str| -> Result<usize> {
            field(name)?.parse().map_err(|_| Error::Parse { line: 0, msg: format!("bad {name} in meta") })
        };
        let (k, bn, bm) = (num("k")?, num("base_vertices")?, num("base_edges")?);
        let sub = Arc::new(io::read_graph(&dir.join("graph.el"))?);
        if sub.n() != bn + bm || sub.m() != 2 * bm {
            return Err(Error::Parse { line: 0, msg: "graph.el is not the subdivision described by meta".into() });
        }
        let mut base_edges = Vec::with_capacity(bm);
        for e in 0..bm {
            let (a, x) = sub.endpoints(2 * e);
            let (y, b) = sub.endpoints(2 * e + 1);
            let (u, xu) = if x == bn + e { (a, x) } else { (x, a) };
            let (v, xv) = if y == bn + e { (b, y) } else { (y, b) };
            if xu != bn + e || xv != bn + e {
                return Err(Error::Parse { line: 0, msg: format!("edges {} and {} do not subdivide base edge {e}", 2 * e, 2 * e + 1) });
            }
            base_edges.push((u, v));
        }
        let base = Arc::new(Graph::new(bn, base_edges)?);
        if field("base_hash")? != base_hash(&base) {
            return Err(Error::Parse { line: 0, msg: "base graph hash mismatch".into() });
        }
        let inst = subdivision_instance(&base, k)?;
        let o1 = io::read_orientation(sub.clone(), &dir.join("O1.or"))?;
        let o2 = io::read_orientation(sub.clone(), &dir.join("O2.or"))?;
        let pi0 = io::read_labeling(sub.clone(), &dir.join("pi0.lb"))?;
        if o1.disagreement(&o2)? != pi0 {
            return Err(Error::Parse { line: 0, msg: "O1 and O2 do not differ exactly on pi0".into() });
        }
        Ok(ReductionInstance { subdivided: sub, o1, o2, pi0, ..inst })
    }
}

pub const CHROMATIC_MAX_VERTICES: usize = 40;

fn colourable(g: &Graph, k: usize, colour: &mut [usize], order: &[usize], i: usize) -> bool {
    let Some(&v) = order.get(i) else { return true };
    // a new colour only as the next unused one
    let used = colour.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).all(|w| colour[w] != c) {
            colour[v] = c;
            if colourable(g, k, colour, order, i + 1) {
                return true;
            }
            colour[v] = usize::MAX;
        }
    }
    false
}

/// Exact chromatic number and an optimal colouring.
pub fn chromatic_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > CHROMATIC_MAX_VERTICES {
        return Err(Error::TooManyVertices { count: n, limit: CHROMATIC_MAX_VERTICES });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let clique = max_clique(g);
    // clique first, then by decreasing degree
    let mut order = clique.clone();
    let mut rest: Vec<usize> = (0..n).filter(|v| !clique.contains(v)).collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order.extend(rest);
    for k in clique.len().max(1)..=n {
        let mut colour = vec![usize::MAX; n];
        if colourable(g, k, &mut colour, &order, 0) {
            return Ok((k, colour));
        }
    }
    unreachable!("n colours always suffice")
}

/// Nonzero vectors for colour classes: class `c` becomes the binary expansion of `c + 1`.
pub fn colouring_vectors(colouring: &[usize], k: usize) -> Result<Vec<F2Vector>> {
    colouring
        .iter()
        .map(|&c| {
            if k < 64 && c + 1 >= 1 << k {
                precondition(format!("colour {c} does not fit in F2^{k} without zero"))
            } else {
                F2Vector::new(k, c as u64 + 1)
            }
        })
        .collect()
}

/// Realisation of any labeling `pi` of the subdivision from a proper colouring of the base
/// by distinct nonzero vectors.
pub fn coloring_to_subdivision_realisation(inst: &ReductionInstance, phi: &[F2Vector], pi: &EdgeLabeling) -> Result<Realisation> {
    let base = &inst.base;
    let n = base.n();
    if phi.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: phi.len() });
    }
    if !crate::graph::same_graph(pi.graph(), &inst.subdivided) {
        return Err(Error::GraphMismatch);
    }
    let k = inst.k;
    for (v, x) in phi.iter().enumerate() {
        if x.dim() != k || x.is_zero() {
            return precondition(format!("vertex {v} needs a nonzero vector of dimension {k}"));
        }
    }
    for &(u, v) in base.edges() {
        if phi[u] == phi[v] {
            return precondition(format!("adjacent vertices {u} and {v} share a colour"));
        }
    }
    let mut vectors = phi.to_vec();
    for e in 0..base.m() {
        let (u, v) = base.endpoints(e);
        let space = solve_affine(&[phi[u], phi[v]], &[pi.get(2 * e), pi.get(2 * e + 1)], k)?;
        let x = space.iter().next().ok_or_else(|| Error::Invariant("distinct nonzero vectors must separate".into()))?;
        vectors.push(x);
    }
    let r = Realisation::new(k, vectors, false)?;
    if !r.realises(pi) {
        return Err(Error::Invariant("subdivision realisation fails verification".into()));
    }
    Ok(r)
}

/// Orientation with every arc from the smaller to the larger colour.
pub fn layered_orientation(g: &Arc<Graph>, phi: &[usize]) -> Result<Orientation> {
    if phi.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: phi.len() });
    }
    let mut arcs = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        match phi[u].cmp(&phi[v]) {
            std::cmp::Ordering::Less => arcs.push((u, v)),
            std::cmp::Ordering::Greater => arcs.push((v, u)),
            std::cmp::Ordering::Equal => return precondition(format!("edge {u}-{v} joins equal colours")),
        }
    }
    Orientation::from_arcs(g.clone(), &arcs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedColouring {
    /// `(φ(v), membership mask over the inversion sets)` per vertex.
    pub pairs: Vec<(usize, u64)>,
    /// The same classes renumbered densely by first appearance.
    pub classes: Vec<usize>,
}

impl OrientedColouring {
    pub fn class_count(&self) -> usize {
        self.classes.iter().map(|&c| c + 1).max().unwrap_or(0)
    }
}

/// Oriented colouring of the target of `seq` from a layered start: pair each vertex's colour
/// with the set of inversions containing it.
pub fn oriented_colouring_from_sequence(o0: &Orientation, phi: &[usize], seq: &InversionSequence) -> Result<OrientedColouring> {
    let g = o0.graph();
    if phi.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: phi.len() });
    }
    if seq.len() > 64 {
        return precondition("at most 64 inversions are supported");
    }
    for e in 0..g.m() {
        let (a, b) = o0.arc(e);
        if phi[a] >= phi[b] {
            return precondition(format!("arc {a}->{b} does not go up in colour"));
        }
    }
    let pairs: Vec<(usize, u64)> = (0..g.n())
        .map(|v| {
            let mask = seq.sets().iter().enumerate().filter(|(_, x)| x.contains(v)).fold(0u64, |m, (i, _)| m | 1 << i);
            (phi[v], mask)
        })
        .collect();
    let mut ids = std::collections::HashMap::new();
    let classes: Vec<usize> = pairs
        .iter()
        .map(|p| {
            let next = ids.len();
            *ids.entry(*p).or_insert(next)
        })
        .collect();
    let target = o0.apply(seq);
    if !is_oriented_coloring(&target, &classes) {
        return Err(Error::Invariant("extracted colouring is not an oriented colouring of the target".into()));
    }
    Ok(OrientedColouring { pairs, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, random};
    use crate::solver::{distance_at_most, SolveOptions};

    #[test]
    fn balanced_orientations() {
        let mut r = random::rng(50);
        for i in 0..500 {
            let g = Arc::new(random::gnp(2 + i % 49, 0.2, &mut r));
            let o = min_indegree_orientation(&g);
            for v in 0..g.n() {
                assert!(o.in_degree(v) >= g.degree(v) / 2 && o.out_degree(v) >= g.degree(v) / 2);
            }
        }
        let c3 = Arc::new(generators::cycle(3));
        let o = min_indegree_orientation(&c3);
        assert!((0..3).all(|v| o.in_degree(v) == 1));
    }

    #[test]
    fn instance_invariants() {
        let base = Arc::new(generators::complete(4));
        let inst = subdivision_instance(&base, 2).unwrap();
        let n = base.n();
        for e in 0..base.m() {
            assert_eq!(inst.pi0.get(2 * e) as u8 + inst.pi0.get(2 * e + 1) as u8, 1);
        }
        for v in 0..n {
            assert!(inst.subdivided.incident(v).iter().any(|&(_, e)| inst.pi0.get(e)));
        }
        assert!(subdivision_instance(&Arc::new(generators::path(3)), 2).is_err());
        assert!(subdivision_instance(&base, 1).is_err());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&generators::complete(4)).unwrap().0, 4);
        assert_eq!(chromatic_number(&generators::cycle(5)).unwrap().0, 3);
        assert_eq!(chromatic_number(&generators::cycle(6)).unwrap().0, 2);
        let petersen = Graph::new(
            10,
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        let (chi, col) = chromatic_number(&petersen).unwrap();
        assert_eq!(chi, 3);
        assert!(petersen.edges().iter().all(|&(u, v)| col[u] != col[v]));
    }

    #[test]
    fn chromatic_equivalence_on_small_bases() {
        let opts = SolveOptions::default();
        for (base, k) in [(generators::cycle(5), 2), (generators::complete(4), 2), (generators::cycle(3), 2)] {
            let base = Arc::new(base);
            let inst = subdivision_instance(&base, k).unwrap();
            let (chi, col) = chromatic_number(&base).unwrap();
            let close = distance_at_most(&inst.o1, &inst.o2, k, &opts).unwrap().is_some();
            assert_eq!(close, chi < (1 << k), "chi = {chi}");
            if chi < (1 << k) {
                let phi = colouring_vectors(&col, k).unwrap();
                let mut r = random::rng(chi as u64);
                for _ in 0..20 {
                    let pi = random::labeling(inst.subdivided.clone(), &mut r);
                    coloring_to_subdivision_realisation(&inst, &phi, &pi).unwrap();
                }
            }
        }
    }

    #[test]
    fn instance_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let inst = subdivision_instance(&Arc::new(generators::cycle(5)), 2).unwrap();
        inst.write_dir(dir.path()).unwrap();
        let back = ReductionInstance::read_dir(dir.path()).unwrap();
        assert_eq!(back.pi0.disagree_edges(), inst.pi0.disagree_edges());
        assert_eq!(back.k, 2);
    }

    #[test]
    fn oriented_colourings_from_sequences() {
        let g = Arc::new(generators::cycle(5));
        let phi = vec![0, 1, 0, 1, 2];
        let o0 = layered_orientation(&g, &phi).unwrap();
        let trivial = oriented_colouring_from_sequence(&o0, &phi, &InversionSequence::new(5)).unwrap();
        assert_eq!(trivial.class_count(), 3);
        let mut r = random::rng(77);
        for _ in 0..20 {
            let target = random::orientation(g.clone(), &mut r);
            let d = crate::solver::inversion_distance(&o0, &target, &SolveOptions::default()).unwrap();
            let oc = oriented_colouring_from_sequence(&o0, &phi, &d.sequence).unwrap();
            assert!(oc.class_count() <= 3 << d.value);
        }
    }
}
