//! Strict realisations in F2^3 for graphs of maximum average degree at most 30/11.

use std::time::Duration;

use num_rational::Rational64;

use crate::certificates::mad_exact;
use crate::error::{precondition, Error, Result};
use crate::f2::F2Vector;
use crate::graph::{EdgeLabeling, Graph, Realisation};
use crate::solver::{realisation_search_pinned, SearchOutcome, SolveOptions};

pub const SPARSE3_MAD: Rational64 = Rational64::new_raw(30, 11);

const FALLBACK_BUDGET: Duration = Duration::from_secs(10);

#[derive(Clone, Debug)]
enum Reduction {
    Isolated(usize),
    Leaf(usize),
    /// A 2-vertex whose two edges carry the same label.
    EqualTwo(usize),
    /// Adjacent 2-vertices `v1 v2`; `u2` is the far neighbour of `v2`.
    Thread { v1: usize, v2: usize, u2: usize },
    /// A 3-vertex with 2-neighbours `u1`, `u2` whose far ends are `t`.
    ThreeTwo { v: usize, us: [usize; 2], t: [usize; 2] },
    /// Deficient `y` between deficient `x`, `z`, with all their 2-neighbours.
    Deficient([usize; 6]),
    /// A vertex of degree at most 6 all of whose neighbours are 2-vertices.
    Spider { v: usize, us: Vec<usize>, t: Vec<usize> },
}

impl Reduction {
    fn removed(&self) -> Vec<usize> {
        match self {
            Reduction::Isolated(v) | Reduction::Leaf(v) | Reduction::EqualTwo(v) => vec![*v],
            Reduction::Thread { v1, v2, .. } => vec![*v1, *v2],
            Reduction::ThreeTwo { v, us, .. } => vec![*v, us[0], us[1]],
            Reduction::Deficient(s) => s.to_vec(),
            Reduction::Spider { v, us, .. } => {
                let mut r = vec![*v];
                r.extend(us);
                r
            }
        }
    }
}

struct State<'a> {
    g: &'a Graph,
    pi: &'a EdgeLabeling,
    alive: Vec<bool>,
    deg: Vec<usize>,
}

impl State<'_> {
    fn live_neighbours(&self, v: usize) -> Vec<usize> {
        self.g.neighbors(v).filter(|&w| self.alive[w]).collect()
    }

    fn label(&self, u: usize, v: usize) -> bool {
        self.pi.get(self.g.edge_between(u, v).expect("edge"))
    }

    fn far_end(&self, u: usize, from: usize) -> usize {
        self.live_neighbours(u).into_iter().find(|&w| w != from).expect("2-vertex")
    }

    fn deficient(&self, v: usize) -> Option<usize> {
        if self.deg[v] != 3 {
            return None;
        }
        let two: Vec<usize> = self.live_neighbours(v).into_iter().filter(|&w| self.deg[w] == 2).collect();
        (two.len() == 1).then(|| two[0])
    }

    fn remove(&mut self, vs: &[usize]) {
        for &v in vs {
            self.alive[v] = false;
        }
        for &v in vs {
            for w in self.g.neighbors(v) {
                if self.alive[w] {
                    self.deg[w] -= 1;
                }
            }
        }
    }

    fn find(&self) -> Option<Reduction> {
        let live: Vec<usize> = (0..self.g.n()).filter(|&v| self.alive[v]).collect();
        if let Some(&v) = live.iter().find(|&&v| self.deg[v] == 0) {
            return Some(Reduction::Isolated(v));
        }
        if let Some(&v) = live.iter().find(|&&v| self.deg[v] == 1) {
            return Some(Reduction::Leaf(v));
        }
        for &v in &live {
            if self.deg[v] == 2 {
                let nb = self.live_neighbours(v);
                if self.label(v, nb[0]) == self.label(v, nb[1]) {
                    return Some(Reduction::EqualTwo(v));
                }
            }
        }
        for &v in &live {
            if self.deg[v] != 2 {
                continue;
            }
            if let Some(w) = self.live_neighbours(v).into_iter().find(|&w| self.deg[w] == 2) {
                return Some(Reduction::Thread { v1: v, v2: w, u2: self.far_end(w, v) });
            }
        }
        for &v in &live {
            if self.deg[v] != 3 {
                continue;
            }
            let two: Vec<usize> = self.live_neighbours(v).into_iter().filter(|&w| self.deg[w] == 2).collect();
            if two.len() >= 2 {
                let us = [two[0], two[1]];
                return Some(Reduction::ThreeTwo { v, us, t: [self.far_end(us[0], v), self.far_end(us[1], v)] });
            }
        }
        for &y in &live {
            let Some(y2) = self.deficient(y) else { continue };
            let others: Vec<usize> = self.live_neighbours(y).into_iter().filter(|&w| w != y2).collect();
            let (x, z) = (others[0], others[1]);
            if let (Some(x2), Some(z2)) = (self.deficient(x), self.deficient(z)) {
                if x2 != y2 && x2 != z2 && y2 != z2 && !self.g.adjacent(x, z) {
                    return Some(Reduction::Deficient([x, z, y, x2, y2, z2]));
                }
            }
        }
        for &v in &live {
            let nb = self.live_neighbours(v);
            if (2..=6).contains(&nb.len()) && nb.iter().all(|&w| self.deg[w] == 2) {
                let t = nb.iter().map(|&u| self.far_end(u, v)).collect();
                return Some(Reduction::Spider { v, us: nb, t });
            }
        }
        None
    }
}

fn dot(a: u64, b: u64) -> bool {
    (a & b).count_ones() % 2 == 1
}

struct Assign<'a> {
    g: &'a Graph,
    pi: &'a EdgeLabeling,
    value: Vec<u64>,
}

impl Assign<'_> {
    /// Nonzero vectors of F2^3 consistent with the already assigned neighbours of `v`.
    fn candidates(&self, v: usize) -> Vec<u64> {
        (1..8u64)
            .filter(|&x| self.g.incident(v).iter().all(|&(w, e)| self.value[w] == 0 || dot(x, self.value[w]) == self.pi.get(e)))
            .collect()
    }

    fn place(&mut self, v: usize, avoid: &[u64]) -> Result<()> {
        let Some(x) = self.candidates(v).into_iter().find(|x| !avoid.contains(x)) else {
            return Err(Error::Invariant(format!("no strict extension at vertex {v}")));
        };
        self.value[v] = x;
        Ok(())
    }

    fn search(&mut self, order: &[usize]) -> bool {
        let Some((&v, rest)) = order.split_first() else { return true };
        for x in self.candidates(v) {
            self.value[v] = x;
            if self.search(rest) {
                return true;
            }
        }
        self.value[v] = 0;
        false
    }

    fn undo(&mut self, r: &Reduction) -> Result<()> {
        match r {
            Reduction::Isolated(v) | Reduction::Leaf(v) | Reduction::EqualTwo(v) => self.place(*v, &[]),
            Reduction::Thread { v1, v2, u2 } => {
                self.place(*v1, &[self.value[*u2]])?;
                self.place(*v2, &[])
            }
            Reduction::ThreeTwo { v, us, t } => {
                self.place(*v, &[self.value[t[0]], self.value[t[1]]])?;
                self.place(us[0], &[])?;
                self.place(us[1], &[])
            }
            Reduction::Deficient(s) => {
                if self.search(s) {
                    Ok(())
                } else {
                    Err(Error::Invariant("deficient triple admits no strict extension".into()))
                }
            }
            Reduction::Spider { v, us, t } => {
                let avoid: Vec<u64> = t.iter().map(|&w| self.value[w]).collect();
                self.place(*v, &avoid)?;
                for &u in us {
                    self.place(u, &[])?;
                }
                Ok(())
            }
        }
    }
}

fn describe(g: &Graph, pi: &EdgeLabeling, alive: &[bool]) -> String {
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(_, &(u, v))| alive[u] && alive[v])
        .map(|(e, &(u, v))| format!("{u}-{v}:{}", pi.get(e) as u8))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Strict realisation in F2^3 by peeling reducible configurations and extending back.
pub fn sparse3_realisation(pi: &EdgeLabeling) -> Result<Realisation> {
    let g = pi.graph();
    if g.has_parallel_edges() {
        return precondition("sparse realisation needs a simple graph");
    }
    let mad = mad_exact(g);
    if mad > SPARSE3_MAD {
        return precondition(format!("maximum average degree {mad} exceeds 30/11"));
    }
    let n = g.n();
    let mut st = State { g, pi, alive: vec![true; n], deg: (0..n).map(|v| g.degree(v)).collect() };
    let mut stack = Vec::new();
    while let Some(r) = st.find() {
        st.remove(&r.removed());
        stack.push(r);
    }
    let mut asg = Assign { g, pi, value: vec![0; n] };
    if st.alive.iter().any(|&a| a) {
        // only reachable when the density is exactly 30/11; settle the core exactly
        let core: Vec<usize> = (0..n).filter(|&v| st.alive[v]).collect();
        let (h, vs, em) = g.induced_subgraph(&core);
        let h = std::sync::Arc::new(h);
        let sub = pi.restrict(h.clone(), &em);
        let opts = SolveOptions { time_budget: Some(FALLBACK_BUDGET), ..SolveOptions::strict() };
        match realisation_search_pinned(&sub, 3, &[], &opts)? {
            SearchOutcome::Found(r) => {
                for (i, &v) in vs.iter().enumerate() {
                    asg.value[v] = r.vector(i).bits();
                }
            }
            _ => {
                return Err(Error::DischargingContradiction { n: h.n(), m: h.m(), instance: describe(g, pi, &st.alive) });
            }
        }
    }
    while let Some(r) = stack.pop() {
        asg.undo(&r)?;
    }
    let vectors = asg.value.iter().map(|&x| F2Vector::new(3, x)).collect::<Result<Vec<_>>>()?;
    let r = Realisation::new(3, vectors, true)?;
    if !r.realises(pi) || r.vectors().iter().any(|v| v.is_zero()) {
        return Err(Error::Invariant("sparse realisation fails verification".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, random};
    use std::sync::Arc;

    #[test]
    fn trees_and_cycles() {
        let mut r = random::rng(12);
        for _ in 0..200 {
            let g = Arc::new(random::tree(25, &mut r));
            let pi = random::labeling(g.clone(), &mut r);
            assert!(sparse3_realisation(&pi).unwrap().is_strict());
        }
        for n in 3..12 {
            let g = Arc::new(generators::cycle(n));
            for mask in 0..(1u64 << n) {
                let pi = EdgeLabeling::from_u64(g.clone(), mask).unwrap();
                sparse3_realisation(&pi).unwrap();
            }
        }
    }

    #[test]
    fn pendant_cycle_all_labelings() {
        let g = Arc::new(generators::pendant_cycle(8));
        let mut r = random::rng(1);
        for _ in 0..500 {
            let pi = random::labeling(g.clone(), &mut r);
            sparse3_realisation(&pi).unwrap();
        }
    }

    #[test]
    fn subdivided_cubic_graphs() {
        let mut r = random::rng(40);
        for _ in 0..60 {
            let base = random::cubic(10, &mut r);
            let g = Arc::new(random::subdivided(&base, 3));
            let pi = random::labeling(g.clone(), &mut r);
            let real = sparse3_realisation(&pi).unwrap();
            assert!(real.vectors().iter().all(|v| !v.is_zero()));
        }
    }

    #[test]
    fn dense_graph_rejected() {
        let pi = EdgeLabeling::zeros(Arc::new(generators::complete(4)));
        assert!(matches!(sparse3_realisation(&pi), Err(Error::Precondition(_))));
    }
}
