//! Breadth-first search on the inversion graph, independent of the F2 characterisation.
//!
//! Inverting `X` XORs the orientation mask with the set of edges inside `X`, so
//! the inversion graph is a Cayley graph of `(F2^m, +)`: distances from any
//! orientation are translates of distances from the canonical one.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};

pub const ORACLE_MAX_EDGES: usize = 24;
pub const ORACLE_MAX_VERTICES: usize = 16;

/// Edge masks produced by inverting each vertex subset (deduplicated, nonzero).
pub fn inversion_moves(g: &Graph) -> Vec<u64> {
    let mut moves: Vec<u64> = (0..1u64 << g.n())
        .map(|x| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| (x >> u) & 1 == 1 && (x >> v) & 1 == 1)
                .fold(0u64, |acc, (e, _)| acc | (1 << e))
        })
        .filter(|&m| m != 0)
        .collect();
    moves.sort_unstable();
    moves.dedup();
    moves
}

/// All-pairs distances of the inversion graph, stored as distances from the canonical orientation.
pub struct InversionMetric {
    graph: Arc<Graph>,
    dist: Vec<u8>,
}

impl InversionMetric {
    pub fn new(g: Arc<Graph>) -> Result<InversionMetric> {
        if g.m() > ORACLE_MAX_EDGES {
            return Err(Error::TooManyEdges { count: g.m(), limit: ORACLE_MAX_EDGES });
        }
        if g.n() > ORACLE_MAX_VERTICES {
            return Err(Error::TooManyVertices { count: g.n(), limit: ORACLE_MAX_VERTICES });
        }
        let moves = inversion_moves(&g);
        let states = 1usize << g.m();
        let mut dist = vec![u8::MAX; states];
        let mut queue = VecDeque::new();
        dist[0] = 0;
        queue.push_back(0u64);
        while let Some(s) = queue.pop_front() {
            let d = dist[s as usize];
            for &mv in &moves {
                let t = (s ^ mv) as usize;
                if dist[t] == u8::MAX {
                    dist[t] = d + 1;
                    queue.push_back(t as u64);
                }
            }
        }
        if dist.iter().any(|&d| d == u8::MAX) {
            return Err(Error::Invariant("inversion graph is disconnected".into()));
        }
        Ok(InversionMetric { graph: g, dist })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// Distance between orientations given as reversal masks.
    pub fn distance_masks(&self, a: u64, b: u64) -> usize {
        self.dist[(a ^ b) as usize] as usize
    }

    pub fn distance(&self, o1: &Orientation, o2: &Orientation) -> Result<usize> {
        let pi = o1.disagreement(o2)?;
        Ok(self.dist[pi.to_u64().expect("guarded edge count") as usize] as usize)
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }
}

/// Inversion diameter by breadth-first search.
pub fn bfs_diameter(g: &Arc<Graph>) -> Result<usize> {
    Ok(InversionMetric::new(g.clone())?.diameter())
}
