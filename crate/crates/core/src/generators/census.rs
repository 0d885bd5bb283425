//! Isomorphism-free enumeration of small graphs and cubic multigraphs.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Canonical codes pack two bits per vertex pair.
pub const CENSUS_MAX_VERTICES: usize = 11;

fn multiplicities(g: &Graph) -> Vec<Vec<u8>> {
    let n = g.n();
    let mut m = vec![vec![0u8; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] += 1;
        m[v][u] += 1;
    }
    m
}

/// Stable colour refinement; colours are ranks of isomorphism-invariant signatures.
fn refine(mult: &[Vec<u8>]) -> Vec<usize> {
    let n = mult.len();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u8)> = (0..n).filter(|&w| mult[v][w] > 0).map(|w| (colour[w], mult[v][w])).collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<(usize, u8)>), usize> = {
            let mut keys: Vec<&(usize, Vec<(usize, u8)>)> = sigs.iter().collect();
            keys.sort();
            keys.dedup();
            keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect()
        };
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

fn code(mult: &[Vec<u8>], order: &[usize]) -> u128 {
    let n = order.len();
    let mut c = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            c = c << 2 | mult[order[i]][order[j]] as u128;
        }
    }
    c
}

fn best_code(mult: &[Vec<u8>], cells: &mut [Vec<usize>], k: usize, order: &mut Vec<usize>, best: &mut u128) {
    if k == cells.len() {
        *best = (*best).max(code(mult, order));
        return;
    }
    permute(mult, cells, k, 0, order, best);
}

fn permute(mult: &[Vec<u8>], cells: &mut [Vec<usize>], k: usize, i: usize, order: &mut Vec<usize>, best: &mut u128) {
    if i == cells[k].len() {
        best_code(mult, cells, k + 1, order, best);
        return;
    }
    for j in i..cells[k].len() {
        cells[k].swap(i, j);
        order.push(cells[k][i]);
        permute(mult, cells, k, i + 1, order, best);
        order.pop();
        cells[k].swap(i, j);
    }
}

/// Largest adjacency code over the vertex orders compatible with colour refinement; equal
/// exactly for isomorphic graphs. Multiplicities up to 3.
pub fn canonical_code(g: &Graph) -> Result<u128> {
    let n = g.n();
    if n > CENSUS_MAX_VERTICES {
        return Err(Error::TooManyVertices { count: n, limit: CENSUS_MAX_VERTICES });
    }
    let mult = multiplicities(g);
    if mult.iter().flatten().any(|&x| x > 3) {
        return Err(Error::Precondition("canonical codes support multiplicity at most 3".into()));
    }
    let colour = refine(&mult);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); colour.iter().max().map_or(0, |&c| c + 1)];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    let mut best = 0;
    best_code(&mult, &mut cells, 0, &mut Vec::with_capacity(n), &mut best);
    Ok(best | (n as u128) << 120)
}

/// All simple graphs on `n` vertices up to isomorphism, by adding one vertex at a time.
pub fn simple_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 9 {
        return Err(Error::TooManyVertices { count: n, limit: 9 });
    }
    let mut level = vec![Graph::empty(0)];
    for k in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nb in 0u32..1 << k {
                let mut edges = g.edges().to_vec();
                edges.extend((0..k).filter(|&v| nb >> v & 1 == 1).map(|v| (v, k)));
                let h = Graph::new(k + 1, edges)?;
                if seen.insert(canonical_code(&h)?) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// All loopless cubic multigraphs on `n` vertices up to isomorphism.
pub fn cubic_multigraphs(n: usize) -> Result<Vec<Graph>> {
    if n > 8 {
        return Err(Error::TooManyVertices { count: n, limit: 8 });
    }
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    fn extend(n: usize, deg: &mut [usize], edges: &mut Vec<(usize, usize)>, seen: &mut HashSet<u128>, out: &mut Vec<Graph>) -> Result<()> {
        let Some(u) = (0..n).find(|&v| deg[v] < 3) else {
            let g = Graph::new_multi(n, edges.clone())?;
            if seen.insert(canonical_code(&g)?) {
                out.push(g);
            }
            return Ok(());
        };
        // u is the smallest unsaturated vertex; partners are non-decreasing to avoid repeats
        let low = edges.last().filter(|&&(a, _)| a == u).map_or(u + 1, |&(_, b)| b);
        for v in low..n {
            if v != u && deg[v] < 3 {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
                extend(n, deg, edges, seen, out)?;
                edges.pop();
                deg[u] -= 1;
                deg[v] -= 1;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    extend(n, &mut vec![0; n], &mut Vec::new(), &mut HashSet::new(), &mut out)?;
    Ok(out)
}
