//! Exact inversion distance and inversion diameter.
//!
//! The distance between two orientations is the least `t` for which the
//! disagreement labeling `pi` has a realisation in F2^t; the diameter is the
//! maximum of that quantity over all labelings.

mod engine;
pub mod oracle;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::f2::F2Vector;
use crate::graph::{EdgeLabeling, Graph, InversionSequence, Orientation, Realisation};
use engine::{Engine, Found};

pub use oracle::{bfs_diameter, InversionMetric};

/// Default cap on the number of edges for labeling enumeration.
pub const DEFAULT_MAX_EDGES: usize = 25;
/// Hard cap: labelings are enumerated as `u64` masks.
pub const HARD_MAX_EDGES: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VertexOrder {
    /// Next vertex has the most already-placed neighbours (then highest degree, then lowest id).
    #[default]
    MaxAssignedNeighbours,
    Identity,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Require every vector to be nonzero.
    pub strict: bool,
    pub vertex_order: VertexOrder,
    pub time_budget: Option<Duration>,
    /// Number of contiguous labeling ranges searched in parallel (0 or 1 = serial).
    pub parallel_pi_chunks: usize,
    pub max_edges: usize,
    /// Lift the `max_edges` guard (up to [`HARD_MAX_EDGES`]).
    pub force: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            strict: false,
            vertex_order: VertexOrder::default(),
            time_budget: None,
            parallel_pi_chunks: 0,
            max_edges: DEFAULT_MAX_EDGES,
            force: false,
        }
    }
}

impl SolveOptions {
    pub fn strict() -> Self {
        SolveOptions { strict: true, ..Self::default() }
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_budget.map(|d| Instant::now() + d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Realisation),
    Infeasible,
    /// The time budget ran out first.
    Unknown,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, SearchOutcome::Infeasible)
    }
}

fn to_realisation(t: usize, strict: bool, values: Vec<u64>) -> Realisation {
    let vectors = values.into_iter().map(|x| F2Vector::new(t, x).expect("dimension")).collect();
    Realisation::new(t, vectors, strict).expect("valid realisation")
}

fn label_vec(pi: &EdgeLabeling) -> Vec<bool> {
    (0..pi.graph().m()).map(|e| pi.get(e)).collect()
}

fn outcome(found: Found, t: usize, strict: bool) -> SearchOutcome {
    match found {
        Found::Yes(v) => SearchOutcome::Found(to_realisation(t, strict, v)),
        Found::No => SearchOutcome::Infeasible,
        Found::Timeout => SearchOutcome::Unknown,
    }
}

/// Decides whether `pi` has a realisation in F2^t.
pub fn realisation_search(pi: &EdgeLabeling, t: usize, opts: &SolveOptions) -> Result<SearchOutcome> {
    realisation_search_pinned(pi, t, &[], opts)
}

/// Like [`realisation_search`] with some vertices pinned to given vectors.
pub fn realisation_search_pinned(pi: &EdgeLabeling, t: usize, pinned: &[(usize, F2Vector)], opts: &SolveOptions) -> Result<SearchOutcome> {
    if t > crate::f2::MAX_DIM {
        return Err(Error::DimensionOutOfRange(t));
    }
    let g = pi.graph();
    let mut fixed = vec![None; g.n()];
    for &(v, x) in pinned {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if x.dim() != t {
            return Err(Error::DimensionMismatch { expected: t, got: x.dim() });
        }
        if opts.strict && x.is_zero() {
            return Ok(SearchOutcome::Infeasible);
        }
        fixed[v] = Some(x.bits());
    }
    let eng = Engine::new(g, opts.vertex_order);
    let res = eng.solve(&label_vec(pi), t, opts.strict, &fixed, opts.deadline());
    let out = outcome(res, t, opts.strict);
    if let SearchOutcome::Found(r) = &out {
        if !r.realises(pi) || pinned.iter().any(|&(v, x)| r.vector(v) != x) {
            return Err(Error::Invariant("search returned a vector family that does not realise the labeling".into()));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDimension {
    pub value: usize,
    pub witness: Realisation,
}

fn dimension_cap(g: &Graph, strict: bool) -> usize {
    // Non-strict: n - 1 sets always suffice (peel all but one vertex). Strict needs one more.
    let base = g.n().saturating_sub(1);
    (if strict { base + 1 } else { base }).min(crate::f2::MAX_DIM)
}

fn min_dimension_with(eng: &Engine, g: &Graph, labels: &[bool], from: usize, opts: &SolveOptions, deadline: Option<Instant>) -> Result<(usize, Vec<u64>)> {
    let cap = dimension_cap(g, opts.strict).max(from);
    let fixed = vec![None; g.n()];
    for t in from..=cap {
        match eng.solve(labels, t, opts.strict, &fixed, deadline) {
            Found::Yes(v) => return Ok((t, v)),
            Found::No => {}
            Found::Timeout => return Err(Error::BudgetExhausted),
        }
    }
    Err(Error::Invariant(format!("no realisation up to dimension {cap}")))
}

/// Least `t` such that `pi` has a realisation in F2^t.
pub fn min_dimension(pi: &EdgeLabeling, opts: &SolveOptions) -> Result<MinDimension> {
    crate::constructive::check_parallel_labels(pi)?;
    let g = pi.graph();
    let eng = Engine::new(g, opts.vertex_order);
    let (value, v) = min_dimension_with(&eng, g, &label_vec(pi), 0, opts, opts.deadline())?;
    let witness = to_realisation(value, opts.strict, v);
    if !witness.realises(pi) {
        return Err(Error::Invariant("minimum-dimension witness fails verification".into()));
    }
    Ok(MinDimension { value, witness })
}

#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub value: usize,
    /// Inversion sequence of length `value` turning the first orientation into the second.
    pub sequence: InversionSequence,
    pub witness: Realisation,
    /// Largest dimension proved infeasible (`value - 1`), if any.
    pub infeasible_below: Option<usize>,
}

pub fn inversion_distance(o1: &Orientation, o2: &Orientation, opts: &SolveOptions) -> Result<DistanceResult> {
    let pi = o1.disagreement(o2)?;
    let opts = SolveOptions { strict: false, ..opts.clone() };
    let md = min_dimension(&pi, &opts)?;
    let sequence = md.witness.to_sequence();
    if o1.apply(&sequence) != *o2 {
        return Err(Error::Invariant("distance witness does not transform the orientations".into()));
    }
    Ok(DistanceResult { value: md.value, sequence, witness: md.witness, infeasible_below: md.value.checked_sub(1) })
}

/// Decision form: `Some(result)` iff the distance is at most `k`.
pub fn distance_at_most(o1: &Orientation, o2: &Orientation, k: usize, opts: &SolveOptions) -> Result<Option<DistanceResult>> {
    let pi = o1.disagreement(o2)?;
    let g = pi.graph();
    let eng = Engine::new(g, opts.vertex_order);
    let labels = label_vec(&pi);
    let deadline = opts.deadline();
    let fixed = vec![None; g.n()];
    for t in 0..=k.min(crate::f2::MAX_DIM) {
        match eng.solve(&labels, t, false, &fixed, deadline) {
            Found::Yes(v) => {
                let witness = to_realisation(t, false, v);
                let sequence = witness.to_sequence();
                return Ok(Some(DistanceResult { value: t, sequence, witness, infeasible_below: t.checked_sub(1) }));
            }
            Found::No => {}
            Found::Timeout => return Err(Error::BudgetExhausted),
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct DiameterResult {
    pub value: usize,
    /// A labeling attaining the maximum (the smallest such mask).
    pub extremal: EdgeLabeling,
    pub witness: Realisation,
    pub labelings_checked: u64,
}

fn edge_guard(g: &Graph, opts: &SolveOptions) -> Result<()> {
    if g.has_parallel_edges() {
        return Err(Error::Precondition("labeling enumeration needs a simple graph".into()));
    }
    let limit = if opts.force { HARD_MAX_EDGES } else { opts.max_edges.min(HARD_MAX_EDGES) };
    if g.m() > limit {
        return Err(Error::TooManyEdges { count: g.m(), limit });
    }
    Ok(())
}

/// Polls the clock every 1024 labelings; single searches on small graphs rarely reach
/// the engine's own polling interval.
fn expired(mask: u64, deadline: Option<Instant>) -> Result<()> {
    match deadline {
        Some(d) if mask % 1024 == 0 && Instant::now() >= d => Err(Error::BudgetExhausted),
        _ => Ok(()),
    }
}

fn mask_labels(m: usize, mask: u64, out: &mut [bool]) {
    for (e, o) in out.iter_mut().enumerate().take(m) {
        *o = (mask >> e) & 1 == 1;
    }
}

struct ChunkBest {
    value: usize,
    mask: u64,
    values: Vec<u64>,
    checked: u64,
}

fn scan_range(eng: &Engine, g: &Graph, range: std::ops::Range<u64>, opts: &SolveOptions, deadline: Option<Instant>, cap: usize) -> Result<ChunkBest> {
    let m = g.m();
    let mut labels = vec![false; m];
    let fixed = vec![None; g.n()];
    let mut best: Option<ChunkBest> = None;
    let mut checked = 0u64;
    for mask in range {
        checked += 1;
        expired(mask, deadline)?;
        mask_labels(m, mask, &mut labels);
        let cur = best.as_ref().map_or(0, |b| b.value);
        if best.is_some() {
            match eng.solve(&labels, cur, opts.strict, &fixed, deadline) {
                Found::Yes(_) => continue,
                Found::No => {}
                Found::Timeout => return Err(Error::BudgetExhausted),
            }
        }
        let from = if best.is_some() { cur + 1 } else { 0 };
        let (value, values) = min_dimension_with(eng, g, &labels, from, opts, deadline)?;
        best = Some(ChunkBest { value, mask, values, checked: 0 });
        if value >= cap {
            break;
        }
    }
    let mut b = best.ok_or_else(|| Error::Invariant("empty labeling range".into()))?;
    b.checked = checked;
    Ok(b)
}

/// Exact inversion diameter by enumerating every labeling of `E(G)`.
pub fn inversion_diameter(g: &Arc<Graph>, opts: &SolveOptions) -> Result<DiameterResult> {
    edge_guard(g, opts)?;
    let eng = Engine::new(g, opts.vertex_order);
    let total = 1u64 << g.m();
    let deadline = opts.deadline();
    let cap = dimension_cap(g, opts.strict);
    let chunks = opts.parallel_pi_chunks.max(1) as u64;
    let best = if chunks <= 1 || total < 2 * chunks {
        scan_range(&eng, g, 0..total, opts, deadline, cap)?
    } else {
        let size = total.div_ceil(chunks);
        let results: Vec<Result<ChunkBest>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * size;
                let hi = ((c + 1) * size).min(total);
                scan_range(&eng, g, lo..hi, opts, deadline, cap)
            })
            .collect();
        let mut all = Vec::new();
        for r in results {
            all.push(r?);
        }
        let checked = all.iter().map(|b| b.checked).sum();
        let max = all.iter().map(|b| b.value).max().expect("at least one chunk");
        let mut b = all.into_iter().filter(|b| b.value == max).min_by_key(|b| b.mask).expect("a maximal chunk");
        b.checked = checked;
        b
    };
    let extremal = EdgeLabeling::from_u64(g.clone(), best.mask)?;
    let witness = to_realisation(best.value, opts.strict, best.values);
    if !witness.realises(&extremal) {
        return Err(Error::Invariant("extremal witness fails verification".into()));
    }
    Ok(DiameterResult { value: best.value, extremal, witness, labelings_checked: best.checked })
}

/// Decision form: `Ok(None)` iff every labeling is realisable in F2^k; otherwise a counterexample.
pub fn diameter_at_most(g: &Arc<Graph>, k: usize, opts: &SolveOptions) -> Result<Option<EdgeLabeling>> {
    edge_guard(g, opts)?;
    let eng = Engine::new(g, opts.vertex_order);
    let total = 1u64 << g.m();
    let deadline = opts.deadline();
    let chunks = opts.parallel_pi_chunks.max(1) as u64;
    let size = total.div_ceil(chunks);
    let scan = |c: u64| -> Result<Option<u64>> {
        let m = g.m();
        let mut labels = vec![false; m];
        let fixed = vec![None; g.n()];
        for mask in c * size..((c + 1) * size).min(total) {
            expired(mask, deadline)?;
            mask_labels(m, mask, &mut labels);
            match eng.solve(&labels, k, opts.strict, &fixed, deadline) {
                Found::Yes(_) => {}
                Found::No => return Ok(Some(mask)),
                Found::Timeout => return Err(Error::BudgetExhausted),
            }
        }
        Ok(None)
    };
    let results: Vec<Result<Option<u64>>> = if chunks <= 1 { vec![scan(0)] } else { (0..chunks).into_par_iter().map(scan).collect() };
    let mut first = None;
    for r in results {
        if let Some(mask) = r? {
            first = Some(first.map_or(mask, |f: u64| f.min(mask)));
        }
    }
    first.map(|mask| EdgeLabeling::from_u64(g.clone(), mask)).transpose()
}

pub fn verify_sequence(o1: &Orientation, seq: &InversionSequence, o2: &Orientation) -> bool {
    crate::graph::same_graph(o1.graph(), o2.graph()) && seq.n() == o1.graph().n() && o1.apply(seq) == *o2
}

pub fn verify_realisation(pi: &EdgeLabeling, r: &Realisation) -> bool {
    r.realises(pi)
}

#[cfg(test)]
mod tests;
