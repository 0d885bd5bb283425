//! Backtracking search for vectors `u` in F2^t with `u . v = pi(uv)` on every edge.

use std::time::Instant;

use fixedbitset::FixedBitSet;

use crate::f2::{solve_affine, F2Vector};
use crate::graph::Graph;

use super::VertexOrder;

const BITMASK_MAX_T: usize = 6;
const CLOCK_INTERVAL: u64 = 1 << 12;

pub(crate) enum Found {
    Yes(Vec<u64>),
    No,
    Timeout,
}

/// Per-graph search structure, reusable across labelings and dimensions.
pub(crate) struct Engine {
    n: usize,
    order: Vec<usize>,
    /// Segment boundaries of connected components in `order`.
    segments: Vec<(usize, usize)>,
    earlier: Vec<Vec<(usize, usize)>>,
    later: Vec<Vec<(usize, usize)>>,
}

fn low_bits(mut c: u64, k: u32) -> u64 {
    let mut out = 0;
    for _ in 0..k {
        let b = c & c.wrapping_neg();
        out |= b;
        c ^= b;
    }
    out
}

/// `x` is the canonical representative of its orbit under permutations preserving every cell.
fn canonical(cells: &[u64], x: u64) -> bool {
    cells.iter().all(|&c| {
        let xc = x & c;
        xc == low_bits(c, xc.count_ones())
    })
}

fn refine(cells: &[u64], x: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for &c in cells {
        for part in [c & x, c & !x] {
            if part != 0 {
                out.push(part);
            }
        }
    }
    out
}

fn full_mask(t: usize) -> u64 {
    if t >= 64 {
        u64::MAX
    } else {
        (1u64 << t) - 1
    }
}

impl Engine {
    pub fn new(g: &Graph, order_kind: VertexOrder) -> Engine {
        let n = g.n();
        let mut order = Vec::with_capacity(n);
        let mut segments = Vec::new();
        for comp in g.components() {
            let start = order.len();
            match order_kind {
                VertexOrder::Identity => order.extend(comp.iter().copied()),
                VertexOrder::MaxAssignedNeighbours => {
                    let mut assigned_nbrs = vec![0usize; n];
                    let mut done = vec![false; n];
                    for _ in 0..comp.len() {
                        let &v = comp
                            .iter()
                            .filter(|&&v| !done[v])
                            .max_by(|&&a, &&b| {
                                (assigned_nbrs[a], g.degree(a), std::cmp::Reverse(a))
                                    .cmp(&(assigned_nbrs[b], g.degree(b), std::cmp::Reverse(b)))
                            })
                            .expect("unassigned vertex");
                        done[v] = true;
                        order.push(v);
                        for w in g.neighbors(v) {
                            assigned_nbrs[w] += 1;
                        }
                    }
                }
            }
            segments.push((start, order.len()));
        }
        let mut pos = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let mut earlier = vec![Vec::new(); n];
        let mut later = vec![Vec::new(); n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
            earlier[b].push((a, e));
            later[a].push((b, e));
        }
        Engine { n, order, segments, earlier, later }
    }

    /// Searches for a realisation; `fixed[v]` pins vertex `v` to a vector.
    pub fn solve(&self, labels: &[bool], t: usize, strict: bool, fixed: &[Option<u64>], deadline: Option<Instant>) -> Found {
        let mut st = State {
            eng: self,
            labels,
            t,
            strict,
            deadline,
            nodes: 0,
            timed_out: false,
            value: vec![u64::MAX; self.n],
            fixed: vec![None; self.n],
        };
        for (v, f) in fixed.iter().enumerate() {
            if let Some(x) = f {
                st.fixed[self.position(v)] = Some(*x);
            }
        }
        if t <= BITMASK_MAX_T {
            st.run_bitmask()
        } else {
            st.run_affine()
        }
    }

    fn position(&self, v: usize) -> usize {
        self.order.iter().position(|&w| w == v).expect("vertex in order")
    }
}

trait Conflict: Clone {
    fn empty(n: usize) -> Self;
    fn insert(&mut self, p: usize);
    fn remove(&mut self, p: usize);
    fn contains(&self, p: usize) -> bool;
    fn union_with(&mut self, other: &Self);
}

impl Conflict for u64 {
    fn empty(_: usize) -> Self {
        0
    }
    fn insert(&mut self, p: usize) {
        *self |= 1 << p;
    }
    fn remove(&mut self, p: usize) {
        *self &= !(1 << p);
    }
    fn contains(&self, p: usize) -> bool {
        (*self >> p) & 1 == 1
    }
    fn union_with(&mut self, other: &Self) {
        *self |= other;
    }
}

impl Conflict for FixedBitSet {
    fn empty(n: usize) -> Self {
        FixedBitSet::with_capacity(n)
    }
    fn insert(&mut self, p: usize) {
        FixedBitSet::insert(self, p)
    }
    fn remove(&mut self, p: usize) {
        self.set(p, false)
    }
    fn contains(&self, p: usize) -> bool {
        FixedBitSet::contains(self, p)
    }
    fn union_with(&mut self, other: &Self) {
        FixedBitSet::union_with(self, other)
    }
}

/// Symmetry cells and the positions whose values split them (at most 6 each here).
#[derive(Clone, Copy)]
struct SmallCells {
    cells: [u64; 8],
    len: usize,
    refiners: [usize; 8],
    nref: usize,
}

impl SmallCells {
    fn new(cells: &[u64]) -> Self {
        let mut c = SmallCells { cells: [0; 8], len: cells.len(), refiners: [0; 8], nref: 0 };
        c.cells[..cells.len()].copy_from_slice(cells);
        c
    }

    fn canonical(&self, x: u64) -> bool {
        canonical(&self.cells[..self.len], x)
    }

    fn refined(&self, x: u64, k: usize) -> Self {
        let mut out = SmallCells { cells: [0; 8], len: 0, refiners: self.refiners, nref: self.nref };
        for &c in &self.cells[..self.len] {
            for part in [c & x, c & !x] {
                if part != 0 {
                    out.cells[out.len] = part;
                    out.len += 1;
                }
            }
        }
        if out.len > self.len {
            out.refiners[out.nref] = k;
            out.nref += 1;
        }
        out
    }
}

enum Step<C> {
    Done,
    Fail(C),
    Stop,
}

struct BitCtx<'a> {
    dom: &'a mut [u64],
    trail: &'a mut Vec<(usize, u64)>,
    pruned_by: &'a mut [Vec<usize>],
    dot: &'a [[u64; 2]],
}

impl BitCtx<'_> {
    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (j, old) = self.trail.pop().expect("trail entry");
            self.dom[j] = old;
            self.pruned_by[j].pop();
        }
    }
}

struct State<'a> {
    eng: &'a Engine,
    labels: &'a [bool],
    t: usize,
    strict: bool,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
    /// Values by position.
    value: Vec<u64>,
    fixed: Vec<Option<u64>>,
}

impl State<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % CLOCK_INTERVAL == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn finish(&self, ok: bool) -> Found {
        if self.timed_out {
            return Found::Timeout;
        }
        if !ok {
            return Found::No;
        }
        let mut out = vec![0; self.eng.n];
        for (k, &v) in self.eng.order.iter().enumerate() {
            out[v] = self.value[k];
        }
        Found::Yes(out)
    }

    /// Initial symmetry cells for a segment: refined by pinned vectors, which
    /// must be consistent with each other.
    fn initial_cells(&self, seg: (usize, usize)) -> Vec<u64> {
        let mut cells = vec![full_mask(self.t)];
        if self.t == 0 {
            cells.clear();
        }
        for k in seg.0..seg.1 {
            if let Some(x) = self.fixed[k] {
                cells = refine(&cells, x);
            }
        }
        cells
    }

    // ---- bitmask engine: domains are subsets of F2^t as masks over 2^t points ----

    fn run_bitmask(&mut self) -> Found {
        let points = 1usize << self.t;
        let all = if points == 64 { u64::MAX } else { (1u64 << points) - 1 };
        let mut dot = vec![[0u64; 2]; points];
        for (u, d) in dot.iter_mut().enumerate() {
            for x in 0..points {
                d[((u & x).count_ones() & 1) as usize] |= 1 << x;
            }
        }
        let n = self.eng.n;
        let mut dom = vec![if self.strict { all & !1 } else { all }; n];
        for k in 0..n {
            if let Some(x) = self.fixed[k] {
                if x >= points as u64 {
                    return Found::No;
                }
                dom[k] &= 1 << x;
            }
        }
        // propagate pinned values
        for k in 0..n {
            if let Some(x) = self.fixed[k] {
                for &(j, e) in self.eng.earlier[k].iter().chain(&self.eng.later[k]) {
                    dom[j] &= dot[x as usize][self.labels[e] as usize];
                }
            }
        }
        if dom.iter().any(|&d| d == 0) {
            return Found::No;
        }
        let mut trail = Vec::new();
        let mut pruned_by: Vec<Vec<usize>> = vec![Vec::new(); n];
        for si in 0..self.eng.segments.len() {
            let seg = self.eng.segments[si];
            let cells = self.initial_cells(seg);
            let mut ctx = BitCtx { dom: &mut dom, trail: &mut trail, pruned_by: &mut pruned_by, dot: &dot };
            let cells = SmallCells::new(&cells);
            let done = if n <= 64 {
                matches!(self.dfs_bitmask::<u64>(seg.0, seg.1, &mut ctx, cells), Step::Done)
            } else {
                matches!(self.dfs_bitmask::<FixedBitSet>(seg.0, seg.1, &mut ctx, cells), Step::Done)
            };
            if !done {
                return self.finish(false);
            }
        }
        self.finish(true)
    }

    /// Forward checking with conflict-directed backjumping. A failure carries the
    /// set of earlier positions that explain it; a position outside that set is skipped.
    fn dfs_bitmask<C: Conflict>(&mut self, k: usize, end: usize, ctx: &mut BitCtx<'_>, cells: SmallCells) -> Step<C> {
        if k == end {
            return Step::Done;
        }
        if self.tick() {
            return Step::Stop;
        }
        let mut conflict = C::empty(self.eng.n);
        let mut sym_skipped = false;
        let mut cand = ctx.dom[k];
        while cand != 0 {
            let x = cand.trailing_zeros() as u64;
            cand &= cand - 1;
            let free = self.fixed[k].is_none();
            if free && !cells.canonical(x) {
                sym_skipped = true;
                continue;
            }
            let mark = ctx.trail.len();
            let mut ok = true;
            for &(j, e) in &self.eng.later[k] {
                let nd = ctx.dom[j] & ctx.dot[x as usize][self.labels[e] as usize];
                if nd != ctx.dom[j] {
                    ctx.trail.push((j, ctx.dom[j]));
                    ctx.pruned_by[j].push(k);
                    ctx.dom[j] = nd;
                    if nd == 0 {
                        for &p in &ctx.pruned_by[j] {
                            conflict.insert(p);
                        }
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.value[k] = x;
                let next = if free { cells.refined(x, k) } else { cells };
                match self.dfs_bitmask::<C>(k + 1, end, ctx, next) {
                    Step::Done => return Step::Done,
                    Step::Stop => return Step::Stop,
                    Step::Fail(cs) => {
                        if !cs.contains(k) {
                            ctx.undo(mark);
                            return Step::Fail(cs);
                        }
                        conflict.union_with(&cs);
                    }
                }
            }
            ctx.undo(mark);
        }
        for &p in &ctx.pruned_by[k] {
            conflict.insert(p);
        }
        if sym_skipped {
            for &p in &cells.refiners[..cells.nref] {
                conflict.insert(p);
            }
        }
        conflict.remove(k);
        Step::Fail(conflict)
    }

    // ---- affine engine: candidate sets from Gaussian elimination ----

    fn run_affine(&mut self) -> Found {
        for si in 0..self.eng.segments.len() {
            let seg = self.eng.segments[si];
            let cells = self.initial_cells(seg);
            if !self.dfs_affine(seg.0, seg.1, &cells) {
                return self.finish(false);
            }
        }
        self.finish(true)
    }

    fn constraint_space(&self, k: usize, assigned_before: usize) -> crate::f2::AffineSpace {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &(j, e) in self.eng.earlier[k].iter().chain(&self.eng.later[k]) {
            if j < assigned_before || self.fixed[j].is_some() {
                let x = if j < assigned_before { self.value[j] } else { self.fixed[j].expect("pinned") };
                rows.push(F2Vector::new(self.t, x).expect("dimension"));
                rhs.push(self.labels[e]);
            }
        }
        solve_affine(&rows, &rhs, self.t).expect("consistent dimensions")
    }

    fn has_candidate(&self, space: &crate::f2::AffineSpace) -> bool {
        match space.particular {
            None => false,
            Some(p) => !self.strict || !space.basis.is_empty() || !p.is_zero(),
        }
    }

    fn dfs_affine(&mut self, k: usize, end: usize, cells: &[u64]) -> bool {
        if k == end {
            return true;
        }
        if self.tick() {
            return false;
        }
        let space = self.constraint_space(k, k);
        let candidates: Box<dyn Iterator<Item = u64>> = match self.fixed[k] {
            Some(x) => Box::new(space.contains(&F2Vector::new(self.t, x).expect("dimension")).then_some(x).into_iter()),
            None => Box::new(space.iter().map(|v| v.bits())),
        };
        for x in candidates {
            if self.strict && x == 0 {
                continue;
            }
            if self.fixed[k].is_none() && !canonical(cells, x) {
                continue;
            }
            self.value[k] = x;
            let ok = self.eng.later[k].iter().all(|&(j, _)| {
                let s = self.constraint_space(j, k + 1);
                self.has_candidate(&s)
            });
            if ok {
                let next_cells = if self.fixed[k].is_none() { refine(cells, x) } else { cells.to_vec() };
                if self.dfs_affine(k + 1, end, &next_cells) {
                    return true;
                }
            }
            if self.timed_out {
                return false;
            }
        }
        false
    }
}
