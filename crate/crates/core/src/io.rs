//! Plain-text file formats.
//!
//! * edge list: first line `n`, then one `u v` line per edge; `#` starts a comment
//! * orientation: same layout, `u v` meaning the arc `u -> v`
//! * labeling: `u v b` lines, an optional leading `n` line is accepted
//! * sequence: one line per set of space-separated vertices; an empty line is an empty set
//! * realisation: `dim t` (optionally followed by `strict`), then `v bits` lines
//! * graph6 is accepted wherever a graph is read

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2::F2Vector;
use crate::graph::{EdgeLabeling, Graph, InversionSequence, Orientation, Realisation};

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse().or_else(|_| perr(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn fields<const K: usize>(line: usize, l: &str) -> Result<[usize; K]> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != K {
        return perr(line, format!("expected {K} fields, found {}", toks.len()));
    }
    let mut out = [0; K];
    for (o, t) in out.iter_mut().zip(toks) {
        *o = parse_usize(line, t)?;
    }
    Ok(out)
}

/// Reads an edge list or, if the first content line is not a bare integer, graph6.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = content_lines(text).next();
    match first {
        Some((_, l)) if l.parse::<usize>().is_err() => parse_graph6(l),
        _ => parse_edge_list(text),
    }
}

/// Parses an edge list; a multigraph is built only when parallel edges occur.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let Some((ln, first)) = lines.next() else {
        return perr(1, "missing vertex count");
    };
    let [n] = fields::<1>(ln, first)?;
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let [u, v] = fields::<2>(ln, l)?;
        if u >= n || v >= n {
            return perr(ln, format!("vertex out of range 0..{n}"));
        }
        if u == v {
            return perr(ln, format!("self-loop at {u}"));
        }
        edges.push((u, v));
    }
    match Graph::new(n, edges.clone()) {
        Err(Error::ParallelEdge(..)) => Graph::new_multi(n, edges),
        other => other,
    }
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Assigns each `(a, b)` pair to an unused edge with those endpoints, preferring the
/// edge at the same position.
fn match_edges(g: &Graph, pairs: &[(usize, usize, usize)]) -> Result<Vec<usize>> {
    if pairs.len() != g.m() {
        return perr(pairs.last().map_or(1, |p| p.2), format!("expected {} edge lines, found {}", g.m(), pairs.len()));
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut pool: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate().rev() {
        pool.entry(key(u, v)).or_default().push(e);
    }
    let mut used = vec![false; g.m()];
    let mut out = Vec::with_capacity(pairs.len());
    for (i, &(a, b, ln)) in pairs.iter().enumerate() {
        let (u, v) = g.endpoints(i);
        let e = if key(u, v) == key(a, b) && !used[i] {
            i
        } else {
            let list = pool.get_mut(&key(a, b)).map(|l| {
                while let Some(&e) = l.last() {
                    if used[e] {
                        l.pop();
                    } else {
                        break;
                    }
                }
                l.last().copied()
            });
            match list.flatten() {
                Some(e) => e,
                None => return perr(ln, format!("{a} {b} is not an unused edge of the graph")),
            }
        };
        used[e] = true;
        out.push(e);
    }
    Ok(out)
}

pub fn parse_orientation(g: Arc<Graph>, text: &str) -> Result<Orientation> {
    let mut lines = content_lines(text);
    let Some((ln, first)) = lines.next() else {
        return perr(1, "missing vertex count");
    };
    let [n] = fields::<1>(ln, first)?;
    if n != g.n() {
        return perr(ln, format!("vertex count {n} does not match the graph ({})", g.n()));
    }
    let mut pairs = Vec::new();
    for (ln, l) in lines {
        let [a, b] = fields::<2>(ln, l)?;
        pairs.push((a, b, ln));
    }
    let ids = match_edges(&g, &pairs)?;
    let mut arcs = vec![(0, 0); g.m()];
    for (&(a, b, _), &e) in pairs.iter().zip(&ids) {
        arcs[e] = (a, b);
    }
    Orientation::from_arcs(g, &arcs)
}

pub fn write_orientation(o: &Orientation) -> String {
    let g = o.graph();
    let mut s = format!("{}\n", g.n());
    for e in 0..g.m() {
        let (t, h) = o.arc(e);
        s.push_str(&format!("{t} {h}\n"));
    }
    s
}

pub fn parse_labeling(g: Arc<Graph>, text: &str) -> Result<EdgeLabeling> {
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    for (i, (ln, l)) in content_lines(text).enumerate() {
        if i == 0 && l.split_whitespace().count() == 1 {
            let [n] = fields::<1>(ln, l)?;
            if n != g.n() {
                return perr(ln, format!("vertex count {n} does not match the graph ({})", g.n()));
            }
            continue;
        }
        let [a, b, bit] = fields::<3>(ln, l)?;
        if bit > 1 {
            return perr(ln, "label must be 0 or 1");
        }
        pairs.push((a, b, ln));
        labels.push(bit == 1);
    }
    let ids = match_edges(&g, &pairs)?;
    let mut values = vec![false; g.m()];
    for (&e, &b) in ids.iter().zip(&labels) {
        values[e] = b;
    }
    EdgeLabeling::from_values(g, &values)
}

pub fn write_labeling(pi: &EdgeLabeling) -> String {
    let g = pi.graph();
    let mut s = String::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        s.push_str(&format!("{u} {v} {}\n", pi.get(e) as u8));
    }
    s
}

/// Full-line `#` comments are skipped; every other line (including an empty one) is a set.
pub fn parse_sequence(n: usize, text: &str) -> Result<InversionSequence> {
    let mut lists = Vec::new();
    for (i, raw) in text.split_terminator('\n').enumerate() {
        let l = raw.trim();
        if l.starts_with('#') {
            continue;
        }
        let mut set = Vec::new();
        for tok in l.split_whitespace() {
            let v = parse_usize(i + 1, tok)?;
            if v >= n {
                return perr(i + 1, format!("vertex {v} out of range 0..{n}"));
            }
            set.push(v);
        }
        lists.push(set);
    }
    InversionSequence::from_lists(n, &lists)
}

pub fn write_sequence(seq: &InversionSequence) -> String {
    let mut s = String::new();
    for set in seq.to_lists() {
        let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_realisation(n: usize, text: &str) -> Result<Realisation> {
    let mut lines = content_lines(text);
    let Some((ln, head)) = lines.next() else {
        return perr(1, "missing `dim t` header");
    };
    let toks: Vec<&str> = head.split_whitespace().collect();
    let (dim, strict) = match toks.as_slice() {
        ["dim", t] => (parse_usize(ln, t)?, false),
        ["dim", t, "strict"] => (parse_usize(ln, t)?, true),
        _ => return perr(ln, "expected `dim t` or `dim t strict`"),
    };
    let mut vectors: Vec<Option<F2Vector>> = vec![None; n];
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let (v, bits) = match toks.as_slice() {
            [v] if dim == 0 => (parse_usize(ln, v)?, ""),
            [v, b] => (parse_usize(ln, v)?, *b),
            _ => return perr(ln, "expected `vertex bits`"),
        };
        if v >= n {
            return perr(ln, format!("vertex {v} out of range 0..{n}"));
        }
        let x = F2Vector::from_bit_str(bits).or_else(|_| perr(ln, "bits must be 0/1"))?;
        if x.dim() != dim {
            return perr(ln, format!("vector has {} coordinates, expected {dim}", x.dim()));
        }
        vectors[v] = Some(x);
    }
    let vectors = vectors
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or(Error::Parse { line: 0, msg: format!("no vector for vertex {v}") }))
        .collect::<Result<Vec<_>>>()?;
    Realisation::new(dim, vectors, strict)
}

pub fn write_realisation(r: &Realisation) -> String {
    let mut s = format!("dim {}{}\n", r.dim(), if r.is_strict() { " strict" } else { "" });
    for (v, x) in r.vectors().iter().enumerate() {
        s.push_str(&format!("{v} {x}\n"));
    }
    s
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return perr(1, "graph6 bytes must lie in 63..=126");
    }
    let (n, rest) = match bytes.as_slice() {
        [] => return perr(1, "empty graph6 string"),
        [126, 126, r @ ..] => {
            if r.len() < 6 {
                return perr(1, "truncated graph6 size");
            }
            let n = r[..6].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &r[6..])
        }
        [126, r @ ..] => {
            if r.len() < 3 {
                return perr(1, "truncated graph6 size");
            }
            let n = r[..3].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &r[3..])
        }
        [b, r @ ..] => ((b - 63) as usize, r),
    };
    let needed = n * n.saturating_sub(1) / 2;
    if rest.len() * 6 < needed || rest.len() != needed.div_ceil(6) {
        return perr(1, format!("graph6 body has {} bytes, expected {}", rest.len(), needed.div_ceil(6)));
    }
    let bit = |k: usize| ((rest[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    if g.has_parallel_edges() {
        return Err(Error::Precondition("graph6 cannot encode parallel edges".into()));
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.adjacent(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for k in 0..6 {
            b = (b << 1) | chunk.get(k).copied().unwrap_or(false) as u8;
        }
        out.push(b + 63);
    }
    Ok(String::from_utf8(out).expect("ascii"))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn read_orientation(g: Arc<Graph>, path: &Path) -> Result<Orientation> {
    parse_orientation(g, &fs::read_to_string(path)?)
}

pub fn read_labeling(g: Arc<Graph>, path: &Path) -> Result<EdgeLabeling> {
    parse_labeling(g, &fs::read_to_string(path)?)
}

pub fn read_sequence(n: usize, path: &Path) -> Result<InversionSequence> {
    parse_sequence(n, &fs::read_to_string(path)?)
}

pub fn read_realisation(n: usize, path: &Path) -> Result<Realisation> {
    parse_realisation(n, &fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_star() {
        let g = parse_graph6("D?{").unwrap();
        let h = parse_edge_list("5\n0 4\n1 4\n2 4\n3 4\n").unwrap();
        assert_eq!(g, h);
        assert_eq!(write_graph6(&g).unwrap(), "D?{");
    }

    #[test]
    fn edge_list_roundtrip_and_comments() {
        let text = "4\n0 1\n2 1\n3 2\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(write_edge_list(&g), text);
        let commented = "# path\n4  # vertices\n0 1\n\n2 1 # reversed\n3 2\n";
        assert_eq!(parse_edge_list(commented).unwrap(), g);
    }

    #[test]
    fn parallel_edges_make_multigraph() {
        let g = parse_edge_list("2\n0 1\n1 0\n").unwrap();
        assert!(g.allows_parallel());
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn orientation_lines_may_be_permuted() {
        let g = Arc::new(parse_edge_list("3\n0 1\n1 2\n").unwrap());
        let o = parse_orientation(g.clone(), "3\n2 1\n0 1\n").unwrap();
        assert_eq!(o.arc(0), (0, 1));
        assert_eq!(o.arc(1), (2, 1));
        assert_eq!(parse_orientation(g.clone(), &write_orientation(&o)).unwrap(), o);
        assert!(parse_orientation(g, "3\n0 2\n0 1\n").is_err());
    }

    #[test]
    fn sequence_empty_lines_are_empty_sets() {
        let s = parse_sequence(4, "0 1\n\n2 3\n").unwrap();
        assert_eq!(s.to_lists(), vec![vec![0, 1], vec![], vec![2, 3]]);
        assert_eq!(write_sequence(&s), "0 1\n\n2 3\n");
        assert_eq!(parse_sequence(4, "").unwrap().len(), 0);
    }

    #[test]
    fn labeling_and_realisation_roundtrip() {
        let g = Arc::new(parse_edge_list("3\n0 1\n1 2\n").unwrap());
        let pi = parse_labeling(g.clone(), "0 1 1\n1 2 0\n").unwrap();
        assert_eq!(write_labeling(&pi), "0 1 1\n1 2 0\n");
        let r = parse_realisation(3, "dim 2\n0 10\n1 11\n2 11\n").unwrap();
        assert!(r.realises(&pi));
        assert_eq!(parse_realisation(3, &write_realisation(&r)).unwrap(), r);
    }
}
