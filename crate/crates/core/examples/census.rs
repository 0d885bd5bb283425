//! Isomorphism classes of small graphs, written as graph6.
use invdiam::generators::census::{cubic_multigraphs, simple_graphs};
use invdiam::io::{parse_graph6, write_graph6};

fn main() -> invdiam::Result<()> {
    for n in 1..=7 {
        println!("n={n}: {} graphs", simple_graphs(n)?.len());
    }
    for g in simple_graphs(4)? {
        let code = write_graph6(&g)?;
        assert_eq!(parse_graph6(&code)?, g);
        println!("  {code}  m={}", g.m());
    }
    for n in [2, 4, 6] {
        println!("cubic multigraphs on {n} vertices: {}", cubic_multigraphs(n)?.len());
    }
    Ok(())
}
