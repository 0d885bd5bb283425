use std::path::Path;
use std::process::{Command, Output};

use invdiam::generators::{self, random};
use invdiam::io;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_invdiam"));
    c.env_remove("INVDIAM_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    std::fs::write(dir.join(name), text).unwrap();
    p(dir, name)
}

#[test]
fn distance_examples() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "p4.el", "4\n0 1\n1 2\n2 3\n");
    let a = write(d.path(), "a.or", "4\n0 1\n1 2\n2 3\n");
    let b = write(d.path(), "b.or", "4\n1 0\n1 2\n3 2\n");
    let o = run(&["distance", &g, &a, &a]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "DISTANCE 0\n"));
    let o = run(&["distance", &g, &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("DISTANCE 2\n"));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("SET ")).count(), 2);
    assert_eq!(run(&["distance", &g, &a, &b, "--max-t", "1"]).status.code(), Some(1));
    assert_eq!(stdout(&run(&["distance", &g, &a, &b, "--oracle"])), "DISTANCE 2\n");

    let c4 = std::sync::Arc::new(generators::cycle(4));
    let g = write(d.path(), "c4.el", &io::write_edge_list(&c4));
    let mut r = random::rng(1);
    for i in 0..20 {
        let o1 = write(d.path(), &format!("x{i}.or"), &io::write_orientation(&random::orientation(c4.clone(), &mut r)));
        let o2 = write(d.path(), &format!("y{i}.or"), &io::write_orientation(&random::orientation(c4.clone(), &mut r)));
        assert_eq!(run(&["distance", &g, &o1, &o2, "--max-t", "2"]).status.code(), Some(0));
    }
}

#[test]
fn diameter_examples_and_parallel_agreement() {
    let d = tempfile::tempdir().unwrap();
    let k4 = write(d.path(), "k4.el", &io::write_edge_list(&generators::complete(4)));
    let star = write(d.path(), "star.el", &io::write_edge_list(&generators::star(3)));
    assert!(stdout(&run(&["diameter", &k4])).starts_with("DIAMETER 3\n"));
    assert!(stdout(&run(&["diameter", &star])).starts_with("DIAMETER 1\n"));
    assert_eq!(stdout(&run(&["diameter", &k4, "--oracle"])), "DIAMETER 3\n");
    let serial = stdout(&run(&["diameter", &k4]));
    assert_eq!(serial, stdout(&run(&["diameter", &k4, "--parallel", "4"])));
    assert_eq!(run(&["diameter", &k4, "--max-t", "3"]).status.code(), Some(0));
    let o = run(&["diameter", &k4, "--max-t", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("DIAMETER > 2\n"));
}

#[test]
fn guards_budget_and_parse_errors() {
    let d = tempfile::tempdir().unwrap();
    let big = write(d.path(), "k8.el", &io::write_edge_list(&generators::complete(8)));
    let o = run(&["diameter", &big]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("force"));
    let pc = write(d.path(), "pc.el", &io::write_edge_list(&generators::pendant_cycle(10)));
    let o = bin().args(["diameter", &pc]).env("INVDIAM_BUDGET", "0.01").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["diameter", &pc, "--budget", "0.01"]).status.code(), Some(3));
    let bad = write(d.path(), "bad.el", "3\n0 1\n1 x\n");
    let o = run(&["diameter", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["diameter"]).status.code(), Some(2));
}

#[test]
fn transform_methods() {
    let d = tempfile::tempdir().unwrap();
    let mut r = random::rng(2);
    let cases: [(&str, invdiam::Graph, &str, usize); 4] = [
        ("tree", random::tree(15, &mut r), "auto", 2),
        ("cubic", random::cubic(12, &mut r), "subcubic", 4),
        ("dense", random::gnp(9, 0.6, &mut r), "elim", 8),
        ("cycle", generators::cycle(9), "cycle", 2),
    ];
    for (name, g, method, most) in cases {
        let g = std::sync::Arc::new(g);
        let gp = write(d.path(), &format!("{name}.el"), &io::write_edge_list(&g));
        let o1 = random::orientation(g.clone(), &mut r);
        let o2 = random::orientation(g.clone(), &mut r);
        let a = write(d.path(), &format!("{name}1.or"), &io::write_orientation(&o1));
        let b = write(d.path(), &format!("{name}2.or"), &io::write_orientation(&o2));
        let o = run(&["transform", &gp, &a, &b, "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let out = stdout(&o);
        let sets: Vec<&str> = out.lines().filter(|l| *l == "SET" || l.starts_with("SET ")).map(|l| &l[3..]).collect();
        assert!(sets.len() <= most, "{name}: {} sets", sets.len());
        let seq_text: String = sets.iter().map(|s| format!("{}\n", s.trim())).collect();
        let seq = write(d.path(), &format!("{name}.seq"), &seq_text);
        assert_eq!(run(&["verify", "sequence", &gp, &a, &seq, &b]).status.code(), Some(0), "{name}");
    }
    let k4 = write(d.path(), "k4.el", &io::write_edge_list(&generators::complete(4)));
    let a = write(d.path(), "k4.or", &io::write_orientation(&invdiam::Orientation::canonical(std::sync::Arc::new(generators::complete(4)))));
    assert_eq!(run(&["transform", &k4, &a, &a, "--method", "forest"]).status.code(), Some(1));
    assert_eq!(run(&["transform", &k4, &a, &a, "--method", "bogus"]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let d = tempfile::tempdir().unwrap();
    let out1 = stdout(&run(&["gen", "multipartite", "3", "2", "--out", &p(d.path(), "a")]));
    let out2 = stdout(&run(&["gen", "multipartite", "3", "2", "--out", &p(d.path(), "b")]));
    assert_eq!(out1, out2);
    for f in ["graph.el", "pi.lb", "O1.or", "O2.or"] {
        assert!(out1.contains(&format!("FILE {f} SHA256")));
    }
    let dir = d.path().join("a");
    let g = std::sync::Arc::new(io::read_graph(&dir.join("graph.el")).unwrap());
    assert_eq!(io::write_edge_list(&g), std::fs::read_to_string(dir.join("graph.el")).unwrap());
    let pi = io::read_labeling(g.clone(), &dir.join("pi.lb")).unwrap();
    assert_eq!(io::write_labeling(&pi), std::fs::read_to_string(dir.join("pi.lb")).unwrap());
    let o = run(&["distance", &p(&dir, "graph.el"), &p(&dir, "O1.or"), &p(&dir, "O2.or")]);
    assert!(stdout(&o).starts_with("DISTANCE 4\n"));

    let s1 = stdout(&run(&["gen", "gnp", "10", "0.4", "--seed", "7"]));
    assert_eq!(s1, stdout(&run(&["gen", "gnp", "10", "0.4", "--seed", "7"])));
    assert_ne!(s1, stdout(&run(&["gen", "gnp", "10", "0.4", "--seed", "8"])));
    assert_eq!(run(&["gen", "cycle"]).status.code(), Some(2));
}

#[test]
fn certify_reduce_verify() {
    let d = tempfile::tempdir().unwrap();
    let pc = write(d.path(), "pc.el", &io::write_edge_list(&generators::pendant_cycle(8)));
    let out = stdout(&run(&["certify", &pc]));
    assert!(out.lines().any(|l| l == "LOWER 3 / UPPER 3"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("RULE even-cycle BOUND 3")));
    let k4 = write(d.path(), "k4.el", &io::write_edge_list(&generators::complete(4)));
    let out = stdout(&run(&["certify", &k4, "--exact"]));
    assert!(out.lines().any(|l| l.starts_with("RULE exact BOUND 3") && l.ends_with("PROOF solver")));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["certify", &k4, "--json"]))).unwrap();
    assert_eq!(json["lower"], 3);

    let c5 = write(d.path(), "c5.el", &io::write_edge_list(&generators::cycle(5)));
    let inst = p(d.path(), "inst");
    let out = stdout(&run(&["reduce", &c5, "2", "--out", &inst]));
    assert!(out.contains("CHROMATIC 3") && out.contains("PREDICT distance<=2 yes"));
    assert_eq!(run(&["verify", "instance", &inst]).status.code(), Some(0));
    let dir = Path::new(&inst);
    let o = run(&["distance", &p(dir, "graph.el"), &p(dir, "O1.or"), &p(dir, "O2.or"), "--max-t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(dir.join("O2.or"), std::fs::read_to_string(dir.join("O1.or")).unwrap()).unwrap();
    assert_eq!(run(&["verify", "instance", &inst]).status.code(), Some(1));
    assert_eq!(run(&["reduce", &write(d.path(), "p3.el", "3\n0 1\n1 2\n"), "2", "--out", &inst]).status.code(), Some(1));

    // identity sequence: empty file
    let a = write(d.path(), "c5.or", &io::write_orientation(&invdiam::Orientation::canonical(std::sync::Arc::new(generators::cycle(5)))));
    let empty = write(d.path(), "empty.seq", "");
    assert_eq!(run(&["verify", "sequence", &c5, &a, &empty, &a]).status.code(), Some(0));
    let one = write(d.path(), "one.seq", "0 1\n");
    assert_eq!(run(&["verify", "sequence", &c5, &a, &one, &a]).status.code(), Some(1));

    let order = write(d.path(), "order", "0 1 2 3 4");
    assert_eq!(run(&["verify", "strong", &c5, &order, "3"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "strong", &c5, &order, "1"]).status.code(), Some(1));
}
