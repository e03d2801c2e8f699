use std::path::Path;
use std::process::{Command, Output};

use oscsolve::record::read_result;

fn oscsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscsolve"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn triangle_three_cut() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.txt", "3 3\n1 2 1\n2 3 1\n1 3 1\n");
    let o = oscsolve(&["solve", "maxkcut", &k3, "--k", "3", "--seed", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("maxkcut best 3 "), "{}", stdout(&o));
}

#[test]
fn square_tour_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.csv", "0,1,2,1\n1,0,1,2\n2,1,0,1\n1,2,1,0\n");
    let o = oscsolve(&["oracle", "tsp", &sq]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.txt", "3 3\n1 2 1\n2 3 1\n1 3 1\n");
    assert_eq!(oscsolve(&["solve", "maxkcut", &k3, "--k", "1"]).status.code(), Some(2));
    assert_eq!(oscsolve(&["solve", "nonsense", &k3]).status.code(), Some(2));
    assert_eq!(oscsolve(&["solve", "maxkcut", "/nonexistent/g.txt"]).status.code(), Some(1));
    assert_eq!(oscsolve(&["--help"]).status.code(), Some(0));
    let big = write(dir.path(), "ring.txt", &oscsolve_ring(40));
    assert_eq!(oscsolve(&["oracle", "maxkcut", &big]).status.code(), Some(3));
}

fn oscsolve_ring(n: usize) -> String {
    let mut s = format!("{n} {n}\n");
    for i in 0..n {
        s.push_str(&format!("{} {}\n", i + 1, (i + 1) % n + 1));
    }
    s
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("m8.txt");
    let o = oscsolve(&["gen", "mobius", "8", "--out", g.to_str().unwrap()]);
    assert!(o.status.success());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = oscsolve(&[
            "solve", "maxkcut", g.to_str().unwrap(), "--restarts", "4", "--cycles", "20", "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn record_replays_to_the_same_result() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("r.txt");
    let o = oscsolve(&["gen", "random", "12", "0.4", "--seed", "5", "--out", g.to_str().unwrap()]);
    assert!(o.status.success());
    let out = dir.path().join("r.json");
    let o = oscsolve(&[
        "solve", "partition", g.to_str().unwrap(), "--restarts", "3", "--cycles", "20", "--seed", "9",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let record = read_result(&out).unwrap();
    assert_eq!(record.trials.len(), 3);
    assert_eq!(record.parameters.seed, 9);
    let mut again = oscsolve::cli::replay(&record, &g).unwrap();
    again.timestamp = record.timestamp;
    assert_eq!(again, record);
}

#[test]
fn trajectory_file() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.txt", "3 3\n1 2 1\n2 3 1\n1 3 1\n");
    let trace = dir.path().join("t.csv");
    let o = oscsolve(&[
        "solve", "maxkcut", &k3, "--k", "3", "--restarts", "2", "--cycles", "1", "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,phi_0,phi_1,phi_2,energy,C1");
    assert_eq!(lines.len(), 1 + 11);
}

#[test]
fn compare_prints_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.txt", "3 3\n1 2 1\n2 3 1\n1 3 1\n");
    let o = oscsolve(&["compare", "color", &k3, "--restarts", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("oracle 3"), "{s}");
    assert!(s.contains("ratio 1"), "{s}");
}
