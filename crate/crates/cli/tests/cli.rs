use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_altiso"))
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const J: &str = "altmatspace 2 1 2\n0 1\n1 0\n";
const ZERO2: &str = "altmatspace 2 1 2\n0 0\n0 0\n";

#[test]
fn identical_files_are_isometric_under_every_algorithm() {
    let g = tmp("j.txt", J);
    for algo in ["brute", "dp"] {
        let out = run(&["isometry", g.to_str().unwrap(), g.to_str().unwrap(), "--algo", algo]);
        assert_eq!(code(&out), 0, "{algo}: {}", stdout(&out));
        let text = stdout(&out);
        assert!(text.starts_with("isometric"));
        assert!(text.contains("|S| = 6"), "{text}");
    }
}

#[test]
fn rank_obstruction_is_not_isometric() {
    let (g, h) = (tmp("j1.txt", J), tmp("z1.txt", ZERO2));
    for algo in ["brute", "dp", "main"] {
        let out = run(&["isometry", g.to_str().unwrap(), h.to_str().unwrap(), "--algo", algo, "--r", "1"]);
        assert_eq!(code(&out), 1, "{algo}: {}", stdout(&out));
    }
}

#[test]
fn zero_space_fails_the_gate() {
    let z = "altmatspace 4 1 2\n0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n";
    let g = tmp("z4.txt", z);
    let out = run(&["isometry", g.to_str().unwrap(), g.to_str().unwrap(), "--algo", "main", "--r", "2"]);
    assert_eq!(code(&out), 2, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("not-property-f"));
}

#[test]
fn default_r_fits_the_caps() {
    let g = stdout(&run(&["sample", "--model", "liner", "--n", "6", "--m", "6", "--q", "2", "--seed", "1"]));
    let p = tmp("liner6.txt", &g);
    let out = run(&["isometry", p.to_str().unwrap(), p.to_str().unwrap(), "--json"]);
    assert!([0, 2].contains(&code(&out)), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["details"]["r"], 2);
}

#[test]
fn parse_errors_exit_three_with_line_numbers() {
    let bad = tmp("bad.txt", "altmatspace 2 1 3\n0 1\n1 0\n");
    let good = tmp("good3.txt", "altmatspace 2 1 3\n0 1\n2 0\n");
    let out = run(&["isometry", bad.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = run(&["validate", good.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("ok altmatspace"));
    // usage errors are not confused with "not property F"
    assert_eq!(code(&run(&["isometry"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn cap_errors_exit_nonzero() {
    let g = tmp("j5.txt", "altmatspace 2 1 5\n0 1\n4 0\n");
    let out = run(&["isometry", g.to_str().unwrap(), g.to_str().unwrap(), "--algo", "brute", "--cap-gl", "10"]);
    assert!(code(&out) >= 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds cap"));
}

#[test]
fn sample_then_validate_roundtrip() {
    let out = run(&["sample", "--model", "liner", "--n", "4", "--m", "3", "--q", "3", "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("altmatspace 4 3 3\n"));
    let again = run(&["sample", "--model", "liner", "--n", "4", "--m", "3", "--q", "3", "--seed", "5"]);
    assert_eq!(stdout(&again), text);
    let p = tmp("sampled.txt", &text);
    let v = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).contains("dim=3"));
}

#[test]
fn algorithms_agree_on_sampled_pairs() {
    for seed in 0..6 {
        let s = seed.to_string();
        let g = stdout(&run(&["sample", "--model", "nait", "--n", "4", "--m", "2", "--q", "2", "--seed", &s]));
        let h = stdout(&run(&["sample", "--model", "nait", "--n", "4", "--m", "2", "--q", "2", "--seed", &s, "--stream", "1"]));
        let (pg, ph) = (tmp(&format!("g{seed}.txt"), &g), tmp(&format!("h{seed}.txt"), &h));
        for (a, b) in [(&pg, &pg), (&pg, &ph)] {
            let codes: Vec<i32> = ["brute", "dp", "main"]
                .iter()
                .map(|algo| code(&run(&["isometry", a.to_str().unwrap(), b.to_str().unwrap(), "--algo", algo])))
                .collect();
            assert_eq!(codes[0], codes[1]);
            if codes[2] != 2 {
                assert_eq!(codes[0], codes[2]);
            }
        }
    }
}

#[test]
fn json_report_is_one_line() {
    let g = tmp("jj.txt", J);
    let out = run(&["isometry", g.to_str().unwrap(), g.to_str().unwrap(), "--algo", "brute", "--json", "--seed", "3"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"], "isometric");
    assert_eq!(v["count"], 6);
    assert_eq!(v["seed"], 3);
}

#[test]
fn experiment_csv_is_deterministic() {
    let args = ["experiment", "semistable-threshold", "--n", "4", "--m", "1,2", "--q", "2,3", "--trials", "50", "--seed", "11"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(lines.next().unwrap(), "kind,n,m,q,r,trials,successes,rate,seed");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 9);
        let (trials, succ): (u64, u64) = (f[5].parse().unwrap(), f[6].parse().unwrap());
        assert!(succ <= trials);
        assert_eq!(f[7], format!("{:.6}", succ as f64 / trials as f64));
    }
}

#[test]
fn stable_adjoint_subspaces_baer() {
    let id = tmp("id.txt", "matrixtuple 2 2 2 2\n1 0\n0 1\n\n0 1\n1 1\n");
    let out = run(&["stable", id.to_str().unwrap()]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "stable"));
    let out = run(&["adjoint", id.to_str().unwrap()]);
    assert!(stdout(&out).contains("dim Adj = 2"), "{}", stdout(&out));
    let out = run(&["subspaces", "--n", "3", "--q", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("total: 16"));
    let j3 = tmp("j3.txt", "altmatspace 2 1 3\n0 1\n2 0\n");
    let z3 = tmp("z3.txt", "altmatspace 2 1 3\n0 0\n0 0\n");
    let out = run(&["baer", j3.to_str().unwrap()]);
    assert!(stdout(&out).contains("order: 27"));
    assert_eq!(code(&run(&["baer", j3.to_str().unwrap(), j3.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["baer", j3.to_str().unwrap(), z3.to_str().unwrap()])), 1);
    // p = 2 has no Baer group
    let j2 = tmp("j2b.txt", J);
    assert!(code(&run(&["baer", j2.to_str().unwrap()])) >= 3);
}
