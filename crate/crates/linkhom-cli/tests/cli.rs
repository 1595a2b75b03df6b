use std::path::PathBuf;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linkhom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn file(name: &str, text: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn decide_identical_files() {
    let a = file("same.vec", "n=4\ny_12=1\ny_234=-2\n");
    let o = run(&["decide", &a, &a]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "EQUIVALENT\n\n");
}

#[test]
fn decide_prints_a_replayable_witness() {
    let a = file("w_a.vec", "n=4\ny_234=1\n");
    let b = file("w_b.vec", "n=4\ny_234=1\ny_1234=7\n");
    let o = run(&["decide", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("EQUIVALENT"));
    let word = lines.next().unwrap();
    assert_eq!(word, "xs_12^7");
    let replay = run(&["act", &a, word]);
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(stdout(&replay), "n=4\ny_234=1\ny_1234=7\n");
}

#[test]
fn decide_not_equivalent() {
    let a = file("ne_a.vec", "n=4\n");
    let b = file("ne_b.vec", "n=4\ny_1324=1\n");
    let o = run(&["decide", &a, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NOT-EQUIVALENT\nfailed stage 3\n");

    let j = run(&["--json", "decide", &a, &b]);
    assert_eq!(j.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["failed_stage"], 3);
    assert!(v["witness"].is_null());
}

#[test]
fn act_fixes_zero() {
    let z = file("zero5.vec", "n=5\n");
    let o = run(&["act", &z, "x_12^3 [x_21,x_31]^-2 cx_14 xs_53^5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=5\n");
}

#[test]
fn act_reads_word_files() {
    let v = file("wf.vec", "n=4\ny_12=1\n");
    let w = file("w.txt", "x_13\nx_23^2\n");
    let o = run(&["--json", "act", &v, "--word-file", &w]);
    assert_eq!(o.status.code(), Some(0));
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["n"], 4);
    assert_eq!(j["values"]["y_12"], 1);
}

#[test]
fn diagnostics_name_file_line_and_token() {
    let bad = file("bad.vec", "n=4\n# comment\ny_132=1\n");
    let ok = file("ok.vec", "n=4\n");
    let o = run(&["decide", &ok, &bad]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("bad.vec:3:") && e.contains("y_132"), "{e}");

    let o = run(&["act", &ok, "x_12 x_99^2"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("x_99"), "{e}");

    let w = file("bad_word.txt", "x_12\nx_13^\n");
    let o = run(&["act", &ok, "--word-file", &w]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("bad_word.txt:2:"), "{e}");

    let o = run(&["decide", &ok, "/nonexistent/x.vec"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/x.vec"));
}

#[test]
fn usage_errors_exit_two() {
    let ok = file("u.vec", "n=4\n");
    let five = file("u5.vec", "n=5\n");
    for args in [
        vec!["decide", ok.as_str()],
        vec!["frobnicate"],
        vec!["--n", "5", "normal-form", ok.as_str()],
        vec!["--n", "6", "tables", "--list"],
        vec!["decide", ok.as_str(), five.as_str()],
        vec!["tables", "--show", "no_such_table"],
        vec!["verify", "--suite", "no-such-check"],
        vec!["act", ok.as_str()],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn normal_form_and_witness() {
    let v = file("nf.vec", "n=4\ny_234=1\ny_1234=7\n");
    let o = run(&["normal-form", &v, "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n=4\ny_234=1\n# witness: "), "{out}");
}

#[test]
fn orbit_is_sorted_and_deterministic() {
    let v = file("orb.vec", "n=4\ny_234=1\n");
    let a = run(&["orbit", &v, "--bound", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&run(&["orbit", &v, "--bound", "2"])));
    let out = stdout(&a);
    let rows: Vec<Vec<i64>> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 25);
    assert!(rows.windows(2).all(|w| w[0] < w[1]));
    assert!(out.ends_with("# 25 members\n"));

    let j = run(&["--json", "orbit", &v, "--bound", "2", "--cap", "3"]);
    let j: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(j["truncated"], true);
}

#[test]
fn tables_list_and_show() {
    let o = run(&["tables", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 10);
    assert_eq!(stdout(&run(&["--n", "4", "tables", "--list"])).lines().count(), 4);
    let o = run(&["tables", "--show", "four_simplified"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[xs_12]"));
    let j = run(&["--json", "tables", "--show", "four_simplified"]);
    let j: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(j["columns"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--suite", "stability"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("stability/n4\tpass"));
    let o = run(&["--json", "verify", "--suite", "tables"]);
    assert_eq!(o.status.code(), Some(0));
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j.as_array().unwrap().len(), 10);
    let o = run(&["verify", "--suite", "simplified"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("simplified/n4/xs_13\tfail"));
}

const GENERATORS: [&str; 6] = ["x_", "xs_", "cx_", "x_", "xs_", "x_"];

fn random_word(n: u8, rng: &mut impl Rng) -> String {
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let prefix = GENERATORS[rng.gen_range(0..GENERATORS.len())];
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..=n);
        while j == i {
            j = rng.gen_range(1..=n);
        }
        parts.push(format!("{prefix}{i}{j}^{}", rng.gen_range(-3..=3)));
    }
    parts.join(" ")
}

/// `act` output fed back to `decide` against its input.
#[test]
fn act_then_decide_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..1000 {
        let n = if t % 4 == 3 { 5 } else { 4 };
        let names = if n == 4 {
            vec!["y_12", "y_13", "y_14", "y_23", "y_24", "y_34", "y_123", "y_234", "y_1234"]
        } else {
            vec!["y_12", "y_13", "y_25", "y_45", "y_123", "y_245", "y_1234", "y_12345"]
        };
        let mut text = format!("n={n}\n");
        for k in names {
            text.push_str(&format!("{k}={}\n", rng.gen_range(-4..=4)));
        }
        let src = file("rt_src.vec", &text);
        let w = random_word(n, &mut rng);
        let o = run(&["act", &src, &w]);
        assert_eq!(o.status.code(), Some(0), "{w}: {}", stderr(&o));
        let dst = file("rt_dst.vec", &stdout(&o));
        let d = run(&["decide", &src, &dst]);
        assert_eq!(d.status.code(), Some(0), "{text} {w}");
    }
}
