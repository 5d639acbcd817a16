use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cauchylike"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cauchylike-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_json(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn solve(dir: &Path, problem: &Value) -> (Output, Option<Value>) {
    let input = write_json(dir, "problem.json", problem);
    let out = dir.join("result.json");
    let _ = std::fs::remove_file(&out);
    let o = run(bin().arg("solve").arg(&input).arg("--out").arg(&out));
    let res = std::fs::read_to_string(&out)
        .ok()
        .map(|s| serde_json::from_str(&s).unwrap());
    (o, res)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ones(n: usize) -> Vec<Value> {
    (0..n).map(|_| json!([[1.0, 0.0]])).collect()
}

#[test]
fn one_by_one_toeplitz() {
    let dir = scratch("t1x1");
    let (o, res) = solve(
        &dir,
        &json!({
            "version": "0.1.0", "structure": "toeplitz",
            "payload": {"col": [[2.0, 0.0]], "row": [[2.0, 0.0]]},
            "rhs": [[[4.0, 0.0]]], "piv": 1
        }),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let res = res.unwrap();
    assert_eq!(res["solution"], json!([[[2.0, 0.0]]]));
    assert!(res["version"].is_string() && res["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(res["permutations"]["row"], json!([0]));
}

#[test]
fn generator_column_mismatch_exits_2() {
    let dir = scratch("mismatch");
    let (o, res) = solve(
        &dir,
        &json!({
            "version": "0.1.0", "structure": "cauchy_like",
            "payload": {"t": [[1,0],[2,0]], "s": [[0,0],[5,0]],
                        "g": [[[1,0],[1,0]],[[1,0],[1,0]]], "h": [[[1,0]],[[1,0]]]},
            "rhs": [[[1,0]],[[1,0]]], "piv": 1
        }),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("payload.h"), "{}", stderr(&o));
    assert!(res.is_none());
}

#[test]
fn malformed_json_and_missing_file_exit_2() {
    let dir = scratch("malformed");
    let p = dir.join("bad.json");
    std::fs::write(&p, "{ not json").unwrap();
    assert_eq!(run(bin().arg("solve").arg(&p)).status.code(), Some(2));
    assert_eq!(
        run(bin().arg("solve").arg(dir.join("absent.json")))
            .status
            .code(),
        Some(2)
    );
    let o = run(bin().args(["solve", "x.json", "--piv", "9"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hilbert_12_warns_but_succeeds() {
    let n = 12;
    let t: Vec<Value> = (1..=n).map(|i| json!([i as f64, 0.0])).collect();
    let s: Vec<Value> = (1..=n).map(|j| json!([1.0 - j as f64, 0.0])).collect();
    let dir = scratch("hilbert");
    let (o, res) = solve(
        &dir,
        &json!({
            "version": "0.1.0", "structure": "cauchy_like",
            "payload": {"t": t, "s": s, "g": ones(n), "h": ones(n)},
            "rhs": ones(n), "piv": 1
        }),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let res = res.unwrap();
    assert_eq!(res["ill_conditioned"], json!(true));
    assert!(res["rcond_u"].as_f64().unwrap() < f64::EPSILON);
}

#[test]
fn singular_system_exits_1() {
    let dir = scratch("singular");
    // two equal left knots with rank one: equal rows
    let (o, _) = solve(
        &dir,
        &json!({
            "version": "0.1.0", "structure": "cauchy_like",
            "payload": {"t": [[1,0],[1,0]], "s": [[0,0],[-1,0]], "g": ones(2), "h": ones(2)},
            "rhs": ones(2), "piv": 1
        }),
    );
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn gen_is_deterministic_and_solvable() {
    let dir = scratch("gen");
    let gen = |seed: &str, name: &str| {
        let p = dir.join(name);
        let o = run(bin()
            .args([
                "gen",
                "cauchy_like",
                "--n",
                "40",
                "--r",
                "3",
                "--d",
                "2",
                "--seed",
                seed,
            ])
            .arg("--out")
            .arg(&p));
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(&p).unwrap()
    };
    let a = gen("7", "a.json");
    let b = gen("7", "b.json");
    let c = gen("8", "c.json");
    assert_eq!(a, b);
    assert_ne!(a, c);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["generator"]["name"], json!("splitmix64"));
    assert_eq!(v["seed"], json!(7));
    let o = run(bin()
        .arg("solve")
        .arg(dir.join("a.json"))
        .arg("--out")
        .arg(dir.join("r.json")));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("r.json")).unwrap()).unwrap();
    assert_eq!(r["solution"].as_array().unwrap().len(), 40);
    assert_eq!(r["solution"][0].as_array().unwrap().len(), 2);
}

#[test]
fn every_structure_round_trips_through_gen_and_solve() {
    let dir = scratch("kinds");
    for kind in [
        "cauchy_like",
        "toeplitz",
        "toeplitz_like",
        "toeplitz_hankel",
        "toeplitz_hankel_like",
        "vandermonde",
        "vandermonde_like",
    ] {
        let p = dir.join(format!("{kind}.json"));
        let o = run(bin()
            .args(["gen", kind, "--n", "16", "--seed", "3"])
            .arg("--out")
            .arg(&p));
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        for piv in ["0", "1", "4", "5"] {
            let o = run(bin()
                .arg("solve")
                .arg(&p)
                .args(["--piv", piv])
                .arg("--out")
                .arg(dir.join("r.json")));
            assert_eq!(o.status.code(), Some(0), "{kind} piv {piv}: {}", stderr(&o));
        }
    }
}

#[test]
fn gen_rejects_unknown_structure() {
    let o = run(bin().args(["gen", "hankel", "--n", "4"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_writes_one_row_per_size() {
    let dir = scratch("bench");
    let csv = dir.join("bench.csv");
    let o = run(bin()
        .args(["bench", "toeplitz", "--sizes", "256,512", "--reps", "3"])
        .arg("--out")
        .arg(&csv));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,median_seconds,error,ratio");
    assert_eq!(lines.len(), 3);
    for l in &lines[1..] {
        let f: Vec<&str> = l.split(',').collect();
        assert!(f[1].parse::<f64>().unwrap() > 0.0);
        assert!(f[2].parse::<f64>().unwrap() < 1e-8);
    }
    assert!(lines[2].split(',').nth(3).unwrap().parse::<f64>().is_ok());
    let o = run(bin().args(["bench", "toeplitz", "--sizes", "512,256"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repro_writes_csv_and_rejects_unknown_ids() {
    let dir = scratch("repro");
    let o = run(bin()
        .args(["repro", "t5", "--sizes", "64"])
        .arg("--out")
        .arg(&dir));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.join("t5.csv")).unwrap();
    assert!(text.starts_with("method,error_sb,error_alt"));
    let o = run(bin()
        .args(["repro", "t6", "--sizes", "30"])
        .arg("--out")
        .arg(&dir));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let last = std::fs::read_to_string(dir.join("t6.csv"))
        .unwrap()
        .lines()
        .last()
        .unwrap()
        .to_owned();
    assert!(last.ends_with("true,true"), "{last}");
    assert_eq!(run(bin().args(["repro", "t7"])).status.code(), Some(2));
}
