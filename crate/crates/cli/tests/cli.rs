use std::path::Path;
use std::process::{Command, Output};

fn codedel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codedel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = codedel(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(text: &str) -> &str {
    text.lines().next().unwrap_or("")
}

#[test]
fn chain_trivial() {
    let text = stdout(&["chain", "--n", "1", "--S", "1"]);
    assert_eq!(
        text,
        "step,received,probability,approx_mean\n0,0,1.000000,0.000000\n1,1,1.000000,1.000000\n"
    );
}

#[test]
fn chain_default_rows_sum_to_one() {
    let text = stdout(&["chain"]);
    let mut totals = vec![0.0; 101];
    let mut last_approx = 0.0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let step: usize = f[0].parse().unwrap();
        totals[step] += f[2].parse::<f64>().unwrap();
        if step == 100 {
            last_approx = f[3].parse().unwrap();
        }
    }
    for t in totals {
        assert!((t - 1.0).abs() < 1e-4, "{t}");
    }
    assert_eq!(last_approx, 50.0);
}

#[test]
fn tradeoff_values() {
    let text = stdout(&["tradeoff", "--S", "1,2", "--n", "inf,64", "--step", "0.5"]);
    assert_eq!(first_line(&text), "S,n,sigma,delta");
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 * 2 * 7);
    for r in rows.iter().filter(|r| r[0] == "1") {
        assert_eq!(r[3], "1.000000");
    }
    let at_two = rows
        .iter()
        .find(|r| r[0] == "2" && r[1] == "inf" && r[2] == "2.000000")
        .unwrap();
    assert_eq!(at_two[3], "1.171573");
}

#[test]
fn tradeoff_rejects_finite_n_with_infinite_sources() {
    let out = codedel(&["tradeoff", "--S", "inf", "--n", "64"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mixture_coarse_grid_header_and_size() {
    let text = stdout(&["mixture", "--step", "64", "--trials", "20"]);
    assert_eq!(first_line(&text), "rln,rs,ldpc,trials,successes,probability");
    assert_eq!(text.lines().count(), 1 + 6);
    assert!(text.contains("\n0,128,0,20,20,1.000000\n"));
}

#[test]
fn mixture_is_reproducible() {
    let args = ["mixture", "--step", "64", "--trials", "30", "--seed", "9"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn overhead_header() {
    let text = stdout(&["overhead", "--trials", "20", "--extra", "2"]);
    assert_eq!(first_line(&text), "extra,trials,successes,probability");
    assert_eq!(text.lines().count(), 1 + 3);
}

#[test]
fn simulate_same_header_and_quick() {
    let text = stdout(&["simulate-same", "--n", "10", "--k", "5", "--trials", "500", "--quick"]);
    assert_eq!(first_line(&text), "step,empirical,exact");
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0], "5");
}

#[test]
fn out_file_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chain.json");
    let path = out.to_str().unwrap();
    let res = codedel(&["chain", "--n", "3", "--S", "2", "--format", "json", "--out", path]);
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    let table: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(table[0]["step"], 0);
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("chain.json.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "chain");
    assert_eq!(manifest["parameters"]["n"], 3);
    assert_eq!(manifest["parameters"]["S"], 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "n = 4\nS = 3\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = stdout(&["chain", "--config", cfg]);
    assert_eq!(from_file.lines().last().unwrap().split(',').next(), Some("12"));
    let overridden = stdout(&["chain", "--config", cfg, "--n", "2"]);
    assert_eq!(overridden.lines().last().unwrap().split(',').next(), Some("6"));
}

#[test]
fn config_codes_with_alist() {
    let dir = tempfile::tempdir().unwrap();
    let alist = "7 3\n3 4\n1 1 2 1 2 2 3\n4 4 4\n1 0\n2 0\n1 2\n3 0\n1 3\n2 3\n1 2 3\n1 3 5 7\n2 3 6 7\n4 5 6 7\n";
    std::fs::write(dir.path().join("h.alist"), alist).unwrap();
    let cfg = dir.path().join("codes.toml");
    std::fs::write(
        &cfg,
        "trials = 10\n\n[[codes]]\nkind = \"ldpc\"\nn = 7\nk = 4\nfield_degree = 1\nalist_path = \"h.alist\"\n\n[[codes]]\nkind = \"rln\"\nn = 7\nk = 4\nfield_degree = 1\nseed = 3\n",
    )
    .unwrap();
    let text = stdout(&["mixture", "--config", cfg.to_str().unwrap(), "--step", "4"]);
    assert_eq!(first_line(&text), "ldpc,rln,trials,successes,probability");
    assert_eq!(text.lines().count(), 1 + 2);
}

#[test]
fn missing_alist_is_an_io_error_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        "[[codes]]\nkind = \"ldpc\"\nn = 7\nk = 4\nalist_path = \"nope.alist\"\n",
    )
    .unwrap();
    let out = codedel(&["mixture", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.alist"));
}

#[test]
fn usage_errors_exit_nonzero_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    for args in [
        vec!["chain", "--n", "0"],
        vec!["overhead", "--mixture", "1,2"],
        vec!["simulate-same", "--k", "60"],
        vec!["bogus"],
    ] {
        let mut args: Vec<&str> = args;
        args.extend(["--out", out.to_str().unwrap()]);
        let res = codedel(&args);
        assert_eq!(res.status.code(), Some(2), "{args:?}");
    }
    assert!(!Path::new(&out).exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}
