use std::path::PathBuf;
use std::process::{Command, Output};

fn hexdomino(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexdomino"))
        .args(args)
        .env_remove("HEXDOMINO_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hexdomino(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn golden_outputs() {
    assert_eq!(stdout(&["enumerate", "--n", "5"]), golden("enumerate_5.txt"));
    assert_eq!(stdout(&["render", "--n", "7", "--tiling", "S1 I3 H6 H7"]), golden("render_7.txt"));
    assert_eq!(
        stdout(&["verify", "--identity", "thm3", "--from", "4", "--to", "5", "--mode", "oracle"]),
        golden("verify_thm3_oracle.jsonl")
    );
    assert_eq!(stdout(&["sequences", "--name", "f", "--from", "0", "--to", "12"]), golden("fibonacci_0_12.txt"));
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--n", "8"]), "108\n");
    assert_eq!(stdout(&["count", "--n", "8", "--classes", "squares-right"]), "16\n");
    // beyond the cap the closed form answers
    assert_eq!(stdout(&["count", "--n", "30"]), "201061985\n");
}

#[test]
fn enumerate_lines_match_count() {
    for classes in ["all", "no-horizontal", "no-squares", "squares-right"] {
        for n in ["0", "7", "12"] {
            let count: usize = stdout(&["count", "--n", n, "--classes", classes]).trim().parse().unwrap();
            let tokens = stdout(&["enumerate", "--n", n, "--classes", classes]);
            let jsonl = stdout(&["enumerate", "--n", n, "--classes", classes, "--format", "jsonl"]);
            assert_eq!(tokens.lines().count(), count, "{classes} {n}");
            assert_eq!(jsonl.lines().count(), count, "{classes} {n}");
            for line in jsonl.lines() {
                let v: serde_json::Value = serde_json::from_str(line).unwrap();
                assert_eq!(v["n"].to_string(), n);
            }
        }
    }
}

#[test]
fn deterministic() {
    let args = ["verify", "--identity", "all", "--from", "0", "--to", "9", "--mode", "oracle", "--expect-mismatch"];
    assert_eq!(hexdomino(&args).stdout, hexdomino(&args).stdout);
    assert_eq!(hexdomino(&["enumerate", "--n", "11"]).stdout, hexdomino(&["enumerate", "--n", "11"]).stdout);
}

#[test]
fn verify_exit_codes() {
    let code = |args: &[&str]| hexdomino(args).status.code();
    assert_eq!(code(&["verify", "--identity", "thm2_num", "--from", "6", "--to", "12"]), Some(0));
    assert_eq!(code(&["verify", "--identity", "thm5_printed", "--from", "3", "--to", "3"]), Some(2));
    assert_eq!(code(&["verify", "--identity", "thm5_printed", "--from", "3", "--to", "3", "--expect-mismatch"]), Some(0));
    assert_eq!(code(&["verify", "--identity", "thm8c_printed", "--from", "2", "--to", "2", "--mode", "oracle"]), Some(2));
    assert_eq!(code(&["verify", "--identity", "all", "--from", "0", "--to", "40"]), Some(2));
    assert_eq!(code(&["verify", "--identity", "all", "--from", "0", "--to", "40", "--expect-mismatch"]), Some(0));
}

#[test]
fn jsonl_records() {
    let out = stdout(&["verify", "--identity", "thm5_printed", "--from", "3", "--to", "3", "--mode", "oracle", "--expect-mismatch"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["lhs"], "21");
    assert_eq!(v["rhs"], "15");
    assert_eq!(v["equal"], false);
    assert_eq!(v["oracle_ok"], true);

    let b = stdout(&["bijection", "--name", "thm2", "--n", "9"]);
    let v: serde_json::Value = serde_json::from_str(b.trim()).unwrap();
    assert_eq!(v["exact"], true);
    assert_eq!(v["outputs"], 2 * v["inputs"].as_u64().unwrap());
}

#[test]
fn usage_errors() {
    let code = |args: &[&str]| hexdomino(args).status.code();
    assert_eq!(code(&[]), Some(1));
    assert_eq!(code(&["count"]), Some(1));
    assert_eq!(code(&["count", "--n", "x"]), Some(1));
    assert_eq!(code(&["render", "--n", "3", "--tiling", "S1 X3"]), Some(1));
    assert_eq!(code(&["render", "--n", "3", "--tiling", "S1 S2"]), Some(1));
    assert_eq!(code(&["verify", "--identity", "thm99", "--from", "1", "--to", "2"]), Some(1));
    assert_eq!(code(&["bijection", "--name", "thm2", "--n", "5"]), Some(1));
    assert_eq!(code(&["bijection", "--name", "thm2", "--n", "5", "--extended"]), Some(0));
}

#[test]
fn cap_from_environment() {
    let run = |cap: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_hexdomino")).args(args).env("HEXDOMINO_MAX_N", cap).output().unwrap()
    };
    assert_eq!(run("10", &["enumerate", "--n", "11"]).status.code(), Some(1));
    assert_eq!(run("10", &["enumerate", "--n", "10"]).status.code(), Some(0));
    assert_eq!(run("10", &["count", "--n", "30"]).stdout, b"201061985\n");
    assert_eq!(run("banana", &["count", "--n", "3"]).status.code(), Some(1));
}
