use permclass::cli::run;
use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permclass").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Out { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn json(out: &Out) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn table_row_six() {
    let out = cli(&["table", "--pattern", "1324", "--max-n", "6", "--engine", "brute", "--color", "never"]);
    assert_eq!(out.code, 0);
    let row6 = out.stdout.lines().find(|l| l.trim_start().starts_with("6 ")).unwrap();
    let cells: Vec<&str> = row6.split_whitespace().collect();
    assert_eq!(&cells[1..8], ["1", "2", "5", "10", "20", "32", "51"]);
}

#[test]
fn table_of_132_stabilises() {
    let out = cli(&["table", "--pattern", "132", "--max-n", "8", "--engine", "brute", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let count = |n: u64, k: u64| {
        v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["n"] == n && e["k"] == k)
            .map(|e| e["count"].as_str().unwrap().to_string())
    };
    for (k, p) in [1, 1, 2, 3, 5, 7, 11].iter().enumerate() {
        assert_eq!(count(8, k as u64).as_deref(), Some(p.to_string().as_str()));
    }
}

#[test]
fn empty_table() {
    let out = cli(&["table", "--max-n", "0", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 3);
}

#[test]
fn table_cross_check_and_out_file() {
    let dir = std::env::temp_dir().join(format!("permclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("t.csv");
    let path = file.to_str().unwrap();
    let out = cli(&["table", "--max-n", "8", "--budget", "10", "--cross-check", "--format", "csv", "--out", path]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let written = std::fs::read_to_string(&file).unwrap();
    assert_eq!(written, out.stdout);
    assert!(written.starts_with("# permclass-table v1\n# pattern=1324 engine=pruned budget=10\nn,k,count\n"));

    let scan = cli(&["conjectures", "--which", "monotone", "--table", path]);
    assert_eq!(scan.code, 0);
    assert_eq!(json(&scan)["decreases"], serde_json::json!([]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&[]).code, 2);
    assert_eq!(cli(&["table"]).code, 2);
    assert_eq!(cli(&["table", "--max-n", "3", "--bogus"]).code, 2);
    assert_eq!(cli(&["table", "--max-n", "3", "--engine", "magic"]).code, 2);
    assert_eq!(cli(&["classify", "1223"]).code, 2);
    assert_eq!(cli(&["inject", "abc"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
}

#[test]
fn help_and_version_exit_zero() {
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("table"));
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn verify_commands() {
    for which in ["removepoint", "lemmas", "injection", "difference"] {
        let out = cli(&["verify", "--which", which, "--max-n", "8"]);
        assert_eq!(out.code, 0, "{which}: {}", out.stdout);
        let v = json(&out);
        assert_eq!(v["ok"], true);
        assert!(v.get("first_violation").is_none());
    }
}

#[test]
fn removepoint_lists_boundary_counterexample() {
    let v = json(&cli(&["verify", "--which", "removepoint", "--max-n", "7"]));
    let seven = &v["reports"][6];
    assert_eq!(seven["n"], 7);
    assert_eq!(seven["k_max"], 7);
    assert_eq!(seven["violations"], serde_json::json!([]));
    assert!(seven["boundary_neither"].as_array().unwrap().contains(&Value::from("3612745")));
}

#[test]
fn classify_outputs() {
    assert_eq!(cli(&["classify", "245169783"]).stdout.trim(), "AlmostDecomposable witnesses [del-min, del-last-entry]");
    assert_eq!(cli(&["classify", "3612745"]).stdout.trim(), "Neither");
    assert_eq!(cli(&["classify", "2315674"]).stdout.trim(), "Decomposable components [231, 2341]");
    let v = json(&cli(&["classify", "245169783", "--format", "json"]));
    assert_eq!(v["class"], "AlmostDecomposable");
}

#[test]
fn inject_outputs() {
    let out = cli(&["inject", "35126874"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "341267985 (f, case rc)");
    let v = json(&cli(&["inject", "2314", "--format", "json"]));
    assert_eq!(v["map"], "g");
    assert_eq!(v["image"], "23145");

    let outside = cli(&["inject", "3612745"]);
    assert_eq!(outside.code, 1);
    assert!(outside.stdout.is_empty());
    assert_eq!(cli(&["inject", "2314", "--map", "f"]).code, 1);
}

#[test]
fn remainder_split() {
    let out = cli(&["remainder", "--n", "7", "--k", "7"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let size = |c: &str| v["classes"][c].as_array().map_or(0, Vec::len);
    assert_eq!((size("a"), size("b"), size("d")), (2, 4, 4));
    assert!(v["classes"].get("c").is_none());
}

#[test]
fn conjectures_from_built_table() {
    let out = cli(&["conjectures", "--which", "unimodal", "--max-n", "9", "--engine", "brute"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["unimodal"] == true));
    assert_eq!(rows[3]["first_log_concavity_failure"], 1);

    let b = json(&cli(&["conjectures", "--which", "b-series", "--max-n", "13", "--budget", "17"]));
    assert_eq!(b["rows"][0]["second_difference_start"], "12");
    assert!(b["rows"][0]["empirical"].as_array().unwrap().iter().any(|e| e["n"] == 10 && e["b"] == "4"));

    let thin = json(&cli(&["conjectures", "--which", "b-series", "--max-n", "6"]));
    assert_eq!(thin["verdict"], "insufficient data");
}

#[test]
fn corrupt_table_is_reported() {
    let dir = std::env::temp_dir().join(format!("permclass-corrupt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.csv");
    std::fs::write(&file, "# permclass-table v1\n# pattern=1324 engine=pruned budget=full\nn,k,count\n3,1,7\n").unwrap();
    let out = cli(&["conjectures", "--which", "monotone", "--table", file.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn diff_in_regime_matches_closed_form() {
    let out = cli(&["diff", "--max-n", "10", "--budget", "13", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(json(&out)["mismatches"], 0);
}

#[test]
fn bound_values() {
    assert_eq!(cli(&["bound", "--c", "1"]).stdout.trim(), "13.0020");
    assert_eq!(cli(&["bound", "--c", "21/23"]).stdout.trim(), "11.6004");
    assert_eq!(cli(&["bound", "--c", "0"]).code, 2);
    assert_eq!(cli(&["bound", "--c", "3/2"]).code, 2);
    assert_eq!(cli(&["bound", "--c", "x"]).code, 2);
}
