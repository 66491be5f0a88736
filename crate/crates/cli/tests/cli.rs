use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pe2odd")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = run(&a);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}")))
}

#[test]
fn targets_counts() {
    let (code, v) = json(&["targets", "--lambda", "5,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["total"], 8);
    let (_, v) = json(&["targets", "--lambda", "-3,0"]);
    assert_eq!(v["result"]["total"], 11);
    let (code, _, err) = run(&["targets", "--lambda", "2,0"]);
    assert_eq!(code, 1);
    assert!(err.contains("not in an odd block"), "{err}");
}

#[test]
fn multiplicity_rows() {
    let (code, v) = json(&["multiplicities", "--amax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["disagreements"], 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    let row = |a: i64| -> Vec<&serde_json::Value> { rows.iter().filter(|r| r["lambda"]["a"] == a).collect() };
    let minus_one = row(-1);
    let twos: Vec<_> = minus_one.iter().filter(|r| r["closed_form"] == 2).collect();
    assert_eq!(twos.len(), 1);
    assert_eq!(twos[0]["mu"], serde_json::json!({"a": -3, "b": -1}));
    let one = row(1);
    assert_eq!(one.len(), 7);
    assert!(one.iter().all(|r| r["closed_form"] == 1));
}

#[test]
fn relations_and_perturbation() {
    let (code, v) = json(&["verify-relations", "--amax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["failures"], 0);
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 29);
    let (code, v) = json(&["verify-relations", "--amax", "5", "--perturb-beta", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["failures"], 1);
}

#[test]
fn downstairs_pass() {
    let (code, v) = json(&["downstairs", "--amax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["failures"], 0);
}

#[test]
fn ext_entries() {
    let (code, v) = json(&["ext", "--mu", "5,0", "--n", "1"]);
    assert_eq!(code, 0);
    let e = v["result"]["entries"].as_array().unwrap();
    assert_eq!(e.len(), 3);
    assert!(e.iter().all(|x| x["computed"] == 1 && x["formula"] == 1));
    let (code, v) = json(&["ext", "--mu", "-7,0", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["entries"].as_array().unwrap().len(), 7);
}

#[test]
fn koszul_pass_and_mutation() {
    let (code, out, _) = run(&["koszul", "--amax", "9", "--n", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("Koszul check: PASS"));
    let (code, v) = json(&["koszul", "--amax", "3", "--n", "3", "--drop-qp", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["passed"], false);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["ext", "--mu", "5,0", "--window", "-7,7,0,3"]);
    assert_eq!(code, 3);
    assert!(err.contains("hint"));
    let (code, _, _) = run(&["ext", "--mu", "5,0", "--window", "-8,7,0,3"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["ext"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn deterministic_output() {
    for args in [&["koszul", "--amax", "5", "--n", "3", "--format", "csv"][..], &["multiplicities", "--amax", "7"][..]] {
        let (_, a, _) = run(args);
        let (_, b, _) = run(args);
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}

#[test]
fn out_file_and_exports() {
    let dir = std::env::temp_dir().join(format!("pe2odd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("ext.csv");
    let (code, out, _) = run(&["ext", "--mu", "1,0", "--n", "2", "--all", "--format", "csv", "--out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("mu_a,mu_b"));
    let (code, v) = json(&["resolve", "--mu", "1,0", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 3);
    let (code, v) = json(&["presentation", "--window", "-5,5,0,2"]);
    assert_eq!(code, 0);
    assert!(!v["result"]["arrows"].as_array().unwrap().is_empty());
    let (code, _, _) = run(&["resolve", "--mu", "1,0"]);
    assert_eq!(code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
