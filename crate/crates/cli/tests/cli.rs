use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flipdepth"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().expect("binary runs");
    parse(out)
}

fn parse(out: Output) -> (i32, Value) {
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(stdout.trim()).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().unwrap(), v)
}

#[test]
fn depth_of_germ() {
    let (code, v) = run(&["depth", r#"{"r":5,"beta":1,"support":[[0,2],[1,1]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"dep": 9, "exact": true}));
}

#[test]
fn depth_of_classes() {
    let (_, v) = run(&["depth", r#"{"class":"cyclic","r":7,"weights":[1,6,3]}"#]);
    assert_eq!(v, json!({"dep": 6, "exact": true}));
    let (_, v) = run(&["depth", r#"{"class":"cE2"}"#]);
    assert_eq!(v["upper"], json!(7));
    assert_eq!(v["exact"], json!(false));
    let (_, v) = run(&["depth", r#"{"class":"gorenstein"}"#]);
    assert_eq!(v, json!({"dep": 0, "exact": true}));
}

#[test]
fn basket_of_cax4() {
    let (code, v) = run(&["basket", r#"{"class":"cAx4","k":3}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"], json!([[1, 4, 1], [1, 2, 2]]));
    assert_eq!(v["aw"], json!(3));
    assert_eq!(v["xi"], json!(8));
}

#[test]
fn flop_violation_exits_2() {
    let (code, v) = run(&[
        "trace",
        r#"{"steps":[{"kind":"Flop","before":3,"after":2}]}"#,
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["type"], json!("RuleViolation"));
    assert_eq!(v["error"]["index"], json!(0));
}

#[test]
fn valid_trace() {
    let t = r#"{"steps":[{"kind":"Flip","before":5,"after":4},{"kind":"Flop","before":4,"after":4},{"kind":"DivToPoint","before":4,"after":3}]}"#;
    let (code, v) = run(&["trace", t]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn schema_errors_exit_1() {
    let (code, v) = run(&["depth", r#"{"r":5}"#]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("schema"));
    let (code, _) = run(&["trace", "{not json"]);
    assert_eq!(code, 1);
    let (code, _) = run(&["trace", "/nonexistent/trace.json"]);
    assert_eq!(code, 1);
}

#[test]
fn stdin_and_file_input() {
    let mut child = bin()
        .args(["basket", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"class":"cD2","k":3}"#)
        .unwrap();
    let (code, v) = parse(child.wait_with_output().unwrap());
    assert_eq!(code, 0);
    assert_eq!(v["entries"], json!([[1, 2, 3]]));

    let path = std::env::temp_dir().join(format!("flipdepth-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"case":"E11"}"#).unwrap();
    let (code, v) = run(&["rr", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(v["depth_check"]["dep_y_min"], json!(6));
    assert_eq!(v["depth_check"]["dep_x_upper"], json!(7));
}

#[test]
fn resolve_respects_limit_env() {
    let germ = r#"{"r":5,"beta":1,"support":[[0,2],[1,1]]}"#;
    let (code, v) = run(&["resolve", germ]);
    assert_eq!(code, 0);
    assert_eq!(v["dep"], json!(9));
    let out = bin()
        .args(["resolve", germ])
        .env("DEPTH_SEARCH_LIMIT", "1")
        .output()
        .unwrap();
    let (code, v) = parse(out);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["type"], json!("SearchLimitExceeded"));
}

#[test]
fn blowup_lists_all_splits() {
    let (code, v) = run(&[
        "blowup",
        r#"{"germ":{"r":5,"beta":1,"support":[[0,2],[1,1]]}}"#,
    ]);
    assert_eq!(code, 0);
    let splits: Vec<(i64, i64)> = v["blowups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| (b["r1"].as_i64().unwrap(), b["r2"].as_i64().unwrap()))
        .collect();
    assert_eq!(splits, vec![(1, 9), (6, 4)]);
    let (code, v) = run(&[
        "blowup",
        r#"{"germ":{"r":5,"beta":1,"support":[[0,2],[1,1]]},"r1":2,"r2":8}"#,
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["type"], json!("InvalidSplit"));
}

#[test]
fn neighborhood_and_rr() {
    let (_, v) = run(&["en", r#"{"case":"ExceptionalIAIA","r":5,"a2":3}"#]);
    assert_eq!(v["ky_cy"], json!("0"));
    assert_eq!(v["nonpositive"], json!(true));
    let (code, _) = run(&["en", r#"{"case":"ExceptionalIAIA","r":5,"a2":3,"r1":3}"#]);
    assert_eq!(code, 2);
    let (_, v) = run(&["rr", r#"{"case":"E1_a4","rprime":9}"#]);
    assert_eq!(v["aw_bound"], json!(5));
    assert_eq!(v["delta_at_bound"], json!("1"));
    let (_, v) = run(&[
        "rr",
        r#"{"a_over_n":"1","e3":"1/4","basket_y":[[1,8,2]],"basket_x":[]}"#,
    ]);
    assert_eq!(v["meets_threshold"], json!(true));
}

#[test]
fn o3_both_cases() {
    let (code, v) = run(&[
        "o3",
        r#"{"case":"A","a":3,"d":1,"alpha":2,"suppA":[[2,0]],"suppB":[]}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["depth_identity"],
        json!({"r": 5, "dep_x_upper": 9, "dep_y": 10, "check": true})
    );
    assert_eq!(v["stages"].as_array().unwrap().len(), 4);
    let (code, v) = run(&[
        "o3",
        r#"{"case":"B","a":3,"d":1,"suppA":[[3,0]],"depQ3":2}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["depth_identity"]["dep_x_upper"], json!(17));
    assert_eq!(v["depth_identity"]["dep_y"], json!(18));
    let (code, v) = run(&[
        "o3",
        r#"{"case":"A","a":3,"d":1,"alpha":2,"suppA":[[2,0],[0,5]]}"#,
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["type"], json!("ConstraintViolation"));
}

#[test]
fn text_output() {
    let out = bin()
        .args(["--output", "text", "basket", r#"{"class":"cAx4","k":1}"#])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("aw: 1"));
    assert!(text.contains("entries: [[1,4,1]]"));
}

#[test]
fn reports_are_stable_and_reparse() {
    let args = ["resolve", r#"{"r":4,"beta":1,"support":[[0,2],[2,0]]}"#];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(
        serde_json::to_string(&v).unwrap().trim(),
        String::from_utf8(a).unwrap().trim()
    );
}

#[test]
fn verify_small_ranges() {
    let out = bin()
        .args(["verify", "--criterion", "1", "--cyclic-max-r", "8"])
        .output()
        .unwrap();
    let (code, v) = parse(out);
    assert_eq!(code, 0);
    assert_eq!(v["criteria"][0]["cases"], json!(1 + 2 + 2 + 4 + 2 + 6 + 4));
    let out = bin()
        .args(["verify", "--criterion", "8"])
        .env("FLIPDEPTH_LEDGER_TRACES", "50")
        .output()
        .unwrap();
    let (code, v) = parse(out);
    assert_eq!(code, 0);
    assert_eq!(v["criteria"][0]["cases"], json!(50));
    let (code, _) = run(&["verify", "--criterion", "9"]);
    assert_eq!(code, 1);
}
