use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn roofkit(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_roofkit")).args(args).output().expect("roofkit runs");
    Out {
        code: o.status.code().expect("exit code"),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(include_str!("../schema/envelope.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Run with `--json`, validate against the shipped schema and check that the
/// document survives a serialize/parse round trip.
fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = roofkit(&full);
    let v: Value = serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", o.stdout));
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    let back: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
    (o.code, v)
}

fn tmp_dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("roofkit-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

/// `dim V_λ` for GL(n) by the hook-content formula on the partition with
/// `λ_i` columns of height i.
fn hook_content(n: usize, fundamental: &[i64]) -> u64 {
    let mut rows = vec![0usize; n];
    for (i, &c) in fundamental.iter().enumerate() {
        for r in rows.iter_mut().take(i + 1) {
            *r += c as usize;
        }
    }
    let cols = |j: usize| rows.iter().filter(|&&r| r > j).count();
    let (mut num, mut den) = (1u128, 1u128);
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..r {
            num *= (n + j - i) as u128;
            den *= ((r - j - 1) + (cols(j) - i - 1) + 1) as u128;
        }
    }
    (num / den) as u64
}

#[test]
fn hook_content_sanity() {
    assert_eq!(hook_content(5, &[0, 1, 1, 0]), 75);
    assert_eq!(hook_content(3, &[1, 1]), 8);
    assert_eq!(hook_content(6, &[1, 0, 0, 0, 1]), 35);
}

#[test]
fn cohomology_examples() {
    let o = roofkit(&["cohomology", "A3:x1", "-4", "0", "0"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("H^3 = C^1"), "{}", o.stdout);

    let (code, v) = json(&["cohomology", "A4:x2,x3", "O(1,1)"]);
    assert_eq!(code, 0);
    let h = &v["result"]["cohomology"];
    assert_eq!(h.as_array().unwrap().len(), 1);
    assert_eq!(h[0]["degree"], 0);
    assert_eq!(h[0]["dim"].as_u64().unwrap(), hook_content(5, &[0, 1, 1, 0]));
    let (_, bare) = json(&["cohomology", "A4:x2,x3", "1", "1"]);
    assert_eq!(bare["result"], v["result"]);

    let (_, v) = json(&["cohomology", "G2:x1,x2", "0", "0"]);
    assert_eq!(v["result"]["cohomology"][0]["degree"], 0);
    assert_eq!(v["result"]["cohomology"][0]["dim"], 1);
}

#[test]
fn input_errors_exit_three() {
    let o = roofkit(&["cohomology", "A4:x7", "0"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("position"), "{}", o.stderr);
    let o = roofkit(&["cohomology", "A4:x2", "0", "-1", "0", "0"]);
    assert_eq!(o.code, 0);
    let o = roofkit(&["cohomology", "A4:x2", "-1", "0", "0", "0"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("not P-dominant") && o.stderr.contains("node 1"), "{}", o.stderr);
    let (code, v) = json(&["ext", "--roof", "C2", "Z(0,0)", "O"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "input_error");
    assert!(v["result"].is_null());
    assert_eq!(roofkit(&["no-such-command"]).code, 3);
    assert_eq!(roofkit(&["--help"]).code, 0);
}

#[test]
fn ext_on_hyperplane() {
    let o = roofkit(&["ext", "--roof", "C2", "--on-M", "O(1,0)", "O(-1,1)"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("= C[-1]\nstatus exact"), "{}", o.stdout);
    let (_, v) = json(&["ext", "--roof", "C2", "--on-M", "O(1,0)", "O(-1,1)"]);
    let ext = &v["result"]["report"]["ext"];
    assert_eq!(ext["status"], "exact");
    assert_eq!(ext["dims"][0]["degree"], 1);
    assert_eq!(ext["dims"][0]["dim"], 1);
}

#[test]
fn ambiguous_status_is_reported() {
    let (code, v) = json(&["ext", "--roof", "G2", "--on-M", "S(1,1)", "O(0,1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["ext"]["status"], "ambiguous");
}

#[test]
fn dagger_and_lso_reports() {
    let (code, v) = json(&["dagger", "--roof", "AG4", "O(1,1)", "Q3(0,2)"]);
    let holds = v["result"]["report"]["holds"].as_bool().unwrap();
    assert_eq!(code, if holds { 0 } else { 2 });
    // O(-1,-1) is acyclic on G2/B, so O is L-semiorthogonal to itself there.
    let (code, v) = json(&["lso", "--roof", "G2", "O", "O"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["holds"], true);
    let (code, v) = json(&["lso", "--roof", "C2", "O", "O(1,1)"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["report"]["witness"]["dims"][0]["degree"], 0);
}

#[test]
fn verify_single_roofs() {
    assert_eq!(roofkit(&["verify", "C2"]).code, 0);
    let o = roofkit(&["verify", "D5"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("no script: no full exceptional collection known"), "{}", o.stderr);
}

#[test]
fn verify_all_writes_certificates() {
    let dir = tmp_dir("certs");
    let (code, v) = json(&["verify", "all", "-o", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let runs = v["result"]["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 11);
    for r in runs {
        assert_eq!(r["verified"], true);
        let text = std::fs::read_to_string(r["path"].as_str().unwrap()).unwrap();
        let file: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(file, r["certificate"]);
    }
    let names: Vec<String> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names.len(), 11);
    assert!(names.iter().all(|n| n.ends_with(".json") && !n.starts_with('.')));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_script_files() {
    let shipped = concat!(env!("CARGO_MANIFEST_DIR"), "/../mutation-ledger/scripts/C2.mut");
    assert_eq!(roofkit(&["verify", "--script", shipped]).code, 0);

    // A swap of a non-orthogonal pair fails; the partial certificate is kept.
    let dir = tmp_dir("broken");
    std::fs::create_dir_all(&dir).unwrap();
    let script = dir.join("broken.mut");
    std::fs::write(&script, "roof C2\nstart CY O(1,0) O(-1,1)\ntarget CY O(-1,1) O(1,0)\nswap 2\n").unwrap();
    let out = dir.join("out");
    let o = roofkit(&["verify", "--script", script.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.code, 2, "{}", o.stdout);
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(out.join("broken.json")).unwrap()).unwrap();
    assert_eq!(cert["verified"], false);
    assert!(o.stdout.contains("FAILED"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn eightfold_command() {
    let (code, v) = json(&["eightfold"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["h1"], 1014);
    assert_eq!(v["result"]["h7"], 2);
    let o = roofkit(&["eightfold"]);
    assert!(o.stdout.contains("H^1(X, T_X) = C^1014"), "{}", o.stdout);
}

#[test]
fn chambers_command() {
    let (code, v) = json(&["chambers", "3", "+", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["feasible"], false);
    assert_eq!(v["result"]["contradiction"]["verified"], true);
    let (_, v) = json(&["chambers", "3", "-", "2"]);
    assert_eq!(v["result"]["feasible"], true);
    assert_eq!(v["result"]["witness"].as_array().unwrap().len(), 5);

    let dir = tmp_dir("system");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("sys.txt");
    std::fs::write(&f, "vars x y\nx + y > 1/2\nx <= 0\ny <= 0\n").unwrap();
    let (_, v) = json(&["chambers", "--file", f.to_str().unwrap()]);
    assert_eq!(v["result"]["feasible"], false);
    std::fs::write(&f, "vars x y\nx + y > 1/2 # comment\nx <= 0\n").unwrap();
    let o = roofkit(&["chambers", "--file", f.to_str().unwrap()]);
    assert!(o.stdout.contains("feasible\nwitness"), "{}", o.stdout);
    std::fs::write(&f, "vars x\nx + z > 0\n").unwrap();
    let o = roofkit(&["chambers", "--file", f.to_str().unwrap()]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_dump_reloads() {
    let o = roofkit(&["catalog"]);
    assert_eq!(o.code, 0);
    let records = roof_catalog::load_catalog(&o.stdout).unwrap();
    assert!(!records.is_empty());
    let (_, v) = json(&["catalog"]);
    assert_eq!(v["result"]["text"], o.stdout);
    let (_, v) = json(&["catalog", "--max-param", "5"]);
    assert!(v["result"]["roofs"].as_array().unwrap().len() > 11);
}

#[test]
fn resource_bound_is_enforced() {
    let (code, v) = json(&["--max-weights", "1", "ext", "--roof", "AG4", "Q3", "Q3"]);
    assert_eq!(code, 3, "{v}");
    assert!(v["error"].as_str().unwrap().contains("exceeds the bound 1"));
    assert_eq!(v["resources"]["max_weights"], 1);
    let (code, _) = json(&["--max-weights", "2", "ext", "--roof", "AG4", "Q3", "Q3"]);
    assert_eq!(code, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Output on random weights validates, and the exit code follows
    /// P-dominance.
    #[test]
    fn random_weights_validate(a in -4i64..4, b in -4i64..4, c in -4i64..4, d in -4i64..4) {
        let args = ["cohomology", "A4:x2,x3", &a.to_string(), &b.to_string(), &c.to_string(), &d.to_string()];
        let (code, v) = json(&args);
        let dominant = a >= 0 && d >= 0;
        prop_assert_eq!(code, if dominant { 0 } else { 3 });
        if dominant {
            let h = v["result"]["cohomology"].as_array().unwrap();
            prop_assert!(h.len() <= 1);
        }
    }
}
