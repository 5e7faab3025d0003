use meshkit::cli::run;
use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["meshkit", "--json"];
    full.extend_from_slice(args);
    let out = run(full);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::Null))
}

#[test]
fn verdict_on_the_za2_mesh_path() {
    let (code, v) = json(&["verdict", "--quiver", &fixture("za2.quiver"), "--path", "a0,b0"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "in_rad_n_plus_1");
    assert_eq!(v["sectional"], false);
    assert_eq!(v["exact"], true);
}

#[test]
fn mesh_dim_on_za3() {
    let args = ["mesh-dim", "--quiver", &fixture("za3.quiver"), "--from", "(0,2)", "--to", "(1,2)", "--deg", "2"];
    let (code, v) = json(&args);
    assert_eq!(code, 0);
    assert_eq!((v["dim"].as_u64(), v["exact"].as_bool()), (Some(1), Some(true)));
    let mut with_oracle = vec!["--oracle"];
    with_oracle.extend_from_slice(&args);
    let (_, o) = json(&with_oracle);
    assert_eq!(o["dim"], v["dim"]);
    assert_eq!(o["backend"], "oracle");
}

#[test]
fn validate_exit_codes() {
    let (code, v) = json(&["validate", "--quiver", &fixture("corrupted.quiver")]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
    assert_eq!(json(&["validate", "--quiver", &fixture("za3.quiver")]).0, 0);
    assert_eq!(json(&["validate", "--quiver", &fixture("loop.quiver")]).0, 1);
    let out = run(["meshkit", "validate", "--quiver", &fixture("dangling-sigma.quiver")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unknown arrow b"), "{}", out.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(["meshkit", "validate", "--bogus"]).code, 2);
    assert_eq!(run(["meshkit", "validate", "--quiver", "/nonexistent/file"]).code, 2);
    let bad_path = run(["meshkit", "verdict", "--quiver", &fixture("za2.quiver"), "--path", "b0,a0"]);
    assert_eq!(bad_path.code, 2);
}

#[test]
fn domain_errors_exit_one() {
    // The hom space reaches the window frontier.
    let (code, v) = json(&["mesh2", "--quiver", &fixture("tube2x4.quiver"), "--vertex", "(0,1)"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("frontier"));
    let (code, _) = json(&["depth", "--quiver", &fixture("za3.quiver"), "--path", "a0_1_2", "--max-extra", "1", "--cap", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn generate_emits_parseable_quivers() {
    let out = run(["meshkit", "generate", "tube", "--rank", "2", "--rows", "4"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, std::fs::read_to_string(fixture("tube2x4.quiver")).unwrap());
    let out = run(["meshkit", "generate", "ztree", "--tree", "1-2", "--from", "-1", "--to", "3"]);
    assert_eq!(out.stdout, std::fs::read_to_string(fixture("za2.quiver")).unwrap());
}

#[test]
fn cover_then_check_then_lift() {
    let out = run(["meshkit", "cover", "--quiver", &fixture("tube2x4.quiver"), "--base", "(0,1)", "--radius", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, std::fs::read_to_string(fixture("tube2x4-r3.cover")).unwrap());
    let (code, v) = json(&["check-cover", "--quiver", &fixture("tube2x4.quiver"), "--cover", &fixture("tube2x4-r3.cover")]);
    assert_eq!((code, v["valid"].as_bool()), (0, Some(true)));
    let (code, v) = json(&[
        "lift", "--quiver", &fixture("tube2x4.quiver"), "--cover", &fixture("tube2x4-r3.cover"), "--path", "u0_1,d0_2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["end"], "(0,1)+u0_1+d0_2");
}

#[test]
fn compose_reports_a_normal_form() {
    let (code, v) = json(&["compose", "--quiver", &fixture("triangle3.quiver"), "--path", "r2_3,l2_2"]);
    assert_eq!(code, 0);
    assert_eq!(v["class"], "nonzero");
    assert_eq!(v["dim"], 1);
    assert_eq!(v["normal_form"].as_array().unwrap().len(), 1);
}

#[test]
fn collapse_lists_multiplicities() {
    let (code, v) = json(&["collapse", "--quiver", &fixture("kronecker4.quiver")]);
    assert_eq!(code, 0);
    let m = v["multiplicity"].as_object().unwrap();
    assert_eq!(m.len(), 4);
    assert!(m.values().all(|x| x == 2));
}

#[test]
fn fiber_sum_and_dims_table() {
    let (code, v) = json(&[
        "fiber-sum", "--quiver", &fixture("tube2x4.quiver"), "--cover", &fixture("tube2x4-r3.cover"), "--x", "(0,1)", "--Y", "(0,2)", "--deg", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["total"], v["base_dim"]);
    assert_eq!(v["total"], 1);
    let (code, v) = json(&["dims-table", "--quiver", &fixture("triangle3.quiver"), "--from", "(2,3)", "--to", "(1,1)", "--max-deg", "4"]);
    assert_eq!(code, 0);
    assert!(v["dims"].as_array().unwrap().iter().all(|d| d["dim"] == 0));
}

#[test]
fn json_is_deterministic_and_table_is_default() {
    let args = ["meshkit", "--json", "mesh2", "--quiver", &fixture("triangle3.quiver"), "--vertex", "(1,2)", "--cap", "6"];
    let a = run(args);
    assert_eq!(a, run(args));
    assert_eq!(a.code, 0);
    let table = run(["meshkit", "mesh2", "--quiver", &fixture("triangle3.quiver"), "--vertex", "(1,2)", "--cap", "6"]);
    assert!(table.stdout.starts_with("cap"));
    assert!(serde_json::from_str::<Value>(&table.stdout).is_err());
}

#[test]
fn oracle_flag_is_refused_where_it_has_no_meaning() {
    assert_eq!(run(["meshkit", "--oracle", "validate", "--quiver", &fixture("za3.quiver")]).code, 2);
}
