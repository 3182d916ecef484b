use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use dmv_core::dualvol::dual_volume_function;
use dmv_core::families::genperm_dmv_closed_form;
use dmv_core::geometry::Polytope;
use dmv_core::io::rational_function_from_json;

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(self.stdout.trim()).expect("stdout is JSON")
    }
}

fn dmv(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_dmv"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
    }
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

const QUAD: &str = r#"{"dim":2,"vertices":[[1,1],[2,1],[3,-1],[1,-1]]}"#;
const TWO_TRIANGLES: &str = r#"{"dim":2,"parts":[
    {"dim":2,"vertices":[[1,0],[0,2],[-1,-1]]},
    {"dim":2,"vertices":[[0,0],[2,0],[0,2]]}]}"#;
const FIG2: &str =
    r#"{"cells":[[[0,1],[0,1]],[[1],[0,1,2]],[[0,1,2],[0]],[[1,2],[0,2]],[[0,2],[0,2]]]}"#;

#[test]
fn quadrilateral_dual_volume() {
    let f = Files::new();
    let run = dmv(&["dualvol", "--polytope", &f.put("quad.json", QUAD)]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["value"], "-6/5");
    assert_eq!(run.json()["meta"]["seed"], 0);
}

#[test]
fn lower_dimensional_polytope_has_zero_dual_volume() {
    let f = Files::new();
    let seg = f.put(
        "segment_in_plane.json",
        r#"{"dim":2,"vertices":[[0,0],[1,2]]}"#,
    );
    let run = dmv(&["dualvol", "--polytope", &seg]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["value"], "0");
}

#[test]
fn unbounded_fan_ingestion() {
    let f = Files::new();
    let data = f.put(
        "fan.json",
        r#"{"fan":{"dim":2,"rays":[[-2,1],[1,1],[3,1]],"cones":[[0,1],[1,2]],"pure_dim":2},
            "values":["4","1","3"]}"#,
    );
    let run = dmv(&["dualvol", "--fan", &data]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["value"], "17/12");
}

#[test]
fn two_triangle_subdivision_verifies() {
    let f = Files::new();
    let seq = f.put("twotriangles.json", TWO_TRIANGLES);
    let run = dmv(&[
        "verify-subdivision",
        "--seq",
        &seq,
        "--sub",
        &f.put("fig2.json", FIG2),
    ]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let v = run.json();
    assert_eq!(v["valid"], true);
    assert_eq!(v["additive"], true);
    assert_eq!(v["cells"], 5);
}

#[test]
fn incomplete_subdivision_exits_one() {
    let f = Files::new();
    let seq = f.put("twotriangles.json", TWO_TRIANGLES);
    let partial = f.put("partial.json", r#"{"cells":[[[0,1],[0,1]],[[1],[0,1,2]]]}"#);
    let run = dmv(&["verify-subdivision", "--seq", &seq, "--sub", &partial]);
    assert_eq!(run.code, 1);
    assert_eq!(run.json()["verified"], false);
}

#[test]
fn generated_subdivision_is_deterministic() {
    let f = Files::new();
    let seq = f.put("twotriangles.json", TWO_TRIANGLES);
    let args = [
        "verify-subdivision",
        "--seq",
        &seq,
        "--generate",
        "--seed",
        "11",
    ];
    let a = dmv(&args);
    let b = dmv(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.json()["meta"]["seed"], 11);
    assert!(a.json()["heights"].is_array());
}

#[test]
fn emitted_functions_round_trip() {
    let f = Files::new();
    let quad = f.put("quad.json", QUAD);
    let run = dmv(&["dualvol-fn", "--polytope", &quad, "--normal"]);
    assert_eq!(run.code, 0);
    let back = rational_function_from_json(&run.json()["function"]).unwrap();
    let p = Polytope::from_i64(&[&[1, 1], &[2, 1], &[3, -1], &[1, -1]]).unwrap();
    assert!(back
        .equals(&dual_volume_function(&p).unwrap().function)
        .unwrap());
    assert_eq!(run.json()["value_at_origin"], "-6/5");
    assert_eq!(run.json()["numerator_text"], "-2*z2 + 6");

    let run = dmv(&["genperm", "--n", "3"]);
    let back = rational_function_from_json(&run.json()["function"]).unwrap();
    assert!(back.equals(&genperm_dmv_closed_form(3).unwrap()).unwrap());
}

#[test]
fn families_verify() {
    assert_eq!(dmv(&["genperm", "--n", "3", "--check"]).code, 0);
    assert_eq!(dmv(&["associahedron", "--n", "3", "--check"]).code, 0);
    let run = dmv(&["amplitude", "--n", "5"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["sign"], 1);
    assert_eq!(dmv(&["amplitude", "--n", "6"]).json()["sign"], -1);

    let f = Files::new();
    let j = f.put("J.json", r#"["1","2","3","1","1","23","12"]"#);
    assert_eq!(dmv(&["permutohedron-cell", "--J", &j]).code, 0);
    let gens = f.put("gens.json", "[[1,0],[0,1],[1,1]]");
    let run = dmv(&["zonotope", "--generators", &gens, "--split-dir", "1,-1"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert_eq!(run.json()["deletion_contraction"], true);
}

#[test]
fn identities_and_integral() {
    let f = Files::new();
    let quad = f.put("quad.json", QUAD);
    assert_eq!(dmv(&["adjoint", "--polytope", &quad]).code, 0);
    let seq = f.put("twotriangles.json", TWO_TRIANGLES);
    assert_eq!(dmv(&["verify-cayley", "--seq", &seq]).code, 0);
    let seg = f.put("seg.json", r#"{"dim":1,"vertices":[[1],[3]]}"#);
    let run = dmv(&["check-integral", "--polytope", &seg, "--point", "2"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["exact"], "2");
    let simplex = f.put(
        "simplex.json",
        r#"{"dim":3,"vertices":[[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    let run = dmv(&["evol", "--polytope", &simplex]);
    assert_eq!(run.code, 0);
    assert!(run.json()["function_text"].as_str().unwrap().contains("z1"));
}

#[test]
fn input_errors_exit_two() {
    let f = Files::new();
    assert_eq!(
        dmv(&["dualvol", "--polytope", "/nonexistent/p.json"]).code,
        2
    );
    let bad = f.put("bad.json", r#"{"dim":2,"vertices":[[1,"x"]]}"#);
    let run = dmv(&["dualvol", "--polytope", &bad]);
    assert_eq!(run.code, 2);
    assert_eq!(run.json()["error"]["kind"], "Parse");
    assert_eq!(dmv(&["dualvol"]).code, 2);
}

#[test]
fn precondition_failures_exit_three_with_certificate() {
    let f = Files::new();
    let tri = f.put("tri.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1]]}"#);
    let run = dmv(&["dualvol", "--polytope", &tri]);
    assert_eq!(run.code, 3);
    let err = &run.json()["error"];
    assert_eq!(err["kind"], "Codegenerate");
    assert!(err["certificate"]["ray"].is_string());
}

#[test]
fn pretty_output_is_readable() {
    let f = Files::new();
    let run = dmv(&[
        "dualvol-fn",
        "--polytope",
        &f.put("quad.json", QUAD),
        "--pretty",
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("value_at_origin: -6/5"));
    assert!(run.stdout.lines().next().unwrap().starts_with("function: "));
}
