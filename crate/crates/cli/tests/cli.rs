use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use redux::io;
use redux::{Polynomial, Rational, Term};
use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn redux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redux")).args(args).env_remove("REDUX_BUDGET").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn weights_reports_a_cycle_for_an_inconsistent_structure() {
    let o = redux(&["weights", path(&data("quadratic_tail.json"))]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o), json!({"consistent": false, "cycle": "(x*y)^2 = x^2 * y^2"}));
}

#[test]
fn weights_finds_a_weight_for_a_groebner_structure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let o = redux(&["build", "groebner", "--ideal", "x^2,x*y,y^3", "--order", "degrevlex", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = redux(&["weights", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["consistent"], json!(true));
}

#[test]
fn spoly_basis_test_fails_with_remainder() {
    let o = redux(&["basis", "--method", "spoly", path(&data("coprime_heads.json"))]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["basis"]["status"], "fail");
    assert_eq!(v["basis"]["witness"]["kind"], "remainder");
    assert_eq!(v["basis"]["witness"]["remainder"], "z^2");
}

#[test]
fn pairs_keep_the_coprime_pair_without_a_certificate() {
    let o = redux(&["pairs", path(&data("coprime_heads.json"))]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["criteria_applied"], false);
    assert_eq!(v["kept"], json!([[0, 1], [0, 2], [1, 2]]));
}

#[test]
fn confluence_fails_on_overlapping_maximal_cones() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ms.json");
    let doc = json!({
        "structure": {
            "vars": ["x", "y"],
            "entries": [
                {"head": "x^2", "nonmult": [], "tail_support": ["1", "x", "y"]},
                {"head": "x*y", "nonmult": [], "tail_support": ["1", "x", "y"]},
                {"head": "y^2", "nonmult": [], "tail_support": ["1", "x", "y"]}
            ]
        },
        "polys": [
            {"head": "x^2", "tail": {"1": "-1"}},
            {"head": "x*y", "tail": {}},
            {"head": "y^2", "tail": {}}
        ]
    });
    std::fs::write(&file, doc.to_string()).unwrap();
    let o = redux(&["confluence", "--method", "spoly", file.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["witness"]["origin"], json!({"s_pair": [0, 1]}));
    assert_eq!(v["witness"]["remainder"], "-y");
}

#[test]
fn build_prints_border_layout() {
    let o = redux(&["build", "border", "--ideal", "x^3,x*y,y^2"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let heads: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["head"].as_str().unwrap()).collect();
    assert_eq!(heads, ["x^3", "x*y", "x^2*y", "y^2"]);
    assert_eq!(v["certificates"][0]["kind"], "stably-ordered");
    assert_eq!(v["certificates"][0]["verified"], true);
}

#[test]
fn written_structures_reload_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["groebner-reduced", "staggered", "janet", "janet-like", "pommaret", "border"] {
        let printed = redux(&["build", kind, "--ideal", "x^3,x^2*y,y^2"]);
        assert_eq!(code(&printed), 0, "{kind}");
        let out = dir.path().join(format!("{kind}.json"));
        let o = redux(&["build", kind, "--ideal", "x^3,x^2*y,y^2", "-o", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        let written = std::fs::read(&out).unwrap();
        assert_eq!(written, printed.stdout, "{kind}");
        let text = String::from_utf8(written).unwrap();
        assert_eq!(io::write_structure(&io::read_structure(&text).unwrap()), text, "{kind}");
        let o = redux(&["validate", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{kind}");
        assert_eq!(stdout_json(&o)["status"], "pass");
    }
}

#[test]
fn reduce_trace_replays_to_the_remainder() {
    let file = data("quadratic_tail_marked.json");
    let ms = io::read_marked_set_file(&file).unwrap();
    let vars = ms.structure().vars().clone();
    for (poly, strategy) in [("x^5*y", "first-match"), ("x^3*y + 2*x*y^3 - y", "random")] {
        let o = redux(&["reduce", path(&file), "--poly", poly, "--strategy", strategy, "--seed", "7", "--trace"]);
        assert_eq!(code(&o), 0);
        let v = stdout_json(&o);
        let mut h = Polynomial::parse(&vars, poly).unwrap();
        for step in v["trace"].as_array().unwrap() {
            let entry = step["entry"].as_u64().unwrap() as usize;
            let eta: Term = vars.parse_term(step["multiplier"].as_str().unwrap()).unwrap();
            let c: Rational = step["coefficient"].as_str().unwrap().parse().unwrap();
            h.sub_scaled_shifted(&c, &eta, ms.poly(entry));
        }
        assert_eq!(h, Polynomial::parse(&vars, v["remainder"]["text"].as_str().unwrap()).unwrap());
        assert_eq!(v["steps"].as_u64().unwrap() as usize, v["trace"].as_array().unwrap().len());
    }
}

#[test]
fn exhausted_budget_exits_with_three() {
    let file = data("quadratic_tail_marked.json");
    let o = redux(&["--budget", "1", "reduce", path(&file), "--poly", "x^5*y"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout_json(&o)["status"], "budget-exceeded");

    let o = Command::new(env!("CARGO_BIN_EXE_redux"))
        .args(["basis", "--method", "spoly", path(&data("coprime_heads.json"))])
        .env("REDUX_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(code(&redux(&["frobnicate"])), 2);
    assert_eq!(code(&redux(&["validate", "--frobnicate", path(&data("quadratic_tail.json"))])), 2);
    assert_eq!(code(&redux(&["validate", "/no/such/file.json"])), 2);
    assert_eq!(code(&redux(&["build", "pommaret", "--ideal", "x*y"])), 2);
    assert_eq!(code(&redux(&["reduce", path(&data("quadratic_tail_marked.json")), "--poly", "x^^2"])), 2);
    // Family equations need an ordering certificate this structure lacks.
    assert_eq!(code(&redux(&["family", path(&data("quadratic_tail.json")), "--bound", "4"])), 2);
}

#[test]
fn validate_reports_uncovered_terms() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rs.json");
    let doc = json!({
        "vars": ["x", "y"],
        "entries": [
            {"head": "x", "nonmult": ["y"], "tail_support": []},
            {"head": "y", "nonmult": ["x"], "tail_support": []}
        ]
    });
    std::fs::write(&file, doc.to_string()).unwrap();
    let o = redux(&["validate", file.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["witness"]["kind"], "uncovered");
    assert_eq!(v["witness"]["term"], "x*y");
}
