use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

use padicwave::core::pseudodiff::apply;
use padicwave::core::pseudodiff::Symbol;
use padicwave::core::wavelets::wavelet;
use padicwave::core::{FrequencyIndex, Prime, TestFunction, TranslationIndex, WaveletIndex};
use padicwave::dto::{SolutionDto, TestFunctionDto, WaveletIndexDto};
use padicwave::exit;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padicwave")).args(args).env_remove("PADICWAVE_TOL").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, body: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(body).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn p2() -> Prime {
    Prime::new(2).unwrap()
}

/// `Θ_{0,1/2,0}` for `p = 2`.
fn haar() -> WaveletIndex {
    WaveletIndex::new(0, FrequencyIndex::from_digits(p2(), vec![vec![1]]).unwrap(), TranslationIndex::zero(p2(), 1))
        .unwrap()
}

fn function_json(f: &TestFunction) -> Value {
    serde_json::to_value(TestFunctionDto::from_function(f)).unwrap()
}

#[test]
fn gamma_prints_the_closed_form() {
    let out = run(&["gamma", "--p", "2", "--alpha", "2"]);
    assert_eq!(code(&out), exit::PASS);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() + 4.0 / 3.0).abs() < 1e-15);
    assert_eq!(code(&run(&["gamma", "--p", "3", "--alpha", "0"])), exit::POLE);
}

#[test]
fn transform_fixes_the_unit_ball_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let omega = TestFunction::omega(Prime::new(3).unwrap(), 2);
    let input = write(dir.path(), "omega.json", &function_json(&omega));
    for inverse in [false, true] {
        let mut args = vec!["transform", "--input", input.as_str()];
        if inverse {
            args.push("--inverse");
        }
        let out = run(&args);
        assert_eq!(code(&out), exit::PASS);
        let dto: TestFunctionDto = serde_json::from_slice(&out.stdout).unwrap();
        assert!(dto.to_function().unwrap().sup_distance(&omega).unwrap() < 1e-15);
    }
}

#[test]
fn apply_matches_the_library_and_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let w = wavelet(&haar()).unwrap();
    let input = write(dir.path(), "w.json", &function_json(&w));
    let out = run(&["apply", "--symbol", "power:1.5", "--input", &input]);
    assert_eq!(code(&out), exit::PASS);
    let got = serde_json::from_slice::<TestFunctionDto>(&out.stdout).unwrap().to_function().unwrap();
    let want = apply(&Symbol::power_re(1.5), &w).unwrap();
    assert!(got.sup_distance(&want).unwrap() < 1e-12);

    let omega = write(dir.path(), "omega.json", &function_json(&TestFunction::omega(p2(), 1)));
    assert_eq!(code(&run(&["apply", "--symbol", "power:1", "--input", &omega])), exit::NOT_LIZORKIN);

    // the table covers |ξ| = 8 only; the transform of Θ sits at |ξ| = 2
    let table = json!({
        "kind": "tabulated", "p": 2, "n": 1, "annulus": { "A": 3, "B": 3 }, "resolution": 2,
        "values": [{ "re": 1.0, "im": 0.0 }, { "re": 2.0, "im": 0.0 }],
    });
    let sym = format!("@{}", write(dir.path(), "table.json", &table));
    assert_eq!(code(&run(&["apply", "--symbol", &sym, "--input", &input])), exit::COVERAGE);

    let missing = dir.path().join("nope.json");
    assert_eq!(code(&run(&["apply", "--symbol", "log", "--input", missing.to_str().unwrap()])), exit::IO);
}

#[test]
fn solve_inverts_on_an_eigenfunction() {
    let dir = tempfile::tempdir().unwrap();
    let idx = haar();
    let problem = json!({
        "symbol": { "kind": "power", "alpha": { "re": 1.0, "im": 0.0 } },
        "rhs": function_json(&wavelet(&idx).unwrap()),
        "indices": [WaveletIndexDto::from_index(&idx)],
        "tolerance": 1e-10,
    });
    let out = run(&["solve", "--problem", &write(dir.path(), "ok.json", &problem)]);
    assert_eq!(code(&out), exit::PASS, "{}", String::from_utf8_lossy(&out.stderr));
    let sol: SolutionDto = serde_json::from_slice(&out.stdout).unwrap();
    // λ = |−1/2|_2 = 2
    let want = wavelet(&idx).unwrap().scale(0.5.into());
    assert!(sol.solution.to_function().unwrap().sup_distance(&want).unwrap() < 1e-12);
    assert!(sol.residual < 1e-12);

    let mut singular = problem.clone();
    singular["symbol"] = json!({ "kind": "constant", "value": { "re": 0.0, "im": 0.0 } });
    let out = run(&["solve", "--problem", &write(dir.path(), "zero.json", &singular)]);
    assert_eq!(code(&out), exit::NON_INVERTIBLE);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&run(&["eigen", "--p", "6", "--symbol", "log", "--gamma", "0", "--s", "1"])), exit::USAGE);
    assert_eq!(code(&run(&["frobnicate"])), exit::USAGE);
}
