//! End-to-end checks of the equigeo binary: exit codes, document parsing,
//! report determinism, and file outputs.

use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_equigeo");
const SQUARE: &str = r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#;
const TRIANGLE: &str = r#"{"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}"#;
const SCENARIO: &str = r#"{"group": "euclidean", "base_selector": "steiner",
    "pairs": [{"body": {"dim": 2, "vertices": [[0,0],[1.3,0],[0.2,0.9]]},
               "target": {"point": [3, 1]}}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn invariant_point_centroid_prints_a_point_document() {
    let out = run(&["invariant-point", "--method", "centroid", "--body", TRIANGLE]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"method\": \"centroid\""), "{text}");
    assert!(text.contains("\"point\": [3.33333333333333"), "{text}");
}

#[test]
fn invariant_point_chebyshev_reports_a_radius() {
    let out = run(&["invariant-point", "--method", "chebyshev", "--body", SQUARE]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"radius\": 5.0000000000000000e-1"), "{text}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_selector_is_a_runtime_error() {
    let out = run(&["invariant-point", "--method", "midpoint", "--body", SQUARE]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hausdorff_of_identical_bodies_is_zero() {
    let out = run(&["hausdorff", SQUARE, SQUARE]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0.0000000000000000e0");
}

#[test]
fn minkowski_prints_a_parseable_body_document() {
    let out = run(&["minkowski", SQUARE, SQUARE, "--t", "0.25"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // The combination of a square with itself is the square again.
    let echo = run(&["hausdorff", SQUARE, text.trim()]);
    assert!(echo.status.success());
    assert_eq!(stdout(&echo).trim(), "0.0000000000000000e0");
}

#[test]
fn symmetry_of_the_square_has_order_eight() {
    let out = run(&["symmetry", "--body", SQUARE, "--group", "euclidean"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("order 8 within euclidean"));
}

#[test]
fn fixed_set_of_the_square_is_its_center() {
    let out = run(&["fixed-set", "--body", SQUARE]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dim 0"), "{text}");
    assert!(
        text.contains("base [5.0000000000000000e-1, 5.0000000000000000e-1]"),
        "{text}"
    );
}

#[test]
fn containment_passes_on_the_square() {
    let out = run(&["containment", "--body", SQUARE, "--selectors", "centroid,steiner"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("centroid"), "{text}");
    assert!(text.contains("steiner"), "{text}");
    assert!(!text.contains("OUTSIDE"), "{text}");
}

#[test]
fn blend_probe_prints_a_point_near_the_target() {
    let probe = r#"{"dim": 2, "vertices": [[0.01,0],[1.3,0.01],[0.2,0.9]]}"#;
    let out = run(&["blend", "--scenario", SCENARIO, "--probe", probe]);
    assert!(out.status.success());
    let text = stdout(&out);
    let coords: Vec<f64> = text
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|s| s.trim().parse().expect("float coordinate"))
        .collect();
    assert_eq!(coords.len(), 2);
    assert!((coords[0] - 3.0).abs() < 0.2, "{text}");
    assert!((coords[1] - 1.0).abs() < 0.2, "{text}");
}

#[test]
fn blend_verify_report_is_byte_stable() {
    let args = ["blend", "--scenario", SCENARIO, "--verify", "--trials", "20"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.starts_with("# equigeo v"), "{text}");
    assert!(text.contains("interpolation,0,"), "{text}");
    assert_eq!(text.matches("equivariance,").count(), 20, "{text}");
}

#[test]
fn verify_all_filter_is_deterministic_and_exits_zero() {
    let args = ["verify-all", "--filter", "properness", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success(), "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("[PASS]"), "{text}");
    assert!(text.contains("properness-bounds"), "{text}");
}

#[test]
fn verify_all_rejects_an_unknown_tolerance_name() {
    let out = run(&["verify-all", "--tol", "nonsense=1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_all_fails_under_an_impossible_override() {
    let out = run(&[
        "verify-all",
        "--filter",
        "selector-equivariance",
        "--tol",
        "equivariance=1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("OVERRIDE"), "{text}");
    assert!(text.contains("[FAIL]"), "{text}");
}

#[test]
fn properness_on_the_square_reports_no_violations() {
    let out = run(&["properness", "--body", SQUARE, "--delta", "0.1", "--trials", "50"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("violations 0 of 50 trials"));
}

#[test]
fn constant_width_rejects_the_square() {
    let out = run(&["constant-width", "--body", SQUARE]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("constant false"), "{text}");
    assert!(text.contains("mean width 1.27"), "{text}");
}

#[test]
fn segment_midpoint_demo_lands_on_the_midpoint() {
    let out = run(&["demo", "segment-midpoint", "--a", "0,0", "--b", "2,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("midpoint [1.0000000000000000e0, 0.0000000000000000e0]"),
        "{text}"
    );
    assert!(text.contains("stabilizer order 4"), "{text}");
}

#[test]
fn triangle_demo_writes_csv_and_svg() {
    let dir = std::env::temp_dir().join(format!("equigeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let csv = dir.join("tri.csv");
    let svg = dir.join("tri.svg");
    let out = run(&[
        "demo",
        "triangle-counterexample",
        "--n-max",
        "5",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv_text = std::fs::read_to_string(&csv).expect("csv written");
    let mut lines = csv_text.lines();
    assert!(lines.next().unwrap().starts_with("# equigeo v"));
    assert_eq!(
        lines.next().unwrap(),
        "n,centroid_x,centroid_y,formula_error,hausdorff_to_segment"
    );
    assert_eq!(lines.count(), 5);
    let svg_text = std::fs::read_to_string(&svg).expect("svg written");
    assert!(svg_text.starts_with("<svg"), "{svg_text}");
    assert!(svg_text.contains("segment midpoint"), "{svg_text}");
    std::fs::remove_dir_all(&dir).ok();
}
