use std::io::Write;
use std::process::{Command, Stdio};

use quasitree::io;

const EXAMPLE: &str = "x1*x3*x6, x1*x4*x6, x1*x2*x4, x4*x5*x6";

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_quasitree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn verify_reports_the_worked_example() {
    let (code, out, _) = run(&["verify", EXAMPLE], "");
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "pd(I)=1; dual is quasi-tree (leaf order F1,F2,F3,F4); tree supports minimal resolution");
}

#[test]
fn verify_exits_one_on_a_consistent_negative() {
    let (code, out, _) = run(&["verify"], "x1*x2, x2*x3, x3*x4, x1*x4");
    assert_eq!(code, 1);
    assert!(out.starts_with("pd(I)=2; dual is not a quasi-forest"));
}

#[test]
fn pd_of_a_principal_ideal() {
    let (code, out, _) = run(&["pd", "x1*x2"], "");
    assert_eq!((code, out.trim()), (0, "0"));
}

#[test]
fn hollow_triangle_has_no_leaf_order() {
    let (code, out, _) = run(&["quasiforest", "--input", &data("hollow_triangle.json")], "");
    assert_eq!(code, 1);
    assert!(out.contains("no leaf order"));
    let (code, _, _) = run(&["quasiforest", "--recognizer", "induced", "--input", &data("hollow_triangle.json")], "");
    assert_eq!(code, 1);
}

#[test]
fn errors_exit_two_with_positions() {
    let (code, _, err) = run(&["pd"], "x1*x2,\nx3**x4");
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 4"), "{err}");
    let (code, _, err) = run(&["pd", "x1, x1*x2"], "");
    assert_eq!(code, 2);
    assert!(err.contains("x1*x2"), "{err}");
    let (code, _, _) = run(&["pd", "--no-such-flag"], "");
    assert_eq!(code, 2);
}

#[test]
fn emitted_json_reparses_to_equal_values() {
    let (_, out, _) = run(&["dual", "--format", "json", EXAMPLE], "");
    let d = io::complex_from_json(&out).unwrap();
    assert_eq!(io::complex_from_json(&io::complex_to_json(&d)).unwrap().facets(), d.facets());

    let (_, out, _) = run(&["resolve", "--format", "json", EXAMPLE], "");
    let fc = io::free_complex_from_json(&out).unwrap();
    assert_eq!(io::free_complex_to_json(&fc).trim(), out.trim());

    let (_, out, _) = run(&["taylor", "--format", "json", EXAMPLE], "");
    let fc = io::free_complex_from_json(&out).unwrap();
    assert_eq!(fc.ranks(), vec![1, 4, 6, 4, 1]);

    let (_, out, _) = run(&["betti", "--format", "json", EXAMPLE], "");
    let b = io::betti_from_json(&out).unwrap();
    assert_eq!(b.totals(), vec![1, 4, 3]);

    let (_, out, _) = run(&["tree", "--format", "json", EXAMPLE], "");
    let t = io::tree_from_json(&out).unwrap();
    assert_eq!(io::tree_to_json(&t).trim(), out.trim());
}

#[test]
fn sr_goes_both_ways() {
    let (code, out, _) = run(&["sr", "--input", &data("hollow_triangle.json")], "");
    assert_eq!(code, 0);
    let i = io::parse_ideal(&out).unwrap();
    assert_eq!(i.to_string(), "(a*b*c)");
    let (code, out, _) = run(&["sr", "--format", "json"], &out);
    assert_eq!(code, 0);
    assert_eq!(io::complex_from_json(&out).unwrap().num_facets(), 3);
}

#[test]
fn tree_writes_dot() {
    let dir = std::env::temp_dir().join(format!("quasitree-dot-{}", std::process::id()));
    let (code, _, _) = run(&["tree", "--dot", dir.to_str().unwrap(), EXAMPLE], "");
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&dir).unwrap();
    std::fs::remove_file(&dir).ok();
    assert!(dot.starts_with("graph tree {"));
    assert_eq!(dot.matches(" -- ").count(), 3);
}

#[test]
fn polarize_and_census() {
    let (code, out, _) = run(&["polarize", "x^2*y, y^2"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "vars x_1 x_2 y_1 y_2\nx_1*x_2*y_1\ny_1*y_2\n");
    let (code, out, _) = run(&["census", "--max-vertices", "3", "--workers", "2"], "");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("failures: 0"));
}
