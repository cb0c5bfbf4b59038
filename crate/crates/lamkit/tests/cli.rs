use std::path::Path;
use std::process::{Command, Output};

fn lamkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamkit")).args(args).output().expect("run lamkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

#[test]
fn find_rotational_lists_the_type_a_triangle() {
    let o = lamkit(&["find-rotational", "--d", "3", "--rho", "1/3", "--orbits", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/26,3/26,9/26"));
}

#[test]
fn classify_critical_leaf_output() {
    let o = lamkit(&["classify-critical-leaf", "1/12-5/12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PeriodicType n_c=1 major=1/2-0"));
}

#[test]
fn classify_smp_on_stored_hexagon() {
    let o = lamkit(&["classify-smp", "--in", &data("hexagon_depth3.txt")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("case=2 type=D"));
}

#[test]
fn build_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let recipes: [&[&str]; 5] = [
        &["quadratic-gap", "--chord", "1/3-2/3"],
        &["quadratic-gap", "--chord", "93/100-79/300"],
        &["diameter"],
        &["rotational", "--set", "7/26,11/26,21/26"],
        &["quadratic-d2", "--set", "1/7,2/7,4/7"],
    ];
    for (i, r) in recipes.iter().enumerate() {
        let f = dir.path().join(format!("l{i}.txt"));
        let f = f.to_str().unwrap();
        let mut args = vec!["build-canonical"];
        args.extend_from_slice(r);
        args.extend_from_slice(&["--depth", "3", "--out", f]);
        let o = lamkit(&args);
        assert!(o.status.success(), "{r:?}: {}", String::from_utf8_lossy(&o.stderr));
        let o = lamkit(&["check-invariance", "--in", f]);
        assert!(o.status.success(), "{r:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("violations: 0"));
    }
}

#[test]
fn broken_file_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, "d=3 depth=1 recipe=custom\nleaf 0-1/4\n").unwrap();
    let o = lamkit(&["check-invariance", "--in", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_chord_is_a_usage_error() {
    let o = lamkit(&["classify-critical-leaf", "1/x-3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1/x-3"));
}

#[test]
fn non_critical_chord_is_a_domain_error() {
    let o = lamkit(&["build-gap", "1/10-1/5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn clean_and_render_produce_output() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("f.svg");
    let o = lamkit(&["clean", "--in", &data("hexagon_depth3.txt")]);
    assert!(stdout(&o).contains("super_gaps: whole-disk"));
    let o = lamkit(&["render", "--in", &data("hexagon_depth3.txt"), "--out", svg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
}

#[test]
fn projection_of_the_type_b_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g2.txt");
    let f = f.to_str().unwrap();
    let o = lamkit(&["build-canonical", "rotational", "--set", "7/26,11/26,21/26", "--depth", "3", "--out", f]);
    assert!(o.status.success());
    let o = lamkit(&["project", "--in", f, "--chord", "37/234-193/234"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    for l in ["leaf 3/7-5/7", "leaf 3/7-6/7", "leaf 5/7-6/7"] {
        assert!(s.contains(l), "{l}");
    }
}
