use std::io::Write;
use std::process::{Command, Output, Stdio};

fn framing(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_framing"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let o = framing(args, stdin);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("framing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn build_then_lattice_through_a_pipe() {
    let graph = ok(&["build", "--preset", "oruga:3"], None);
    let lattice = ok(&["lattice", "--format", "json"], Some(&graph));
    let doc: serde_json::Value = serde_json::from_str(&lattice).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 6);
    assert_eq!(doc["covers"].as_array().unwrap().len(), 6);
}

#[test]
fn check_passes_on_presets() {
    for preset in [
        "oruga:3",
        "caracol:6:tamari",
        "caracol:6:dyck",
        "cambrian:+-+",
        "multioruga:2,1",
        "boolean:3",
        "complete:4",
    ] {
        let out = ok(
            &[
                "check",
                "--preset",
                preset,
                "--props",
                "lattice,semidistributive,polygons,hh,triangle-free",
            ],
            None,
        );
        assert_eq!(
            out.lines().filter(|l| l.starts_with("PASS")).count(),
            5,
            "{preset}: {out}"
        );
    }
}

#[test]
fn linear_intervals_on_caracol() {
    assert_eq!(
        ok(
            &["intervals", "--linear", "--preset", "caracol:6:tamari"],
            None
        ),
        "0:5 1:5 2:2\n"
    );
    assert_eq!(
        ok(
            &["intervals", "--linear", "--preset", "caracol:6:dyck"],
            None
        ),
        "0:5 1:5 2:2\n"
    );
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["lattice", "--preset", "multioruga:2,2", "--format", "json"],
        vec![
            "lattice", "--preset", "oruga:3", "--format", "dot", "--labels", "ccw-ext",
        ],
        vec![
            "core-label-order",
            "--preset",
            "oruga:3",
            "--format",
            "json",
        ],
        vec!["irreducibles", "--preset", "caracol:6:tamari"],
    ] {
        let a = ok(&args, None);
        let b = ok(&args, None);
        let c = ok(&[args.as_slice(), &["--threads", "1"]].concat(), None);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(framing(&["no-such-command"], None).status.code(), Some(2));
    assert_eq!(
        framing(
            &["join", "--preset", "oruga:3", "--x", "one", "--y", "2"],
            None
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        framing(&["quotient", "--preset", "oruga:3"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_1_with_one_line() {
    for (args, stdin, kind) in [
        (vec!["lattice"], Some("{not json"), "schema"),
        (vec!["lattice", "--preset", "oruga:x"], None, "precondition"),
        (
            vec!["join", "--preset", "oruga:3", "--x", "0", "--y", "99"],
            None,
            "precondition",
        ),
        (
            vec!["lattice", "--preset", "complete:7", "--max-routes", "10"],
            None,
            "route-explosion",
        ),
    ] {
        let o = framing(&args, stdin);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with(&format!("error: {kind}: ")), "{err}");
    }
}

#[test]
fn validate_reports_the_field() {
    let mut doc: serde_json::Value =
        serde_json::from_str(&ok(&["build", "--preset", "oruga:2"], None)).unwrap();
    assert_eq!(ok(&["validate"], Some(&doc.to_string())), "valid\n");
    doc["framing"]["in"][1] = serde_json::json!([0, 3]);
    let o = framing(&["validate"], Some(&doc.to_string()));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .starts_with("error: schema: "));
}

#[test]
fn join_meet_and_extremes() {
    let bottom = ok(&["cmin", "--preset", "oruga:3"], None);
    let top = ok(&["cmax", "--preset", "oruga:3"], None);
    assert_ne!(bottom, top);
    let b: usize = bottom.split(' ').next().unwrap().parse().unwrap();
    let t: usize = top.split(' ').next().unwrap().parse().unwrap();
    assert_eq!(
        ok(
            &[
                "join",
                "--preset",
                "oruga:3",
                "--x",
                &b.to_string(),
                "--y",
                &t.to_string()
            ],
            None
        ),
        top
    );
    assert_eq!(
        ok(
            &[
                "meet",
                "--preset",
                "oruga:3",
                "--x",
                &b.to_string(),
                "--y",
                &t.to_string()
            ],
            None
        ),
        bottom
    );
}

#[test]
fn quotient_commands() {
    let out = ok(&["quotient", "--preset", "oruga:3", "--edge", "2"], None);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["lattice"]["elements"].as_array().unwrap().len(), 5);
    assert_eq!(doc["class_of"].as_array().unwrap().len(), 6);
    let all: serde_json::Value = serde_json::from_str(&ok(
        &["quotient", "--preset", "multioruga:2,2,1", "--all"],
        None,
    ))
    .unwrap();
    let subsets = all["subsets"].as_array().unwrap();
    assert_eq!(subsets.len(), 8);
    assert_eq!(subsets[0]["size"], 30);
    assert_eq!(subsets[7]["size"], 18);
}

#[test]
fn grid_commands_and_iso() {
    let grid = temp_file(
        "cross.json",
        r#"{"points":[[1,0],[2,0],[1,1],[2,1],[1,2],[2,2],[1,3],[2,3],[0,1],[0,2],[3,1],[3,2]]}"#,
    );
    assert!(ok(&["grid", "check", &grid], None).starts_with("valid columns=4 rows=4"));
    assert_eq!(ok(&["grid", "fillings", &grid], None).lines().count(), 10);
    let tam = temp_file("tam.json", &ok(&["grid", "lattice", &grid], None));
    let graph = ok(&["grid", "to-graph", &grid], None);
    let framing_lattice = temp_file("framing.json", &ok(&["lattice"], Some(&graph)));
    assert_eq!(
        framing(&["iso", &tam, &framing_lattice], None)
            .status
            .code(),
        Some(0)
    );
    let other = temp_file("o3.json", &ok(&["lattice", "--preset", "oruga:3"], None));
    let o = framing(&["iso", &tam, &other], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not isomorphic\n");

    let bad = framing(&["grid", "check"], Some(r#"{"points":[[0,0],[2,0]]}"#));
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn reversed_framing_gives_dual_lattice() {
    let lat = temp_file(
        "a.json",
        &ok(&["lattice", "--preset", "multioruga:2,1"], None),
    );
    let rev = ok(
        &["build", "--preset", "multioruga:2,1", "--reverse-framing"],
        None,
    );
    let dual = temp_file("b.json", &ok(&["lattice"], Some(&rev)));
    // multioruga lattices are self-dual, so both must match.
    assert_eq!(framing(&["iso", &lat, &dual], None).status.code(), Some(0));
}
