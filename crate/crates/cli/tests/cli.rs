use std::io::Write;
use std::process::{Command, Output, Stdio};

fn raagtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raagtl"))
        .args(args)
        .output()
        .unwrap()
}

fn raagtl_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_raagtl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("raagtl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn certify_then_verify_through_a_pipe() {
    let cert = raagtl(&["certify", "example:p6"]);
    assert_eq!(cert.status.code(), Some(0), "{}", stderr(&cert));
    let v = raagtl_stdin(&["verify", "-"], &stdout(&cert));
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    let report = json(&v);
    assert_eq!(report["valid"], true);
    assert_eq!(report["path_checks"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_reads_files_and_reports_csv() {
    let cert = raagtl(&["certify", "example:c5"]);
    let path = temp_file("c5.json", &stdout(&cert));
    let v = raagtl(&[
        "verify",
        path.to_str().unwrap(),
        "--format",
        "csv",
        "--max-n",
        "2",
    ]);
    assert_eq!(v.status.code(), Some(0));
    let out = stdout(&v);
    assert!(out.starts_with("check,passed\n"));
    assert!(out.contains("path_n2,true"));
    assert!(out.ends_with("valid,true\n"));
}

#[test]
fn tampered_certificate_exits_3() {
    let cert = json(&raagtl(&["certify", "example:p4"]));
    let mut bad = cert.clone();
    bad["bound"]["den"] = serde_json::json!(5);
    let v = raagtl_stdin(&["verify"], &bad.to_string());
    assert_eq!(v.status.code(), Some(3));
    assert_eq!(json(&v)["valid"], false);
}

#[test]
fn malformed_certificate_exits_2() {
    let v = raagtl_stdin(&["verify"], "{ not json");
    assert_eq!(v.status.code(), Some(2));
    assert!(stderr(&v).starts_with("error:"));
}

#[test]
fn non_biconnected_graph_exits_2_with_reason() {
    let path = temp_file("p3.txt", "vertices: a b c\nedge: a b\nedge: b c\n");
    let o = raagtl(&["certify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("complement"), "{}", stderr(&o));
}

#[test]
fn missing_file_exits_2() {
    let o = raagtl(&["certify", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let o = raagtl(&["certify", "example:nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = raagtl(&["certify", "family:gamma:x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_2() {
    let o = raagtl(&["certify"]);
    assert_eq!(o.status.code(), Some(2));
    let o = raagtl(&["sweep-2v", "--max-n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error:"));
}

#[test]
fn gamma_ten_certifies_two_sevenths() {
    let o = raagtl(&["certify", "family:gamma:10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let c = json(&o);
    assert_eq!(
        (c["bound"]["num"].as_u64(), c["bound"]["den"].as_u64()),
        (Some(2), Some(7))
    );
}

#[test]
fn certify_csv_over_graph6_lines() {
    // P4 and C5 in graph6.
    let path = temp_file("two.g6", "CR\nDhc\n");
    let o = raagtl(&["certify", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "index,graph6,kind,bound,element,valid");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,CR,"));
    assert!(lines[2].starts_with("2,Dhc,"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn sweep_output_is_independent_of_jobs() {
    for args in [
        vec!["sweep-2v", "--min-n", "4", "--max-n", "6"],
        vec![
            "sweep-2v", "--min-n", "4", "--max-n", "5", "--format", "json",
        ],
        vec!["sweep-loxo", "--max-n", "5"],
    ] {
        let one = raagtl(&[&["--jobs", "1"], args.as_slice()].concat());
        let three = raagtl(&[&["--jobs", "3"], args.as_slice()].concat());
        assert_eq!(one.status.code(), Some(0), "{args:?}: {}", stderr(&one));
        assert_eq!(three.status.code(), Some(0));
        assert_eq!(one.stdout, three.stdout, "{args:?}");
    }
}

#[test]
fn sweep_csv_counts() {
    let o = raagtl(&["sweep-2v", "--min-n", "4", "--max-n", "5"]);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(
        rows[0],
        "row,sweep,n,graphs,biconnected,skipped,checks,failures,code,graph6,reason"
    );
    assert!(
        rows[1].starts_with("count,star-edge,4,64,12,"),
        "{}",
        rows[1]
    );
    assert!(
        rows[2].starts_with("count,star-edge,5,1024,432,"),
        "{}",
        rows[2]
    );
}

#[test]
fn generator_orbits_have_ratio_zero() {
    let o = raagtl(&[
        "ball",
        "example:p4",
        "--element",
        "v2",
        "--base",
        "v2",
        "-L",
        "2",
        "--max-n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "n,distance,ratio,boundary_touched\n1,0,0.000000,false\n2,0,0.000000,false\n3,0,0.000000,false\n");
}

#[test]
fn default_ball_element_on_p4() {
    let o = raagtl(&[
        "ball",
        "example:p4",
        "--max-n",
        "1",
        "--format",
        "json",
        "--base",
        "v2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["ball_vertices"], 376);
    let s = &r["samples"][0];
    assert!(s["ratio"].as_f64().unwrap() <= 2.0, "{s}");
}

#[test]
fn ball_writes_svg_and_dump() {
    let dir = std::env::temp_dir().join(format!("raagtl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("ratio.svg");
    let dump = dir.join("ball.json");
    let o = raagtl(&[
        "ball",
        "example:c5",
        "-L",
        "1",
        "--max-n",
        "1",
        "--svg",
        svg.to_str().unwrap(),
        "--dump-ball",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let ball: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert!(ball.is_object());
}

#[test]
fn ball_overflow_exits_2() {
    let o = raagtl(&["ball", "example:p4", "-L", "3", "--cap", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("50"), "{}", stderr(&o));
}

#[test]
fn identity_element_is_rejected() {
    let o = raagtl(&["ball", "example:p4", "--element", "v1 v1^-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_prints_normal_form() {
    let o = raagtl(&["reduce", "example:p4", "v3^-1 v1 v3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("v3^-1 v1 v3"), "{text}");
    let o = raagtl(&["reduce", "example:p4", "v1 v3", "--equals", "v3 v1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = raagtl(&["reduce", "example:p4", "v1 v9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_formats() {
    let o = raagtl(&["family", "family:lambda:4", "--graph6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = raagtl(&["family", "example:c5", "--format", "csv"]);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("a,b"));
    assert_eq!(out.lines().count(), 6);

    let o = raagtl(&["family", "family:gamma:6", "--format", "json"]);
    let j = json(&o);
    assert_eq!(j["order"], 8);
    assert_eq!(j["diameter"], 2);
    assert_eq!(j["complement_diameter"], 2);
    assert_eq!(j["biconnected"], true);

    // The default edge-list output reads back as a source.
    let o = raagtl(&["family", "example:fig3b"]);
    let path = temp_file("fig3b.txt", &stdout(&o));
    let again = raagtl(&["family", path.to_str().unwrap()]);
    assert_eq!(stdout(&again), stdout(&o));
}
