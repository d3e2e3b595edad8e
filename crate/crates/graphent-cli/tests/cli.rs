//! End-to-end tests of the `graphent` binary: real process, real files,
//! asserted exit codes, stdout/stderr contracts, and byte-stable CSVs.

use std::process::{Command, Output};

use tempfile::TempDir;

/// Runs the binary with `args`, returning the raw process output.
fn graphent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphent"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).expect("fixture written");
    path.to_str().expect("UTF-8 path").to_owned()
}

/// A rose with `petals` petals of the given uniform length.
fn rose_file(petals: usize, length: &str) -> String {
    let mut body = String::from("graph rose\nvertex v\n");
    for i in 0..petals {
        body.push_str(&format!("edge p{i} v v {length}\n"));
    }
    body
}

/// The four-edge theta double with uniform length log 3: the conjectured
/// extremal graph, on the unit locus.
fn figure_one() -> String {
    let mut body = String::from("graph figure1\nvertex u\nvertex w\n");
    for name in ["a", "b", "c", "d"] {
        body.push_str(&format!("edge {name} u w 1.0986122886681098\n"));
    }
    body
}

/// Barbell: two loops joined by a bridge, uniform length log 2 (unit
/// entropy).
fn barbell_file() -> String {
    concat!(
        "graph barbell\n",
        "vertex u\n",
        "vertex w\n",
        "edge left u u 0.6931471805599453\n",
        "edge right w w 0.6931471805599453\n",
        "edge bridge u w 0.6931471805599453\n",
    )
    .to_owned()
}

/// Extracts the value following `key ` on the line starting with it.
fn field(stdout: &str, key: &str) -> String {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` line in {stdout:?}"))
        .to_owned()
}

#[test]
fn entropy_reports_unit_fixtures() {
    let dir = TempDir::new().unwrap();
    let rose3 = write(&dir, "rose3.graph", &rose_file(3, "1.6094379124341003"));
    let out = graphent(&["entropy", &rose3]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(field(&text, "entropy"), "1.000000000000");
    assert_eq!(field(&text, "rank"), "3");
    assert_eq!(field(&text, "components"), "1");
    assert!(!text.contains("note"));

    let fig = write(&dir, "figure1.graph", &figure_one());
    let out = graphent(&["entropy", &fig]);
    assert!(out.status.success());
    assert_eq!(field(&stdout_of(&out), "entropy"), "1.000000000000");
}

#[test]
fn entropy_notes_the_rank_gate() {
    let dir = TempDir::new().unwrap();
    let forest = write(
        &dir,
        "forest.graph",
        "graph forest\nvertex a\nvertex b\nvertex c\nedge x a b 1.0\nedge y b c 2.0\n",
    );
    let out = graphent(&["entropy", &forest]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(field(&text, "entropy"), "0.000000000000");
    assert_eq!(field(&text, "rank"), "0");
    assert!(text.contains("note rank <= 1"));
}

#[test]
fn entropy_rejects_malformed_input_with_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.graph", "graph g\nvertex v\nedge a v w 1.0\n");
    let out = graphent(&["entropy", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("unknown vertex `w`"), "{err}");
}

#[test]
fn unknown_flags_are_rejected() {
    let dir = TempDir::new().unwrap();
    let rose3 = write(&dir, "rose3.graph", &rose_file(3, "1.6094379124341003"));
    let out = graphent(&["entropy", &rose3, "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normalize_lands_on_log3_and_is_idempotent() {
    let dir = TempDir::new().unwrap();
    let rose2 = write(&dir, "rose2.graph", &rose_file(2, "1.0"));
    let out = graphent(&["normalize", &rose2]);
    assert!(out.status.success());
    let once = stdout_of(&out);
    // h(R₂, uniform 1) = log 3, so normalized lengths are exactly log 3.
    assert_eq!(once.matches("1.0986122886681098e0").count(), 2, "{once}");

    let unit = write(&dir, "unit.graph", &once);
    let again = graphent(&["normalize", &unit]);
    assert!(again.status.success());
    assert_eq!(stdout_of(&again), once, "normalize must be byte-idempotent on unit input");
}

#[test]
fn normalize_refuses_zero_entropy() {
    let dir = TempDir::new().unwrap();
    let circle = write(&dir, "circle.graph", "graph circle\nvertex v\nedge a v v 1.0\n");
    let out = graphent(&["normalize", &circle]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("entropy is 0"));
}

#[test]
fn normalize_writes_the_out_file() {
    let dir = TempDir::new().unwrap();
    let rose2 = write(&dir, "rose2.graph", &rose_file(2, "1.0"));
    let target = dir.path().join("unit.graph");
    let out = graphent(&["normalize", &rose2, "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("normalized rose"));
    let body = std::fs::read_to_string(&target).unwrap();
    assert!(body.starts_with("graph rose\n"));
    let check = graphent(&["entropy", target.to_str().unwrap()]);
    assert_eq!(field(&stdout_of(&check), "entropy"), "1.000000000000");
}

#[test]
fn measure_is_uniform_on_roses_and_sums_to_one() {
    let dir = TempDir::new().unwrap();
    let rose4 = write(&dir, "rose4.graph", &rose_file(4, "1.9459101490553132"));
    let out = graphent(&["measure", &rose4]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    for i in 0..4 {
        assert_eq!(field(&text, &format!("mu p{i}")), "0.250000000000");
    }
    assert_eq!(field(&text, "total"), "1.000000000000");
    assert!(stderr_of(&out).is_empty(), "unit input must not warn");
}

#[test]
fn measure_warns_and_normalizes_non_unit_input() {
    let dir = TempDir::new().unwrap();
    let rose3 = write(&dir, "rose3.graph", &rose_file(3, "1.0"));
    let out = graphent(&["measure", &rose3]);
    assert!(out.status.success());
    assert!(stderr_of(&out).contains("warning"), "non-unit input warns");
    let text = stdout_of(&out);
    assert_eq!(field(&text, "total"), "1.000000000000");
    assert_eq!(field(&text, "mu p0"), field(&text, "mu p2"));
}

#[test]
fn subgraph_agrees_with_the_conjectured_values() {
    let dir = TempDir::new().unwrap();
    let fig = write(&dir, "figure1.graph", &figure_one());
    let out = graphent(&["subgraph", &fig, "--edge", "b", "--method", "both"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let integral: f64 = field(&text, "integral").parse().unwrap();
    let direct: f64 = field(&text, "direct").parse().unwrap();
    let expected = 2.0_f64.ln() / 3.0_f64.ln();
    assert!((integral - expected).abs() < 1e-4, "{integral}");
    assert!((direct - expected).abs() < 1e-9, "{direct}");
    let discrepancy: f64 = field(&text, "discrepancy").parse().unwrap();
    assert!(discrepancy < 1e-4, "{discrepancy}");

    let rose3 = write(&dir, "rose3.graph", &rose_file(3, "1.6094379124341003"));
    let out = graphent(&["subgraph", &rose3, "--edge", "p0", "--method", "direct"]);
    let direct: f64 = field(&stdout_of(&out), "direct").parse().unwrap();
    assert!((direct - 3.0_f64.ln() / 5.0_f64.ln()).abs() < 1e-9, "{direct}");
}

#[test]
fn subgraph_direct_handles_disconnection() {
    let dir = TempDir::new().unwrap();
    let barbell = write(&dir, "barbell.graph", &barbell_file());
    let out = graphent(&["subgraph", &barbell, "--edge", "bridge", "--method", "direct"]);
    assert!(out.status.success());
    // Deleting the bridge leaves two single loops: both components have
    // rank 1, so the larger component entropy is 0.
    assert_eq!(field(&stdout_of(&out), "direct"), "0.000000000000");
}

#[test]
fn subgraph_integral_needs_rank_three() {
    let dir = TempDir::new().unwrap();
    let barbell = write(&dir, "barbell.graph", &barbell_file());
    // The integral method's identities need every deletion to keep some
    // circuits, which fails on rank-2 graphs; the error names the way out.
    let out = graphent(&["subgraph", &barbell, "--edge", "bridge"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("use --method direct"));
}

#[test]
fn subgraph_rejects_unknown_edges() {
    let dir = TempDir::new().unwrap();
    let fig = write(&dir, "figure1.graph", &figure_one());
    let out = graphent(&["subgraph", &fig, "--edge", "zz"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("no edge named `zz`"));
}

#[test]
fn blowup_trace_is_sane() {
    let dir = TempDir::new().unwrap();
    let fig = write(&dir, "figure1.graph", &figure_one());
    let csv_path = dir.path().join("trace.csv");
    let out = graphent(&[
        "blowup",
        &fig,
        "--edge",
        "a",
        "--horizon",
        "40",
        "--samples",
        "81",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,j,j_prime,mu_e,denom"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 81);
    assert_eq!(rows[0][0], 0.0);
    assert!((rows[0][1] - 1.0).abs() < 1e-9, "j(0) = 1");
    for pair in rows.windows(2) {
        assert!(pair[1][0] > pair[0][0], "times increase");
        // j decreases strictly, but each sample is root-found to 1e-12;
        // once the true decrement drops below that, noise decides ties.
        assert!(pair[1][1] <= pair[0][1] + 2e-12, "j is non-increasing");
        assert!(pair[1][2] < 0.0, "j' stays negative");
    }

    // The last j is the direct subgraph entropy up to the tail bound.
    let summary = stdout_of(&out);
    let tail: f64 = summary
        .split("tail_bound=")
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    let direct_out = graphent(&["subgraph", &fig, "--edge", "a", "--method", "direct"]);
    let direct: f64 = field(&stdout_of(&direct_out), "direct").parse().unwrap();
    let final_j = rows.last().unwrap()[1];
    assert!(
        (final_j - direct).abs() <= tail.max(1e-9) * 4.0,
        "final j {final_j} vs direct {direct}, tail {tail}"
    );
}

#[test]
fn verify_is_byte_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = graphent(&[
            "verify",
            "--suite",
            "all",
            "--n",
            "5",
            "--seed",
            "7",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr_of(&out));
        let summary = stdout_of(&out);
        assert!(summary.contains("seed=7"), "seed echoed: {summary}");
        assert!(summary.contains("violations=0"), "{summary}");
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap(), "fixed seed, fixed bytes");
    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.starts_with("suite,check,seed,lhs,rhs,margin,satisfied\n"));
    for suite in ["rose", "nonloop", "barbell", "collapse", "assembly", "rose_floor"] {
        assert!(text.contains(&format!("\n{suite},")), "suite {suite} present");
    }
    assert!(!text.contains("\r"), "LF line endings only");
}

#[test]
fn verify_with_zero_samples_is_an_empty_csv() {
    let out = graphent(&["verify", "--suite", "all", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "suite,check,seed,lhs,rhs,margin,satisfied\n");
    assert!(stderr_of(&out).contains("checks=0"));
}

#[test]
fn verify_single_suite_goes_to_stdout() {
    let out = graphent(&["verify", "--suite", "rose", "--n", "2", "--seed", "3"]);
    assert!(out.status.success());
    let csv = stdout_of(&out);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3, "header + 2 rows: {csv}");
    assert!(lines[1].starts_with("rose,rose_estimate,3,"));
    assert!(lines[2].starts_with("rose,rose_estimate,2,"), "seed XOR index");
    assert!(stderr_of(&out).contains("violations=0"));
}

#[test]
fn minimize_finds_the_conjectured_minima() {
    let dir = TempDir::new().unwrap();
    let rose3 = write(&dir, "rose3.graph", &rose_file(3, "1.0"));
    let trace = dir.path().join("trace.csv");
    let args = [
        "minimize",
        &rose3,
        "--restarts",
        "6",
        "--seed",
        "41",
        "--out",
        trace.to_str().unwrap(),
    ];
    let out = graphent(&args);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert_eq!(field(&text, "seed"), "41");
    let value: f64 = field(&text, "value").parse().unwrap();
    assert!((value - 3.0_f64.ln() / 5.0_f64.ln()).abs() < 1e-3, "{value}");

    // Fixed seed, fixed output: rerun and compare both channels.
    let again = graphent(&args);
    assert_eq!(stdout_of(&again), text);

    // The best-so-far column of the trace never increases.
    let csv = std::fs::read_to_string(&trace).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("restart,iteration,objective,simplex_diameter,best_so_far"));
    let best: Vec<f64> =
        lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!(!best.is_empty());
    for pair in best.windows(2) {
        assert!(pair[1] <= pair[0], "best-so-far is monotone");
    }
    assert!((best.last().unwrap() - value).abs() < 1e-12, "trace ends at the reported value");

    let fig = write(&dir, "figure1.graph", &figure_one());
    let out = graphent(&["minimize", &fig, "--restarts", "6", "--seed", "41"]);
    let value: f64 = field(&stdout_of(&out), "value").parse().unwrap();
    assert!((value - 2.0_f64.ln() / 3.0_f64.ln()).abs() < 1e-3, "{value}");
}
