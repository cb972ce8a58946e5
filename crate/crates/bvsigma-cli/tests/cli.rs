//! End-to-end tests of the command-line surface: manifests, reports, exit
//! codes and determinism.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn bvsigma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvsigma"))
        .args(args)
        .env_remove("THREADS")
        .output()
        .expect("binary runs")
}

fn bvsigma_with_manifest(task: &str, manifest: &str) -> Output {
    let mut file = tempfile();
    file.write_all(manifest.as_bytes()).unwrap();
    let out = bvsigma(&[task, "--manifest", &file.path]);
    drop(file);
    out
}

struct TempFile {
    path: String,
    file: std::fs::File,
}

impl Write for TempFile {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.file.write(buf)
    }
    fn flush(&mut self) -> std::io::Result<()> {
        self.file.flush()
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

fn tempfile() -> TempFile {
    let path = format!(
        "{}/bvsigma-cli-test-{}-{:?}.json",
        std::env::temp_dir().display(),
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    );
    let file = std::fs::File::create(&path).unwrap();
    TempFile { path, file }
}

fn parse_report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn vf_of_inline_points() {
    let out = bvsigma(&["vf", "--points", r#"[["-1","0"],["0","0"],["1","0"]]"#]);
    let report = parse_report(&out);
    assert_eq!(report["result"]["vf"], 1);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["task"], "vf");
}

#[test]
fn bv_norm_of_the_indicator_manifest() {
    let manifest = r#"{
        "set": {"points": [["-1","0"],["0","0"],["1","0"]]},
        "function": {"rule": {"indicator": {"points": [["0","0"]]}}}
    }"#;
    let report = parse_report(&bvsigma_with_manifest("bv-norm", manifest));
    assert_eq!(report["result"]["value"]["exact"], "3");
    assert_eq!(report["result"]["status"], "Exact");
}

#[test]
fn d_norm_manifest_with_isolated_point() {
    let manifest = r#"{
        "set": {"points": [["-1","0"],["0","0"],["1","0"]]},
        "function": {"rule": {"indicator": {"points": [["0","0"]]}}},
        "isolated_point": ["0","0"]
    }"#;
    let report = parse_report(&bvsigma_with_manifest("d-norm", manifest));
    assert_eq!(report["result"]["value"]["exact"], "1");
}

#[test]
fn var_with_builder_set_and_table_function() {
    let manifest = r#"{
        "set": {"builder": {"name": "real", "truncation": 3}},
        "function": {"table": [
            {"point": ["0","0"], "value": {"exact": ["0","0"]}},
            {"point": ["1","0"], "value": {"exact": ["1","0"]}},
            {"point": ["1/2","0"], "value": {"exact": ["1/2","0"]}},
            {"point": ["1/3","0"], "value": {"exact": ["1/3","0"]}}
        ]}
    }"#;
    let report = parse_report(&bvsigma_with_manifest("var", manifest));
    assert_eq!(report["result"]["value"]["exact"], "1");
    assert_eq!(report["result"]["status"], "Exact");
}

#[test]
fn classify_rays_spec_level_and_structural() {
    let spec_level = r#"{"set": {"builder": {"name": "kray",
        "directions": [["1","0"],["0","1"]], "rule": {"harmonic": null}}}}"#;
    let report = parse_report(&bvsigma_with_manifest("classify-rays", spec_level));
    assert_eq!(report["result"]["level"], "spec");
    assert_eq!(report["result"]["k"], 2);

    let structural = r#"{"set": {"builder": {"name": "parabola", "truncation": 4}}}"#;
    let report = parse_report(&bvsigma_with_manifest("classify-rays", structural));
    assert_eq!(report["result"]["level"], "structural");
    assert_eq!(report["result"]["k"], 4);
}

#[test]
fn ac_test_rules() {
    let identity = r#"{
        "set": {"builder": {"name": "real"}},
        "function": {"rule": {"identity": {}}}
    }"#;
    let report = parse_report(&bvsigma_with_manifest("ac-test", identity));
    assert_eq!(report["result"]["verdict"], "Ac");

    let chi0 = r#"{
        "set": {"builder": {"name": "real"}},
        "function": {"rule": {"indicator": {"points": [["0","0"]]}}}
    }"#;
    let report = parse_report(&bvsigma_with_manifest("ac-test", chi0));
    assert_eq!(report["result"]["verdict"], "NotAc");
}

#[test]
fn iso_distortion_swap_map() {
    let manifest = r#"{
        "set": {"builder": {"name": "real", "truncation": 6}},
        "map": {"swap01": {}},
        "family_size": 12,
        "norm": "bv"
    }"#;
    let report = parse_report(&bvsigma_with_manifest("iso-distortion", manifest));
    let max = report["result"]["max_ratio"]["exact"].as_str().unwrap();
    let (num, den) = max.split_once('/').unwrap_or((max, "1"));
    let ratio = num.parse::<f64>().unwrap() / den.parse::<f64>().unwrap();
    assert!(ratio <= 3.0 && ratio > 0.0);
}

#[test]
fn unknown_manifest_fields_are_rejected_with_exit_2() {
    let out = bvsigma_with_manifest("vf", r#"{"set": {"points": [["0","0"]]}, "bogus": 1}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown field"));
}

#[test]
fn malformed_rational_is_rejected_with_exit_2() {
    let out = bvsigma(&["vf", "--points", r#"[["one","0"]]"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn demos_pass_and_reports_are_deterministic() {
    for name in [
        "d-sharpness",
        "interleave",
        "lpam",
        "psi",
    ] {
        let first = bvsigma(&["demo", name, "--trunc", "6", "--n", "3"]);
        assert_eq!(first.status.code(), Some(0), "demo {name}");
        let report = parse_report(&first);
        assert_eq!(report["pass"], true, "demo {name}");
        let second = bvsigma(&["demo", name, "--trunc", "6", "--n", "3"]);
        assert_eq!(first.stdout, second.stdout, "demo {name} not deterministic");
    }
}

#[test]
fn unknown_demo_is_a_validation_error() {
    let out = bvsigma(&["demo", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threads_flag_is_echoed() {
    let out = bvsigma(&[
        "--threads",
        "4",
        "vf",
        "--points",
        r#"[["0","0"],["1","0"]]"#,
    ]);
    let report = parse_report(&out);
    assert_eq!(report["threads"], 4);
    let out = bvsigma(&["--threads", "0", "vf", "--points", r#"[["0","0"]]"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threads_env_variable_is_the_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_bvsigma"))
        .args(["vf", "--points", r#"[["0","0"]]"#])
        .env("THREADS", "3")
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["threads"], 3);
}

#[test]
fn cvar_uses_the_ordered_list() {
    let manifest = r#"{
        "set": {"points": [["-1","0"],["0","0"],["1","0"]]},
        "function": {"rule": {"indicator": {"points": [["0","0"]]}}},
        "list": [["-1","0"],["0","0"],["1","0"]]
    }"#;
    let report = parse_report(&bvsigma_with_manifest("cvar", manifest));
    assert_eq!(report["result"]["cvar"]["exact"], "2");
}

#[test]
fn spoke_norm_manifest() {
    let manifest = r#"{
        "set": {"builder": {"name": "kray",
            "directions": [["1","0"],["-1","0"]],
            "rule": {"geometric": {"ratio": "1/2"}},
            "truncation": 4}},
        "function": {"rule": {"indicator": {"points": [["1/2","0"]]}}}
    }"#;
    let report = parse_report(&bvsigma_with_manifest("spoke-norm", manifest));
    // sup 1 plus the single jump off the outermost ray point.
    assert_eq!(report["result"]["value"]["exact"], "2");
    assert_eq!(report["result"]["ray_count"], 2);
}
