use std::path::PathBuf;
use std::process::{Command, Output};

fn dlcurves(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlcurves")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dlcurves-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn read_json(p: &PathBuf) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

#[test]
fn curve_info_prints_closed_forms() {
    let out = dlcurves(&["curve-info", "--family", "ree", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["genus"], 3627);
    assert_eq!(v["m_infinity"], 1036);
    assert_eq!(v["N1"], 19684);
}

#[test]
fn count_points_report_names_field_and_fixtures() {
    let report = scratch("points.json");
    let out = dlcurves(&["count-points", "--family", "ree", "--m", "1", "--ext", "1", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = read_json(&report);
    assert_eq!(r["data"]["enumerated"], 19684);
    assert_eq!(r["field"]["p"], 3);
    assert_eq!(r["field"]["n"], 3);
    assert_eq!(r["fixtures"].as_array().unwrap().len(), 6);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["source"].is_string()));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dlcurves(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(dlcurves(&["curve-info", "--bogus"]).status.code(), Some(2));
    assert_eq!(dlcurves(&["curve-info", "--family", "klein"]).status.code(), Some(2));
    assert_eq!(dlcurves(&["curve-info", "--family", "ree", "--char", "2"]).status.code(), Some(2));
    let out = dlcurves(&["semigroup", "--family", "ree", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m = 1 only"));
}

#[test]
fn precision_ceiling_below_need_fails() {
    let out = dlcurves(&["valuations", "--family", "ree", "--precision-ceiling", "8"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corrupt_fixture_is_refused() {
    let dir = scratch("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for e in std::fs::read_dir(&src).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
    let mut bytes = std::fs::read(dir.join("ree_generators.json")).unwrap();
    bytes.push(b' ');
    std::fs::write(dir.join("ree_generators.json"), bytes).unwrap();
    let out = dlcurves(&["curve-info", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("checksum mismatch"));
}

#[test]
fn valuations_csv_has_fixed_header() {
    let out = dlcurves(&["valuations", "--family", "suzuki"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "function,nu0,nu_infinity");
    assert_eq!(lines[1..], ["t,0,0", "x,1,-8", "y,3,-10", "z,5,-12", "w,13,-13"]);
}

#[test]
fn suzuki_semigroup_and_generators() {
    let csv = scratch("suzuki.csv");
    let gens = scratch("suzuki-gens.json");
    let out = dlcurves(&["semigroup", "--family", "suzuki", "--out", csv.to_str().unwrap(), "--generators", gens.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read_json(&gens), serde_json::json!([8, 10, 12, 13]));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 28);
    assert_eq!(text.lines().filter(|l| l.contains(",gap,")).count(), 14);
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let a = scratch("all-a.json");
    let b = scratch("all-b.json");
    for p in [&a, &b] {
        let out = dlcurves(&["verify-all", "--family", "suzuki", "--m", "1", "--deterministic", "--report", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = read_json(&a);
    assert!(r["seconds"].is_null());
    let ids: Vec<u64> = r["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [2, 3, 4, 5, 6, 11]);
}

#[test]
fn hermitian_equation_matches_fixture() {
    let eqs = scratch("herm.json");
    let out = dlcurves(&["generate-equations", "--family", "hermitian", "--out", eqs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read_json(&eqs)["equations"].as_array().unwrap().len(), 1);
}
