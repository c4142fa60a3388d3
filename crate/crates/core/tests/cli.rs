use std::process::{Command, Output};

use pitchclass::cli::report_exit_code;
use pitchclass::harmony::verify_table_isomorphism;
use pitchclass::{make_ntet, HarmonyGroup, PitchHz, VerifyConfig};

fn pitchclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pitchclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn freq_middle_c() {
    let out = pitchclass(&["freq", "--tuning", "12tet@440", "--name", "C@-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "261.626 Hz\n");
    let out = pitchclass(&["freq", "--tuning", "12tet@440", "--coord", "0,6", "--precision", "6"]);
    assert_eq!(stdout(&out), "622.253967 Hz\n");
}

#[test]
fn verify_confirms_and_exits_zero() {
    let out = pitchclass(&["verify", "--n", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("H_12 ≅ Z_12: confirmed\n"));
    let out = pitchclass(&["verify", "--n", "200", "--exhaustive-limit", "64"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("sampled"));
}

#[test]
fn verify_exit_code_tracks_failures() {
    let config = VerifyConfig::default();
    let group = HarmonyGroup::new(make_ntet(PitchHz::from_integer(440).unwrap(), 12).unwrap().into());
    let clean = verify_table_isomorphism(&group.cayley_table(), &config);
    assert_eq!(report_exit_code(&clean), 0);
    let mut corrupted = group.cayley_table();
    corrupted.set(7, 7, 0);
    let report = verify_table_isomorphism(&corrupted, &config);
    assert!(!report.axiom_failures.is_empty());
    assert_eq!(report_exit_code(&report), 1);
}

#[test]
fn usage_and_validation_exit_codes() {
    assert_eq!(pitchclass(&["table"]).status.code(), Some(2));
    assert_eq!(pitchclass(&["nonsense"]).status.code(), Some(2));
    let out = pitchclass(&["parse", "H"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 0"));
}

#[test]
fn table_from_definition_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("five-hundred.tuning");
    std::fs::write(
        &path,
        "name: five hundred\nkind: custom\nn: 4\nstandard_pitch: 500\nsteps: ratio 5/4; rootoffset 1/5; rootoffset 1/20; rootoffset 1/2\n",
    )
    .unwrap();
    let out = pitchclass(&["table", "--tuning", path.to_str().unwrap(), "--octaves", "-1..0", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let hz: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(
        hz,
        ["250.000", "312.500", "362.500", "375.000", "500.000", "500.000", "625.000", "725.000", "750.000", "1000.000"]
    );

    let bad = dir.path().join("bad.tuning");
    std::fs::write(&bad, "kind: custom\nn: 1\nsteps: ratio 3/2\nstandard_pitch: 100\n").unwrap();
    let out = pitchclass(&["table", "--tuning", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not close"));
}

#[test]
fn export_scl_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edo.scl");
    let out = pitchclass(&["export-scl", "--tuning", "5edo@100", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let scl = pitchclass::io::parse_scl(&text).unwrap();
    assert_eq!(scl.description, "5-EDO tuned to 100 Hz");
    assert_eq!(scl.pitches.len(), 5);
}

#[test]
fn json_table_is_an_array_of_rows() {
    let out = pitchclass(&["table", "--tuning", "12tet@440", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 13);
    for row in rows {
        let keys: Vec<_> = row.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 5);
        for key in ["k", "i", "exact", "hz", "name"] {
            assert!(keys.iter().any(|k| k == key));
        }
    }
}
