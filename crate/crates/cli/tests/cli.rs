use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nsbox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsbox"))
        .args(args)
        .env_remove("NSBOX_MAX_QUBITS")
        .output()
        .expect("spawn nsbox")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Value of `key=` in a summary line.
fn field(line: &str, key: &str) -> f64 {
    let pat = format!("{key}=");
    line.split_whitespace()
        .find_map(|w| w.strip_prefix(&pat))
        .unwrap_or_else(|| panic!("no {key} in {line:?}"))
        .parse()
        .unwrap()
}

#[test]
fn chsh_presets_print_nine_digits() {
    let o = nsbox(&["chsh", "--basis", "computational", "--basis", "diagonal", "--basis", "circular"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].contains("S=4.000000000"), "{}", lines[0]);
    assert!(lines[1].contains("S=2.000000000"), "{}", lines[1]);
    assert!(lines[2].contains("S=4.000000000"), "{}", lines[2]);
}

#[test]
fn tsirelson_preset_is_optimal_for_oracle_and_source() {
    for oracle in ["quantum", "source"] {
        let o = nsbox(&["chsh", "--oracle", oracle, "--basis", "tsirelson"]);
        let s = field(stdout(&o).trim(), "S");
        assert!((s - 2.828427125).abs() < 1e-9, "{oracle}: {s}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nsbox(&["chsh", "--basis", "nope"]).status.code(), Some(2));
    assert_eq!(nsbox(&["chsh", "--visibility", "1.5"]).status.code(), Some(2));
    assert_eq!(nsbox(&["sweep", "--theta", "0:pi"]).status.code(), Some(2));
    assert_eq!(nsbox(&["chsh", "--oracle", "source", "--parties", "3"]).status.code(), Some(2));
    assert_eq!(nsbox(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn capacity_cap_from_environment() {
    assert_eq!(nsbox(&["multiparty", "--parties", "11"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_nsbox"))
        .args(["multiparty", "--parties", "4"])
        .env("NSBOX_MAX_QUBITS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
}

#[test]
fn sweep_csv_and_json_carry_the_same_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("s.csv");
    let json_path = dir.path().join("s.json");
    for (fmt, p) in [("csv", &csv_path), ("json", &json_path)] {
        let o = nsbox(&["sweep", "--grid", "7", "--phi", "0:pi:3", "--format", fmt, "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let csv_text = std::fs::read_to_string(&csv_path).unwrap();
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["theta", "phi", "S_quantum", "S_classical", "S_closedform"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 21);
    for (row, obj) in rows.iter().zip(json.as_array().unwrap()) {
        for (h, v) in headers.iter().zip(row.iter()) {
            assert_eq!(v.parse::<f64>().unwrap(), obj[h].as_f64().unwrap(), "{h}");
        }
    }
}

#[test]
fn sweep_streams_to_stdout_without_out() {
    let o = nsbox(&["sweep", "--theta", "pi/3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "theta,phi,S_quantum,S_classical,S_closedform\n\
         1.047197551,0.000000000,2.500000000,1.000000000,2.500000000\n"
    );
}

#[test]
fn nosig_passes_for_oracles_and_flags_free_inputs() {
    let o = nsbox(&["nosig", "--oracle", "classical", "--box", "svetlichny", "--random", "10", "--seed", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("no_signaling=pass"));
    let o = nsbox(&["nosig", "--unsafe-free-inputs"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert!((field(&line, "max_violation") - 1.0).abs() < 1e-12);
    assert!(line.contains("signaling=yes"));
}

#[test]
fn experiment_writes_readable_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    let o = nsbox(&[
        "experiment", "--visibility", "0.9775", "--shots", "20000", "--seed", "5",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let line = stdout(&o);
    let (s, err) = (field(&line, "S"), field(&line, "stderr"));
    assert!((s - 3.91).abs() < 3.0 * err + 1e-9, "{line}");
    let counts = nsbox::noise::CountsTable::read_csv(std::fs::File::open(&path).unwrap()).unwrap();
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(counts.total(x, y), 20000);
        }
    }
    let (s_file, _) = nsbox::noise::chsh_from_counts::<f64>(&counts).unwrap();
    assert!((s_file - s).abs() < 1e-9);
}

#[test]
fn experiment_exact_mode() {
    let o = nsbox(&["experiment", "--shots", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("mode=exact S=4.000000000"));
}

#[test]
fn behavior_dump_json_matches_pr_box() {
    let o = nsbox(&["behavior-dump", "--oracle", "classical", "--format", "json"]);
    assert!(o.status.success());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for r in rows {
        let g = |k: &str| r[k].as_u64().unwrap();
        let expected = if (g("a1") ^ g("a2")) == (g("x1") & g("x2")) { 0.5 } else { 0.0 };
        assert_eq!(r["p"].as_f64().unwrap(), expected);
    }
}

#[test]
fn prbases_grid_reports_hit_families() {
    let o = nsbox(&["prbases", "--oracle", "classical", "--grid", "20"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("hits=2 "), "{out}");
    assert!(!out.contains("novel"));
}

#[test]
fn multiparty_writes_behavior_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let o = nsbox(&["multiparty", "--parties", "4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("box_check=pass"));
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert_eq!(text.lines().count(), 1 + 16 * 16);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",0.125000000") || l.ends_with(",0.000000000")));
}
