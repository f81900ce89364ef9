use std::process::{Command, Output};

use serde_json::Value;

fn hirota(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hirota"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn records(v: &Value) -> &Vec<Value> {
    v["records"].as_array().unwrap()
}

#[test]
fn periodic_two_site_spectrum() {
    let out = hirota(&["spectrum", "--sites", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let mut energies: Vec<f64> = v["states"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| {
            std::iter::repeat_n(
                s["energy"].as_f64().unwrap(),
                s["multiplicity"].as_u64().unwrap() as usize,
            )
        })
        .collect();
    energies.sort_by(f64::total_cmp);
    for (e, x) in energies.iter().zip([-2.0, 0.0, 0.0, 0.0]) {
        assert!((e - x).abs() < 1e-10, "{energies:?}");
    }
}

#[test]
fn open_single_site_states_start_at_one() {
    let v = json(&hirota(&[
        "spectrum",
        "--topology",
        "open",
        "--sites",
        "1",
        "--xi",
        "0",
    ]));
    let states = v["states"].as_array().unwrap();
    assert_eq!(states.len(), 2);
    for s in states {
        assert_eq!(s["t"][0]["num"], serde_json::json!([[1.0, 0.0]]));
        assert_eq!(s["t"][0]["den"], serde_json::json!([[1.0, 0.0]]));
    }
}

#[test]
fn configuration_errors_exit_with_two() {
    let out = hirota(&["spectrum", "--topology", "open", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
    assert!(out.stdout.is_empty());
    assert_eq!(hirota(&["spectrum", "--sites", "9"]).status.code(), Some(2));
    assert_eq!(hirota(&["spectrum", "--kmax", "6"]).status.code(), Some(2));
    assert_eq!(hirota(&["spectrum", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(hirota(&["spectrum", "--bogus"]).status.code(), Some(2));
}

#[test]
fn hirota_like_suite_passes_on_an_open_chain() {
    let out = hirota(&[
        "verify",
        "hirota-like",
        "--topology",
        "open",
        "--sites",
        "2",
        "--xi",
        "0.5",
        "--kmax",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(records(&v).iter().any(|r| r["k"] == 4 && r["a"] == 3));
}

#[test]
fn exact_plucker_residuals_vanish() {
    let out = hirota(&["verify", "plucker", "--model", "exact", "--kmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(!records(&v).is_empty());
    for r in records(&v) {
        assert_eq!(r["residual"], 0.0);
        assert!(r["note"].as_str().unwrap().starts_with("surviving terms 3"));
    }
}

#[test]
fn corrupted_delta_fails_the_tq_suite() {
    let out = hirota(&[
        "verify",
        "tq",
        "--topology",
        "open",
        "--sites",
        "2",
        "--delta-shift",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let first = &records(&v)[0];
    assert_eq!(first["pass"], false);
    assert!(first["residual"].as_f64().unwrap() > 1e-8);
}

#[test]
fn failures_are_listed_first() {
    let out = hirota(&[
        "verify",
        "all",
        "--topology",
        "open",
        "--sites",
        "1",
        "--delta-shift",
        "0.1",
        "--kmax",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let passes: Vec<bool> = records(&v)
        .iter()
        .map(|r| r["pass"].as_bool().unwrap())
        .collect();
    assert!(passes.windows(2).all(|w| w[0] <= w[1]));
    assert!(!passes[0] && passes[passes.len() - 1]);
}

#[test]
fn periodic_two_site_q_functions() {
    let out = hirota(&["solve-q", "--sites", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mut degrees: Vec<u64> = v["q_functions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["degree"].as_u64().unwrap())
        .collect();
    degrees.sort();
    assert_eq!(degrees, vec![0, 1]);
    for q in v["q_functions"].as_array().unwrap() {
        let c = q["coefficients"].as_array().unwrap();
        let lead = c.last().unwrap();
        assert_eq!(lead, &serde_json::json!([1.0, 0.0]));
        if c.len() == 2 {
            assert!(
                c[0][0].as_f64().unwrap().abs() < 1e-10 && c[0][1].as_f64().unwrap().abs() < 1e-10
            );
        }
    }
}

#[test]
fn open_single_site_roots_pair_up() {
    let v = json(&hirota(&[
        "solve-q",
        "--topology",
        "open",
        "--sites",
        "1",
        "--xi",
        "0.5",
    ]));
    for q in v["q_functions"].as_array().unwrap() {
        assert_eq!(q["degree"], 2);
        assert_eq!(q["paired"], true);
        let r = q["roots"].as_array().unwrap();
        for (x, y) in r[0]
            .as_array()
            .unwrap()
            .iter()
            .zip(r[1].as_array().unwrap())
        {
            assert!((x.as_f64().unwrap() + y.as_f64().unwrap()).abs() < 1e-9);
        }
    }
    for r in records(&v).iter().filter(|r| r["relation"] == "bethe") {
        assert!(r["residual"].as_f64().unwrap() <= 1e-7);
    }
}

#[test]
fn homogeneous_open_chain_admits_a_constant_q() {
    let v = json(&hirota(&[
        "solve-q",
        "--topology",
        "open",
        "--sites",
        "1",
        "--xi",
        "0",
    ]));
    assert_eq!(v["summary"]["failed"], 0);
    let degrees: Vec<u64> = v["q_functions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["degree"].as_u64().unwrap())
        .collect();
    assert!(degrees.contains(&0), "{degrees:?}");
    assert!(degrees.iter().all(|d| d % 2 == 0));
}

#[test]
fn csv_and_text_renderings() {
    let csv = String::from_utf8(hirota(&["verify", "tq", "--format", "csv"]).stdout).unwrap();
    assert!(csv.starts_with("check,relation,label,k,a,residual,pass,note\n"));
    assert!(csv.lines().skip(1).all(|l| l.starts_with("tq,tq,")));
    let text = String::from_utf8(hirota(&["verify", "tq", "--format", "text"]).stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("verify tq:"));
}

#[test]
fn report_written_to_file() {
    let dir = std::env::temp_dir().join(format!("hirota-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = hirota(&["verify", "hirota", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "verify hirota");
    std::fs::remove_dir_all(dir).unwrap();
}
