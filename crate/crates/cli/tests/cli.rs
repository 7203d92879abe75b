use std::process::{Command, Output};

use serde_json::Value;

fn borromean(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borromean"))
        .args(args)
        .env_remove("BORROMEAN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = borromean(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn coboson_reports_exact_fraction() {
    let v: Value = serde_json::from_str(&stdout(&["coboson", "--n", "2", "--d", "3"])).unwrap();
    assert_eq!(v["B_N"], "5/2");
    assert_eq!(v["N"], 2);
    assert_eq!(v["d"], 3);
    let v: Value = serde_json::from_str(&stdout(&["coboson", "--n", "1", "--d", "7"])).unwrap();
    assert_eq!(v["B_N"], "1");
}

#[test]
fn check_eigen_trimer() {
    let v: Value = serde_json::from_str(&stdout(&[
        "check-eigen",
        "--n",
        "3",
        "--d",
        "6",
        "--phi",
        "2pi/3",
    ]))
    .unwrap();
    assert_eq!(v["is_eigenvector"], true);
    assert!(v["residual"].as_f64().unwrap() <= 1e-12);
    assert!((v["eigenvalue_abs"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn check_eigen_all_six_with_hadamard() {
    let text = stdout(&["check-eigen", "--all", "--d", "8", "--free-coin", "hadamard"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["is_eigenvector"] == true));
}

#[test]
fn failed_eigen_check_exits_one_with_report() {
    let out = borromean(&["check-eigen", "--n", "3", "--phi", "pi/5"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["is_eigenvector"], false);
}

#[test]
fn argument_errors_exit_two() {
    for args in [
        &["spectrum", "--bogus"][..],
        &["spectrum", "--phi", "2pi3"],
        &["spectrum", "--d", "1"],
        &["check-eigen", "--phi", "0"],
        &["check-eigen", "--n", "3", "--d", "5", "--r", "1"],
        &["survival", "--n", "5"],
        &["evolve", "--free-coin", "param:1,2"],
        &["nonsense"],
    ] {
        let out = borromean(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
    let out = borromean(&["fidelity", "--bogus"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn csv_headers_and_line_endings() {
    let cases = [
        (
            vec!["spectrum", "--d", "10"],
            "k_over_d,abs_lambda_plus,abs_lambda_minus",
        ),
        (vec!["survival", "--d", "6", "--t-max", "5"], "t,p_B"),
        (vec!["fidelity", "--t", "1,10", "--phi-grid", "12"], "phi,t,p"),
    ];
    for (args, header) in cases {
        let text = stdout(&args);
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().next().unwrap(), header);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["fidelity", "--t", "1,10,100,1000", "--phi-grid", "720"],
        vec!["ghz-scan", "--phi-grid", "360"],
        vec!["survival", "--n", "3", "--d", "10", "--t-max", "50"],
        vec![
            "evolve",
            "--n",
            "3",
            "--d",
            "5",
            "--t",
            "4",
            "--free-coin",
            "hadamard",
            "--format",
            "json",
        ],
    ] {
        let a = stdout(&args);
        let b = stdout(&args);
        let threaded = Command::new(env!("CARGO_BIN_EXE_borromean"))
            .args(&args)
            .env("BORROMEAN_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a.as_bytes(), &threaded.stdout[..], "{args:?} single-threaded");
    }
}

#[test]
fn fidelity_is_one_at_two_thirds_pi() {
    let text = stdout(&["fidelity", "--t", "1000", "--phi-grid", "720"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 719);
    let peak = &rows[239];
    assert!((peak[0] - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-10);
    assert_eq!(peak[2], 1.0);
}

#[test]
fn survival_methods_agree() {
    let base = ["survival", "--n", "2", "--d", "12", "--t-max", "60", "--method"];
    let direct = csv_rows(&stdout(&[&base[..], &["direct"]].concat()));
    let momentum = csv_rows(&stdout(&[&base[..], &["momentum"]].concat()));
    assert_eq!(direct.len(), 61);
    for (a, b) in direct.iter().zip(&momentum) {
        assert!((a[1] - b[1]).abs() < 1e-10);
    }
}

#[test]
fn evolve_json_feeds_back_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.json");
    let args = [
        "evolve",
        "--n",
        "2",
        "--d",
        "5",
        "--free-coin",
        "hadamard",
        "--phi",
        "pi/5",
    ];
    let mut first = args.to_vec();
    first.extend(["--t", "6", "--format", "json", "--output", traj.to_str().unwrap()]);
    stdout(&first);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&traj).unwrap()).unwrap();
    let snaps = v.as_array().unwrap();
    assert_eq!(snaps.len(), 7);

    let init = dir.path().join("init.json");
    std::fs::write(&init, snaps[3]["amplitudes"].to_string()).unwrap();
    let mut resumed = args.to_vec();
    resumed.extend(["--t", "3", "--format", "json", "--input", init.to_str().unwrap()]);
    let w: Value = serde_json::from_str(&stdout(&resumed)).unwrap();
    let end = &w.as_array().unwrap()[3]["amplitudes"];
    let expected = &snaps[6]["amplitudes"];
    let (a, b) = (end.as_array().unwrap(), expected.as_array().unwrap());
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert_eq!(x["positions"], y["positions"]);
        assert_eq!(x["coins"], y["coins"]);
        for part in ["re", "im"] {
            assert!((x[part].as_f64().unwrap() - y[part].as_f64().unwrap()).abs() < 1e-14);
        }
    }
}

#[test]
fn bad_threads_variable_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_borromean"))
        .args(["spectrum", "--d", "4"])
        .env("BORROMEAN_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
