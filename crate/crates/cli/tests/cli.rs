//! Black-box tests of the binary contract: exit codes, CSV shape,
//! config-file precedence, calibration persistence, and output routing.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn spinchain() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinchain"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = spinchain().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "expected success for {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

const RUN_HEADER: &str = "tau,U_A,U_B,U_C,Q_A,Q_B,Q_C,kT_A,kT_B,kT_C,\
                          I_AB,I_BC,I_AC,D_AB,D_BC,D_AC,alpha_AB,alpha_BC,alpha_AC";

#[test]
fn usage_errors_exit_2() {
    let bad_invocations: &[&[&str]] = &[
        &["run"],
        &["run", "--case", "bogus"],
        &["run", "--case", "classical", "--backend", "quantum"],
        &["run", "--case", "classical", "--temps", "1,2"],
        &["run", "--case", "classical", "--tau-points", "1"],
        &["run", "--temps", "5.0"],
        &["run", "--temps", "5.0,2.0", "--alphas", "0.1,0.2"],
        &["run", "--base-temps", "5.0,2.0"],
        &["run", "--temps", "5.0,2.0", "--backend", "circuit"],
        &["calibrate", "--case", "bogus"],
        &["no-such-command"],
    ];
    for args in bad_invocations {
        let out = spinchain().args(*args).output().unwrap();
        assert_eq!(exit_code(&out), 2, "args {args:?}");
    }
}

#[test]
fn inadmissible_correlations_exit_3() {
    let out = spinchain()
        .args(["run", "--temps", "2.0,1.0", "--alphas", "0.4"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 3);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("positivity"), "stderr: {msg}");
}

#[test]
fn classical_run_emits_csv_and_directional_summary() {
    let out = run_ok(&["run", "--case", "classical", "--tau-points", "5"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), RUN_HEADER);
    assert_eq!(lines.count(), 5);

    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("direction: A→B→C"), "summary: {summary}");
    assert!(summary.contains("qubit A"));
}

#[test]
fn reversal_run_reports_reversed_direction() {
    let out = run_ok(&[
        "run",
        "--case",
        "reversal",
        "--tau-points",
        "3",
        "--tau-stop",
        "0.1",
    ]);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("direction: C→B→A"), "summary: {summary}");
}

#[test]
fn identical_configs_give_byte_identical_csv() {
    let args = ["run", "--case", "classical", "--tau-points", "11"];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_routes_csv_to_file_and_summary_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("traj.csv");
    let out = run_ok(&[
        "run",
        "--case",
        "classical",
        "--tau-points",
        "4",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with(RUN_HEADER));
    assert_eq!(csv.lines().count(), 5);

    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("first-step heat rates"));
    assert!(out.stderr.is_empty());
}

#[test]
fn config_file_supplies_values_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.conf");
    fs::write(
        &cfg_path,
        "# sweep configuration\ncase = classical\ntau_points = 4\ntau_stop = 1.0\n",
    )
    .unwrap();

    let from_file = run_ok(&["run", "--config", cfg_path.to_str().unwrap()]);
    let stdout = String::from_utf8(from_file.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 5, "file grid should apply");

    let overridden = run_ok(&[
        "run",
        "--config",
        cfg_path.to_str().unwrap(),
        "--tau-points",
        "7",
    ]);
    let stdout = String::from_utf8(overridden.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 8, "flag must beat the file");

    fs::write(&cfg_path, "case = classical\nwavelength = 7\n").unwrap();
    let bad = spinchain()
        .args(["run", "--config", cfg_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(exit_code(&bad), 2);
}

#[test]
fn explicit_and_prepared_styles_run() {
    // Explicit chain state; epsilon defaults to 1 outside presets.
    let out = run_ok(&[
        "run",
        "--temps",
        "9.8,5.0,2.0",
        "--alphas=-0.02,-0.01",
        "--tau-points",
        "3",
    ]);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("epsilon 1"), "summary: {summary}");

    let out = run_ok(&[
        "run",
        "--base-temps",
        "9.8,5.0,2.0",
        "--taus=-0.3,-0.4",
        "--tau-points",
        "3",
    ]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with(RUN_HEADER));
}

#[test]
fn other_chain_sizes_use_generalized_headers() {
    let out = run_ok(&["run", "--temps", "5.0,4.0,3.0,2.0", "--tau-points", "3"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let header = stdout.lines().next().unwrap();
    assert_eq!(
        header,
        "tau,U_0,U_1,U_2,U_3,Q_0,Q_1,Q_2,Q_3,kT_0,kT_1,kT_2,kT_3,\
         I_0_1,I_0_2,I_0_3,I_1_2,I_1_3,I_2_3,\
         D_0_1,D_0_2,D_0_3,D_1_2,D_1_3,D_2_3,\
         alpha_0_1,alpha_0_2,alpha_0_3,alpha_1_2,alpha_1_3,alpha_2_3"
    );
}

fn calibrate_into(dir: &Path, case: &str) -> Output {
    let out = spinchain()
        .env("SPINCHAIN_CALIB_DIR", dir)
        .args(["calibrate", "--case", case])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "calibrate {case}: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    out
}

#[test]
fn calibrate_persists_and_circuit_backend_reuses_it() {
    let dir = tempfile::tempdir().unwrap();
    let out = calibrate_into(dir.path(), "classical");
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("result: PASS"));
    assert!(table.contains("T_A"));

    let calib = fs::read_to_string(dir.path().join("classical.calib")).unwrap();
    assert!(calib.contains("case = classical"));
    assert!(calib.contains("tau_01 = 0.0000000000000000e0"));

    let run = spinchain()
        .env("SPINCHAIN_CALIB_DIR", dir.path())
        .args([
            "run",
            "--case",
            "classical",
            "--backend",
            "circuit",
            "--tau-points",
            "3",
        ])
        .output()
        .unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.starts_with(RUN_HEADER));
}

#[test]
fn corrupt_calibration_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("classical.calib"),
        "epsilon = not-a-number\n",
    )
    .unwrap();
    let out = spinchain()
        .env("SPINCHAIN_CALIB_DIR", dir.path())
        .args(["run", "--case", "classical", "--tau-points", "3"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 3);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("calibrate"), "stderr: {msg}");
}

#[test]
fn verify_circuits_passes_and_reports() {
    let out = run_ok(&["verify-circuits"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("verify-circuits: PASS"));
    assert!(!stdout.contains("FAIL "));
    assert!(stdout.contains("cnot-count swapped13"));
    assert!(stdout.contains("equivalence product18"));
}

#[test]
fn two_qubit_demo_contract() {
    let out = run_ok(&["two-qubit"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let header = stdout.lines().next().unwrap();
    assert!(header.starts_with("tau,corr_U_A,corr_U_B"));
    assert!(header.ends_with("unc_I_AB,unc_D_AB,unc_alpha_AB"));
    assert_eq!(stdout.lines().count(), 102);

    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("correlated: hot qubit initially absorbs"));
    assert!(summary.contains("uncorrelated: hot qubit initially releases"));
}
