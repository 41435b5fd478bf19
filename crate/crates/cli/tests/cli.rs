use abflux_cli::run_cli;
use abflux_core::partialwave::hard_cylinder_amplitude;
use std::f64::consts::PI;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("abflux").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn dcs_schema_and_values() {
    let (code, out, _) = run(&[
        "dcs",
        "--k",
        "1",
        "--a",
        "1",
        "--alpha",
        "0",
        "--sweep",
        "theta:-3:3:8",
    ]);
    assert_eq!(code, 0);
    let (header, rows) = csv(&out);
    assert_eq!(header, ["theta", "re_f", "im_f", "dcs"]);
    assert_eq!(rows.len(), 8);
    for r in rows {
        let f = hard_cylinder_amplitude(1.0, 1.0, r[0]).unwrap();
        assert!((r[1] - f.re).abs() < 1e-12 && (r[2] - f.im).abs() < 1e-12);
        assert!((r[3] - (r[1] * r[1] + r[2] * r[2])).abs() < 1e-12 * r[3]);
    }
}

#[test]
fn default_angles_avoid_the_forward_direction() {
    let (code, out, _) = run(&["amplitude", "--k", "2", "--a", "0.5", "--alpha", "0.25"]);
    assert_eq!(code, 0);
    let (_, rows) = csv(&out);
    assert_eq!(rows.len(), 360);
    assert!(rows.iter().all(|r| r[0] != 0.0 && r[0] > -PI && r[0] < PI));
}

#[test]
fn zero_radius_uses_the_flux_line() {
    let (code, out, _) = run(&[
        "dcs",
        "--k",
        "1",
        "--a",
        "0",
        "--alpha",
        "0.5",
        "--theta",
        "3.141592653589793",
    ]);
    assert_eq!(code, 0);
    let (_, rows) = csv(&out);
    assert!((rows[0][3] - 1.0 / (2.0 * PI)).abs() < 1e-15);
}

#[test]
fn non_theta_sweep_prepends_its_axis() {
    let (code, out, _) = run(&[
        "dcs",
        "--k",
        "1",
        "--theta",
        "1",
        "--alpha",
        "0.3",
        "--sweep",
        "a:0.5:1.5:3",
    ]);
    assert_eq!(code, 0);
    let (header, rows) = csv(&out);
    assert_eq!(header, ["a", "theta", "re_f", "im_f", "dcs"]);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [0.5, 1.0, 1.5]);
}

#[test]
fn tcs_is_periodic_in_alpha() {
    let (code, out, _) = run(&["tcs", "--k", "1", "--a", "1", "--sweep", "alpha:0:2:81"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "alpha,sigma");
    let sigma: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(sigma.len(), 81);
    for i in 0..41 {
        assert_eq!(sigma[i], sigma[i + 40], "row {i}");
    }
}

#[test]
fn tcs_without_sweep_reports_alpha() {
    let (code, out, _) = run(&["tcs", "--k", "1", "--a", "1", "--alpha", "0"]);
    assert_eq!(code, 0);
    let (header, rows) = csv(&out);
    assert_eq!(header, ["alpha", "sigma"]);
    assert_eq!(rows[0][0], 0.0);
    assert!(rows[0][1] > 0.0 && rows[0][1].is_finite());
}

#[test]
fn field_schema() {
    let (code, out, _) = run(&[
        "field", "--k", "1", "--a", "1", "--alpha", "0.3", "--grid", "1:3:3:4",
    ]);
    assert_eq!(code, 0);
    let (header, rows) = csv(&out);
    assert_eq!(header, ["r", "theta", "re_u", "im_u", "abs_u2"]);
    assert_eq!(rows.len(), 12);
    assert!(rows[..4].iter().all(|r| r[4] < 1e-20));
}

#[test]
fn json_output_has_meta() {
    let (code, out, _) = run(&[
        "amplitude",
        "--k",
        "1",
        "--a",
        "1",
        "--alpha",
        "0.5",
        "--theta",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meta"]["alpha"], 0.5);
    assert!(v["meta"]["M"].as_u64().unwrap() > 0);
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    let keys: Vec<&String> = v["records"][0].as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 4);
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# run\nk = 1\na = 1\nalpha = 0\ntheta = 2\n").unwrap();
    let path = cfg.to_str().unwrap();
    let (_, from_file, _) = run(&["dcs", "--config", path]);
    let (_, overridden, _) = run(&["dcs", "--config", path, "--theta", "1"]);
    let (_, direct, _) = run(&["dcs", "--k", "1", "--a", "1", "--alpha", "0", "--theta", "1"]);
    assert_ne!(from_file, overridden);
    assert_eq!(overridden, direct);

    std::fs::write(&cfg, "k = 1\n\nsize = 3\n").unwrap();
    let (code, _, err) = run(&["dcs", "--config", path]);
    assert_eq!(code, 1);
    assert!(err.contains(":3:") && err.contains("size"), "{err}");
}

#[test]
fn sweep_conflicts_with_a_scalar_from_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "k = 1\na = 1\nalpha = 0.2\n").unwrap();
    let (code, out, err) = run(&["tcs", "--config", cfg.to_str().unwrap(), "--sweep", "alpha:0:1:3"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("alpha"));
}

#[test]
fn invalid_arguments_exit_one() {
    let cases: &[&[&str]] = &[
        &[
            "field", "--k", "1", "--a", "1", "--alpha", "0", "--grid", "1:2:2:2", "--sweep", "k:1:2:2",
        ],
        &["field", "--k", "1", "--a", "1", "--alpha", "0"],
        &["dcs", "--k", "-1", "--a", "1", "--alpha", "0"],
        &["dcs", "--k", "1", "--a", "1"],
        &["dcs", "--k", "1", "--a", "1", "--alpha", "0.5", "--theta", "0"],
        &[
            "amplitude",
            "--k",
            "1",
            "--a",
            "1",
            "--alpha",
            "0",
            "--theta",
            "4",
        ],
        &["tcs", "--k", "1", "--a", "1", "--sweep", "theta:0:1:2"],
        &["verify", "--k", "1"],
        &["dcs", "--sweep", "r:0:1:3"],
        &["nonsense"],
    ];
    for args in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.csv");
    let (code, out, _) = run(&[
        "tcs",
        "--k",
        "1",
        "--a",
        "1",
        "--alpha",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("alpha,sigma\n"));
}

#[test]
fn verify_single_suite() {
    let (code, out, err) = run(&["verify", "--suite", "fluxline"]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("check,measured,threshold,status"));
    for l in lines {
        assert!(l.ends_with(",pass"), "{l}");
        let id: u32 = l.split('.').next().unwrap().parse().unwrap();
        assert!((6..=8).contains(&id));
    }
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_abflux");
    let args = [
        "dcs",
        "--k",
        "1.5",
        "--a",
        "0.7",
        "--alpha",
        "-0.3",
        "--sweep",
        "theta:-3:3:64",
    ];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains(&b'\r'));
}
