//! End-to-end checks of the command-line interface: flags, file formats,
//! exit codes, and determinism of the emitted bytes.

use std::process::Command;

use num_complex::Complex64;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minrep"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn eval_radial_single_row() {
    let (code, stdout, stderr) =
        run(&["eval", "--kind", "radial", "--m", "3", "--l", "0", "--t", "1,0", "--points", "1,1"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("r,rp,re,im"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 4);
    // cross-check against the library
    let p = minrep::radial::ModelParams::new(3).unwrap();
    let t = minrep::radial::ComplexTime::from_parts(1.0, 0.0).unwrap();
    let want = minrep::radial::radial_kernel(
        1.0,
        1.0,
        &t,
        0,
        p,
        &minrep::specfun::SpecFunConfig::default(),
    )
    .unwrap();
    let re: f64 = row[2].parse().unwrap();
    let im: f64 = row[3].parse().unwrap();
    assert!((Complex64::new(re, im) - want).norm() < 1e-14 * want.norm());
    assert!(lines.next().is_none());
}

#[test]
fn eval_rejects_time_outside_domain() {
    let (code, _, stderr) = run(&[
        "eval", "--kind", "full", "--m", "3", "--t", "0,0", "--points",
        "1,0,0,0,1,0",
    ]);
    assert_eq!(code, 3, "stderr: {stderr}");
    assert!(stderr.contains("lattice") || stderr.contains("domain"));
}

#[test]
fn eval_inversion_antipodal_constant() {
    // m = 3, antipodal pair: K = -2/pi
    let (code, stdout, _) = run(&[
        "eval", "--kind", "inversion", "--m", "3", "--points", "1,0,0,-2,0,0",
    ]);
    assert_eq!(code, 0);
    let row: Vec<&str> = stdout.lines().nth(1).unwrap().split(',').collect();
    let re: f64 = row[1].parse().unwrap();
    let im: f64 = row[2].parse().unwrap();
    assert!((re + 2.0 / std::f64::consts::PI).abs() < 1e-13);
    assert!(im.abs() < 1e-15);
}

#[test]
fn eval_output_is_byte_deterministic() {
    let args = ["eval", "--kind", "radial", "--m", "4", "--l", "1", "--t", "0.7,0.3", "--points",
        "0.5,1.25;2,0.125"];
    let (c1, s1, _) = run(&args);
    let (c2, s2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c1, c2);
    assert_eq!(s1, s2);
}

#[test]
fn transform_semigroup_scales_eigenprofile() {
    let dir = std::env::temp_dir().join(format!("minrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("f10.csv");
    let output = dir.join("out.csv");
    // f_{1,0} for m = 3 sampled on a geometric grid
    let p = minrep::radial::ModelParams::new(3).unwrap();
    let f = minrep::radial::make_fal(1, 0, p).unwrap();
    let mut text = String::from("r,re\n");
    for &r in &minrep::radial::geometric_grid(1e-3, 25.0, 400) {
        text.push_str(&format!("{},{}\n", r, f.eval(r).re));
    }
    std::fs::write(&input, text).unwrap();

    let (code, _, stderr) = run(&[
        "transform", "--op", "semigroup", "--m", "3", "--l", "0", "--t", "0.5,0",
        "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");

    // output ~ e^{-(1 + (m-1)/2) * 0.5} * input = e^{-1} * input
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.starts_with("# op=semigroup"));
    let scale = (-1.0f64).exp();
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for line in text.lines().skip(3) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let want = scale * f.eval(cells[0]).re;
        num += (cells[1] - want) * (cells[1] - want);
        den += want * want;
    }
    assert!((num / den).sqrt() < 1e-6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn transform_hankel_twice_restores_input() {
    let dir = std::env::temp_dir().join(format!("minrep-cli-hankel-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("h.csv");
    let mid = dir.join("mid.csv");
    let output = dir.join("back.csv");
    let nu = 2.0f64;
    let h = |y: f64| y.powf(nu + 0.5) * (-y * y / 2.0).exp();
    let grid: Vec<f64> = (1..=300).map(|i| 0.025 * i as f64).collect();
    let mut text = String::from("r,re\n");
    for &y in &grid {
        text.push_str(&format!("{},{}\n", y, h(y)));
    }
    std::fs::write(&input, text).unwrap();

    let (code, _, stderr) = run(&[
        "transform", "--op", "hankel", "--nu", "2", "--input", input.to_str().unwrap(),
        "--output", mid.to_str().unwrap(), "--quad-n", "500",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let (code, _, stderr) = run(&[
        "transform", "--op", "hankel", "--nu", "2", "--input", mid.to_str().unwrap(),
        "--output", output.to_str().unwrap(), "--quad-n", "500",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");

    let text = std::fs::read_to_string(&output).unwrap();
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.starts_with('r')) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let want = h(cells[0]);
        num += (cells[1] - want) * (cells[1] - want);
        den += want * want;
    }
    assert!((num / den).sqrt() < 1e-6, "round trip defect {}", (num / den).sqrt());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn transform_rejects_empty_input() {
    let dir = std::env::temp_dir().join(format!("minrep-cli-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("empty.csv");
    std::fs::write(&input, "").unwrap();
    let (code, _, _) = run(&[
        "transform", "--op", "semigroup", "--m", "3", "--t", "0.5,0",
        "--input", input.to_str().unwrap(), "--output", dir.join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bruhat_inversion_element_and_parabolic() {
    let dir = std::env::temp_dir().join(format!("minrep-cli-bruhat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = 3usize;
    let p = minrep::radial::ModelParams::new(m).unwrap();

    // the inversion element factors trivially
    let w0 = minrep::group::inversion_element(p);
    let n = m + 3;
    let flat: Vec<f64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| w0.matrix()[(i, j)]).collect();
    let path = dir.join("w0.json");
    std::fs::write(&path, serde_json::to_string(&flat).unwrap()).unwrap();
    let (code, stdout, stderr) = run(&["bruhat", "--matrix", path.to_str().unwrap(), "--m", "3"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["in_parabolic"], false);
    assert!(v["reconstruction_error"].as_f64().unwrap() < 1e-12);
    assert!(v["b"].as_array().unwrap().iter().all(|x| x.as_f64().unwrap().abs() < 1e-14));

    // a dilation is parabolic
    let e = minrep::group::exp_e(1.0, p);
    let flat: Vec<f64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| e.matrix()[(i, j)]).collect();
    let path = dir.join("dilation.json");
    std::fs::write(&path, serde_json::to_string(&flat).unwrap()).unwrap();
    let (code, stdout, _) = run(&["bruhat", "--matrix", path.to_str().unwrap(), "--m", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["in_parabolic"], true);

    // a matrix off the group is a domain error
    let flat = vec![1.0; n * n];
    let path = dir.join("bad.json");
    std::fs::write(&path, serde_json::to_string(&flat).unwrap()).unwrap();
    let (code, _, _) = run(&["bruhat", "--matrix", path.to_str().unwrap(), "--m", "3"]);
    assert_eq!(code, 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_weber_suite_passes() {
    let (code, stdout, stderr) = run(&["verify", "--suite", "weber"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v[0]["failed"], 0);
    assert!(v[0]["cases"].as_array().unwrap().len() >= 12);
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let (code, _, _) = run(&["verify", "--suite", "nosuch"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = run(&["eval", "--kind", "radial"]);
    assert_eq!(code, 2);
}

#[test]
fn transform_dirac_runs() {
    let dir = std::env::temp_dir().join(format!("minrep-cli-dirac-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("h.csv");
    let output = dir.join("out.csv");
    let mut text = String::from("r,re\n");
    for i in 1..=200 {
        let x = 0.04 * i as f64;
        text.push_str(&format!("{},{}\n", x, x.powf(2.5) * (-x * x / 2.0).exp()));
    }
    std::fs::write(&input, text).unwrap();
    let (code, _, stderr) = run(&[
        "transform", "--op", "dirac", "--nu", "2", "--t", "0.3,0",
        "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(),
        "--quad-n", "200",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.lines().count() > 100);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn eval_cone_kernel() {
    // zeta = (3,4,0,5) and zeta' = (1,0,0,1) both sit on the forward cone
    let (code, stdout, stderr) = run(&[
        "eval", "--kind", "cone", "--m", "3", "--t", "0.5,0",
        "--points", "3,4,0,5,1,0,0,1",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let row: Vec<&str> = stdout.lines().nth(1).unwrap().split(',').collect();
    let pairing: f64 = row[0].parse().unwrap();
    assert!((pairing - 8.0).abs() < 1e-12); // 3*1 + 5*1
    let re: f64 = row[1].parse().unwrap();
    assert!(re.is_finite() && re != 0.0);
    // off-cone points are a domain error (exit 3)
    let (code, _, _) = run(&[
        "eval", "--kind", "cone", "--m", "3", "--t", "0.5,0",
        "--points", "3,4,0,1,1,0,0,1",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn verify_suite_with_dimension_filter() {
    let (code, stdout, stderr) = run(&["verify", "--suite", "bruhat", "--m", "3"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v[0]["failed"], 0);
    for case in v[0]["cases"].as_array().unwrap() {
        assert!(case["parameters"].as_str().unwrap().contains("m=3"));
    }
}

#[test]
fn eval_accepts_points_file() {
    let dir = std::env::temp_dir().join(format!("minrep-cli-points-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pts.csv");
    std::fs::write(&path, "r,rp\n1,1\n0.5,2.0\n").unwrap();
    let (code, stdout, stderr) = run(&[
        "eval", "--kind", "radial", "--m", "3", "--t", "1,0",
        "--points-file", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert_eq!(stdout.lines().count(), 3); // header + 2 rows
    std::fs::remove_dir_all(&dir).ok();
}
