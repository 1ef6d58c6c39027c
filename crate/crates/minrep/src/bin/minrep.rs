//! Command-line front end: kernel evaluation, transform application,
//! group factorization, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 domain or numeric error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use minrep::error::Error;
use minrep::group;
use minrep::inversion::{self, Decay};
use minrep::kernel::{self, ConePoint, SpatialPoint};
use minrep::quadrature::{self, gauss_laguerre_rule};
use minrep::radial::{self, ComplexTime, ModelParams, RadialProfile};
use minrep::specfun::SpecFunConfig;
use minrep::verify::{self, VerifyOptions};

#[derive(Parser)]
#[command(name = "minrep", version, about = "Semigroup kernels on the light cone: evaluation, transforms, factorization, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a kernel on a list of point pairs, printing CSV
    Eval(EvalArgs),
    /// Apply an integral transform to a sampled radial profile (CSV in/out)
    Transform(TransformArgs),
    /// Factor a group element through the generic decomposition (JSON)
    Bruhat(BruhatArgs),
    /// Run an identity-verification suite and emit a JSON report
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Kernel family: full | radial | inversion | cone
    #[arg(long)]
    kind: String,
    /// Spatial dimension m >= 2
    #[arg(long)]
    m: usize,
    /// Angular degree (radial kernel only)
    #[arg(long, default_value_t = 0)]
    l: usize,
    /// Time parameter "re,im"; omit for boundary-value kernels
    #[arg(long)]
    t: Option<String>,
    /// Inline points: rows separated by ';', values by ','
    #[arg(long)]
    points: Option<String>,
    /// Read points from a CSV file instead (one row per line)
    #[arg(long)]
    points_file: Option<String>,
}

#[derive(Args)]
struct TransformArgs {
    /// Operator: semigroup | inversion | hankel | dirac
    #[arg(long)]
    op: String,
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Angular degree for the radial operators
    #[arg(long, default_value_t = 0)]
    l: usize,
    /// Bessel order for hankel/dirac
    #[arg(long)]
    nu: Option<u32>,
    /// Time parameter "re,im" (semigroup) or s (dirac)
    #[arg(long)]
    t: Option<String>,
    /// Input CSV with columns r,re[,im]
    #[arg(long)]
    input: String,
    /// Output CSV path
    #[arg(long)]
    output: String,
    /// Quadrature order (or env MINREP_QUAD_N)
    #[arg(long)]
    quad_n: Option<usize>,
    /// Certified decay rate of the input profile
    #[arg(long)]
    decay: Option<f64>,
    /// Decay envelope class for hankel: gaussian | exponential
    #[arg(long, default_value = "gaussian")]
    decay_kind: String,
}

#[derive(Args)]
struct BruhatArgs {
    /// JSON file holding the (m+3)^2 matrix entries, row major
    #[arg(long)]
    matrix: String,
    #[arg(long)]
    m: usize,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// all | specfun | eigen | weber | reduction | inversion | bruhat | dirac | expansion
    #[arg(long, default_value = "all")]
    suite: String,
    /// Restrict dimension-parametrized cases to one m
    #[arg(long)]
    m: Option<usize>,
    /// Tolerance scale factor (or env MINREP_TOL)
    #[arg(long)]
    tol: Option<f64>,
    /// Quadrature order override (or env MINREP_QUAD_N)
    #[arg(long)]
    quad_n: Option<usize>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Bruhat(args) => cmd_bruhat(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

/// 17 significant digits, deterministic.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidArgument(format!("expected \"re,im\", got \"{s}\"")));
    }
    let re = parts[0].trim().parse::<f64>().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let im = parts[1].trim().parse::<f64>().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(Complex64::new(re, im))
}

fn parse_rows(args: &EvalArgs) -> Result<Vec<Vec<f64>>, Error> {
    let text = match (&args.points, &args.points_file) {
        (Some(inline), None) => inline.replace(';', "\n"),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        _ => {
            return Err(Error::InvalidArgument(
                "exactly one of --points / --points-file is required".into(),
            ))
        }
    };
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split(',').map(|v| v.trim().parse::<f64>()).collect();
        match row {
            Ok(r) => rows.push(r),
            Err(_) => {
                // tolerate a header row, reject anything else
                if rows.is_empty() {
                    continue;
                }
                return Err(Error::InvalidArgument(format!("bad row \"{line}\"")));
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument("no points given".into()));
    }
    Ok(rows)
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, Error> {
    let params = ModelParams::new(args.m)?;
    let cfg = SpecFunConfig::default();
    let rows = parse_rows(&args)?;
    let t = args.t.as_deref().map(parse_complex).transpose()?;
    let time = t.map(ComplexTime::new).transpose()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let m = args.m;
    match args.kind.as_str() {
        "radial" => {
            let time = time.ok_or_else(|| Error::InvalidArgument("--t is required".into()))?;
            writeln!(out, "r,rp,re,im")?;
            for row in rows {
                if row.len() != 2 {
                    return Err(Error::InvalidArgument("radial rows are \"r,rp\"".into()));
                }
                let v = radial::radial_kernel(row[0], row[1], &time, args.l, params, &cfg)?;
                writeln!(out, "{},{},{},{}", fmt(row[0]), fmt(row[1]), fmt(v.re), fmt(v.im))?;
            }
        }
        "full" => {
            let time = time.ok_or_else(|| Error::InvalidArgument("--t is required".into()))?;
            let header: Vec<String> = (1..=m)
                .map(|i| format!("x{i}"))
                .chain((1..=m).map(|i| format!("xp{i}")))
                .chain(["re".to_string(), "im".to_string()])
                .collect();
            writeln!(out, "{}", header.join(","))?;
            for row in rows {
                if row.len() != 2 * m {
                    return Err(Error::InvalidArgument(format!(
                        "full-kernel rows need {} values",
                        2 * m
                    )));
                }
                let x = SpatialPoint::new(row[..m].to_vec())?;
                let xp = SpatialPoint::new(row[m..].to_vec())?;
                let v = kernel::full_kernel(&x, &xp, &time, params, &cfg)?;
                let cells: Vec<String> =
                    row.iter().map(|&c| fmt(c)).chain([fmt(v.re), fmt(v.im)]).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        "inversion" => {
            writeln!(out, "psi,re,im")?;
            for row in rows {
                if row.len() != 2 * m {
                    return Err(Error::InvalidArgument(format!(
                        "inversion rows need {} values",
                        2 * m
                    )));
                }
                let x = SpatialPoint::new(row[..m].to_vec())?;
                let xp = SpatialPoint::new(row[m..].to_vec())?;
                let v = inversion::inversion_kernel(&x, &xp, params, &cfg)?.value;
                writeln!(out, "{},{},{}", fmt(kernel::psi(&x, &xp)), fmt(v.re), fmt(v.im))?;
            }
        }
        "cone" => {
            writeln!(out, "pairing,re,im")?;
            for row in rows {
                if row.len() != 2 * (m + 1) {
                    return Err(Error::InvalidArgument(format!(
                        "cone rows need {} values",
                        2 * (m + 1)
                    )));
                }
                let z = ConePoint::new(row[..m + 1].to_vec())?;
                let zp = ConePoint::new(row[m + 1..].to_vec())?;
                let v = match &time {
                    Some(t) => kernel::cone_kernel(&z, &zp, t, params, &cfg)?,
                    None => inversion::cone_inversion_kernel(&z, &zp, params, &cfg)?,
                };
                writeln!(out, "{},{},{}", fmt(z.dot(&zp)), fmt(v.re), fmt(v.im))?;
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown kernel kind \"{other}\"; expected full | radial | inversion | cone"
            )))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_profile(path: &str) -> Result<(Vec<f64>, Vec<Complex64>), Error> {
    let text = std::fs::read_to_string(path)?;
    let mut rs = Vec::new();
    let mut vals = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        let parsed: Result<Vec<f64>, _> = cells.iter().map(|c| c.trim().parse::<f64>()).collect();
        let Ok(nums) = parsed else {
            if rs.is_empty() {
                continue; // header
            }
            return Err(Error::InvalidArgument(format!("bad row \"{line}\"")));
        };
        if nums.len() < 2 {
            return Err(Error::InvalidArgument("profile rows are r,re[,im]".into()));
        }
        rs.push(nums[0]);
        vals.push(Complex64::new(nums[1], if nums.len() > 2 { nums[2] } else { 0.0 }));
    }
    if rs.len() < 4 {
        return Err(Error::InvalidArgument("profile needs at least 4 samples".into()));
    }
    if rs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("profile abscissae must increase".into()));
    }
    Ok((rs, vals))
}

/// Piecewise-cubic interpolant of the sampled profile; clamped to the
/// first sample on the left, zero beyond the last (inputs decay).
fn interpolant(rs: Vec<f64>, vals: Vec<Complex64>) -> impl Fn(f64) -> Complex64 {
    move |x: f64| {
        let n = rs.len();
        if x <= rs[0] {
            return vals[0];
        }
        if x > rs[n - 1] {
            return Complex64::new(0.0, 0.0);
        }
        let hi = rs.partition_point(|&v| v < x).clamp(1, n - 1);
        let lo = hi - 1;
        // quadratic-exact slopes on the nonuniform grid
        let slope = |i: usize| -> Complex64 {
            if i == 0 {
                (vals[1] - vals[0]) / (rs[1] - rs[0])
            } else if i == n - 1 {
                (vals[n - 1] - vals[n - 2]) / (rs[n - 1] - rs[n - 2])
            } else {
                let hp = rs[i] - rs[i - 1];
                let hn = rs[i + 1] - rs[i];
                let dp = (vals[i] - vals[i - 1]) / hp;
                let dn = (vals[i + 1] - vals[i]) / hn;
                (dp * hn + dn * hp) / (hp + hn)
            }
        };
        let h = rs[hi] - rs[lo];
        let s = (x - rs[lo]) / h;
        let (m0, m1) = (slope(lo) * h, slope(hi) * h);
        let s2 = s * s;
        let s3 = s2 * s;
        vals[lo] * (2.0 * s3 - 3.0 * s2 + 1.0)
            + m0 * (s3 - 2.0 * s2 + s)
            + vals[hi] * (-2.0 * s3 + 3.0 * s2)
            + m1 * (s3 - s2)
    }
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn env_f64(name: &str) -> Option<f64> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn cmd_transform(args: TransformArgs) -> Result<ExitCode, Error> {
    let params = ModelParams::new(args.m)?;
    let cfg = SpecFunConfig::default();
    let quad_n = args.quad_n.or_else(|| env_usize("MINREP_QUAD_N")).unwrap_or(400);
    let (rs, vals) = read_profile(&args.input)?;
    let grid = rs.clone();
    let decay = args.decay.unwrap_or(match args.op.as_str() {
        "hankel" | "dirac" => 0.5,
        _ => 2.0,
    });
    if !(decay > 0.0) {
        return Err(Error::Domain("the decay certificate must be positive".into()));
    }
    let f = interpolant(rs, vals);

    let out_vals: Vec<Complex64> = match args.op.as_str() {
        "semigroup" => {
            let t = args
                .t
                .as_deref()
                .map(parse_complex)
                .transpose()?
                .ok_or_else(|| Error::InvalidArgument("--t is required for semigroup".into()))?;
            let time = ComplexTime::new(t)?;
            let quad = gauss_laguerre_rule(quad_n, args.m as f64 - 2.0)?;
            radial::apply_radial_semigroup(
                &RadialProfile::Sampled { eval: &f, decay_rate: decay },
                &time,
                args.l,
                params,
                &quad,
                &grid,
                &cfg,
            )?
        }
        "inversion" => {
            let quad = gauss_laguerre_rule(quad_n, args.m as f64 - 2.0)?;
            let (nodes, weights) = quadrature::radial_weights(&quad, decay)?;
            let samples: Vec<Complex64> = nodes.iter().map(|&rp| f(rp)).collect();
            grid.iter()
                .map(|&r| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for ((&rp, &u), &fv) in nodes.iter().zip(&weights).zip(&samples) {
                        if u == 0.0 {
                            continue;
                        }
                        acc += u
                            * inversion::radial_inversion_kernel(r, rp, args.l, params, &cfg)?
                            * fv;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>, Error>>()?
        }
        "hankel" => {
            let nu = args
                .nu
                .ok_or_else(|| Error::InvalidArgument("--nu is required for hankel".into()))?;
            let (certificate, alpha) = match args.decay_kind.as_str() {
                "gaussian" => (Decay::Gaussian { rate: decay }, nu as f64),
                "exponential" => (Decay::Exponential { rate: decay }, nu as f64 + 0.5),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown decay kind \"{other}\""
                    )))
                }
            };
            let quad = gauss_laguerre_rule(quad_n, alpha)?;
            inversion::hankel_transform(&f, certificate, nu, &quad, &grid, &cfg)?
        }
        "dirac" => {
            let nu = args
                .nu
                .ok_or_else(|| Error::InvalidArgument("--nu is required for dirac".into()))?;
            let s = args
                .t
                .as_deref()
                .map(parse_complex)
                .transpose()?
                .ok_or_else(|| Error::InvalidArgument("--t is required for dirac".into()))?;
            let quad = gauss_laguerre_rule(quad_n, -0.5)?;
            radial::dirac_operator(&f, s, nu, &quad, &grid, &cfg)?
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown transform \"{other}\"; expected semigroup | inversion | hankel | dirac"
            )))
        }
    };

    let mut file = std::fs::File::create(&args.output)?;
    writeln!(file, "# op={} m={} l={} quad_n={quad_n} decay={decay}", args.op, args.m, args.l)?;
    writeln!(file, "# series_tol={} max_terms={}", cfg.series_tol, cfg.max_terms)?;
    writeln!(file, "r,re,im")?;
    for (&r, v) in grid.iter().zip(&out_vals) {
        writeln!(file, "{},{},{}", fmt(r), fmt(v.re), fmt(v.im))?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Serialize)]
struct BruhatOutput {
    in_parabolic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m_plus: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reconstruction_error: Option<f64>,
}

fn cmd_bruhat(args: BruhatArgs) -> Result<ExitCode, Error> {
    let params = ModelParams::new(args.m)?;
    let n = args.m + 3;
    let text = std::fs::read_to_string(&args.matrix)?;
    let entries: Vec<f64> = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("matrix JSON: {e}")))?;
    if entries.len() != n * n {
        return Err(Error::InvalidArgument(format!(
            "matrix needs {} entries for m = {}, got {}",
            n * n,
            args.m,
            entries.len()
        )));
    }
    let mat = nalgebra::DMatrix::from_row_slice(n, n, &entries);
    let g = group::LorentzMatrix::new(mat, params)?;
    let output = match group::bruhat_factor(&g, params) {
        Ok(f) => {
            let err = f.reconstruction_error(&g, params)?;
            let m_plus: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| f.m_plus.matrix()[(i, j)]).collect())
                .collect();
            BruhatOutput {
                in_parabolic: false,
                b: Some(f.b),
                t: Some(f.t),
                delta: Some(f.delta),
                m_plus: Some(m_plus),
                a: Some(f.a),
                reconstruction_error: Some(err),
            }
        }
        Err(Error::InParabolic) => BruhatOutput {
            in_parabolic: true,
            b: None,
            t: None,
            delta: None,
            m_plus: None,
            a: None,
            reconstruction_error: None,
        },
        Err(e) => return Err(e),
    };
    let text = serde_json::to_string_pretty(&output)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    match args.output {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let known = args.suite == "all" || verify::SUITES.contains(&args.suite.as_str());
    if !known {
        return Err(Error::InvalidArgument(format!(
            "unknown suite \"{}\"; expected all, {}",
            args.suite,
            verify::SUITES.join(", ")
        )));
    }
    let opts = VerifyOptions {
        m: args.m,
        tol_factor: args.tol.or_else(|| env_f64("MINREP_TOL")).unwrap_or(1.0),
        quad_n: args.quad_n.or_else(|| env_usize("MINREP_QUAD_N")),
    };
    let reports = verify::run_suite(&args.suite, &opts)?;
    let all_pass = reports.iter().all(|r| r.all_pass());
    let text = serde_json::to_string_pretty(&reports)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    match args.output {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
