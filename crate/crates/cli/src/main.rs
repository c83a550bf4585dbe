//! Command-line driver: loads a function description plus run parameters
//! from a TOML document, runs the requested analysis, writes artifacts
//! (CSV/JSON plus a manifest of every tolerance and seed in effect) into
//! the output directory, and reports a summary on stdout.
//!
//! Exit codes: 0 on success, 2 when the input is a trigonometric
//! polynomial (degenerate-analytic verdict), 1 on any error. Reruns with
//! the same document and arguments produce byte-identical artifacts; no
//! environment variables are consulted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quasipolar::annulus::{self, AnnulusSpec};
use quasipolar::certify::{self, CertVerdict, CertifyOptions};
use quasipolar::circle::{
    function_spec_from_table, FunctionSpec, DEFAULT_EPS, DEFAULT_REL_EPS, NORMALIZE_TARGET_M3,
};
use quasipolar::interp;
use quasipolar::quasi;
use quasipolar::scales::{self, Trend};
use quasipolar::NormSequence;

#[derive(Parser)]
#[command(
    name = "quasipolar",
    version,
    about = "Growth scales, quasianalyticity tests, interpolants, annulus Green functions, and pluripolarity certificates for functions on the unit circle"
)]
struct Cli {
    /// TOML document describing the function and run parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for artifacts (created if missing).
    #[arg(long, global = true, default_value = "quasipolar-out")]
    out: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Overview: coefficients, derivative norms, decay scales, growth trend.
    Analyze,
    /// Decay-scale table over the configured degree grid.
    Scales {
        /// Drop configured degrees above this bound.
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Run one quasianalyticity notion on the configured function.
    Quasitest {
        #[arg(long, value_enum)]
        notion: NotionArg,
    },
    /// Interpolant diagnostics at a single degree.
    Interp {
        /// Interpolation degree (nodes are the n-th roots of unity plus one).
        #[arg(long)]
        n: usize,
        /// Angle of the extra node (default: pi/(2n)).
        #[arg(long)]
        z0_arg: Option<f64>,
        /// Outer radius of the annulus on which the interpolant is measured.
        #[arg(long)]
        t: f64,
    },
    /// Annulus Green-function diagnostics (needs no function document).
    Green {
        /// Outer radius of the annulus 1/r < |w| < r.
        #[arg(long)]
        r: f64,
        /// Intermediate radius for the circle-sup bound (requires r > a > 1).
        #[arg(long)]
        a: Option<f64>,
        /// Also solve the Dirichlet problem on a finite-difference grid and
        /// report the worst deviation from the series values.
        #[arg(long)]
        compare_fd: bool,
    },
    /// Full evidence certificate.
    Certify {
        /// Number of components (the configured function is used for each).
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NotionArg {
    Bernstein,
    Denjoy,
    Gevrey,
}

impl NotionArg {
    fn name(self) -> &'static str {
        match self {
            NotionArg::Bernstein => "bernstein",
            NotionArg::Denjoy => "denjoy",
            NotionArg::Gevrey => "gevrey",
        }
    }
}

// ---------------------------------------------------------------------------
// run configuration
// ---------------------------------------------------------------------------

/// Function description plus every run parameter, parsed from one TOML
/// document. Unknown keys anywhere are rejected by name.
struct RunConfig {
    spec: FunctionSpec,
    n_list: Vec<usize>,
    eps: f64,
    rel_eps: f64,
    scan_degrees: Vec<usize>,
    z0_samples: usize,
    bernstein_degrees: Vec<usize>,
    quad_points: usize,
    box_points: usize,
    circle_samples: usize,
    halton_seed: u64,
}

impl RunConfig {
    fn certify_options(&self) -> CertifyOptions {
        CertifyOptions {
            n_list: self.n_list.clone(),
            bernstein_degrees: self.bernstein_degrees.clone(),
            circle_samples: self.circle_samples,
            box_points: self.box_points,
            scan_degrees: self.scan_degrees.clone(),
            z0_samples: self.z0_samples,
            eps: self.eps,
            rel_eps: self.rel_eps,
            halton_seed: self.halton_seed,
            quad_points: self.quad_points,
            pointwise_j_cap: 2048,
        }
    }
}

fn take_key(
    table: &mut toml::map::Map<String, toml::Value>,
    key: &str,
) -> Option<toml::Value> {
    table.remove(key)
}

fn as_f64(v: &toml::Value, key: &str) -> anyhow::Result<f64> {
    match v {
        toml::Value::Float(x) => Ok(*x),
        toml::Value::Integer(x) => Ok(*x as f64),
        other => bail!("run key `{key}` must be a number, got {other}"),
    }
}

fn as_usize(v: &toml::Value, key: &str) -> anyhow::Result<usize> {
    match v {
        toml::Value::Integer(x) if *x >= 0 => Ok(*x as usize),
        other => bail!("run key `{key}` must be a nonnegative integer, got {other}"),
    }
}

fn as_usize_list(v: &toml::Value, key: &str) -> anyhow::Result<Vec<usize>> {
    let arr = match v {
        toml::Value::Array(a) => a,
        other => bail!("run key `{key}` must be an array of integers, got {other}"),
    };
    arr.iter().map(|x| as_usize(x, key)).collect()
}

/// Parse the combined document. Run keys are consumed here; everything left
/// over must describe the function and is checked key-by-key downstream.
/// `command` is the invoked subcommand: a document may declare its intended
/// command, and a mismatch is an error.
fn parse_config(text: &str, command: &str) -> anyhow::Result<RunConfig> {
    let value: toml::Value = text.parse().context("configuration is not valid TOML")?;
    let mut table = match value {
        toml::Value::Table(t) => t,
        _ => bail!("configuration root must be a TOML table"),
    };

    if let Some(v) = take_key(&mut table, "command") {
        match v.as_str() {
            Some(declared) if declared == command => {}
            Some(declared) => bail!(
                "document declares command `{declared}` but `{command}` was invoked"
            ),
            None => bail!("run key `command` must be a string"),
        }
    }

    let defaults = CertifyOptions::default();
    let n_list = match take_key(&mut table, "n_list") {
        Some(v) => as_usize_list(&v, "n_list")?,
        None => defaults.n_list.clone(),
    };
    if n_list.is_empty() {
        bail!("run key `n_list` must not be empty");
    }
    for w in n_list.windows(2) {
        if w[1] <= w[0] {
            bail!(
                "run key `n_list` must be strictly increasing ({} does not exceed {})",
                w[1],
                w[0]
            );
        }
    }
    let f64_key = |table: &mut toml::map::Map<String, toml::Value>,
                   key: &str,
                   default: f64|
     -> anyhow::Result<f64> {
        match take_key(table, key) {
            Some(v) => as_f64(&v, key),
            None => Ok(default),
        }
    };
    let usize_key = |table: &mut toml::map::Map<String, toml::Value>,
                     key: &str,
                     default: usize|
     -> anyhow::Result<usize> {
        match take_key(table, key) {
            Some(v) => as_usize(&v, key),
            None => Ok(default),
        }
    };
    let eps = f64_key(&mut table, "eps", defaults.eps)?;
    let rel_eps = f64_key(&mut table, "rel_eps", defaults.rel_eps)?;
    let scan_degrees = match take_key(&mut table, "scan_degrees") {
        Some(v) => as_usize_list(&v, "scan_degrees")?,
        None => defaults.scan_degrees.clone(),
    };
    let bernstein_degrees = match take_key(&mut table, "bernstein_degrees") {
        Some(v) => as_usize_list(&v, "bernstein_degrees")?,
        None => defaults.bernstein_degrees.clone(),
    };
    let z0_samples = usize_key(&mut table, "z0_samples", defaults.z0_samples)?;
    let quad_points = usize_key(&mut table, "quad_points", defaults.quad_points)?;
    let box_points = usize_key(&mut table, "box_points", defaults.box_points)?;
    let circle_samples = usize_key(&mut table, "circle_samples", defaults.circle_samples)?;
    let halton_seed = usize_key(&mut table, "halton_seed", defaults.halton_seed as usize)? as u64;

    let spec = function_spec_from_table(table)?;
    Ok(RunConfig {
        spec,
        n_list,
        eps,
        rel_eps,
        scan_degrees,
        z0_samples,
        bernstein_degrees,
        quad_points,
        box_points,
        circle_samples,
        halton_seed,
    })
}

fn load_config(cli: &Cli, command: &str) -> anyhow::Result<RunConfig> {
    let path = cli
        .config
        .as_ref()
        .context("this command needs a function document: pass --config FILE")?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text, command)
}

// ---------------------------------------------------------------------------
// fixed knobs of the driver itself (all recorded in the manifest)
// ---------------------------------------------------------------------------

/// Coefficients with |k| up to this bound go into `coefficients.csv`.
const COEFF_TABLE_RANGE: i64 = 16;
/// Norm-table rows up to this index go into `norms.csv`.
const NORM_TABLE_ROWS: usize = 64;
/// Starting samples per circle for interpolant sup estimation.
const INTERP_SUP_START: usize = 256;
/// Truncation budget for Green-function series evaluations.
const GREEN_SERIES_EPS: f64 = 1e-12;
/// Starting sample count for the measured circle sup of the Green function.
const GREEN_SUP_SAMPLES: usize = 64;
/// Refinement budget for the measured circle sup.
const GREEN_SUP_EPS: f64 = 1e-10;
/// Pole images reported on each side of k = 0.
const GREEN_POLE_IMAGES: usize = 3;
/// Finite-difference grid (radial and angular) for `--compare-fd`.
const GREEN_FD_GRID: usize = 128;
/// Grid nodes closer than this to the pole are excluded from the
/// finite-difference comparison.
const GREEN_FD_MIN_POLE_DIST: f64 = 0.1;

// ---------------------------------------------------------------------------
// artifacts
// ---------------------------------------------------------------------------

fn write_artifact(out: &Path, name: &str, content: &str) -> anyhow::Result<()> {
    std::fs::create_dir_all(out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    let path = out.join(name);
    std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Every tolerance and seed in effect, so a run can be reproduced and its
/// numbers audited without reading the source.
fn manifest(command: &str, arguments: serde_json::Value, cfg: Option<&RunConfig>) -> String {
    let config = match cfg {
        Some(c) => json!({
            "function": c.spec.name,
            "n_list": c.n_list,
            "eps": c.eps,
            "rel_eps": c.rel_eps,
            "scan_degrees": c.scan_degrees,
            "z0_samples": c.z0_samples,
            "bernstein_degrees": c.bernstein_degrees,
            "quad_points": c.quad_points,
            "box_points": c.box_points,
            "circle_samples": c.circle_samples,
        }),
        None => json!(null),
    };
    let doc = json!({
        "command": command,
        "arguments": arguments,
        "config": config,
        "seeds": {
            "halton": cfg.map(|c| c.halton_seed).unwrap_or(0),
        },
        "tolerances": {
            "series_eps_default": DEFAULT_EPS,
            "norm_rel_eps_default": DEFAULT_REL_EPS,
            "normalize_target_m3": NORMALIZE_TARGET_M3,
            "trend_slope_per_decade": scales::TREND_SLOPE_TOL,
            "interp_condition_drop": interp::CONDITION_DROP,
            "interp_condition_warn": interp::CONDITION_WARN,
            "interp_sup_rel_tol": interp::SUP_REL_TOL,
            "map_roundtrip_tol": annulus::MAP_ROUNDTRIP_TOL,
            "near_pole_tol": annulus::NEAR_POLE_TOL,
            "fd_residual_tol": annulus::FD_RESIDUAL_TOL,
            "bernstein_delta": quasi::BERNSTEIN_DELTA,
            "gevrey_fit_max": certify::GEVREY_FIT_MAX,
        },
    });
    serde_json::to_string_pretty(&doc).expect("manifest serializes")
}

/// Normalize a norm table (third entry to the standard target) when it is
/// not already small; returns the table and the log factor applied.
fn normalized(seq: &NormSequence, rel: f64) -> (NormSequence, f64) {
    let log_m3 = seq.log_value(3).expect("norm table has at least 4 entries");
    if log_m3 < 0.5f64.ln() {
        (seq.clone(), 0.0)
    } else {
        let lf = NORMALIZE_TARGET_M3.ln() - log_m3;
        (seq.scaled_by_log(lf, "normalized", rel), lf)
    }
}

/// Norm table sized to the run: synthetic rules hand over their stored
/// table, pointwise rules grow one by doubling until the decay scale at the
/// largest configured degree stops hitting the table end.
fn run_norms(cfg: &RunConfig) -> anyhow::Result<NormSequence> {
    let rule = &cfg.spec.rule;
    if let Some(count) = rule.stored_norm_count() {
        return Ok(rule.norm_sequence(count - 1, cfg.rel_eps)?);
    }
    let r_target = *cfg.n_list.last().expect("validated non-empty") as f64;
    let mut j_max = 64usize;
    loop {
        let seq = rule.norm_sequence(j_max, cfg.rel_eps)?;
        let tv = scales::log_tau(&seq, r_target)?;
        if !tv.truncated || j_max >= 2048 {
            return Ok(seq);
        }
        j_max = (j_max * 2).min(2048);
    }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn cmd_analyze(cli: &Cli) -> anyhow::Result<u8> {
    let cfg = load_config(cli, "analyze")?;
    let rule = &cfg.spec.rule;
    println!("function: {}", cfg.spec.name);

    if rule.is_pointwise() {
        let mut csv = String::from("k,re,im,abs\n");
        for k in -COEFF_TABLE_RANGE..=COEFF_TABLE_RANGE {
            let c = rule.coefficient(k)?;
            csv.push_str(&format!("{k},{:.12e},{:.12e},{:.12e}\n", c.re, c.im, c.norm()));
        }
        write_artifact(&cli.out, "coefficients.csv", &csv)?;
    } else {
        println!("norm-only input: no coefficient table");
    }

    let raw = run_norms(&cfg)?;
    let (seq, log_factor) = normalized(&raw, cfg.rel_eps);
    if log_factor != 0.0 {
        println!("normalization applied: log factor {log_factor:.6e}");
    }
    let mut csv = String::from("j,log_norm\n");
    for j in 0..=raw.max_index().min(NORM_TABLE_ROWS) {
        csv.push_str(&format!("{j},{:.12e}\n", raw.log_value(j)?));
    }
    write_artifact(&cli.out, "norms.csv", &csv)?;

    let table = scales::build_scale_table(&seq, &cfg.n_list, 1)?;
    write_artifact(&cli.out, "scales.csv", &table.to_csv())?;
    if table.degenerate || rule.finite_degree().is_some() {
        println!("degenerate-analytic: the input is a trigonometric polynomial");
        write_artifact(
            &cli.out,
            "manifest.json",
            &manifest(
                "analyze",
                json!({
                    "coeff_table_range": COEFF_TABLE_RANGE,
                    "norm_table_rows": NORM_TABLE_ROWS,
                }),
                Some(&cfg),
            ),
        )?;
        return Ok(2);
    }
    if table.rows.len() >= 4 {
        let growth = scales::growth_verdict(&table)?;
        println!(
            "diagnostic trend: {} (slope per decade {:+.4})",
            match growth.trend {
                Trend::Diverging => "diverging",
                Trend::Bounded => "bounded",
                Trend::Decaying => "decaying",
            },
            growth.slope_per_decade
        );
        println!("note: {}", growth.caveat);
    } else {
        println!("degree grid too short for a trend verdict (need 4 entries)");
    }
    write_artifact(
        &cli.out,
        "manifest.json",
        &manifest(
            "analyze",
            json!({
                "coeff_table_range": COEFF_TABLE_RANGE,
                "norm_table_rows": NORM_TABLE_ROWS,
            }),
            Some(&cfg),
        ),
    )?;
    Ok(0)
}

fn cmd_scales(cli: &Cli, nmax: Option<usize>) -> anyhow::Result<u8> {
    let cfg = load_config(cli, "scales")?;
    let degrees: Vec<usize> = match nmax {
        Some(b) => cfg.n_list.iter().copied().filter(|&n| n <= b).collect(),
        None => cfg.n_list.clone(),
    };
    if degrees.is_empty() {
        bail!("no configured degree is within --nmax {}", nmax.unwrap_or(0));
    }
    let raw = run_norms(&cfg)?;
    let (seq, log_factor) = normalized(&raw, cfg.rel_eps);
    let table = scales::build_scale_table(&seq, &degrees, 1)?;
    print!("{}", table.to_csv());
    write_artifact(&cli.out, "scales.csv", &table.to_csv())?;
    let degenerate = table.degenerate || cfg.spec.rule.finite_degree().is_some();
    if degenerate {
        println!("degenerate-analytic: the input is a trigonometric polynomial");
    } else if table.rows.len() >= 4 {
        let growth = scales::growth_verdict(&table)?;
        println!("trend slope per decade: {:+.4}", growth.slope_per_decade);
    }
    if table.truncated {
        println!("note: norm table hit its cap; scales are conservative");
    }
    write_artifact(
        &cli.out,
        "manifest.json",
        &manifest(
            "scales",
            json!({"nmax": nmax, "normalization_log": log_factor}),
            Some(&cfg),
        ),
    )?;
    Ok(if degenerate { 2 } else { 0 })
}

fn cmd_quasitest(cli: &Cli, notion: NotionArg) -> anyhow::Result<u8> {
    let cfg = load_config(cli, "quasitest")?;
    match notion {
        NotionArg::Bernstein => {
            let report = quasi::bernstein_verdict(&cfg.spec.rule, &cfg.bernstein_degrees)?;
            print!("{}", report.to_csv());
            println!("{}", report.verdict);
            write_artifact(&cli.out, "en_brackets.csv", &report.to_csv())?;
            write_artifact(
                &cli.out,
                "quasitest.json",
                &serde_json::to_string_pretty(&report)?,
            )?;
        }
        NotionArg::Denjoy => {
            let raw = run_norms(&cfg)?;
            let (seq, _) = normalized(&raw, cfg.rel_eps);
            let mut r_max = *cfg.n_list.last().unwrap() as f64;
            let report = loop {
                match quasi::denjoy_carleman(&seq, r_max, cfg.quad_points) {
                    Ok(report) => break report,
                    Err(quasi::QuasiError::RangeExceeded { certified, .. }) if certified >= 100.0 => {
                        println!(
                            "note: norm table certifies the decay scale only up to r = {certified:.3e}; integrating to there"
                        );
                        r_max = certified;
                    }
                    Err(err) => return Err(err.into()),
                }
            };
            let mut csv = String::from("r,integral\n");
            for (r, v) in &report.partials {
                csv.push_str(&format!("{r:.6e},{v:.12e}\n"));
            }
            print!("{csv}");
            println!("{}", report.verdict);
            write_artifact(&cli.out, "denjoy.csv", &csv)?;
            write_artifact(
                &cli.out,
                "quasitest.json",
                &serde_json::to_string_pretty(&report)?,
            )?;
        }
        NotionArg::Gevrey => {
            let raw = run_norms(&cfg)?;
            let (seq, _) = normalized(&raw, cfg.rel_eps);
            let fit = quasi::gevrey_fit_exponent(&seq)?;
            let series = quasi::gevrey_series(
                &quasi::LSequence::Power { exponent: fit.max(1.0) },
                seq.max_index().max(64),
            )?;
            println!("fitted majorant exponent: {fit:.6}");
            println!("{}", series.verdict);
            let doc = json!({
                "fitted_exponent": fit,
                "series_report": series,
            });
            write_artifact(&cli.out, "quasitest.json", &serde_json::to_string_pretty(&doc)?)?;
        }
    }
    write_artifact(
        &cli.out,
        "manifest.json",
        &manifest("quasitest", json!({"notion": notion.name()}), Some(&cfg)),
    )?;
    Ok(0)
}

fn cmd_interp(cli: &Cli, n: usize, z0_arg: Option<f64>, t: f64) -> anyhow::Result<u8> {
    let cfg = load_config(cli, "interp")?;
    let z0 = z0_arg.map(|a| num_complex::Complex64::from_polar(1.0, a));
    let ip = interp::build(&cfg.spec.rule, n, z0, cfg.eps)?;
    let sup = interp::annulus_sup(&ip, t, INTERP_SUP_START)?;
    let dft_dev = interp::dft_consistency(&cfg.spec.rule, n, cfg.eps)?;
    let seq = run_norms(&cfg)?;
    let er = interp::er_bound(&seq, n, t)?;

    println!("degree n = {n}, extra node angle = {:.12}", ip.z0().arg());
    println!("gamma = {:.12e} + {:.12e} i", ip.gamma().re, ip.gamma().im);
    if let Some(d) = ip.conditioning_warning() {
        println!("warning: extra node nearly aliases the roots of unity (|z0^n - 1| = {d:.3e})");
    }
    println!("aliasing tail bound = {:.6e}", ip.tail_err());
    println!("dft consistency deviation = {:.6e}", dft_dev);
    println!("sup on the t-annulus (t = {t}): {:.12e} ({} samples per circle)",
        sup.value, sup.samples_per_circle);
    println!("norm-scale envelope bound at t: {er:.12e}");

    let doc = json!({
        "n": n,
        "z0_arg": ip.z0().arg(),
        "gamma": [ip.gamma().re, ip.gamma().im],
        "conditioning_warning": ip.conditioning_warning(),
        "tail_err": ip.tail_err(),
        "dft_deviation": dft_dev,
        "t": t,
        "sup_measured": sup.value,
        "sup_converged": sup.converged,
        "er_bound": er,
    });
    write_artifact(&cli.out, "interp.json", &serde_json::to_string_pretty(&doc)?)?;
    write_artifact(
        &cli.out,
        "manifest.json",
        &manifest(
            "interp",
            json!({"n": n, "z0_arg": z0_arg, "t": t, "sup_start_samples": INTERP_SUP_START}),
            Some(&cfg),
        ),
    )?;
    Ok(0)
}

fn cmd_green(cli: &Cli, r: f64, a: Option<f64>, compare_fd: bool) -> anyhow::Result<u8> {
    let spec = AnnulusSpec::new(r)?;
    let g = annulus::green(num_complex::Complex64::new(-1.0, 0.0), &spec, GREEN_SERIES_EPS)?;
    let (outer_mod, inner_mod) = annulus::boundary_modulus(&spec);
    let poles = annulus::pole_images(&spec, GREEN_POLE_IMAGES);
    let measured = annulus::measure_circle_sup(&spec, GREEN_SUP_SAMPLES, GREEN_SUP_EPS)?;
    println!("annulus 1/{r} < |w| < {r}");
    println!("g(-1) = {:.12e} (tail bound {:.3e})", g.value, g.tail_bound);
    println!("sup over |z| = 1 (measured): {measured:.12e}");
    let mut bound = None;
    if let Some(a) = a {
        let b = annulus::sup_circle_bound(&spec, a)?;
        bound = Some(b);
        println!("closed-form bound with intermediate radius {a}: {b:.12e}");
        println!(
            "bound {} the measured sup",
            if measured <= b { "dominates" } else { "FAILS against" }
        );
    }
    println!(
        "boundary gradient bounds: outer {:.6e}, inner {:.6e}",
        outer_mod, inner_mod
    );

    let mut fd_deviation = None;
    if compare_fd {
        let field = annulus::fd_oracle(&spec, GREEN_FD_GRID, GREEN_FD_GRID)?;
        let dev = field.max_series_deviation(GREEN_SERIES_EPS, GREEN_FD_MIN_POLE_DIST)?;
        fd_deviation = Some(dev);
        println!(
            "finite-difference oracle ({0} x {0}): worst deviation {dev:.6e} away from the pole",
            GREEN_FD_GRID
        );
        write_artifact(&cli.out, "fd.csv", &field.to_csv())?;
    }

    let doc = json!({
        "r": r,
        "g_at_minus_one": g.value,
        "g_tail_bound": g.tail_bound,
        "series_terms": g.terms_used,
        "sup_measured": measured,
        "intermediate_radius": a,
        "sup_bound": bound,
        "boundary_modulus_outer": outer_mod,
        "boundary_modulus_inner": inner_mod,
        "pole_images": poles.values(),
        "pole_images_saturated": poles.saturated,
        "fd_grid": if compare_fd { json!(GREEN_FD_GRID) } else { json!(null) },
        "fd_max_deviation": fd_deviation,
    });
    write_artifact(&cli.out, "green.json", &serde_json::to_string_pretty(&doc)?)?;
    write_artifact(
        &cli.out,
        "manifest.json",
        &manifest(
            "green",
            json!({
                "r": r,
                "a": a,
                "compare_fd": compare_fd,
                "series_eps": GREEN_SERIES_EPS,
                "sup_samples_start": GREEN_SUP_SAMPLES,
                "sup_eps": GREEN_SUP_EPS,
                "pole_images_k_max": GREEN_POLE_IMAGES,
                "fd_grid": GREEN_FD_GRID,
                "fd_min_pole_dist": GREEN_FD_MIN_POLE_DIST,
            }),
            None,
        ),
    )?;
    if let (Some(b), true) = (bound, a.is_some()) {
        if measured > b {
            bail!("measured circle sup exceeds the closed-form bound");
        }
    }
    Ok(0)
}

fn cmd_certify(cli: &Cli, dim: usize) -> anyhow::Result<u8> {
    if dim == 0 {
        bail!("--dim must be at least 1");
    }
    let cfg = load_config(cli, "certify")?;
    let rules = vec![cfg.spec.rule.clone(); dim];
    let cert = certify::certify(&rules, &cfg.certify_options())?;
    print!("{}", cert.to_text());
    write_artifact(&cli.out, "certificate.txt", &cert.to_text())?;
    write_artifact(&cli.out, "certificate.json", &cert.to_json())?;
    write_artifact(
        &cli.out,
        "manifest.json",
        &manifest("certify", json!({"dim": dim}), Some(&cfg)),
    )?;
    Ok(if cert.verdict == CertVerdict::DegenerateAnalytic { 2 } else { 0 })
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    let name = match &cli.cmd {
        Cmd::Analyze => "analyze",
        Cmd::Scales { .. } => "scales",
        Cmd::Quasitest { .. } => "quasitest",
        Cmd::Interp { .. } => "interp",
        Cmd::Green { .. } => "green",
        Cmd::Certify { .. } => "certify",
    };
    match cli.cmd {
        Cmd::Analyze => cmd_analyze(&cli),
        Cmd::Scales { nmax } => cmd_scales(&cli, nmax),
        Cmd::Quasitest { notion } => cmd_quasitest(&cli, notion),
        Cmd::Interp { n, z0_arg, t } => cmd_interp(&cli, n, z0_arg, t),
        Cmd::Green { r, a, compare_fd } => cmd_green(&cli, r, a, compare_fd),
        Cmd::Certify { dim } => cmd_certify(&cli, dim),
    }
    .with_context(|| format!("`{name}` command"))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
