//! Growth scales built from a derivative-norm table.
//!
//! For a norm table M_0, M_1, ... the basic scale is
//!
//! ```text
//!     tau(r) = inf_j M_j / r^j          (r >= 1)
//! ```
//!
//! which measures how fast the norms outrun geometric growth. In log space
//! -log tau(e^x) = max_j (j x - log M_j) is a maximum of affine functions of
//! x, so tau is computed by scanning the (nondecreasing, by log-convexity)
//! successive ratios until they cross log r: the first crossing is the global
//! minimizer, no further terms can dip lower.
//!
//! Two derived per-degree scales drive everything downstream:
//!
//! ```text
//!     log t_n     = min_{1 <= r <= n} -(3 log r + log tau(r)) / r
//!     log theta_n = min_{1 <= r <= n} -(log tau~(r)) / r
//! ```
//!
//! where tau~(r) = inf_s M_{s+3} / r^s is the index-shifted variant. Both
//! windows assume the table has been normalized so that M_3 < 1/2 (see
//! [`crate::circle::CoefficientRule::normalize`]); that is what pins the
//! minimizer inside [1, n]. The diagnostic n^{1-1/(N+1)} * log t_n stays
//! bounded exactly when the data is consistent with the pluripolarity-style
//! certificates of [`crate::certify`], and [`growth_verdict`] reads off its
//! trend.
//!
//! Degeneracy: for a trigonometric polynomial the ratios M_{j+1}/M_j converge
//! to the degree, so tau(r) = 0 for r beyond it. The scan reports this as a
//! degenerate value (log tau = -inf) rather than an error; callers decide how
//! to surface it (the command-line tool maps it to a dedicated exit code).

use crate::circle::NormSequence;
use crate::num::{golden_min, lsq_slope};

/// Fixed grid density for the window minimizations: points per decade of r.
const GRID_PER_DECADE: usize = 64;
/// Bracket tolerance (in log r) for the golden-section refinement.
const REFINE_XTOL: f64 = 1e-10;
/// Trend threshold for [`growth_verdict`]: diagnostic slope per decade of n.
pub const TREND_SLOPE_TOL: f64 = 0.05;

#[derive(Debug, thiserror::Error)]
pub enum ScalesError {
    #[error("growth scales are defined for r >= 1, got r = {r}")]
    RadiusRange { r: f64 },
    #[error("norm table too short: need indices up to {need}, have {have} entries")]
    TableTooShort { need: usize, have: usize },
    #[error("degree window requires n >= 1, got {n}")]
    DegreeRange { n: usize },
    #[error("degree list must be strictly increasing (offending entry {n})")]
    DegreesNotIncreasing { n: usize },
    #[error("norm table is not normalized: log M_3 = {log_m3:.6} >= log(1/2); rescale first")]
    NotNormalized { log_m3: f64 },
    #[error("need at least {need} rows for a trend verdict, got {have}")]
    TooFewRows { need: usize, have: usize },
}

type Result<T> = std::result::Result<T, ScalesError>;

/// Value of tau at one radius.
#[derive(Debug, Clone, Copy)]
pub struct TauValue {
    /// log tau(r); -inf when the infimum is exactly zero.
    pub log_tau: f64,
    /// Index attaining the minimum (first ratio crossing).
    pub minimizer: usize,
    /// True when the scan ran off the end of the finite table without finding
    /// a crossing; the reported value is then only an upper bound for tau.
    pub truncated: bool,
    /// True when tau(r) = 0 is certified (geometric-growth cap below r, or a
    /// vanishing norm); downstream scales are meaningless in this case.
    pub degenerate: bool,
}

/// Scan shared by the plain and shifted scales: minimize v[base+s] - s*log_r
/// over s >= 0 within the table.
fn scan(seq: &NormSequence, base: usize, log_r: f64) -> Result<TauValue> {
    let v = seq.log_values();
    if v.len() <= base {
        return Err(ScalesError::TableTooShort { need: base, have: v.len() });
    }
    // Certified degeneracy: ratios converge below log r, so the infimum over
    // the *infinite* index range is zero even if the finite scan would stop.
    if let Some(cap) = seq.log_ratio_limit {
        if log_r > cap {
            return Ok(TauValue {
                log_tau: f64::NEG_INFINITY,
                minimizer: v.len() - 1,
                truncated: false,
                degenerate: true,
            });
        }
    }
    let mut best = v[base];
    let mut arg = 0usize;
    let mut s = 0usize;
    loop {
        let j = base + s;
        if j + 1 >= v.len() {
            return Ok(TauValue {
                log_tau: best,
                minimizer: base + arg,
                truncated: true,
                degenerate: best == f64::NEG_INFINITY,
            });
        }
        // log-convexity makes these differences nondecreasing in j, so the
        // first nonnegative one is the global crossing
        if v[j + 1] - v[j] >= log_r {
            return Ok(TauValue {
                log_tau: best,
                minimizer: base + arg,
                truncated: false,
                degenerate: best == f64::NEG_INFINITY,
            });
        }
        s += 1;
        let cand = v[base + s] - s as f64 * log_r;
        if cand < best {
            best = cand;
            arg = s;
        }
    }
}

/// log tau(r) = log inf_j M_j / r^j.
pub fn log_tau(seq: &NormSequence, r: f64) -> Result<TauValue> {
    if !(r >= 1.0) {
        return Err(ScalesError::RadiusRange { r });
    }
    scan(seq, 0, r.ln())
}

/// log tau~(r) for the index-shifted scale tau~(r) = inf_s M_{s+3} / r^s.
pub fn log_tau_shifted(seq: &NormSequence, r: f64) -> Result<TauValue> {
    if !(r >= 1.0) {
        return Err(ScalesError::RadiusRange { r });
    }
    scan(seq, 3, r.ln())
}

/// Value of one window minimization (t_n or theta_n).
#[derive(Debug, Clone, Copy)]
pub struct WindowValue {
    /// The minimal objective value (log t_n resp. log theta_n); +inf when tau
    /// degenerates over the whole window.
    pub log_value: f64,
    /// Radius attaining the minimum.
    pub minimizing_r: f64,
    /// Some tau evaluation inside the window hit the table end.
    pub truncated: bool,
    /// tau degenerated at the reported minimizer (log_value is +inf there).
    pub degenerate: bool,
}

fn window_min(
    seq: &NormSequence,
    n: usize,
    eval: impl Fn(&NormSequence, f64) -> Result<TauValue>,
    objective: impl Fn(f64, &TauValue) -> f64,
) -> Result<WindowValue> {
    if n < 1 {
        return Err(ScalesError::DegreeRange { n });
    }
    let x_max = (n as f64).ln();
    let mut truncated = false;
    let probe = |x: f64| -> Result<(f64, TauValue)> {
        let r = x.exp().clamp(1.0, n as f64);
        let tv = eval(seq, r)?;
        Ok((objective(r, &tv), tv))
    };
    if n == 1 {
        let (val, tv) = probe(0.0)?;
        return Ok(WindowValue {
            log_value: val,
            minimizing_r: 1.0,
            truncated: tv.truncated,
            degenerate: tv.degenerate,
        });
    }
    let decades = x_max / std::f64::consts::LN_10;
    let points = ((GRID_PER_DECADE as f64 * decades).ceil() as usize).max(8) + 1;
    let mut best = f64::INFINITY;
    let mut best_i = 0usize;
    for i in 0..points {
        let x = x_max * i as f64 / (points - 1) as f64;
        let (val, tv) = probe(x)?;
        truncated |= tv.truncated;
        if val < best {
            best = val;
            best_i = i;
        }
    }
    if best == f64::INFINITY {
        // degenerate across the entire window
        return Ok(WindowValue {
            log_value: f64::INFINITY,
            minimizing_r: n as f64,
            truncated,
            degenerate: true,
        });
    }
    let step = x_max / (points - 1) as f64;
    let lo = (best_i.saturating_sub(1)) as f64 * step;
    let hi = ((best_i + 1).min(points - 1)) as f64 * step;
    let (x_star, _) = golden_min(
        |x| match probe(x) {
            Ok((v, _)) => v,
            Err(_) => f64::INFINITY,
        },
        lo,
        hi,
        REFINE_XTOL,
    );
    let (mut val, mut tv) = probe(x_star)?;
    let mut r_star = x_star.exp().clamp(1.0, n as f64);
    // the refined point can only be accepted if it beats the grid
    if best < val {
        val = best;
        let back = probe(best_i as f64 * step)?;
        tv = back.1;
        r_star = (best_i as f64 * step).exp().clamp(1.0, n as f64);
    }
    truncated |= tv.truncated;
    Ok(WindowValue {
        log_value: val,
        minimizing_r: r_star,
        truncated,
        degenerate: tv.degenerate,
    })
}

/// log t_n = min over 1 <= r <= n of -(3 log r + log tau(r)) / r.
pub fn log_tn(seq: &NormSequence, n: usize) -> Result<WindowValue> {
    window_min(seq, n, log_tau, |r, tv| {
        if tv.degenerate {
            f64::INFINITY
        } else {
            -(3.0 * r.ln() + tv.log_tau) / r
        }
    })
}

/// log theta_n = min over 1 <= r <= n of -log tau~(r) / r.
pub fn log_theta(seq: &NormSequence, n: usize) -> Result<WindowValue> {
    window_min(seq, n, log_tau_shifted, |r, tv| {
        if tv.degenerate {
            f64::INFINITY
        } else {
            -tv.log_tau / r
        }
    })
}

/// One row of a scale table.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ScaleRow {
    pub n: usize,
    pub log_tn: f64,
    pub log_theta_n: f64,
    /// n^(1 - 1/(N+1)) * log t_n — the boundedness diagnostic.
    pub diagnostic: f64,
    pub minimizing_r: f64,
}

/// Growth-scale table over a list of degrees, for data of dimension N.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScaleTable {
    pub dimension: usize,
    /// The diagnostic exponent 1 - 1/(N+1).
    pub exponent: f64,
    pub rows: Vec<ScaleRow>,
    /// Some tau scan hit the end of the finite norm table; diagnostics are
    /// then upper bounds computed from a truncated table.
    pub truncated: bool,
    /// tau degenerated somewhere (trigonometric-polynomial data).
    pub degenerate: bool,
}

impl ScaleTable {
    /// Render as CSV with the fixed header
    /// `n,log_tn,log_theta_n,sqrtn_log_tn,minimizing_r` (the diagnostic column
    /// keeps its scalar-case name; for dimension N it holds
    /// n^(1-1/(N+1)) log t_n).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,log_tn,log_theta_n,sqrtn_log_tn,minimizing_r\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                row.n, row.log_tn, row.log_theta_n, row.diagnostic, row.minimizing_r
            ));
        }
        out
    }
}

/// Check the normalization precondition M_3 < 1/2 for a table.
pub fn is_normalized(seq: &NormSequence) -> Result<bool> {
    let log_m3 = seq
        .log_value(3)
        .map_err(|_| ScalesError::TableTooShort { need: 3, have: seq.len() })?;
    Ok(log_m3 < 0.5f64.ln())
}

/// Build the scale table for a normalized norm table and a strictly
/// increasing list of degrees. `dimension` is the number of components N of
/// the underlying data (1 for a single function); it only affects the
/// diagnostic exponent.
pub fn build_scale_table(
    seq: &NormSequence,
    degrees: &[usize],
    dimension: usize,
) -> Result<ScaleTable> {
    if !is_normalized(seq)? {
        return Err(ScalesError::NotNormalized { log_m3: seq.log_value(3).unwrap() });
    }
    let dimension = dimension.max(1);
    let exponent = 1.0 - 1.0 / (dimension as f64 + 1.0);
    let mut rows = Vec::with_capacity(degrees.len());
    let mut truncated = false;
    let mut degenerate = false;
    let mut prev: Option<usize> = None;
    for &n in degrees {
        if let Some(p) = prev {
            if n <= p {
                return Err(ScalesError::DegreesNotIncreasing { n });
            }
        }
        prev = Some(n);
        let t = log_tn(seq, n)?;
        let th = log_theta(seq, n)?;
        truncated |= t.truncated || th.truncated;
        degenerate |= t.degenerate || th.degenerate;
        rows.push(ScaleRow {
            n,
            log_tn: t.log_value,
            log_theta_n: th.log_value,
            diagnostic: (n as f64).powf(exponent) * t.log_value,
            minimizing_r: t.minimizing_r,
        });
    }
    Ok(ScaleTable { dimension, exponent, rows, truncated, degenerate })
}

/// Trend read off a diagnostic table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Trend {
    /// Diagnostic grows with n (slope above threshold).
    Diverging,
    /// Diagnostic is flat within the threshold.
    Bounded,
    /// Diagnostic decays (slope below minus threshold).
    Decaying,
}

/// Verdict on the boundedness of the diagnostic sequence.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GrowthVerdict {
    pub trend: Trend,
    /// Least-squares slope of diagnostic vs log10 n over the last half of the
    /// rows.
    pub slope_per_decade: f64,
    /// Always present: these are asymptotic criteria probed at finite n.
    pub caveat: String,
}

/// Mandatory caveat attached to every finite-sample trend verdict.
pub const DESK_SCALE_CAVEAT: &str =
    "asymptotic criteria checked at desk scale: verdict reflects the sampled degree range only";

/// Fit the last half of the diagnostic column against log10 n and classify
/// the slope. Requires at least 4 rows so the "last half" has two points.
pub fn growth_verdict(table: &ScaleTable) -> Result<GrowthVerdict> {
    if table.rows.len() < 4 {
        return Err(ScalesError::TooFewRows { need: 4, have: table.rows.len() });
    }
    let half = table.rows.len() / 2;
    let tail = &table.rows[half..];
    let xs: Vec<f64> = tail.iter().map(|r| (r.n as f64).log10()).collect();
    let ys: Vec<f64> = tail.iter().map(|r| r.diagnostic).collect();
    let slope = lsq_slope(&xs, &ys).unwrap_or(0.0);
    let trend = if slope > TREND_SLOPE_TOL {
        Trend::Diverging
    } else if slope < -TREND_SLOPE_TOL {
        Trend::Decaying
    } else {
        Trend::Bounded
    };
    Ok(GrowthVerdict {
        trend,
        slope_per_decade: slope,
        caveat: DESK_SCALE_CAVEAT.to_string(),
    })
}
