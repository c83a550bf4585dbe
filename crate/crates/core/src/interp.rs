//! Trigonometric interpolation at the n-th roots of unity, plus one extra
//! node on the circle.
//!
//! At an n-th root of unity z^n = 1, so two powers whose exponents agree
//! modulo n are indistinguishable there. Collapsing a Fourier series onto
//! residue classes ("aliasing") therefore produces a finite expression
//!
//! ```text
//! L_n(f; z) = sum_{r=0}^{n-1} a_r z^r  +  sum_{r=1}^{n} b_r z^{-r},
//! a_r = sum_{j>=0} c_{r+nj},           b_r = sum_{j>=0} c_{-r-nj},
//! ```
//!
//! that matches f at every n-th root of unity: the positive residue classes
//! cover k >= 0 exactly once and the negative ones cover k <= -1 exactly
//! once. A further correction `gamma * (z^n - 1)`, which vanishes at all the
//! roots of unity, bends the interpolant through one extra node z0 without
//! disturbing the others.
//!
//! Away from the circle the interpolant can grow, and its growth is governed
//! by the decay scale tau of the coefficient rule: on the closed annulus
//! 1/t <= |z| <= t the modulus of the plain interpolant of a function with
//! unit-bounded coefficient tails is at most S(n, t) = 1 + sum_{r=1}^{n}
//! r tau(r) t^r. This module constructs interpolants with certified aliasing
//! tails, evaluates them anywhere off the origin, cross-checks them against
//! a direct discrete Fourier transform, measures annulus suprema, and
//! compares measured growth against the S(n, t) envelope along the degree
//! scale t_n. A separate helper checks the classical polynomial growth bound
//! |p(z)| <= ||p||_circle * e^{n V(z)} with V(z) = |log |z||, for Laurent
//! polynomials of degree n.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::circle::{CircleError, CoefficientRule, NormSequence, CIRCLE_TOL};
use crate::num::{ComplexSum, LogSum, NeumaierSum};
use crate::scales::{self, ScalesError};

/// Below this value of |z0^n - 1| the extra-node correction is dropped
/// (gamma = 0): the node is numerically indistinguishable from a root of
/// unity and the division would amplify evaluation error beyond any use.
pub const CONDITION_DROP: f64 = 1e-12;

/// Below this value of |z0^n - 1| (but above [`CONDITION_DROP`]) the
/// correction is still computed, and the interpolant carries a conditioning
/// warning with the offending modulus.
pub const CONDITION_WARN: f64 = 1e-8;

/// Relative change between successive sample doublings at which an annulus
/// supremum estimate is accepted (0.1%).
pub const SUP_REL_TOL: f64 = 1e-3;

/// Hard cap on samples per boundary circle during supremum doubling.
pub const SUP_SAMPLE_CAP: usize = 1 << 20;

/// Cap on terms per aliased residue-class sum before giving up on tail
/// certification.
const ALIAS_TERM_CAP: usize = 10_000_000;

/// Slack factor allowed when verifying r^3 tau(r) t_n^r <= 1 at integer r:
/// t_n comes from a refined grid minimization, so the inequality can be
/// violated by the refinement tolerance at the minimizing radius.
const WINDOW_SLACK: f64 = 1e-6;

/// Errors from interpolant construction, evaluation and the growth scans.
#[derive(Debug, Error)]
pub enum InterpError {
    /// Upstream coefficient-rule failure.
    #[error(transparent)]
    Circle(#[from] CircleError),
    /// Upstream growth-scale failure.
    #[error(transparent)]
    Scales(#[from] ScalesError),
    /// Interpolation degree must be at least 1.
    #[error("interpolation degree must be at least 1 (got {n})")]
    DegreeRange {
        /// Rejected degree.
        n: usize,
    },
    /// The extra node must lie on the unit circle.
    #[error("extra node must lie on the unit circle (modulus deviates by {dev:.3e})")]
    OffCircleNode {
        /// Deviation of |z0| from 1.
        dev: f64,
    },
    /// Interpolants contain negative powers and cannot be evaluated at 0.
    #[error("interpolants cannot be evaluated at z = 0 (negative powers present)")]
    ZeroPoint,
    /// An aliased sum did not certify below its tail budget.
    #[error("aliased coefficient sum failed to certify below its tail budget within {cap} terms")]
    TailCap {
        /// Term cap that was hit.
        cap: usize,
    },
    /// The annulus half-width must exceed 1.
    #[error("annulus parameter t must exceed 1 (got {t})")]
    AnnulusParameter {
        /// Rejected half-width.
        t: f64,
    },
    /// The growth scan needs a genuinely infinite expansion.
    #[error("coefficient rule has finite degree; its decay scale degenerates and the growth scan does not apply")]
    DegenerateScale,
    /// The window inequality failed at an integer radius.
    #[error("window bound precondition fails at r = {r}: r^3 tau(r) t_n^r = {value:.6} exceeds 1")]
    WindowPrecondition {
        /// Radius at which the product exceeds 1.
        r: usize,
        /// Value of the product there.
        value: f64,
    },
    /// The scan requires a normalized rule.
    #[error("coefficient rule must be normalized (third derivative norm below 1/2) before scanning")]
    NotNormalized,
    /// The degree list for a scan must not be empty.
    #[error("degree list must be non-empty")]
    EmptyDegrees,
    /// The extra-node list for a scan must not be empty.
    #[error("extra-node list must be non-empty")]
    EmptyNodes,
    /// Laurent coefficient slices must have odd length 2n+1.
    #[error("Laurent coefficient list must have odd length 2n+1 (got {len})")]
    BadCoefficientCount {
        /// Rejected length.
        len: usize,
    },
    /// The sample list for the polynomial growth check must be non-empty.
    #[error("sample list must be non-empty")]
    NoSamples,
}

type Result<T> = std::result::Result<T, InterpError>;

/// Trigonometric interpolant at the n-th roots of unity plus one extra node.
///
/// Stores the aliased coefficients, the extra node and its correction
/// weight, and the total certified aliasing tail error.
#[derive(Debug, Clone)]
pub struct Interpolant {
    n: usize,
    /// a[r] multiplies z^r for r = 0..n-1.
    a: Vec<Complex64>,
    /// b[r-1] multiplies z^{-r} for r = 1..n.
    b: Vec<Complex64>,
    z0: Complex64,
    gamma: Complex64,
    tail_err: f64,
    conditioning: Option<f64>,
}

/// Default extra node e^{i pi / (2n)}: halfway between the root of unity at
/// angle 0 and its nearest neighbour among the 2n-th roots, so z0^n = i and
/// |z0^n - 1| = sqrt(2) keeps the correction well conditioned at every n.
pub fn default_z0(n: usize) -> Complex64 {
    Complex64::from_polar(1.0, PI / (2.0 * n as f64))
}

/// Collapse the coefficients of `rule` onto residue classes modulo n.
///
/// Returns `(a, b, tail_err)` where `a[r]` sums c_{r+nj} for j >= 0
/// (r = 0..n-1), `b[r-1]` sums c_{-r-nj} for j >= 0 (r = 1..n), and
/// `tail_err` is the accumulated certified bound on everything left out.
/// Each of the 2n sums is truncated only once its certified remaining tail
/// is at most eps/(2n+1), so `tail_err < eps`. Rules with finite support
/// are partitioned exactly and report a zero tail.
pub fn aliased_coeffs(
    rule: &CoefficientRule,
    n: usize,
    eps: f64,
) -> Result<(Vec<Complex64>, Vec<Complex64>, f64)> {
    if n == 0 {
        return Err(InterpError::DegreeRange { n });
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(InterpError::Circle(CircleError::InvalidParameter {
            name: "eps",
            reason: format!("tail budget must be positive and finite (got {eps})"),
        }));
    }
    let mut a = vec![Complex64::new(0.0, 0.0); n];
    let mut b = vec![Complex64::new(0.0, 0.0); n];

    if let Some(deg) = rule.finite_degree() {
        // Finite support: assign every coefficient to its residue class.
        for k in -deg..=deg {
            let c = rule.coefficient(k)?;
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            if k >= 0 {
                a[(k as usize) % n] += c;
            } else {
                let r = ((-k - 1) as usize) % n + 1; // k = -r - nj with 1 <= r <= n
                b[r - 1] += c;
            }
        }
        return Ok((a, b, 0.0));
    }

    let budget = eps / (2 * n + 1) as f64;
    let mut tail = NeumaierSum::new();
    // One residue-class sum; `negative` selects the side of the spectrum.
    let run = |first: i64, negative: bool| -> Result<(Complex64, f64)> {
        let mut acc = ComplexSum::new();
        let step = n as i64;
        for j in 0..ALIAS_TERM_CAP {
            let idx = first + step * j as i64;
            acc.add(rule.coefficient(if negative { -idx } else { idx })?);
            // Everything not yet added sits at indices of magnitude
            // >= first + step*(j+1), so the one-sided coefficient tail past
            // that point (exclusive cutoff, hence the -1) bounds it.
            let bound = rule.one_sided_tail_bound(idx + step - 1, negative)?;
            if bound <= budget {
                return Ok((acc.value(), bound));
            }
        }
        Err(InterpError::TailCap { cap: ALIAS_TERM_CAP })
    };
    for (r, slot) in a.iter_mut().enumerate() {
        let (v, t) = run(r as i64, false)?;
        *slot = v;
        tail.add(t);
    }
    for r in 1..=n {
        let (v, t) = run(r as i64, true)?;
        b[r - 1] = v;
        tail.add(t);
    }
    Ok((a, b, tail.value()))
}

impl Interpolant {
    /// Number of interpolation nodes among the roots of unity.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Aliased coefficients of the nonnegative powers z^r, r = 0..n-1.
    pub fn aliased_a(&self) -> &[Complex64] {
        &self.a
    }

    /// Aliased coefficients of the negative powers z^{-r}; entry r-1
    /// multiplies z^{-r} for r = 1..n.
    pub fn aliased_b(&self) -> &[Complex64] {
        &self.b
    }

    /// The extra interpolation node on the circle.
    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    /// Weight of the correction term gamma (z^n - 1).
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// Accumulated certified bound on all discarded aliasing tails.
    pub fn tail_err(&self) -> f64 {
        self.tail_err
    }

    /// When |z0^n - 1| fell below [`CONDITION_WARN`], carries that modulus;
    /// the correction is then ill conditioned (or, below
    /// [`CONDITION_DROP`], dropped entirely).
    pub fn conditioning_warning(&self) -> Option<f64> {
        self.conditioning
    }

    /// Evaluate the interpolant at any z != 0 by two Horner recursions, one
    /// in z for the nonnegative powers and one in 1/z for the negative
    /// powers, plus the extra-node correction.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Err(InterpError::ZeroPoint);
        }
        let mut p = Complex64::new(0.0, 0.0);
        for r in (0..self.n).rev() {
            p = p * z + self.a[r];
        }
        let u = z.inv();
        let mut q = Complex64::new(0.0, 0.0);
        for r in (1..=self.n).rev() {
            q = (q + self.b[r - 1]) * u;
        }
        let correction = self.gamma * (z.powu(self.n as u32) - Complex64::new(1.0, 0.0));
        Ok(p + q + correction)
    }
}

/// Build the interpolant of `rule` at the n-th roots of unity plus the extra
/// node `z0` (default e^{i pi/(2n)}).
///
/// The correction weight is gamma = (f(z0) - L_n(f; z0)) / (z0^n - 1); when
/// |z0^n - 1| < [`CONDITION_DROP`] the node coincides numerically with a
/// root of unity and the correction is dropped, and below
/// [`CONDITION_WARN`] the interpolant carries a conditioning warning.
pub fn build(
    rule: &CoefficientRule,
    n: usize,
    z0: Option<Complex64>,
    eps: f64,
) -> Result<Interpolant> {
    if n == 0 {
        return Err(InterpError::DegreeRange { n });
    }
    let z0 = z0.unwrap_or_else(|| default_z0(n));
    let dev = (z0.norm() - 1.0).abs();
    if dev > CIRCLE_TOL {
        return Err(InterpError::OffCircleNode { dev });
    }
    let (a, b, tail_err) = aliased_coeffs(rule, n, eps)?;
    let mut interp = Interpolant {
        n,
        a,
        b,
        z0,
        gamma: Complex64::new(0.0, 0.0),
        tail_err,
        conditioning: None,
    };
    let denom = z0.powu(n as u32) - Complex64::new(1.0, 0.0);
    let d = denom.norm();
    if d < CONDITION_WARN {
        interp.conditioning = Some(d);
    }
    if d >= CONDITION_DROP {
        let f_z0 = rule.evaluate(z0, eps)?;
        let l_z0 = interp.eval(z0)?;
        interp.gamma = (f_z0 - l_z0) / denom;
    }
    Ok(interp)
}

/// Compare the aliased coefficients with a direct discrete Fourier
/// transform of circle samples and return the largest deviation.
///
/// The DFT of the n samples f(omega^l) at exact-angle roots of unity
/// recovers d_r = a_r + b_{n-r} for r = 1..n-1 and d_0 = a_0 + b_n,
/// because z^{-r} and z^{n-r} alias on the nodes. Deviations beyond the
/// certified aliasing tails (plus roundoff) indicate an inconsistency
/// between the coefficient rule's pointwise values and its tail bounds.
pub fn dft_consistency(rule: &CoefficientRule, n: usize, eps: f64) -> Result<f64> {
    let (a, b, _) = aliased_coeffs(rule, n, eps)?;
    let node_eps = eps / n as f64;
    let samples: Vec<Complex64> = (0..n)
        .map(|l| {
            let node = Complex64::from_polar(1.0, 2.0 * PI * l as f64 / n as f64);
            rule.evaluate(node, node_eps)
        })
        .collect::<std::result::Result<_, _>>()?;
    let mut worst = 0.0f64;
    for r in 0..n {
        let mut acc = ComplexSum::new();
        for (l, f_l) in samples.iter().enumerate() {
            // exact reduced angle for omega^{-l r}
            let phase = -2.0 * PI * ((l * r) % n) as f64 / n as f64;
            acc.add(f_l * Complex64::from_polar(1.0, phase));
        }
        let d_r = acc.value() / n as f64;
        let model = if r == 0 { a[0] + b[n - 1] } else { a[r] + b[n - r - 1] };
        worst = worst.max((d_r - model).norm());
    }
    Ok(worst)
}

/// Annulus supremum estimate from boundary sampling.
#[derive(Debug, Clone, Copy)]
pub struct SupEstimate {
    /// Largest sampled modulus over both boundary circles.
    pub value: f64,
    /// Samples per boundary circle in the final pass.
    pub samples_per_circle: usize,
    /// Whether successive doublings changed the estimate by less than
    /// [`SUP_REL_TOL`] before the sample cap.
    pub converged: bool,
}

/// Estimate the supremum of |L| over the annulus 1/t <= |z| <= t.
///
/// The interpolant is a Laurent polynomial plus the correction, holomorphic
/// on the punctured plane, so by the maximum principle on the annulus the
/// supremum is attained on one of the two boundary circles. Both are
/// sampled at equispaced angles, doubling the count until the estimate
/// changes by less than 0.1% (doubling keeps earlier angles, so estimates
/// are nondecreasing).
pub fn annulus_sup(interp: &Interpolant, t: f64, start_samples: usize) -> Result<SupEstimate> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(InterpError::AnnulusParameter { t });
    }
    let mut m = start_samples.max(64);
    let mut prev: Option<f64> = None;
    loop {
        let mut sup = 0.0f64;
        for i in 0..m {
            let theta = 2.0 * PI * i as f64 / m as f64;
            let outer = Complex64::from_polar(t, theta);
            let inner = Complex64::from_polar(1.0 / t, theta);
            sup = sup.max(interp.eval(outer)?.norm());
            sup = sup.max(interp.eval(inner)?.norm());
        }
        if let Some(p) = prev {
            if (sup - p).abs() <= SUP_REL_TOL * sup.max(f64::MIN_POSITIVE) {
                return Ok(SupEstimate { value: sup, samples_per_circle: m, converged: true });
            }
        }
        if m >= SUP_SAMPLE_CAP {
            return Ok(SupEstimate { value: sup, samples_per_circle: m, converged: false });
        }
        prev = Some(sup);
        m *= 2;
    }
}

/// Growth envelope S(n, t) = 1 + sum_{r=1}^{n} r tau(r) t^r for the
/// interpolant of a function whose coefficient tails are bounded by its
/// derivative-norm decay scale tau.
///
/// Terms are accumulated in log space, so very small tau values cannot
/// underflow the sum. Radii at which the stored table certifies tau = 0
/// contribute nothing; radii past the table end use the smallest stored
/// ratio, which can only enlarge tau and hence the envelope, keeping the
/// returned value a valid upper bound. By convention S(0, t) = 1.
pub fn er_bound(seq: &NormSequence, n: usize, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(InterpError::AnnulusParameter { t });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let log_t = t.ln();
    let mut ls = LogSum::new();
    for r in 1..=n {
        let tv = scales::log_tau(seq, r as f64)?;
        if tv.log_tau == f64::NEG_INFINITY {
            continue;
        }
        ls.add_log((r as f64).ln() + tv.log_tau + r as f64 * log_t);
    }
    Ok(1.0 + ls.log_value().exp())
}

/// One row of a uniform-growth scan: measured annulus supremum against the
/// S(n, t_n) envelope at the degree scale t_n.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ScanRow {
    /// Interpolation degree.
    pub n: usize,
    /// Angle of the extra node used for this row.
    pub z0_arg: f64,
    /// log t_n for this degree.
    pub log_tn: f64,
    /// Measured supremum of |L| over the annulus of half-width t_n.
    pub sup_measured: f64,
    /// Envelope S(n, t_n).
    pub er_bound: f64,
    /// sup_measured / er_bound.
    pub ratio: f64,
}

/// Uniform-growth scan across degrees and extra nodes.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanTable {
    /// One row per (degree, extra node) pair, degree-major order.
    pub rows: Vec<ScanRow>,
    /// True when the norm table ran out during some tau evaluation; the
    /// envelope column is then conservative (an upper bound computed from a
    /// too-small table) rather than sharp.
    pub truncated: bool,
}

impl ScanTable {
    /// Render as CSV with the fixed header
    /// `n,z0_arg,log_tn,sup_measured,er_bound,ratio`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,z0_arg,log_tn,sup_measured,er_bound,ratio\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                row.n, row.z0_arg, row.log_tn, row.sup_measured, row.er_bound, row.ratio
            ));
        }
        out
    }
}

/// Grow a derivative-norm table until the decay scale at radius `r_max` no
/// longer hits the table end (or a hard cap of 65536 entries is reached,
/// after which results are conservative).
fn adequate_norms(rule: &CoefficientRule, r_max: f64, rel_eps: f64) -> Result<NormSequence> {
    let mut j_max = 64usize;
    loop {
        let seq = rule.norm_sequence(j_max, rel_eps)?;
        let tv = scales::log_tau(&seq, r_max)?;
        if !tv.truncated || j_max >= 65536 {
            return Ok(seq);
        }
        j_max *= 2;
    }
}

/// Measure interpolant growth against the S(n, t_n) envelope across a list
/// of degrees and extra-node angles.
///
/// Preconditions: the rule must be normalized (third derivative norm below
/// 1/2) and must not be a trigonometric polynomial (whose decay scale
/// degenerates to 0 and carries no growth information). For each degree the
/// window inequality r^3 tau(r) t_n^r <= 1 is re-verified at every integer
/// radius r <= n, up to the refinement tolerance of the t_n minimization,
/// before any supremum is trusted against the envelope.
pub fn uniform_bound_scan(
    rule: &CoefficientRule,
    degrees: &[usize],
    z0_args: &[f64],
    eps: f64,
) -> Result<ScanTable> {
    if degrees.is_empty() {
        return Err(InterpError::EmptyDegrees);
    }
    if z0_args.is_empty() {
        return Err(InterpError::EmptyNodes);
    }
    if rule.finite_degree().is_some() {
        return Err(InterpError::DegenerateScale);
    }
    let n_max = *degrees.iter().max().expect("non-empty");
    if degrees.contains(&0) {
        return Err(InterpError::DegreeRange { n: 0 });
    }
    let rel = crate::circle::DEFAULT_REL_EPS;
    let seq = adequate_norms(rule, n_max as f64, rel)?;
    if !scales::is_normalized(&seq)? {
        return Err(InterpError::NotNormalized);
    }
    let mut rows = Vec::with_capacity(degrees.len() * z0_args.len());
    let mut truncated = false;
    for &n in degrees {
        let wv = scales::log_tn(&seq, n)?;
        if wv.degenerate {
            return Err(InterpError::DegenerateScale);
        }
        truncated |= wv.truncated;
        let log_tn = wv.log_value;
        let t_n = log_tn.exp();
        for r in 1..=n {
            let tv = scales::log_tau(&seq, r as f64)?;
            truncated |= tv.truncated;
            let log_prod = 3.0 * (r as f64).ln() + tv.log_tau + r as f64 * log_tn;
            if log_prod > WINDOW_SLACK {
                return Err(InterpError::WindowPrecondition { r, value: log_prod.exp() });
            }
        }
        let envelope = er_bound(&seq, n, t_n)?;
        for &arg in z0_args {
            let z0 = Complex64::from_polar(1.0, arg);
            let interp = build(rule, n, Some(z0), eps)?;
            let sup = annulus_sup(&interp, t_n, 256)?;
            rows.push(ScanRow {
                n,
                z0_arg: arg,
                log_tn,
                sup_measured: sup.value,
                er_bound: envelope,
                ratio: sup.value / envelope,
            });
        }
    }
    Ok(ScanTable { rows, truncated })
}

/// Result of the polynomial growth-bound check.
#[derive(Debug, Clone, Copy)]
pub struct GrowthCheck {
    /// Inflated estimate of the circle supremum of |p|.
    pub norm_estimate: f64,
    /// max over samples of |p(z)| e^{-n V(z)} - norm_estimate; nonpositive
    /// when the growth bound holds at every sample.
    pub max_violation: f64,
    /// Sample attaining the maximum.
    pub worst_sample: Complex64,
}

/// Check the growth bound |p(z)| <= ||p||_circle e^{n V(z)},
/// V(z) = |log |z||, for a Laurent polynomial p(z) = sum_{k=-n}^{n} c_k z^k.
///
/// `coeffs` lists c_{-n}..c_n (odd length 2n+1). The circle norm is
/// estimated on 4096 * max(1, n/32) equispaced points and inflated by
/// 1/cos(pi n / m), which converts a grid maximum of a degree-n
/// trigonometric polynomial into a certified upper bound on its true circle
/// supremum. The returned violation is the worst sampled excess of
/// |p(z)| e^{-n V(z)} over that estimate; nonpositive values (up to
/// roundoff) confirm the bound.
pub fn bernstein_walsh_check(coeffs: &[Complex64], samples: &[Complex64]) -> Result<GrowthCheck> {
    if coeffs.is_empty() || coeffs.len() % 2 == 0 {
        return Err(InterpError::BadCoefficientCount { len: coeffs.len() });
    }
    if samples.is_empty() {
        return Err(InterpError::NoSamples);
    }
    let n = (coeffs.len() - 1) / 2;
    // p(z) = z^{-n} * q(z) with q of plain degree 2n; on the circle the
    // prefactor has unit modulus.
    let q = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let p_abs = |z: Complex64| -> Result<f64> {
        let r = z.norm();
        if r == 0.0 {
            return Err(InterpError::ZeroPoint);
        }
        // |z^{-n}| = r^{-n}, computed in log space to avoid overflow.
        Ok(q(z).norm() * (-(n as f64) * r.ln()).exp())
    };
    let m = 4096 * std::cmp::max(1, n / 32);
    let mut grid_max = 0.0f64;
    for i in 0..m {
        let z = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / m as f64);
        grid_max = grid_max.max(p_abs(z)?);
    }
    let inflation = 1.0 / (PI * n as f64 / m as f64).cos();
    let norm_estimate = grid_max * inflation;
    let mut max_violation = f64::NEG_INFINITY;
    let mut worst_sample = samples[0];
    for &z in samples {
        let r = z.norm();
        if r == 0.0 {
            return Err(InterpError::ZeroPoint);
        }
        let v = r.ln().abs();
        let excess = p_abs(z)? * (-(n as f64) * v).exp() - norm_estimate;
        if excess > max_violation {
            max_violation = excess;
            worst_sample = z;
        }
    }
    Ok(GrowthCheck { norm_estimate, max_violation, worst_sample })
}
