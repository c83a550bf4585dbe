//! Functions on the unit circle described by Fourier-coefficient rules.
//!
//! A rule assigns a coefficient c_k to every integer frequency k, either
//! pointwise (an explicit finite list, or one of three decaying parametric
//! families) or abstractly through a table of derivative norms. The derivative
//! norms are
//!
//! ```text
//!     M_j^2 = sum_k k^{2j} |c_k|^2        (j = 0, 1, 2, ...)
//! ```
//!
//! i.e. the L^2 norms of the j-th derivative of f(e^{i t}) = sum c_k e^{i k t}.
//! Everything downstream (growth scales, quasianalyticity tests, certificates)
//! consumes either the coefficients or the norm table, so this module is the
//! root of the pipeline.
//!
//! All infinite sums carry certified truncation bounds: closed-form geometric
//! tails where available, integral-comparison bounds otherwise. A sum is never
//! silently truncated; if a certified bound cannot be established within the
//! summation cap, the operation reports an error instead.
//!
//! Norms of rapidly growing sequences (e.g. M_j = j^{3j/2} with j in the
//! hundreds) overflow f64 as raw values, so [`NormSequence`] stores logarithms
//! and the accessors expose both forms.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::num::{ComplexSum, LogSum};

/// Hard cap on summation length for certified norm computations.
const SUM_CAP: usize = 20_000_000;

/// Tolerance for "is this point on the unit circle".
pub(crate) const CIRCLE_TOL: f64 = 1e-9;

/// Default absolute tolerance for evaluation and truncation.
pub const DEFAULT_EPS: f64 = 1e-10;
/// Default relative tolerance for derivative norms.
pub const DEFAULT_REL_EPS: f64 = 1e-10;
/// Normalization target: rules are rescaled so the third derivative norm
/// becomes 0.4 (strictly below the 1/2 threshold the growth scales require).
pub const NORMALIZE_TARGET_M3: f64 = 0.4;

#[derive(Debug, thiserror::Error)]
pub enum CircleError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("rule carries only norm data; it has no pointwise coefficients")]
    NotPointwise,
    #[error("evaluation point must lie on the unit circle (distance {dev:.3e} from it)")]
    OffCircle { dev: f64 },
    #[error("tail certification for derivative norm j = {j} not reached within {cap} terms")]
    TailCertification { j: usize, cap: usize },
    #[error("norm index {j} is beyond the stored table (length {len})")]
    NormIndex { j: usize, len: usize },
    #[error("invalid norm sequence: {0}")]
    InvalidNorms(String),
    #[error("function document: {0}")]
    Document(String),
}

type Result<T> = std::result::Result<T, CircleError>;

// ---------------------------------------------------------------------------
// coefficient rules
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum Family {
    /// Finite support: a trigonometric polynomial.
    Explicit { entries: BTreeMap<i64, Complex64> },
    /// c_k = amplitude * ratio^{|k|}, 0 < ratio < 1.
    Geometric { amplitude: f64, ratio: f64 },
    /// c_k = amplitude * exp(-beta |k|^alpha), beta > 0, 0 < alpha <= 1.
    ExpPower { amplitude: f64, beta: f64, alpha: f64 },
    /// c_k = amplitude * exp(-beta log^2(1+|k|)), beta > 0.
    LogSquaredExp { amplitude: f64, beta: f64 },
    /// No coefficients; derivative norms given directly.
    Synthetic { norms: NormSequence },
}

/// A coefficient rule: a family plus a positive scalar multiplier.
///
/// The multiplier is how normalization is expressed without touching family
/// parameters; for synthetic rules it is folded into the norm table instead.
#[derive(Debug, Clone)]
pub struct CoefficientRule {
    family: Family,
    scale: f64,
}

/// Replace an underflowed-to-zero bound by the smallest positive float; the
/// quantity being bounded was itself below that, so this stays a valid bound.
fn floor_positive(v: f64) -> f64 {
    if v == 0.0 {
        f64::from_bits(1)
    } else {
        v
    }
}

fn require_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(CircleError::InvalidParameter {
            name,
            reason: format!("must be a positive finite number, got {v}"),
        });
    }
    Ok(())
}

impl CoefficientRule {
    /// Trigonometric polynomial from explicit (frequency, coefficient) pairs.
    /// Zero coefficients are dropped; duplicate frequencies are rejected.
    pub fn explicit(entries: &[(i64, Complex64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(k, c) in entries {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(CircleError::InvalidParameter {
                    name: "coefficients",
                    reason: format!("coefficient at k = {k} is not finite"),
                });
            }
            if map.insert(k, c).is_some() {
                return Err(CircleError::InvalidParameter {
                    name: "coefficients",
                    reason: format!("duplicate frequency k = {k}"),
                });
            }
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self { family: Family::Explicit { entries: map }, scale: 1.0 })
    }

    pub fn geometric(amplitude: f64, ratio: f64) -> Result<Self> {
        require_positive("amplitude", amplitude)?;
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(CircleError::InvalidParameter {
                name: "ratio",
                reason: format!("must lie strictly between 0 and 1, got {ratio}"),
            });
        }
        Ok(Self { family: Family::Geometric { amplitude, ratio }, scale: 1.0 })
    }

    pub fn exp_power(amplitude: f64, beta: f64, alpha: f64) -> Result<Self> {
        require_positive("amplitude", amplitude)?;
        require_positive("beta", beta)?;
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CircleError::InvalidParameter {
                name: "alpha",
                reason: format!("must lie in (0, 1], got {alpha}"),
            });
        }
        Ok(Self { family: Family::ExpPower { amplitude, beta, alpha }, scale: 1.0 })
    }

    pub fn log_squared_exp(amplitude: f64, beta: f64) -> Result<Self> {
        require_positive("amplitude", amplitude)?;
        require_positive("beta", beta)?;
        Ok(Self { family: Family::LogSquaredExp { amplitude, beta }, scale: 1.0 })
    }

    /// Rule defined only by its derivative-norm table.
    pub fn synthetic(norms: NormSequence) -> Self {
        Self { family: Family::Synthetic { norms }, scale: 1.0 }
    }

    /// Replace the scalar multiplier (must be positive).
    pub fn with_scale(mut self, scale: f64) -> Result<Self> {
        require_positive("scale", scale)?;
        match &mut self.family {
            // Synthetic rules keep scale = 1 and fold the factor into the table
            // so that enormous norms never force the factor itself to under- or
            // overflow.
            Family::Synthetic { norms } => {
                let rel = norms.certified_rel_err;
                let src = norms.source.clone();
                *norms = norms.scaled_by_log(scale.ln(), &src, rel);
                Ok(self)
            }
            _ => {
                self.scale *= scale;
                Ok(self)
            }
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// True when the rule has pointwise coefficient values.
    pub fn is_pointwise(&self) -> bool {
        !matches!(self.family, Family::Synthetic { .. })
    }

    /// For synthetic rules, the number of stored norm entries (indices
    /// 0..count-1 are available); None for pointwise families, whose norms
    /// are computed on demand to any index.
    pub fn stored_norm_count(&self) -> Option<usize> {
        match &self.family {
            Family::Synthetic { norms } => Some(norms.len()),
            _ => None,
        }
    }

    /// Largest frequency in the support for finite-support rules.
    pub fn finite_degree(&self) -> Option<i64> {
        match &self.family {
            Family::Explicit { entries } => {
                Some(entries.keys().map(|k| k.abs()).max().unwrap_or(0))
            }
            _ => None,
        }
    }

    /// The coefficient c_k. Computed in direct arithmetic (exact to roundoff);
    /// magnitudes below f64 range come out as ordinary underflow.
    pub fn coefficient(&self, k: i64) -> Result<Complex64> {
        let a = k.unsigned_abs() as f64;
        let re = |v: f64| Ok(Complex64::new(v, 0.0));
        match &self.family {
            Family::Explicit { entries } => {
                Ok(self.scale * entries.get(&k).copied().unwrap_or_default())
            }
            Family::Geometric { amplitude, ratio } => {
                re(amplitude * self.scale * ratio.powf(a))
            }
            Family::ExpPower { amplitude, beta, alpha } => {
                re(amplitude * self.scale * (-beta * a.powf(*alpha)).exp())
            }
            Family::LogSquaredExp { amplitude, beta } => {
                let u = (1.0 + a).ln();
                re(amplitude * self.scale * (-beta * u * u).exp())
            }
            Family::Synthetic { .. } => Err(CircleError::NotPointwise),
        }
    }

    /// log |c_k| (NEG_INFINITY outside explicit support).
    fn log_abs_coeff(&self, k: i64) -> Result<f64> {
        let a = k.unsigned_abs() as f64;
        let ls = self.scale.ln();
        match &self.family {
            Family::Explicit { entries } => Ok(entries
                .get(&k)
                .map(|c| c.norm().ln() + ls)
                .unwrap_or(f64::NEG_INFINITY)),
            Family::Geometric { amplitude, ratio } => {
                Ok(amplitude.ln() + ls + a * ratio.ln())
            }
            Family::ExpPower { amplitude, beta, alpha } => {
                Ok(amplitude.ln() + ls - beta * a.powf(*alpha))
            }
            Family::LogSquaredExp { amplitude, beta } => {
                let u = (1.0 + a).ln();
                Ok(amplitude.ln() + ls - beta * u * u)
            }
            Family::Synthetic { .. } => Err(CircleError::NotPointwise),
        }
    }

    /// Certified upper bound, as a logarithm, for the one-sided coefficient
    /// tail sum_{k > cutoff} |c_k|. Returns +inf(meaning "no certificate at
    /// this cutoff") when the closed form's validity condition fails; the
    /// bound is nonincreasing in `cutoff` once valid.
    fn log_tail_one_sided(&self, cutoff: i64) -> Result<f64> {
        let base = match &self.family {
            Family::Explicit { entries } => {
                // exact finite sum
                let mut acc = LogSum::new();
                for (k, c) in entries {
                    if *k > cutoff {
                        acc.add_log(c.norm().ln());
                    }
                }
                return Ok(acc.log_value() + self.scale.ln());
            }
            Family::Geometric { amplitude, ratio } => {
                // sum_{k >= K+1} rho^k = rho^{K+1} / (1 - rho), exact
                amplitude.ln() + (cutoff + 1) as f64 * ratio.ln() - (1.0 - ratio).ln()
            }
            Family::ExpPower { amplitude, beta, alpha } if *alpha == 1.0 => {
                let rho = (-beta).exp();
                amplitude.ln() + (cutoff + 1) as f64 * (-beta) - (1.0 - rho).ln()
            }
            Family::ExpPower { amplitude, beta, alpha } => {
                // integral comparison after t = x^alpha, then the tangent bound
                // t^{s-1} <= T^{s-1} e^{(s-1)(t/T - 1)} with s = 1/alpha:
                //   tail <= s T^{s-1} e^{-beta T} / (beta - (s-1)/T),  T = K^alpha
                // valid once T > (s-1)/beta.
                if cutoff < 1 {
                    return Ok(f64::INFINITY);
                }
                let s = 1.0 / alpha;
                let t = (cutoff as f64).powf(*alpha);
                let den = beta - (s - 1.0) / t;
                if den <= 0.0 {
                    return Ok(f64::INFINITY);
                }
                amplitude.ln() + s.ln() + (s - 1.0) * t.ln() - beta * t - den.ln()
            }
            Family::LogSquaredExp { amplitude, beta } => {
                // u = log(1+x) substitution plus the convexity bound
                // u^2 >= U^2 + 2U(u-U):
                //   tail <= (1+K) e^{-beta U^2} / (2 beta U - 1),  U = log(1+K)
                // valid once 2 beta U > 1.
                if cutoff < 1 {
                    return Ok(f64::INFINITY);
                }
                let u = (1.0 + cutoff as f64).ln();
                let den = 2.0 * beta * u - 1.0;
                if den <= 0.0 {
                    return Ok(f64::INFINITY);
                }
                amplitude.ln() + u - beta * u * u - den.ln()
            }
            Family::Synthetic { .. } => return Err(CircleError::NotPointwise),
        };
        Ok(base + self.scale.ln())
    }

    /// Certified upper bound on the one-sided tail: sum of |c_k| over
    /// k > cutoff (or over k < -cutoff when `negative`). The parametric
    /// families are symmetric, so both sides share a bound; explicit rules
    /// sum their remaining support exactly.
    pub fn one_sided_tail_bound(&self, cutoff: i64, negative: bool) -> Result<f64> {
        match &self.family {
            Family::Explicit { entries } => {
                let mut acc = LogSum::new();
                for (&k, c) in entries {
                    let beyond = if negative { k < -cutoff } else { k > cutoff };
                    if beyond {
                        acc.add_log(c.norm().ln());
                    }
                }
                Ok((acc.log_value() + self.scale.ln()).exp())
            }
            Family::Synthetic { .. } => Err(CircleError::NotPointwise),
            Family::Geometric { amplitude, ratio } => Ok(floor_positive(
                amplitude * self.scale * ratio.powf((cutoff + 1) as f64) / (1.0 - ratio),
            )),
            Family::ExpPower { amplitude, beta, alpha } if *alpha == 1.0 => {
                let rho = (-beta).exp();
                Ok(floor_positive(
                    amplitude * self.scale * (-beta * (cutoff + 1) as f64).exp() / (1.0 - rho),
                ))
            }
            _ => Ok(floor_positive(self.log_tail_one_sided(cutoff)?.exp())),
        }
    }

    /// Certified upper bound on the full two-sided tail sum_{|k| > cutoff} |c_k|.
    ///
    /// The geometric closed forms are evaluated in direct arithmetic so exact
    /// threshold cases (a tolerance chosen to equal the bound) certify
    /// correctly; the integral-comparison forms go through log space and are
    /// floored at the smallest positive float so the bound never rounds to
    /// zero below a still-positive tail.
    pub fn tail_bound(&self, cutoff: i64) -> Result<f64> {
        match &self.family {
            Family::Explicit { entries } => {
                let mut acc = LogSum::new();
                for (k, c) in entries {
                    if k.abs() > cutoff {
                        acc.add_log(c.norm().ln());
                    }
                }
                Ok((acc.log_value() + self.scale.ln()).exp())
            }
            Family::Geometric { amplitude, ratio } => Ok(floor_positive(
                2.0 * amplitude * self.scale * ratio.powf((cutoff + 1) as f64) / (1.0 - ratio),
            )),
            Family::ExpPower { amplitude, beta, alpha } if *alpha == 1.0 => {
                let rho = (-beta).exp();
                Ok(floor_positive(
                    2.0 * amplitude * self.scale * (-beta * (cutoff + 1) as f64).exp()
                        / (1.0 - rho),
                ))
            }
            _ => Ok(floor_positive(
                (self.log_tail_one_sided(cutoff)? + 2.0f64.ln()).exp(),
            )),
        }
    }

    /// Minimal cutoff K whose certified tail bound is at most `eps`, together
    /// with that bound. Explicit rules report their exact support radius (the
    /// representation is already finite and exact).
    pub fn truncation_index(&self, eps: f64) -> Result<Truncation> {
        require_positive("eps", eps)?;
        if let Family::Explicit { .. } = self.family {
            let deg = self.finite_degree().unwrap_or(0);
            return Ok(Truncation { index: deg, tail_bound: 0.0 });
        }
        // Exponential search for a valid K, then binary search for minimality.
        // The bound is +inf below its validity threshold and decreasing after,
        // so "certified <= eps" is a monotone predicate.
        let ok = |k: i64| -> Result<bool> { Ok(self.tail_bound(k)? <= eps) };
        let mut hi: i64 = 1;
        while !ok(hi)? {
            hi *= 2;
            if hi > 1_000_000_000 {
                return Err(CircleError::InvalidParameter {
                    name: "eps",
                    reason: format!("no certified cutoff below 1e9 reaches tail {eps:.3e}"),
                });
            }
        }
        let mut lo: i64 = 0; // K = 0 allowed when even c_{+-1} on are tiny
        if ok(lo)? {
            return Ok(Truncation { index: 0, tail_bound: self.tail_bound(0)? });
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ok(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(Truncation { index: hi, tail_bound: self.tail_bound(hi)? })
    }

    /// Evaluate f(z) = sum c_k z^k for z on the unit circle, with absolute
    /// error at most `eps` plus machine-level roundoff.
    pub fn evaluate(&self, z: Complex64, eps: f64) -> Result<Complex64> {
        let dev = (z.norm() - 1.0).abs();
        if dev > CIRCLE_TOL {
            return Err(CircleError::OffCircle { dev });
        }
        let theta = z.arg();
        let mut acc = ComplexSum::new();
        match &self.family {
            Family::Explicit { entries } => {
                for (&k, &c) in entries {
                    let ph = Complex64::from_polar(1.0, k as f64 * theta);
                    acc.add(self.scale * c * ph);
                }
                Ok(acc.value())
            }
            Family::Synthetic { .. } => Err(CircleError::NotPointwise),
            _ => {
                let trunc = self.truncation_index(eps)?;
                acc.add(self.coefficient(0)?);
                for k in 1..=trunc.index {
                    let ck = self.coefficient(k)?;
                    let km = self.coefficient(-k)?;
                    let ph = Complex64::from_polar(1.0, k as f64 * theta);
                    acc.add(ck * ph);
                    acc.add(km * ph.conj());
                }
                Ok(acc.value())
            }
        }
    }

    /// Certified upper bound on the uniform norm via sum |c_k|; pairs with a
    /// lower bound max(|c_0|, partial-sum evaluation at z=1 for nonnegative
    /// rules). Used by the rescaling step of the Bernstein certificate.
    pub fn abs_coeff_sum_upper(&self, eps: f64) -> Result<f64> {
        match &self.family {
            Family::Explicit { entries } => {
                let mut acc = LogSum::new();
                for c in entries.values() {
                    acc.add_log(c.norm().ln());
                }
                Ok((acc.log_value() + self.scale.ln()).exp())
            }
            Family::Synthetic { .. } => Err(CircleError::NotPointwise),
            _ => {
                let trunc = self.truncation_index(eps)?;
                let mut acc = LogSum::new();
                acc.add_log(self.log_abs_coeff(0)?);
                for k in 1..=trunc.index {
                    acc.add_log(self.log_abs_coeff(k)? + 2.0f64.ln());
                }
                Ok(acc.log_value().exp() + trunc.tail_bound)
            }
        }
    }

    /// sup_{|m| > n} |c_m|. For the monotone parametric families this is
    /// |c_{n+1}|; for explicit rules the maximum over the remaining support.
    pub fn sup_coeff_beyond(&self, n: i64) -> Result<f64> {
        match &self.family {
            Family::Explicit { entries } => Ok(entries
                .iter()
                .filter(|(k, _)| k.abs() > n)
                .map(|(_, c)| c.norm() * self.scale)
                .fold(0.0, f64::max)),
            Family::Synthetic { .. } => Err(CircleError::NotPointwise),
            _ => Ok(self.log_abs_coeff(n + 1)?.exp()),
        }
    }

    /// log M_j with certified relative error at most `rel_eps`.
    ///
    /// The sum S_j = sum_k k^{2j} |c_k|^2 is accumulated in log space (the
    /// terms overflow f64 for moderate j) and stopped only once a certified
    /// bound for the weighted tail drops below rel_eps * S_j. If the governing
    /// validity conditions cannot be met within the summation cap the error is
    /// reported rather than the sum truncated.
    pub fn derivative_norm_log(&self, j: usize, rel_eps: f64) -> Result<f64> {
        require_positive("rel_eps", rel_eps)?;
        match &self.family {
            Family::Synthetic { norms } => norms.log_value(j),
            Family::Explicit { entries } => {
                let mut acc = LogSum::new();
                for (&k, c) in entries {
                    if k == 0 {
                        if j == 0 {
                            acc.add_log(2.0 * c.norm().ln());
                        }
                        continue;
                    }
                    acc.add_log(2.0 * j as f64 * (k.abs() as f64).ln() + 2.0 * c.norm().ln());
                }
                Ok(0.5 * acc.log_value() + self.scale.ln())
            }
            _ => {
                let lw = 2.0f64.ln(); // both signs of k
                let mut acc = LogSum::new();
                if j == 0 {
                    acc.add_log(2.0 * self.log_abs_coeff(0)?);
                }
                let start = self.weighted_tail_valid_from(j);
                let mut k: i64 = 1;
                loop {
                    let t = 2.0 * j as f64 * (k as f64).ln() + 2.0 * self.log_abs_coeff(k)? + lw;
                    acc.add_log(t);
                    if k >= start && (k - start) % 32 == 0 {
                        let wt = self.log_weighted_tail(j, k)? + lw;
                        if wt <= acc.log_value() + rel_eps.ln() {
                            return Ok(0.5 * acc.log_value());
                        }
                    }
                    k += 1;
                    if k as usize > SUM_CAP {
                        return Err(CircleError::TailCertification { j, cap: SUM_CAP });
                    }
                }
            }
        }
    }

    /// M_j as a plain value (may overflow to infinity for large j; callers that
    /// need large indices should use [`Self::derivative_norm_log`]).
    pub fn derivative_norm(&self, j: usize, rel_eps: f64) -> Result<f64> {
        Ok(self.derivative_norm_log(j, rel_eps)?.exp())
    }

    /// First cutoff at which the weighted-tail certificate can be valid.
    fn weighted_tail_valid_from(&self, j: usize) -> i64 {
        let j = j as f64;
        match &self.family {
            Family::Geometric { ratio, .. } => {
                // need q = ratio^2 e^{2j/(K+1)} < 1
                (2.0 * j / (2.0 * (1.0 / ratio).ln()) + 2.0).ceil() as i64
            }
            Family::ExpPower { beta, alpha, .. } if *alpha == 1.0 => {
                (2.0 * j / (2.0 * beta) + 2.0).ceil() as i64
            }
            Family::ExpPower { beta, alpha, .. } => {
                let s = (2.0 * j + 1.0) / alpha;
                (((s - 1.0) / (2.0 * beta)).max(1.0).powf(1.0 / alpha) + 2.0).ceil() as i64
            }
            Family::LogSquaredExp { beta, .. } => {
                // need 4 beta U > 2j+1 and the summand decreasing
                (((2.0 * j + 2.0) / (4.0 * beta)).exp() + 2.0).ceil() as i64
            }
            _ => 1,
        }
    }

    /// Certified log upper bound for the one-sided weighted tail
    /// sum_{k > cutoff} k^{2j} |c_k|^2 (+inf when not yet valid).
    fn log_weighted_tail(&self, j: usize, cutoff: i64) -> Result<f64> {
        let jf = j as f64;
        let kf = cutoff as f64;
        match &self.family {
            Family::Geometric { amplitude, ratio } => {
                // ratio bound: a_{k+1}/a_k <= q := ratio^2 e^{2j/(K+1)}
                let lx = 2.0 * ratio.ln();
                let q = (lx + 2.0 * jf / (kf + 1.0)).exp();
                if q >= 1.0 {
                    return Ok(f64::INFINITY);
                }
                let lead =
                    2.0 * (amplitude * self.scale).ln() + 2.0 * jf * (kf + 1.0).ln() + (kf + 1.0) * lx;
                Ok(lead - (1.0 - q).ln())
            }
            Family::ExpPower { amplitude, beta, alpha } if *alpha == 1.0 => {
                let lx = -2.0 * beta;
                let q = (lx + 2.0 * jf / (kf + 1.0)).exp();
                if q >= 1.0 {
                    return Ok(f64::INFINITY);
                }
                let lead =
                    2.0 * (amplitude * self.scale).ln() + 2.0 * jf * (kf + 1.0).ln() + (kf + 1.0) * lx;
                Ok(lead - (1.0 - q).ln())
            }
            Family::ExpPower { amplitude, beta, alpha } => {
                // integral comparison (summand decreasing for K^alpha > j/(alpha beta))
                // then the tangent bound with s = (2j+1)/alpha, T = K^alpha:
                //   tail <= (1/alpha) T^{s-1} e^{-2 beta T} / (2 beta - (s-1)/T)
                let s = (2.0 * jf + 1.0) / alpha;
                let t = kf.powf(*alpha);
                if t <= (s - 1.0) / (2.0 * beta) || t <= jf / (beta * alpha) {
                    return Ok(f64::INFINITY);
                }
                let den = 2.0 * beta - (s - 1.0) / t;
                Ok(2.0 * (amplitude * self.scale).ln() - alpha.ln() + (s - 1.0) * t.ln()
                    - 2.0 * beta * t
                    - den.ln())
            }
            Family::LogSquaredExp { amplitude, beta } => {
                // x^{2j} <= (1+x)^{2j}; u = log(1+x); convexity bound on u^2:
                //   tail <= e^{(2j+1)U - 2 beta U^2} / (4 beta U - (2j+1)),  U = log(1+K)
                // valid when 4 beta U > 2j+1 and the summand is decreasing:
                //   2j (1+K) <= 4 beta U K.
                let u = (1.0 + kf).ln();
                let den = 4.0 * beta * u - (2.0 * jf + 1.0);
                if den <= 0.0 || 2.0 * jf * (1.0 + kf) > 4.0 * beta * u * kf {
                    return Ok(f64::INFINITY);
                }
                Ok(2.0 * (amplitude * self.scale).ln() + (2.0 * jf + 1.0) * u - 2.0 * beta * u * u
                    - den.ln())
            }
            _ => Ok(f64::NEG_INFINITY),
        }
    }

    /// Build the derivative-norm table M_0..M_{j_max}.
    pub fn norm_sequence(&self, j_max: usize, rel_eps: f64) -> Result<NormSequence> {
        if let Family::Synthetic { norms } = &self.family {
            if norms.len() <= j_max {
                return Err(CircleError::NormIndex { j: j_max, len: norms.len() });
            }
            return NormSequence::from_log_values(
                norms.log_values[..=j_max].to_vec(),
                norms.certified_rel_err,
                &norms.source,
            );
        }
        let mut logs = Vec::with_capacity(j_max + 1);
        for j in 0..=j_max {
            logs.push(self.derivative_norm_log(j, rel_eps)?);
        }
        let mut seq = NormSequence::from_log_values(logs, rel_eps, &self.describe())?;
        // A trigonometric polynomial's norm ratios converge to its degree;
        // record that cap so the growth scales can flag degeneracy exactly.
        if let Some(d) = self.finite_degree() {
            seq.log_ratio_limit = Some((d.max(1) as f64).ln());
        }
        Ok(seq)
    }

    /// Rescale so that M_3 < 1/2 (target value 0.4); identity when already
    /// below 1/2. Returns the adjusted rule and the multiplier applied.
    pub fn normalize(&self, rel_eps: f64) -> Result<(Self, f64)> {
        let log_m3 = self.derivative_norm_log(3, rel_eps)?;
        if log_m3 < 0.5f64.ln() {
            return Ok((self.clone(), 1.0));
        }
        let log_factor = NORMALIZE_TARGET_M3.ln() - log_m3;
        match &self.family {
            Family::Synthetic { norms } => {
                let rel = norms.certified_rel_err;
                let scaled = norms.scaled_by_log(
                    log_factor,
                    &format!("{} (normalized)", norms.source),
                    rel,
                );
                Ok((Self::synthetic(scaled), log_factor.exp()))
            }
            _ => {
                let factor = log_factor.exp();
                Ok((self.clone().with_scale(factor)?, factor))
            }
        }
    }

    /// Human-readable description used in reports and manifests.
    pub fn describe(&self) -> String {
        let s = self.scale;
        let core = match &self.family {
            Family::Explicit { entries } => {
                format!("explicit-list({} frequencies)", entries.len())
            }
            Family::Geometric { amplitude, ratio } => {
                format!("geometric(amplitude={amplitude}, rho={ratio})")
            }
            Family::ExpPower { amplitude, beta, alpha } => {
                format!("exp-power(amplitude={amplitude}, beta={beta}, alpha={alpha})")
            }
            Family::LogSquaredExp { amplitude, beta } => {
                format!("log-squared-exp(amplitude={amplitude}, beta={beta})")
            }
            Family::Synthetic { norms } => format!("synthetic-norms[{}]", norms.source),
        };
        if s == 1.0 {
            core
        } else {
            format!("{core} * scale {s:e}")
        }
    }
}

impl fmt::Display for CoefficientRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Result of a certified truncation search.
#[derive(Debug, Clone, Copy)]
pub struct Truncation {
    /// Cutoff K: coefficients with |k| <= K represent f to within the bound.
    pub index: i64,
    /// Certified bound on sum_{|k| > K} |c_k|.
    pub tail_bound: f64,
}

// ---------------------------------------------------------------------------
// norm sequences
// ---------------------------------------------------------------------------

/// A finite table of derivative norms M_0..M_J, stored as logarithms.
///
/// Valid tables are nondecreasing from j = 1 on (M_0 may exceed M_1 when the
/// mean coefficient dominates) and logarithmically convex: M_j^2 <=
/// M_{j-1} M_{j+1}, both up to the certified relative error of the entries.
#[derive(Debug, Clone)]
pub struct NormSequence {
    log_values: Vec<f64>,
    certified_rel_err: f64,
    source: String,
    /// For sequences with at most geometric growth (trigonometric
    /// polynomials), the limit of log(M_{j+1}/M_j); lets the growth scales
    /// detect degeneracy without guessing from finite differences.
    pub(crate) log_ratio_limit: Option<f64>,
}

impl NormSequence {
    pub fn from_log_values(log_values: Vec<f64>, certified_rel_err: f64, source: &str) -> Result<Self> {
        let seq = Self {
            log_values,
            certified_rel_err,
            source: source.to_string(),
            log_ratio_limit: None,
        };
        seq.validate()?;
        Ok(seq)
    }

    pub fn from_values(values: &[f64], certified_rel_err: f64, source: &str) -> Result<Self> {
        let mut logs = Vec::with_capacity(values.len());
        for (j, &v) in values.iter().enumerate() {
            if !(v >= 0.0) {
                return Err(CircleError::InvalidNorms(format!(
                    "entry {j} is negative or NaN: {v}"
                )));
            }
            logs.push(v.ln()); // 0 -> -inf is allowed (identically-zero tail)
        }
        Self::from_log_values(logs, certified_rel_err, source)
    }

    /// M_j = j^{a j} (with 0^0 = 1), j = 0..=j_max.
    pub fn power_family(a: f64, j_max: usize) -> Self {
        let log_values =
            (0..=j_max).map(|j| if j == 0 { 0.0 } else { a * j as f64 * (j as f64).ln() }).collect();
        Self {
            log_values,
            certified_rel_err: 0.0,
            source: format!("M_j = j^({a}j)"),
            log_ratio_limit: None,
        }
    }

    /// M_j = base^{j^2}, i.e. the Gevrey table with L_j = base^j.
    pub fn exp_base_family(base: f64, j_max: usize) -> Self {
        let lb = base.ln();
        Self {
            log_values: (0..=j_max).map(|j| (j * j) as f64 * lb).collect(),
            certified_rel_err: 0.0,
            source: format!("M_j = {base}^(j^2)"),
            log_ratio_limit: None,
        }
    }

    /// M_j = j!.
    pub fn factorial_family(j_max: usize) -> Self {
        let mut log_values = Vec::with_capacity(j_max + 1);
        let mut acc = 0.0;
        log_values.push(0.0);
        for j in 1..=j_max {
            acc += (j as f64).ln();
            log_values.push(acc);
        }
        Self {
            log_values,
            certified_rel_err: 1e-12,
            source: "M_j = j!".to_string(),
            log_ratio_limit: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.log_values.is_empty() {
            return Err(CircleError::InvalidNorms("empty table".into()));
        }
        if self.log_values.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(CircleError::InvalidNorms("non-finite entry".into()));
        }
        // log-space slack: relative tolerance 2*rel on each side of the
        // comparison, plus a fixed cushion for the log transform itself
        let slack = 4.0 * self.certified_rel_err + 1e-11;
        for j in 1..self.log_values.len().saturating_sub(1) {
            if self.log_values[j + 1] < self.log_values[j] - slack {
                return Err(CircleError::InvalidNorms(format!(
                    "not nondecreasing at j = {j}: log M_{} = {} > log M_{} = {}",
                    j,
                    self.log_values[j],
                    j + 1,
                    self.log_values[j + 1]
                )));
            }
            if 2.0 * self.log_values[j] > self.log_values[j - 1] + self.log_values[j + 1] + 2.0 * slack
            {
                return Err(CircleError::InvalidNorms(format!(
                    "not log-convex at j = {j}"
                )));
            }
        }
        if self.log_values.len() >= 2 {
            let last = self.log_values.len() - 1;
            if self.log_values[last] < self.log_values[last - 1] - slack && last >= 2 {
                return Err(CircleError::InvalidNorms(format!(
                    "not nondecreasing at j = {}",
                    last - 1
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.log_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_values.is_empty()
    }

    /// Largest stored index J.
    pub fn max_index(&self) -> usize {
        self.log_values.len() - 1
    }

    pub fn log_value(&self, j: usize) -> Result<f64> {
        self.log_values
            .get(j)
            .copied()
            .ok_or(CircleError::NormIndex { j, len: self.log_values.len() })
    }

    pub fn value(&self, j: usize) -> Result<f64> {
        Ok(self.log_value(j)?.exp())
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }

    pub fn certified_rel_err(&self) -> f64 {
        self.certified_rel_err
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Multiply every norm by exp(log_factor) (scaling f scales each M_j
    /// linearly). Performed in log space so enormous tables stay finite.
    pub fn scaled_by_log(&self, log_factor: f64, source: &str, rel: f64) -> Self {
        Self {
            log_values: self.log_values.iter().map(|v| v + log_factor).collect(),
            certified_rel_err: rel,
            source: source.to_string(),
            log_ratio_limit: self.log_ratio_limit,
        }
    }

    /// Entrywise maximum with another table (the norm table of a vector-valued
    /// map is the componentwise supremum). Truncates to the shorter table.
    pub fn sup_merge(&self, other: &Self) -> Result<Self> {
        let n = self.len().min(other.len());
        let logs = (0..n)
            .map(|j| self.log_values[j].max(other.log_values[j]))
            .collect();
        let mut seq = Self::from_log_values(
            logs,
            self.certified_rel_err.max(other.certified_rel_err),
            &format!("sup[{}; {}]", self.source, other.source),
        )?;
        seq.log_ratio_limit = match (self.log_ratio_limit, other.log_ratio_limit) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Ok(seq)
    }
}

// ---------------------------------------------------------------------------
// function documents
// ---------------------------------------------------------------------------

/// A named rule parsed from a function document.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    pub name: String,
    pub rule: CoefficientRule,
}

fn doc_err(msg: impl Into<String>) -> CircleError {
    CircleError::Document(msg.into())
}

fn take_f64(map: &mut toml::map::Map<String, toml::Value>, key: &str) -> Result<Option<f64>> {
    match map.remove(key) {
        None => Ok(None),
        Some(toml::Value::Float(v)) => Ok(Some(v)),
        Some(toml::Value::Integer(v)) => Ok(Some(v as f64)),
        Some(other) => Err(doc_err(format!("key `{key}` must be a number, got {other}"))),
    }
}

fn take_usize(map: &mut toml::map::Map<String, toml::Value>, key: &str) -> Result<Option<usize>> {
    match map.remove(key) {
        None => Ok(None),
        Some(toml::Value::Integer(v)) if v >= 0 => Ok(Some(v as usize)),
        Some(other) => Err(doc_err(format!(
            "key `{key}` must be a nonnegative integer, got {other}"
        ))),
    }
}

fn take_string(map: &mut toml::map::Map<String, toml::Value>, key: &str) -> Result<Option<String>> {
    match map.remove(key) {
        None => Ok(None),
        Some(toml::Value::String(s)) => Ok(Some(s)),
        Some(other) => Err(doc_err(format!("key `{key}` must be a string, got {other}"))),
    }
}

/// Parse a function document (TOML). Recognized keys: `name`, `family`,
/// per-family parameters (either flat or under a `[params]` table), and the
/// optional `scale`. Any other key is rejected by name.
pub fn parse_function_spec(text: &str) -> Result<FunctionSpec> {
    let value: toml::Value =
        text.parse().map_err(|e| doc_err(format!("not valid TOML: {e}")))?;
    let table = match value {
        toml::Value::Table(t) => t,
        _ => return Err(doc_err("document root must be a table")),
    };
    function_spec_from_table(table)
}

/// Same as [`parse_function_spec`] but starting from an already-parsed table
/// (the command-line run configuration shares this path after removing its own
/// keys).
pub fn function_spec_from_table(mut table: toml::map::Map<String, toml::Value>) -> Result<FunctionSpec> {
    let name = take_string(&mut table, "name")?.unwrap_or_else(|| "f".to_string());
    let family = take_string(&mut table, "family")?
        .ok_or_else(|| doc_err("missing required key `family`"))?;
    let scale = take_f64(&mut table, "scale")?;
    // Params may sit in a nested [params] table or flat beside `family`.
    let mut params = match table.remove("params") {
        None => toml::map::Map::new(),
        Some(toml::Value::Table(t)) => t,
        Some(other) => return Err(doc_err(format!("`params` must be a table, got {other}"))),
    };
    // remaining top-level keys are treated as flat params
    for (k, v) in std::mem::take(&mut table) {
        if params.insert(k.clone(), v).is_some() {
            return Err(doc_err(format!("key `{k}` given both flat and under [params]")));
        }
    }
    let rule = rule_from_params(&family, &mut params)?;
    if let Some(k) = params.keys().next() {
        return Err(doc_err(format!("unknown key `{k}` for family `{family}`")));
    }
    let rule = match scale {
        Some(s) => rule.with_scale(s)?,
        None => rule,
    };
    Ok(FunctionSpec { name, rule })
}

fn rule_from_params(
    family: &str,
    params: &mut toml::map::Map<String, toml::Value>,
) -> Result<CoefficientRule> {
    // Reject unknown keys up front so a typo is reported as such rather than
    // as a missing required key.
    let allowed: &[&str] = match family {
        "geometric" => &["amplitude", "rho"],
        "exp-power" => &["amplitude", "beta", "alpha"],
        "log-squared-exp" => &["amplitude", "beta"],
        "explicit-list" => &["coefficients"],
        "synthetic-norms" => &["j_max", "log_norms", "kind", "exponent", "base"],
        other => {
            return Err(doc_err(format!(
                "unknown family `{other}` (expected explicit-list, geometric, exp-power, log-squared-exp, or synthetic-norms)"
            )))
        }
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(doc_err(format!("unknown key `{k}` for family `{family}`")));
    }
    let req = |v: Option<f64>, key: &str| {
        v.ok_or_else(|| doc_err(format!("family `{family}` requires key `{key}`")))
    };
    match family {
        "geometric" => {
            let amplitude = take_f64(params, "amplitude")?.unwrap_or(1.0);
            let rho = req(take_f64(params, "rho")?, "rho")?;
            CoefficientRule::geometric(amplitude, rho)
        }
        "exp-power" => {
            let amplitude = take_f64(params, "amplitude")?.unwrap_or(1.0);
            let beta = req(take_f64(params, "beta")?, "beta")?;
            let alpha = req(take_f64(params, "alpha")?, "alpha")?;
            CoefficientRule::exp_power(amplitude, beta, alpha)
        }
        "log-squared-exp" => {
            let amplitude = take_f64(params, "amplitude")?.unwrap_or(1.0);
            let beta = req(take_f64(params, "beta")?, "beta")?;
            CoefficientRule::log_squared_exp(amplitude, beta)
        }
        "explicit-list" => {
            let raw = params
                .remove("coefficients")
                .ok_or_else(|| doc_err("family `explicit-list` requires key `coefficients`"))?;
            let arr = match raw {
                toml::Value::Array(a) => a,
                other => {
                    return Err(doc_err(format!("`coefficients` must be an array, got {other}")))
                }
            };
            let mut entries = Vec::with_capacity(arr.len());
            for (i, item) in arr.into_iter().enumerate() {
                let mut t = match item {
                    toml::Value::Table(t) => t,
                    other => {
                        return Err(doc_err(format!(
                            "coefficient entry {i} must be a table {{k, re, im}}, got {other}"
                        )))
                    }
                };
                let k = match t.remove("k") {
                    Some(toml::Value::Integer(v)) => v,
                    _ => return Err(doc_err(format!("coefficient entry {i}: missing integer `k`"))),
                };
                let re = take_f64(&mut t, "re")?.unwrap_or(0.0);
                let im = take_f64(&mut t, "im")?.unwrap_or(0.0);
                if let Some(extra) = t.keys().next() {
                    return Err(doc_err(format!(
                        "coefficient entry {i}: unknown key `{extra}`"
                    )));
                }
                entries.push((k, Complex64::new(re, im)));
            }
            CoefficientRule::explicit(&entries)
        }
        "synthetic-norms" => {
            let j_max = take_usize(params, "j_max")?.unwrap_or(400);
            if let Some(raw) = params.remove("log_norms") {
                let arr = match raw {
                    toml::Value::Array(a) => a,
                    other => {
                        return Err(doc_err(format!("`log_norms` must be an array, got {other}")))
                    }
                };
                let mut logs = Vec::with_capacity(arr.len());
                for (i, item) in arr.into_iter().enumerate() {
                    match item {
                        toml::Value::Float(v) => logs.push(v),
                        toml::Value::Integer(v) => logs.push(v as f64),
                        other => {
                            return Err(doc_err(format!(
                                "`log_norms` entry {i} must be a number, got {other}"
                            )))
                        }
                    }
                }
                let seq = NormSequence::from_log_values(logs, 0.0, "explicit log_norms")?;
                return Ok(CoefficientRule::synthetic(seq));
            }
            let kind = take_string(params, "kind")?
                .ok_or_else(|| doc_err("family `synthetic-norms` requires `kind` or `log_norms`"))?;
            let seq = match kind.as_str() {
                "power" => {
                    let a = req(take_f64(params, "exponent")?, "exponent")?;
                    if !(a > 0.0) {
                        return Err(doc_err("`exponent` must be positive"));
                    }
                    NormSequence::power_family(a, j_max)
                }
                "exp-base" => {
                    let b = req(take_f64(params, "base")?, "base")?;
                    if !(b > 1.0) {
                        return Err(doc_err("`base` must exceed 1"));
                    }
                    NormSequence::exp_base_family(b, j_max)
                }
                "factorial" => NormSequence::factorial_family(j_max),
                other => {
                    return Err(doc_err(format!(
                        "unknown synthetic kind `{other}` (expected power, exp-base, or factorial)"
                    )))
                }
            };
            Ok(CoefficientRule::synthetic(seq))
        }
        _ => unreachable!("family validated above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo(rho: f64) -> CoefficientRule {
        CoefficientRule::geometric(1.0, rho).unwrap()
    }

    #[test]
    fn geometric_coefficient_value() {
        // c_3 = 0.5^3
        let c = geo(0.5).coefficient(3).unwrap();
        assert_eq!(c.re, 0.125);
        assert_eq!(c.im, 0.0);
        assert_eq!(geo(0.5).coefficient(-3).unwrap().re, 0.125);
    }

    #[test]
    fn exp_power_coefficient_value() {
        let r = CoefficientRule::exp_power(1.0, 1.0, 0.5).unwrap();
        let c = r.coefficient(4).unwrap().re;
        assert!((c - (-2.0f64).exp()).abs() < 1e-15);
        assert!((c - 0.1353352832366127).abs() < 1e-15);
    }

    #[test]
    fn truncation_minimal_certified_cutoff() {
        // Oracle: two-sided geometric tail 2 rho^{K+1}/(1-rho) equals the raw
        // sum exactly; for rho = 1/2, eps = 2^-6 the minimal certified K is 7.
        let t = geo(0.5).truncation_index(2.0f64.powi(-6)).unwrap();
        assert_eq!(t.index, 7);
        assert!(t.tail_bound <= 2.0f64.powi(-6));
        // minimality: one less fails
        assert!(geo(0.5).tail_bound(6).unwrap() > 2.0f64.powi(-6));
        // certified bound dominates the raw tail
        let raw: f64 = 2.0 * (8..200).map(|k| 0.5f64.powi(k)).sum::<f64>();
        assert!(t.tail_bound >= raw - 1e-17);

        // exp-power alpha = 1: exact geometric tail in e^{-1}; minimal K = 19
        let r = CoefficientRule::exp_power(1.0, 1.0, 1.0).unwrap();
        let t = r.truncation_index(1e-8).unwrap();
        assert_eq!(t.index, 19);
        assert!(t.tail_bound <= 1e-8 && r.tail_bound(18).unwrap() > 1e-8);
    }

    #[test]
    fn truncation_explicit_is_support_radius() {
        let r = CoefficientRule::explicit(&[
            (-3, Complex64::new(1.0, 0.0)),
            (2, Complex64::new(0.5, 0.5)),
        ])
        .unwrap();
        for eps in [1e-1, 1e-6, 1e-12] {
            let t = r.truncation_index(eps).unwrap();
            assert_eq!(t.index, 3);
            assert_eq!(t.tail_bound, 0.0);
        }
    }

    #[test]
    fn tail_bounds_dominate_raw_sums() {
        // integral-comparison bounds are genuine upper bounds (raw-sum oracle)
        let cases: Vec<(CoefficientRule, i64)> = vec![
            (CoefficientRule::exp_power(1.0, 1.0, 2.0 / 3.0).unwrap(), 30),
            (CoefficientRule::exp_power(1.0, 0.5, 0.5).unwrap(), 100),
            (CoefficientRule::log_squared_exp(1.0, 1.0).unwrap(), 10),
            (CoefficientRule::log_squared_exp(1.0, 0.5).unwrap(), 50),
        ];
        for (rule, cutoff) in cases {
            let bound = rule.tail_bound(cutoff).unwrap();
            let mut raw = 0.0;
            for k in cutoff + 1..cutoff + 2_000_000 {
                let t = 2.0 * rule.coefficient(k).unwrap().re;
                raw += t;
                if t < 1e-22 {
                    break;
                }
            }
            assert!(bound >= raw, "bound {bound} < raw {raw} for {rule}");
            assert!(bound <= raw * 3.0, "bound uselessly loose for {rule}");
        }
    }

    #[test]
    fn evaluate_geometric_at_one() {
        // sum rho^{|k|} at z = 1 is (1+rho)/(1-rho) = 3 for rho = 1/2
        let v = geo(0.5).evaluate(Complex64::new(1.0, 0.0), 1e-10).unwrap();
        assert!((v.re - 3.0).abs() <= 1e-10 + 1e-13);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn evaluate_rejects_off_circle_points() {
        let err = geo(0.5).evaluate(Complex64::new(1.1, 0.0), 1e-10);
        assert!(matches!(err, Err(CircleError::OffCircle { .. })));
    }

    #[test]
    fn derivative_norm_geometric_m1() {
        // M_1^2 = 2 sum k^2 (1/4)^k = 40/27 (closed form oracle)
        let m1 = geo(0.5).derivative_norm(1, 1e-10).unwrap();
        assert!((m1 - (40.0f64 / 27.0).sqrt()).abs() < 1e-10);
        assert!((m1 - 1.2171612389003692).abs() < 1e-10);
    }

    #[test]
    fn derivative_norm_cosine_is_constant() {
        // f = cos t: c_{+-1} = 1/2, M_j = sqrt(2 * (1/4)) = 1/sqrt(2) for all j
        let r = CoefficientRule::explicit(&[
            (1, Complex64::new(0.5, 0.0)),
            (-1, Complex64::new(0.5, 0.0)),
        ])
        .unwrap();
        for j in [0usize, 1, 5, 20] {
            let m = r.derivative_norm(j, 1e-10).unwrap();
            assert!((m - 0.5f64.sqrt()).abs() < 1e-14, "j = {j}");
        }
    }

    #[test]
    fn derivative_norm_monomial_powers() {
        // f = z^m: M_j = m^j
        let r = CoefficientRule::explicit(&[(4, Complex64::new(1.0, 0.0))]).unwrap();
        for j in [0usize, 1, 3] {
            let m = r.derivative_norm(j, 1e-10).unwrap();
            assert!((m - 4.0f64.powi(j as i32)).abs() < 1e-10 * 4.0f64.powi(j as i32));
        }
    }

    #[test]
    fn weighted_tails_certified_against_raw_sums() {
        // the stopping certificate must be a true bound: compare the certified
        // weighted-tail bound at a cutoff with brute summation beyond it
        let rule = CoefficientRule::exp_power(1.0, 1.0, 2.0 / 3.0).unwrap();
        for (j, cutoff) in [(3usize, 60i64), (10, 200)] {
            let bound = rule.log_weighted_tail(j, cutoff).unwrap().exp();
            let mut raw = 0.0f64;
            for k in cutoff + 1..1_000_000 {
                let t =
                    (2.0 * j as f64 * (k as f64).ln() - 2.0 * (k as f64).powf(2.0 / 3.0)).exp();
                raw += t;
                if t < raw * 1e-18 {
                    break;
                }
            }
            assert!(bound >= raw, "j={j}: {bound} < {raw}");
            assert!(bound <= raw * 2.0, "j={j}: loose {bound} vs {raw}");
        }
    }

    #[test]
    fn log_squared_exp_norm_matches_brute_force() {
        let rule = CoefficientRule::log_squared_exp(1.0, 1.0).unwrap();
        for j in [0usize, 2, 4] {
            let m = rule.derivative_norm(j, 1e-8).unwrap();
            let mut s = if j == 0 { 1.0 } else { 0.0 };
            for k in 1..3_000_000i64 {
                let lk = (1.0 + k as f64).ln();
                let t = (2.0 * j as f64 * (k as f64).ln() - 2.0 * lk * lk).exp();
                s += 2.0 * t;
                if t < s * 1e-18 {
                    break;
                }
            }
            let brute = s.sqrt();
            assert!(
                (m - brute).abs() <= 1e-6 * brute,
                "j={j}: norm {m} vs brute {brute}"
            );
        }
    }

    #[test]
    fn scaling_scales_norms_linearly() {
        let r = geo(0.5);
        let r3 = r.clone().with_scale(3.0).unwrap();
        for j in [0usize, 1, 4] {
            let a = r.derivative_norm(j, 1e-10).unwrap();
            let b = r3.derivative_norm(j, 1e-10).unwrap();
            assert!((b - 3.0 * a).abs() < 1e-9 * b.max(1.0));
        }
    }

    #[test]
    fn normalize_hits_target() {
        // explicit rule f = 4z has M_3 = 4; factor 0.1 brings it to 0.4
        let r = CoefficientRule::explicit(&[(1, Complex64::new(4.0, 0.0))]).unwrap();
        let (n, factor) = r.normalize(1e-10).unwrap();
        assert!((factor - 0.1).abs() < 1e-12);
        let m3 = n.derivative_norm(3, 1e-10).unwrap();
        assert!((m3 - 0.4).abs() < 1e-12);
        // already-small rules are untouched
        let small = CoefficientRule::explicit(&[(1, Complex64::new(0.1, 0.0))]).unwrap();
        let (s2, f2) = small.normalize(1e-10).unwrap();
        assert_eq!(f2, 1.0);
        assert!((s2.derivative_norm(3, 1e-10).unwrap() - 0.1).abs() < 1e-14);
    }

    #[test]
    fn normalize_synthetic_in_log_space() {
        let seq = NormSequence::power_family(1.5, 50);
        let rule = CoefficientRule::synthetic(seq);
        let (n, _) = rule.normalize(1e-10).unwrap();
        let m3 = n.derivative_norm_log(3, 1e-10).unwrap().exp();
        assert!((m3 - NORMALIZE_TARGET_M3).abs() < 1e-12);
    }

    #[test]
    fn norm_sequence_validation() {
        // decreasing from j=1 on is rejected
        let bad = NormSequence::from_values(&[1.0, 2.0, 1.0], 0.0, "bad");
        assert!(bad.is_err());
        // M_0 > M_1 is allowed
        let ok = NormSequence::from_values(&[5.0, 1.0, 2.0, 4.0], 0.0, "front-heavy");
        assert!(ok.is_ok());
        // log-convexity violation is rejected: M_1^2 = 100 > M_0 M_2 = 12
        let bad2 = NormSequence::from_values(&[1.0, 10.0, 12.0], 0.0, "bump");
        assert!(bad2.is_err());
    }

    #[test]
    fn computed_sequences_are_log_convex() {
        // Cauchy-Schwarz makes every coefficient-derived table log-convex;
        // validate() must accept what norm_sequence() builds.
        for rule in [
            geo(0.5),
            CoefficientRule::exp_power(1.0, 1.0, 2.0 / 3.0).unwrap(),
            CoefficientRule::explicit(&[
                (0, Complex64::new(0.3, 0.0)),
                (2, Complex64::new(1.0, -0.5)),
                (-5, Complex64::new(0.2, 0.1)),
            ])
            .unwrap(),
        ] {
            let seq = rule.norm_sequence(40, 1e-10).unwrap();
            assert_eq!(seq.len(), 41);
        }
    }

    #[test]
    fn explicit_norms_record_degree_cap() {
        let r = CoefficientRule::explicit(&[(5, Complex64::new(1.0, 0.0)), (-2, Complex64::new(1.0, 0.0))])
            .unwrap();
        let seq = r.norm_sequence(10, 1e-10).unwrap();
        assert!((seq.log_ratio_limit.unwrap() - 5.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn synthetic_sequence_too_short_is_an_error() {
        let rule = CoefficientRule::synthetic(NormSequence::power_family(1.5, 10));
        assert!(matches!(
            rule.norm_sequence(20, 1e-10),
            Err(CircleError::NormIndex { .. })
        ));
    }

    #[test]
    fn parse_minimal_geometric_document() {
        let spec = parse_function_spec("family = \"geometric\"\nrho = 0.5\n").unwrap();
        assert_eq!(spec.name, "f");
        assert_eq!(spec.rule.coefficient(1).unwrap().re, 0.5);
    }

    #[test]
    fn parse_rejects_unknown_keys_by_name() {
        let err = parse_function_spec("family = \"geometric\"\nrho_ = 0.5\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("rho_"), "message should name the key: {msg}");
        let err2 =
            parse_function_spec("family = \"geometric\"\nrho = 0.5\nbogus = 1\n").unwrap_err();
        assert!(err2.to_string().contains("bogus"));
    }

    #[test]
    fn parse_full_document_with_params_table() {
        let text = r#"
name = "bump"
family = "exp-power"
scale = 2.0
[params]
amplitude = 1.5
beta = 1.0
alpha = 0.5
"#;
        let spec = parse_function_spec(text).unwrap();
        assert_eq!(spec.name, "bump");
        let c0 = spec.rule.coefficient(0).unwrap().re;
        assert!((c0 - 3.0).abs() < 1e-14); // amplitude * scale
    }

    #[test]
    fn parse_explicit_and_synthetic_documents() {
        let text = r#"
family = "explicit-list"
coefficients = [{ k = 1, re = 1.0 }, { k = -3, re = 0.0, im = 1.0 }]
"#;
        let spec = parse_function_spec(text).unwrap();
        assert_eq!(spec.rule.finite_degree(), Some(3));

        let syn = parse_function_spec(
            "family = \"synthetic-norms\"\nkind = \"power\"\nexponent = 1.5\nj_max = 32\n",
        )
        .unwrap();
        assert!(!syn.rule.is_pointwise());
        let lv = syn.rule.derivative_norm_log(4, 1e-10).unwrap();
        assert!((lv - 1.5 * 4.0 * 4.0f64.ln()).abs() < 1e-12);
    }
}
