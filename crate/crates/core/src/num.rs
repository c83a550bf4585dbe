//! Small numeric building blocks shared across the crate.
//!
//! Everything here is deterministic: summation orders are fixed, the
//! low-discrepancy sampler is a plain Halton sequence with a recorded starting
//! index, and the minimizers use fixed iteration policies. That determinism is
//! what makes reruns of the command-line pipeline byte-identical.

use num_complex::Complex64;

/// Compensated (Neumaier) summation. Keeps the rounding error of a long sum
/// near one ulp of the *term magnitudes* rather than growing with the number
/// of terms; used where cancellation would otherwise dominate (e.g. discrete
/// Fourier sums compared at 1e-14 tolerances).
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated complex summation (independent Neumaier accumulators per part).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Running log-sum-exp accumulator for sums of positive terms supplied as
/// logarithms. Lets norm computations handle sums whose terms overflow f64
/// (log-magnitudes in the thousands) without losing relative accuracy.
#[derive(Debug, Clone, Copy)]
pub struct LogSum {
    max_log: f64,
    scaled: f64, // sum of exp(log_t - max_log)
}

impl Default for LogSum {
    fn default() -> Self {
        Self { max_log: f64::NEG_INFINITY, scaled: 0.0 }
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a term exp(log_t).
    pub fn add_log(&mut self, log_t: f64) {
        if log_t == f64::NEG_INFINITY {
            return;
        }
        if log_t <= self.max_log {
            self.scaled += (log_t - self.max_log).exp();
        } else {
            self.scaled = self.scaled * (self.max_log - log_t).exp() + 1.0;
            self.max_log = log_t;
        }
    }

    /// log of the accumulated sum; -inf if no terms were added.
    pub fn log_value(&self) -> f64 {
        if self.max_log == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max_log + self.scaled.ln()
        }
    }
}

/// Golden-section minimization of a unimodal-on-the-bracket function.
/// Returns (argmin, min). Runs until the bracket is below `xtol` (absolute,
/// in the same units as the inputs) or a fixed iteration cap, whichever first.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_8; // 1/phi
    const INVPHI2: f64 = 0.381_966_011_250_105_2; // 1/phi^2
    if b < a {
        std::mem::swap(&mut a, &mut b);
    }
    let mut h = b - a;
    if h <= xtol {
        let m = 0.5 * (a + b);
        return (m, f(m));
    }
    let mut c = a + INVPHI2 * h;
    let mut d = a + INVPHI * h;
    let mut yc = f(c);
    let mut yd = f(d);
    for _ in 0..200 {
        if h <= xtol {
            break;
        }
        if yc < yd {
            b = d;
            d = c;
            yd = yc;
            h = b - a;
            c = a + INVPHI2 * h;
            yc = f(c);
        } else {
            a = c;
            c = d;
            yc = yd;
            h = b - a;
            d = a + INVPHI * h;
            yd = f(d);
        }
    }
    if yc < yd {
        (c, yc)
    } else {
        (d, yd)
    }
}

/// Adaptive Simpson quadrature of `f` on [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 40)
}

/// Halton low-discrepancy sequence in the given prime bases, starting from
/// index `seed + 1` (the seed is recorded in run manifests so reruns are
/// reproducible by construction). Each call to `next_point` yields one point
/// of the sequence with coordinates in (0, 1).
#[derive(Debug, Clone)]
pub struct Halton {
    bases: Vec<u64>,
    index: u64,
}

impl Halton {
    pub fn new(bases: &[u64], seed: u64) -> Self {
        Self { bases: bases.to_vec(), index: seed }
    }

    fn radical_inverse(mut i: u64, base: u64) -> f64 {
        let mut f = 1.0;
        let mut r = 0.0;
        let b = base as f64;
        while i > 0 {
            f /= b;
            r += f * (i % base) as f64;
            i /= base;
        }
        r
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        self.index += 1;
        self.bases.iter().map(|&b| Self::radical_inverse(self.index, b)).collect()
    }
}

/// Solve a dense complex linear system A x = b by partial-pivot LU
/// elimination, in place. Returns None if the matrix is numerically singular.
/// Sized for the small Hermitian normal-equation systems of the weighted
/// least-squares inner loop (a few dozen unknowns).
pub fn solve_complex(a: &mut [Vec<Complex64>], b: &mut [Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        // pivot search
        let mut piv = col;
        let mut best = a[col][col].norm_sqr();
        for row in col + 1..n {
            let v = a[row][col].norm_sqr();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return None;
        }
        if piv != col {
            a.swap(piv, col);
            b.swap(piv, col);
        }
        let inv = Complex64::new(1.0, 0.0) / a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
            let sub = factor * b[col];
            b[row] -= sub;
        }
    }
    // back substitution
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Least-squares slope of y against x (both already transformed by the
/// caller, e.g. to log-log coordinates). Returns None with fewer than two
/// distinct abscissae.
pub fn lsq_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_beats_naive_on_cancellation() {
        let mut s = NeumaierSum::new();
        s.add(1.0);
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn logsum_matches_direct_sum() {
        let terms = [1e-3f64, 2.5, 7.0, 1e4];
        let mut acc = LogSum::new();
        for t in terms {
            acc.add_log(t.ln());
        }
        let direct: f64 = terms.iter().sum();
        assert!((acc.log_value() - direct.ln()).abs() < 1e-14);
    }

    #[test]
    fn logsum_handles_huge_exponents() {
        let mut acc = LogSum::new();
        acc.add_log(5000.0);
        acc.add_log(5000.0 + (1.0f64).ln());
        // sum = e^5000 * (1 + 1) -> log = 5000 + ln 2
        assert!((acc.log_value() - (5000.0 + 2.0f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn golden_finds_quadratic_min() {
        // near the minimum the function differences fall below float
        // resolution, so the argmin is only reliable to about sqrt(machine
        // epsilon) even with a tiny bracket tolerance
        let (x, v) = golden_min(|x| (x - 1.7) * (x - 1.7) + 3.0, 0.0, 5.0, 1e-12);
        assert!((x - 1.7).abs() < 1e-6);
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_integrates_exp() {
        let v = adaptive_simpson(&|x: f64| x.exp(), 0.0, 1.0, 1e-12);
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn halton_is_in_unit_cube_and_deterministic() {
        let mut h1 = Halton::new(&[2, 3], 0);
        let mut h2 = Halton::new(&[2, 3], 0);
        for _ in 0..100 {
            let p1 = h1.next_point();
            let p2 = h2.next_point();
            assert_eq!(p1, p2);
            assert!(p1.iter().all(|&c| c > 0.0 && c < 1.0));
        }
        // first few base-2 radical inverses
        let mut h = Halton::new(&[2], 0);
        assert_eq!(h.next_point()[0], 0.5);
        assert_eq!(h.next_point()[0], 0.25);
        assert_eq!(h.next_point()[0], 0.75);
    }

    #[test]
    fn complex_solve_roundtrip() {
        let a = vec![
            vec![Complex64::new(2.0, 1.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(3.0, 2.0)],
        ];
        let xtrue = [Complex64::new(1.0, -2.0), Complex64::new(0.5, 0.25)];
        let b: Vec<Complex64> = (0..2)
            .map(|i| a[i][0] * xtrue[0] + a[i][1] * xtrue[1])
            .collect();
        let mut am = a.clone();
        let mut bm = b.clone();
        let x = solve_complex(&mut am, &mut bm).unwrap();
        for (xi, ti) in x.iter().zip(xtrue.iter()) {
            assert!((xi - ti).norm() < 1e-12);
        }
    }

    #[test]
    fn slope_of_line_is_exact() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [2.0, 4.0, 6.0, 8.0];
        assert!((lsq_slope(&x, &y).unwrap() - 2.0).abs() < 1e-14);
    }
}
