//! Reference numerics used only by tests: adaptive Gauss-Kronrod
//! quadrature, goodness-of-fit statistics, and special functions taken from
//! `statrs` so that they share no code with the library under test.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

pub use statrs::function::beta::beta_reg as ref_inc_beta;
pub use statrs::function::gamma::{gamma as ref_gamma, ln_gamma as ref_ln_gamma};

/// Upper incomplete gamma `Gamma(s, x)` from `statrs`.
pub fn ref_upper_gamma(s: f64, x: f64) -> f64 {
    statrs::function::gamma::gamma_ur(s, x) * ref_gamma(s)
}

/// Regularized lower incomplete gamma `P(s, x)` from `statrs`.
pub fn ref_gamma_p(s: f64, x: f64) -> f64 {
    statrs::function::gamma::gamma_lr(s, x)
}

pub fn ref_erfc(x: f64) -> f64 {
    statrs::function::erf::erfc(x)
}

/// Upper tail of the chi-squared distribution.
pub fn chi_square_sf(stat: f64, dof: f64) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    ChiSquared::new(dof).expect("positive degrees of freedom").sf(stat)
}

/// Two-sided normal tail probability `P(|Z| > z)`.
pub fn normal_two_sided(z: f64) -> f64 {
    ref_erfc(z.abs() / std::f64::consts::SQRT_2)
}

// 15-point Kronrod nodes and weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of subintervals.
    pub limit: usize,
}

impl Default for QuadOptions {
    /// Purely relative tolerance: an absolute floor would accept any answer
    /// for integrals that are themselves tiny.
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            limit: 4000,
        }
    }
}

impl QuadOptions {
    pub fn rel(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub abs_err: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadError {
    /// Tolerance not met within the interval limit; carries the best estimate.
    Limit(Quad),
    NonFinite { x: f64 },
}

impl std::fmt::Display for QuadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Limit(q) => write!(f, "quadrature limit reached: {} +- {}", q.value, q.abs_err),
            Self::NonFinite { x } => write!(f, "integrand not finite at {x}"),
        }
    }
}

impl std::error::Error for QuadError {}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment, QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { x })
        }
    };
    let fc = eval(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = eval(c - dx)? + eval(c + dx)?;
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Ok(Segment {
        a,
        b,
        value: k * h,
        err: ((k - g) * h).abs(),
    })
}

/// Globally adaptive integration of `f` over `[a, b]`, starting from the
/// partition given by `breaks` (which must lie inside `[a, b]`).
pub fn integrate_breaks<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], opts: QuadOptions) -> Result<Quad, QuadError> {
    let mut pts = vec![a];
    pts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut heap = BinaryHeap::new();
    for w in pts.windows(2) {
        heap.push(kronrod(&f, w[0], w[1])?);
    }
    loop {
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.err).sum();
        let q = Quad {
            value,
            abs_err: err,
            intervals: heap.len(),
        };
        if err <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(q);
        }
        if heap.len() >= opts.limit {
            return Err(QuadError::Limit(q));
        }
        let worst = heap.pop().expect("non-empty partition");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further in floating point
            return Err(QuadError::Limit(q));
        }
        heap.push(kronrod(&f, worst.a, mid)?);
        heap.push(kronrod(&f, mid, worst.b)?);
    }
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Quad, QuadError> {
    integrate_breaks(f, a, b, &[], opts)
}

/// `int_a^inf f(x) dx` through `x = a + t / (1 - t)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, opts: QuadOptions) -> Result<Quad, QuadError> {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let u = 1.0 - t;
        let y = f(a + t / u);
        if y == 0.0 {
            0.0
        } else {
            y / (u * u)
        }
    };
    integrate(g, 0.0, 1.0, opts)
}

/// `int_lo^hi f(x) dx` for `0 < lo < hi` after the change `x = e^u`; suited
/// to integrands spanning many decades.
pub fn integrate_log<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: QuadOptions) -> Result<Quad, QuadError> {
    integrate(|u: f64| {
        let x = u.exp();
        f(x) * x
    }, lo.ln(), hi.ln(), opts)
}

/// One-sample Kolmogorov-Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the KS statistic for `n` samples.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.627_6 / (n as f64).sqrt()
}

/// Asymptotic KS critical value at level `alpha`, from the leading term of
/// the Kolmogorov tail `2 exp(-2 n d^2)`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    (-(0.5 * alpha).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Pearson sample correlation.
pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    sxy / (sxx * syy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential() {
        let q = integrate(|x| x * x, 0.0, 3.0, QuadOptions::default()).unwrap();
        assert!((q.value - 9.0).abs() < 1e-13);
        let q = integrate_to_infinity(|x| (-x).exp(), 0.0, QuadOptions::default()).unwrap();
        assert!((q.value - 1.0).abs() < 1e-12);
        let q = integrate_log(|x| 1.0 / x, 1e-8, 1e8, QuadOptions::default()).unwrap();
        assert!((q.value / (16.0 * 10f64.ln()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity() {
        let q = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, QuadOptions::rel(1e-9)).unwrap();
        assert!((q.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn reference_functions() {
        assert!((ref_upper_gamma(1.0, 2.0) - (-2.0f64).exp()).abs() < 1e-14);
        assert!((normal_two_sided(1.96) - 0.05).abs() < 1e-3);
        assert!((chi_square_sf(2.0, 2.0) - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let mut xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        assert!(ks_statistic(&mut xs, |x| x) <= 0.5 / 1000.0 + 1e-12);
    }
}
