//! Selected RF backhaul link: `K` base stations with i.i.d. Nakagami-m
//! fading, the one with the largest outdated channel estimate is chosen.
//!
//! The SNR of the selected link is a signed mixture of gamma variates. Each
//! [`Term`] carries a weight `W` and a rate `Q` such that
//!
//! ```text
//! f(g) = sum W Q^n g^{n-1} e^{-Q g},      n = m + i
//! F(g) = 1 - sum W Gamma(n, Q g)
//! ```
//!
//! with `sum W Gamma(n) = 1`.

use crate::error::{Error, Result};
use crate::perf::Modulation;
use crate::specfun::{
    gamma, inc_beta_reg_pair, ln_binomial, ln_factorial, ln_gamma, ln_multinomial, regularized_gamma_p,
    regularized_gamma_q,
};

/// Largest term expansion [`enumerate_terms`] will build.
pub const TERM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfConfig {
    /// Number of base stations.
    pub k: u32,
    /// Nakagami fading parameter.
    pub m: u32,
    /// Average SNR per RF link (linear).
    pub mu_rf: f64,
    /// Correlation between the outdated estimate and the actual channel.
    pub rho: f64,
}

impl RfConfig {
    /// Validates every field and reports all violations at once.
    pub fn new(k: u32, m: u32, mu_rf: f64, rho: f64) -> Result<Self> {
        let mut errs = Vec::new();
        if k < 1 {
            errs.push(format!("k = {k}: need at least one base station"));
        }
        if m < 1 {
            errs.push(format!("m = {m}: Nakagami parameter must be a positive integer"));
        }
        if !(mu_rf > 0.0 && mu_rf.is_finite()) {
            errs.push(format!("mu_rf = {mu_rf}: average SNR must be positive and finite"));
        }
        if !(0.0..=1.0).contains(&rho) {
            errs.push(format!("rho = {rho}: correlation must lie in [0, 1]"));
        }
        if errs.is_empty() {
            Ok(Self { k, m, mu_rf, rho })
        } else {
            Err(Error::InvalidConfig(errs))
        }
    }

    /// Transmit power over noise variance; equal to `mu_rf` with unit fading power.
    pub fn ps_over_sigma2(&self) -> f64 {
        self.mu_rf
    }
}

/// One summand of the expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub p: u32,
    /// Composition `(l_0, .., l_{m-1})` of `p`.
    pub tuple: Vec<u32>,
    /// `sum j l_j`.
    pub b: u32,
    pub i: u32,
    /// Signed coefficient `A`.
    pub a: f64,
    /// Gamma rate `Q`.
    pub q: f64,
    /// Mixture weight `W` (includes `K`, `A` and the `rho` factors).
    pub weight: f64,
    /// Gamma shape `n = m + i`.
    pub shape: u32,
}

impl Term {
    /// `W Gamma(n)`: the term's share of total probability.
    pub fn mass(&self) -> f64 {
        self.weight * gamma(f64::from(self.shape))
    }
}

/// Immutable term expansion for one [`RfConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct TermExpansion {
    pub cfg: RfConfig,
    pub terms: Vec<Term>,
}

/// All compositions of `p` into `m` non-negative parts, lexicographically
/// ascending.
fn compositions(p: u32, m: u32) -> Vec<Vec<u32>> {
    if m == 1 {
        return vec![vec![p]];
    }
    let mut out = Vec::new();
    for first in 0..=p {
        for mut rest in compositions(p - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `ln(x^k)` with `0^0 = 1`.
fn ln_pow(x: f64, k: u32) -> f64 {
    if k == 0 {
        0.0
    } else {
        f64::from(k) * x.ln()
    }
}

/// Builds the term expansion, ordered by `(p, tuple, i)`.
///
/// # Errors
/// [`Error::Capacity`] when the expansion would exceed [`TERM_CAP`] terms.
pub fn enumerate_terms(cfg: &RfConfig) -> Result<TermExpansion> {
    let RfConfig { k, m, mu_rf, rho } = *cfg;
    let capacity = || Error::Capacity { k, m, cap: TERM_CAP };
    // every composition contributes at least one term
    let n_comp: f64 = (0..k)
        .map(|p| crate::specfun::binomial(u64::from(p + m - 1), u64::from(m - 1)))
        .sum();
    if n_comp > TERM_CAP as f64 {
        return Err(capacity());
    }
    let mf = f64::from(m);
    let ln_k = f64::from(k).ln();
    let mut terms = Vec::new();
    for p in 0..k {
        let pf = f64::from(p);
        let sel = 1.0 + pf * (1.0 - rho);
        let q = mf * (1.0 + pf) / (sel * mu_rf);
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let ln_choose = ln_binomial(u64::from(k - 1), u64::from(p));
        for tuple in compositions(p, m) {
            let b: u32 = tuple.iter().zip(0u32..).map(|(&l, j)| j * l).sum();
            if terms.len() + b as usize + 1 > TERM_CAP {
                return Err(capacity());
            }
            let bf = f64::from(b);
            let ln_prod_j: f64 = tuple.iter().zip(0u32..).map(|(&l, j)| f64::from(l) * ln_factorial(j)).sum();
            let ln_common = ln_choose + ln_multinomial(p, &tuple)? + ln_gamma(mf + bf) + ln_gamma(bf + 1.0)
                - ln_gamma(mf)
                - ln_prod_j;
            for i in 0..=b {
                let fi = f64::from(i);
                let ln_a = ln_common - ln_factorial(i) - ln_gamma(mf + fi) - ln_factorial(b - i);
                let ln_w = ln_k + ln_a + ln_pow(rho, i) + ln_pow(1.0 - rho, b - i)
                    - bf * sel.ln()
                    - (mf + fi) * (1.0 + pf).ln();
                terms.push(Term {
                    p,
                    tuple: tuple.clone(),
                    b,
                    i,
                    a: sign * ln_a.exp(),
                    q,
                    weight: sign * ln_w.exp(),
                    shape: m + i,
                });
            }
        }
    }
    Ok(TermExpansion { cfg: *cfg, terms })
}

impl TermExpansion {
    pub fn new(cfg: RfConfig) -> Result<Self> {
        enumerate_terms(&cfg)
    }

    /// `sum W Gamma(n)`, which is 1 up to rounding.
    pub fn normalization_sum(&self) -> f64 {
        self.terms.iter().map(Term::mass).sum()
    }

    /// CDF of the selected-link SNR.
    pub fn cdf(&self, g: f64) -> f64 {
        debug_assert!(!(g < 0.0), "cdf needs g >= 0, got {g}");
        if g <= 0.0 {
            return 0.0;
        }
        if g == f64::INFINITY {
            return 1.0;
        }
        let upper: f64 = self
            .terms
            .iter()
            .map(|t| t.mass() * regularized_gamma_q(f64::from(t.shape), t.q * g).expect("valid gamma arguments"))
            .sum();
        let f = 1.0 - upper;
        if f > 0.25 {
            return f.min(1.0);
        }
        // small values: sum the lower functions directly rather than 1 - (~1)
        let lower: f64 = self
            .terms
            .iter()
            .map(|t| t.mass() * regularized_gamma_p(f64::from(t.shape), t.q * g).expect("valid gamma arguments"))
            .sum();
        lower.clamp(0.0, 1.0)
    }

    /// Density of the selected-link SNR for `g > 0`.
    pub fn pdf(&self, g: f64) -> f64 {
        if !(g > 0.0) {
            return 0.0;
        }
        let lg = g.ln();
        let f: f64 = self
            .terms
            .iter()
            .map(|t| {
                let n = f64::from(t.shape);
                t.weight * (n * t.q.ln() + (n - 1.0) * lg - t.q * g).exp()
            })
            .sum();
        f.max(0.0)
    }

    /// `E[gamma_rf]`.
    pub fn mean_snr(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * gamma(f64::from(t.shape) + 1.0) / t.q)
            .sum()
    }

    /// Fixed AF gain constant `C = E[gamma_rf] + 1`.
    pub fn fixed_gain_c(&self) -> f64 {
        1.0 + self.mean_snr()
    }

    /// `D = lim_{mu_rf -> inf} Q(0) C = m E[gamma_rf] / mu_rf`.
    ///
    /// The ratio `E[gamma_rf]/mu_rf` depends only on `(K, m, rho)`.
    pub fn high_snr_d(&self) -> f64 {
        f64::from(self.cfg.m) * self.mean_snr() / self.cfg.mu_rf
    }

    /// `lim_{mu_rf -> inf} Q(p) C` for the term group `p`; equals
    /// [`Self::high_snr_d`] scaled by `Q(p)/Q(0)`.
    pub fn high_snr_d_p(&self, p: u32) -> f64 {
        let pf = f64::from(p);
        self.high_snr_d() * (1.0 + pf) / (1.0 + pf * (1.0 - self.cfg.rho))
    }

    /// Average BER of the RF hop alone:
    /// `1/2 sum W Gamma(n) I_{Q/(b+Q)}(n, a)`.
    pub fn ber(&self, modulation: Modulation) -> Result<f64> {
        let Modulation { a, b } = modulation;
        let mut total = 0.0;
        for t in &self.terms {
            let x = t.q / (b + t.q);
            let (i, _) = inc_beta_reg_pair(f64::from(t.shape), a, x, b / (b + t.q))?;
            total += t.mass() * i;
        }
        Ok((0.5 * total).clamp(0.0, 0.5))
    }
}
