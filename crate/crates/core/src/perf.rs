//! End-to-end outage probability and average BER for the mixed RF-VLC
//! link, exact and asymptotic.
//!
//! AF relaying uses a fixed gain, giving the end-to-end SNR
//! `g_rf g_vlc / (g_vlc + C)` with `C = E[g_rf] + 1`. DF relaying fails
//! when either hop fails.

use crate::error::{Error, Result};
use crate::rf_link::{RfConfig, Term, TermExpansion};
use crate::specfun::{binomial, factorial, gamma, inc_beta_reg_pair, ln_gamma, upper_gamma_difference};
use crate::vlc_link::{VlcConfig, VlcDerived};

/// Below this value of `max Q C g_th / gamma_min` the exact AF outage is
/// replaced by its high-LED-power limit `F_rf(g_th)`.
pub const LED_POWER_CROSSOVER: f64 = 1e-12;

/// Binary modulation with conditional BER `Gamma(a, b g) / (2 Gamma(a))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulation {
    pub a: f64,
    pub b: f64,
}

impl Modulation {
    pub const BPSK: Self = Self { a: 0.5, b: 1.0 };
    pub const DBPSK: Self = Self { a: 1.0, b: 1.0 };

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "bpsk" => Some(Self::BPSK),
            "dbpsk" => Some(Self::DBPSK),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        if *self == Self::BPSK {
            "bpsk"
        } else if *self == Self::DBPSK {
            "dbpsk"
        } else {
            "custom"
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelayScheme {
    AfFixedGain,
    Df,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AsymptoticRegime {
    /// `mu_rf -> inf`.
    HighRfSnr,
    /// `P_t -> inf`.
    HighLedPower,
    /// Both at once.
    Both,
}

impl AsymptoticRegime {
    pub const ALL: [Self; 3] = [Self::HighRfSnr, Self::HighLedPower, Self::Both];
}

/// One value per asymptotic regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Floors {
    pub high_rf_snr: f64,
    pub high_led_power: f64,
    pub both: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerfPoint {
    pub scheme: RelayScheme,
    /// Outage threshold (linear).
    pub gamma_th: f64,
    pub outage_exact: f64,
    pub outage_floor: Floors,
    pub ber_exact: f64,
    pub ber_floor: Floors,
}

/// Both hops, with the constants shared by every metric.
#[derive(Debug, Clone)]
pub struct Link {
    pub rf: TermExpansion,
    pub vlc_cfg: VlcConfig,
    pub vlc: VlcDerived,
    /// Fixed AF gain constant `C`.
    pub c: f64,
}

/// How the AF kernels treat each RF term: the rate in the exponent and the
/// product `Q C` multiplying `1/g_vlc`. The high-RF-SNR floors take the
/// rate to zero with `Q C` held at its limit.
#[derive(Clone, Copy)]
enum Rates {
    Exact,
    HighRfSnr,
}

impl Link {
    pub fn new(rf: RfConfig, vlc_cfg: VlcConfig) -> Result<Self> {
        let rf = TermExpansion::new(rf)?;
        let vlc = vlc_cfg.derive()?;
        let c = rf.fixed_gain_c();
        Ok(Self { rf, vlc_cfg, vlc, c })
    }

    fn term_rates(&self, t: &Term, rates: Rates) -> (f64, f64) {
        match rates {
            Rates::Exact => (t.q, t.q * self.c),
            Rates::HighRfSnr => (0.0, self.rf.high_snr_d_p(t.p)),
        }
    }

    /// `F_rf(g) = 1 - E[...]` averaged over the user SNR for the AF link:
    ///
    /// ```text
    /// 1 - pref sum W Gamma(n) e^{-Q g} sum_{q<n} sum_{r<=q} C(q,r)/q! (Q g)^{q-r}
    ///       y^{-nu} [Gamma(nu+r, y/g_max) - Gamma(nu+r, y/g_min)],   y = Q C g
    /// ```
    fn af_outage(&self, gth: f64, rates: Rates) -> Result<f64> {
        let v = &self.vlc;
        let nu = v.nu();
        let pref = nu * v.scale() / (v.r_w * v.r_w);
        let mut total = 0.0;
        for t in self.rf.terms.iter().filter(|t| t.weight != 0.0) {
            let (q_rate, qc) = self.term_rates(t, rates);
            let y = qc * gth;
            let qg = q_rate * gth;
            let mut inner = 0.0;
            for q in 0..t.shape {
                let r_lo = if q_rate == 0.0 { q } else { 0 };
                for r in r_lo..=q {
                    let diff = upper_gamma_difference(nu + f64::from(r), y / v.gamma_max, y / v.gamma_min)?;
                    let coef = binomial(u64::from(q), u64::from(r)) / factorial(q) * qg.powi((q - r) as i32);
                    inner += coef * diff;
                }
            }
            total += t.mass() * (-qg).exp() * y.powf(-nu) * inner;
        }
        Ok((1.0 - pref * total).clamp(0.0, 1.0))
    }

    /// Average BER of the AF link, `1/2 - b^a/(2 Gamma(a)) pref sum ...`,
    /// with each user-SNR integral reduced to an incomplete beta difference.
    fn af_ber(&self, modulation: Modulation, rates: Rates) -> Result<f64> {
        let Modulation { a, b } = modulation;
        let v = &self.vlc;
        let nu = v.nu();
        let pref = nu * v.scale() / (v.r_w * v.r_w);
        let mut total = 0.0;
        for t in self.rf.terms.iter().filter(|t| t.weight != 0.0) {
            let (q_rate, qc) = self.term_rates(t, rates);
            let bq = b + q_rate;
            let z_lo = qc / (v.gamma_max * bq);
            let z_hi = qc / (v.gamma_min * bq);
            let mut inner = 0.0;
            for q in 0..t.shape {
                let r_lo = if q_rate == 0.0 { q } else { 0 };
                for r in r_lo..=q {
                    let s = nu + f64::from(r);
                    let lambda = a + f64::from(q) - s;
                    let d_i = beta_difference(s, lambda, z_lo, z_hi)?;
                    let ln_coef = (ln_gamma(lambda) + ln_gamma(s)) - ln_gamma(f64::from(q) + 1.0)
                        + (f64::from(r) - a - f64::from(q)) * bq.ln()
                        - nu * (qc / bq).ln();
                    let coef = binomial(u64::from(q), u64::from(r)) * q_rate.powi((q - r) as i32);
                    inner += coef * ln_coef.exp() * d_i;
                }
            }
            total += t.mass() * inner;
        }
        let ber = 0.5 - b.powf(a) / (2.0 * gamma(a)) * pref * total;
        Ok(ber.clamp(0.0, 0.5))
    }

    fn crossover_reached(&self, gth: f64) -> bool {
        let max_q = self.rf.terms.iter().map(|t| t.q).fold(0.0, f64::max);
        max_q * self.c * gth / self.vlc.gamma_min < LED_POWER_CROSSOVER
    }

    /// Exact end-to-end outage probability at threshold `gth` (linear).
    pub fn outage_exact(&self, scheme: RelayScheme, gth: f64) -> Result<f64> {
        check_threshold(gth)?;
        match scheme {
            RelayScheme::AfFixedGain => {
                if self.crossover_reached(gth) {
                    Ok(self.rf.cdf(gth))
                } else {
                    self.af_outage(gth, Rates::Exact)
                }
            }
            RelayScheme::Df => {
                let (f1, f2) = (self.rf.cdf(gth), self.vlc.cdf(gth));
                Ok((f1 + f2 - f1 * f2).clamp(0.0, 1.0))
            }
        }
    }

    pub fn outage_asymptote(&self, scheme: RelayScheme, regime: AsymptoticRegime, gth: f64) -> Result<f64> {
        check_threshold(gth)?;
        Ok(match (regime, scheme) {
            (AsymptoticRegime::HighLedPower, _) => self.rf.cdf(gth),
            (AsymptoticRegime::HighRfSnr, RelayScheme::AfFixedGain) => self.af_outage(gth, Rates::HighRfSnr)?,
            (AsymptoticRegime::HighRfSnr, RelayScheme::Df) => self.vlc.cdf(gth),
            (AsymptoticRegime::Both, _) => {
                // leading term of each lower incomplete gamma: (Q g)^n / n
                let s: f64 = self
                    .rf
                    .terms
                    .iter()
                    .map(|t| {
                        let n = f64::from(t.shape);
                        t.weight * (t.q * gth).powf(n) / n
                    })
                    .sum();
                s.clamp(0.0, 1.0)
            }
        })
    }

    pub fn ber_exact(&self, scheme: RelayScheme, modulation: Modulation) -> Result<f64> {
        match scheme {
            RelayScheme::AfFixedGain => self.af_ber(modulation, Rates::Exact),
            RelayScheme::Df => {
                let p1 = self.rf.ber(modulation)?;
                let p2 = self.vlc.ber(modulation)?;
                Ok(p1 * (1.0 - p2) + p2 * (1.0 - p1))
            }
        }
    }

    pub fn ber_asymptote(&self, scheme: RelayScheme, regime: AsymptoticRegime, modulation: Modulation) -> Result<f64> {
        match (regime, scheme) {
            (AsymptoticRegime::HighLedPower, _) => self.rf.ber(modulation),
            (AsymptoticRegime::HighRfSnr, RelayScheme::AfFixedGain) => self.af_ber(modulation, Rates::HighRfSnr),
            (AsymptoticRegime::HighRfSnr, RelayScheme::Df) => self.vlc.ber(modulation),
            (AsymptoticRegime::Both, _) => {
                let Modulation { a, b } = modulation;
                let s: f64 = self
                    .rf
                    .terms
                    .iter()
                    .map(|t| {
                        let n = f64::from(t.shape);
                        t.weight * (t.q / b).powf(n) * (ln_gamma(a + n) - n.ln()).exp()
                    })
                    .sum();
                Ok((s / (2.0 * gamma(a))).clamp(0.0, 0.5))
            }
        }
    }

    /// Every analytic metric for one scheme at one threshold.
    pub fn evaluate_point(&self, scheme: RelayScheme, modulation: Modulation, gth: f64) -> Result<PerfPoint> {
        let out = |r| self.outage_asymptote(scheme, r, gth);
        let ber = |r| self.ber_asymptote(scheme, r, modulation);
        Ok(PerfPoint {
            scheme,
            gamma_th: gth,
            outage_exact: self.outage_exact(scheme, gth)?,
            outage_floor: Floors {
                high_rf_snr: out(AsymptoticRegime::HighRfSnr)?,
                high_led_power: out(AsymptoticRegime::HighLedPower)?,
                both: out(AsymptoticRegime::Both)?,
            },
            ber_exact: self.ber_exact(scheme, modulation)?,
            ber_floor: Floors {
                high_rf_snr: ber(AsymptoticRegime::HighRfSnr)?,
                high_led_power: ber(AsymptoticRegime::HighLedPower)?,
                both: ber(AsymptoticRegime::Both)?,
            },
        })
    }
}

fn check_threshold(gth: f64) -> Result<()> {
    if gth > 0.0 && gth.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("outage", format!("threshold {gth} must be positive and finite")))
    }
}

/// `I_{y(z_hi)}(s, l) - I_{y(z_lo)}(s, l)` with `y(z) = z / (1 + z)`, taken
/// from whichever side of the pair is not close to 1.
fn beta_difference(s: f64, l: f64, z_lo: f64, z_hi: f64) -> Result<f64> {
    let (i_lo, c_lo) = inc_beta_reg_pair(s, l, z_lo / (1.0 + z_lo), 1.0 / (1.0 + z_lo))?;
    let (i_hi, c_hi) = inc_beta_reg_pair(s, l, z_hi / (1.0 + z_hi), 1.0 / (1.0 + z_hi))?;
    Ok(if i_hi < 0.5 { i_hi - i_lo } else { c_lo - c_hi })
}
