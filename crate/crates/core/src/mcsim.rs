//! Monte Carlo simulation of the full system.
//!
//! Each sample draws `K` outdated estimates, selects the largest, draws the
//! actual SNR of the selected link conditionally on its estimate, places the
//! user uniformly in the footprint, and combines the two hops. Outage and
//! BER for both relay schemes come from the same draws. AF BER averages the
//! conditional BER at the end-to-end SNR; DF BER averages the probability
//! that exactly one of the two decoding hops errs.
//!
//! Samples are split over `n_streams` independent ChaCha8 streams of the
//! master seed. Streams run in parallel and their partial sums are reduced
//! in a fixed pairwise order, so results do not depend on thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perf::{Link, Modulation, RelayScheme};
use crate::rf_link::RfConfig;
use crate::specfun::regularized_gamma_q;
use crate::vlc_link::VlcDerived;

/// Smallest sample count for which estimates are produced.
pub const MIN_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub n_streams: u32,
    /// Samples summed together before being added to a stream total.
    pub batch_size: u32,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n_samples: 1_000_000,
            seed: 42,
            n_streams: 64,
            batch_size: 4096,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples < MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                requested: self.n_samples,
                minimum: MIN_SAMPLES,
            });
        }
        let mut errs = Vec::new();
        if self.n_streams == 0 {
            errs.push("n_streams = 0: need at least one stream".to_string());
        }
        if self.batch_size == 0 {
            errs.push("batch_size = 0: must be positive".to_string());
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(errs))
        }
    }

    /// Samples assigned to `stream`; the remainder goes to the first streams.
    fn stream_len(&self, stream: u32) -> u64 {
        let n = u64::from(self.n_streams);
        self.n_samples / n + u64::from(u64::from(stream) < self.n_samples % n)
    }
}

/// Mean of i.i.d. samples with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub n: u64,
}

impl Estimate {
    /// `sqrt(mean (1 - mean) / n)`: exact standard error for an indicator
    /// mean, an upper bound for any `[0, 1]`-valued one.
    pub fn binomial_std_err(&self) -> f64 {
        (self.mean * (1.0 - self.mean) / self.n as f64).sqrt()
    }

    /// `(mean - reference) / se`, with `se` the larger of the two standard
    /// errors so that a zero-variance estimate is not over-penalised.
    pub fn z_score(&self, reference: f64) -> f64 {
        let se = self.std_err.max(self.binomial_std_err());
        if se == 0.0 {
            if self.mean == reference {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - reference) / se
        }
    }
}

/// RNG for stream `index` of `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gamma_draw<R: Rng + ?Sized>(shape: f64, scale: f64, rng: &mut R) -> f64 {
    Gamma::new(shape, scale).expect("positive gamma parameters").sample(rng)
}

/// Actual SNR given the outdated estimate `est` of the same link.
fn actual_given_estimate<R: Rng + ?Sized>(cfg: &RfConfig, est: f64, rng: &mut R) -> f64 {
    let m = f64::from(cfg.m);
    if cfg.rho >= 1.0 {
        return est;
    }
    let scale = (1.0 - cfg.rho) * cfg.mu_rf / m;
    let lambda = cfg.rho * m * est / ((1.0 - cfg.rho) * cfg.mu_rf);
    let n = if lambda > 0.0 {
        Poisson::new(lambda).expect("finite positive rate").sample(rng)
    } else {
        0.0
    };
    gamma_draw(m + n, scale, rng)
}

/// One `(estimate, actual)` pair from the bivariate gamma distribution with
/// Nakagami-m marginals and power correlation `rho`.
pub fn sample_correlated_pair<R: Rng + ?Sized>(cfg: &RfConfig, rng: &mut R) -> (f64, f64) {
    let m = f64::from(cfg.m);
    let est = gamma_draw(m, cfg.mu_rf / m, rng);
    (est, actual_given_estimate(cfg, est, rng))
}

/// Actual SNR of the base station with the largest outdated estimate.
pub fn sample_selected_snr<R: Rng + ?Sized>(cfg: &RfConfig, rng: &mut R) -> f64 {
    let m = f64::from(cfg.m);
    let marginal = Gamma::new(m, cfg.mu_rf / m).expect("positive gamma parameters");
    let mut best = f64::NEG_INFINITY;
    for _ in 0..cfg.k {
        best = best.max(marginal.sample(rng));
    }
    actual_given_estimate(cfg, best, rng)
}

/// User SNR at a uniformly random point of the footprint.
pub fn sample_vlc_snr<R: Rng + ?Sized>(vlc: &VlcDerived, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    vlc.snr_at_radius(vlc.r_w * u.sqrt())
}

/// End-to-end SNR: `g_rf g_vlc / (g_vlc + C)` for AF, `min` for DF.
pub fn combine(scheme: RelayScheme, gamma_rf: f64, gamma_vlc: f64, c: f64) -> f64 {
    match scheme {
        RelayScheme::AfFixedGain => {
            if gamma_vlc.is_infinite() {
                gamma_rf
            } else {
                gamma_rf * gamma_vlc / (gamma_vlc + c)
            }
        }
        RelayScheme::Df => gamma_rf.min(gamma_vlc),
    }
}

/// Conditional BER `Gamma(a, b g) / (2 Gamma(a))`.
pub fn conditional_ber(modulation: Modulation, g: f64) -> f64 {
    let x = modulation.b * g;
    if modulation == Modulation::BPSK {
        0.5 * libm::erfc(x.sqrt())
    } else if modulation == Modulation::DBPSK {
        0.5 * (-x).exp()
    } else {
        0.5 * regularized_gamma_q(modulation.a, x).expect("valid conditional BER arguments")
    }
}

/// Conditional end-to-end BER of a decoding relay: a bit arrives in error
/// when exactly one hop flips it.
pub fn decode_forward_ber(modulation: Modulation, gamma_rf: f64, gamma_vlc: f64) -> f64 {
    let p1 = conditional_ber(modulation, gamma_rf);
    let p2 = conditional_ber(modulation, gamma_vlc);
    p1 + p2 - 2.0 * p1 * p2
}

/// Estimates for both schemes from common random numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    pub outage_af: Estimate,
    pub outage_df: Estimate,
    pub ber_af: Estimate,
    pub ber_df: Estimate,
}

impl SimResult {
    pub fn outage(&self, scheme: RelayScheme) -> Estimate {
        match scheme {
            RelayScheme::AfFixedGain => self.outage_af,
            RelayScheme::Df => self.outage_df,
        }
    }

    pub fn ber(&self, scheme: RelayScheme) -> Estimate {
        match scheme {
            RelayScheme::AfFixedGain => self.ber_af,
            RelayScheme::Df => self.ber_df,
        }
    }
}

/// Running sums: outage AF/DF counts, BER AF/DF sums and sums of squares.
#[derive(Debug, Clone, Copy, Default)]
struct Sums {
    out: [f64; 2],
    ber: [f64; 2],
    ber_sq: [f64; 2],
}

impl Sums {
    fn add(&mut self, o: &Sums) {
        for j in 0..2 {
            self.out[j] += o.out[j];
            self.ber[j] += o.ber[j];
            self.ber_sq[j] += o.ber_sq[j];
        }
    }
}

fn pairwise_total(mut parts: Vec<Sums>) -> Sums {
    while parts.len() > 1 {
        parts = parts
            .chunks(2)
            .map(|c| {
                let mut s = c[0];
                if let Some(o) = c.get(1) {
                    s.add(o);
                }
                s
            })
            .collect();
    }
    parts.pop().unwrap_or_default()
}

fn run_stream(link: &Link, modulation: Modulation, gth: f64, sim: &SimConfig, stream: u32) -> Sums {
    let mut rng = stream_rng(sim.seed, u64::from(stream));
    let mut total = Sums::default();
    let mut left = sim.stream_len(stream);
    while left > 0 {
        let len = left.min(u64::from(sim.batch_size));
        let mut batch = Sums::default();
        for _ in 0..len {
            let g_rf = sample_selected_snr(&link.rf.cfg, &mut rng);
            let g_vlc = sample_vlc_snr(&link.vlc, &mut rng);
            let eq = [
                combine(RelayScheme::AfFixedGain, g_rf, g_vlc, link.c),
                combine(RelayScheme::Df, g_rf, g_vlc, link.c),
            ];
            let ber = [conditional_ber(modulation, eq[0]), decode_forward_ber(modulation, g_rf, g_vlc)];
            for j in 0..2 {
                if eq[j] < gth {
                    batch.out[j] += 1.0;
                }
                batch.ber[j] += ber[j];
                batch.ber_sq[j] += ber[j] * ber[j];
            }
        }
        total.add(&batch);
        left -= len;
    }
    total
}

/// Outage at `gth` and BER for both schemes.
pub fn simulate(link: &Link, modulation: Modulation, gth: f64, sim: &SimConfig) -> Result<SimResult> {
    sim.validate()?;
    let parts: Vec<Sums> = (0..sim.n_streams)
        .into_par_iter()
        .map(|s| run_stream(link, modulation, gth, sim, s))
        .collect();
    let t = pairwise_total(parts);
    let n = sim.n_samples;
    let nf = n as f64;
    let indicator = |count: f64| {
        let mean = count / nf;
        Estimate {
            mean,
            std_err: (mean * (1.0 - mean) / nf).sqrt(),
            n,
        }
    };
    let average = |sum: f64, sum_sq: f64| {
        let mean = sum / nf;
        let var = ((sum_sq / nf - mean * mean) * nf / (nf - 1.0)).max(0.0);
        Estimate {
            mean,
            std_err: (var / nf).sqrt(),
            n,
        }
    };
    Ok(SimResult {
        outage_af: indicator(t.out[0]),
        outage_df: indicator(t.out[1]),
        ber_af: average(t.ber[0], t.ber_sq[0]),
        ber_df: average(t.ber[1], t.ber_sq[1]),
    })
}

pub fn estimate_outage(scheme: RelayScheme, link: &Link, gth: f64, sim: &SimConfig) -> Result<Estimate> {
    Ok(simulate(link, Modulation::BPSK, gth, sim)?.outage(scheme))
}

pub fn estimate_ber(scheme: RelayScheme, modulation: Modulation, link: &Link, sim: &SimConfig) -> Result<Estimate> {
    Ok(simulate(link, modulation, 1.0, sim)?.ber(scheme))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vlc_link::VlcConfig;

    #[test]
    fn combine_examples() {
        assert_eq!(combine(RelayScheme::AfFixedGain, 8.0, 3.0, 3.0), 4.0);
        assert_eq!(combine(RelayScheme::Df, 3.0, 5.0, 2.0), 3.0);
        assert_eq!(combine(RelayScheme::AfFixedGain, 8.0, f64::INFINITY, 3.0), 8.0);
    }

    #[test]
    fn conditional_ber_at_zero() {
        assert_eq!(conditional_ber(Modulation::BPSK, 0.0), 0.5);
        assert_eq!(conditional_ber(Modulation::DBPSK, 0.0), 0.5);
        let custom = Modulation { a: 0.5 + 1e-15, b: 1.0 };
        let g = 0.7;
        assert!((conditional_ber(custom, g) - conditional_ber(Modulation::BPSK, g)).abs() < 1e-14);
    }

    #[test]
    fn decoding_relay_ber() {
        // a useless hop makes the other irrelevant; a perfect hop passes the other through
        assert!((decode_forward_ber(Modulation::DBPSK, 0.0, 3.0) - 0.5).abs() < 1e-15);
        let p = conditional_ber(Modulation::DBPSK, 2.0);
        assert_eq!(decode_forward_ber(Modulation::DBPSK, 2.0, f64::INFINITY), p);
        let (p1, p2) = (0.5 * (-1.0f64).exp(), 0.5 * (-2.0f64).exp());
        let got = decode_forward_ber(Modulation::DBPSK, 1.0, 2.0);
        assert!((got - (p1 * (1.0 - p2) + p2 * (1.0 - p1))).abs() < 1e-16);
    }

    #[test]
    fn stream_split_covers_everything() {
        let sim = SimConfig { n_samples: 100_003, n_streams: 7, ..Default::default() };
        let total: u64 = (0..7).map(|s| sim.stream_len(s)).sum();
        assert_eq!(total, 100_003);
    }

    #[test]
    fn refuses_small_runs() {
        let link = Link::new(RfConfig::new(1, 1, 10.0, 0.0).unwrap(), VlcConfig::default()).unwrap();
        let sim = SimConfig { n_samples: 9_999, ..Default::default() };
        assert!(matches!(simulate(&link, Modulation::BPSK, 1.0, &sim), Err(Error::TooFewSamples { .. })));
    }

    #[test]
    fn centre_of_footprint_is_gamma_max() {
        let d = VlcConfig::default().derive().unwrap();
        assert!((d.snr_at_radius(0.0) / d.gamma_max - 1.0).abs() < 1e-14);
        let mut rng = stream_rng(1, 0);
        for _ in 0..1000 {
            let g = sample_vlc_snr(&d, &mut rng);
            assert!(g >= d.gamma_min * (1.0 - 1e-12) && g <= d.gamma_max * (1.0 + 1e-12));
        }
    }

    #[test]
    fn full_correlation_returns_estimate() {
        let cfg = RfConfig::new(3, 2, 5.0, 1.0).unwrap();
        let mut rng = stream_rng(3, 1);
        for _ in 0..100 {
            let (e, a) = sample_correlated_pair(&cfg, &mut rng);
            assert_eq!(e, a);
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let link = Link::new(RfConfig::new(2, 2, 10.0, 0.6).unwrap(), VlcConfig::default()).unwrap();
        let sim = SimConfig { n_samples: 20_000, n_streams: 5, batch_size: 333, seed: 9 };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| simulate(&link, Modulation::BPSK, 2.0, &sim).unwrap());
        let b = four.install(|| simulate(&link, Modulation::BPSK, 2.0, &sim).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn df_outage_vanishes_below_support() {
        let link = Link::new(RfConfig::new(2, 2, 1e12, 0.5).unwrap(), VlcConfig::default()).unwrap();
        let gth = 0.5 * link.vlc.gamma_min;
        let sim = SimConfig { n_samples: 20_000, n_streams: 2, ..Default::default() };
        let r = simulate(&link, Modulation::BPSK, gth, &sim).unwrap();
        assert_eq!(r.outage_df.mean, 0.0);
    }
}
