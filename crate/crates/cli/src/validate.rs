//! Analytic-vs-Monte-Carlo cross-check over a fixed configuration grid.

use rfvlc_core::mcsim::simulate;
use rfvlc_core::{Estimate, RelayScheme, SimConfig};

use crate::config::Params;
use crate::error::CliError;

/// Agreement band, in standard errors.
pub const Z_LIMIT: f64 = 3.0;

/// One grid point: `(k, m, rho, mu_rf_db, phi_half_deg, height_m, n_leds,
/// gamma_th_db, modulation)`.
type Point = (u32, u32, f64, f64, f64, f64, u32, f64, &'static str);

/// Spans the regimes of the figures: Rayleigh through m = 3, uncorrelated
/// through perfect CSI, narrow and wide beams, one to five LEDs, outage
/// from about 1e-6 to 0.4.
#[rustfmt::skip]
const DEFAULT_GRID: [Point; 12] = [
    (1, 1, 0.0, 10.0, 60.0, 2.0, 1, 0.0, "bpsk"),
    (2, 2, 0.9, 20.0, 60.0, 2.0, 2, 0.0, "bpsk"),
    (3, 2, 0.9, 20.0, 60.0, 2.0, 5, 0.0, "dbpsk"),
    (3, 2, 0.5, 15.0, 60.0, 2.0, 1, 5.0, "bpsk"),
    (3, 2, 0.9, 30.0, 60.0, 2.0, 1, 5.0, "dbpsk"),
    (2, 1, 0.5, 20.0, 60.0, 1.5, 1, 0.0, "bpsk"),
    (2, 3, 0.9, 20.0, 60.0, 3.0, 1, 0.0, "bpsk"),
    (3, 2, 0.8, 20.0, 45.0, 2.5, 1, 0.0, "bpsk"),
    (1, 2, 0.8, 20.0, 60.0, 2.5, 3, 0.0, "dbpsk"),
    (3, 1, 0.0, 20.0, 70.0, 2.0, 2, 0.0, "bpsk"),
    (3, 1, 1.0, 20.0, 30.0, 2.0, 1, 0.0, "bpsk"),
    (2, 2, 0.5, 25.0, 50.0, 2.0, 2, 3.0, "dbpsk"),
];

pub fn grid(name: &str) -> Result<Vec<Params>, CliError> {
    if !name.eq_ignore_ascii_case("default") {
        return Err(CliError::Usage(format!("unknown grid `{name}`; available: default")));
    }
    Ok(DEFAULT_GRID
        .iter()
        .map(|&(k, m, rho, mu_rf_db, phi_half_deg, height_m, n_leds, gamma_th_db, md)| Params {
            k,
            m,
            rho,
            mu_rf_db,
            phi_half_deg,
            height_m,
            n_leds,
            gamma_th_db,
            modulation: md.into(),
            ..Default::default()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub point: usize,
    pub metric: &'static str,
    pub scheme: &'static str,
    pub analytic: f64,
    pub mc: Estimate,
    pub z: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.z.abs() < Z_LIMIT
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub points: Vec<Params>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn max_abs_z(&self) -> f64 {
        self.checks.iter().map(|c| c.z.abs()).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "point,k,m,rho,mu_rf_db,phi_half_deg,height_m,n_leds,gamma_th_db,modulation,\
             metric,scheme,analytic,mc_mean,mc_stderr,binomial_stderr,z,pass\n",
        );
        for c in &self.checks {
            let p = &self.points[c.point];
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{:.11e},{:.11e},{:.6e},{:.6e},{:.4},{}\n",
                c.point,
                p.k,
                p.m,
                p.rho,
                p.mu_rf_db,
                p.phi_half_deg,
                p.height_m,
                p.n_leds,
                p.gamma_th_db,
                p.modulation,
                c.metric,
                c.scheme,
                c.analytic,
                c.mc.mean,
                c.mc.std_err,
                c.mc.binomial_std_err(),
                c.z,
                c.pass()
            ));
        }
        out
    }
}

/// Runs every point with the same simulation settings. Each point's
/// simulation is parallel over streams; points run in order.
pub fn run(points: Vec<Params>, sim: SimConfig) -> Result<Report, CliError> {
    let mut checks = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let link = p.link()?;
        let md = p.modulation().expect("checked");
        let gth = p.gamma_th();
        let res = simulate(&link, md, gth, &sim)?;
        for (scheme, tag) in [(RelayScheme::AfFixedGain, "af"), (RelayScheme::Df, "df")] {
            for (metric, analytic, mc) in [
                ("outage", link.outage_exact(scheme, gth)?, res.outage(scheme)),
                ("ber", link.ber_exact(scheme, md)?, res.ber(scheme)),
            ] {
                checks.push(Check { point: i, metric, scheme: tag, analytic, z: mc.z_score(analytic), mc });
            }
        }
    }
    Ok(Report { points, checks })
}
