//! Flat TOML configuration.
//!
//! Every key is optional; omitted keys take the defaults below. Angles are
//! in degrees, the RF average SNR and the threshold in dB, and the total LED
//! lamp power `pt_dbm` in dBm. When `pt_dbm` is present it overrides
//! `led_power_w` as `P_t / n_leds`.
//!
//! ```toml
//! k = 3
//! rho = 0.9
//! phi_half_deg = 60
//! pt_dbm = 30
//! ```

use rfvlc_core::{Link, Modulation, RelayScheme, RfConfig, SimConfig, VlcConfig};
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub k: u32,
    pub m: u32,
    pub mu_rf_db: f64,
    pub rho: f64,
    /// `af`, `df` or `both`: which schemes get columns.
    pub scheme: String,
    pub modulation: String,
    pub gamma_th_db: f64,

    pub area_pd_m2: f64,
    pub responsivity: f64,
    pub filter_gain: f64,
    pub refractive_index: f64,
    pub fov_deg: f64,
    pub phi_half_deg: f64,
    pub height_m: f64,
    pub conv_eff: f64,
    pub noise_psd: f64,
    pub bandwidth_hz: f64,
    pub n_leds: u32,
    pub led_power_w: f64,
    pub pt_dbm: Option<f64>,

    pub samples: u64,
    pub seed: u64,
    pub streams: u32,
    pub batch_size: u32,
}

impl Default for Params {
    fn default() -> Self {
        let v = VlcConfig::default();
        let s = SimConfig::default();
        Self {
            k: 2,
            m: 2,
            mu_rf_db: 20.0,
            rho: 0.9,
            scheme: "both".into(),
            modulation: "bpsk".into(),
            gamma_th_db: 0.0,
            area_pd_m2: v.area_pd,
            responsivity: v.responsivity,
            filter_gain: v.filter_gain,
            refractive_index: v.refractive_index,
            fov_deg: v.fov.to_degrees(),
            phi_half_deg: v.semi_angle.to_degrees(),
            height_m: v.height,
            conv_eff: v.conv_eff,
            noise_psd: v.noise_psd,
            bandwidth_hz: v.bandwidth,
            n_leds: v.n_leds,
            led_power_w: v.led_power,
            pt_dbm: None,
            samples: s.n_samples,
            seed: s.seed,
            streams: s.n_streams,
            batch_size: s.batch_size,
        }
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm) * 1e-3
}

/// 1-based line and column of a byte offset.
fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

fn parse_error(source: &str, src: &str, e: toml::de::Error) -> CliError {
    let (line, column) = match e.span() {
        Some(span) => {
            let (l, c) = line_col(src, span.start);
            (Some(l), Some(c))
        }
        None => (None, None),
    };
    CliError::Parse {
        source: source.to_string(),
        message: e.message().to_string(),
        line,
        column,
    }
}

/// Parses one layer of config text. Unknown keys and wrongly typed values
/// are rejected here, with their position.
pub fn parse_layer(source: &str, src: &str) -> Result<Table, CliError> {
    toml::from_str::<Params>(src).map_err(|e| parse_error(source, src, e))?;
    src.parse::<Table>().map_err(|e| parse_error(source, src, e))
}

/// `key=value` with a TOML value; a bare word is taken as a string.
pub fn parse_assignment(s: &str) -> Result<Table, CliError> {
    let (key, val) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{s}`")))?;
    let (key, val) = (key.trim(), val.trim());
    let text = format!("{key} = {val}");
    match parse_layer("--set", &text) {
        Ok(t) => Ok(t),
        Err(first) => {
            let quoted = format!("{key} = \"{val}\"");
            parse_layer("--set", &quoted).map_err(|_| first)
        }
    }
}

/// Layers applied in order: later keys replace earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Layers(Table);

impl Layers {
    pub fn push(&mut self, t: Table) {
        for (k, v) in t {
            self.0.insert(k, v);
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.0.insert(key.to_string(), v.into());
    }

    pub fn build(&self) -> Result<Params, CliError> {
        let p: Params = Value::Table(self.0.clone())
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Usage(e.message().to_string()))?;
        p.check()?;
        Ok(p)
    }
}

impl Params {
    pub fn modulation(&self) -> Option<Modulation> {
        Modulation::from_name(&self.modulation)
    }

    pub fn schemes(&self) -> Option<Vec<RelayScheme>> {
        match self.scheme.to_ascii_lowercase().as_str() {
            "af" => Some(vec![RelayScheme::AfFixedGain]),
            "df" => Some(vec![RelayScheme::Df]),
            "both" => Some(vec![RelayScheme::AfFixedGain, RelayScheme::Df]),
            _ => None,
        }
    }

    pub fn gamma_th(&self) -> f64 {
        db_to_linear(self.gamma_th_db)
    }

    pub fn rf(&self) -> rfvlc_core::Result<RfConfig> {
        RfConfig::new(self.k, self.m, db_to_linear(self.mu_rf_db), self.rho)
    }

    pub fn vlc(&self) -> VlcConfig {
        let led_power = match self.pt_dbm {
            Some(dbm) => dbm_to_watts(dbm) / f64::from(self.n_leds.max(1)),
            None => self.led_power_w,
        };
        VlcConfig {
            area_pd: self.area_pd_m2,
            responsivity: self.responsivity,
            filter_gain: self.filter_gain,
            refractive_index: self.refractive_index,
            fov: self.fov_deg.to_radians(),
            semi_angle: self.phi_half_deg.to_radians(),
            height: self.height_m,
            conv_eff: self.conv_eff,
            noise_psd: self.noise_psd,
            bandwidth: self.bandwidth_hz,
            n_leds: self.n_leds,
            led_power,
        }
    }

    pub fn sim(&self) -> SimConfig {
        SimConfig {
            n_samples: self.samples,
            seed: self.seed,
            n_streams: self.streams,
            batch_size: self.batch_size,
        }
    }

    /// Every semantic violation across all sections.
    pub fn check(&self) -> Result<(), CliError> {
        let mut errs = Vec::new();
        let mut collect = |r: rfvlc_core::Result<()>| match r {
            Ok(()) => {}
            Err(rfvlc_core::Error::InvalidConfig(v)) => errs.extend(v),
            Err(e) => errs.push(e.to_string()),
        };
        collect(self.rf().map(|_| ()));
        collect(self.vlc().validate());
        collect(self.sim().validate());
        if self.modulation().is_none() {
            errs.push(format!("modulation = {:?}: expected bpsk or dbpsk", self.modulation));
        }
        if self.schemes().is_none() {
            errs.push(format!("scheme = {:?}: expected af, df or both", self.scheme));
        }
        if !self.gamma_th_db.is_finite() {
            errs.push(format!("gamma_th_db = {}: must be finite", self.gamma_th_db));
        }
        if matches!(self.pt_dbm, Some(p) if !p.is_finite()) {
            errs.push("pt_dbm: must be finite".to_string());
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(errs))
        }
    }

    pub fn link(&self) -> Result<Link, CliError> {
        self.check()?;
        Ok(Link::new(self.rf()?, self.vlc())?)
    }
}
