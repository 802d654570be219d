//! One-dimensional parameter sweeps.

use rayon::prelude::*;
use rfvlc_core::mcsim::simulate;
use rfvlc_core::{AsymptoticRegime, RelayScheme};

use crate::config::Params;
use crate::error::CliError;

pub const MAX_GRID: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    PtDbm,
    MuRfDb,
    LM,
    SemiAngleDeg,
    Rho,
    K,
}

impl SweepVar {
    pub const ALL: [Self; 6] = [Self::PtDbm, Self::MuRfDb, Self::LM, Self::SemiAngleDeg, Self::Rho, Self::K];

    pub fn name(self) -> &'static str {
        match self {
            Self::PtDbm => "pt_dbm",
            Self::MuRfDb => "mu_rf_db",
            Self::LM => "l_m",
            Self::SemiAngleDeg => "semi_angle_deg",
            Self::Rho => "rho",
            Self::K => "k",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub exact: bool,
    pub floors: bool,
    pub mc: bool,
}

impl Outputs {
    /// Comma-separated subset of `exact`, `floors`, `mc`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let mut o = Outputs { exact: false, floors: false, mc: false };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "exact" => o.exact = true,
                "floors" => o.floors = true,
                "mc" => o.mc = true,
                other => return Err(CliError::Usage(format!("unknown output `{other}`; expected exact, floors or mc"))),
            }
        }
        if !(o.exact || o.floors || o.mc) {
            return Err(CliError::Usage("no outputs requested".into()));
        }
        Ok(o)
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub params: Params,
    pub var: SweepVar,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub coupled: bool,
    pub outputs: Outputs,
}

/// Header and rows of a result table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// The sweep variable is printed in shortest form, metrics with 12
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, v)| if j == 0 { format!("{v}") } else { format!("{v:.11e}") })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn scheme_tag(s: RelayScheme) -> &'static str {
    match s {
        RelayScheme::AfFixedGain => "af",
        RelayScheme::Df => "df",
    }
}

fn regime_tag(r: AsymptoticRegime) -> &'static str {
    match r {
        AsymptoticRegime::HighRfSnr => "rf",
        AsymptoticRegime::HighLedPower => "led",
        AsymptoticRegime::Both => "both",
    }
}

impl SweepSpec {
    /// `from + i step` up to `to` (inclusive within rounding).
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        let (from, to, step) = (self.from, self.to, self.step);
        let mut errs = Vec::new();
        if !(from.is_finite() && to.is_finite() && step.is_finite()) {
            errs.push("from, to and step must be finite".to_string());
        } else {
            if from >= to {
                errs.push(format!("from = {from} must be below to = {to}"));
            }
            if step <= 0.0 {
                errs.push(format!("step = {step} must be positive"));
            }
        }
        if !errs.is_empty() {
            return Err(CliError::Usage(errs.join("; ")));
        }
        let n = ((to - from) / step * (1.0 + 1e-12)).floor() + 1.0;
        if n > MAX_GRID as f64 {
            return Err(CliError::Usage(format!("grid of {n} points exceeds {MAX_GRID}")));
        }
        let pts: Vec<f64> = (0..n as usize).map(|i| round12(from + i as f64 * step)).collect();
        if self.var == SweepVar::K && pts.iter().any(|v| v.fract() != 0.0 || *v < 1.0) {
            return Err(CliError::Usage("k sweep needs positive integer points".into()));
        }
        Ok(pts)
    }

    /// Fixed parameters with the sweep variable set to `v`.
    pub fn at(&self, v: f64) -> Params {
        let mut p = self.params.clone();
        match self.var {
            SweepVar::PtDbm => {
                p.pt_dbm = Some(v);
                if self.coupled {
                    p.mu_rf_db = v;
                }
            }
            SweepVar::MuRfDb => {
                p.mu_rf_db = v;
                if self.coupled {
                    p.pt_dbm = Some(v);
                }
            }
            SweepVar::LM => p.height_m = v,
            SweepVar::SemiAngleDeg => p.phi_half_deg = v,
            SweepVar::Rho => p.rho = v,
            SweepVar::K => p.k = v as u32,
        }
        p
    }

    pub fn header(&self) -> Vec<String> {
        let schemes = self.params.schemes().unwrap_or_default();
        let mut h = vec![self.var.name().to_string()];
        for metric in ["outage", "ber"] {
            for &s in &schemes {
                let base = format!("{metric}_{}", scheme_tag(s));
                if self.outputs.exact {
                    h.push(base.clone());
                }
                if self.outputs.floors {
                    for r in AsymptoticRegime::ALL {
                        h.push(format!("{base}_floor_{}", regime_tag(r)));
                    }
                }
                if self.outputs.mc {
                    h.push(format!("mc_{base}_mean"));
                    h.push(format!("mc_{base}_stderr"));
                }
            }
        }
        h
    }

    fn row(&self, v: f64) -> Result<Vec<f64>, CliError> {
        let p = self.at(v);
        let link = p.link()?;
        let md = p.modulation().expect("checked");
        let gth = p.gamma_th();
        let schemes = p.schemes().expect("checked");
        let sim = if self.outputs.mc { Some(simulate(&link, md, gth, &p.sim())?) } else { None };
        let mut row = vec![v];
        for metric in ["outage", "ber"] {
            for &s in &schemes {
                if self.outputs.exact {
                    row.push(match metric {
                        "outage" => link.outage_exact(s, gth)?,
                        _ => link.ber_exact(s, md)?,
                    });
                }
                if self.outputs.floors {
                    for r in AsymptoticRegime::ALL {
                        row.push(match metric {
                            "outage" => link.outage_asymptote(s, r, gth)?,
                            _ => link.ber_asymptote(s, r, md)?,
                        });
                    }
                }
                if let Some(res) = &sim {
                    let e = if metric == "outage" { res.outage(s) } else { res.ber(s) };
                    row.push(e.mean);
                    row.push(e.std_err);
                }
            }
        }
        Ok(row)
    }

    pub fn run(&self) -> Result<Table, CliError> {
        self.params.check()?;
        let grid = self.grid()?;
        let rows = grid.par_iter().map(|&v| self.row(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Table { header: self.header(), rows })
    }
}

fn round12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let scale = 10f64.powi(12 - x.abs().log10().ceil() as i32);
    (x * scale).round() / scale
}
