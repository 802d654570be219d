//! Figure presets.
//!
//! Each preset fixes the parameters of one family of curves and a default
//! sweep axis. The optical front end always uses the documented defaults.
//! The RF values, heights, semi-angles, LED counts and thresholds are not
//! given per figure, so the values here are assumptions chosen to show the
//! described behaviour. Override them with `--set` or `--K`.

use crate::sweep::{Outputs, SweepVar};

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub about: &'static str,
    /// Config layer in the same format as a config file.
    pub params: &'static str,
    pub var: SweepVar,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    /// `mu_rf_db` follows `pt_dbm`.
    pub coupled: bool,
    pub outputs: Outputs,
}

const EXACT_FLOORS: Outputs = Outputs { exact: true, floors: true, mc: false };

pub const PRESETS: [Preset; 7] = [
    Preset {
        name: "fig3",
        about: "outage vs total LED power",
        params: "k = 2\nm = 2\nrho = 0.9\nmu_rf_db = 20\ngamma_th_db = 0\nphi_half_deg = 60\nheight_m = 2",
        var: SweepVar::PtDbm,
        from: 0.0,
        to: 50.0,
        step: 1.0,
        coupled: false,
        outputs: EXACT_FLOORS,
    },
    Preset {
        name: "fig4",
        about: "outage vs RF average SNR",
        params: "k = 2\nm = 2\nrho = 0.9\ngamma_th_db = 0\nphi_half_deg = 60\nheight_m = 2\nn_leds = 5",
        var: SweepVar::MuRfDb,
        from: 0.0,
        to: 60.0,
        step: 1.0,
        coupled: false,
        outputs: EXACT_FLOORS,
    },
    Preset {
        name: "fig5",
        about: "BER vs LED height",
        params: "k = 2\nm = 2\nrho = 0.9\nmu_rf_db = 20\nmodulation = \"bpsk\"\nphi_half_deg = 60\nn_leds = 5",
        var: SweepVar::LM,
        from: 1.5,
        to: 4.0,
        step: 0.1,
        coupled: false,
        outputs: EXACT_FLOORS,
    },
    Preset {
        name: "fig6",
        about: "BER vs total LED power",
        params: "k = 2\nm = 2\nrho = 0.9\nmu_rf_db = 20\nmodulation = \"bpsk\"\nphi_half_deg = 60\nheight_m = 2",
        var: SweepVar::PtDbm,
        from: 0.0,
        to: 50.0,
        step: 1.0,
        coupled: false,
        outputs: EXACT_FLOORS,
    },
    Preset {
        name: "fig7",
        about: "BER vs LED semi-angle",
        params: "k = 2\nm = 2\nrho = 0.9\nmu_rf_db = 20\nmodulation = \"bpsk\"\nheight_m = 2\nn_leds = 5",
        var: SweepVar::SemiAngleDeg,
        from: 20.0,
        to: 80.0,
        step: 1.0,
        coupled: false,
        outputs: EXACT_FLOORS,
    },
    Preset {
        name: "fig8",
        about: "outage vs mu_rf [dB] = P_t [dBm], with approximations",
        params: "k = 2\nm = 2\nrho = 0.9\ngamma_th_db = 0\nphi_half_deg = 60\nheight_m = 2",
        var: SweepVar::PtDbm,
        from: 0.0,
        to: 60.0,
        step: 1.0,
        coupled: true,
        outputs: EXACT_FLOORS,
    },
    Preset {
        name: "fig9",
        about: "BER vs mu_rf [dB] = P_t [dBm], with approximations",
        params: "k = 2\nm = 2\nrho = 0.9\nmodulation = \"bpsk\"\nphi_half_deg = 60\nheight_m = 2",
        var: SweepVar::PtDbm,
        from: 0.0,
        to: 60.0,
        step: 1.0,
        coupled: true,
        outputs: EXACT_FLOORS,
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_layer, Layers};

    #[test]
    fn every_preset_parses_and_validates() {
        for p in &PRESETS {
            let mut l = Layers::default();
            l.push(parse_layer(p.name, p.params).unwrap());
            l.build().unwrap();
            assert!(p.from < p.to && p.step > 0.0);
        }
    }
}
