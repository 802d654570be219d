//! Indoor line-of-sight VLC hop: one Lambertian LED lamp at height `L`
//! above a receiver placed uniformly at random in its circular footprint.
//!
//! With the photodetector parallel to the floor the DC gain at radius `r` is
//! `I(r) = X / (r^2 + L^2)^{(w+3)/2}` and the user SNR is `mu_vlc I(r)^2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::perf::Modulation;
use crate::specfun::{gamma, upper_gamma_difference, upper_incomplete_gamma};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VlcConfig {
    /// Photodetector area `A` (m^2).
    pub area_pd: f64,
    /// Responsivity `R` (A/W).
    pub responsivity: f64,
    /// Optical filter gain `T`.
    pub filter_gain: f64,
    /// Refractive index `zeta` of the concentrator lens.
    pub refractive_index: f64,
    /// Receiver field of view `Psi` (rad).
    pub fov: f64,
    /// LED semi-angle at half illuminance `Phi_1/2` (rad).
    pub semi_angle: f64,
    /// LED height above the receiving plane `L` (m).
    pub height: f64,
    /// Optical-to-electrical conversion efficiency `eta`.
    pub conv_eff: f64,
    /// Noise power spectral density `N0` (W/Hz).
    pub noise_psd: f64,
    /// Baseband bandwidth `W` (Hz).
    pub bandwidth: f64,
    /// LEDs in the lamp.
    pub n_leds: u32,
    /// Optical power per LED (W).
    pub led_power: f64,
}

impl Default for VlcConfig {
    fn default() -> Self {
        Self {
            area_pd: 1e-4,
            responsivity: 0.4,
            filter_gain: 1.0,
            refractive_index: 1.5,
            fov: PI / 2.0,
            semi_angle: PI / 3.0,
            height: 2.0,
            conv_eff: 0.8,
            noise_psd: 1e-21,
            bandwidth: 2e7,
            n_leds: 5,
            led_power: 0.452,
        }
    }
}

/// Constants derived from a [`VlcConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct VlcDerived {
    /// Lambertian order.
    pub w: f64,
    /// LED height `L` (m), copied from the configuration.
    pub height: f64,
    /// Footprint radius `L tan(Phi_1/2)` (m).
    pub r_w: f64,
    /// Concentrator gain `zeta^2 / sin^2(Psi)`.
    pub g: f64,
    /// Composite gain constant `X`.
    pub x_const: f64,
    /// Receiver noise variance `N0 W` (W).
    pub sigma_d2: f64,
    /// `P_t^2 eta^2 / sigma_d^2`.
    pub mu_vlc: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub i_min: f64,
    pub i_max: f64,
    /// Non-fatal configuration issues.
    pub warnings: Vec<String>,
}

impl VlcConfig {
    /// Total optical lamp power `P_t = N_l P_l` (W).
    pub fn total_power(&self) -> f64 {
        f64::from(self.n_leds) * self.led_power
    }

    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let positive = [
            ("area_pd", self.area_pd),
            ("responsivity", self.responsivity),
            ("filter_gain", self.filter_gain),
            ("refractive_index", self.refractive_index),
            ("height", self.height),
            ("conv_eff", self.conv_eff),
            ("noise_psd", self.noise_psd),
            ("bandwidth", self.bandwidth),
            ("led_power", self.led_power),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                errs.push(format!("{name} = {v}: must be positive and finite"));
            }
        }
        if self.n_leds == 0 {
            errs.push("n_leds = 0: need at least one LED".to_string());
        }
        if !(self.semi_angle > 0.0 && self.semi_angle < PI / 2.0) {
            errs.push(format!("semi_angle = {} rad: must lie in (0, pi/2)", self.semi_angle));
        }
        if !(self.fov > 0.0 && self.fov <= PI / 2.0) {
            errs.push(format!("fov = {} rad: must lie in (0, pi/2]", self.fov));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(errs))
        }
    }

    pub fn derive(&self) -> Result<VlcDerived> {
        self.validate()?;
        let l = self.height;
        let w = -std::f64::consts::LN_2 / self.semi_angle.cos().ln();
        let r_w = l * self.semi_angle.tan();
        let g = self.refractive_index.powi(2) / self.fov.sin().powi(2);
        let x_const =
            self.area_pd * (w + 1.0) * self.responsivity * self.filter_gain * g * l.powf(w + 1.0) / (2.0 * PI);
        let sigma_d2 = self.noise_psd * self.bandwidth;
        let mu_vlc = (self.total_power() * self.conv_eff).powi(2) / sigma_d2;
        let i_max = x_const / l.powf(w + 3.0);
        let i_min = x_const / (r_w * r_w + l * l).powf(0.5 * (w + 3.0));
        let mut warnings = Vec::new();
        // the largest incidence angle, at the footprint edge, is atan(r_w / L) = Phi_1/2
        if self.semi_angle > self.fov {
            warnings.push(format!(
                "field of view {:.4} rad is narrower than the edge incidence angle {:.4} rad; \
                 concentrator gain is applied over the whole footprint anyway",
                self.fov, self.semi_angle
            ));
        }
        Ok(VlcDerived {
            w,
            height: l,
            r_w,
            g,
            x_const,
            sigma_d2,
            mu_vlc,
            gamma_min: mu_vlc * i_min * i_min,
            gamma_max: mu_vlc * i_max * i_max,
            i_min,
            i_max,
            warnings,
        })
    }
}

impl VlcDerived {
    /// `1 / (w + 3)`: the exponent linking SNR and squared radius.
    pub fn nu(&self) -> f64 {
        1.0 / (self.w + 3.0)
    }

    /// `(mu_vlc X^2)^{1/(w+3)}`, equal to `gamma_max^{1/(w+3)} L^2`.
    pub fn scale(&self) -> f64 {
        (self.mu_vlc * self.x_const * self.x_const).powf(self.nu())
    }

    fn height_sq(&self) -> f64 {
        self.height * self.height
    }

    /// DC channel gain at radius `r` from the footprint centre.
    pub fn dc_gain(&self, r: f64) -> Result<f64> {
        if !(0.0..=self.r_w).contains(&r) {
            return Err(Error::domain("dc_gain", format!("radius {r} outside footprint [0, {}]", self.r_w)));
        }
        let l2 = self.height_sq();
        Ok(self.x_const / (r * r + l2).powf(0.5 * (self.w + 3.0)))
    }

    /// User SNR at radius `r` (no domain check).
    pub fn snr_at_radius(&self, r: f64) -> f64 {
        let l2 = self.height_sq();
        self.mu_vlc * self.x_const * self.x_const / (r * r + l2).powf(self.w + 3.0)
    }

    /// Density of the user SNR on `[gamma_min, gamma_max]`.
    pub fn pdf(&self, g: f64) -> Result<f64> {
        if !(self.gamma_min..=self.gamma_max).contains(&g) {
            return Err(Error::domain(
                "pdf_gamma_vlc",
                format!("SNR {g} outside support [{}, {}]", self.gamma_min, self.gamma_max),
            ));
        }
        let nu = self.nu();
        Ok(nu * self.scale() / (self.r_w * self.r_w) * g.powf(-1.0 - nu))
    }

    /// CDF of the user SNR; 0 below `gamma_min`, 1 above `gamma_max`.
    pub fn cdf(&self, g: f64) -> f64 {
        if g <= self.gamma_min {
            return 0.0;
        }
        if g >= self.gamma_max {
            return 1.0;
        }
        let r2 = self.r_w * self.r_w;
        // (r_w^2 + L^2 - (mu X^2 / g)^{1/(w+3)}) / r_w^2
        let f = (r2 + self.height_sq() - self.scale() * g.powf(-self.nu())) / r2;
        f.clamp(0.0, 1.0)
    }

    /// Average BER of the VLC hop alone,
    /// `b^a/(2 Gamma(a)) int e^{-b g} g^{a-1} F(g) dg` in closed form.
    pub fn ber(&self, modulation: Modulation) -> Result<f64> {
        let Modulation { a, b } = modulation;
        let nu = self.nu();
        let (x_lo, x_hi) = (b * self.gamma_min, b * self.gamma_max);
        let r2 = self.r_w * self.r_w;
        let l2 = self.height_sq();
        let above = upper_incomplete_gamma(a, x_hi)?;
        let inside_a = upper_gamma_difference(a, x_lo, x_hi)?;
        let inside_nu = upper_gamma_difference(a - nu, x_lo, x_hi)?;
        let p = above + (1.0 + l2 / r2) * inside_a - b.powf(nu) * self.scale() / r2 * inside_nu;
        Ok((p / (2.0 * gamma(a))).clamp(0.0, 0.5))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn deg(d: f64) -> f64 {
        d.to_radians()
    }

    #[test]
    fn lambertian_order() {
        let d = VlcConfig::default().derive().unwrap();
        assert!((d.w - 1.0).abs() < 1e-12);
        let d = VlcConfig { semi_angle: deg(30.0), ..Default::default() }.derive().unwrap();
        assert!((d.w - 4.818_841_679_306_418).abs() < 1e-9);
    }

    #[test]
    fn noise_variance() {
        let d = VlcConfig::default().derive().unwrap();
        assert!((d.sigma_d2 / 2e-14 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gain_at_centre_by_hand() {
        let d = VlcConfig::default().derive().unwrap();
        let expect = (1e-4 * 2.0 * 0.4 * 2.25) / (2.0 * PI * 4.0);
        assert!((d.dc_gain(0.0).unwrap() / expect - 1.0).abs() < 1e-13);
        assert!((d.dc_gain(d.r_w).unwrap() / d.i_min - 1.0).abs() < 1e-13);
        assert!(d.dc_gain(d.r_w * 1.01).is_err());
        assert!(d.dc_gain(-0.1).is_err());
    }

    #[test]
    fn support_ratio_and_edges() {
        let cfg = VlcConfig { semi_angle: deg(45.0), height: 2.5, ..Default::default() };
        let d = cfg.derive().unwrap();
        let l2 = cfg.height * cfg.height;
        let ratio = ((d.r_w * d.r_w + l2) / l2).powf(d.w + 3.0);
        assert!((d.gamma_max / d.gamma_min / ratio - 1.0).abs() < 1e-12);
        assert_eq!(d.cdf(d.gamma_min), 0.0);
        assert_eq!(d.cdf(d.gamma_max), 1.0);
        assert_eq!(d.cdf(0.5 * d.gamma_min), 0.0);
        assert!(d.pdf(0.5 * d.gamma_min).is_err());
        assert!(d.pdf(d.gamma_max).is_ok());
    }

    #[test]
    fn fov_warning() {
        let ok = VlcConfig { fov: deg(70.0), ..Default::default() }.derive().unwrap();
        assert!(ok.warnings.is_empty());
        let narrow = VlcConfig { fov: deg(50.0), ..Default::default() }.derive().unwrap();
        assert_eq!(narrow.warnings.len(), 1);
    }

    #[test]
    fn invalid_config_lists_everything() {
        let cfg = VlcConfig { height: 0.0, n_leds: 0, semi_angle: deg(90.0), ..Default::default() };
        match cfg.derive() {
            Err(Error::InvalidConfig(v)) => assert_eq!(v.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ber_limits() {
        let dim = VlcConfig { led_power: 1e-12, ..Default::default() }.derive().unwrap();
        assert!((dim.ber(Modulation::BPSK).unwrap() - 0.5).abs() < 1e-6);
        let bright = VlcConfig { led_power: 1e3, ..Default::default() }.derive().unwrap();
        assert!(bright.ber(Modulation::DBPSK).unwrap() < 1e-300);
    }

    proptest! {
        #[test]
        fn power_scaling_invariance(c in 0.1f64..10.0, u in 0.0f64..=1.0, phi in 20.0f64..75.0) {
            let base = VlcConfig { semi_angle: deg(phi), ..Default::default() };
            let scaled = VlcConfig { led_power: base.led_power * c, ..base };
            let (d0, d1) = (base.derive().unwrap(), scaled.derive().unwrap());
            prop_assert!((d1.gamma_min / (c * c * d0.gamma_min) - 1.0).abs() < 1e-12);
            prop_assert!((d1.gamma_max / (c * c * d0.gamma_max) - 1.0).abs() < 1e-12);
            let g = d0.gamma_min + u * (d0.gamma_max - d0.gamma_min);
            prop_assert!((d1.cdf(c * c * g) - d0.cdf(g)).abs() < 1e-12);
        }

        #[test]
        fn cdf_is_uniform_in_squared_radius(phi in 20.0f64..75.0, l in 1.0f64..4.0, u in 0.0f64..=1.0) {
            let d = VlcConfig { semi_angle: deg(phi), height: l, ..Default::default() }.derive().unwrap();
            // gamma decreases in r, so P(gamma <= gamma(r)) = P(R >= r) = 1 - r^2/r_w^2
            let r = d.r_w * u.sqrt();
            prop_assert!((d.cdf(d.snr_at_radius(r)) - (1.0 - u)).abs() < 1e-9);
        }

        #[test]
        fn ber_decreases_with_power(n in 1u32..20, phi in 20.0f64..75.0) {
            let lo = VlcConfig { n_leds: n, semi_angle: deg(phi), ..Default::default() }.derive().unwrap();
            let hi = VlcConfig { n_leds: n + 1, semi_angle: deg(phi), ..Default::default() }.derive().unwrap();
            let (b0, b1) = (lo.ber(Modulation::BPSK).unwrap(), hi.ber(Modulation::BPSK).unwrap());
            prop_assert!(b1 <= b0 && b0 < 0.5);
        }
    }
}
