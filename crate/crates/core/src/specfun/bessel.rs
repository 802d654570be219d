//! Modified Bessel function of the first kind by its ascending series.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// `ln I_nu(x)` above which [`modified_bessel_i`] reports overflow
/// (`ln f64::MAX`). Use [`ln_modified_bessel_i`] or
/// [`modified_bessel_i_scaled`] beyond it.
pub const BESSEL_I_LN_OVERFLOW: f64 = 709.782_712_893_384;

const MAX_TERMS: usize = 100_000;

fn check(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() || !x.is_finite() || nu < 0.0 || x < 0.0 {
        return Err(Error::domain(
            "modified_bessel_i",
            format!("need nu >= 0 and x >= 0 (nu = {nu}, x = {x})"),
        ));
    }
    Ok(())
}

/// `ln I_nu(x)`; `-inf` when `x = 0 < nu`.
pub fn ln_modified_bessel_i(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let half = 0.5 * x;
    let q = half * half;
    // Terms t_k = (x/2)^{2k+nu} / (k! Gamma(k+nu+1)), accumulated relative to
    // t_0 and rescaled whenever they grow large.
    let mut ln_scale = nu * half.ln() - ln_gamma(nu + 1.0);
    let mut t = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        t *= q / ((kf + 1.0) * (kf + nu + 1.0));
        sum += t;
        if t > 1e200 {
            ln_scale += t.ln();
            sum /= t;
            t = 1.0;
        }
        // past the peak of the series and negligible
        if (kf + 1.0) * (kf + nu + 1.0) > q && t <= sum * f64::EPSILON * 0.5 {
            return Ok(ln_scale + sum.ln());
        }
    }
    Err(Error::NoConvergence {
        func: "modified_bessel_i",
        iterations: MAX_TERMS,
    })
}

/// `I_nu(x)` for `nu >= 0`, `x >= 0`.
///
/// # Errors
/// [`Error::Overflow`] when `ln I_nu(x)` exceeds [`BESSEL_I_LN_OVERFLOW`]
/// (for `nu = 0` this happens near `x = 713.98`).
pub fn modified_bessel_i(nu: f64, x: f64) -> Result<f64> {
    let ln_i = ln_modified_bessel_i(nu, x)?;
    if ln_i > BESSEL_I_LN_OVERFLOW {
        return Err(Error::Overflow {
            func: "modified_bessel_i",
            msg: format!("I_{nu}({x}) exceeds f64 range (ln I = {ln_i})"),
        });
    }
    Ok(ln_i.exp())
}

/// `e^{-x} I_nu(x)`, finite for every admissible argument.
pub fn modified_bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok((ln_modified_bessel_i(nu, x)? - x).exp())
}
