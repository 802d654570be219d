//! `G^{2,1}_{2,2}` for the parameter family appearing in the BER closed forms.
//!
//! Every Meijer function used by the BER expressions has `a2 = b1 + 1`.
//! Its Mellin transform is then `Gamma(b2+s) Gamma(1-a1-s) / (b1+s)`, which
//! is the transform of
//!
//! ```text
//! G(x) = x^{b1} int_0^inf t^{lambda-1} e^{-t} Gamma(sigma, x t) dt,
//!        lambda = 1 + b1 - a1,  sigma = b2 - b1,
//! ```
//!
//! and that integral is a regularized incomplete beta function:
//!
//! ```text
//! G(x) = x^{b1} Gamma(lambda) Gamma(sigma) I_{1/(1+x)}(lambda, sigma).
//! ```
//!
//! The two families `(1-a-q, nu-r; nu-r-1, 0)` and `(1-a, 1; 0, m+i)` both
//! satisfy `lambda > 0`, `sigma > 0`. Anything outside that family is
//! rejected rather than approximated.

use super::beta::inc_beta_reg_pair;
use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// Tolerance on `a2 - (b1 + 1)` for a parameter set to count as the
/// supported family.
const FAMILY_TOL: f64 = 1e-12;

/// `G^{2,1}_{2,2}(x | a1, a2; b1, b2)` for `x > 0`.
///
/// # Errors
/// [`Error::Unsupported`] unless `a2 = b1 + 1`, `1 + b1 - a1 > 0` and
/// `b2 > b1`; [`Error::Domain`] for `x <= 0` or non-finite input.
pub fn meijer_g_2122(a1: f64, a2: f64, b1: f64, b2: f64, x: f64) -> Result<f64> {
    const FUNC: &str = "meijer_g_2122";
    if ![a1, a2, b1, b2, x].iter().all(|v| v.is_finite()) {
        return Err(Error::domain(FUNC, "non-finite input"));
    }
    if x <= 0.0 {
        return Err(Error::domain(FUNC, format!("x = {x} must be positive")));
    }
    if (a2 - b1 - 1.0).abs() > FAMILY_TOL {
        return Err(Error::unsupported(
            FUNC,
            format!("only a2 = b1 + 1 is implemented (a2 = {a2}, b1 = {b1})"),
        ));
    }
    let lambda = 1.0 + b1 - a1;
    let sigma = b2 - b1;
    if lambda <= 0.0 || sigma <= 0.0 {
        return Err(Error::unsupported(
            FUNC,
            format!("contour separation fails (1 + b1 - a1 = {lambda}, b2 - b1 = {sigma})"),
        ));
    }
    let (i, _) = inc_beta_reg_pair(lambda, sigma, 1.0 / (1.0 + x), x / (1.0 + x))?;
    Ok((b1 * x.ln() + ln_gamma(lambda) + ln_gamma(sigma)).exp() * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_order_reduction() {
        // (0, 1; 0, n; z) = (n-1)! (1 - (z/(1+z))^n)
        assert!((meijer_g_2122(0.0, 1.0, 0.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((meijer_g_2122(0.0, 1.0, 0.0, 3.0, 1.0).unwrap() - 1.75).abs() < 1e-14);
        for &z in &[0.01, 0.3, 4.0, 250.0] {
            let g = meijer_g_2122(0.0, 1.0, 0.0, 1.0, z).unwrap();
            assert!((g - 1.0 / (1.0 + z)).abs() < 1e-15 * (1.0 + 1.0 / z));
        }
    }

    #[test]
    fn outside_family_is_an_error() {
        assert!(matches!(meijer_g_2122(0.0, 2.0, 0.0, 1.0, 1.0), Err(Error::Unsupported { .. })));
        // 1 + b1 - a1 = 0: the integrand is not integrable at the origin
        assert!(matches!(meijer_g_2122(1.0, 1.0, 0.0, 1.0, 1.0), Err(Error::Unsupported { .. })));
        assert!(matches!(meijer_g_2122(0.0, 1.0, 0.0, 0.0, 1.0), Err(Error::Unsupported { .. })));
        assert!(matches!(meijer_g_2122(0.0, 1.0, 0.0, 1.0, 0.0), Err(Error::Domain { .. })));
    }
}
