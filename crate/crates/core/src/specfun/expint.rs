use super::gamma::{upper_cf, upper_incomplete_gamma};
use super::EvalTolerance;
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Generalized exponential integral `E_nu(x) = int_1^inf e^{-xt} t^{-nu} dt`
/// for `x > 0` and `nu <= 1`, via `E_nu(x) = x^{nu-1} Gamma(1 - nu, x)`.
///
/// `nu = 1` is the classical `E_1`. Orders within `1e-9` of 1 (but not 1)
/// are rejected: the incomplete gamma of a vanishing order is not evaluated
/// accurately by this route.
pub fn gen_exponential_integral(nu: f64, x: f64) -> Result<f64> {
    const FUNC: &str = "gen_exponential_integral";
    if !nu.is_finite() || !x.is_finite() {
        return Err(Error::domain(FUNC, format!("non-finite input (nu = {nu}, x = {x})")));
    }
    if x <= 0.0 {
        return Err(Error::domain(FUNC, format!("x = {x} must be positive")));
    }
    if nu > 1.0 {
        return Err(Error::domain(FUNC, format!("order nu = {nu} above 1 is not supported")));
    }
    if nu == 1.0 {
        return exp_integral_e1(x);
    }
    if 1.0 - nu < 1e-9 {
        return Err(Error::unsupported(FUNC, format!("order nu = {nu} is within 1e-9 of 1")));
    }
    Ok(x.powf(nu - 1.0) * upper_incomplete_gamma(1.0 - nu, x)?)
}

fn exp_integral_e1(x: f64) -> Result<f64> {
    let tol = EvalTolerance::default();
    if x > 1.0 {
        return Ok((-x).exp() * upper_cf(0.0, x, &tol)?);
    }
    // -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 1..tol.max_terms {
        let k = k as f64;
        fact *= -x / k;
        let term = fact / k;
        sum += term;
        if term.abs() <= sum.abs() * f64::EPSILON {
            return Ok(-EULER_GAMMA - x.ln() - sum);
        }
    }
    Err(Error::NoConvergence {
        func: "gen_exponential_integral",
        iterations: tol.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero() {
        for &x in &[0.01, 0.5, 2.0, 30.0] {
            let e = gen_exponential_integral(0.0, x).unwrap();
            assert!((e / ((-x).exp() / x) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn e1_branches_agree_at_switch() {
        let below = exp_integral_e1(1.0).unwrap();
        let above = (-1.0f64).exp() * upper_cf(0.0, 1.0, &EvalTolerance::default()).unwrap();
        assert!((below / above - 1.0).abs() < 1e-13);
        assert!((below - 0.219_383_934_395_520_3).abs() < 1e-15);
    }

    #[test]
    fn negative_order_identity() {
        let e = gen_exponential_integral(-1.5, 2.0).unwrap();
        let expect = 2f64.powf(-2.5) * upper_incomplete_gamma(2.5, 2.0).unwrap();
        assert!((e / expect - 1.0).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn errors() {
        assert!(matches!(gen_exponential_integral(0.5, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(gen_exponential_integral(1.5, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(gen_exponential_integral(1.0 - 1e-12, 1.0), Err(Error::Unsupported { .. })));
    }
}
