use super::gamma::{gamma, ln_gamma};
use crate::error::{Error, Result};

pub fn factorial(n: u32) -> f64 {
    gamma(f64::from(n) + 1.0)
}

pub fn ln_factorial(n: u32) -> f64 {
    ln_gamma(f64::from(n) + 1.0)
}

fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        // r * (n - i) is always divisible by i + 1
        r = r.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(r)
}

/// `C(n, k)`; zero for `k > n`. Exact while the result fits in 128 bits.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    match binomial_u128(n, k) {
        Some(r) => r as f64,
        None => ln_binomial(n, k).exp(),
    }
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

fn check_parts(p: u32, parts: &[u32]) -> Result<()> {
    let total: u64 = parts.iter().map(|&l| u64::from(l)).sum();
    if total != u64::from(p) {
        return Err(Error::domain(
            "multinomial",
            format!("parts {parts:?} sum to {total}, expected {p}"),
        ));
    }
    Ok(())
}

/// `p! / (l_0! l_1! ... )`, requiring `sum l_j = p`.
pub fn multinomial(p: u32, parts: &[u32]) -> Result<f64> {
    check_parts(p, parts)?;
    let mut acc: Option<u128> = Some(1);
    let mut filled = 0u64;
    for &l in parts {
        filled += u64::from(l);
        acc = acc
            .zip(binomial_u128(filled, u64::from(l)))
            .and_then(|(a, b)| a.checked_mul(b));
    }
    Ok(match acc {
        Some(r) => r as f64,
        None => ln_multinomial(p, parts)?.exp(),
    })
}

pub fn ln_multinomial(p: u32, parts: &[u32]) -> Result<f64> {
    check_parts(p, parts)?;
    Ok(ln_factorial(p) - parts.iter().map(|&l| ln_factorial(l)).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(5, 7), 0.0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424.0);
        assert_eq!(multinomial(3, &[1, 2]).unwrap(), 3.0);
        assert_eq!(multinomial(0, &[0, 0, 0]).unwrap(), 1.0);
        assert_eq!(multinomial(6, &[1, 2, 3]).unwrap(), 60.0);
        assert_eq!(factorial(9), 362_880.0);
        assert!((ln_factorial(9) - 362_880f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn large_binomial_falls_back_to_logs() {
        let b = binomial(400, 200);
        assert!((b.ln() / ln_binomial(400, 200) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn parts_must_sum() {
        assert!(matches!(multinomial(3, &[1, 1]), Err(Error::Domain { .. })));
        assert!(ln_multinomial(2, &[3]).is_err());
    }
}
