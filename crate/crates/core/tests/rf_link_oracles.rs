use rfvlc_core::mcsim::{sample_selected_snr, stream_rng};
use rfvlc_core::specfun::regularized_gamma_p;
use rfvlc_core::{Modulation, RfConfig, TermExpansion};
use rfvlc_oracle::{integrate_to_infinity, ref_gamma, QuadOptions};

fn expansion(k: u32, m: u32, mu: f64, rho: f64) -> TermExpansion {
    TermExpansion::new(RfConfig::new(k, m, mu, rho).unwrap()).unwrap()
}

fn grid() -> impl Iterator<Item = (u32, u32, f64)> {
    (1..=3).flat_map(|k| (1..=3).flat_map(move |m| [0.0, 0.5, 0.9, 1.0].into_iter().map(move |r| (k, m, r))))
}

/// Smallest `g` with `cdf(g) >= p`, by bisection.
fn quantile(e: &TermExpansion, p: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, e.cfg.mu_rf);
    while e.cdf(hi) < p {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if e.cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[test]
fn normalization_identity_on_grid() {
    for (k, m, rho) in grid() {
        let e = expansion(k, m, 1.0, rho);
        assert!((e.normalization_sum() - 1.0).abs() < 1e-10, "K={k} m={m} rho={rho}");
        assert_eq!(e.cdf(0.0), 0.0);
    }
}

#[test]
fn pdf_integrates_to_one() {
    for (k, m, rho) in grid() {
        let e = expansion(k, m, 5.0, rho);
        let q = integrate_to_infinity(|g| e.pdf(g), 0.0, QuadOptions::rel(1e-12)).unwrap();
        assert!((q.value - 1.0).abs() < 1e-10, "K={k} m={m} rho={rho}: {}", q.value);
    }
}

#[test]
fn full_correlation_matches_selection_combining() {
    for (k, m, _) in grid() {
        let e = expansion(k, m, 3.0, 1.0);
        for i in 0..60 {
            let g = 0.05 * f64::from(i) * 3.0;
            let single = ref_gamma_p(f64::from(m), f64::from(m) * g / 3.0);
            assert!((e.cdf(g) - single.powi(k as i32)).abs() < 1e-9, "K={k} m={m} g={g}");
        }
    }
}

fn ref_gamma_p(s: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        rfvlc_oracle::ref_gamma_p(s, x)
    }
}

#[test]
fn ber_against_quadrature() {
    let cases = [
        (2, 2, 0.8, 10.0, Modulation::DBPSK),
        (1, 1, 0.0, 10.0, Modulation::BPSK),
        (3, 2, 0.5, 31.6, Modulation::BPSK),
        (3, 3, 0.9, 3.0, Modulation::DBPSK),
    ];
    for (k, m, rho, mu, md) in cases {
        let e = expansion(k, m, mu, rho);
        let Modulation { a, b } = md;
        let integrand = |g: f64| if g == 0.0 { 0.0 } else { (-b * g + (a - 1.0) * g.ln()).exp() * e.cdf(g) };
        let q = integrate_to_infinity(integrand, 0.0, QuadOptions::rel(1e-11)).unwrap();
        let want = b.powf(a) / (2.0 * ref_gamma(a)) * q.value;
        let got = e.ber(md).unwrap();
        assert!(((got - want) / want).abs() < 1e-6, "K={k} m={m} rho={rho}: {got} vs {want}");
    }
    let rayleigh = expansion(1, 1, 10.0, 0.3).ber(Modulation::BPSK).unwrap();
    assert!((rayleigh - 0.5 * (1.0 - (10.0f64 / 11.0).sqrt())).abs() < 1e-15);
}

/// Two-sided normal critical value for family-wise level `alpha` over
/// `n` comparisons (Bonferroni).
fn bonferroni_z(alpha: f64, n: usize) -> f64 {
    let target = alpha / n as f64;
    let (mut lo, mut hi) = (0.0, 10.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if rfvlc_oracle::normal_two_sided(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[test]
fn cdf_matches_monte_carlo() {
    // 36 configurations x 20 quantile points, each compared at the level of
    // a single 3-standard-error band (two-sided 0.27%), corrected for the
    // number of comparisons.
    const N: usize = 10_000_000;
    const POINTS: usize = 20;
    let alpha = rfvlc_oracle::normal_two_sided(3.0);
    let n_cmp = grid().count() * POINTS;
    let z_crit = bonferroni_z(alpha, n_cmp);
    let mut worst = (0.0f64, String::new());
    let mut beyond_three = 0usize;
    for (idx, (k, m, rho)) in grid().enumerate() {
        let e = expansion(k, m, 5.0, rho);
        let points: Vec<f64> = (1..=POINTS).map(|j| quantile(&e, (j as f64 - 0.5) / POINTS as f64)).collect();
        let mut counts = vec![0u64; points.len()];
        let mut rng = stream_rng(2024, idx as u64);
        for _ in 0..N {
            let g = sample_selected_snr(&e.cfg, &mut rng);
            // points are increasing: bucket by the first threshold above g
            let first = points.partition_point(|&p| p <= g);
            if first < counts.len() {
                counts[first] += 1;
            }
        }
        let mut below = 0u64;
        for (j, &p) in points.iter().enumerate() {
            below += counts[j];
            let f = e.cdf(p);
            let emp = below as f64 / N as f64;
            let z = (emp - f) / (f * (1.0 - f) / N as f64).sqrt();
            if z.abs() > 3.0 {
                beyond_three += 1;
            }
            if z.abs() > worst.0 {
                worst = (z.abs(), format!("K={k} m={m} rho={rho} g={p:.4} F={f:.6} emp={emp:.6}"));
            }
            assert!(z.abs() < z_crit, "K={k} m={m} rho={rho} g={p}: F={f} empirical={emp} z={z:.2}");
        }
    }
    println!(
        "largest |z| = {:.2} at {} ({} of {} beyond 3, family-wise bound {:.2})",
        worst.0, worst.1, beyond_three, n_cmp, z_crit
    );
    // about 2 exceedances of 3 are expected among 720 comparisons
    assert!(beyond_three <= 8, "{beyond_three} comparisons beyond 3 standard errors");
}

#[test]
fn pdf_matches_histogram() {
    const N: usize = 10_000_000;
    const BINS: usize = 50;
    let e = expansion(2, 2, 5.0, 0.7);
    let top = quantile(&e, 0.995);
    let width = top / BINS as f64;
    let mut hist = vec![0u64; BINS];
    let mut rng = stream_rng(77, 0);
    for _ in 0..N {
        let g = sample_selected_snr(&e.cfg, &mut rng);
        let b = (g / width) as usize;
        if b < BINS {
            hist[b] += 1;
        }
    }
    let mut worst = 0.0f64;
    for (j, &c) in hist.iter().enumerate() {
        let (lo, hi) = (j as f64 * width, (j + 1) as f64 * width);
        // bin probability as the integral of the density
        let p = rfvlc_oracle::integrate(|g| e.pdf(g), lo, hi, QuadOptions::rel(1e-12)).unwrap().value;
        let se = (p * (1.0 - p) / N as f64).sqrt();
        let z = (c as f64 / N as f64 - p) / se;
        worst = worst.max(z.abs());
    }
    println!("histogram sup |z| = {worst:.2}");
    assert!(worst < 3.0, "sup-norm {worst:.2} standard errors");
}

#[test]
fn selection_combining_identity_helper_is_consistent() {
    // the library's own P(s, x) agrees with the independent one used above
    for &(s, x) in &[(1.0, 0.3), (2.0, 4.0), (3.0, 0.01)] {
        assert!((regularized_gamma_p(s, x).unwrap() - ref_gamma_p(s, x)).abs() < 1e-14);
    }
}
