use rfvlc_core::mcsim::{sample_vlc_snr, stream_rng};
use rfvlc_core::{Modulation, VlcConfig, VlcDerived};
use rfvlc_oracle::{integrate_breaks, integrate_log, ks_critical_1pct, ks_statistic, ref_gamma, ref_upper_gamma, QuadOptions};

fn derived(phi_deg: f64, height: f64, n_leds: u32) -> VlcDerived {
    VlcConfig {
        semi_angle: phi_deg.to_radians(),
        height,
        n_leds,
        ..Default::default()
    }
    .derive()
    .unwrap()
}

fn geometry_grid() -> impl Iterator<Item = (f64, f64)> {
    [30.0, 45.0, 60.0, 70.0].into_iter().flat_map(|p| [1.5, 2.0, 2.5, 3.0].into_iter().map(move |l| (p, l)))
}

#[test]
fn pdf_integrates_to_one() {
    for (phi, l) in geometry_grid() {
        let d = derived(phi, l, 5);
        let q = integrate_log(|g| d.pdf(g).unwrap_or(0.0), d.gamma_min, d.gamma_max, QuadOptions::rel(1e-13)).unwrap();
        assert!((q.value - 1.0).abs() < 1e-10, "phi={phi} L={l}: {}", q.value);
    }
}

#[test]
fn cdf_is_antiderivative_of_pdf() {
    for (phi, l) in geometry_grid() {
        let d = derived(phi, l, 5);
        for i in 1..20 {
            let g = d.gamma_min * (d.gamma_max / d.gamma_min).powf(f64::from(i) / 20.0);
            let h = 1e-6 * g;
            let num = (d.cdf(g + h) - d.cdf(g - h)) / (2.0 * h);
            let pdf = d.pdf(g).unwrap();
            assert!((num - pdf).abs() < 1e-6, "phi={phi} L={l} g={g}");
            assert!((num / pdf - 1.0).abs() < 1e-5, "phi={phi} L={l} g={g}: {num} vs {pdf}");
        }
    }
}

fn ber_quad(d: &VlcDerived, md: Modulation) -> f64 {
    let Modulation { a, b } = md;
    let f = |g: f64| (-b * g + (a - 1.0) * g.ln()).exp() * d.cdf(g);
    // the exponential decays on a scale of 1/b; seed the partition with it
    let mut breaks = Vec::new();
    let mut x = d.gamma_min + 1.0 / b;
    while x < d.gamma_max && breaks.len() < 200 {
        breaks.push(x);
        x += 2.0 / b;
    }
    let inside = integrate_breaks(f, d.gamma_min, d.gamma_max, &breaks, QuadOptions::rel(1e-12)).unwrap().value;
    let above = ref_upper_gamma(a, b * d.gamma_max) / b.powf(a);
    b.powf(a) / (2.0 * ref_gamma(a)) * (inside + above)
}

#[test]
fn ber_against_quadrature() {
    let d = derived(60.0, 2.0, 5);
    let got = d.ber(Modulation::BPSK).unwrap();
    let want = ber_quad(&d, Modulation::BPSK);
    assert!(((got - want) / want).abs() < 1e-8, "{got} vs {want}");
    for (phi, l, n) in [(45.0, 3.0, 1), (70.0, 3.0, 1), (60.0, 1.5, 2), (60.0, 2.5, 5), (30.0, 3.0, 1)] {
        let d = derived(phi, l, n);
        for md in [Modulation::BPSK, Modulation::DBPSK] {
            let got = d.ber(md).unwrap();
            let want = ber_quad(&d, md);
            assert!(((got - want) / want).abs() < 1e-8, "phi={phi} L={l} N={n} {md:?}: {got} vs {want}");
        }
    }
}

#[test]
fn cdf_matches_sampled_positions() {
    const N: usize = 1_000_000;
    let d = derived(60.0, 2.0, 1);
    let mut rng = stream_rng(11, 0);
    let mut samples: Vec<f64> = (0..N).map(|_| sample_vlc_snr(&d, &mut rng)).collect();
    assert!(samples.iter().all(|&g| g >= d.gamma_min * (1.0 - 1e-12) && g <= d.gamma_max * (1.0 + 1e-12)));
    samples.sort_by(f64::total_cmp);
    for j in 1..10 {
        let g = d.gamma_min * (d.gamma_max / d.gamma_min).powf(f64::from(j) / 10.0);
        let f = d.cdf(g);
        let emp = samples.partition_point(|&x| x <= g) as f64 / N as f64;
        let z = (emp - f) / (f * (1.0 - f) / N as f64).sqrt();
        assert!(z.abs() < 3.0, "g={g}: F={f} empirical={emp} z={z:.2}");
    }
}

#[test]
fn ks_against_analytic_cdf() {
    const N: usize = 100_000;
    for (phi, l) in [(30.0, 2.0), (60.0, 2.0), (70.0, 3.0)] {
        let d = derived(phi, l, 5);
        let mut rng = stream_rng(12, 0);
        let mut samples: Vec<f64> = (0..N).map(|_| sample_vlc_snr(&d, &mut rng)).collect();
        let ks = ks_statistic(&mut samples, |g| d.cdf(g));
        assert!(ks < ks_critical_1pct(N), "phi={phi} L={l}: KS {ks}");
    }
}
