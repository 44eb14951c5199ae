//! Late-coefficient asymptotics against the exact coefficients.

use nicholson_core::exact::GaussRational;
use nicholson_core::late::{
    dingle_check, gamma_ratio, optimal_truncation, remainder_a, remainder_a_bound, truncation_errors, watson_ratio,
    DEFAULT_DIGITS,
};
use nicholson_core::quad::QuadratureConfig;

fn kappa(s: &str) -> GaussRational {
    s.parse().unwrap()
}

#[test]
fn least_error_sits_near_half_the_index() {
    for k in ["0", "3", "2+2i"] {
        let (m, err) = optimal_truncation(100, &kappa(k), 10..=90, DEFAULT_DIGITS).unwrap();
        assert!((40..=60).contains(&m), "κ={k}: M={m}");
        // The error curve is U-shaped: both ends are far above the dip.
        let errs = truncation_errors(100, &kappa(k), 10..=90, DEFAULT_DIGITS);
        let (first, last) = (errs.first().unwrap().1, errs.last().unwrap().1);
        assert!(first > 1e3 * err && last > 1e3 * err, "κ={k}: {first:e} {err:e} {last:e}");
    }
}

#[test]
fn discarded_part_has_the_stated_order() {
    // |A_M(n, κ)| / (Γ((n−M)/3)/Γ((n+1)/3)) stays bounded as n doubles.
    let k = kappa("3");
    let scaled: Vec<f64> = [60usize, 120, 240]
        .iter()
        .map(|&n| remainder_a(n, &k, 10, DEFAULT_DIGITS).unwrap().norm() / gamma_ratio(n, 10))
        .collect();
    let (lo, hi) = scaled.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(hi / lo < 1.5, "{scaled:?}");
}

#[test]
fn discarded_part_obeys_its_bound() {
    let cfg = QuadratureConfig::default();
    for (n, m, k) in [(60usize, 10usize, "1/2"), (90, 12, "1/4"), (60, 6, "0")] {
        let a = remainder_a(n, &kappa(k), m, DEFAULT_DIGITS).unwrap().norm();
        let b = remainder_a_bound(n, kappa(k).to_c64(), m, &cfg).unwrap();
        assert!(a <= b, "n={n} M={m} κ={k}: {a:e} > {b:e}");
    }
}

#[test]
fn watson_approximation_converges() {
    let devs: Vec<f64> = [25usize, 50, 100].iter().map(|&n| (watson_ratio(n) - 1.0).abs()).collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
    assert!(devs[2] <= 0.02);
}

#[test]
fn dingle_expansion_converges() {
    let a = dingle_check(60).unwrap();
    let b = dingle_check(120).unwrap();
    assert!((b.ratio() - 1.0).abs() < (a.ratio() - 1.0).abs());
    assert!((b.ratio_three() - 1.0).abs() < (a.ratio_three() - 1.0).abs());
}
