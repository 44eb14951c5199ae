//! Property tests for the invariants that hold pointwise or algebraically.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use nicholson_core::bounds::{
    csc_factor, inequality_csc, inequality_csc_numerator, inequality_sec, meijer_cos_root, meijer_sin_root, sec_factor,
};
use nicholson_core::exact::{coeff_b, coeff_d, GaussRational};
use nicholson_core::quad::QuadratureConfig;
use nicholson_core::sheet::{parse_angle, SheetedComplex};
use nicholson_core::terminant::{c_of_phi, c_relation_rhs, sheet_shift, terminant_incomplete_gamma, terminant_integral, TerminantQuery};

const SLACK: f64 = 1e-12;

/// r on a logarithmic grid over (0, 1e3].
fn log_radius() -> impl Strategy<Value = f64> {
    (-6.0f64..=3.0).prop_map(|u| 10f64.powf(u))
}

/// Angles where the secant-type factor is defined.
fn sec_angle() -> impl Strategy<Value = f64> {
    prop_oneof![
        (-FRAC_PI_2 + 1e-6..0.0f64),
        (0.0..=PI),
        (PI + 1e-9..1.5 * PI - 1e-6),
    ]
}

/// Angles where the cosecant-type factor is defined.
fn csc_angle() -> impl Strategy<Value = f64> {
    -FRAC_PI_2 + 1e-6..FRAC_PI_2 - 1e-6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn secant_inequality(r in log_radius(), theta in sec_angle()) {
        let (lhs, rhs) = inequality_sec(r, theta).expect("angle in range");
        prop_assert!(lhs <= rhs * (1.0 + SLACK), "r={r} θ={theta}: {lhs} > {rhs}");
    }

    #[test]
    fn cosecant_inequality(r in log_radius(), theta in csc_angle()) {
        let (lhs, rhs) = inequality_csc(r, theta).expect("angle in range");
        prop_assert!(lhs <= rhs * (1.0 + SLACK), "r={r} θ={theta}: {lhs} > {rhs}");
    }

    #[test]
    fn cosecant_numerator_inequality(r in log_radius(), theta in csc_angle()) {
        let (lhs, rhs) = inequality_csc_numerator(r, theta).expect("angle in range");
        prop_assert!(lhs <= rhs * (1.0 + SLACK), "r={r} θ={theta}: {lhs} > {rhs}");
    }

    #[test]
    fn sector_factors_are_at_least_one(theta in -PI..2.0 * PI) {
        if let Some(f) = sec_factor(theta) {
            prop_assert!(f >= 1.0);
        }
        if let Some(f) = csc_factor(theta) {
            prop_assert!(f >= 1.0);
        }
    }

    #[test]
    fn meijer_sine_root_solves_its_equation(n in 1usize..12, theta in prop_oneof![(-PI + 1e-3..-1e-3f64), (PI + 1e-3..2.0 * PI - 1e-3)]) {
        let p = (2 * n + 3) as f64 / 3.0;
        let phi = meijer_sin_root(p, theta).expect("bracketed");
        let resid = (theta - 2.0 * phi).sin() - (p - 1.0) / (p + 1.0) * theta.sin();
        prop_assert!(resid.abs() <= 1e-12, "θ={theta}: residual {resid:e}");
    }

    #[test]
    fn meijer_cosine_root_solves_its_equation(n in 1usize..12, k in 1usize..=6, theta in prop_oneof![(FRAC_PI_4 + 1e-3..PI - 1e-3f64), (-PI + 1e-3..-FRAC_PI_4 - 1e-3)]) {
        let p = (2 * n + k) as f64 / 3.0;
        let phi = meijer_cos_root(p, theta).expect("bracketed");
        let resid = (p + 2.0) * (3.0 * phi - 2.0 * theta).cos() - (p - 2.0) * (phi - 2.0 * theta).cos();
        prop_assert!(resid.abs() <= 1e-11 * (p + 2.0), "θ={theta}: residual {resid:e}");
        let mirrored = meijer_cos_root(p, -theta).expect("bracketed");
        prop_assert!((mirrored + phi).abs() <= 1e-11);
    }

    #[test]
    fn sheeted_points_round_trip(r in 1e-3f64..1e3, theta in -3.0 * PI..3.0 * PI) {
        let z = SheetedComplex::new(r, theta).expect("finite");
        let back: SheetedComplex = z.to_string().parse().expect("own output parses");
        prop_assert_eq!(back, z);
    }

    #[test]
    fn pi_multiples_parse(k in -60i32..=60) {
        let x = f64::from(k) / 20.0;
        let a = parse_angle(&format!("{x}pi")).expect("parses");
        prop_assert!((a - x * PI).abs() <= 1e-15 * PI.max(a.abs()));
    }

    #[test]
    fn gauss_rationals_round_trip(a in -999i64..999, b in 1i64..99, c in -999i64..999, d in 1i64..99) {
        let g = GaussRational::new(BigRational::new(BigInt::from(a), BigInt::from(b)), BigRational::new(BigInt::from(c), BigInt::from(d)));
        let back: GaussRational = g.to_string().parse().expect("own output parses");
        prop_assert_eq!(back, g);
    }

    #[test]
    fn sheet_shifts_compose(p in 0.1f64..12.0, m in -4i64..=4, k in -4i64..=4) {
        // T̂(we^{2πi(m+k)}) built in one step or two must agree:
        // G_{m+k} = e^{−2πikp}G_m + G_k.
        let rot = Complex64::from_polar(1.0, -2.0 * PI * k as f64 * p);
        let two_step = rot * sheet_shift(p, m) + sheet_shift(p, k);
        let one_step = sheet_shift(p, m + k);
        prop_assert!((two_step - one_step).norm() <= 1e-12 * (1.0 + one_step.norm()));
    }

    #[test]
    fn singulant_relation_holds(phi in -PI + 1e-3..3.0 * PI - 1e-3) {
        let c = c_of_phi(phi).expect("in domain");
        let resid = (0.5 * c * c - c_relation_rhs(phi)).norm();
        prop_assert!(resid <= 1e-12 * (1.0 + c.norm_sqr()), "φ={phi}: {resid:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn terminant_backends_agree(p in 0.3f64..30.0, r in 0.5f64..50.0, theta in -0.9 * PI..0.9 * PI) {
        let cfg = QuadratureConfig::default();
        let q = TerminantQuery::new(p, SheetedComplex::new(r, theta).expect("finite")).expect("valid");
        let a = terminant_integral(q, &cfg).expect("integral backend");
        let b = terminant_incomplete_gamma(q, &cfg).expect("gamma backend");
        prop_assert!((a - b).norm() <= 1e-11 * b.norm(), "p={p} r={r} θ={theta}: {a} vs {b}");
    }

    #[test]
    fn coefficient_parity(n in 0usize..40) {
        prop_assert!(coeff_b(n).parity_consistent());
        prop_assert!(coeff_d(n).parity_consistent());
    }
}
