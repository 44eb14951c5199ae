//! The scaled terminant T̂_p(w) = e^{iπp}Γ(p)Γ(1 − p, w)/(2πi) on every
//! sheet of the logarithm, and the error-function law that smooths its jump
//! across the Stokes direction arg w = −π.
//!
//! Two independent evaluations are provided:
//!
//! * the Cauchy-type integral e^{iπp}w^{1−p}e^{−w}/(2πi)·∫₀^∞ t^{p−1}e^{−t}/(w + t) dt,
//!   valid for |arg w| < π and evaluated with all large factors combined in
//!   logarithmic form;
//! * Γ(p)·Γ(1 − p, w) from the incomplete-gamma oracle, which itself handles
//!   any sheet.
//!
//! [`terminant`] uses the integral on the principal sheet and reaches other
//! sheets through the monodromy relation
//! T̂_p(we^{2πim}) = e^{−2πimp}T̂_p(w) + G_m(p), where G_m is the finite
//! geometric sum returned by [`sheet_shift`].  Writing G_m as a sum rather
//! than through Γ(1 − p) keeps integer p (where Γ(1 − p) has poles) regular.

use std::f64::consts::PI;

use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracles::{ln_gamma, upper_incomplete_gamma};
use crate::quad::{integrate_breaks, QuadratureConfig};
use crate::sheet::SheetedComplex;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Angular margin δ kept from the ends of every sector in which an
/// asymptotic law for T̂ is applied.
pub const SECTOR_DELTA: f64 = 0.05 * PI;

/// Beyond this |arg w| on the principal sheet the pole of 1/(w + t) comes
/// too close to the real axis, and the incomplete-gamma route takes over.
const INTEGRAL_LIMIT: f64 = 0.95 * PI;

/// The integrand is dropped once it is this many e-folds below its peak.
const TAIL_DROP: f64 = 60.0;

/// Argument of a terminant evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminantQuery {
    /// Order p > 0.
    pub p: f64,
    /// Argument, on any sheet.
    pub w: SheetedComplex,
}

impl TerminantQuery {
    /// Validates p > 0 (finite) and |w| > 0.
    pub fn new(p: f64, w: SheetedComplex) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::InvalidInput(format!("terminant order must be positive, got p={p}")));
        }
        if !(w.r.is_finite() && w.r > 0.0) {
            return Err(Error::InvalidInput(format!("terminant argument must be non-zero, got |w|={}", w.r)));
        }
        Ok(Self { p, w })
    }
}

/// Which evaluation route to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminantBackend {
    /// Cauchy integral on the principal sheet plus the monodromy relation.
    Integral,
    /// Γ(p)·Γ(1 − p, w) from the incomplete-gamma oracle.
    IncompleteGamma,
}

/// T̂_p(w) on any sheet; see the module documentation for the route taken.
pub fn terminant(q: TerminantQuery, cfg: &QuadratureConfig) -> Result<Complex64> {
    terminant_with(q, TerminantBackend::Integral, cfg)
}

/// T̂_p(w) by an explicitly chosen backend.
pub fn terminant_with(q: TerminantQuery, backend: TerminantBackend, cfg: &QuadratureConfig) -> Result<Complex64> {
    let q = TerminantQuery::new(q.p, q.w)?;
    match backend {
        TerminantBackend::IncompleteGamma => terminant_incomplete_gamma(q, cfg),
        TerminantBackend::Integral => {
            let (w0, m) = q.w.principal();
            let base_q = TerminantQuery { p: q.p, w: w0 };
            let base = if w0.theta.abs() <= INTEGRAL_LIMIT {
                terminant_integral(base_q, cfg)?
            } else {
                terminant_incomplete_gamma(base_q, cfg)?
            };
            if m == 0 {
                return Ok(base);
            }
            Ok(Complex64::from_polar(1.0, -2.0 * PI * m as f64 * q.p) * base + sheet_shift(q.p, m))
        }
    }
}

/// G_m(p) in T̂_p(we^{2πim}) = e^{−2πimp}T̂_p(w) + G_m(p):
/// Σ_{k=0}^{m−1} e^{−2πikp} for m > 0 and −Σ_{k=1}^{|m|} e^{2πikp} for m < 0.
pub fn sheet_shift(p: f64, m: i64) -> Complex64 {
    if m >= 0 {
        (0..m).map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 * p)).sum()
    } else {
        -(1..=-m).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 * p)).sum::<Complex64>()
    }
}

/// The Cauchy-integral form, restricted to |arg w| < π.
pub fn terminant_integral(q: TerminantQuery, cfg: &QuadratureConfig) -> Result<Complex64> {
    let q = TerminantQuery::new(q.p, q.w)?;
    if q.w.theta.abs() >= PI {
        return Err(Error::SectorViolation(format!(
            "the terminant integral needs |arg w| < π, got arg w = {}",
            q.w.theta
        )));
    }
    let (scaled, log_scale) = cauchy_integral(q.p, q.w.to_c64(), cfg)?;
    let log_pref = I * PI * q.p + (1.0 - q.p) * q.w.ln() - q.w.to_c64() + log_scale;
    Ok(log_pref.exp() * scaled / (2.0 * PI * I))
}

/// e^{iπp}Γ(p)Γ(1 − p, w)/(2πi) with Γ(1 − p, w) from the oracle.
pub fn terminant_incomplete_gamma(q: TerminantQuery, cfg: &QuadratureConfig) -> Result<Complex64> {
    let q = TerminantQuery::new(q.p, q.w)?;
    let g = upper_incomplete_gamma(Complex64::new(1.0 - q.p, 0.0), q.w, cfg)?;
    let pref = (I * PI * q.p + ln_gamma(Complex64::new(q.p, 0.0))).exp();
    Ok(pref * g / (2.0 * PI * I))
}

/// ∫₀^∞ t^{p−1}e^{−t}/(w + t) dt as (value·e^{−ℓ}, ℓ), where ℓ is the log
/// of the peak of t^{p−1}e^{−t}.
fn cauchy_integral(p: f64, w: Complex64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let peak = (p - 1.0).max(0.0);
    let ell = if peak > 0.0 { peak * peak.ln() - peak } else { 0.0 };
    let expo = |t: f64| (p - 1.0) * t.ln() - t - ell;
    let f = |t: f64| {
        let e = expo(t);
        if e < -745.0 {
            Complex64::new(0.0, 0.0)
        } else {
            e.exp() / (w + t)
        }
    };

    // Below p = 1 the factor t^{p−1} is singular; s = t^p on [0, 1] removes it.
    let mut total = Complex64::new(0.0, 0.0);
    let start = if p < 1.0 {
        let head = integrate_breaks(
            |s: f64| {
                let t = s.powf(1.0 / p);
                (-t - ell).exp() / (w + t) / p
            },
            &[0.0, 0.25, 0.5, 1.0],
            cfg,
        )?;
        total += head.value;
        1.0
    } else {
        0.0
    };

    let sigma = p.max(1.0).sqrt();
    let mut breaks = vec![start];
    let mut j = -8i32;
    loop {
        let x = peak + f64::from(j) * sigma;
        if x > start {
            breaks.push(x);
            if x > peak && expo(x) < -TAIL_DROP {
                break;
            }
        }
        j += 1;
        if j > 100_000 {
            return Err(Error::NonConvergence(format!("terminant integrand tail not found for p={p}")));
        }
    }
    // Refine around the nearest approach of the pole at t = −w.
    let end = *breaks.last().unwrap_or(&start);
    let x0 = -w.re;
    if x0 > start && x0 < end {
        let d = w.im.abs().max(1e-3 * w.norm());
        for s in [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
            let x = x0 + s * d;
            if x > start && x < end {
                breaks.push(x);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    total += integrate_breaks(f, &breaks, cfg)?.value;
    Ok((total, ell))
}

/// Four-term expansion of c(φ) about φ = π.
pub fn c_series(phi: f64) -> Complex64 {
    let x = phi - PI;
    Complex64::new(x - x.powi(3) / 36.0, x * x / 6.0 - x.powi(4) / 270.0)
}

/// The right-hand side 1 + i(φ − π) − e^{i(φ−π)} of the defining relation
/// ½c² = g(φ).
pub fn c_relation_rhs(phi: f64) -> Complex64 {
    let x = phi - PI;
    // 1 − cos x and x − sin x in cancellation-free form.
    let half = (0.5 * x).sin();
    let im = if x.abs() < 0.1 {
        let x2 = x * x;
        x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))))
    } else {
        x - x.sin()
    };
    Complex64::new(2.0 * half * half, im)
}

/// c(φ) on the branch through c(π) = 0 with c′(π) = 1, for φ ∈ (−π, 3π).
///
/// Inside |φ − π| ≤ ½ Newton's method on ½c² = g(φ) is seeded by the
/// series; further out the root is traced from there in steps of at most
/// 0.05 with linear extrapolation as the seed.  g vanishes only at φ = π on
/// the real line, so the branch is smooth on the whole interval.
pub fn c_of_phi(phi: f64) -> Result<Complex64> {
    if !(phi > -PI && phi < 3.0 * PI) {
        return Err(Error::InvalidInput(format!("c(φ) is defined here for φ ∈ (−π, 3π), got {phi}")));
    }
    let x = phi - PI;
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let trust = 0.5;
    if x.abs() <= trust {
        return newton_c(phi, c_series(phi));
    }
    let anchor = PI + trust * x.signum();
    let steps = ((phi - anchor).abs() / 0.05).ceil() as usize;
    let h = (phi - anchor) / steps as f64;
    let mut prev = newton_c(anchor - h, c_series(anchor - h))?;
    let mut cur = newton_c(anchor, c_series(anchor))?;
    for k in 1..=steps {
        let seed = cur + (cur - prev);
        prev = cur;
        cur = newton_c(anchor + h * k as f64, seed)?;
    }
    Ok(cur)
}

fn newton_c(phi: f64, seed: Complex64) -> Result<Complex64> {
    let g = c_relation_rhs(phi);
    let mut c = seed;
    for _ in 0..60 {
        let step = (0.5 * c * c - g) / c;
        c -= step;
        if step.norm() <= 1e-16 * c.norm().max(1e-300) {
            return Ok(c);
        }
    }
    let resid = (0.5 * c * c - g).norm();
    if resid <= 1e-14 * g.norm().max(1.0) {
        Ok(c)
    } else {
        Err(Error::NoConvergence(format!("Newton iteration for c(φ) stalled at φ={phi}, residual {resid:e}")))
    }
}

/// The error-function approximation
/// e^{−2πip}T̂_p(w) ≈ −½ + ½·erf(−conj(c(−φ))·√(|w|/2)), φ = arg w, valid for
/// p ∼ |w| and −3π + δ ≤ φ ≤ π − δ.  Returns the approximation to
/// e^{−2πip}T̂_p(w) (p enters only through that normalisation).
pub fn smoothing_approx(p: f64, w: SheetedComplex) -> Result<Complex64> {
    TerminantQuery::new(p, w)?;
    let phi = w.theta;
    if phi < -3.0 * PI + SECTOR_DELTA || phi > PI - SECTOR_DELTA {
        return Err(Error::SectorViolation(format!(
            "the smoothing law needs −3π + δ ≤ arg w ≤ π − δ (δ = 0.05π), got {phi}"
        )));
    }
    let c = c_of_phi(-phi)?;
    let arg = -c.conj() * (0.5 * w.r).sqrt();
    Ok(-0.5 + 0.5 * arg.erf())
}

/// |e^{−w−|w|}|, the scale of T̂_p(w) on |arg w| ≤ π when p ∼ |w|.
pub fn principal_scale(w: SheetedComplex) -> f64 {
    (-w.to_c64().re - w.r).exp()
}
