//! Exponentially improved expansions of H¹_ν(z) and H¹′_ν(z), ν = z − κ.
//!
//! The expansion is split into its two non-vanishing subsequences (indices
//! 3n and 3m + 1), truncated near the least term at N, M ≈ 2π|z|, and the
//! remainder is re-expanded in scaled terminants T̂_{N−k/3}(∓2πiz) and
//! T̂_{M−(ℓ−1)/3}(∓2πiz) of depths K and L.  What is left over is
//! O(e^{−2π|z|}|z|^{−(K+1)/3}) on the principal sector: exponentially small
//! compared with the optimally truncated series.
//!
//! That residual sits far below the double-precision resolution of H¹
//! itself once |z| exceeds a few units, so [`hyper_residual`] measures it as
//! (remainder integral) − (terminant corrections), which never forms the
//! difference of two O(1) numbers.  The module also tabulates the Berry
//! smoothing of the Stokes jump across arg z = −π/2.

use std::f64::consts::PI;

use errorfunctions::RealErrorFunctions;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{coeff_value, CoeffKind};
use crate::oracles::oracle_value;
use crate::quad::QuadratureConfig;
use crate::remainders::{remainder_integral, RemainderRequest};
use crate::series::{scale_factor, sin_third, term};
use crate::sheet::{FunctionKind, SheetedComplex};
use crate::terminant::{terminant, TerminantQuery, SECTOR_DELTA};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Truncation indices for the exponentially improved expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    /// Terms kept from the 3n subsequence.
    pub n: usize,
    /// Terms kept from the 3m + 1 subsequence.
    pub m: usize,
    /// Terminant re-expansion depth attached to the 3n subsequence.
    pub k: usize,
    /// Terminant re-expansion depth attached to the 3m + 1 subsequence.
    pub l: usize,
    /// Offset ρ in N = 2π|z| + ρ.
    pub rho: f64,
    /// Offset σ in M = 2π|z| + σ.
    pub sigma: f64,
}

impl TruncationPlan {
    /// A plan with explicit indices; ρ and σ are computed for the given |z|.
    pub fn new(n: usize, m: usize, k: usize, l: usize, z_abs: f64) -> Result<Self> {
        let base = 2.0 * PI * z_abs;
        let plan = Self { n, m, k, l, rho: n as f64 - base, sigma: m as f64 - base };
        plan.validate()?;
        Ok(plan)
    }

    /// N, M ≥ 1 and every terminant order N − k/3, M − (ℓ − 1)/3 positive.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::InvalidInput(format!("N and M must be at least 1, got N={}, M={}", self.n, self.m)));
        }
        if self.k >= 3 * self.n || self.l > 3 * self.m {
            return Err(Error::InvalidInput(format!(
                "re-expansion depths K={}, L={} leave non-positive terminant orders for N={}, M={}",
                self.k, self.l, self.n, self.m
            )));
        }
        Ok(())
    }

    /// Whether the two re-expansion depths differ (outside the default mode
    /// K = L, where the sharper sector estimates apply).
    pub fn is_expert(&self) -> bool {
        self.k != self.l
    }
}

/// N = M = round(2π|z|) (at least 1), with the given re-expansion depths.
pub fn optimal_plan(z: SheetedComplex, k: usize, l: usize) -> TruncationPlan {
    let base = 2.0 * PI * z.r;
    let n = (base.round() as usize).max(1);
    TruncationPlan { n, m: n, k, l, rho: n as f64 - base, sigma: n as f64 - base }
}

fn family(derivative: bool) -> (FunctionKind, CoeffKind) {
    if derivative {
        (FunctionKind::H1p, CoeffKind::D)
    } else {
        (FunctionKind::H1, CoeffKind::B)
    }
}

fn check_sector(z: SheetedComplex) -> Result<()> {
    if z.theta < -2.0 * PI + SECTOR_DELTA || z.theta > 3.0 * PI - SECTOR_DELTA {
        return Err(Error::SectorViolation(format!(
            "the improved expansion needs −2π + δ ≤ arg z ≤ 3π − δ (δ = 0.05π), got {}",
            z.theta
        )));
    }
    Ok(())
}

/// The two truncated subsequences: terms 3n (n < N) and 3m + 1 (m < M).
pub fn main_sums(z: SheetedComplex, kappa: Complex64, plan: &TruncationPlan, derivative: bool) -> Complex64 {
    let (kind, _) = family(derivative);
    let a: Complex64 = (0..plan.n).map(|n| term(kind, 3 * n, z, kappa)).sum();
    let b: Complex64 = (0..plan.m).map(|m| term(kind, 3 * m + 1, z, kappa)).sum();
    a + b
}

/// The four terminant sums that re-expand R_{N,M}.
pub fn correction_sums(
    z: SheetedComplex,
    kappa: Complex64,
    plan: &TruncationPlan,
    derivative: bool,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    plan.validate()?;
    check_sector(z)?;
    let (_, ck) = family(derivative);
    let nu = z.to_c64() - kappa;
    let em = (-2.0 * PI * I * nu).exp() / 3f64.sqrt();
    let ep = (2.0 * PI * I * nu).exp() / 3f64.sqrt();
    let w_minus = z.scale(2.0 * PI).rotate(-PI / 2.0);
    let w_plus = z.scale(2.0 * PI).rotate(PI / 2.0);
    let cis = |x: f64| Complex64::from_polar(1.0, x);

    // Common factor (2/3π)·6^{(j+1)/3}C_j(κ) sin((j+1)π/3) Γ((j+1)/3)/z^{(j+1)/3}.
    let weight = |j: usize| -> Complex64 {
        let s = sin_third(j as i64 + 1);
        if s == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        2.0 / (3.0 * PI) * s * coeff_value(ck, j, kappa) * scale_factor(j, z)
    };
    let pair = |p: f64| -> Result<(Complex64, Complex64)> {
        let tm = terminant(TerminantQuery::new(p, w_minus)?, cfg)?;
        let tp = terminant(TerminantQuery::new(p, w_plus)?, cfg)?;
        Ok((tm, tp))
    };

    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..plan.k {
        let wk = weight(k);
        if wk == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (tm, tp) = pair(plan.n as f64 - k as f64 / 3.0)?;
        let rot = cis(2.0 * (k as f64 + 1.0) * PI / 3.0);
        total += wk * (I * cis(-PI / 3.0) * em * tm - I * ep * rot * tp);
    }
    for l in 0..plan.l {
        let wl = weight(l);
        if wl == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (tm, tp) = pair(plan.m as f64 - (l as f64 - 1.0) / 3.0)?;
        let rot = cis(2.0 * (l as f64 + 1.0) * PI / 3.0);
        total += wl * (-I * cis(PI / 3.0) * em * tm + I * ep * rot * tp);
    }
    Ok(total)
}

/// The re-expanded approximation to H¹_ν(z), ν = z − κ.
pub fn reexpanded_h1(z: SheetedComplex, kappa: Complex64, plan: &TruncationPlan, cfg: &QuadratureConfig) -> Result<Complex64> {
    Ok(main_sums(z, kappa, plan, false) + correction_sums(z, kappa, plan, false, cfg)?)
}

/// The re-expanded approximation to H¹′_ν(z) (z-derivative at fixed ν).
pub fn reexpanded_h1_prime(
    z: SheetedComplex,
    kappa: Complex64,
    plan: &TruncationPlan,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    Ok(main_sums(z, kappa, plan, true) + correction_sums(z, kappa, plan, true, cfg)?)
}

/// R_{N,M}: everything the two truncated subsequences leave out.
///
/// Inside the sector where the resurgence integral for H¹ holds this is
/// R_{3·min(N,M)} from that integral, corrected by the surplus terms of the
/// longer subsequence; elsewhere it is oracle − main sums.
pub fn plain_remainder(
    z: SheetedComplex,
    kappa: Complex64,
    plan: &TruncationPlan,
    derivative: bool,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    plan.validate()?;
    check_sector(z)?;
    let (kind, _) = family(derivative);
    let base = plan.n.min(plan.m);
    let req = RemainderRequest::new(kind, z, kappa, 3 * base);
    if req.validate().is_ok() {
        let r = remainder_integral(&req, cfg)?;
        let extra_n: Complex64 = (base..plan.n).map(|n| term(kind, 3 * n, z, kappa)).sum();
        let extra_m: Complex64 = (base..plan.m).map(|m| term(kind, 3 * m + 1, z, kappa)).sum();
        return Ok(r - extra_n - extra_m);
    }
    let exact = oracle_value(kind, z.to_c64() - kappa, z, cfg)?;
    Ok(exact - main_sums(z, kappa, plan, derivative))
}

/// R_{N,M,K,L} = R_{N,M} − (terminant corrections).
pub fn hyper_residual(
    z: SheetedComplex,
    kappa: Complex64,
    plan: &TruncationPlan,
    derivative: bool,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    Ok(plain_remainder(z, kappa, plan, derivative, cfg)? - correction_sums(z, kappa, plan, derivative, cfg)?)
}

/// The exponential scale of R_{N,M,K,L}: e^{−2π|z|} for |arg z| ≤ π/2,
/// e^{∓2π Im z} for π/2 ≤ ±arg z ≤ 3π/2, and cosh(2π Im z) on the outer
/// strips.
pub fn residual_scale(z: SheetedComplex) -> f64 {
    let t = z.theta;
    let im = z.to_c64().im;
    if t.abs() <= PI / 2.0 {
        (-2.0 * PI * z.r).exp()
    } else if t > 0.0 && t <= 1.5 * PI {
        (-2.0 * PI * im).exp()
    } else if t < 0.0 && t >= -1.5 * PI {
        (2.0 * PI * im).exp()
    } else {
        (2.0 * PI * im).cosh()
    }
}

/// One point of a residual-scaling sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    /// |z|.
    pub r: f64,
    /// The plan used (optimal N = M, K = L).
    pub plan: TruncationPlan,
    /// |R_{N,M,K,L}|.
    pub residual: f64,
    /// |R_{N,M,K,L}| / (exponential scale): the per-point constant times
    /// |z|^{−(K+1)/3}.
    pub scaled: f64,
}

/// Least-squares fit of ln(scaled residual) against ln|z|.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    /// Re-expansion depth K = L.
    pub k: usize,
    /// arg z used for every point.
    pub theta: f64,
    /// Fitted slope; theory predicts −(K + 1)/3.
    pub slope: f64,
    /// The points the fit was made from.
    pub points: Vec<ScalingPoint>,
}

impl ScalingFit {
    /// The predicted slope −(K + 1)/3.
    pub fn predicted(&self) -> f64 {
        -((self.k + 1) as f64) / 3.0
    }
}

/// Measures |R_{N,M,K,L}| at the optimal plan for each |z| and fits the
/// power-law decay left after removing the exponential scale.
pub fn residual_scaling(
    k: usize,
    moduli: &[f64],
    kappa: Complex64,
    theta: f64,
    cfg: &QuadratureConfig,
) -> Result<ScalingFit> {
    if moduli.len() < 2 || moduli.iter().any(|&r| !(r >= 2.0)) {
        return Err(Error::InvalidInput("residual scaling needs at least two moduli, each ≥ 2".into()));
    }
    let points = moduli
        .par_iter()
        .map(|&r| {
            let z = SheetedComplex::new(r, theta)?;
            let plan = optimal_plan(z, k, k);
            let residual = hyper_residual(z, kappa, &plan, false, cfg)?.norm();
            Ok(ScalingPoint { r, plan, residual, scaled: residual / residual_scale(z) })
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = points.iter().map(|p| p.r.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.scaled.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(ScalingFit { k, theta, slope: sxy / sxx, points })
}

/// One row of the Stokes-smoothing profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesRow {
    /// arg z.
    pub theta: f64,
    /// The normalised terminant −T̂_N(−2πiz), N = round(2πr).
    pub terminant: Complex64,
    /// The Berry profile ½ − ½erf((θ + π/2)√(πr)).
    pub erf: f64,
}

/// Tabulates the normalised terminant −e^{2πik/3}T̂_{N−k/3}(−2πiz) for k = 0
/// (the leading emerging term; it does not depend on κ) across arg z, next to
/// the error-function profile.
pub fn stokes_profile(r: f64, thetas: &[f64], cfg: &QuadratureConfig) -> Result<Vec<StokesRow>> {
    if !(r >= 5.0) {
        return Err(Error::InvalidInput(format!("the Stokes profile needs |z| ≥ 5, got {r}")));
    }
    let n = (2.0 * PI * r).round();
    thetas
        .par_iter()
        .map(|&theta| {
            let w = SheetedComplex::new(2.0 * PI * r, theta - PI / 2.0)?;
            let t = terminant(TerminantQuery::new(n, w)?, cfg)?;
            let erf = 0.5 - 0.5 * RealErrorFunctions::erf((theta + PI / 2.0) * (PI * r).sqrt());
            Ok(StokesRow { theta, terminant: -t, erf })
        })
        .collect()
}
