//! Exact remainder integrals of the Nicholson–Debye expansions.
//!
//! Each remainder is a pair of Laplace-type integrals over t > 0 of
//! t^{(N−2)/3}e^{−2πt}·F(±)·H¹_{it±κ}(it) (or H¹′ for derivative kinds), with
//! F a rational function of ρ = (t/z)^{1/3}.  The substitution t = u³ removes
//! the algebraic endpoint behaviour and places the peak of u^N e^{−2πu³} at
//! u = (N/6π)^{1/3}; the kernel comes from [`crate::oracles`].
//!
//! The module also provides the κ = 0 rearrangements (one or two integrals
//! with positive kernels, whose moduli drive the error bounds), the constant
//! C_N(κ) of the algebraic O(|z|^{−(N+1)/3}) estimate, and the two-integral
//! rearrangement used to obtain computable bounds for general κ when
//! N ≡ 1 (mod 6).

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracles::{hankel1_imag_axis, hankel1_prime_imag_axis};
use crate::quad::{integrate_breaks, QuadratureConfig};
use crate::sheet::{FunctionKind, SheetedComplex};

const I: Complex64 = Complex64::new(0.0, 1.0);
const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Denominators smaller than this abort with `SectorViolation`.
const DENOMINATOR_GUARD: f64 = 1e-8;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// One remainder evaluation: R_N for `kind` at z with κ = z − ν.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemainderRequest {
    pub kind: FunctionKind,
    pub z: SheetedComplex,
    pub kappa: Complex64,
    pub n: usize,
}

impl RemainderRequest {
    pub fn new(kind: FunctionKind, z: SheetedComplex, kappa: Complex64, n: usize) -> Self {
        Self { kind, z, kappa, n }
    }

    /// The order ν = z − κ (as a principal-branch complex number).
    pub fn order(&self) -> Complex64 {
        self.z.to_c64() - self.kappa
    }

    /// Checks the hypotheses of the remainder representation.
    pub fn validate(&self) -> Result<()> {
        let n = self.n as f64;
        let re = self.kappa.re.abs();
        if !self.kappa.re.is_finite() || !self.kappa.im.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite kappa {}", self.kappa)));
        }
        if self.kind.is_derivative() {
            if self.n <= 2 {
                return Err(Error::TooSmallN(format!(
                    "derivative remainders need N > 2, got N = {}",
                    self.n
                )));
            }
            if re + 1.0 >= (n + 1.0) / 3.0 {
                return Err(Error::InvalidInput(format!(
                    "|Re kappa| + 1 = {} must be < (N+1)/3 = {}",
                    re + 1.0,
                    (n + 1.0) / 3.0
                )));
            }
        } else if re >= (n + 1.0) / 3.0 {
            return Err(Error::InvalidInput(format!(
                "|Re kappa| = {re} must be < (N+1)/3 = {}",
                (n + 1.0) / 3.0
            )));
        }
        let th = self.z.theta;
        let ok = match self.kind.base() {
            FunctionKind::H1 => th > -FRAC_PI_2 && th < 1.5 * PI,
            FunctionKind::H2 => th > -1.5 * PI && th < FRAC_PI_2,
            _ => {
                let nu = self.order();
                th.abs() < FRAC_PI_2 && nu.re > 0.0
            }
        };
        if !ok {
            return Err(Error::SectorViolation(format!(
                "{} remainder representation does not cover arg z = {th} (order {})",
                self.kind,
                self.order()
            )));
        }
        Ok(())
    }
}

/// H¹_{it+κ}(it) or its z-derivative.
pub fn kernel(t: f64, kappa: Complex64, derivative: bool, cfg: &QuadratureConfig) -> Result<Complex64> {
    if derivative {
        hankel1_prime_imag_axis(t, kappa, cfg)
    } else {
        hankel1_imag_axis(t, kappa, cfg)
    }
}

/// Break points in u for ∫₀^∞ u^p e^{−2πu³}(…) du: dense around the peak
/// (p/6π)^{1/3}, ending where the weight has dropped by e^{−45}.
fn moment_breaks(p: usize) -> Vec<f64> {
    let pf = p as f64;
    let up = if p == 0 { 0.4 } else { (pf / (6.0 * PI)).cbrt() };
    let logw = |u: f64| if p == 0 { -2.0 * PI * u.powi(3) } else { pf * u.ln() - 2.0 * PI * u.powi(3) };
    let peak = logw(up);
    let mut upper = up * 1.1 + 0.1;
    while logw(upper) > peak - 45.0 {
        upper += 0.05 * up.max(0.5);
    }
    let mut b = vec![0.0];
    for f in [0.25, 0.5, 0.75, 1.0, 1.25, 1.5] {
        let x = f * up;
        if x < upper {
            b.push(x);
        }
    }
    let last = *b.last().expect("non-empty");
    for k in 1..=4 {
        b.push(last + (upper - last) * k as f64 / 4.0);
    }
    b
}

/// 3∫₀^∞ u^p e^{−2πu³} g(u) du, i.e. ∫₀^∞ t^{(p−2)/3}e^{−2πt} g(t^{1/3}) dt.
///
/// `alpha` is the exponent of the integrand's algebraic behaviour u^{α−1}
/// at the origin (α > 0).  The first panel [0, b] is mapped by u = b·e^{−s},
/// which turns that endpoint behaviour into exponential decay in s.
/// Errors raised inside `g` abort the integral.
fn moment_integral<G: FnMut(f64) -> Result<Complex64>>(
    p: usize,
    alpha: f64,
    mut g: G,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidInput(format!("integrand is not integrable at t = 0 (exponent {alpha})")));
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let breaks = moment_breaks(p);
    let mut integrand = |u: f64| {
        if failure.borrow().is_some() || u <= 0.0 {
            return c(0.0);
        }
        let w = 3.0 * (p as f64 * u.ln() - 2.0 * PI * u.powi(3)).exp();
        if w == 0.0 {
            return c(0.0);
        }
        match g(u) {
            Ok(v) => v * w,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                c(0.0)
            }
        }
    };
    let b = breaks[1];
    // Stop once (u/b)^α < 1e−17, but never go below t = u³ ≈ 1e−240.
    let s_max = (39.0 / alpha).min(80.0 * std::f64::consts::LN_10 + b.ln());
    let s_breaks: Vec<f64> = [0.0, 0.5, 1.5, 4.0, 10.0, 25.0, 60.0, 150.0]
        .into_iter()
        .filter(|&x| x < s_max)
        .chain(std::iter::once(s_max))
        .collect();
    let head = integrate_breaks(
        |s| {
            let u = b * (-s).exp();
            integrand(u) * u
        },
        &s_breaks,
        cfg,
    );
    let tail = integrate_breaks(&mut integrand, &breaks[1..], cfg);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(head?.value + tail?.value)
}

/// Exponent α of the u^{α−1} endpoint behaviour for weight u^p and a
/// kernel of order it ± κ.
fn endpoint_alpha(p: usize, kappa: Complex64, derivative: bool) -> f64 {
    p as f64 + 1.0 - 3.0 * kappa.re.abs() - if derivative { 3.0 } else { 0.0 }
}

fn guarded_inv(d: Complex64) -> Result<Complex64> {
    if d.norm() < DENOMINATOR_GUARD {
        return Err(Error::SectorViolation(format!(
            "denominator {d:e} vanishes on the integration path (Stokes direction)"
        )));
    }
    Ok(d.inv())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    H,
    J,
    Y,
}

/// The rational factors F₊(ρ), F₋(ρ) of the (+κ) and (−κ) integrals.
fn f_pair(shape: Shape, n: usize, rho: Complex64) -> Result<(Complex64, Complex64)> {
    let omega = Complex64::from_polar(1.0, PI / 3.0);
    let e = Complex64::from_polar(1.0, (n + 1) as f64 * PI / 3.0);
    let s = if n % 2 == 0 { -1.0 } else { 1.0 }; // e^{(N+1)πi}
    let ir = I * rho;
    let d1 = guarded_inv(1.0 + ir * omega)?;
    let d3 = guarded_inv(1.0 - ir * omega)?;
    Ok(match shape {
        Shape::H => (e * d1 - s * guarded_inv(1.0 - ir)?, e * d3 - s * guarded_inv(1.0 + ir)?),
        Shape::J => {
            let d5 = guarded_inv(1.0 + ir * omega.conj())?;
            let d6 = guarded_inv(1.0 - ir * omega.conj())?;
            (e * d1 - e.conj() * d5, e * d3 - e.conj() * d6)
        }
        Shape::Y => {
            let d5 = guarded_inv(1.0 + ir * omega.conj())?;
            let d6 = guarded_inv(1.0 - ir * omega.conj())?;
            (
                e * d1 + e.conj() * d5 - 2.0 * s * guarded_inv(1.0 - ir)?,
                e * d3 + e.conj() * d6 - 2.0 * s * guarded_inv(1.0 + ir)?,
            )
        }
    })
}

/// The two-integral representation for the H¹/J/Y shape at z with κ.
fn core_remainder(
    shape: Shape,
    derivative: bool,
    z: SheetedComplex,
    kappa: Complex64,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let d = match shape {
        Shape::H => c(6.0 * PI),
        Shape::J => c(12.0 * PI),
        Shape::Y => Complex64::new(0.0, 12.0 * PI),
    };
    let phase = 2.0 * PI * kappa - c(PI * n as f64 / 2.0);
    let zpow = z.powf((n + 1) as f64 / 3.0);
    let mut p_plus = (I * phase).exp() / (d * zpow);
    let p_minus = (-I * phase).exp() / (d * zpow);
    if derivative {
        p_plus = -p_plus;
    }
    let zc = z.powf(-1.0 / 3.0);
    moment_integral(
        n,
        endpoint_alpha(n, kappa, derivative),
        |u| {
            let t = u * u * u;
            let (fp, fm) = f_pair(shape, n, zc * u)?;
            let kp = kernel(t, kappa, derivative, cfg)?;
            let km = kernel(t, -kappa, derivative, cfg)?;
            Ok(p_plus * fp * kp + p_minus * fm * km)
        },
        cfg,
    )
}

/// R_N for any of the eight kinds from its integral representation.
///
/// H² and H²′ use R^{(H)} at ze^{πi} with −κ, with signs − and +
/// respectively.
pub fn remainder_integral(req: &RemainderRequest, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    req.validate()?;
    let d = req.kind.is_derivative();
    match req.kind.base() {
        FunctionKind::H1 => core_remainder(Shape::H, d, req.z, req.kappa, req.n, cfg),
        FunctionKind::H2 => {
            let r = core_remainder(Shape::H, d, req.z.rotate(PI), -req.kappa, req.n, cfg)?;
            Ok(if d { r } else { -r })
        }
        FunctionKind::J => core_remainder(Shape::J, d, req.z, req.kappa, req.n, cfg),
        FunctionKind::Y => core_remainder(Shape::Y, d, req.z, req.kappa, req.n, cfg),
        _ => unreachable!("base() is undifferentiated"),
    }
}

// ---------------------------------------------------------------------------
// κ = 0 rearrangements
// ---------------------------------------------------------------------------

/// Rational factor of a κ = 0 integrand, as a function of q = (t/ν)^{1/3}.
#[derive(Clone, Copy, Debug)]
enum EqualFactor {
    /// e^{iφ}/((1 + q²e^{2πi/3})(1 + q²)) with the stated phase.
    Hankel(f64),
    /// (1 − q⁴)/(1 + q⁶)
    OneMinusQ4,
    /// (1 + q⁴)/(1 + q⁶)
    OnePlusQ4,
    /// (1 + q²)/(1 + q⁶)
    OnePlusQ2,
    /// (1 − q²)/(1 + q⁶)
    OneMinusQ2,
}

impl EqualFactor {
    fn eval(self, q: Complex64) -> Result<Complex64> {
        let q2 = q * q;
        match self {
            EqualFactor::Hankel(phi) => {
                let den = (1.0 + q2 * Complex64::from_polar(1.0, 2.0 * PI / 3.0)) * (1.0 + q2);
                Ok(Complex64::from_polar(1.0, phi) * guarded_inv(den)?)
            }
            other => {
                let inv = guarded_inv(1.0 + q2 * q2 * q2)?;
                let num = match other {
                    EqualFactor::OneMinusQ4 => 1.0 - q2 * q2,
                    EqualFactor::OnePlusQ4 => 1.0 + q2 * q2,
                    EqualFactor::OnePlusQ2 => 1.0 + q2,
                    EqualFactor::OneMinusQ2 => 1.0 - q2,
                    EqualFactor::Hankel(_) => unreachable!(),
                };
                Ok(num * inv)
            }
        }
    }
}

/// One term  coef · ν^{−k/3} ∫ t^{(p−2)/3}e^{−2πt} factor(q) kernel dt.
struct EqualTerm {
    coef: f64,
    k: usize,
    p: usize,
    factor: EqualFactor,
}

fn equal_order_terms(kind: FunctionKind, n: usize) -> Vec<EqualTerm> {
    let s = if n % 2 == 0 { 1.0 } else { -1.0 };
    let h = 1.0 / (SQRT3 * PI);
    let j = 1.0 / (2.0 * SQRT3 * PI);
    let y = 1.0 / (2.0 * PI);
    let t = |coef: f64, k: usize, p: usize, factor: EqualFactor| EqualTerm { coef, k, p, factor };
    let m = n % 3;
    use EqualFactor::*;
    match kind.base() {
        FunctionKind::H1 | FunctionKind::H2 if !kind.is_derivative() => {
            let e2 = 2.0 * (2 * n + 1) as f64 * PI / 3.0;
            let g1 = Hankel(e2);
            let g2 = Hankel(e2 + PI / 3.0);
            match m {
                0 => vec![t(-s * h, 2 * n + 1, 2 * n, g1), t(-s * h, 2 * n + 3, 2 * n + 2, g2)],
                1 => vec![t(s * h, 2 * n + 3, 2 * n + 2, g2)],
                _ => vec![t(s * h, 2 * n + 1, 2 * n, g1)],
            }
        }
        FunctionKind::H1 | FunctionKind::H2 => {
            let e3 = 2.0 * (2 * n + 2) as f64 * PI / 3.0;
            let g1 = Hankel(e3);
            let g2 = Hankel(e3 + PI / 3.0);
            match m {
                0 => vec![t(s * h, 2 * n + 2, 2 * n + 1, g1)],
                1 => vec![t(-s * h, 2 * n + 2, 2 * n + 1, g1), t(-s * h, 2 * n + 4, 2 * n + 3, g2)],
                _ => vec![t(s * h, 2 * n + 4, 2 * n + 3, g2)],
            }
        }
        FunctionKind::J if !kind.is_derivative() => match m {
            0 => vec![t(s * j, 2 * n + 1, 2 * n, OneMinusQ4)],
            1 => vec![t(s * j, 2 * n + 3, 2 * n + 2, OnePlusQ2)],
            _ => vec![t(-s * j, 2 * n + 1, 2 * n, OnePlusQ2)],
        },
        FunctionKind::Y if !kind.is_derivative() => match m {
            0 => vec![t(-s * y, 2 * n + 1, 2 * n, OnePlusQ4)],
            1 => vec![t(s * y, 2 * n + 3, 2 * n + 2, OneMinusQ2)],
            _ => vec![t(-s * y, 2 * n + 1, 2 * n, OneMinusQ2)],
        },
        FunctionKind::J => match m {
            0 => vec![t(-s * j, 2 * n + 2, 2 * n + 1, OnePlusQ2)],
            1 => vec![t(s * j, 2 * n + 2, 2 * n + 1, OneMinusQ4)],
            _ => vec![t(s * j, 2 * n + 4, 2 * n + 3, OnePlusQ2)],
        },
        _ => match m {
            0 => vec![t(-s * y, 2 * n + 2, 2 * n + 1, OneMinusQ2)],
            1 => vec![t(-s * y, 2 * n + 2, 2 * n + 1, OnePlusQ4)],
            _ => vec![t(s * y, 2 * n + 4, 2 * n + 3, OneMinusQ2)],
        },
    }
}

/// The κ = 0 remainder in the reindexed notation: R_{2N}(ν, 0) for the
/// functions and R_{2N+1}(ν, 0) for the derivatives, from the rearranged
/// one- or two-integral forms whose kernels iH¹_{it}(it) and H¹′_{it}(it)
/// are positive.
pub fn remainder_equal_order(kind: FunctionKind, nu: SheetedComplex, n: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    let d = kind.is_derivative();
    if d && n == 0 {
        return Err(Error::TooSmallN("equal-order derivative remainders need N >= 1".into()));
    }
    match kind.base() {
        FunctionKind::H1 => {}
        FunctionKind::H2 => {
            let r = remainder_equal_order(if d { FunctionKind::H1p } else { FunctionKind::H1 }, nu.rotate(PI), n, cfg)?;
            return Ok(if d { r } else { -r });
        }
        _ => {}
    }
    let th = nu.theta;
    let ok = if kind.is_hankel() { th > -FRAC_PI_2 && th < 1.5 * PI } else { th.abs() < FRAC_PI_2 };
    if !ok {
        return Err(Error::SectorViolation(format!("{kind} equal-order representation does not cover arg nu = {th}")));
    }
    let terms = equal_order_terms(kind, n);
    let pmin = terms.iter().map(|t| t.p).min().expect("at least one term");
    let coefs: Vec<Complex64> = terms.iter().map(|t| t.coef * nu.powf(-(t.k as f64) / 3.0)).collect();
    let nc = nu.powf(-1.0 / 3.0);
    moment_integral(
        pmin,
        endpoint_alpha(pmin, c(0.0), d),
        |u| {
            let t = u * u * u;
            let q = nc * u;
            let ker = if d { kernel(t, c(0.0), true, cfg)? } else { I * kernel(t, c(0.0), false, cfg)? };
            let mut acc = c(0.0);
            for (term, coef) in terms.iter().zip(&coefs) {
                acc += coef * term.factor.eval(q)? * u.powi((term.p - pmin) as i32);
            }
            Ok(acc * ker)
        },
        cfg,
    )
}

// ---------------------------------------------------------------------------
// Algebraic constants and general-κ bounds
// ---------------------------------------------------------------------------

/// C_N(κ) = (2|e^{2πiκ}|/3π)∫t^{(N−2)/3}e^{−2πt}|H¹_{it+κ}(it)|dt
///        + (|e^{−2πiκ}|/3π)∫t^{(N−2)/3}e^{−2πt}|H¹_{it−κ}(it)|dt,
/// so that |R_N^{(H)}(z, κ)| ≤ C_N(κ)/|z|^{(N+1)/3} for 0 ≤ arg z ≤ π.
pub fn uniform_constant(n: usize, kappa: Complex64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if kappa.re.abs() >= (n as f64 + 1.0) / 3.0 {
        return Err(Error::InvalidInput(format!("|Re kappa| must be < (N+1)/3 for N = {n}")));
    }
    let ep = (-2.0 * PI * kappa.im).exp();
    let em = (2.0 * PI * kappa.im).exp();
    let v = moment_integral(
        n,
        endpoint_alpha(n, kappa, false),
        |u| {
            let t = u * u * u;
            let a = kernel(t, kappa, false, cfg)?.norm();
            let b = kernel(t, -kappa, false, cfg)?.norm();
            Ok(c(2.0 * ep * a + em * b))
        },
        cfg,
    )?;
    Ok(v.re / (3.0 * PI))
}

/// The trivial estimate of |R_N^{(H)}(z, κ)| that keeps |F±| inside the
/// integrals; it sits between |R_N^{(H)}| and C_N(κ)/|z|^{(N+1)/3}.
pub fn uniform_majorant(z: SheetedComplex, kappa: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let ep = (-2.0 * PI * kappa.im).exp();
    let em = (2.0 * PI * kappa.im).exp();
    let zc = z.powf(-1.0 / 3.0);
    let v = moment_integral(
        n,
        endpoint_alpha(n, kappa, false),
        |u| {
            let t = u * u * u;
            let (fp, fm) = f_pair(Shape::H, n, zc * u)?;
            let a = kernel(t, kappa, false, cfg)?.norm();
            let b = kernel(t, -kappa, false, cfg)?.norm();
            Ok(c(ep * fp.norm() * a + em * fm.norm() * b))
        },
        cfg,
    )?;
    Ok(v.re / (6.0 * PI * z.r.powf((n as f64 + 1.0) / 3.0)))
}

/// |sec θ| on (−π/2, 0) ∪ (π, 3π/2), 1 on [0, π]; the sector factor
/// shared by the H¹ bounds.
pub fn hankel_sector_factor(theta: f64) -> Result<f64> {
    if (0.0..=PI).contains(&theta) {
        Ok(1.0)
    } else if (theta > -FRAC_PI_2 && theta < 0.0) || (theta > PI && theta < 1.5 * PI) {
        Ok(theta.cos().abs().recip())
    } else {
        Err(Error::SectorViolation(format!("sector factor needs -pi/2 < theta < 3pi/2, got {theta}")))
    }
}

fn check_general_kappa(z: SheetedComplex, kappa: Complex64, n: usize) -> Result<()> {
    if n % 6 != 1 {
        return Err(Error::InvalidInput(format!("the two-integral rearrangement needs N = 1 mod 6, got {n}")));
    }
    if kappa.re.abs() >= (n as f64 + 1.0) / 3.0 {
        return Err(Error::InvalidInput(format!("|Re kappa| must be < (N+1)/3 for N = {n}")));
    }
    if !(z.theta > -FRAC_PI_2 && z.theta < 1.5 * PI) {
        return Err(Error::SectorViolation(format!("needs -pi/2 < arg z < 3pi/2, got {}", z.theta)));
    }
    Ok(())
}

/// R_N^{(H)}(z, κ) for N ≡ 1 (mod 6) from the rearranged form
///
/// ```text
///   i^{N+1}/(2√3π z^{(N+1)/3}) ∫ t^{(N−2)/3}e^{−2πt} e^{2(N+1)πi/3}/Q (e^{2πiκ}H₊ − e^{−2πiκ}H₋) dt
/// + i^N   /(2√3π z^{(N+4)/3}) ∫ t^{(N+1)/3}e^{−2πt} e^{2(N+1)πi/3}/Q (e^{2πiκ}H₊ + e^{−2πiκ}H₋) dt,
/// ```
///
/// Q = (1 + (t/z)^{2/3}e^{2πi/3})(1 + (t/z)^{2/3}), H± = H¹_{it±κ}(it).
pub fn remainder_general_kappa_rearranged(
    z: SheetedComplex,
    kappa: Complex64,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    cfg.validate()?;
    check_general_kappa(z, kappa, n)?;
    let ipow = |k: usize| I.powu((k % 4) as u32);
    let a = ipow(n + 1) / (2.0 * SQRT3 * PI * z.powf((n + 1) as f64 / 3.0));
    let b = ipow(n) / (2.0 * SQRT3 * PI * z.powf((n + 4) as f64 / 3.0));
    let e = Complex64::from_polar(1.0, 2.0 * (n + 1) as f64 * PI / 3.0);
    let (wp, wm) = ((2.0 * PI * I * kappa).exp(), (-2.0 * PI * I * kappa).exp());
    let zc = z.powf(-1.0 / 3.0);
    moment_integral(
        n,
        endpoint_alpha(n, kappa, false),
        |u| {
            let t = u * u * u;
            let q2 = (zc * u) * (zc * u);
            let qinv = guarded_inv((1.0 + q2 * Complex64::from_polar(1.0, 2.0 * PI / 3.0)) * (1.0 + q2))?;
            let hp = wp * kernel(t, kappa, false, cfg)?;
            let hm = wm * kernel(t, -kappa, false, cfg)?;
            Ok(e * qinv * (a * (hp - hm) + b * u * u * u * (hp + hm)))
        },
        cfg,
    )
}

/// The two z-independent integrals of the general-κ bound:
/// (∫t^{(N−2)/3}e^{−2πt}|e^{2πiκ}H₊ − e^{−2πiκ}H₋|dt, ∫t^{(N+1)/3}e^{−2πt}|e^{2πiκ}H₊ + e^{−2πiκ}H₋|dt).
pub fn general_kappa_bound_integrals(kappa: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let (wp, wm) = ((2.0 * PI * I * kappa).exp(), (-2.0 * PI * I * kappa).exp());
    let first = moment_integral(
        n,
        endpoint_alpha(n, kappa, false),
        |u| {
            let t = u * u * u;
            let hp = wp * kernel(t, kappa, false, cfg)?;
            let hm = wm * kernel(t, -kappa, false, cfg)?;
            Ok(c((hp - hm).norm()))
        },
        cfg,
    )?;
    let second = moment_integral(
        n + 3,
        endpoint_alpha(n + 3, kappa, false),
        |u| {
            let t = u * u * u;
            let hp = wp * kernel(t, kappa, false, cfg)?;
            let hm = wm * kernel(t, -kappa, false, cfg)?;
            Ok(c((hp + hm).norm()))
        },
        cfg,
    )?;
    Ok((first.re, second.re))
}

/// Computable bound for |R_N^{(H)}(z, κ)|, N ≡ 1 (mod 6), −π/2 < θ < 3π/2:
/// the absolute-value version of the rearranged form times the sector
/// factor |sec θ| (θ ∈ (−π/2, 0) ∪ (π, 3π/2)) or 1 (θ ∈ [0, π]).
pub fn computable_bound_general_kappa(z: SheetedComplex, kappa: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    check_general_kappa(z, kappa, n)?;
    let (i1, i2) = general_kappa_bound_integrals(kappa, n, cfg)?;
    let nf = n as f64;
    let v = i1 / (2.0 * SQRT3 * PI * z.r.powf((nf + 1.0) / 3.0)) + i2 / (2.0 * SQRT3 * PI * z.r.powf((nf + 4.0) / 3.0));
    Ok(v * hankel_sector_factor(z.theta)?)
}
