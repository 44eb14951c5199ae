//! Explicit error bounds for the κ = 0 (ν = z) expansions.
//!
//! Every bound is a sum of one or two components of the form
//!
//! ```text
//!   factor(θ) · c · 6^p |C_m(0)| Γ(p) / |ν|^p,    p = (m + 1)/3,
//! ```
//!
//! where C_m is B_m (functions) or D_m (derivatives) and the family constant
//! c is (2/3π)(√3/2) for the Hankel kinds, (1/3π)(√3/2) for J, J′ and
//! (2/3π)(3/4) for Y, Y′.  Which indices m appear depends only on the kind and
//! on N mod 3; the sector class decides the factor:
//!
//! * central — |sec θ| or 1 (Hankel kinds), |csc 2θ| or 1 (and for two
//!   components 0) for the others;
//! * rotated — the Meijer factor |sec(θ − φ)|/cos^p φ (Hankel kinds) or
//!   |csc 2(θ − φ)|/cos^p φ, with φ the minimiser for that p;
//! * near-Stokes — √(e/3·(m + 5/2)) (Hankel kinds) or ½√(e/3·(m + 11/2)).
//!
//! The Meijer minimisers satisfy p tan φ = tan(θ − φ), i.e.
//! sin(θ − 2φ) = ((p − 1)/(p + 1)) sin θ, for the secant family, and
//! 2 cot 2(θ − φ) + p tan φ = 0, i.e. (p + 2)cos(3φ − 2θ) = (p − 2)cos(φ − 2θ),
//! for the cosecant family.  The module also checks the elementary
//! inequalities behind the sector factors and the real-axis sign results for
//! the derivative expansions.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{coeff_at_zero, CoeffKind};
use crate::oracles::{ln_gamma, oracle_value};
use crate::quad::QuadratureConfig;
use crate::remainders::remainder_equal_order;
use crate::series::partial_sum_equal_order;
use crate::sheet::{FunctionKind, SheetedComplex};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// How the angular factor of a bound is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectorClass {
    /// Direct estimate of the rational factor along the real t-axis.
    Central,
    /// Rotated integration path with the Meijer-optimal angle.
    Rotated,
    /// Simplified √N-type factor valid up to the Stokes line.
    NearStokes,
}

impl SectorClass {
    pub const ALL: [SectorClass; 3] = [SectorClass::Central, SectorClass::Rotated, SectorClass::NearStokes];

    pub fn name(self) -> &'static str {
        match self {
            SectorClass::Central => "central",
            SectorClass::Rotated => "rotated",
            SectorClass::NearStokes => "near_stokes",
        }
    }
}

/// A bound request: kind, reindexed truncation N and sector class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundSpec {
    pub kind: FunctionKind,
    pub n: usize,
    pub class: SectorClass,
}

impl BoundSpec {
    pub fn new(kind: FunctionKind, n: usize, class: SectorClass) -> Self {
        Self { kind, n, class }
    }

    /// N mod 3, which selects the case table.
    pub fn residue(&self) -> usize {
        self.n % 3
    }

    /// Central class when θ lies in the central sector, rotated otherwise.
    pub fn for_argument(kind: FunctionKind, n: usize, theta: f64) -> Self {
        let th = hankel_frame(kind, theta);
        let central = if kind.is_hankel() { th > -FRAC_PI_2 && th < 1.5 * PI } else { th.abs() < FRAC_PI_2 };
        Self::new(kind, n, if central { SectorClass::Central } else { SectorClass::Rotated })
    }
}

/// The three families of sector bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Hankel,
    J,
    Y,
}

fn family(kind: FunctionKind) -> Family {
    match kind.base() {
        FunctionKind::H1 | FunctionKind::H2 => Family::Hankel,
        FunctionKind::J => Family::J,
        FunctionKind::Y => Family::Y,
        _ => unreachable!("base() is undifferentiated"),
    }
}

fn family_constant(f: Family) -> f64 {
    match f {
        Family::Hankel => 2.0 / (3.0 * PI) * SQRT3 / 2.0,
        Family::J => 1.0 / (3.0 * PI) * SQRT3 / 2.0,
        Family::Y => 2.0 / (3.0 * PI) * 0.75,
    }
}

/// H² kinds are bounded through R^{(H)}(νe^{πi}).
fn hankel_frame(kind: FunctionKind, theta: f64) -> f64 {
    if kind.base() == FunctionKind::H2 {
        theta + PI
    } else {
        theta
    }
}

/// One component of a bound: coefficient index m, and whether its central
/// factor vanishes for |θ| ≤ π/4 (the "0 otherwise" cases).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Component {
    pub m: usize,
    pub vanishes_centrally: bool,
}

impl Component {
    fn power(self) -> f64 {
        (self.m + 1) as f64 / 3.0
    }
}

/// The components for (kind, N).  Exhaustive over the family and N mod 3.
pub fn components(kind: FunctionKind, n: usize) -> Vec<Component> {
    let c = |m: usize| Component { m, vanishes_centrally: false };
    let c0 = |m: usize| Component { m, vanishes_centrally: true };
    let d = kind.is_derivative();
    match (family(kind), d, n % 3) {
        (Family::Hankel, false, 0) => vec![c(2 * n), c(2 * n + 2)],
        (Family::Hankel, false, 1) => vec![c(2 * n + 2)],
        (Family::Hankel, false, _) => vec![c(2 * n)],
        (Family::Hankel, true, 0) => vec![c(2 * n + 1)],
        (Family::Hankel, true, 1) => vec![c(2 * n + 1), c(2 * n + 3)],
        (Family::Hankel, true, _) => vec![c(2 * n + 3)],
        (Family::J, false, 0) => vec![c(2 * n), c0(2 * n + 4)],
        (Family::J, false, 1) => vec![c(2 * n + 2), c(2 * n + 4)],
        (Family::J, false, _) => vec![c(2 * n), c(2 * n + 2)],
        (Family::Y, false, 0) => vec![c(2 * n), c(2 * n + 4)],
        (Family::Y, false, 1) => vec![c(2 * n + 2)],
        (Family::Y, false, _) => vec![c(2 * n)],
        (Family::J, true, 0) => vec![c(2 * n + 1), c(2 * n + 3)],
        (Family::J, true, 1) => vec![c(2 * n + 1), c0(2 * n + 5)],
        (Family::J, true, _) => vec![c(2 * n + 3), c(2 * n + 5)],
        (Family::Y, true, 0) => vec![c(2 * n + 1)],
        (Family::Y, true, 1) => vec![c(2 * n + 1), c(2 * n + 5)],
        (Family::Y, true, _) => vec![c(2 * n + 3)],
    }
}

/// c·6^p|C_m(0)|Γ(p)/|ν|^p, evaluated in logarithms.
pub fn component_magnitude(kind: FunctionKind, m: usize, nu_abs: f64) -> f64 {
    let coeff = coeff_at_zero(if kind.is_derivative() { CoeffKind::D } else { CoeffKind::B }, m).abs();
    if coeff == 0.0 {
        return 0.0;
    }
    let p = (m + 1) as f64 / 3.0;
    let ln = p * 6f64.ln() + coeff.ln() + ln_gamma(Complex64::new(p, 0.0)).re - p * nu_abs.ln();
    family_constant(family(kind)) * ln.exp()
}

// ---------------------------------------------------------------------------
// Elementary sector factors and inequalities
// ---------------------------------------------------------------------------

/// |sec ϑ| on (−π/2, 0) ∪ (π, 3π/2), 1 on [0, π].
pub fn sec_factor(theta: f64) -> Option<f64> {
    if (0.0..=PI).contains(&theta) {
        Some(1.0)
    } else if (theta > -FRAC_PI_2 && theta < 0.0) || (theta > PI && theta < 1.5 * PI) {
        Some(theta.cos().abs().recip())
    } else {
        None
    }
}

/// |csc 2ϑ| for π/4 < |ϑ| < π/2, 1 for |ϑ| ≤ π/4.
pub fn csc_factor(theta: f64) -> Option<f64> {
    let a = theta.abs();
    if a <= FRAC_PI_4 {
        Some(1.0)
    } else if a < FRAC_PI_2 {
        Some((2.0 * theta).sin().abs().recip())
    } else {
        None
    }
}

/// Left and right sides of 1/(|1 + re^{−2iϑ/3}e^{2πi/3}||1 + re^{−2iϑ/3}|) ≤ sec-factor(ϑ).
pub fn inequality_sec(r: f64, theta: f64) -> Option<(f64, f64)> {
    let w = Complex64::from_polar(r, -2.0 * theta / 3.0);
    let lhs = 1.0 / ((1.0 + w * Complex64::from_polar(1.0, 2.0 * PI / 3.0)).norm() * (1.0 + w).norm());
    sec_factor(theta).map(|rhs| (lhs, rhs))
}

/// Left and right sides of 1/|1 + re^{−2iϑ}| ≤ csc-factor(ϑ).
pub fn inequality_csc(r: f64, theta: f64) -> Option<(f64, f64)> {
    let lhs = 1.0 / (1.0 + Complex64::from_polar(r, -2.0 * theta)).norm();
    csc_factor(theta).map(|rhs| (lhs, rhs))
}

/// Left and right sides of |(1 − r^{1/3}e^{−2iϑ/3})/(1 + re^{−2iϑ})| ≤ csc-factor(ϑ).
pub fn inequality_csc_numerator(r: f64, theta: f64) -> Option<(f64, f64)> {
    let num = 1.0 - Complex64::from_polar(r.cbrt(), -2.0 * theta / 3.0);
    let lhs = num.norm() / (1.0 + Complex64::from_polar(r, -2.0 * theta)).norm();
    csc_factor(theta).map(|rhs| (lhs, rhs))
}

// ---------------------------------------------------------------------------
// Meijer minimising angles
// ---------------------------------------------------------------------------

/// The secant-family minimisers, named after the power they serve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SinVariant {
    /// sin(θ − 2φ) = N/(N+3)·sin θ  (power (2N+3)/3).
    Primary,
    /// sin(θ − 2φ) = (N−1)/(N+2)·sin θ  (power (2N+1)/3).
    Secondary,
    /// sin(θ − 2φ) = (2N−1)/(2N+5)·sin θ  (power (2N+2)/3).
    DerivativeFirst,
    /// sin(θ − 2φ) = (2N+1)/(2N+7)·sin θ  (power (2N+4)/3).
    DerivativeSecond,
}

impl SinVariant {
    pub fn power(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            SinVariant::Primary => (2.0 * n + 3.0) / 3.0,
            SinVariant::Secondary => (2.0 * n + 1.0) / 3.0,
            SinVariant::DerivativeFirst => (2.0 * n + 2.0) / 3.0,
            SinVariant::DerivativeSecond => (2.0 * n + 4.0) / 3.0,
        }
    }
}

/// The cosecant-family minimisers (p = (2N+1)/3, (2N+3)/3, (2N+5)/3 for J, Y
/// and (2N+2)/3, (2N+4)/3, (2N+6)/3 for J′, Y′).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosVariant {
    First,
    Second,
    Third,
    DerivativeFirst,
    DerivativeSecond,
    DerivativeThird,
}

impl CosVariant {
    pub const ALL: [CosVariant; 6] = [
        CosVariant::First,
        CosVariant::Second,
        CosVariant::Third,
        CosVariant::DerivativeFirst,
        CosVariant::DerivativeSecond,
        CosVariant::DerivativeThird,
    ];

    pub fn power(self, n: usize) -> f64 {
        let n = n as f64;
        let k = match self {
            CosVariant::First => 1.0,
            CosVariant::Second => 3.0,
            CosVariant::Third => 5.0,
            CosVariant::DerivativeFirst => 2.0,
            CosVariant::DerivativeSecond => 4.0,
            CosVariant::DerivativeThird => 6.0,
        };
        (2.0 * n + k) / 3.0
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, what: &str) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket(format!("{what}: no sign change on ({a}, {b})")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a) < 1e-15 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Bracket for the secant-family minimiser, or `None` outside the four ranges.
pub fn sin_bracket(theta: f64) -> Option<(f64, f64)> {
    if (1.5 * PI..2.0 * PI).contains(&theta) {
        Some((theta - 1.5 * PI, FRAC_PI_2))
    } else if theta > PI && theta < 1.5 * PI {
        Some((0.0, theta - PI))
    } else if theta > -PI && theta <= -FRAC_PI_2 {
        Some((-FRAC_PI_2, FRAC_PI_2 + theta))
    } else if theta > -FRAC_PI_2 && theta < 0.0 {
        Some((theta, 0.0))
    } else {
        None
    }
}

/// Bracket for the cosecant-family minimiser, or `None` outside the six ranges.
pub fn cos_bracket(theta: f64) -> Option<(f64, f64)> {
    if (0.75 * PI..PI).contains(&theta) {
        Some((theta - FRAC_PI_2, FRAC_PI_2))
    } else if (FRAC_PI_2..0.75 * PI).contains(&theta) {
        Some((theta - FRAC_PI_2, theta - FRAC_PI_4))
    } else if theta > FRAC_PI_4 && theta < FRAC_PI_2 {
        Some((0.0, theta - FRAC_PI_4))
    } else if theta > -PI && theta <= -0.75 * PI {
        Some((-FRAC_PI_2, FRAC_PI_2 + theta))
    } else if theta > -0.75 * PI && theta <= -FRAC_PI_2 {
        Some((FRAC_PI_4 + theta, FRAC_PI_2 + theta))
    } else if theta > -FRAC_PI_2 && theta < -FRAC_PI_4 {
        Some((FRAC_PI_4 + theta, 0.0))
    } else {
        None
    }
}

/// Root of sin(θ − 2φ) = ((p−1)/(p+1)) sin θ inside the stated bracket.
pub fn meijer_sin_root(p: f64, theta: f64) -> Result<f64> {
    let (a, b) = sin_bracket(theta).ok_or_else(|| Error::NoBracket(format!("theta = {theta} is outside every sine bracket")))?;
    let r = (p - 1.0) / (p + 1.0);
    bisect(|phi| (theta - 2.0 * phi).sin() - r * theta.sin(), a, b, "sine equation")
}

/// Root of (p+2)cos(3φ − 2θ) = (p−2)cos(φ − 2θ) inside the stated bracket.
pub fn meijer_cos_root(p: f64, theta: f64) -> Result<f64> {
    let (a, b) = cos_bracket(theta).ok_or_else(|| Error::NoBracket(format!("theta = {theta} is outside every cosine bracket")))?;
    bisect(
        |phi| (p + 2.0) * (3.0 * phi - 2.0 * theta).cos() - (p - 2.0) * (phi - 2.0 * theta).cos(),
        a,
        b,
        "cosine equation",
    )
}

/// Minimising angle for a named secant-family equation.
pub fn meijer_angle_sin(variant: SinVariant, theta: f64, n: usize) -> Result<f64> {
    meijer_sin_root(variant.power(n), theta)
}

/// Minimising angle for a named cosecant-family equation.
pub fn meijer_angle_cos(variant: CosVariant, theta: f64, n: usize) -> Result<f64> {
    meijer_cos_root(variant.power(n), theta)
}

/// |sec(θ − φ)|/cos^p φ at the Meijer angle.
pub fn meijer_sec_factor(p: f64, theta: f64) -> Result<f64> {
    let phi = meijer_sin_root(p, theta)?;
    Ok((theta - phi).cos().abs().recip() / phi.cos().powf(p))
}

/// |csc 2(θ − φ)|/cos^p φ at the Meijer angle.
pub fn meijer_csc_factor(p: f64, theta: f64) -> Result<f64> {
    let phi = meijer_cos_root(p, theta)?;
    Ok((2.0 * (theta - phi)).sin().abs().recip() / phi.cos().powf(p))
}

// ---------------------------------------------------------------------------
// The bounds
// ---------------------------------------------------------------------------

fn sector_error(spec: &BoundSpec, theta: f64) -> Error {
    Error::SectorViolation(format!(
        "{} {} bound (N = {}) does not apply at arg nu = {theta}",
        spec.kind,
        spec.class.name(),
        spec.n
    ))
}

fn component_factor(spec: &BoundSpec, comp: Component, theta: f64) -> Result<f64> {
    let fam = family(spec.kind);
    let th = hankel_frame(spec.kind, theta);
    let p = comp.power();
    match (spec.class, fam) {
        (SectorClass::Central, Family::Hankel) => sec_factor(th).ok_or_else(|| sector_error(spec, theta)),
        (SectorClass::Central, Family::J | Family::Y) => {
            let f = csc_factor(th).ok_or_else(|| sector_error(spec, theta))?;
            Ok(if comp.vanishes_centrally && th.abs() <= FRAC_PI_4 { 0.0 } else { f })
        }
        (SectorClass::Rotated, Family::Hankel) => {
            if !((th > -PI && th < 0.0) || (th > PI && th < 2.0 * PI)) {
                return Err(sector_error(spec, theta));
            }
            meijer_sec_factor(p, th)
        }
        (SectorClass::Rotated, Family::J | Family::Y) => {
            if !(th.abs() > FRAC_PI_4 && th.abs() < PI) {
                return Err(sector_error(spec, theta));
            }
            meijer_csc_factor(p, th)
        }
        (SectorClass::NearStokes, Family::Hankel) => {
            if !((th > PI && th <= 1.5 * PI) || (th >= -FRAC_PI_2 && th < 0.0)) {
                return Err(sector_error(spec, theta));
            }
            // For N = 0 the first term needs m + 9/2 instead of m + 5/2.
            let shift = if spec.n == 0 && !spec.kind.is_derivative() && comp.m == 0 { 4.5 } else { 2.5 };
            Ok((E / 3.0 * (comp.m as f64 + shift)).sqrt())
        }
        (SectorClass::NearStokes, Family::J | Family::Y) => {
            if !(th.abs() > FRAC_PI_4 && th.abs() <= FRAC_PI_2) {
                return Err(sector_error(spec, theta));
            }
            Ok(0.5 * (E / 3.0 * (comp.m as f64 + 5.5)).sqrt())
        }
    }
}

fn check_floor(spec: &BoundSpec) -> Result<()> {
    if spec.kind.is_derivative() && spec.n == 0 {
        return Err(Error::TooSmallN(format!("{} bounds need N >= 1", spec.kind)));
    }
    if spec.class == SectorClass::NearStokes {
        let floor = match family(spec.kind) {
            Family::Hankel if spec.kind.is_derivative() => 1,
            Family::Hankel => match spec.n % 3 {
                0 => 0,
                _ => 1,
            },
            Family::J | Family::Y => 4,
        };
        if spec.n < floor {
            return Err(Error::TooSmallN(format!(
                "{} near-Stokes bound needs N >= {floor}, got {}",
                spec.kind, spec.n
            )));
        }
    }
    Ok(())
}

/// The bound for |R_N(ν)| of `spec.kind` with the angular factor of
/// `spec.class`, where N is the reindexed truncation (R_N = R_{2N}(ν, 0) for
/// the functions and R_{2N+1}(ν, 0) for the derivatives).
pub fn bound(spec: &BoundSpec, nu: SheetedComplex) -> Result<f64> {
    check_floor(spec)?;
    let mut total = 0.0;
    for comp in components(spec.kind, spec.n) {
        let f = component_factor(spec, comp, nu.theta)?;
        if f != 0.0 {
            total += f * component_magnitude(spec.kind, comp.m, nu.r);
        }
    }
    Ok(total)
}

/// The near-Stokes bound for (kind, ν, N).
pub fn bound_near_stokes(kind: FunctionKind, nu: SheetedComplex, n: usize) -> Result<f64> {
    bound(&BoundSpec::new(kind, n, SectorClass::NearStokes), nu)
}

/// The smallest applicable bound over all sector classes, with its class.
pub fn best_bound(kind: FunctionKind, nu: SheetedComplex, n: usize) -> Result<(f64, SectorClass)> {
    let mut best: Option<(f64, SectorClass)> = None;
    let mut last_err = None;
    for class in SectorClass::ALL {
        match bound(&BoundSpec::new(kind, n, class), nu) {
            Ok(b) => {
                if best.map_or(true, |(v, _)| b < v) {
                    best = Some((b, class));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.expect("at least one class was tried"))
}

/// Sector of arg ν covered by the bounds of `kind`.
pub fn bound_sector(kind: FunctionKind) -> (f64, f64) {
    match kind.base() {
        FunctionKind::H1 => (-PI, 2.0 * PI),
        FunctionKind::H2 => (-2.0 * PI, PI),
        _ => (-PI, PI),
    }
}

/// R_N(ν) from the definition "function minus reindexed partial sum", with
/// the function value from the oracles (valid on every sheet).  When that
/// difference has lost most of its digits to cancellation and ν lies where
/// the remainder integrals converge, the integral is used instead.
pub fn true_remainder(kind: FunctionKind, nu: SheetedComplex, n: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    let v = oracle_value(kind, nu.to_c64(), nu, cfg)?;
    let r = v - partial_sum_equal_order(kind, nu, n);
    if r.norm() > 1e-9 * v.norm() {
        return Ok(r);
    }
    match remainder_equal_order(kind, nu, n, cfg) {
        Ok(direct) => Ok(direct),
        Err(Error::SectorViolation(_)) => Ok(r),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Real-axis results for J′ and Y′
// ---------------------------------------------------------------------------

/// An open interval (lo, hi) that must contain `sign · R_N(ν)` for ν > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedInterval {
    pub sign: f64,
    pub lo: f64,
    pub hi: f64,
}

impl SignedInterval {
    pub fn contains(&self, r: f64) -> bool {
        let v = self.sign * r;
        v > self.lo && v < self.hi
    }
}

/// Mean-value enclosure of the J′ or Y′ remainder at real ν > 0: the
/// remainder is a combination of the bound components with weights in (0, 1)
/// and fixed signs.
pub fn mean_value_interval(kind: FunctionKind, nu: f64, n: usize) -> Result<SignedInterval> {
    if !(nu > 0.0) {
        return Err(Error::InvalidInput(format!("nu must be positive, got {nu}")));
    }
    if n == 0 {
        return Err(Error::TooSmallN("derivative remainders need N >= 1".into()));
    }
    let t = |m: usize| component_magnitude(kind, m, nu);
    let odd = if n % 2 == 0 { 1.0 } else { -1.0 }; // (−1)^N
    let (sign, lo, hi) = match (kind, n % 3) {
        (FunctionKind::Jp, 0) => (-odd, 0.0, t(2 * n + 1) + t(2 * n + 3)),
        (FunctionKind::Jp, 1) => (odd, -t(2 * n + 5), t(2 * n + 1)),
        (FunctionKind::Jp, _) => (odd, 0.0, t(2 * n + 3) + t(2 * n + 5)),
        (FunctionKind::Yp, 0) => (-odd, -t(2 * n + 3), t(2 * n + 1)),
        (FunctionKind::Yp, 1) => (-odd, 0.0, t(2 * n + 1) + t(2 * n + 5)),
        (FunctionKind::Yp, _) => (odd, -t(2 * n + 5), t(2 * n + 3)),
        _ => return Err(Error::InvalidInput(format!("mean-value enclosures exist for J' and Y' only, not {kind}"))),
    };
    Ok(SignedInterval { sign, lo, hi })
}

/// Real-axis checks of the derivative expansions at ν > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct WatsonReport {
    pub nu: f64,
    /// J′_ν(ν) and its upper estimate 3^{1/6}Γ(2/3)/(2^{1/3}πν^{2/3}).
    pub jp: f64,
    pub jp_upper: f64,
    /// Y′_ν(ν) and its lower estimate 3^{2/3}Γ(2/3)/(2^{1/3}πν^{2/3}).
    pub yp: f64,
    pub yp_lower: f64,
    /// R_1^{(J′)}(ν), which is negative.
    pub r1_jp: f64,
    /// (kind, N, remainder, enclosure, inside) for N = 1..=6.
    pub enclosures: Vec<(FunctionKind, usize, f64, SignedInterval, bool)>,
}

impl WatsonReport {
    /// Whether every strict inequality holds.
    pub fn all_hold(&self) -> bool {
        self.jp < self.jp_upper && self.yp > self.yp_lower && self.r1_jp < 0.0 && self.enclosures.iter().all(|e| e.4)
    }
}

/// Evaluates the Watson-type inequalities and the mean-value enclosures.
pub fn watson_inequalities(nu: f64, cfg: &QuadratureConfig) -> Result<WatsonReport> {
    if !(nu > 0.0) {
        return Err(Error::InvalidInput(format!("nu must be positive, got {nu}")));
    }
    let z = SheetedComplex::polar(nu, 0.0);
    let nuc = Complex64::new(nu, 0.0);
    let jp = oracle_value(FunctionKind::Jp, nuc, z, cfg)?.re;
    let yp = oracle_value(FunctionKind::Yp, nuc, z, cfg)?.re;
    let g23 = crate::xprec::gamma_third_f64(2);
    let scale = g23 / (2f64.cbrt() * PI * nu.powf(2.0 / 3.0));
    let jp_upper = 3f64.powf(1.0 / 6.0) * scale;
    let yp_lower = 3f64.powf(2.0 / 3.0) * scale;
    let mut enclosures = Vec::new();
    let mut r1_jp = f64::NAN;
    for kind in [FunctionKind::Jp, FunctionKind::Yp] {
        let value = if kind == FunctionKind::Jp { jp } else { yp };
        for n in 1..=6 {
            let r = value - partial_sum_equal_order(kind, z, n).re;
            if kind == FunctionKind::Jp && n == 1 {
                r1_jp = r;
            }
            let iv = mean_value_interval(kind, nu, n)?;
            enclosures.push((kind, n, r, iv, iv.contains(r)));
        }
    }
    Ok(WatsonReport { nu, jp, jp_upper, yp, yp_lower, r1_jp, enclosures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn explicit_minimiser_on_the_stokes_line() {
        for n in [1usize, 4, 7] {
            let phi = meijer_angle_sin(SinVariant::Primary, 1.5 * PI, n).unwrap();
            let want = (1.0 / ((2.0 * n as f64 + 3.0) / 3.0).sqrt()).atan();
            assert!((phi - want).abs() < 1e-12, "N={n}: {phi} vs {want}");
        }
    }

    #[test]
    fn sine_root_residual_and_continuity() {
        let n = 4;
        let th = 1.9 * PI;
        let phi = meijer_angle_sin(SinVariant::Primary, th, n).unwrap();
        let r = n as f64 / (n as f64 + 3.0);
        assert!(((th - 2.0 * phi).sin() - r * th.sin()).abs() <= 1e-12);
        let phi = meijer_angle_sin(SinVariant::Primary, PI + 1e-9, n).unwrap();
        assert!(phi > 0.0 && phi < 1e-8);
        assert!(matches!(meijer_angle_sin(SinVariant::Primary, 0.5, n), Err(Error::NoBracket(_))));
    }

    #[test]
    fn cosine_roots_residual_and_symmetry() {
        let n = 6;
        let th = 0.9 * PI;
        for v in CosVariant::ALL {
            let p = v.power(n);
            let phi = meijer_angle_cos(v, th, n).unwrap();
            let res = (p + 2.0) * (3.0 * phi - 2.0 * th).cos() - (p - 2.0) * (phi - 2.0 * th).cos();
            assert!(res.abs() <= 1e-12, "{v:?}: residual {res}");
            let m = meijer_angle_cos(v, -th, n).unwrap();
            assert!((m + phi).abs() < 1e-12);
        }
    }

    #[test]
    fn hankel_n1_central_matches_single_term() {
        let nu = SheetedComplex::polar(20.0, 0.3);
        let n = 4;
        let b = bound(&BoundSpec::new(FunctionKind::H1, n, SectorClass::Central), nu).unwrap();
        let m = 2 * n + 2;
        let p = (m + 1) as f64 / 3.0;
        let direct = 2.0 / (3.0 * PI)
            * 6f64.powf(p)
            * coeff_at_zero(CoeffKind::B, m).abs()
            * SQRT3
            / 2.0
            * ln_gamma(Complex64::new(p, 0.0)).re.exp()
            / 20f64.powf(p);
        assert!((b - direct).abs() < 1e-13 * direct);
    }

    #[test]
    fn near_stokes_dominates_meijer() {
        let nu = SheetedComplex::polar(25.0, 1.49 * PI);
        let near = bound_near_stokes(FunctionKind::H1, nu, 4).unwrap();
        let rot = bound(&BoundSpec::new(FunctionKind::H1, 4, SectorClass::Rotated), nu).unwrap();
        assert!(near >= rot, "{near} < {rot}");
    }

    #[test]
    fn floors_and_sectors() {
        let nu = SheetedComplex::polar(10.0, 0.4 * PI);
        assert!(matches!(bound_near_stokes(FunctionKind::J, nu, 3), Err(Error::TooSmallN(_))));
        assert!(matches!(bound_near_stokes(FunctionKind::H1, nu, 2), Err(Error::SectorViolation(_))));
        let far = SheetedComplex::polar(10.0, 0.9 * PI);
        assert!(matches!(bound(&BoundSpec::new(FunctionKind::J, 2, SectorClass::Central), far), Err(Error::SectorViolation(_))));
        assert!(bound(&BoundSpec::new(FunctionKind::J, 2, SectorClass::Rotated), far).is_ok());
    }

    #[test]
    fn bounds_hold_at_sixty_degrees() {
        let nu = SheetedComplex::polar(30.0, PI / 3.0);
        for kind in [FunctionKind::H1, FunctionKind::J, FunctionKind::Y, FunctionKind::Jp, FunctionKind::Yp] {
            for n in 1..=6 {
                let r = true_remainder(kind, nu, n, &cfg()).unwrap().norm();
                let (b, class) = best_bound(kind, nu, n).unwrap();
                assert!(b >= r, "{kind} N={n}: bound {b} ({class:?}) < {r}");
            }
        }
    }

    #[test]
    fn watson_at_ten() {
        let rep = watson_inequalities(10.0, &cfg()).unwrap();
        assert!((rep.jp - 0.084369578631761188).abs() < 1e-14, "{}", rep.jp);
        assert!((rep.jp_upper - 0.088514991003780621).abs() < 1e-15, "{}", rep.jp_upper);
        assert!((rep.yp - 0.16051488637815838).abs() < 1e-14, "{}", rep.yp);
        assert!((rep.yp_lower - 0.15331246165005013).abs() < 1e-15, "{}", rep.yp_lower);
        assert!(rep.all_hold(), "{rep:?}");
    }
}
