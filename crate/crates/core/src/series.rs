//! Truncated Nicholson–Debye sums for the eight function kinds, and the
//! continuation formulas that carry Hankel and Bessel values to other sheets.
//!
//! Every term has the shape
//!
//! ```text
//!   f_n · 6^{(n+1)/3} C_n(κ) Γ((n+1)/3) / z^{(n+1)/3},
//! ```
//!
//! with C = B for the functions and C = D for their derivatives, and a kind
//! factor f_n built from sin((n+1)π/3) (exact zeros for n ≡ 2 mod 3).  The
//! magnitude 6^{k}Γ(k)z^{−k} is formed in logarithms so that large n do not
//! overflow even when the product is moderate.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{coeff_value, CoeffKind};
use crate::oracles::sin_ratio;
use crate::sheet::{FunctionKind, SheetedComplex};
use crate::xprec::gamma_third_f64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// sin(jπ/3) for integer j, with exact zeros.
pub fn sin_third(j: i64) -> f64 {
    const S: f64 = 0.866_025_403_784_438_6;
    match j.rem_euclid(6) {
        0 | 3 => 0.0,
        1 | 2 => S,
        _ => -S,
    }
}

/// e^{2jπi/3} for integer j.
fn cis_two_thirds(j: i64) -> Complex64 {
    const S: f64 = 0.866_025_403_784_438_6;
    match j.rem_euclid(3) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(-0.5, S),
        _ => Complex64::new(-0.5, -S),
    }
}

/// The kind factor f_n multiplying 6^{(n+1)/3}C_n Γ((n+1)/3) z^{−(n+1)/3}.
pub fn kind_factor(kind: FunctionKind, n: usize) -> Complex64 {
    let j = n as i64 + 1;
    let s = sin_third(j);
    let two = -2.0 / (3.0 * PI);
    match kind.base() {
        FunctionKind::H1 => cis_two_thirds(j) * (two * s),
        FunctionKind::H2 => cis_two_thirds(-j) * (two * s),
        FunctionKind::J => Complex64::new(s / (3.0 * PI), 0.0),
        FunctionKind::Y => {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(two * sign * s * s, 0.0)
        }
        _ => unreachable!("base() returns an undifferentiated kind"),
    }
}

/// ln(6^{k}Γ(k)) for k = (n+1)/3.
fn ln_scale(n: usize) -> f64 {
    let k = (n + 1) as f64 / 3.0;
    let g = gamma_third_f64(n as u32 + 1);
    let lg = if g.is_finite() { g.ln() } else { crate::oracles::ln_gamma(Complex64::new(k, 0.0)).re };
    k * 6f64.ln() + lg
}

/// 6^{(n+1)/3}Γ((n+1)/3)/z^{(n+1)/3} with the sheeted power of z.
pub fn scale_factor(n: usize, z: SheetedComplex) -> Complex64 {
    let k = (n + 1) as f64 / 3.0;
    (Complex64::new(ln_scale(n), 0.0) - z.ln() * k).exp()
}

/// Coefficient family used by a kind.
pub fn coeff_kind(kind: FunctionKind) -> CoeffKind {
    if kind.is_derivative() {
        CoeffKind::D
    } else {
        CoeffKind::B
    }
}

/// The n-th term of the expansion of `kind`.
pub fn term(kind: FunctionKind, n: usize, z: SheetedComplex, kappa: Complex64) -> Complex64 {
    let f = kind_factor(kind, n);
    if f == Complex64::new(0.0, 0.0) {
        return f;
    }
    let cn = coeff_value(coeff_kind(kind), n, kappa);
    if cn == Complex64::new(0.0, 0.0) {
        return cn;
    }
    f * cn * scale_factor(n, z)
}

/// Terms n = 0, …, N−1 (for derivative kinds the n = 0 term is zero, since
/// D₀ ≡ 0, so this matches the sums starting at n = 1).
pub fn terms(kind: FunctionKind, z: SheetedComplex, kappa: Complex64, n_terms: usize) -> Vec<Complex64> {
    (0..n_terms).map(|n| term(kind, n, z, kappa)).collect()
}

/// Σ_{n<N} of the expansion of `kind` at z with κ = z − ν.  N = 0 gives 0.
pub fn partial_sum(kind: FunctionKind, z: SheetedComplex, kappa: Complex64, n_terms: usize) -> Complex64 {
    terms(kind, z, kappa, n_terms).into_iter().sum()
}

/// The κ = 0 sums reindexed over the non-vanishing terms: even n < 2N for
/// the functions, odd n < 2N + 1 for the derivatives.
pub fn partial_sum_equal_order(kind: FunctionKind, nu: SheetedComplex, n_terms: usize) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    (0..n_terms)
        .map(|k| {
            let n = if kind.is_derivative() { 2 * k + 1 } else { 2 * k };
            term(kind, n, nu, zero)
        })
        .sum()
}

/// Sectors (open, in arg z) where each expansion holds as a Poincaré
/// series: H¹ on (−π, 2π), H² on (−2π, π), the others on |arg z| < π.
pub fn validity_sector(kind: FunctionKind) -> (f64, f64) {
    match kind.base() {
        FunctionKind::H1 => (-PI, 2.0 * PI),
        FunctionKind::H2 => (-2.0 * PI, PI),
        _ => (-PI, PI),
    }
}

/// Sector in which the exact remainder representation of `kind` applies.
pub fn remainder_sector(kind: FunctionKind) -> (f64, f64) {
    match kind.base() {
        FunctionKind::H1 => (-PI / 2.0, 1.5 * PI),
        FunctionKind::H2 => (-1.5 * PI, PI / 2.0),
        _ => (-PI / 2.0, PI / 2.0),
    }
}

// ---------------------------------------------------------------------------
// Continuation formulas
// ---------------------------------------------------------------------------

fn check_non_integer(nu: Complex64) -> Result<()> {
    if nu.im == 0.0 && (nu.re - nu.re.round()).abs() < 1e-12 {
        return Err(Error::IntegerOrder(format!("order {nu} is an integer")));
    }
    if !nu.re.is_finite() || !nu.im.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite order {nu}")));
    }
    Ok(())
}

/// H¹ or H² of order ν at z e^{2πim}, from H¹_ν(z), H²_ν(z):
///
/// ```text
/// sin πν H¹(ze^{2πim}) = −sin((2m−1)πν)H¹(z) − e^{−πiν} sin(2πmν) H²(z)
/// sin πν H²(ze^{2πim}) =  sin((2m+1)πν)H²(z) + e^{πiν} sin(2πmν) H¹(z)
/// ```
pub fn continue_hankel(kind: FunctionKind, m: i64, nu: Complex64, h1: Complex64, h2: Complex64) -> Result<Complex64> {
    check_non_integer(nu)?;
    let x = nu * PI;
    match kind {
        FunctionKind::H1 => Ok(-sin_ratio(2 * m - 1, x) * h1 - (-I * x).exp() * sin_ratio(2 * m, x) * h2),
        FunctionKind::H2 => Ok(sin_ratio(2 * m + 1, x) * h2 + (I * x).exp() * sin_ratio(2 * m, x) * h1),
        other => Err(Error::InvalidInput(format!("continue_hankel needs H1 or H2, got {other}"))),
    }
}

/// Which rotation a continuation applies to z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rotation {
    /// z → z e^{2πim}; the order is unchanged.
    Full,
    /// z → z e^{(2m+1)πi}; the order ν e^{(2m+1)πi} = −ν is negated.
    Half,
}

/// J, Y, H¹, H² of one order at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselValues {
    pub order: Complex64,
    pub j: Complex64,
    pub y: Complex64,
    pub h1: Complex64,
    pub h2: Complex64,
}

impl BesselValues {
    /// Fills J and Y from the Hankel pair.
    pub fn from_hankel(order: Complex64, h1: Complex64, h2: Complex64) -> Self {
        Self { order, j: 0.5 * (h1 + h2), y: (h1 - h2) / (2.0 * I), h1, h2 }
    }
}

/// Continues all four functions from z to z e^{2πim} (Full) or
/// z e^{(2m+1)πi} (Half).  J and Y follow the displayed identities
///
/// ```text
/// J_ν(ze^{2πim})          = e^{2πimν}J_ν(z)
/// Y_ν(ze^{2πim})          = e^{−2πimν}Y + 2i sin(2πmν) cot(πν) J
/// J_{−ν}(ze^{(2m+1)πi})   = e^{2πimν}J − i sin(2πmν)H¹ − i e^{−πiν} sin((2m+1)πν)H²
/// Y_{−ν}(ze^{(2m+1)πi})   = e^{−2(m+1)πiν}Y + 2i e^{−πiν} sin((2m+1)πν) cot(πν) J
///                           − sin(2πmν)H¹ − e^{−πiν} sin((2m+1)πν)H²
/// ```
///
/// and the Hankel pair follows the full-turn formulas (plus
/// H¹_{−ν} = e^{iπν}H¹_ν, H²_{−ν} = e^{−iπν}H²_ν after a half turn), so the
/// result can be fed back in.
pub fn continue_bessel(m: i64, rotation: Rotation, v: &BesselValues) -> Result<BesselValues> {
    let nu = v.order;
    check_non_integer(nu)?;
    let x = nu * PI;
    let mf = m as f64;
    let s2m = (2.0 * mf * x).sin();
    let cot = x.cos() / x.sin();
    match rotation {
        Rotation::Full => {
            let j = (2.0 * I * mf * x).exp() * v.j;
            let y = (-2.0 * I * mf * x).exp() * v.y + 2.0 * I * s2m * cot * v.j;
            let h1 = continue_hankel(FunctionKind::H1, m, nu, v.h1, v.h2)?;
            let h2 = continue_hankel(FunctionKind::H2, m, nu, v.h1, v.h2)?;
            Ok(BesselValues { order: nu, j, y, h1, h2 })
        }
        Rotation::Half => {
            let s2m1 = ((2.0 * mf + 1.0) * x).sin();
            let em = (-I * x).exp();
            let j = (2.0 * I * mf * x).exp() * v.j - I * s2m * v.h1 - I * em * s2m1 * v.h2;
            let y = (-2.0 * I * (mf + 1.0) * x).exp() * v.y + 2.0 * I * em * s2m1 * cot * v.j
                - s2m * v.h1
                - em * s2m1 * v.h2;
            // Half-turn Hankel formulas at order ν, then reflect to −ν.
            let k = 2 * m + 1;
            let g1 = -sin_ratio(k - 1, x) * v.h1 - em * sin_ratio(k, x) * v.h2;
            let g2 = sin_ratio(k + 1, x) * v.h2 + (I * x).exp() * sin_ratio(k, x) * v.h1;
            Ok(BesselValues { order: -nu, j, y, h1: (I * x).exp() * g1, h2: em * g2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{hankel_pair, oracle_value};
    use crate::quad::QuadratureConfig;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn leading_j_term() {
        let z = SheetedComplex::polar(100.0, 0.0);
        let s = partial_sum(FunctionKind::J, z, c(0.0), 1);
        let lead = 6f64.powf(1.0 / 3.0) * (PI / 3.0).sin() * gamma_third_f64(1) / (3.0 * PI);
        assert!((lead - 0.44730731839647230).abs() < 1e-15);
        assert!((s.re - lead / 100f64.cbrt()).abs() < 1e-15);
        assert!((s.re - 0.096369440385849692).abs() < 1e-15);
        // One term is already within 3e−6 of J₁₀₀(100) = 0.0963666732958616.
        assert!((s.re - 0.0963666732958616).abs() < 3e-6);
    }

    #[test]
    fn empty_sum_is_zero() {
        let z = SheetedComplex::polar(3.0, 0.4);
        for k in FunctionKind::ALL {
            assert_eq!(partial_sum(k, z, Complex64::new(0.2, 0.1), 0), c(0.0));
        }
    }

    #[test]
    fn h2_is_conjugate_of_h1() {
        let z = SheetedComplex::polar(12.0, 0.7);
        let kappa = Complex64::new(0.3, -0.2);
        let a = partial_sum(FunctionKind::H1, z, kappa, 9);
        let b = partial_sum(FunctionKind::H2, z.conj(), kappa.conj(), 9);
        assert!(close(b, a.conj(), 1e-14));
    }

    #[test]
    fn equal_order_reindexing() {
        let nu = SheetedComplex::polar(20.0, 0.3);
        for k in FunctionKind::ALL {
            let n = 4;
            let full = if k.is_derivative() { 2 * n + 1 } else { 2 * n };
            let a = partial_sum_equal_order(k, nu, n);
            let b = partial_sum(k, nu, c(0.0), full);
            assert!(close(a, b, 1e-14), "{k}");
        }
        // First Y′ term.
        let nu = SheetedComplex::polar(7.0, 0.0);
        let y = partial_sum_equal_order(FunctionKind::Yp, nu, 1);
        let want = 3f64.powf(2.0 / 3.0) * gamma_third_f64(2) / (2f64.cbrt() * PI * 7f64.powf(2.0 / 3.0));
        assert!((y.re - want).abs() < 1e-15);
    }

    #[test]
    fn connection_formulas_for_sums() {
        let nu = SheetedComplex::polar(30.0, 0.2);
        for n in [2usize, 4, 8] {
            let h1 = partial_sum(FunctionKind::H1, nu, c(0.0), n);
            let h2 = partial_sum(FunctionKind::H2, nu, c(0.0), n);
            let j = partial_sum(FunctionKind::J, nu, c(0.0), n);
            let y = partial_sum(FunctionKind::Y, nu, c(0.0), n);
            assert!(close(j, 0.5 * (h1 + h2), 1e-14));
            assert!(close(y, (h1 - h2) / (2.0 * I), 1e-14));
        }
    }

    #[test]
    fn sum_approximates_oracle() {
        let cfg = QuadratureConfig::default();
        let (j, _) = crate::oracles::bessel_jy_real(100.0, 100.0, &cfg).unwrap();
        let s = partial_sum(FunctionKind::J, SheetedComplex::polar(100.0, 0.0), c(0.0), 12);
        assert!((s.re - j).abs() < 1e-12);
    }

    #[test]
    fn hankel_continuation() {
        let cfg = QuadratureConfig::default();
        let nu = c(10.3);
        let z = SheetedComplex::polar(20.0, 0.0);
        let (h1, h2) = hankel_pair(nu, z, &cfg).unwrap();
        assert_eq!(continue_hankel(FunctionKind::H1, 0, nu, h1, h2).unwrap(), h1);
        let a1 = continue_hankel(FunctionKind::H1, 1, nu, h1, h2).unwrap();
        let a2 = continue_hankel(FunctionKind::H2, 1, nu, h1, h2).unwrap();
        let rotated = z.rotate(2.0 * PI);
        let want = oracle_value(FunctionKind::H1, nu, rotated, &cfg).unwrap();
        assert!(close(a1, want, 1e-12));
        let back = continue_hankel(FunctionKind::H1, -1, nu, a1, a2).unwrap();
        assert!(close(back, h1, 1e-13));
        assert!(matches!(
            continue_hankel(FunctionKind::H1, 1, c(3.0), h1, h2),
            Err(Error::IntegerOrder(_))
        ));
    }

    #[test]
    fn bessel_continuation() {
        let cfg = QuadratureConfig::default();
        let nu = c(3.7);
        let z = SheetedComplex::polar(15.0, 0.2);
        let (h1, h2) = hankel_pair(nu, z, &cfg).unwrap();
        let base = BesselValues::from_hankel(nu, h1, h2);
        let same = continue_bessel(0, Rotation::Full, &base).unwrap();
        assert!(close(same.j, base.j, 1e-15) && close(same.y, base.y, 1e-15));
        let full = continue_bessel(1, Rotation::Full, &base).unwrap();
        assert!(close(full.j, (2.0 * PI * I * nu).exp() * base.j, 1e-15));
        let zr = z.rotate(2.0 * PI);
        assert!(close(full.y, oracle_value(FunctionKind::Y, nu, zr, &cfg).unwrap(), 1e-11));
        for m in [0i64, 1, -1] {
            let half = continue_bessel(m, Rotation::Half, &base).unwrap();
            let zh = z.rotate((2 * m + 1) as f64 * PI);
            let jw = oracle_value(FunctionKind::J, -nu, zh, &cfg).unwrap();
            let yw = oracle_value(FunctionKind::Y, -nu, zh, &cfg).unwrap();
            assert!(close(half.j, jw, 1e-11), "m={m}: {} vs {jw}", half.j);
            assert!(close(half.y, yw, 1e-11), "m={m}: {} vs {yw}", half.y);
            assert!(close(half.j, 0.5 * (half.h1 + half.h2), 1e-11));
        }
        // Two half turns by (2m+1)π equal one full turn by 2(2m+1)π.
        let m = 1;
        let twice = continue_bessel(m, Rotation::Half, &continue_bessel(m, Rotation::Half, &base).unwrap()).unwrap();
        let once = continue_bessel(2 * m + 1, Rotation::Full, &base).unwrap();
        assert!(close(twice.j, once.j, 1e-12));
        assert!(close(twice.y, once.y, 1e-12));
    }
}
