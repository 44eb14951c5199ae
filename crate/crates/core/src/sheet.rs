//! Points on the Riemann surface of the logarithm, and the function kinds.
//!
//! A [`SheetedComplex`] stores a modulus and an *unbounded* angle, so that
//! fractional powers z^s := exp(s(ln r + iθ)) are single-valued and sectors
//! wider than 2π (needed by the re-expansions, which reach (−2π, 3π)) are
//! expressible.  No routine in this crate silently reduces an angle to the
//! principal branch.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number with modulus `r > 0` and real angle `theta` of any size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SheetedComplex {
    pub r: f64,
    pub theta: f64,
}

impl SheetedComplex {
    /// Builds a point; `r` must be positive and both parts finite.
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() || !theta.is_finite() {
            return Err(Error::InvalidInput(format!("invalid sheeted point r={r}, theta={theta}")));
        }
        Ok(Self { r, theta })
    }

    /// Unchecked constructor for internal use with known-valid data.
    pub const fn polar(r: f64, theta: f64) -> Self {
        Self { r, theta }
    }

    /// The point on the principal sheet with the given complex value.
    pub fn from_c64(z: Complex64) -> Result<Self> {
        Self::new(z.norm(), z.arg())
    }

    /// The complex value (sheet information is lost).
    pub fn to_c64(self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    /// ln z = ln r + iθ on this sheet.
    pub fn ln(self) -> Complex64 {
        Complex64::new(self.r.ln(), self.theta)
    }

    /// z^s = exp(s ln z).
    pub fn powc(self, s: Complex64) -> Complex64 {
        (s * self.ln()).exp()
    }

    /// z^s for real s.
    pub fn powf(self, s: f64) -> Complex64 {
        Complex64::from_polar(self.r.powf(s), s * self.theta)
    }

    /// z e^{iφ}, staying on the continued sheet.
    pub fn rotate(self, phi: f64) -> Self {
        Self { r: self.r, theta: self.theta + phi }
    }

    /// Multiplies by a positive real.
    pub fn scale(self, s: f64) -> Self {
        Self { r: self.r * s, theta: self.theta }
    }

    /// Product of two sheeted points (angles add).
    pub fn mul(self, o: Self) -> Self {
        Self { r: self.r * o.r, theta: self.theta + o.theta }
    }

    /// Reflection through the real axis: (r, θ) → (r, −θ).
    pub fn conj(self) -> Self {
        Self { r: self.r, theta: -self.theta }
    }

    /// Splits θ as θ₀ + 2πm with θ₀ ∈ (−π, π]; returns (principal point, m).
    pub fn principal(self) -> (Self, i64) {
        let mut m = ((self.theta + PI) / (2.0 * PI)).floor() as i64;
        let mut t0 = self.theta - 2.0 * PI * m as f64;
        // Keep −π excluded and π included.
        if t0 <= -PI {
            t0 += 2.0 * PI;
            m -= 1;
        }
        if t0 > PI {
            t0 -= 2.0 * PI;
            m += 1;
        }
        (Self { r: self.r, theta: t0 }, m)
    }
}

impl fmt::Display for SheetedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.r, self.theta)
    }
}

/// Parses an angle such as `0.3`, `-1.25`, `1.5pi`, `pi`, `-pi/2`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || Error::InvalidInput(format!("cannot parse angle '{s}'"));
    if let Some(idx) = t.find("pi") {
        let (pre, post) = (&t[..idx], &t[idx + 2..]);
        let coef = match pre.trim_end_matches('*') {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        let div = if post.is_empty() {
            1.0
        } else {
            post.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?
        };
        if div == 0.0 {
            return Err(bad());
        }
        return Ok(coef * PI / div);
    }
    t.parse::<f64>().map_err(|_| bad())
}

impl FromStr for SheetedComplex {
    type Err = Error;

    /// Parses `r,theta` with θ in radians or multiples of π (`10,1.5pi`).
    fn from_str(s: &str) -> Result<Self> {
        let (r, th) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidInput(format!("expected 'r,theta', got '{s}'")))?;
        let r = r.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("bad modulus '{r}'")))?;
        Self::new(r, parse_angle(th)?)
    }
}

/// The eight functions covered by the expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    H1,
    H2,
    J,
    Y,
    H1p,
    H2p,
    Jp,
    Yp,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 8] = [
        FunctionKind::H1,
        FunctionKind::H2,
        FunctionKind::J,
        FunctionKind::Y,
        FunctionKind::H1p,
        FunctionKind::H2p,
        FunctionKind::Jp,
        FunctionKind::Yp,
    ];

    /// True for the derivative kinds H1′, H2′, J′, Y′.
    pub fn is_derivative(self) -> bool {
        matches!(self, FunctionKind::H1p | FunctionKind::H2p | FunctionKind::Jp | FunctionKind::Yp)
    }

    /// The underlying (non-derivative) function.
    pub fn base(self) -> FunctionKind {
        match self {
            FunctionKind::H1p => FunctionKind::H1,
            FunctionKind::H2p => FunctionKind::H2,
            FunctionKind::Jp => FunctionKind::J,
            FunctionKind::Yp => FunctionKind::Y,
            k => k,
        }
    }

    /// True for H1, H2 and their derivatives.
    pub fn is_hankel(self) -> bool {
        matches!(self.base(), FunctionKind::H1 | FunctionKind::H2)
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::H1 => "H1",
            FunctionKind::H2 => "H2",
            FunctionKind::J => "J",
            FunctionKind::Y => "Y",
            FunctionKind::H1p => "H1p",
            FunctionKind::H2p => "H2p",
            FunctionKind::Jp => "Jp",
            FunctionKind::Yp => "Yp",
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('\'', "p");
        FunctionKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(&t))
            .ok_or_else(|| Error::InvalidInput(format!("unknown function kind '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_parse() {
        assert!((parse_angle("1.5pi").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!((parse_angle("-pi/2").unwrap() + PI / 2.0).abs() < 1e-15);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("abc").is_err());
        let z: SheetedComplex = "10,1.5pi".parse().unwrap();
        assert_eq!(z.r, 10.0);
        assert!("-1,0".parse::<SheetedComplex>().is_err());
    }

    #[test]
    fn principal_split() {
        let (p, m) = SheetedComplex::polar(2.0, 3.0 * PI).principal();
        assert_eq!(m, 1);
        assert!((p.theta - PI).abs() < 1e-12);
        let (p, m) = SheetedComplex::polar(2.0, -PI).principal();
        assert_eq!(m, -1);
        assert!((p.theta - PI).abs() < 1e-12);
    }

    #[test]
    fn fractional_powers_follow_sheet() {
        let z = SheetedComplex::polar(8.0, 2.0 * PI);
        let c = z.powf(1.0 / 3.0);
        assert!((c - Complex64::from_polar(2.0, 2.0 * PI / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("h1p".parse::<FunctionKind>().unwrap(), FunctionKind::H1p);
        assert_eq!("J'".parse::<FunctionKind>().unwrap(), FunctionKind::Jp);
        assert!("K".parse::<FunctionKind>().is_err());
    }
}
