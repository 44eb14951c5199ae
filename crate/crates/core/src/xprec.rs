//! Extended-precision real and complex scalars.
//!
//! A thin value-semantics layer over [`astro_float::BigFloat`] carrying an
//! explicit binary precision.  It is used wherever double precision cannot
//! deliver the required significant digits (late-coefficient tables, exact
//! coefficient conversion) and nowhere else.
//!
//! Γ at integer multiples of 1/3 is obtained from stored 50-digit constants
//! for Γ(1/3) and Γ(2/3) and the recurrence Γ(x+1) = xΓ(x); no general Γ
//! implementation is involved on these paths.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;

/// Γ(1/3) to 50 significant digits.
pub const GAMMA_ONE_THIRD: &str = "2.6789385347077476336556929409746776441286893779573";
/// Γ(2/3) to 50 significant digits.
pub const GAMMA_TWO_THIRDS: &str = "1.3541179394264004169452880281545137855193272660568";

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Number of mantissa bits needed for `digits` significant decimal digits,
/// plus a guard margin of 32 bits.
pub fn digits_to_bits(digits: usize) -> usize {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 32
}

/// A real number with an explicit binary precision.
#[derive(Debug)]
pub struct ExtendedReal {
    v: BigFloat,
    p: usize,
}

impl Clone for ExtendedReal {
    fn clone(&self) -> Self {
        Self { v: self.v.clone(), p: self.p }
    }
}

impl ExtendedReal {
    fn wrap(v: BigFloat, p: usize) -> Self {
        Self { v, p }
    }

    /// Working precision in bits.
    pub fn precision(&self) -> usize {
        self.p
    }

    /// Zero at precision `p` bits.
    pub fn zero(p: usize) -> Self {
        Self::wrap(BigFloat::from_u64(0, p), p)
    }

    /// One at precision `p` bits.
    pub fn one(p: usize) -> Self {
        Self::wrap(BigFloat::from_u64(1, p), p)
    }

    /// Exact conversion of a double.
    pub fn from_f64(x: f64, p: usize) -> Self {
        Self::wrap(BigFloat::from_f64(x, p), p)
    }

    /// Exact conversion of a machine integer.
    pub fn from_i64(x: i64, p: usize) -> Self {
        Self::wrap(BigFloat::from_i64(x, p), p)
    }

    /// Conversion of an arbitrary-precision integer (rounded to `p` bits).
    pub fn from_bigint(x: &BigInt, p: usize) -> Self {
        let (sign, words) = x.to_u64_digits();
        if words.is_empty() {
            return Self::zero(p);
        }
        // Horner over 64-bit limbs, most significant first.
        let base = BigFloat::from_f64(18446744073709551616.0, p);
        let mut acc = BigFloat::from_u64(0, p);
        for w in words.iter().rev() {
            acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*w, p), p, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        Self::wrap(acc, p)
    }

    /// Conversion of an exact rational (one rounding in the final division).
    pub fn from_rational(x: &BigRational, p: usize) -> Self {
        let n = Self::from_bigint(x.numer(), p + 64);
        let d = Self::from_bigint(x.denom(), p + 64);
        Self::wrap(n.v.div(&d.v, p, RM), p)
    }

    /// Parses a decimal literal such as `2.67893e-5`.
    pub fn parse(s: &str, p: usize) -> Self {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
        Self::wrap(v, p)
    }

    /// π at precision `p`.
    pub fn pi(p: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(p, RM)), p)
    }

    fn pp(&self, o: &Self) -> usize {
        self.p.max(o.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.pp(o);
        Self::wrap(self.v.add(&o.v, p, RM), p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.pp(o);
        Self::wrap(self.v.sub(&o.v, p, RM), p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.pp(o);
        Self::wrap(self.v.mul(&o.v, p, RM), p)
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.pp(o);
        Self::wrap(self.v.div(&o.v, p, RM), p)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, self.p))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&Self::from_i64(k, self.p))
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.v.neg(), self.p)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.p)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_consts(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_consts(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn sin(&self) -> Self {
        Self::wrap(with_consts(|cc| self.v.sin(self.p, RM, cc)), self.p)
    }

    pub fn cos(&self) -> Self {
        Self::wrap(with_consts(|cc| self.v.cos(self.p, RM, cc)), self.p)
    }

    pub fn sinh(&self) -> Self {
        Self::wrap(with_consts(|cc| self.v.sinh(self.p, RM, cc)), self.p)
    }

    pub fn cosh(&self) -> Self {
        Self::wrap(with_consts(|cc| self.v.cosh(self.p, RM, cc)), self.p)
    }

    /// `self^e` for a positive base, via exp(e ln self).
    pub fn powf(&self, e: &Self) -> Self {
        e.mul(&self.ln()).exp()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    /// Nearest double (truncation of the top mantissa word, then one rounding).
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let (Some(w), Some(e)) = (self.v.mantissa_digits(), self.v.exponent()) else {
            return f64::NAN;
        };
        let top = *w.last().unwrap_or(&0);
        let mag = (top as f64) * 2f64.powi(e - 64);
        if self.v.sign() == Some(Sign::Neg) {
            -mag
        } else {
            mag
        }
    }

    /// Full decimal expansion as produced by the backend (`d.ddd…e±x`).
    pub fn to_decimal_string(&self) -> String {
        with_consts(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    /// Scientific notation rounded to `digits` significant digits, e.g.
    /// `7.745012865285354362490235e-18`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        round_sci(&self.to_decimal_string(), digits)
    }
}

impl PartialEq for ExtendedReal {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.p as f64) / std::f64::consts::LOG2_10) as usize);
        write!(f, "{}", self.to_sci_string(digits.max(1)))
    }
}

/// Rounds a `d.ddd…e±x` string to `digits` significant digits (half-up on
/// the decimal expansion, which is itself correctly rounded).
fn round_sci(s: &str, digits: usize) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (mant, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let mut ds: Vec<u8> = mant.bytes().filter(|b| b.is_ascii_digit()).map(|b| b - b'0').collect();
    // Normalise leading zeros (e.g. "0.0").
    let int_len = mant.split('.').next().map(|x| x.len()).unwrap_or(1) as i64;
    let mut exp10 = exp + int_len - 1;
    while ds.len() > 1 && ds[0] == 0 {
        ds.remove(0);
        exp10 -= 1;
    }
    if ds.iter().all(|&d| d == 0) {
        return "0".to_string();
    }
    let round_up = ds.len() > digits && ds[digits] >= 5;
    ds.truncate(digits);
    while ds.len() < digits {
        ds.push(0);
    }
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                ds.truncate(digits);
                exp10 += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push((b'0' + ds[0]) as char);
    if digits > 1 {
        out.push('.');
        for d in &ds[1..] {
            out.push((b'0' + d) as char);
        }
    }
    out.push_str(&format!("e{exp10}"));
    out
}

/// A complex number with extended-precision parts.
#[derive(Debug, Clone)]
pub struct ExtendedComplex {
    pub re: ExtendedReal,
    pub im: ExtendedReal,
}

impl ExtendedComplex {
    pub fn new(re: ExtendedReal, im: ExtendedReal) -> Self {
        Self { re, im }
    }

    pub fn zero(p: usize) -> Self {
        Self::new(ExtendedReal::zero(p), ExtendedReal::zero(p))
    }

    pub fn from_real(re: ExtendedReal) -> Self {
        let p = re.precision();
        Self::new(re, ExtendedReal::zero(p))
    }

    pub fn from_c64(z: Complex64, p: usize) -> Self {
        Self::new(ExtendedReal::from_f64(z.re, p), ExtendedReal::from_f64(z.im, p))
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, p: usize) -> Self {
        Self::new(ExtendedReal::from_rational(re, p), ExtendedReal::from_rational(im, p))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn scale(&self, s: &ExtendedReal) -> Self {
        Self::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn norm_sqr(&self) -> ExtendedReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> ExtendedReal {
        self.norm_sqr().sqrt()
    }

    /// cos(x + iy) = cos x cosh y − i sin x sinh y.
    pub fn cos(&self) -> Self {
        Self::new(
            self.re.cos().mul(&self.im.cosh()),
            self.re.sin().mul(&self.im.sinh()).neg(),
        )
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Γ(k/3) for integer k ≥ 1, by upward recurrence from the stored constants.
pub fn gamma_third(k: u32, p: usize) -> ExtendedReal {
    assert!(k >= 1, "gamma_third requires k >= 1");
    let wp = p + 32;
    let base = match k % 3 {
        1 => ExtendedReal::parse(GAMMA_ONE_THIRD, wp),
        2 => ExtendedReal::parse(GAMMA_TWO_THIRDS, wp),
        _ => ExtendedReal::one(wp),
    };
    // Γ((j+3)/3) = (j/3) Γ(j/3).
    let mut j = if k % 3 == 0 { 3 } else { k % 3 };
    let mut g = base;
    while j < k {
        g = g.mul_i64(j as i64).div_i64(3);
        j += 3;
    }
    let mut out = g;
    out.p = p;
    out
}

/// Γ(m) for a positive integer m, exactly as (m−1)! then converted.
pub fn gamma_integer(m: u32, p: usize) -> ExtendedReal {
    let mut f = BigInt::from(1u32);
    for i in 2..m {
        f *= i;
    }
    ExtendedReal::from_bigint(&f, p)
}

const THIRDS_TABLE_LEN: usize = 512;

static GAMMA_THIRDS_F64: Lazy<Vec<f64>> = Lazy::new(|| {
    let p = 192;
    let mut out = vec![f64::NAN; THIRDS_TABLE_LEN];
    let mut g = [
        ExtendedReal::parse(GAMMA_ONE_THIRD, p),
        ExtendedReal::parse(GAMMA_TWO_THIRDS, p),
        ExtendedReal::one(p),
    ];
    for k in 1..THIRDS_TABLE_LEN as u32 {
        let slot = ((k - 1) % 3) as usize;
        if k > 3 {
            g[slot] = g[slot].mul_i64((k - 3) as i64).div_i64(3);
        }
        out[k as usize] = g[slot].to_f64();
    }
    out
});

/// Γ(k/3) in double precision (correctly rounded from the extended table);
/// returns `+∞` beyond the double range.
pub fn gamma_third_f64(k: u32) -> f64 {
    assert!(k >= 1, "gamma_third_f64 requires k >= 1");
    GAMMA_THIRDS_F64.get(k as usize).copied().unwrap_or(f64::INFINITY)
}

/// Rounds an exact rational to the nearest double.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let p = 128;
    let v = ExtendedReal::from_rational(x, p).to_f64();
    if x.is_negative() && v > 0.0 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_thirds_recurrence() {
        // Γ(4/3) = Γ(1/3)/3, Γ(5/3) = 2Γ(2/3)/3, Γ(3) = 2.
        assert!((gamma_third_f64(4) - 2.678_938_534_707_747_6 / 3.0).abs() < 1e-15);
        assert!((gamma_third_f64(5) - 2.0 * 1.354_117_939_426_400_4 / 3.0).abs() < 1e-15);
        assert_eq!(gamma_third_f64(9), 2.0);
        let g = gamma_third(201, 256); // Γ(67) = 66!
        assert_eq!(g.to_sci_string(20), gamma_integer(67, 256).to_sci_string(20));
    }

    #[test]
    fn sci_rounding() {
        assert_eq!(round_sci("1.23456e-5", 3), "1.23e-5");
        assert_eq!(round_sci("9.996e+2", 3), "1.00e3");
        assert_eq!(round_sci("-2.5e0", 1), "-3e0");
    }

    #[test]
    fn bigint_and_rational_conversion() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let x = ExtendedReal::from_bigint(&big, 200);
        assert_eq!(x.to_sci_string(30), "1.23456789012345678901234567890e29");
        let r = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert!((rational_to_f64(&r) + 1.0 / 3.0).abs() < 1e-17);
    }
}
