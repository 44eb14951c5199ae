//! Exact coefficients B_n(κ) and D_n(κ) of the Nicholson–Debye expansions.
//!
//! B_n(κ) is the n-th Taylor coefficient of e^{κt}(t³/(6(sinh t − t)))^{(n+1)/3};
//! it is a polynomial of degree n in κ with rational coefficients.  Three
//! independent constructions are provided and cross-checked in the tests:
//!
//! * [`coeff_b`] — potential polynomials built from Bell polynomials of the
//!   series sinh t − t = Σ a_j t^{j+3};
//! * [`coeff_b_comtet`] — Comtet's formula, expressing the same potentials
//!   through integer-parameter potentials;
//! * [`coeff_b_lauwerier`] — the Lauwerier linear recurrence for auxiliary
//!   polynomials P_n(x, κ) followed by a term-wise Laplace integral.
//!
//! D_n(κ) = (B_n(κ+1) − B_n(κ−1))/2 is obtained by an exact Taylor shift
//! ([`coeff_d`]) and independently from its own generating function
//! ([`coeff_d_series`]).
//!
//! All Bell and potential values are stored as integers scaled by a
//! factorial (they count ordered set partitions into blocks of odd size), so
//! the hot path never normalises intermediate fractions.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::xprec::{digits_to_bits, ExtendedComplex, ExtendedReal};

/// Arbitrary-precision rational; always normalised (positive denominator,
/// coprime parts).
pub type ExactRational = BigRational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// An element of ℚ[i].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Self { re: int(re), im: int(im) }
    }

    pub fn zero() -> Self {
        Self::from_i64(0, 0)
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0)
    }

    /// Exact conversion of a complex double (every finite double is dyadic).
    pub fn from_c64(z: Complex64) -> Result<Self> {
        let conv = |x: f64| {
            BigRational::from_float(x)
                .ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))
        };
        Ok(Self { re: conv(z.re)?, im: conv(z.im)? })
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division; `None` for a zero divisor.
    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        let d = o.norm_sqr();
        if d.is_zero() {
            return None;
        }
        let num = self * &o.conj();
        Some(Self { re: num.re / &d, im: num.im / d })
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(crate::xprec::rational_to_f64(&self.re), crate::xprec::rational_to_f64(&self.im))
    }

    pub fn to_extended(&self, bits: usize) -> ExtendedComplex {
        ExtendedComplex::from_rationals(&self.re, &self.im, bits)
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{} + {}i", self.re, self.im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        // Terminating decimal, converted exactly.
        let neg = ip.trim_start().starts_with('-');
        let ip_digits = ip.trim().trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp);
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
}

impl FromStr for GaussRational {
    type Err = Error;

    /// Accepts `3`, `-1/3`, `0.25`, `2+2i`, `4-3/2i`, `i`, `-i`, `5i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::InvalidInput("empty value".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::from_rational(parse_rational(&t)?));
        };
        // Split the imaginary part at the last sign that is not leading.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_s {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.trim_start_matches('+'))?,
        };
        Ok(Self { re: parse_rational(re_s)?, im })
    }
}

// ---------------------------------------------------------------------------
// Coefficient polynomials
// ---------------------------------------------------------------------------

/// Which coefficient family a polynomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    B,
    D,
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoeffKind::B => "B",
            CoeffKind::D => "D",
        })
    }
}

/// B_n or D_n as an exact polynomial in κ; `coeffs[k]` multiplies κ^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffPolynomial {
    pub kind: CoeffKind,
    pub n: usize,
    pub coeffs: Vec<BigRational>,
}

impl CoeffPolynomial {
    /// Coefficient of κ^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The value at κ = 0.
    pub fn at_zero(&self) -> BigRational {
        self.coeff(0)
    }

    /// Parity exponent e with p(−κ) = (−1)^e p(κ): n for B_n, n+1 for D_n.
    pub fn parity(&self) -> usize {
        match self.kind {
            CoeffKind::B => self.n,
            CoeffKind::D => self.n + 1,
        }
    }

    /// True when every coefficient of the wrong parity vanishes.
    pub fn parity_consistent(&self) -> bool {
        let e = self.parity() % 2;
        self.coeffs.iter().enumerate().all(|(k, c)| k % 2 == e || c.is_zero())
    }

    pub fn eval_rational(&self, kappa: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * kappa + c;
        }
        acc
    }

    /// Exact Horner evaluation at a Gaussian rational.
    pub fn eval_exact(&self, kappa: &GaussRational) -> GaussRational {
        if kappa.is_real() {
            return GaussRational::from_rational(self.eval_rational(&kappa.re));
        }
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * kappa;
            acc.re += c;
        }
        acc
    }

    /// Horner evaluation with coefficients rounded at `digits` significant
    /// digits (plus guard bits).
    pub fn eval_float(&self, kappa: &ExtendedComplex, digits: usize) -> ExtendedComplex {
        let bits = digits_to_bits(digits.max(15)) + 64;
        let mut acc = ExtendedComplex::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(kappa);
            acc.re = acc.re.add(&ExtendedReal::from_rational(c, bits));
        }
        acc
    }
}

impl fmt::Display for CoeffPolynomial {
    /// Renders e.g. `1/2*k^2 - 1/20` (highest power first, κ written `k`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "k".to_string(),
                _ => format!("k^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Series tables
// ---------------------------------------------------------------------------

/// Coefficients a_0..a_{jmax} of (sinh t − t)/t³ = Σ a_j t^j.
pub fn sinh_series(jmax: usize) -> Vec<ExactRational> {
    (0..=jmax)
        .map(|j| {
            if j % 2 == 1 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::one(), factorial(j + 3))
            }
        })
        .collect()
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

/// Integer-scaled Bell and potential tables.
///
/// * `bell[k][j] = (k+3j)!·𝖡_{k,j}` where 𝖡_{k,j} = [t^k](Σ_{m≥1} a_m t^m)^j;
/// * `pot[j][k] = (k+3j)!·𝖠_{j,k}/6^j` where 𝖠_{j,k} = [t^k](Σ a_m t^m / a_0)^j.
///
/// Both are integers (ordered set partitions into odd blocks of size ≥ 5,
/// respectively ≥ 3).  The two families have independent capacities (the
/// potential table is only needed by the Comtet cross-check) and only ever
/// grow, behind a read-write lock.
#[derive(Debug, Default)]
pub struct PolyTables {
    bell_kmax: usize,
    pot_kmax: usize,
    fact: Vec<BigInt>,
    binom: Vec<Vec<BigInt>>,
    bell: Vec<Vec<BigInt>>,
    pot: Vec<Vec<BigInt>>,
}

static TABLES: Lazy<RwLock<PolyTables>> = Lazy::new(|| RwLock::new(PolyTables::default()));

impl PolyTables {
    fn covers(&self, bell_k: usize, pot_k: usize) -> bool {
        !self.fact.is_empty()
            && self.bell_kmax >= bell_k
            && self.pot_kmax >= pot_k
    }

    fn extend_factorials(&mut self, nmax: usize) {
        if self.fact.is_empty() {
            self.fact.push(BigInt::one());
        }
        while self.fact.len() <= nmax {
            let k = self.fact.len();
            let next = &self.fact[k - 1] * k;
            self.fact.push(next);
        }
        while self.binom.len() <= nmax {
            let n = self.binom.len();
            let mut row = vec![BigInt::one(); n + 1];
            for r in 1..n {
                row[r] = &self.binom[n - 1][r - 1] + &self.binom[n - 1][r];
            }
            self.binom.push(row);
        }
    }

    fn build_bell(&mut self, kmax: usize) {
        self.extend_factorials(5 * kmax / 2 + 8);
        let mut bell: Vec<Vec<BigInt>> = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let mut row = vec![BigInt::zero(); k + 1];
            if k == 0 {
                row[0] = BigInt::one();
            }
            for j in 1..=k {
                if k % 2 == 1 || 2 * j > k {
                    continue;
                }
                let n = k + 3 * j;
                let mut acc = BigInt::zero();
                let mut i = 2;
                while i <= k {
                    let prev = &bell[k - i];
                    if j - 1 < prev.len() && !prev[j - 1].is_zero() {
                        acc += &self.binom[n][i + 3] * &prev[j - 1];
                    }
                    i += 2;
                }
                row[j] = acc;
            }
            bell.push(row);
        }
        self.bell = bell;
        self.bell_kmax = kmax;
    }

    fn build_pot(&mut self, kmax: usize) {
        self.extend_factorials(4 * kmax + 8);
        let mut pot: Vec<Vec<BigInt>> = Vec::with_capacity(kmax + 1);
        for j in 0..=kmax {
            let mut row = vec![BigInt::zero(); kmax + 1];
            if j == 0 {
                row[0] = BigInt::one();
            } else {
                for k in (0..=kmax).step_by(2) {
                    let n = k + 3 * j;
                    let mut acc = BigInt::zero();
                    for i in (0..=k).step_by(2) {
                        let prev = &pot[j - 1][k - i];
                        if !prev.is_zero() {
                            acc += &self.binom[n][i + 3] * prev;
                        }
                    }
                    row[k] = acc;
                }
            }
            pot.push(row);
        }
        self.pot = pot;
        self.pot_kmax = kmax;
    }

    /// Runs `f` with Bell tables covering index `bell_k` and potential
    /// tables covering `pot_k`.
    fn with<T>(bell_k: usize, pot_k: usize, f: impl FnOnce(&PolyTables) -> T) -> T {
        {
            let guard = TABLES.read();
            if guard.covers(bell_k, pot_k) {
                return f(&guard);
            }
        }
        let mut guard = TABLES.write();
        if guard.fact.is_empty() || guard.bell_kmax < bell_k {
            let target = bell_k.max(2 * guard.bell_kmax).max(16);
            guard.build_bell(target);
        }
        if guard.pot_kmax < pot_k || guard.pot.is_empty() {
            let target = pot_k.max(2 * guard.pot_kmax).max(16);
            guard.build_pot(target);
        }
        let guard = parking_lot::RwLockWriteGuard::downgrade(guard);
        f(&guard)
    }

    /// Largest Bell index currently tabulated.
    pub fn capacity() -> usize {
        TABLES.read().bell_kmax
    }

    /// The series coefficients a_0..a_{kmax}.
    pub fn a(&self) -> Vec<ExactRational> {
        sinh_series(self.bell_kmax)
    }

    fn bell_value(&self, k: usize, j: usize) -> BigRational {
        if j > k {
            return BigRational::zero();
        }
        BigRational::new(self.bell[k][j].clone(), self.fact[k + 3 * j].clone())
    }

    fn potential_int_value(&self, j: usize, k: usize) -> BigRational {
        let six_j = num_traits::pow(BigInt::from(6), j);
        BigRational::new(&self.pot[j][k] * six_j, self.fact[k + 3 * j].clone())
    }
}

/// Bell polynomial value 𝖡_{j,i} at the series coefficients (a_1, a_2, …).
pub fn bell(j: usize, i: usize) -> ExactRational {
    PolyTables::with(j.max(i), 0, |t| t.bell_value(j, i))
}

/// Integer-parameter potential 𝖠_{i,j} = [t^j](Σ_m (a_m/a_0) t^m)^i.
pub fn potential_int(i: usize, j: usize) -> ExactRational {
    PolyTables::with(0, j.max(i), |t| t.potential_int_value(i, j))
}

/// Generalised binomial C(ρ, i) as an exact product.
fn gen_binomial(rho: &BigRational, i: usize) -> BigRational {
    let mut acc = BigRational::one();
    for m in 0..i {
        acc = acc * (rho - int(m as i64)) / int(m as i64 + 1);
    }
    acc
}

/// Potential polynomial 𝖠_{ρ,j} = Σ_i C(ρ,i) a_0^{−i} 𝖡_{j,i}.
pub fn potential(rho: &ExactRational, j: usize) -> ExactRational {
    PolyTables::with(j, 0, |t| {
        let mut acc = BigRational::zero();
        let mut six = BigRational::one();
        for i in 0..=j {
            let b = t.bell_value(j, i);
            if !b.is_zero() {
                acc += gen_binomial(rho, i) * &six * b;
            }
            six *= int(6);
        }
        acc
    })
}

/// 𝖠_{ρ,j} by Comtet's formula from integer-parameter potentials:
/// [(−ρ)(−ρ+1)…(−ρ+j)/j!] Σ_i (−1)^i/(−ρ+i) C(j,i) 𝖠_{i,j}.
pub fn potential_comtet(rho: &ExactRational, j: usize) -> Result<ExactRational> {
    if rho.is_integer() && !rho.is_negative() && rho.to_integer() <= BigInt::from(j) {
        return Err(Error::InvalidInput(format!(
            "Comtet's formula has a pole at rho = {rho} for j = {j}"
        )));
    }
    let mrho = -rho.clone();
    Ok(PolyTables::with(0, j, |t| {
        let mut pref = BigRational::one();
        for m in 0..=j {
            pref *= &mrho + int(m as i64);
        }
        pref /= BigRational::from_integer(t.fact[j].clone());
        let mut acc = BigRational::zero();
        for i in 0..=j {
            let a = t.potential_int_value(i, j);
            if a.is_zero() {
                continue;
            }
            let term = a * BigRational::from_integer(t.binom[j][i].clone()) / (&mrho + int(i as i64));
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        pref * acc
    }))
}

// ---------------------------------------------------------------------------
// The three B_n routes
// ---------------------------------------------------------------------------

type Memo = RwLock<HashMap<(CoeffKind, usize), Arc<CoeffPolynomial>>>;
static MEMO: Lazy<Memo> = Lazy::new(|| RwLock::new(HashMap::new()));

fn memoized(kind: CoeffKind, n: usize, build: impl FnOnce() -> CoeffPolynomial) -> Arc<CoeffPolynomial> {
    if let Some(p) = MEMO.read().get(&(kind, n)) {
        return p.clone();
    }
    let p = Arc::new(build());
    MEMO.write().entry((kind, n)).or_insert(p).clone()
}

/// Seeds the coefficient memo (used by the on-disk cache loader).
pub fn insert_cached(p: CoeffPolynomial) {
    MEMO.write().entry((p.kind, p.n)).or_insert_with(|| Arc::new(p));
}

/// Exact B_n(κ) via potential polynomials: c_{n−2k} = 𝖠_{−(n+1)/3,2k}/(n−2k)!.
pub fn coeff_b(n: usize) -> Arc<CoeffPolynomial> {
    memoized(CoeffKind::B, n, || build_b(n))
}

fn build_b(n: usize) -> CoeffPolynomial {
    PolyTables::with(n, 0, |t| {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        // P_i = Π_{m<i}(n+1+3m); C(ρ,i)6^i = (−1)^i 2^i P_i / i! for ρ = −(n+1)/3.
        let kmax = n / 2;
        let mut prods = Vec::with_capacity(kmax + 1);
        let mut p = BigInt::one();
        for i in 0..=kmax {
            prods.push(p.clone());
            p *= n + 1 + 3 * i;
        }
        for k in 0..=kmax {
            let top = 5 * k;
            let mut num = BigInt::zero();
            for i in 0..=k {
                let b = &t.bell[2 * k][i];
                if b.is_zero() {
                    continue;
                }
                let w = (&t.fact[k] / &t.fact[i]) * (&t.fact[top] / &t.fact[2 * k + 3 * i]);
                let term = (&prods[i] * b * w) << i;
                if i % 2 == 0 {
                    num += term;
                } else {
                    num -= term;
                }
            }
            let den = &t.fact[k] * &t.fact[top] * &t.fact[n - 2 * k];
            coeffs[n - 2 * k] = BigRational::new(num, den);
        }
        CoeffPolynomial { kind: CoeffKind::B, n, coeffs }
    })
}

/// Exact B_n(κ) via Comtet's representation of the potentials (rising
/// products replace every Γ-ratio).
pub fn coeff_b_comtet(n: usize) -> CoeffPolynomial {
    PolyTables::with(0, n, |t| {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        let rho = rat(n as i64 + 1, 3);
        for k in 0..=n / 2 {
            let j = 2 * k;
            // Γ(ρ+2k+1)/((2k)!Γ(ρ)) = Π_{m=0}^{2k}(ρ+m)/(2k)!.
            let mut pref = BigRational::one();
            for m in 0..=j {
                pref *= &rho + int(m as i64);
            }
            pref /= BigRational::from_integer(t.fact[j].clone());
            let mut acc = BigRational::zero();
            for i in 0..=j {
                let a = t.potential_int_value(i, j);
                if a.is_zero() {
                    continue;
                }
                // (−1)^i/(ρ+i) = 3(−1)^i/(n+1+3i).
                let term = a * BigRational::from_integer(t.binom[j][i].clone()) * rat(3, (n + 1 + 3 * i) as i64);
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            coeffs[n - j] = pref * acc / BigRational::from_integer(t.fact[n - j].clone());
        }
        CoeffPolynomial { kind: CoeffKind::B, n, coeffs }
    })
}

/// P_n(x, κ) as a dense table `p[m][q]` (coefficient of x^m κ^q).
pub type LauwerierPoly = Vec<Vec<BigRational>>;

static LAUWERIER: Lazy<RwLock<Vec<Arc<LauwerierPoly>>>> = Lazy::new(|| RwLock::new(Vec::new()));

/// The Lauwerier polynomials P_0..P_n, built by
/// P_n = κ^n/n! − Σ_{k=1}^{⌊n/2⌋} (1/(2k+3)!) ∫₀^x P_{n−2k}(t, κ) dt.
pub fn lauwerier_polys(n: usize) -> Vec<Arc<LauwerierPoly>> {
    {
        let g = LAUWERIER.read();
        if g.len() > n {
            return g[..=n].to_vec();
        }
    }
    let mut g = LAUWERIER.write();
    while g.len() <= n {
        let m = g.len();
        let mut p: LauwerierPoly = vec![vec![BigRational::zero(); m + 1]; m / 2 + 1];
        p[0][m] = BigRational::new(BigInt::one(), factorial(m));
        for k in 1..=m / 2 {
            let c = BigRational::new(BigInt::one(), factorial(2 * k + 3));
            let prev = &g[m - 2 * k];
            for (xm, row) in prev.iter().enumerate() {
                for (q, v) in row.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    // ∫₀^x t^{xm} dt = x^{xm+1}/(xm+1).
                    p[xm + 1][q] -= &c * v / int(xm as i64 + 1);
                }
            }
        }
        g.push(Arc::new(p));
    }
    g[..=n].to_vec()
}

/// Exact B_n(κ) from the Lauwerier polynomials: each x^m contributes
/// 6^m Γ((n+1)/3+m)/Γ((n+1)/3) = 2^m Π_{l<m}(n+1+3l).
pub fn coeff_b_lauwerier(n: usize) -> CoeffPolynomial {
    let polys = lauwerier_polys(n);
    let p = &polys[n];
    let mut coeffs = vec![BigRational::zero(); n + 1];
    let mut w = BigInt::one();
    for (m, row) in p.iter().enumerate() {
        if m > 0 {
            w = w * 2 * (n + 1 + 3 * (m - 1));
        }
        let wr = BigRational::from_integer(w.clone());
        for (q, v) in row.iter().enumerate() {
            if !v.is_zero() {
                coeffs[q] += v * &wr;
            }
        }
    }
    CoeffPolynomial { kind: CoeffKind::B, n, coeffs }
}

/// Exact D_n(κ) = (B_n(κ+1) − B_n(κ−1))/2 via a Taylor shift:
/// the coefficient of κ^r is Σ_{q>r, q−r odd} C(q,r) c_q.
pub fn coeff_d(n: usize) -> Arc<CoeffPolynomial> {
    memoized(CoeffKind::D, n, || {
        let b = coeff_b(n);
        PolyTables::with(n, 0, |t| {
            let mut coeffs = vec![BigRational::zero(); n + 1];
            for (r, slot) in coeffs.iter_mut().enumerate() {
                let mut q = r + 1;
                while q <= n {
                    let c = &b.coeffs[q];
                    if !c.is_zero() {
                        *slot += c * BigRational::from_integer(t.binom[q][r].clone());
                    }
                    q += 2;
                }
            }
            CoeffPolynomial { kind: CoeffKind::D, n, coeffs }
        })
    })
}

/// D_n(κ) from its own generating function e^{κt} sinh t · G(t)^{−(n+1)/3}
/// by series arithmetic (independent of [`coeff_d`]).
pub fn coeff_d_series(n: usize) -> CoeffPolynomial {
    let rho = rat(-(n as i64) - 1, 3);
    let pots: Vec<BigRational> = (0..=n).map(|c| potential(&rho, c)).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (a, slot) in coeffs.iter_mut().enumerate() {
        let mut acc = BigRational::zero();
        let mut b = 1;
        while a + b <= n {
            acc += &pots[n - a - b] / BigRational::from_integer(factorial(b));
            b += 2;
        }
        *slot = acc / BigRational::from_integer(factorial(a));
    }
    CoeffPolynomial { kind: CoeffKind::D, n, coeffs }
}

/// B_n or D_n by kind.
pub fn coeff(kind: CoeffKind, n: usize) -> Arc<CoeffPolynomial> {
    match kind {
        CoeffKind::B => coeff_b(n),
        CoeffKind::D => coeff_d(n),
    }
}

/// Exact evaluation of a coefficient polynomial at a Gaussian rational.
pub fn eval_exact(p: &CoeffPolynomial, kappa: &GaussRational) -> GaussRational {
    p.eval_exact(kappa)
}

/// Extended-precision evaluation with at least `digits` significant digits
/// of coefficient conversion.
pub fn eval_float(p: &CoeffPolynomial, kappa: &ExtendedComplex, digits: usize) -> ExtendedComplex {
    p.eval_float(kappa, digits)
}

// ---------------------------------------------------------------------------
// Double-precision evaluation
// ---------------------------------------------------------------------------

const FLOAT_BITS: usize = 320;

type FloatMemo = RwLock<HashMap<(CoeffKind, usize), Arc<Vec<ExtendedReal>>>>;
static FLOAT_COEFFS: Lazy<FloatMemo> = Lazy::new(|| RwLock::new(HashMap::new()));

fn float_coeffs(kind: CoeffKind, n: usize) -> Arc<Vec<ExtendedReal>> {
    if let Some(v) = FLOAT_COEFFS.read().get(&(kind, n)) {
        return v.clone();
    }
    let p = coeff(kind, n);
    let v: Arc<Vec<ExtendedReal>> =
        Arc::new(p.coeffs.iter().map(|c| ExtendedReal::from_rational(c, FLOAT_BITS)).collect());
    FLOAT_COEFFS.write().entry((kind, n)).or_insert(v).clone()
}

/// B_n(κ) or D_n(κ) at a complex double κ, correctly rounded to double in
/// practice: the Horner recursion runs at 320 bits, which absorbs any
/// cancellation among the coefficient terms for n ≤ 250.
pub fn coeff_value(kind: CoeffKind, n: usize, kappa: Complex64) -> Complex64 {
    let cs = float_coeffs(kind, n);
    if kappa == Complex64::new(0.0, 0.0) {
        return Complex64::new(cs[0].to_f64(), 0.0);
    }
    let k = ExtendedComplex::from_c64(kappa, FLOAT_BITS);
    let mut acc = ExtendedComplex::zero(FLOAT_BITS);
    let real = kappa.im == 0.0;
    for c in cs.iter().rev() {
        if real {
            acc.re = acc.re.mul(&k.re).add(c);
        } else {
            acc = acc.mul(&k);
            acc.re = acc.re.add(c);
        }
    }
    acc.to_c64()
}

/// Value at κ = 0 as a double.
pub fn coeff_at_zero(kind: CoeffKind, n: usize) -> f64 {
    float_coeffs(kind, n)[0].to_f64()
}

/// Number of decimal digits in the largest numerator/denominator (a size
/// diagnostic used by the benches and the CLI).
pub fn max_digits(p: &CoeffPolynomial) -> usize {
    p.coeffs
        .iter()
        .map(|c| c.numer().abs().to_string().len().max(c.denom().to_string().len()))
        .max()
        .unwrap_or(0)
}

/// Sign of an exact rational as −1, 0, +1.
pub fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Helper for tests and reports: converts a small rational to f64.
pub fn to_f64_lossy(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
