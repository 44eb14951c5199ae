//! Globally adaptive 21-point Gauss–Kronrod quadrature for complex-valued
//! integrands.
//!
//! Intervals are kept in a max-heap keyed by their error estimate and the
//! worst one is bisected until the summed estimate meets
//! `max(abs_tol, rel_tol·|I|)`.  The per-panel estimate follows QUADPACK's
//! rescaling of |K₂₁ − G₁₀|, including its round-off floor; when the only
//! remaining error is that floor (heavy cancellation), the result is
//! accepted because further refinement cannot improve it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and refinement budget for every quadrature in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Relative tolerance, in (0, 1e−6].
    pub rel_tol: f64,
    /// Absolute tolerance.
    pub abs_tol: f64,
    /// Maximum number of interval bisections per integral.
    pub max_refinements: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-13, abs_tol: 1e-300, max_refinements: 4000 }
    }
}

impl QuadratureConfig {
    /// Checks the documented invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-6) {
            return Err(Error::InvalidInput(format!("rel_tol {} outside (0, 1e-6]", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidInput(format!("abs_tol {} must be >= 0", self.abs_tol)));
        }
        Ok(())
    }

    /// Same configuration with a different relative tolerance.
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// Value and error estimate of an integral.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.partial_cmp(&o.error).unwrap_or(Ordering::Equal)
    }
}

fn gk21<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_k = fc * WGK[10];
    let mut res_abs = fc.norm() * WGK[10];
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let ah = h.abs();
    let value = res_k * h;
    res_abs *= ah;
    res_asc *= ah;
    let mut err = ((res_k - res_g) * h).norm();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if floor > err {
        err = floor;
    }
    Panel { a, b, value, error: err, floor }
}

/// ∫_a^b f(x) dx.
pub fn integrate<F: FnMut(f64) -> Complex64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    integrate_breaks(f, &[a, b], cfg)
}

/// ∫ over consecutive intervals [p₀,p₁], [p₁,p₂], … with one global
/// error budget.
pub fn integrate_breaks<F: FnMut(f64) -> Complex64>(
    mut f: F,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if breaks.len() < 2 {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let mut heap = BinaryHeap::new();
    let mut evals = 0usize;
    for w in breaks.windows(2) {
        if w[0] != w[1] {
            heap.push(gk21(&mut f, w[0], w[1]));
            evals += 21;
        }
    }
    let mut refinements = 0usize;
    loop {
        let (total, err, floor) = heap
            .iter()
            .fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(s, e, fl), p| (s + p.value, e + p.error, fl + p.floor));
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.norm());
        if err <= tol || err <= 2.0 * floor || !total.is_finite() {
            if !total.is_finite() {
                return Err(Error::NonConvergence(format!(
                    "non-finite integrand on [{}, {}]",
                    breaks[0],
                    breaks[breaks.len() - 1]
                )));
            }
            return Ok(QuadResult { value: total, error: err, evaluations: evals });
        }
        if refinements >= cfg.max_refinements {
            return Err(Error::NonConvergence(format!(
                "{} refinements on [{}, {}]: estimate {:e}, error {:e}",
                refinements,
                breaks[0],
                breaks[breaks.len() - 1],
                total.norm(),
                err
            )));
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            // Interval exhausted at machine resolution: freeze it.
            heap.push(Panel { error: worst.floor, ..worst });
            refinements += 1;
            continue;
        }
        heap.push(gk21(&mut f, worst.a, mid));
        heap.push(gk21(&mut f, mid, worst.b));
        evals += 42;
        refinements += 1;
    }
}

/// ∫ f(z) dz along the straight segment from `z0` to `z1`.
pub fn integrate_segment<F: FnMut(Complex64) -> Complex64>(
    mut f: F,
    z0: Complex64,
    z1: Complex64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let dz = z1 - z0;
    let r = integrate(|s| f(z0 + dz * s) * dz, 0.0, 1.0, cfg)?;
    Ok(r)
}

/// ∫ f(z) dz along the polyline through `pts`, with one global budget.
pub fn integrate_polyline<F: FnMut(Complex64) -> Complex64>(
    mut f: F,
    pts: &[Complex64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if pts.len() < 2 {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let nseg = pts.len() - 1;
    let breaks: Vec<f64> = (0..=nseg).map(|k| k as f64).collect();
    integrate_breaks(
        |s| {
            let k = (s.floor() as usize).min(nseg - 1);
            let local = s - k as f64;
            let dz = pts[k + 1] - pts[k];
            f(pts[k] + dz * local) * dz
        },
        &breaks,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn polynomials_are_exact() {
        let cfg = QuadratureConfig::default();
        let r = integrate(|x| c(x.powi(20)), 0.0, 1.0, &cfg).unwrap();
        assert!((r.value.re - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_singularity() {
        let cfg = QuadratureConfig::default();
        let r = integrate(|x| c(x.ln()), 0.0, 1.0, &cfg).unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_segment() {
        // ∫_0^{iπ} e^z dz = e^{iπ} − 1 = −2.
        let cfg = QuadratureConfig::default();
        let r = integrate_segment(|z| z.exp(), c(0.0), Complex64::new(0.0, std::f64::consts::PI), &cfg).unwrap();
        assert!((r.value - c(-2.0)).norm() < 1e-14);
        let pts = [c(0.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, std::f64::consts::PI)];
        let r = integrate_polyline(|z| z.exp(), &pts, &cfg).unwrap();
        assert!((r.value - c(-2.0)).norm() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_reports() {
        let cfg = QuadratureConfig { max_refinements: 2, ..Default::default() };
        let r = integrate(|x| c((1.0 / x).sin()), 1e-6, 1.0, &cfg);
        assert!(matches!(r, Err(Error::NonConvergence(_))));
    }
}
