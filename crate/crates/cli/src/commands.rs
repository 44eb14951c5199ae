//! Subcommand implementations.  Each returns the records (or text) it
//! produced; rendering is left to the caller.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use nicholson_core::bounds::{bound, true_remainder, watson_inequalities, BoundSpec, SectorClass};
use nicholson_core::exact::{coeff, coeff_b, coeff_b_comtet, coeff_b_lauwerier, CoeffKind, GaussRational};
use nicholson_core::hyper::{reexpanded_h1, reexpanded_h1_prime, stokes_profile, TruncationPlan};
use nicholson_core::late::{inverse_factorial_approx, significant_digits, reference_table, REFERENCE_TABLE};
use nicholson_core::oracles::oracle_value;
use nicholson_core::quad::QuadratureConfig;
use nicholson_core::remainders::{remainder_integral, RemainderRequest};
use nicholson_core::series::{coeff_kind, partial_sum};
use nicholson_core::sheet::{FunctionKind, SheetedComplex};
use nicholson_core::terminant::{
    c_of_phi, c_relation_rhs, sheet_shift, terminant_with, TerminantBackend, TerminantQuery,
};
use nicholson_core::xprec::digits_to_bits;

use crate::args::{BoundsArgs, CoeffsArgs, EvalArgs, LateArgs, RemainderArgs, StokesArgs, TerminantArgs};
use crate::cache::CoeffCache;
use crate::error::{CliError, Result};
use crate::output::{sci, Record};

/// What a command produced.
#[derive(Debug)]
pub enum Output {
    Records(Vec<Record>),
    /// Preformatted lines (coefficient text, self-check matrix).
    Text(Vec<String>),
    /// A fixed-column table (the Stokes profile) plus its record form.
    Table { header: Vec<&'static str>, rows: Vec<Vec<String>>, records: Vec<Record> },
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn fmt_complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn ensure(cache: Option<&CoeffCache>, kind: CoeffKind, n: usize) -> Result<()> {
    match cache {
        Some(c) => c.ensure(kind, n),
        None => Ok(()),
    }
}

/// `coeffs`: the polynomial, or its exact value at κ.
pub fn coeffs(a: &CoeffsArgs, digits: usize, text: bool, cache: Option<&CoeffCache>) -> Result<Output> {
    ensure(cache, a.kind, a.n)?;
    let p = coeff(a.kind, a.n);
    let name = format!("{}_{}", a.kind, a.n);
    let poly = p.to_string();
    match &a.kappa {
        None => {
            if text {
                return Ok(Output::Text(vec![format!("{name} = {poly}")]));
            }
            let v = Complex64::new(nicholson_core::exact::to_f64_lossy(&p.at_zero()), 0.0);
            let rec = Record::new("coefficient", &inputs(&[("kind", a.kind.to_string()), ("n", a.n.to_string())]), v)
                .with_input("polynomial", &poly);
            Ok(Output::Records(vec![rec]))
        }
        Some(k) => {
            let exact = p.eval_exact(k);
            let x = exact.to_extended(digits_to_bits(digits));
            let decimal = if exact.is_real() {
                x.re.to_sci_string(digits)
            } else {
                format!("{} + {}i", x.re.to_sci_string(digits), x.im.to_sci_string(digits))
            };
            if text {
                return Ok(Output::Text(vec![format!("{name}({k}) = {exact} ≈ {decimal}")]));
            }
            let rec = Record::new(
                "coefficient_value",
                &inputs(&[("kind", a.kind.to_string()), ("n", a.n.to_string()), ("kappa", k.to_string())]),
                exact.to_c64(),
            )
            .with_input("exact", exact)
            .with_input("decimal", decimal);
            Ok(Output::Records(vec![rec]))
        }
    }
}

/// `eval`: plain partial sum, optional re-expansion, and the oracle.
pub fn eval(a: &EvalArgs, cache: Option<&CoeffCache>) -> Result<Output> {
    let cfg = cfg();
    let ck = coeff_kind(a.kind);
    ensure(cache, ck, a.terms)?;
    let base = inputs(&[
        ("kind", a.kind.to_string()),
        ("z", a.z.to_string()),
        ("kappa", fmt_complex(a.kappa)),
        ("terms", a.terms.to_string()),
    ]);
    let oracle = oracle_value(a.kind, a.z.to_c64() - a.kappa, a.z, &cfg)?;
    let mut out = vec![Record::new("partial_sum", &base, partial_sum(a.kind, a.z, a.kappa, a.terms)).against(oracle)];
    if let Some(k) = a.hyper {
        let derivative = match a.kind {
            FunctionKind::H1 => false,
            FunctionKind::H1p => true,
            other => return Err(CliError::Usage(format!("--hyper is available for H1 and H1p only, not {other}"))),
        };
        let nm = a.terms.div_ceil(3).max(1);
        ensure(cache, ck, 3 * nm + 3 * k + 3)?;
        let plan = TruncationPlan::new(nm, nm, k, k, a.z.r)?;
        let v = if derivative {
            reexpanded_h1_prime(a.z, a.kappa, &plan, &cfg)?
        } else {
            reexpanded_h1(a.z, a.kappa, &plan, &cfg)?
        };
        out.push(
            Record::new("reexpanded", &base, v)
                .with_input("plan", format!("N={nm},M={nm},K={k},L={k}"))
                .against(oracle),
        );
    }
    out.push(Record::new("oracle", &base, oracle));
    Ok(Output::Records(out))
}

/// `bounds`: every applicable bound, the true remainder and the margins.
pub fn bounds(a: &BoundsArgs, cache: Option<&CoeffCache>) -> Result<Output> {
    let cfg = cfg();
    ensure(cache, coeff_kind(a.kind), 2 * a.n + 6)?;
    let base = inputs(&[("kind", a.kind.to_string()), ("nu", a.nu.to_string()), ("N", a.n.to_string())]);
    let rem = true_remainder(a.kind, a.nu, a.n, &cfg)?;
    let mut out = Vec::new();
    let mut last_err = None;
    for class in SectorClass::ALL {
        match bound(&BoundSpec::new(a.kind, a.n, class), a.nu) {
            Ok(b) => {
                // The error fields carry the margin: bound − |R_N| and its
                // ratio to |R_N|.
                let mut r = Record::new("bound", &base, Complex64::new(b, 0.0)).with_input("class", class.name());
                r.error_abs = Some(b - rem.norm());
                r.error_rel = Some((b - rem.norm()) / rem.norm());
                out.push(r);
            }
            Err(e) => last_err = Some(e),
        }
    }
    if out.is_empty() {
        return Err(last_err.expect("at least one class was tried").into());
    }
    out.push(Record::new("true_remainder", &base, rem));
    Ok(Output::Records(out))
}

/// `remainder`: the resurgence integral against oracle − partial sum.
pub fn remainder(a: &RemainderArgs, cache: Option<&CoeffCache>) -> Result<Output> {
    let cfg = cfg();
    ensure(cache, coeff_kind(a.kind), a.n)?;
    let base = inputs(&[
        ("kind", a.kind.to_string()),
        ("z", a.z.to_string()),
        ("kappa", fmt_complex(a.kappa)),
        ("N", a.n.to_string()),
    ]);
    let quad = remainder_integral(&RemainderRequest::new(a.kind, a.z, a.kappa, a.n), &cfg)?;
    let oracle = oracle_value(a.kind, a.z.to_c64() - a.kappa, a.z, &cfg)?;
    let sub = oracle - partial_sum(a.kind, a.z, a.kappa, a.n);
    Ok(Output::Records(vec![
        Record::new("quadrature", &base, quad).against(sub),
        Record::new("subtraction", &base, sub),
    ]))
}

/// `terminant`: both backends, the integral route compared with the
/// incomplete-gamma route.
pub fn terminant(a: &TerminantArgs) -> Result<Output> {
    let cfg = cfg();
    let q = TerminantQuery::new(a.p, a.w)?;
    let base = inputs(&[("p", a.p.to_string()), ("w", a.w.to_string())]);
    let gamma = terminant_with(q, TerminantBackend::IncompleteGamma, &cfg)?;
    let integral = terminant_with(q, TerminantBackend::Integral, &cfg)?;
    Ok(Output::Records(vec![
        Record::new("integral", &base, integral).against(gamma),
        Record::new("incomplete_gamma", &base, gamma),
    ]))
}

/// `stokes`: the normalised terminant and the error-function profile.
pub fn stokes(a: &StokesArgs) -> Result<Output> {
    if a.grid < 2 {
        return Err(CliError::Usage(format!("--grid needs at least 2 points, got {}", a.grid)));
    }
    if !(a.theta_max > a.theta_min) {
        return Err(CliError::Usage("--theta-max must exceed --theta-min".into()));
    }
    let step = (a.theta_max - a.theta_min) / (a.grid - 1) as f64;
    let thetas: Vec<f64> = (0..a.grid).map(|i| a.theta_min + i as f64 * step).collect();
    let rows = stokes_profile(a.r, &thetas, &cfg())?;
    let table = rows
        .iter()
        .map(|s| vec![sci(s.theta), sci(s.terminant.re), sci(s.terminant.im), sci(s.erf)])
        .collect();
    let records = rows
        .iter()
        .map(|s| {
            let base = inputs(&[("r", a.r.to_string()), ("theta", sci(s.theta))]);
            Record::new("stokes_terminant", &base, s.terminant).against(Complex64::new(s.erf, 0.0))
        })
        .collect();
    Ok(Output::Table { header: vec!["theta", "terminant_re", "terminant_im", "erf"], rows: table, records })
}

/// `late`: the reference table, or one inverse-factorial approximation.
pub fn late(a: &LateArgs, digits: usize, cache: Option<&CoeffCache>) -> Result<Output> {
    if a.table1 {
        for row in REFERENCE_TABLE {
            ensure(cache, CoeffKind::B, row.n)?;
        }
        let rows = reference_table(digits)?;
        let out = rows
            .iter()
            .map(|row| {
                let p = row.printed;
                let base = inputs(&[("n", p.n.to_string()), ("kappa", p.kappa.to_string()), ("M", p.m.to_string())]);
                let mut r = Record::new("table_row", &base, Complex64::new(row.approx.to_f64(), 0.0))
                    .with_input("exact", row.exact.to_sci_string(significant_digits(p.exact)))
                    .with_input("approx", row.approx.to_sci_string(significant_digits(p.approx)))
                    .with_input("error", row.error.to_sci_string(significant_digits(p.error)))
                    .with_input("exact_digits", row.exact_digits())
                    .with_input("approx_digits", row.approx_digits())
                    .with_input("error_digits", row.error_digits());
                r.error_abs = Some(row.error.to_f64().abs());
                r.error_rel = Some(row.error.to_f64().abs() / row.exact.to_f64());
                r
            })
            .collect();
        return Ok(Output::Records(out));
    }
    let n = a.n.expect("required by the parser");
    let m = a.m.expect("required by the parser");
    let kappa = a.kappa.clone().unwrap_or_else(GaussRational::zero);
    ensure(cache, CoeffKind::B, n)?;
    let approx = inverse_factorial_approx(n, &kappa, m, digits)?;
    let bits = digits_to_bits(digits.max(30));
    let exact = coeff_b(n).eval_exact(&kappa).to_extended(bits);
    let err = exact.sub(&approx.value);
    let base = inputs(&[("n", n.to_string()), ("kappa", kappa.to_string()), ("M", m.to_string())]);
    let mut r = Record::new("inverse_factorial", &base, approx.value.to_c64())
        .with_input("approx_re", approx.value.re.to_sci_string(digits))
        .with_input("approx_im", approx.value.im.to_sci_string(digits))
        .with_input("error_abs_extended", err.abs().to_sci_string(digits.min(20)));
    r.error_abs = Some(err.abs().to_f64());
    r.error_rel = Some(err.abs().div(&exact.abs()).to_f64());
    Ok(Output::Records(vec![r, Record::new("exact", &base, exact.to_c64())]))
}

/// `selfcheck`: fast invariants, one PASS/FAIL line each.  Returns whether
/// all passed.
pub fn selfcheck<W: Write>(out: &mut W) -> Result<bool> {
    type Check = (&'static str, fn() -> std::result::Result<String, String>);
    let checks: [Check; 8] = [
        ("B_2 polynomial", || {
            let s = coeff(CoeffKind::B, 2).to_string();
            if s == "1/2*k^2 - 1/20" { Ok(s) } else { Err(s) }
        }),
        ("three coefficient engines agree (n ≤ 15)", || {
            for n in 0..=15 {
                let a = coeff_b(n);
                if coeff_b_comtet(n).coeffs.iter().enumerate().any(|(k, c)| *c != a.coeff(k))
                    || coeff_b_lauwerier(n).coeffs.iter().enumerate().any(|(k, c)| *c != a.coeff(k))
                {
                    return Err(format!("mismatch at n={n}"));
                }
            }
            Ok("n = 0..15".into())
        }),
        ("terminant p=1, w=1 equals iE_1(1)/2π", || {
            let q = TerminantQuery::new(1.0, SheetedComplex::polar(1.0, 0.0)).map_err(|e| e.to_string())?;
            let t = terminant_with(q, TerminantBackend::Integral, &cfg()).map_err(|e| e.to_string())?;
            let want = Complex64::new(0.0, 0.21938393439552029 / (2.0 * PI));
            let d = (t - want).norm();
            if d <= 1e-12 { Ok(format!("diff {d:.1e}")) } else { Err(format!("{t} vs {want}")) }
        }),
        ("terminant backends agree", || {
            let q = TerminantQuery::new(7.3, SheetedComplex::polar(9.0, 0.7)).map_err(|e| e.to_string())?;
            let a = terminant_with(q, TerminantBackend::Integral, &cfg()).map_err(|e| e.to_string())?;
            let b = terminant_with(q, TerminantBackend::IncompleteGamma, &cfg()).map_err(|e| e.to_string())?;
            let d = (a - b).norm() / b.norm();
            if d <= 1e-11 { Ok(format!("rel {d:.1e}")) } else { Err(format!("rel {d:.1e}")) }
        }),
        ("sheet shifts compose", || {
            let p = 2.37;
            let two = Complex64::from_polar(1.0, -2.0 * PI * 2.0 * p) * sheet_shift(p, 1) + sheet_shift(p, 2);
            let d = (two - sheet_shift(p, 3)).norm();
            if d <= 1e-12 { Ok(format!("diff {d:.1e}")) } else { Err(format!("diff {d:.1e}")) }
        }),
        ("singulant relation", || {
            let worst = (0..=40)
                .map(|i| -PI + 1e-2 + i as f64 * (4.0 * PI - 2e-2) / 40.0)
                .map(|phi| c_of_phi(phi).map(|c| (0.5 * c * c - c_relation_rhs(phi)).norm()))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?
                .into_iter()
                .fold(0.0f64, f64::max);
            if worst <= 1e-10 { Ok(format!("worst {worst:.1e}")) } else { Err(format!("worst {worst:.1e}")) }
        }),
        ("remainder integral matches subtraction", || {
            let z = SheetedComplex::polar(12.0, 0.4);
            let kappa = Complex64::new(0.3, -0.2);
            let q = remainder_integral(&RemainderRequest::new(FunctionKind::H1, z, kappa, 4), &cfg()).map_err(|e| e.to_string())?;
            let o = oracle_value(FunctionKind::H1, z.to_c64() - kappa, z, &cfg()).map_err(|e| e.to_string())?;
            let s = o - partial_sum(FunctionKind::H1, z, kappa, 4);
            let d = (q - s).norm() / s.norm();
            if d <= 1e-8 { Ok(format!("rel {d:.1e}")) } else { Err(format!("rel {d:.1e}")) }
        }),
        ("derivative inequalities on the real axis (ν = 10)", || {
            let w = watson_inequalities(10.0, &cfg()).map_err(|e| e.to_string())?;
            if w.all_hold() { Ok(format!("J′={:.6} Y′={:.6}", w.jp, w.yp)) } else { Err("an inequality fails".into()) }
        }),
    ];
    let mut all = true;
    for (name, f) in checks {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                all = false;
                ("FAIL", d)
            }
        };
        writeln!(out, "{tag} {name}: {detail}")?;
    }
    Ok(all)
}
