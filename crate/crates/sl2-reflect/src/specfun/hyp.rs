//! Gauss hypergeometric function for complex parameters and argument.
//!
//! Every closed-form path (power series, Pfaff, the `1/w` connection) reports
//! a cancellation factor `max|term| / |sum|`. The cheapest path whose factor
//! stays below [`CANCEL_MAX`] wins; otherwise the equation is integrated by
//! Taylor stepping along the ray from the origin.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_ratio, pochhammer, pole_index};
use super::quad::beta_integral;
use crate::error::{Error, Result};

/// Largest tolerated cancellation factor for a closed-form path.
pub const CANCEL_MAX: f64 = 1e3;

const SERIES_EPS: f64 = 1e-17;
const MAX_TERMS: usize = 4000;

/// Parameters and argument of `2F1(a, b; c; w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Args {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub w: C64,
}

impl Hyp2F1Args {
    pub fn new(a: C64, b: C64, c: C64, w: C64) -> Self {
        Hyp2F1Args { a, b, c, w }
    }

    pub fn eval(&self) -> Result<C64> {
        hyp2f1(self.a, self.b, self.c, self.w)
    }
}

/// Evaluation strategy, selectable for overlap checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Series,
    Pfaff,
    Connection,
    EulerIntegral,
    Ode,
}

#[derive(Debug, Clone, Copy)]
struct Est {
    value: C64,
    cancel: f64,
}

fn is_nonpos_int(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Plain power series with its cancellation factor. `None` if it fails to
/// converge within the term budget.
fn series(a: C64, b: C64, c: C64, w: C64) -> Option<Est> {
    let one = C64::new(1.0, 0.0);
    let mut term = one;
    let mut sum = one;
    let mut scale = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * w;
        term *= ratio;
        if term == C64::new(0.0, 0.0) {
            return Some(Est { value: sum, cancel: scale / sum.norm() });
        }
        sum += term;
        let t = term.norm();
        scale = scale.max(t);
        if t <= SERIES_EPS * sum.norm() && ratio.norm() < 0.95 {
            return Some(Est { value: sum, cancel: scale / sum.norm() });
        }
        if !t.is_finite() {
            return None;
        }
    }
    None
}

fn direct(a: C64, b: C64, c: C64, w: C64) -> Option<Est> {
    let plain = series(a, b, c, w)?;
    // Euler transformation: same radius, sometimes far less cancellation
    let e = c - a - b;
    let alt = series(c - a, c - b, c, w).map(|s| {
        let f = (1.0 - w).powc(e);
        Est { value: f * s.value, cancel: s.cancel }
    });
    Some(match alt {
        Some(alt) if alt.cancel < plain.cancel => alt,
        _ => plain,
    })
}

fn pfaff(a: C64, b: C64, c: C64, w: C64) -> Option<Est> {
    let z = w / (w - 1.0);
    let om = 1.0 - w;
    let first = series(a, c - b, c, z).map(|s| Est { value: om.powc(-a) * s.value, cancel: s.cancel });
    let second = series(c - a, b, c, z).map(|s| Est { value: om.powc(-b) * s.value, cancel: s.cancel });
    match (first, second) {
        (Some(x), Some(y)) => Some(if y.cancel < x.cancel { y } else { x }),
        (x, y) => x.or(y),
    }
}

/// `|a - b - round(a - b)|` below this is treated as the logarithmic case.
const DEGENERATE_GAP: f64 = 1e-3;

fn near_integer(z: C64) -> bool {
    (z - C64::new(z.re.round(), 0.0)).norm() < DEGENERATE_GAP
}

/// Large-argument connection formula in `1/w`.
fn connection(a: C64, b: C64, c: C64, w: C64) -> Result<Est> {
    if near_integer(a - b) {
        return Err(Error::Degenerate(format!("a - b = {} is near an integer", a - b)));
    }
    let one = C64::new(1.0, 0.0);
    let mw = -w;
    let iw = 1.0 / w;
    let ca = gamma_ratio(&[c, b - a], &[b, c - a])?;
    let cb = gamma_ratio(&[c, a - b], &[a, c - b])?;
    let sa = series(a, a - c + one, a - b + one, iw)
        .ok_or_else(|| Error::Convergence("connection series (a)".into()))?;
    let sb = series(b, b - c + one, b - a + one, iw)
        .ok_or_else(|| Error::Convergence("connection series (b)".into()))?;
    let ta = ca * mw.powc(-a);
    let tb = cb * mw.powc(-b);
    let value = ta * sa.value + tb * sb.value;
    let scale = (ta.norm() * sa.value.norm() * sa.cancel).max(tb.norm() * sb.value.norm() * sb.cancel);
    Ok(Est { value, cancel: scale / value.norm() })
}

/// Leading terms of the connection formula: the large-`|w|` asymptotics.
pub fn hyp2f1_leading(a: C64, b: C64, c: C64, w: C64) -> Result<C64> {
    let ca = gamma_ratio(&[c, b - a], &[b, c - a])?;
    let cb = gamma_ratio(&[c, a - b], &[a, c - b])?;
    Ok(ca * (-w).powc(-a) + cb * (-w).powc(-b))
}

/// Euler integral `Gamma(c)/(Gamma(b)Gamma(c-b)) int t^{b-1}(1-t)^{c-b-1}(1-wt)^{-a}`.
/// Requires `Re c > Re b > 0` for one ordering of `(a, b)`.
pub fn hyp2f1_euler(a: C64, b: C64, c: C64, w: C64) -> Result<C64> {
    check_args(a, b, c, w)?;
    let (a, b) = if b.re > 0.0 && (c - b).re > 0.0 {
        (a, b)
    } else if a.re > 0.0 && (c - a).re > 0.0 {
        (b, a)
    } else {
        return Err(Error::NotApplicable(format!(
            "Euler integral needs Re c > Re b > 0 (a = {a}, b = {b}, c = {c})"
        )));
    };
    let pref = gamma_ratio(&[c], &[b, c - b])?;
    let integral = beta_integral(b, c - b, |t| (1.0 - w * t).powc(-a))?;
    Ok(pref * integral)
}

/// Taylor coefficients `e_n = c_n h^n` of the solution about `p`, summed into
/// value and derivative at `p + h`.
fn taylor_step(a: C64, b: C64, c: C64, p: C64, f: C64, fp: C64, h: C64) -> Result<(C64, C64)> {
    let pq = p * (1.0 - p);
    let lin = 1.0 - 2.0 * p;
    let q0 = c - (a + b + 1.0) * p;
    let mut e0 = f;
    let mut e1 = fp * h;
    let mut val = e0 + e1;
    let mut der = e1;
    for n in 0..600usize {
        let nf = n as f64;
        let e2 = (-(lin * nf + q0) * (nf + 1.0) * e1 * h + (a + nf) * (b + nf) * e0 * h * h)
            / (pq * (nf + 2.0) * (nf + 1.0));
        val += e2;
        der += e2 * (nf + 2.0);
        let small = SERIES_EPS * val.norm().max(der.norm() * 1e-3);
        if e2.norm() <= small && e1.norm() <= small * 10.0 && n > 2 {
            return Ok((val, der / h));
        }
        e0 = e1;
        e1 = e2;
    }
    Err(Error::Convergence(format!("Taylor step at p = {p}, h = {h}")))
}

/// Integrate the hypergeometric equation from near the origin out to `w`.
fn ode(a: C64, b: C64, c: C64, w: C64) -> Result<C64> {
    Ok(ode_with_derivative(a, b, c, w)?.0)
}

fn ode_with_derivative(a: C64, b: C64, c: C64, w: C64) -> Result<(C64, C64)> {
    let ab = (a * b).norm().max((a + b).norm()).max(c.norm()).max(1.0);
    let r0 = (0.25 / ab).min(0.25).min(w.norm());
    let dir = w / w.norm();
    let mut p = dir * r0;
    let s0 = series(a, b, c, p).ok_or_else(|| Error::Convergence("ODE start".into()))?;
    let one = C64::new(1.0, 0.0);
    let s1 = series(a + one, b + one, c + one, p).ok_or_else(|| Error::Convergence("ODE start".into()))?;
    let mut f = s0.value;
    let mut fp = a * b / c * s1.value;
    let scale = ab.sqrt();
    for _ in 0..100_000 {
        let d = w - p;
        if d.norm() < 1e-15 * w.norm() {
            return Ok((f, fp));
        }
        let rad = p.norm().min((1.0 - p).norm());
        let hmax = (0.5 * rad).min(2.0 * (p * (1.0 - p)).norm().sqrt() / scale);
        let h = if d.norm() <= hmax { d } else { d / d.norm() * hmax };
        let (nf, nfp) = taylor_step(a, b, c, p, f, fp, h)?;
        f = nf;
        fp = nfp;
        p += h;
    }
    Err(Error::Convergence(format!("ODE path to w = {w} did not finish")))
}

fn check_args(a: C64, b: C64, c: C64, w: C64) -> Result<()> {
    if pole_index(c).is_some() && !terminates_before(a, b, c) {
        return Err(Error::Pole(format!("c = {c} is a non-positive integer")));
    }
    if w.im == 0.0 && w.re >= 1.0 && !(is_nonpos_int(a) || is_nonpos_int(b)) {
        return Err(Error::BranchCut(format!("{w}")));
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite() && w.is_finite()) {
        return Err(Error::InvalidParams(format!("non-finite 2F1 arguments ({a}, {b}, {c}, {w})")));
    }
    Ok(())
}

fn terminates_before(a: C64, b: C64, c: C64) -> bool {
    let m = |z: C64| if is_nonpos_int(z) { Some(-z.re as i64) } else { None };
    match (m(a).into_iter().chain(m(b)).min(), m(c)) {
        (Some(k), Some(n)) => k < n,
        _ => false,
    }
}

/// Order `(a, b)` canonically so the function is symmetric bit-for-bit.
fn canonical(a: C64, b: C64) -> (C64, C64) {
    if (a.re, a.im) <= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    }
}

/// `2F1(a, b; c; w)` on the principal branch.
pub fn hyp2f1(a: C64, b: C64, c: C64, w: C64) -> Result<C64> {
    check_args(a, b, c, w)?;
    let (a, b) = canonical(a, b);
    if w == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    if is_nonpos_int(a) || is_nonpos_int(b) {
        return series(a, b, c, w)
            .map(|e| e.value)
            .ok_or_else(|| Error::Convergence("terminating series".into()));
    }
    fn consider(best: &mut Option<Est>, e: Option<Est>) {
        if let Some(e) = e {
            if e.value.is_finite() && best.map_or(true, |b| e.cancel < b.cancel) {
                *best = Some(e);
            }
        }
    }
    let mut best: Option<Est> = None;
    let r = w.norm();
    if r <= 0.75 {
        consider(&mut best, direct(a, b, c, w));
    }
    if (w / (w - 1.0)).norm() <= 0.8 && best.map_or(true, |b| b.cancel > 10.0) {
        consider(&mut best, pfaff(a, b, c, w));
    }
    if r >= 2.0 && best.map_or(true, |b| b.cancel > 10.0) {
        consider(&mut best, connection(a, b, c, w).ok());
    }
    match best {
        Some(e) if e.cancel <= CANCEL_MAX => Ok(e.value),
        _ => ode(a, b, c, w),
    }
}

/// Force a particular evaluation strategy.
pub fn hyp2f1_method(a: C64, b: C64, c: C64, w: C64, method: Method) -> Result<C64> {
    check_args(a, b, c, w)?;
    let out_of_range = |what: &str| Error::NotApplicable(format!("{what} path does not cover w = {w}"));
    match method {
        Method::Series => {
            if w.norm() >= 1.0 {
                return Err(out_of_range("series"));
            }
            series(a, b, c, w).map(|e| e.value).ok_or_else(|| Error::Convergence("series".into()))
        }
        Method::Pfaff => {
            if (w / (w - 1.0)).norm() >= 1.0 {
                return Err(out_of_range("Pfaff"));
            }
            pfaff(a, b, c, w).map(|e| e.value).ok_or_else(|| Error::Convergence("Pfaff".into()))
        }
        Method::Connection => {
            if w.norm() <= 1.0 {
                return Err(out_of_range("connection"));
            }
            connection(a, b, c, w).map(|e| e.value)
        }
        Method::EulerIntegral => hyp2f1_euler(a, b, c, w),
        Method::Ode => {
            if w == C64::new(0.0, 0.0) {
                return Ok(C64::new(1.0, 0.0));
            }
            ode(a, b, c, w)
        }
    }
}

/// `d^k/dw^k 2F1(a, b; c; w) = (a)_k (b)_k / (c)_k 2F1(a+k, b+k; c+k; w)`.
pub fn hyp2f1_deriv(a: C64, b: C64, c: C64, w: C64, k: usize) -> Result<C64> {
    if k == 0 {
        return hyp2f1(a, b, c, w);
    }
    let pre = pochhammer(a, k) * pochhammer(b, k) / pochhammer(c, k);
    if pre == C64::new(0.0, 0.0) {
        return Ok(pre);
    }
    Ok(pre * hyp2f1(a + k as f64, b + k as f64, c + k as f64, w)?)
}
