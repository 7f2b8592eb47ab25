//! Complex log-gamma by upward recurrence plus the Stirling series.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)), k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// `Some(n)` if `z` is within `1e-12` of the non-positive integer `-n`.
pub fn pole_index(z: C64) -> Option<i64> {
    let r = z.re.round();
    if r <= 0.0 && (z - C64::new(r, 0.0)).norm() < 1e-12 {
        Some(-r as i64)
    } else {
        None
    }
}

fn stirling(z: C64) -> C64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut corr = C64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        corr += p * c;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + corr
}

/// Principal branch of `ln Gamma(z)`: the continuation from the positive
/// axis that is analytic off `(-inf, 0]`.
pub fn log_gamma(z: C64) -> Result<C64> {
    if pole_index(z).is_some() {
        return Err(Error::Pole(format!("{z}")));
    }
    Ok(log_gamma_unchecked(z))
}

/// [`log_gamma`] without the pole guard.
pub fn log_gamma_unchecked(z: C64) -> C64 {
    let target = if z.im.abs() >= 12.0 { 0.0 } else { 10.0 };
    let mut shift = C64::new(0.0, 0.0);
    let mut zz = z;
    while zz.re < target {
        shift += zz.ln();
        zz += 1.0;
    }
    stirling(zz) - shift
}

/// `Gamma(z)`; infinite at poles.
pub fn gamma(z: C64) -> C64 {
    match pole_index(z) {
        Some(_) => C64::new(f64::INFINITY, 0.0),
        None => log_gamma_unchecked(z).exp(),
    }
}

/// `1/Gamma(z)`, entire; exactly zero at poles.
pub fn rgamma(z: C64) -> C64 {
    match pole_index(z) {
        Some(_) => C64::new(0.0, 0.0),
        None => (-log_gamma_unchecked(z)).exp(),
    }
}

/// `prod Gamma(num) / prod Gamma(den)` evaluated in log space.
/// A pole in the denominator gives zero; a pole in the numerator is an error.
pub fn gamma_ratio(num: &[C64], den: &[C64]) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for &z in num {
        acc += log_gamma(z)?;
    }
    for &z in den {
        if pole_index(z).is_some() {
            return Ok(C64::new(0.0, 0.0));
        }
        acc -= log_gamma_unchecked(z);
    }
    Ok(acc.exp())
}

/// Real `Gamma(x)` for convenience.
pub fn gamma_real(x: f64) -> f64 {
    gamma(C64::new(x, 0.0)).re
}

/// Pochhammer symbol `(a)_n`.
pub fn pochhammer(a: C64, n: usize) -> C64 {
    (0..n).fold(C64::new(1.0, 0.0), |p, k| p * (a + k as f64))
}
