use std::sync::OnceLock;

use crate::error::{domain, Result};

const FACTORIAL_TABLE_LEN: usize = 512;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(FACTORIAL_TABLE_LEN);
        let mut acc = 0.0_f64;
        t.push(0.0);
        for k in 1..FACTORIAL_TABLE_LEN {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    })
}

/// ln(n!).
pub fn ln_factorial(n: u32) -> f64 {
    let n = n as usize;
    if n < FACTORIAL_TABLE_LEN {
        ln_factorial_table()[n]
    } else {
        statrs::function::gamma::ln_gamma(n as f64 + 1.0)
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("ln_gamma", format!("argument must be positive, got {x}")));
    }
    // Exact at the integers, where the table is available.
    if x.fract() == 0.0 && x < FACTORIAL_TABLE_LEN as f64 {
        return Ok(ln_factorial(x as u32 - 1));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    ln_gamma(x).map(f64::exp)
}

/// ln of the binomial coefficient C(n, k); `None` when k > n.
pub fn ln_binomial(n: u32, k: u32) -> Option<f64> {
    (k <= n).then(|| ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k))
}

pub fn binomial(n: u32, k: u32) -> f64 {
    ln_binomial(n, k).map_or(0.0, |v| v.exp().round())
}

/// Generalized Laguerre polynomial L^a_n(x) by the three-term recurrence.
pub fn assoc_laguerre(n: u32, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Spherical Bessel function of the first kind j_p(x).
pub fn spherical_bessel(p: u32, x: f64) -> f64 {
    if x < 0.0 {
        let v = spherical_bessel(p, -x);
        return if p.is_multiple_of(2) { v } else { -v };
    }
    if x == 0.0 {
        return if p == 0 { 1.0 } else { 0.0 };
    }
    if x < 1.0_f64.max(f64::from(p)) {
        return spherical_bessel_series(p, x);
    }
    // Upward recurrence is stable for x >= p.
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if p == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (x * x) - c / x;
    for k in 1..p {
        let next = f64::from(2 * k + 1) / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn spherical_bessel_series(p: u32, x: f64) -> f64 {
    // x^p / (2p+1)!! * sum_k (-x^2/2)^k / (k! (2p+3)(2p+5)...(2p+2k+1))
    let mut lead = 1.0;
    for k in 1..=p {
        lead *= x / f64::from(2 * k + 1);
    }
    let y = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200u32 {
        term *= y / (f64::from(k) * f64::from(2 * p + 2 * k + 1));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}
