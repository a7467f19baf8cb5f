use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Orbital rank and projection of a spherical harmonic Y^m_l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngularTriple {
    pub l: u32,
    pub m: i32,
}

impl AngularTriple {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(domain(
                "AngularTriple::new",
                format!("|m| = {} exceeds l = {l}", m.abs()),
            ));
        }
        Ok(AngularTriple { l, m })
    }
}

/// Orthonormal associated Legendre factor P̄^m_l(cos θ) for m >= 0 such that
/// Y^m_l = P̄^m_l e^{imφ}; includes the Condon-Shortley phase.
fn normalized_legendre(l: u32, m: u32, cos_theta: f64) -> f64 {
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    let mut pmm = (0.25 / PI).sqrt();
    for k in 1..=m {
        let k = f64::from(k);
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * sin_theta;
    }
    if l == m {
        return pmm;
    }
    let mf = f64::from(m);
    let mut prev = pmm;
    let mut cur = (2.0 * mf + 3.0).sqrt() * cos_theta * pmm;
    let a = |l: f64| ((4.0 * l * l - 1.0) / (l * l - mf * mf)).sqrt();
    for ll in (m + 2)..=l {
        let lf = f64::from(ll);
        let next = a(lf) * (cos_theta * cur - prev / a(lf - 1.0));
        prev = cur;
        cur = next;
    }
    cur
}

/// Y^m_l(θ, φ) with the Condon-Shortley phase.
pub fn spherical_harmonic(l: i32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if l < 0 || m.abs() > l {
        return Err(domain("spherical_harmonic", format!("need |m| <= l, got l={l}, m={m}")));
    }
    let p = normalized_legendre(l as u32, m.unsigned_abs(), theta.cos());
    let y = Complex64::from_polar(p, f64::from(m.abs()) * phi);
    Ok(if m >= 0 {
        y
    } else if m % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    })
}

pub(crate) fn ylm(t: AngularTriple, theta: f64, phi: f64) -> Complex64 {
    spherical_harmonic(t.l as i32, t.m, theta, phi).expect("AngularTriple is always valid")
}
