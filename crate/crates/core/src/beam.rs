//! Laguerre-Gaussian field profile and its regular-solid-harmonic expansion.
//!
//! Solid harmonics use the normalization
//! `C^m_l = sqrt(4π/(2l+1) · (l-m)! (l+m)!)`, `R^m_l = C^m_l r^l Y^m_l`, with
//! the rank `l` always non-negative. In this normalization the stretched
//! harmonics satisfy `ρ^L e^{±iLφ} = s · 2^L L!/(2L)! · R^{±L}_L` (with
//! `s = (-1)^L` for the positive projection, `+1` for the negative one) and
//! `R^q_q R^{-q}_q = (-1)^q (2q)!²/(4^q q!²) ρ^{2q}`, so the Gaussian
//! envelope expands exactly into products `R^q_q R^{-q}_q`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::specfun::{ln_binomial, ln_factorial, spherical_harmonic};

/// Parameters of a zero-radial-index LG mode, in atomic units.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamSpec {
    /// Topological charge l.
    pub charge: i32,
    pub waist: f64,
    /// Field amplitude E0.
    pub amplitude: f64,
    /// Spherical polarization component σ ∈ {-1, 0, +1}.
    pub sigma: i32,
    pub wavenumber: f64,
    /// Highest Gaussian-envelope order kept in the expansion.
    pub q_max: u32,
}

impl BeamSpec {
    pub fn new(charge: i32, waist: f64, amplitude: f64, sigma: i32, wavenumber: f64, q_max: u32) -> Result<Self> {
        if !(waist > 0.0) {
            return Err(invalid("beam waist", format!("must be positive, got {waist}")));
        }
        if !(amplitude >= 0.0) {
            return Err(invalid(
                "field amplitude",
                format!("must be non-negative, got {amplitude}"),
            ));
        }
        if !(-1..=1).contains(&sigma) {
            return Err(invalid(
                "polarization",
                format!("sigma must be -1, 0 or +1, got {sigma}"),
            ));
        }
        if !(wavenumber >= 0.0) {
            return Err(invalid("wavenumber", format!("must be non-negative, got {wavenumber}")));
        }
        Ok(BeamSpec {
            charge,
            waist,
            amplitude,
            sigma,
            wavenumber,
            q_max,
        })
    }
}

/// One regular solid harmonic `coefficient · r^l Y^m_l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolidHarmonicTerm {
    pub l: u32,
    pub m: i32,
    pub coefficient: Complex64,
}

impl SolidHarmonicTerm {
    /// `R^m_l` itself: coefficient `C^m_l`.
    pub fn regular(l: u32, m: i32) -> Self {
        SolidHarmonicTerm {
            l,
            m,
            coefficient: Complex64::new(solid_harmonic_norm(l, m), 0.0),
        }
    }

    pub fn evaluate(&self, point: [f64; 3]) -> Complex64 {
        self.coefficient * r_l_ylm(self.l, self.m, point)
    }
}

/// Normalization constant `C^m_l`; zero outside `|m| <= l`.
pub fn solid_harmonic_norm(l: u32, m: i32) -> f64 {
    ln_solid_harmonic_norm(l, m).map_or(0.0, f64::exp)
}

pub(crate) fn ln_solid_harmonic_norm(l: u32, m: i32) -> Option<f64> {
    if m.unsigned_abs() > l {
        return None;
    }
    let lm = (l as i32 - m) as u32;
    let lp = (l as i32 + m) as u32;
    Some(0.5 * ((4.0 * PI / f64::from(2 * l + 1)).ln() + ln_factorial(lm) + ln_factorial(lp)))
}

fn spherical_coords(p: [f64; 3]) -> (f64, f64, f64) {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if r == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let theta = (p[2] / r).clamp(-1.0, 1.0).acos();
    let phi = p[1].atan2(p[0]);
    (r, theta, phi)
}

fn r_l_ylm(l: u32, m: i32, p: [f64; 3]) -> Complex64 {
    let (r, theta, phi) = spherical_coords(p);
    if l > 0 && r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    spherical_harmonic(l as i32, m, theta, phi).expect("validated rank/projection") * r.powi(l as i32)
}

/// `R^m_l(point)` in the normalization above.
pub fn regular_solid_harmonic(l: u32, m: i32, point: [f64; 3]) -> Complex64 {
    if m.unsigned_abs() > l {
        return Complex64::new(0.0, 0.0);
    }
    SolidHarmonicTerm::regular(l, m).evaluate(point)
}

/// Field amplitude 𝓔(ρ, φ, z) of the LG mode at the focal plane.
pub fn lg_amplitude(spec: &BeamSpec, rho: f64, phi: f64, z: f64) -> Complex64 {
    let l_abs = spec.charge.unsigned_abs();
    let pref = (2.0 / (PI * ln_factorial(l_abs).exp())).sqrt();
    let radial = (rho * 2f64.sqrt() / spec.waist).powi(l_abs as i32);
    let envelope = (-(rho * rho) / (spec.waist * spec.waist)).exp();
    let phase = Complex64::from_polar(1.0, f64::from(spec.charge) * phi + spec.wavenumber * z);
    phase * (spec.amplitude * pref * radial * envelope)
}

/// Expansion coefficient f(l, q) (magnitude, waist dependence explicit).
pub fn f_coeff(l: i32, q: u32, w0: f64) -> f64 {
    let la = l.unsigned_abs();
    let ln_v = f64::from(q) * 4f64.ln() + ln_factorial(q)
        - f64::from(2 * q + la) * w0.ln()
        - 2.0 * ln_factorial(2 * q)
        - ln_factorial(2 * la)
        + 0.5 * (f64::from(3 * la + 1) * 2f64.ln() + ln_factorial(la) - PI.ln());
    ln_v.exp()
}

/// Coefficient g(l, q) multiplying the dipole matrix element.
pub fn g_coeff(l: i32, q: u32, w_r: f64, w0: f64) -> f64 {
    let la = l.unsigned_abs();
    let ln_v = PI.ln() + f64::from(2 * q + la) * (w_r / w0).ln() + f64::from(q) * 4f64.ln() + ln_factorial(q)
        - 2.0 * ln_factorial(2 * q)
        - ln_factorial(2 * la)
        + 0.5 * (f64::from(3 * la + 1) * 2f64.ln() + ln_factorial(la) - 3f64.ln());
    ln_v.exp()
}

/// One Gaussian-order term `coefficient · R^l_{|l|} R^q_q R^{-q}_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTerm {
    pub q: u32,
    /// f(l, q) as a positive magnitude.
    pub f: f64,
    /// Signed coefficient actually multiplying the harmonic product
    /// (f times the phase from the stretched-harmonic identities).
    pub coefficient: f64,
    pub harmonics: [SolidHarmonicTerm; 3],
}

impl FieldTerm {
    pub fn evaluate(&self, point: [f64; 3]) -> Complex64 {
        self.harmonics
            .iter()
            .fold(Complex64::new(self.coefficient, 0.0), |acc, h| acc * h.evaluate(point))
    }
}

/// Truncated solid-harmonic series of the LG profile, `q = 0..=q_max`,
/// without the `E0` and `e^{ikz}` factors.
pub fn expand_field(spec: &BeamSpec) -> Vec<FieldTerm> {
    let l = spec.charge;
    let la = l.unsigned_abs();
    let vortex_sign = if l > 0 && la % 2 == 1 { -1.0 } else { 1.0 };
    (0..=spec.q_max)
        .map(|q| {
            let f = f_coeff(l, q, spec.waist);
            FieldTerm {
                q,
                f,
                coefficient: vortex_sign * f,
                harmonics: [
                    SolidHarmonicTerm::regular(la, l),
                    SolidHarmonicTerm::regular(q, q as i32),
                    SolidHarmonicTerm::regular(q, -(q as i32)),
                ],
            }
        })
        .collect()
}

/// Outcome of comparing the truncated expansion with the closed-form profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCheck {
    pub residual: f64,
    /// False when the closed-form value vanishes and the residual is absolute.
    pub relative: bool,
}

pub fn verify_expansion(spec: &BeamSpec, r: f64, theta: f64, phi: f64) -> ExpansionCheck {
    let point = [
        r * theta.sin() * phi.cos(),
        r * theta.sin() * phi.sin(),
        r * theta.cos(),
    ];
    let z = point[2];
    let plane = Complex64::from_polar(1.0, spec.wavenumber * z);
    let series: Complex64 =
        expand_field(spec).iter().map(|t| t.evaluate(point)).sum::<Complex64>() * plane * spec.amplitude;
    let exact = lg_amplitude(spec, r * theta.sin(), phi, z);
    let diff = (series - exact).norm();
    if exact.norm() == 0.0 {
        ExpansionCheck {
            residual: diff,
            relative: false,
        }
    } else {
        ExpansionCheck {
            residual: diff / exact.norm(),
            relative: true,
        }
    }
}

/// One term of the translation theorem:
/// `weight · R^{m1}_{l1}(λr) · R^{m-m1}_{l-l1}(r_cm)`, with both harmonics
/// evaluated (their `coefficient` holds the value at the given vector).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslatedPair {
    pub weight: f64,
    pub electron: SolidHarmonicTerm,
    pub centre_of_mass: SolidHarmonicTerm,
}

impl TranslatedPair {
    pub fn value(&self) -> Complex64 {
        self.electron.coefficient * self.centre_of_mass.coefficient * self.weight
    }
}

/// Addition-theorem weight for this normalization, `C(l-m, l1-m1) C(l+m, l1+m1)`.
pub fn translation_weight(l: u32, m: i32, l1: u32, m1: i32) -> f64 {
    let (l, l1) = (l as i32, l1 as i32);
    if l1 > l || m1.abs() > l1 || (m - m1).abs() > l - l1 {
        return 0.0;
    }
    let a = ln_binomial((l - m) as u32, (l1 - m1) as u32);
    let b = ln_binomial((l + m) as u32, (l1 + m1) as u32);
    match (a, b) {
        (Some(a), Some(b)) => (a + b).exp().round(),
        _ => 0.0,
    }
}

/// Splits `R^m_l(r_cm + λr)` into products of harmonics of `λr` and `r_cm`.
/// Pairs that vanish identically at the given vectors are dropped.
pub fn translate_solid_harmonic(l: u32, m: i32, r_cm: [f64; 3], lam_r: [f64; 3]) -> Vec<TranslatedPair> {
    let mut out = Vec::new();
    if m.unsigned_abs() > l {
        return out;
    }
    for l1 in 0..=l {
        let l1i = l1 as i32;
        for m1 in -l1i..=l1i {
            let l2 = l - l1;
            let m2 = m - m1;
            if m2.unsigned_abs() > l2 {
                continue;
            }
            let weight = translation_weight(l, m, l1, m1);
            let e = regular_solid_harmonic(l1, m1, lam_r);
            let c = regular_solid_harmonic(l2, m2, r_cm);
            if weight == 0.0 || e.norm() == 0.0 || c.norm() == 0.0 {
                continue;
            }
            out.push(TranslatedPair {
                weight,
                electron: SolidHarmonicTerm {
                    l: l1,
                    m: m1,
                    coefficient: e,
                },
                centre_of_mass: SolidHarmonicTerm {
                    l: l2,
                    m: m2,
                    coefficient: c,
                },
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(l: i32, q_max: u32) -> BeamSpec {
        BeamSpec::new(l, 1.0, 1.0, 1, 0.0, q_max).unwrap()
    }

    #[test]
    fn amplitude_examples() {
        assert_eq!(lg_amplitude(&spec(1, 0), 0.0, 0.3, 0.0).norm(), 0.0);
        let a = lg_amplitude(&spec(0, 0), 0.0, 0.0, 0.0);
        assert_relative_eq!(a.re, (2.0 / PI).sqrt(), max_relative = 1e-15);
        let b = lg_amplitude(&spec(1, 0), 1.0 / 2f64.sqrt(), 0.0, 0.0);
        assert_relative_eq!(b.re, (2.0 / PI).sqrt() * (-0.5f64).exp(), max_relative = 1e-14);
        assert!(b.im.abs() < 1e-16);
    }

    #[test]
    fn f_coeff_examples() {
        assert_relative_eq!(f_coeff(0, 0, 1.0), (2.0 / PI).sqrt(), max_relative = 1e-14);
        assert_relative_eq!(f_coeff(1, 0, 1.0), 2.0 / PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(f_coeff(-1, 0, 1.0), 2.0 / PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(f_coeff(0, 1, 1.0), (2.0 / PI).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn g_coeff_examples() {
        let (wr, w0) = (2.2, 2.7);
        assert_relative_eq!(
            g_coeff(1, 0, wr, w0),
            2.0 * PI * (wr / w0) / 3f64.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(g_coeff(0, 0, wr, w0), PI * (2.0f64 / 3.0).sqrt(), max_relative = 1e-14);
        for &(l, q) in &[(1, 0), (2, 1), (-3, 2), (4, 4)] {
            let halved = g_coeff(l, q, wr, 2.0 * w0);
            let expect = g_coeff(l, q, wr, w0) / 2f64.powi(2 * q as i32 + l.abs());
            assert_relative_eq!(halved, expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn norm_convention() {
        assert_relative_eq!(solid_harmonic_norm(0, 0), (4.0 * PI).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(solid_harmonic_norm(1, 1), (8.0 * PI / 3.0).sqrt(), max_relative = 1e-15);
        assert_eq!(solid_harmonic_norm(1, 2), 0.0);
        assert_relative_eq!(regular_solid_harmonic(0, 0, [0.0; 3]).re, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn stretched_identity() {
        // ρ^L e^{iLφ} = (-1)^L 2^L L!/(2L)! R^L_L
        let p = [0.3f64, -0.7, 0.4];
        let rho = (p[0] * p[0] + p[1] * p[1]).sqrt();
        let phi = p[1].atan2(p[0]);
        for big_l in 0..5u32 {
            let lhs = Complex64::from_polar(rho.powi(big_l as i32), f64::from(big_l) * phi);
            let scale = (f64::from(big_l) * 2f64.ln() + ln_factorial(big_l) - ln_factorial(2 * big_l)).exp();
            let sign = if big_l % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = regular_solid_harmonic(big_l, big_l as i32, p) * (sign * scale);
            assert!((lhs - rhs).norm() < 1e-13);
            let rhs_neg = regular_solid_harmonic(big_l, -(big_l as i32), p) * scale;
            assert!((lhs.conj() - rhs_neg).norm() < 1e-13);
        }
    }

    #[test]
    fn expansion_terms() {
        let t = expand_field(&spec(0, 0));
        assert_eq!(t.len(), 1);
        assert_eq!(
            (t[0].harmonics[0].l, t[0].harmonics[1].l, t[0].harmonics[2].l),
            (0, 0, 0)
        );
        let t = expand_field(&spec(1, 1));
        let ranks: Vec<_> = t
            .iter()
            .map(|x| (x.harmonics[0].l, x.harmonics[1].l, x.harmonics[2].l))
            .collect();
        assert_eq!(ranks, vec![(1, 0, 0), (1, 1, 1)]);
        for term in expand_field(&spec(-3, 5)) {
            assert_eq!(term.harmonics[1].m + term.harmonics[2].m, 0);
        }
    }

    #[test]
    fn expansion_residuals() {
        let s = spec(0, 0);
        let c = verify_expansion(&s, 0.0, 0.0, 0.0);
        assert!(c.relative && c.residual < 1e-15);
        let on_axis = verify_expansion(&spec(2, 3), 0.5, 0.0, 0.0);
        assert!(!on_axis.relative);
        let mut s8 = spec(2, 8);
        s8.wavenumber = 0.7;
        let rho = 0.3 * s8.waist;
        let r = rho / 1.1f64.sin();
        assert!(verify_expansion(&s8, r, 1.1, 0.4).residual < 1e-6);
        let r0 = verify_expansion(&spec(2, 0), r, 1.1, 0.4).residual;
        let r1 = verify_expansion(&spec(2, 1), r, 1.1, 0.4).residual;
        assert!(r1 < r0);
    }

    #[test]
    fn translation_null_cases() {
        let v = [0.3, -0.2, 0.5];
        let t = translate_solid_harmonic(3, 2, v, [0.0; 3]);
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].electron.l, t[0].centre_of_mass.l), (0, 3));
        let t = translate_solid_harmonic(3, 2, [0.0; 3], v);
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].electron.l, t[0].electron.m), (3, 2));
    }

    #[test]
    fn translation_reproduces_direct_value() {
        let a = [0.4, -1.1, 0.7];
        let b = [-0.9, 0.2, 0.35];
        for l in 0..=4u32 {
            for m in -(l as i32)..=l as i32 {
                let sum: Complex64 = translate_solid_harmonic(l, m, a, b).iter().map(|p| p.value()).sum();
                let direct = regular_solid_harmonic(l, m, [a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
                assert!((sum - direct).norm() <= 1e-10 * direct.norm().max(1.0), "l={l} m={m}");
            }
        }
    }
}
