//! Centre-of-mass states of the isotropic 2-D harmonic trap.

use crate::error::{domain, invalid, Error, Result};
use crate::quadrature::GaussLaguerre;
use crate::specfun::{assoc_laguerre, ln_factorial};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMState {
    /// Vibrational quantum number.
    pub n: u32,
    /// Angular momentum projection.
    pub m: i32,
    /// Trap length w_r, atomic units.
    pub w_r: f64,
}

impl CMState {
    pub fn new(n: u32, m: i32, w_r: f64) -> Result<Self> {
        if m.unsigned_abs() > n || !(n - m.unsigned_abs()).is_multiple_of(2) {
            return Err(invalid(
                "CM state",
                format!("need N >= |M| and N - |M| even, got N={n}, M={m}"),
            ));
        }
        if !(w_r > 0.0) {
            return Err(invalid("CM state", format!("trap length must be positive, got {w_r}")));
        }
        Ok(CMState { n, m, w_r })
    }

    pub fn ground(w_r: f64) -> Result<Self> {
        Self::new(0, 0, w_r)
    }

    /// n₋ = (N - |M|)/2, the Laguerre degree.
    pub fn n_minus(&self) -> u32 {
        (self.n - self.m.unsigned_abs()) / 2
    }

    pub fn n_plus(&self) -> u32 {
        (self.n + self.m.unsigned_abs()) / 2
    }

    fn check(&self) -> Result<()> {
        Self::new(self.n, self.m, self.w_r).map(|_| ()).map_err(|e| match e {
            Error::Invalid { detail, .. } => domain("cm", detail),
            other => other,
        })
    }

    fn ln_norm(&self) -> f64 {
        0.5 * (2f64.ln() + ln_factorial(self.n_minus()) - ln_factorial(self.n_plus()))
    }
}

/// Radial amplitude with ∫ 𝒜² r dr = 1.
pub fn cm_amplitude(s: &CMState, r_cm: f64) -> Result<f64> {
    s.check()?;
    if !(r_cm >= 0.0) {
        return Err(domain(
            "cm_amplitude",
            format!("radius must be non-negative, got {r_cm}"),
        ));
    }
    let x = r_cm / s.w_r;
    let am = s.m.unsigned_abs();
    let lag = assoc_laguerre(s.n_minus(), f64::from(am), x * x);
    Ok(s.ln_norm().exp() / s.w_r * x.powi(am as i32) * lag * (-0.5 * x * x).exp())
}

/// ∫ a_f a_i x^β x dx with the dimensionless amplitudes a = w_r 𝒜.
pub fn cm_moment(f: &CMState, i: &CMState, beta: u32) -> Result<f64> {
    f.check()?;
    i.check()?;
    if (f.w_r - i.w_r).abs() > 1e-12 * f.w_r.max(i.w_r) {
        return Err(Error::TrapMismatch(f.w_r, i.w_r));
    }
    let (mf, mi) = (f.m.unsigned_abs(), i.m.unsigned_abs());
    let alpha = f64::from(mf + mi + beta) / 2.0;
    let points = (f.n_minus() + i.n_minus()) as usize / 2 + 2;
    let gl = GaussLaguerre::new(points, alpha);
    let integral =
        gl.integrate(|u| assoc_laguerre(f.n_minus(), f64::from(mf), u) * assoc_laguerre(i.n_minus(), f64::from(mi), u));
    // 2∫x^{2s+1}(..)e^{-x²}dx = ∫u^s(..)e^{-u}du; the 2 is absorbed in the norms
    Ok(0.5 * (f.ln_norm() + i.ln_norm()).exp() * integral)
}

/// E_CM = (N + 1)/(w_r² m_t), atomic units.
pub fn cm_energy(s: &CMState, m_t: f64) -> f64 {
    f64::from(s.n + 1) / (s.w_r * s.w_r * m_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;
    use approx::assert_relative_eq;

    fn st(n: u32, m: i32) -> CMState {
        CMState::new(n, m, 1.7).unwrap()
    }

    #[test]
    fn rejects_bad_states() {
        assert!(CMState::new(1, 0, 1.0).is_err());
        assert!(CMState::new(1, 3, 1.0).is_err());
        assert!(CMState::new(2, 0, 0.0).is_err());
        let bad = CMState { n: 1, m: 0, w_r: 1.0 };
        assert!(matches!(cm_amplitude(&bad, 0.1), Err(Error::Domain { .. })));
        assert!(cm_amplitude(&st(0, 0), -1.0).is_err());
    }

    #[test]
    fn amplitude_examples() {
        let w = 3.0;
        let s = CMState::new(0, 0, w).unwrap();
        assert_relative_eq!(cm_amplitude(&s, 0.0).unwrap(), 2f64.sqrt() / w, max_relative = 1e-15);
        assert_eq!(cm_amplitude(&CMState::new(1, 1, w).unwrap(), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn amplitude_normalization_by_quadrature() {
        let gl = GaussLegendre::new(200);
        for (n, m) in [(0, 0), (1, 1), (1, -1), (2, 0), (5, -3)] {
            let s = st(n, m);
            let norm = gl.integrate(0.0, 12.0 * s.w_r, |r| cm_amplitude(&s, r).unwrap().powi(2) * r);
            assert!((norm - 1.0).abs() < 1e-10, "({n},{m}): {norm}");
        }
    }

    #[test]
    fn moment_examples() {
        assert_relative_eq!(cm_moment(&st(0, 0), &st(0, 0), 0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(cm_moment(&st(0, 0), &st(0, 0), 2).unwrap(), 1.0, max_relative = 1e-14);
        // 2∫ x³ e^{-x²} dx = Γ(2)
        let v = cm_moment(&st(1, 1), &st(0, 0), 1).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-13);
        let v = cm_moment(&st(1, 1), &st(0, 0), 2).unwrap();
        assert_relative_eq!(v, 0.75 * std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        let other = CMState::new(0, 0, 2.0).unwrap();
        assert!(matches!(cm_moment(&st(0, 0), &other, 0), Err(Error::TrapMismatch(..))));
    }

    #[test]
    fn energy() {
        let s0 = CMState::new(0, 0, 2.0).unwrap();
        let s2 = CMState::new(2, 0, 2.0).unwrap();
        let s0w = CMState::new(0, 0, 4.0).unwrap();
        assert_eq!(cm_energy(&s0, 5.0), 1.0 / 20.0);
        assert_relative_eq!(cm_energy(&s2, 5.0), 3.0 * cm_energy(&s0, 5.0));
        assert_relative_eq!(cm_energy(&s0w, 5.0), cm_energy(&s0, 5.0) / 4.0);
    }

    fn ln_gamma_oracle(x: f64) -> f64 {
        statrs::function::gamma::ln_gamma(x)
    }

    fn binom(n: u32, k: u32) -> f64 {
        (1..=k).map(|i| f64::from(n + 1 - i) / f64::from(i)).product()
    }

    fn fact(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    // Laguerre coefficients expanded term by term, moments via Γ
    fn closed_form(f: (u32, i32), i: (u32, i32), beta: u32) -> f64 {
        let (af, ai) = (f.1.unsigned_abs(), i.1.unsigned_abs());
        let (nf, ni) = ((f.0 - af) / 2, (i.0 - ai) / 2);
        let (pf, pi) = ((f.0 + af) / 2, (i.0 + ai) / 2);
        let s = f64::from(af + ai + beta) / 2.0;
        let mut sum = 0.0;
        for k1 in 0..=nf {
            for k2 in 0..=ni {
                let c1 = (-1f64).powi(k1 as i32) * binom(nf + af, nf - k1) / fact(k1);
                let c2 = (-1f64).powi(k2 as i32) * binom(ni + ai, ni - k2) / fact(k2);
                sum += c1 * c2 * ln_gamma_oracle(s + f64::from(k1 + k2) + 1.0).exp();
            }
        }
        (fact(nf) * fact(ni) / (fact(pf) * fact(pi))).sqrt() * sum
    }

    fn states(nmax: u32) -> Vec<(u32, i32)> {
        let mut v = Vec::new();
        for n in 0..=nmax {
            let mut m = -(n as i32);
            while m <= n as i32 {
                v.push((n, m));
                m += 2;
            }
        }
        v
    }

    #[test]
    fn moments_match_gamma_expansion() {
        for f in states(4) {
            for i in states(4) {
                for beta in 0..5 {
                    let v = cm_moment(&st(f.0, f.1), &st(i.0, i.1), beta).unwrap();
                    let o = closed_form(f, i, beta);
                    assert!(
                        (v - o).abs() < 1e-10 * o.abs().max(1.0),
                        "{f:?} {i:?} {beta}: {v} vs {o}"
                    );
                }
            }
        }
    }

    #[test]
    fn orthonormal_within_m() {
        for a in states(6) {
            for b in states(6).into_iter().filter(|b| b.1 == a.1) {
                let v = cm_moment(&st(a.0, a.1), &st(b.0, b.1), 0).unwrap();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-10, "{a:?} {b:?}: {v}");
            }
        }
    }
}
