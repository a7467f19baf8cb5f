//! Gaussian quadrature rules and composite Simpson weights.

use std::f64::consts::PI;

use crate::specfun::ln_gamma;

/// n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-15 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, z);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes_weights(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// ∫_a^b f(x) dx.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes_weights().map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// n-point generalized Gauss-Laguerre rule for ∫_0^∞ u^alpha e^{-u} f(u) du.
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(n: usize, alpha: f64) -> Self {
        assert!(n >= 1 && alpha > -1.0);
        let nf = n as f64;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let ln_norm = ln_gamma(alpha + nf).expect("positive") - ln_gamma(nf).expect("positive");
        let mut z = 0.0_f64;
        for i in 0..n {
            // initial guesses after the classic asymptotic estimates
            z = match i {
                0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha),
                1 => z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) * (z - nodes[i - 2])
                        / (1.0 + 0.3 * alpha)
                }
            };
            let mut pp = 0.0;
            let mut p2 = 0.0;
            for _ in 0..200 {
                let mut p1 = 1.0;
                p2 = 0.0;
                for j in 0..n {
                    let jf = j as f64;
                    let p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * jf + 1.0 + alpha - z) * p2 - (jf + alpha) * p3) / (jf + 1.0);
                }
                pp = (nf * p1 - (nf + alpha) * p2) / z;
                let z1 = z;
                z = z1 - p1 / pp;
                if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            nodes[i] = z;
            weights[i] = -(ln_norm).exp() / (pp * nf * p2);
        }
        GaussLaguerre { nodes, weights }
    }

    pub fn nodes_weights(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes_weights().map(|(u, w)| w * f(u)).sum()
    }
}

/// Composite Simpson weights for `n` equally spaced points with spacing `h`.
/// An even point count falls back to a trailing 3/8 panel.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 3, "Simpson needs at least three points");
    let mut w = vec![0.0; n];
    let simpson_end = if n % 2 == 1 { n } else { n - 3 };
    if simpson_end >= 3 {
        for i in (0..simpson_end - 1).step_by(2) {
            w[i] += h / 3.0;
            w[i + 1] += 4.0 * h / 3.0;
            w[i + 2] += h / 3.0;
        }
    }
    if n.is_multiple_of(2) {
        let s = n - 4;
        for (k, c) in [1.0, 3.0, 3.0, 1.0].into_iter().enumerate() {
            w[s + k] += 3.0 * h / 8.0 * c;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let gl = GaussLegendre::new(8);
        for k in 0..16 {
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((gl.integrate(-1.0, 1.0, |x| x.powi(k)) - exact).abs() < 1e-14);
        }
        assert_relative_eq!(gl.integrate(0.0, PI, f64::sin), 2.0, max_relative = 1e-9);
    }

    #[test]
    fn laguerre_integrates_moments_exactly() {
        for &alpha in &[0.0, 0.5, 1.0, 2.5, 7.0] {
            let gq = GaussLaguerre::new(10, alpha);
            for k in 0..20 {
                let exact = ln_gamma(alpha + k as f64 + 1.0).unwrap().exp();
                let got = gq.integrate(|u| u.powi(k));
                assert_relative_eq!(got, exact, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        for n in [5usize, 6, 11, 12] {
            let h = 1.0 / (n - 1) as f64;
            let w = simpson_weights(n, h);
            let s: f64 = (0..n).map(|i| w[i] * (i as f64 * h).powi(3)).sum();
            assert_relative_eq!(s, 0.25, max_relative = 1e-13);
        }
    }
}
