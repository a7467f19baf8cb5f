//! Self-contained verification suites with independent oracles. Each suite
//! reports its worst residual against a fixed tolerance.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atom::{radial_matrix_element, solve_radial, RadialGrid, SolverFlag, SpeciesParams};
use crate::beam::{regular_solid_harmonic, translate_solid_harmonic, verify_expansion, BeamSpec};
use crate::cm::{cm_moment, CMState};
use crate::coupling::lambda_integral_oracle;
use crate::quadrature::GaussLegendre;
use crate::specfun::{clebsch_gordan_half, gamma, multi_gaunt, wigner3j_half, ylm, AngularTriple, HalfInt};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl SuiteReport {
    fn new(name: &'static str, residual: f64, tolerance: f64, detail: String) -> Self {
        SuiteReport {
            name,
            passed: residual.is_finite() && residual <= tolerance,
            residual,
            tolerance,
            detail,
        }
    }

    fn failed(name: &'static str, detail: String) -> Self {
        SuiteReport {
            name,
            passed: false,
            residual: f64::INFINITY,
            tolerance: 0.0,
            detail,
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<22} residual {:.3e} (tol {:.1e})  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance,
            self.detail
        )
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Hydrogen R_nl(r) from the explicit Laguerre sum.
pub fn hydrogen_radial(n: u32, l: u32, r: f64) -> f64 {
    let nf = f64::from(n);
    let rho = 2.0 * r / nf;
    let k = n - l - 1;
    let a = 2 * l + 1;
    let mut lag = 0.0;
    for i in 0..=k {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        lag += sign * factorial(k + a) / (factorial(k - i) * factorial(a + i) * factorial(i)) * rho.powi(i as i32);
    }
    let norm = ((2.0 / nf).powi(3) * factorial(k) / (2.0 * nf * factorial(n + l))).sqrt();
    norm * (-rho / 2.0).exp() * rho.powi(l as i32) * lag
}

/// ∫ conj(Y_bra) Π Y_factors Y_ket dΩ by Gauss-Legendre in cos θ and the
/// trapezoid rule in φ. Exact for the polynomial integrands at these ranks.
pub fn angular_quadrature(factors: &[AngularTriple], bra: AngularTriple, ket: AngularTriple) -> f64 {
    let rank: u32 = factors.iter().map(|f| f.l).sum::<u32>() + bra.l + ket.l;
    let gl = GaussLegendre::new(rank as usize / 2 + 4);
    let n_phi = 2 * rank as usize + 4;
    let mut total = Complex64::new(0.0, 0.0);
    for (x, w) in gl.nodes_weights() {
        let theta = x.acos();
        for k in 0..n_phi {
            let phi = 2.0 * PI * k as f64 / n_phi as f64;
            let mut v = ylm(bra, theta, phi).conj() * ylm(ket, theta, phi);
            for f in factors {
                v *= ylm(*f, theta, phi);
            }
            total += v * w;
        }
    }
    (total * (2.0 * PI / n_phi as f64)).re
}

/// Truncated series against the closed-form profile at random points with
/// ρ ≤ 0.5 w0, q_max = 8, charges -3..=3.
pub fn expansion_suite(seed: u64, points: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w0 = 5.1;
    let mut worst = 0.0f64;
    for _ in 0..points {
        let l = rng.gen_range(-3..=3);
        let spec = BeamSpec::new(l, w0, 1.3, 1, 0.7, 8).expect("valid beam");
        let rho = rng.gen_range(0.01..0.5) * w0;
        let z = rng.gen_range(-0.5..0.5) * w0;
        let phi = rng.gen_range(0.0..2.0 * PI);
        let r = rho.hypot(z);
        let check = verify_expansion(&spec, r, rho.atan2(z), phi);
        worst = worst.max(check.residual);
    }
    let near = {
        let spec0 = BeamSpec::new(1, w0, 1.0, 1, 0.0, 0).expect("valid beam");
        let spec8 = BeamSpec {
            q_max: 8,
            ..spec0.clone()
        };
        let r = 0.3 * w0;
        let a = verify_expansion(&spec0, r, PI / 2.0, 0.4).residual;
        let b = verify_expansion(&spec8, r, PI / 2.0, 0.4).residual;
        (a, b)
    };
    let mut report = SuiteReport::new(
        "expansion identity",
        worst,
        1e-6,
        format!(
            "{points} points; at rho=0.3 w0 q_max=0 gives {:.2e}, q_max=8 gives {:.2e}",
            near.0, near.1
        ),
    );
    if near.0 <= near.1 {
        report.passed = false;
    }
    report
}

/// R^m_l(a + b) against its translation-theorem expansion for l ≤ 4.
pub fn addition_theorem_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let a: [f64; 3] = [
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ];
        let b: [f64; 3] = [
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        ];
        let sum = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
        for l in 0..=4u32 {
            for m in -(l as i32)..=l as i32 {
                let lhs = regular_solid_harmonic(l, m, sum);
                let pairs = translate_solid_harmonic(l, m, a, b);
                let rhs: Complex64 = pairs.iter().map(|p| p.value()).sum();
                let scale = pairs
                    .iter()
                    .map(|p| p.value().norm())
                    .sum::<f64>()
                    .max(lhs.norm())
                    .max(1e-300);
                worst = worst.max((lhs - rhs).norm() / scale);
            }
        }
    }
    SuiteReport::new(
        "addition theorem",
        worst,
        1e-10,
        format!("{trials} vector pairs, l <= 4"),
    )
}

/// Pure-Coulomb Numerov states against the analytic functions for n ≤ 5.
pub fn hydrogen_suite() -> SuiteReport {
    let h = SpeciesParams::hydrogen();
    let grid = match RadialGrid::for_principal(5, 1e-4, 0.001) {
        Ok(g) => g,
        Err(e) => return SuiteReport::failed("hydrogen oracle", e.to_string()),
    };
    let mut worst = 0.0f64;
    let mut states = Vec::new();
    for n in 1..=5u32 {
        for l in 0..n {
            let j = HalfInt::from_twice(2 * l as i32 + 1);
            let s = match solve_radial(&h, n, l, j, &grid) {
                Ok(s) => s,
                Err(e) => return SuiteReport::failed("hydrogen oracle", e.to_string()),
            };
            let probe = grid.len() / 4;
            let sign = (s.radial.radial(probe) * hydrogen_radial(n, l, grid.r(probe))).signum();
            for (i, r) in grid.radii().enumerate() {
                worst = worst.max((sign * s.radial.radial(i) - hydrogen_radial(n, l, r)).abs());
            }
            if (n, l) == (1, 0) || (n, l) == (2, 1) {
                states.push(s);
            }
        }
    }
    let dipole = radial_matrix_element(&states[1], &states[0], 1, 1.0)
        .map(f64::abs)
        .unwrap_or(f64::NAN);
    let exact = 128.0 * 6f64.sqrt() / 243.0;
    let dipole_err = (dipole - exact).abs();
    let mut report = SuiteReport::new(
        "hydrogen oracle",
        worst,
        1e-6,
        format!("<2p|r|1s> = {dipole:.8} (exact {exact:.8}, error {dipole_err:.1e})"),
    );
    if !(dipole_err < 1e-4) {
        report.passed = false;
    }
    report
}

fn random_triple(rng: &mut ChaCha8Rng, max_rank: u32) -> AngularTriple {
    let l = rng.gen_range(0..=max_rank);
    let m = rng.gen_range(-(l as i32)..=l as i32);
    AngularTriple { l, m }
}

/// multi_gaunt against direct quadrature on random factor sets.
pub fn gaunt_suite(seed: u64, sets: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    let mut nonzero = 0;
    while done < sets {
        let count = rng.gen_range(1..=5);
        let factors: Vec<AngularTriple> = (0..count).map(|_| random_triple(&mut rng, 4)).collect();
        let ket = random_triple(&mut rng, 4);
        let m_bra = ket.m + factors.iter().map(|f| f.m).sum::<i32>();
        let l_bra = rng.gen_range(0..=4u32);
        if m_bra.unsigned_abs() > l_bra {
            continue;
        }
        let bra = AngularTriple { l: l_bra, m: m_bra };
        let a = multi_gaunt(&factors, bra, ket);
        let b = angular_quadrature(&factors, bra, ket);
        if b.abs() > 1e-12 {
            nonzero += 1;
        }
        worst = worst.max((a - b).abs());
        done += 1;
    }
    SuiteReport::new(
        "gaunt vs quadrature",
        worst,
        1e-9,
        format!("{sets} factor sets, ranks <= 4, {nonzero} non-zero"),
    )
}

/// 3j orthogonality and Clebsch-Gordan column orthonormality up to j = 4.
pub fn angular_orthogonality_suite() -> SuiteReport {
    let mut worst = 0.0f64;
    let h = HalfInt::from_twice;
    for tj1 in 0..=8i32 {
        for tj2 in 0..=8 {
            let mut tj3 = (tj1 - tj2).abs();
            while tj3 <= tj1 + tj2 {
                for tm3 in (-tj3..=tj3).step_by(2) {
                    let mut sum = 0.0;
                    for tm1 in (-tj1..=tj1).step_by(2) {
                        let tm2 = -tm3 - tm1;
                        if tm2.abs() > tj2 {
                            continue;
                        }
                        let w = wigner3j_half(h(tj1), h(tj2), h(tj3), h(tm1), h(tm2), h(tm3));
                        sum += f64::from(tj3 + 1) * w * w;
                    }
                    worst = worst.max((sum - 1.0).abs());
                }
                tj3 += 2;
            }
        }
    }
    // CG columns for l ≤ 4 coupled with spin 1/2
    for l in 0..=4i32 {
        let tl = 2 * l;
        let js: Vec<i32> = if l == 0 { vec![1] } else { vec![tl - 1, tl + 1] };
        for &tj in &js {
            for &tjp in &js {
                for tmj in (-tj.min(tjp)..=tj.min(tjp)).step_by(2) {
                    let mut dot = 0.0;
                    for tms in [-1, 1] {
                        let tml = tmj - tms;
                        if tml.abs() > tl {
                            continue;
                        }
                        dot += clebsch_gordan_half(h(tl), h(tml), h(1), h(tms), h(tj), h(tmj))
                            * clebsch_gordan_half(h(tl), h(tml), h(1), h(tms), h(tjp), h(tmj));
                    }
                    let expected = if tj == tjp { 1.0 } else { 0.0 };
                    worst = worst.max((dot - expected).abs());
                }
            }
        }
    }
    SuiteReport::new("3j / CG orthogonality", worst, 1e-12, "j <= 4".to_string())
}

fn cm_states(n_max: u32, w_r: f64) -> Vec<CMState> {
    let mut v = Vec::new();
    for n in 0..=n_max {
        let mut m = -(n as i32);
        while m <= n as i32 {
            v.push(CMState::new(n, m, w_r).expect("valid CM state"));
            m += 2;
        }
    }
    v
}

fn binom(n: u32, k: u32) -> f64 {
    (1..=k).map(|i| f64::from(n + 1 - i) / f64::from(i)).product()
}

/// Laguerre-product moment expanded term by term into Gamma functions.
pub fn cm_moment_closed_form(f: &CMState, i: &CMState, beta: u32) -> f64 {
    let (af, ai) = (f.m.unsigned_abs(), i.m.unsigned_abs());
    let (nf, ni) = (f.n_minus(), i.n_minus());
    let s = f64::from(af + ai + beta) / 2.0;
    let mut sum = 0.0;
    for k1 in 0..=nf {
        for k2 in 0..=ni {
            let c1 = (-1f64).powi(k1 as i32) * binom(nf + af, nf - k1) / factorial(k1);
            let c2 = (-1f64).powi(k2 as i32) * binom(ni + ai, ni - k2) / factorial(k2);
            sum += c1 * c2 * gamma(s + f64::from(k1 + k2) + 1.0).unwrap_or(f64::NAN);
        }
    }
    (factorial(nf) * factorial(ni) / (factorial(f.n_plus()) * factorial(i.n_plus()))).sqrt() * sum
}

/// Orthonormality for N ≤ 6 and Gamma-expansion moments for N ≤ 4, β < 5.
pub fn cm_suite() -> SuiteReport {
    let w_r = 4157.4;
    let mut worst = 0.0f64;
    let big = cm_states(6, w_r);
    for f in &big {
        for i in big.iter().filter(|i| i.m == f.m) {
            let v = cm_moment(f, i, 0).unwrap_or(f64::NAN);
            let expected = if f.n == i.n { 1.0 } else { 0.0 };
            worst = worst.max((v - expected).abs());
        }
    }
    let small = cm_states(4, w_r);
    for f in &small {
        for i in &small {
            for beta in 0..5 {
                let v = cm_moment(f, i, beta).unwrap_or(f64::NAN);
                let o = cm_moment_closed_form(f, i, beta);
                worst = worst.max((v - o).abs() / o.abs().max(1.0));
            }
        }
    }
    SuiteReport::new(
        "cm oscillator",
        worst,
        1e-10,
        "orthonormality N <= 6, moments N <= 4".to_string(),
    )
}

/// λ-integral quadrature against its small-argument series, plus the
/// literal Γ(α/2) constant against the exact dipole limit 1/α.
pub fn lambda_audit_suite() -> SuiteReport {
    let mut worst = 0.0f64;
    for exponent in 0..4u32 {
        let e = f64::from(exponent);
        for &x in &[1e-3, 0.05, 0.1] {
            // j0 and j1 series to x^4 / x^5
            let s0 = 1.0 / (e + 1.0) - x * x / (6.0 * (e + 3.0)) + x.powi(4) / (120.0 * (e + 5.0));
            let s1 = x / (3.0 * (e + 2.0)) - x.powi(3) / (30.0 * (e + 4.0)) + x.powi(5) / (840.0 * (e + 6.0));
            worst = worst.max((lambda_integral_oracle(exponent, 0, x, 1.0) - s0).abs());
            worst = worst.max((lambda_integral_oracle(exponent, 1, x, 1.0) - s1).abs());
        }
    }
    let ratios: Vec<String> = (1..=4u32)
        .map(|a| {
            format!(
                "alpha={a}: {:.4}",
                gamma(f64::from(a) / 2.0).unwrap_or(f64::NAN) * f64::from(a)
            )
        })
        .collect();
    SuiteReport::new(
        "lambda integral",
        worst,
        1e-9,
        format!("literal/exact dipole ratio {}", ratios.join(", ")),
    )
}

/// Solves one state of a species model and checks norm, node count and flags.
pub fn species_suite(species: &SpeciesParams, n: u32, l: u32, j: HalfInt, grid: &RadialGrid) -> SuiteReport {
    let s = match solve_radial(species, n, l, j, grid) {
        Ok(s) => s,
        Err(e) => return SuiteReport::failed("species state", e.to_string()),
    };
    let norm_err = (s.radial.norm() - 1.0).abs();
    let expected_nodes = n - l - 1;
    let mut report = SuiteReport::new(
        "species state",
        norm_err,
        1e-8,
        format!(
            "{} n={n} l={l} j={j}: E={:.9e} Eh, {} nodes (expected {expected_nodes}), flags {:?}",
            species.name,
            s.energy(),
            s.radial.nodes,
            s.radial.flags
        ),
    );
    let bad_flag = s.radial.flags.iter().any(|f| {
        matches!(
            f,
            SolverFlag::NodeCount { .. } | SolverFlag::InnerDivergence { .. } | SolverFlag::EnergyFallback
        )
    });
    if s.radial.nodes != expected_nodes || bad_flag {
        report.passed = false;
    }
    report
}
