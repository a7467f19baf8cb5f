use std::sync::Arc;

use crate::error::{domain, invalid, Error, Result};
use crate::quadrature::simpson_weights;
use crate::specfun::HalfInt;

use super::potential::{model_potential_unchecked, qd_energy, QdEnergy};
use super::species::SpeciesParams;

/// Default inner cutoff radius, atomic units.
pub const DEFAULT_INNER_RADIUS: f64 = 1e-3;
/// Default step in x = √r.
pub const DEFAULT_STEP: f64 = 0.005;

/// Grid uniform in x = √r. Node count is kept odd for Simpson.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    x0: f64,
    step: f64,
    len: usize,
}

impl RadialGrid {
    pub fn new(inner_r: f64, outer_r: f64, step: f64) -> Result<Self> {
        if !(inner_r > 0.0) {
            return Err(invalid(
                "radial grid",
                format!("inner cutoff must be positive, got {inner_r}"),
            ));
        }
        if !(outer_r > inner_r) {
            return Err(invalid(
                "radial grid",
                format!("outer cutoff {outer_r} must exceed inner cutoff {inner_r}"),
            ));
        }
        if !(step > 0.0) {
            return Err(invalid("radial grid", format!("step must be positive, got {step}")));
        }
        let x0 = inner_r.sqrt();
        let mut len = ((outer_r.sqrt() - x0) / step).ceil() as usize + 1;
        if len.is_multiple_of(2) {
            len += 1;
        }
        if len < 5 {
            return Err(invalid("radial grid", "fewer than five nodes".to_string()));
        }
        Ok(RadialGrid { x0, step, len })
    }

    /// Outer cutoff 2n(n+15), enough for every state with principal number ≤ n.
    pub fn for_principal(n_max: u32, inner_r: f64, step: f64) -> Result<Self> {
        let n = f64::from(n_max);
        Self::new(inner_r, 2.0 * n * (n + 15.0), step)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + self.step * i as f64
    }

    pub fn r(&self, i: usize) -> f64 {
        let x = self.x(i);
        x * x
    }

    pub fn inner_radius(&self) -> f64 {
        self.x0 * self.x0
    }

    pub fn outer_radius(&self) -> f64 {
        self.r(self.len - 1)
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.r(i))
    }

    fn same_spacing(&self, other: &RadialGrid) -> bool {
        let tol = 1e-12;
        (self.x0 - other.x0).abs() <= tol * self.x0.max(1.0) && (self.step - other.step).abs() <= tol * self.step
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolverFlag {
    /// No defect series for (l, j); hydrogenic energy used.
    EnergyFallback,
    /// Irregular admixture removed; below `radius` the regular near-origin
    /// series is used. `discarded` is the removed amplitude at `radius`
    /// relative to the peak.
    InnerTruncated {
        radius: f64,
        discarded: f64,
    },
    /// The removed admixture was large: the energy is inconsistent with the
    /// potential.
    InnerDivergence {
        ratio: f64,
    },
    NodeCount {
        expected: u32,
        found: u32,
    },
}

/// Tabulated X(x) = r^{3/4} R(r) on a [`RadialGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWavefunction {
    pub n: u32,
    pub l: u32,
    pub j: HalfInt,
    pub energy: QdEnergy,
    pub grid: RadialGrid,
    values: Vec<f64>,
    pub nodes: u32,
    pub flags: Vec<SolverFlag>,
}

impl RadialWavefunction {
    pub fn scaled_values(&self) -> &[f64] {
        &self.values
    }

    /// R(r) at grid node i.
    pub fn radial(&self, i: usize) -> f64 {
        let x = self.grid.x(i);
        self.values[i] / (x * x.sqrt())
    }

    pub fn radial_values(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|i| self.radial(i)).collect()
    }

    pub fn norm(&self) -> f64 {
        overlap_power(self, self, 0).unwrap_or(f64::NAN)
    }
}

/// Electronic state: a shared radial function plus the projection m_j.
#[derive(Debug, Clone, PartialEq)]
pub struct RydbergState {
    pub radial: Arc<RadialWavefunction>,
    pub mj: HalfInt,
}

impl RydbergState {
    pub fn n(&self) -> u32 {
        self.radial.n
    }
    pub fn l(&self) -> u32 {
        self.radial.l
    }
    pub fn j(&self) -> HalfInt {
        self.radial.j
    }
    pub fn energy(&self) -> f64 {
        self.radial.energy.energy
    }

    pub fn with_mj(&self, mj: HalfInt) -> Result<RydbergState> {
        let j = self.radial.j;
        if mj.abs().twice() > j.twice() || (mj.twice() - j.twice()) % 2 != 0 {
            return Err(invalid(
                "Rydberg state",
                format!("m_j = {mj} incompatible with j = {j}"),
            ));
        }
        Ok(RydbergState {
            radial: Arc::clone(&self.radial),
            mj,
        })
    }
}

fn check_quantum_numbers(n: u32, l: u32, j: HalfInt) -> Result<()> {
    if l >= n {
        return Err(invalid("Rydberg state", format!("need 0 <= l < n, got n={n}, l={l}")));
    }
    if (j.twice() - 2 * l as i32).abs() != 1 {
        return Err(invalid(
            "Rydberg state",
            format!("need |j - l| = 1/2, got l={l}, j={j}"),
        ));
    }
    Ok(())
}

/// Inward Numerov integration at the quantum-defect energy, returned with
/// m_j = j. Use [`RydbergState::with_mj`] for other projections.
pub fn solve_radial(p: &SpeciesParams, n: u32, l: u32, j: HalfInt, grid: &RadialGrid) -> Result<RydbergState> {
    check_quantum_numbers(n, l, j)?;
    let energy = qd_energy(p, n, l, j)?;
    let nstar = f64::from(n) - energy.defect;
    let turning = 2.0 * nstar * nstar;
    if grid.outer_radius() < turning {
        return Err(invalid(
            "radial grid",
            format!(
                "outer cutoff {} lies inside the classical turning point {turning:.1}",
                grid.outer_radius()
            ),
        ));
    }
    let mut flags = Vec::new();
    if energy.fallback {
        flags.push(SolverFlag::EnergyFallback);
    }

    let len = grid.len();
    let h2 = grid.step() * grid.step();
    let lf = f64::from(l);
    let centrifugal = (2.0 * lf + 0.5) * (2.0 * lf + 1.5);
    let f: Vec<f64> = (0..len)
        .map(|i| {
            let x = grid.x(i);
            let r = x * x;
            let v = model_potential_unchecked(p, l, j, r);
            let g = 8.0 * r * (v - energy.energy) + centrifugal / r;
            1.0 - h2 * g / 12.0
        })
        .collect();

    let mut y = vec![0.0; len];
    y[len - 2] = 1e-10;
    for i in (1..len - 1).rev() {
        y[i - 1] = ((12.0 - 10.0 * f[i]) * y[i] - f[i + 1] * y[i + 1]) / f[i - 1];
        if y[i - 1].abs() > 1e100 {
            for v in &mut y[i - 1..] {
                *v *= 1e-100;
            }
        }
    }

    if l > 0 {
        truncate_inner(&mut y, grid, l, p.z, &mut flags);
    }
    let w = simpson_weights(len, grid.step());
    let norm2: f64 = 2.0
        * (0..len)
            .map(|i| {
                let x = grid.x(i);
                w[i] * y[i] * y[i] * x * x
            })
            .sum::<f64>();
    let scale = 1.0 / norm2.sqrt();
    for v in &mut y {
        *v *= scale;
    }

    let nodes = count_nodes(&y);
    let expected = n - l - 1;
    if nodes != expected {
        flags.push(SolverFlag::NodeCount { expected, found: nodes });
    }

    let radial = RadialWavefunction {
        n,
        l,
        j,
        energy,
        grid: grid.clone(),
        values: y,
        nodes,
        flags,
    };
    Ok(RydbergState {
        radial: Arc::new(radial),
        mj: j,
    })
}

/// Inside the centrifugal barrier the regular solution grows monotonically
/// outward while inward integration amplifies any irregular admixture. The
/// smallest |X| there marks where the two cross. Both near-origin Coulomb
/// series are fitted just outside that point; the irregular part is
/// subtracted and the regular fit continues inward.
fn truncate_inner(y: &mut [f64], grid: &RadialGrid, l: u32, z: u32, flags: &mut Vec<SolverFlag>) {
    let zf = f64::from(z);
    let lf = f64::from(l);
    let barrier = lf * (lf + 1.0) / (2.0 * zf);
    let inside = grid.radii().take_while(|r| *r < barrier).count();
    if inside < 2 {
        return;
    }
    let (imin, _) =
        y[..inside].iter().enumerate().fold(
            (0, f64::INFINITY),
            |acc, (i, v)| if v.abs() < acc.1 { (i, v.abs()) } else { acc },
        );
    if imin == 0 {
        return;
    }
    let r_min = grid.r(imin);
    let index_at = |r: f64| (((r.sqrt() - grid.x(0)) / grid.step()).round() as usize).min(grid.len() - 1);
    let i1 = index_at(2.0 * r_min).max(imin + 1);
    let i2 = index_at(4.0 * r_min).max(i1 + 1);
    let regular = |i: usize| {
        let r = grid.r(i);
        r.powf(0.75) * r.powi(l as i32) * (1.0 - zf * r / (lf + 1.0))
    };
    let irregular = |i: usize| {
        let r = grid.r(i);
        r.powf(0.75) * r.powi(-(l as i32) - 1) * (1.0 + zf * r / lf)
    };
    let det = regular(i1) * irregular(i2) - regular(i2) * irregular(i1);
    let a = (y[i1] * irregular(i2) - y[i2] * irregular(i1)) / det;
    let b = (regular(i1) * y[i2] - regular(i2) * y[i1]) / det;
    let peak = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let discarded = (b * irregular(i1)).abs() / peak;
    for (i, v) in y.iter_mut().enumerate().take(inside.max(i1)) {
        *v = if i < i1 { a * regular(i) } else { *v - b * irregular(i) };
    }
    flags.push(SolverFlag::InnerTruncated {
        radius: grid.r(i1),
        discarded,
    });
    if discarded > 1e-3 {
        flags.push(SolverFlag::InnerDivergence { ratio: discarded });
    }
}

fn count_nodes(y: &[f64]) -> u32 {
    let peak = y.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let floor = 1e-9 * peak;
    let mut last = 0.0;
    let mut nodes = 0;
    for &v in y {
        if v.abs() <= floor {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    nodes
}

fn overlap_power(f: &RadialWavefunction, i: &RadialWavefunction, power: i32) -> Result<f64> {
    if !f.grid.same_spacing(&i.grid) {
        return Err(Error::GridMismatch(format!(
            "inner x {} / step {} vs inner x {} / step {}",
            f.grid.x0, f.grid.step, i.grid.x0, i.grid.step
        )));
    }
    let len = f.grid.len().min(i.grid.len());
    let len = if len.is_multiple_of(2) { len - 1 } else { len };
    let w = simpson_weights(len, f.grid.step());
    let mut sum = 0.0;
    for (k, wk) in w.iter().enumerate() {
        let x = f.grid.x(k);
        let x2 = x * x;
        sum += wk * f.values[k] * i.values[k] * x2 * x2.powi(power);
    }
    Ok(2.0 * sum)
}

/// ⟨f| r^power |i⟩ for the radial parts.
pub fn radial_power(f: &RydbergState, i: &RydbergState, power: i32) -> Result<f64> {
    overlap_power(&f.radial, &i.radial, power)
}

/// ∫ R_f r (r/w_r)^{α-1} R_i r² dr.
pub fn radial_matrix_element(f: &RydbergState, i: &RydbergState, alpha: u32, w_r: f64) -> Result<f64> {
    if alpha == 0 {
        return Err(domain("radial_matrix_element", "alpha must be a positive integer"));
    }
    if !(w_r > 0.0) {
        return Err(domain(
            "radial_matrix_element",
            format!("w_r must be positive, got {w_r}"),
        ));
    }
    let raw = overlap_power(&f.radial, &i.radial, alpha as i32)?;
    Ok(raw * w_r.powi(1 - alpha as i32))
}
