use crate::error::{domain, Result};
use crate::specfun::HalfInt;
use crate::units::FINE_STRUCTURE;

use super::species::SpeciesParams;

/// ⟨L·S⟩ for a single electron, s = 1/2.
pub fn spin_orbit_factor(l: u32, j: HalfInt) -> f64 {
    let jv = j.value();
    let lv = f64::from(l);
    0.5 * (jv * (jv + 1.0) - lv * (lv + 1.0) - 0.75)
}

/// Valence-electron potential: screened Coulomb, core polarization and
/// spin-orbit terms, in Hartree.
pub fn model_potential(p: &SpeciesParams, l: u32, j: HalfInt, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain("model_potential", format!("radius must be positive, got {r}")));
    }
    Ok(model_potential_unchecked(p, l, j, r))
}

pub(crate) fn model_potential_unchecked(p: &SpeciesParams, l: u32, j: HalfInt, r: f64) -> f64 {
    let o = p.orbital(l);
    let z = f64::from(p.z);
    let z_eff = 1.0 + (z - 1.0) * (-o.a1 * r).exp() - r * (o.a3 + o.a4 * r) * (-o.a2 * r).exp();
    let coulomb = -z_eff / r;
    let pole = if o.alpha_c > 0.0 {
        -o.alpha_c / (2.0 * r.powi(4)) * (1.0 - (-(r / o.rc).powi(6)).exp())
    } else {
        0.0
    };
    let so = if p.spin_orbit && l > 0 {
        FINE_STRUCTURE * FINE_STRUCTURE / (2.0 * r.powi(3)) * spin_orbit_factor(l, j)
    } else {
        0.0
    };
    coulomb + pole + so
}

/// Quantum-defect energy with the defect actually used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QdEnergy {
    pub energy: f64,
    pub defect: f64,
    /// True when no series was configured for (l, j) and δ = 0 was used.
    pub fallback: bool,
}

/// E = -1/(2 (n - δ)²) with δ = δ0 + δ2/(n-δ0)² + δ4/(n-δ0)⁴ + ...
pub fn qd_energy(p: &SpeciesParams, n: u32, l: u32, j: HalfInt) -> Result<QdEnergy> {
    if l >= n {
        return Err(domain("qd_energy", format!("need n > l, got n={n}, l={l}")));
    }
    let nf = f64::from(n);
    let (defect, fallback) = match p.quantum_defects.get(&(l, j)) {
        Some(series) => {
            let d0 = series[0];
            let x = 1.0 / ((nf - d0) * (nf - d0));
            let mut pow = 1.0;
            let mut d = 0.0;
            for c in series {
                d += c * pow;
                pow *= x;
            }
            (d, false)
        }
        None => (0.0, true),
    };
    let ns = nf - defect;
    Ok(QdEnergy {
        energy: -0.5 / (ns * ns),
        defect,
        fallback,
    })
}
