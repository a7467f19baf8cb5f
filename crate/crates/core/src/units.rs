//! Physical constants and unit conversions. Everything inside the crate is
//! in Hartree atomic units; conversions happen only at the configuration
//! boundary.

/// Fine-structure constant (CODATA 2018).
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;

/// Speed of light in atomic units.
pub const SPEED_OF_LIGHT_AU: f64 = 1.0 / FINE_STRUCTURE;

/// Bohr radius in metres.
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;

/// Atomic unit of electric field in V/m.
pub const FIELD_AU_V_PER_M: f64 = 5.142_206_747_63e11;

/// Hartree energy divided by Planck's constant, in Hz.
pub const HARTREE_OVER_H_HZ: f64 = 6.579_683_920_502e15;

/// Unified atomic mass unit in electron masses.
pub const AMU_IN_ELECTRON_MASSES: f64 = 1_822.888_486_209;

pub fn micrometres_to_au(um: f64) -> f64 {
    um * 1e-6 / BOHR_RADIUS_M
}

pub fn au_to_micrometres(au: f64) -> f64 {
    au * BOHR_RADIUS_M * 1e6
}

pub fn volts_per_metre_to_au(v_per_m: f64) -> f64 {
    v_per_m / FIELD_AU_V_PER_M
}

pub fn amu_to_au(amu: f64) -> f64 {
    amu * AMU_IN_ELECTRON_MASSES
}

/// Rabi convention used throughout: nu = |<f|H_int|i>| / (2 pi hbar),
/// i.e. the coupling energy divided by Planck's constant.
pub fn hartree_to_rabi_khz(coupling_au: f64) -> f64 {
    coupling_au.abs() * HARTREE_OVER_H_HZ * 1e-3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn micrometre_round_trip() {
        for &x in &[2.2, 2.7, 1e-3, 123.456] {
            let back = au_to_micrometres(micrometres_to_au(x));
            assert!(((back - x) / x).abs() < 1e-12);
        }
    }

    #[test]
    fn one_micrometre_in_bohr() {
        assert!((micrometres_to_au(1.0) - 18_897.261_246).abs() < 1e-3);
    }

    #[test]
    fn field_and_rabi_scale() {
        assert!((volts_per_metre_to_au(FIELD_AU_V_PER_M) - 1.0).abs() < 1e-15);
        assert!((hartree_to_rabi_khz(-1.0) - HARTREE_OVER_H_HZ * 1e-3).abs() < 1.0);
    }
}
