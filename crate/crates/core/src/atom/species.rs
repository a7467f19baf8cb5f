use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::specfun::HalfInt;
use crate::units::amu_to_au;

/// Model-potential constants for one orbital angular momentum, atomic units.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct ModelPotentialParams {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub rc: f64,
    pub alpha_c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesParams {
    pub name: String,
    /// Nuclear charge.
    pub z: u32,
    /// Atomic mass in electron masses.
    pub mass: f64,
    /// Indexed by l; the last entry also serves all higher l.
    pub orbitals: Vec<ModelPotentialParams>,
    /// Defect series (δ0, δ2, δ4, ...) keyed by (l, j).
    pub quantum_defects: BTreeMap<(u32, HalfInt), Vec<f64>>,
    pub spin_orbit: bool,
}

impl SpeciesParams {
    /// Bare Coulomb potential, no core, no spin-orbit, no defects.
    pub fn hydrogen() -> Self {
        SpeciesParams {
            name: "H".into(),
            z: 1,
            mass: amu_to_au(1.007_825_032),
            orbitals: vec![ModelPotentialParams {
                a1: 0.0,
                a2: 0.0,
                a3: 0.0,
                a4: 0.0,
                rc: 1.0,
                alpha_c: 0.0,
            }],
            quantum_defects: BTreeMap::new(),
            spin_orbit: false,
        }
    }

    pub fn orbital(&self, l: u32) -> &ModelPotentialParams {
        let idx = (l as usize).min(self.orbitals.len() - 1);
        &self.orbitals[idx]
    }

    /// Core polarizability used for the default inner cutoff (largest over l).
    pub fn core_polarizability(&self) -> f64 {
        self.orbitals.iter().map(|o| o.alpha_c).fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |detail: String| Error::Invalid {
            what: "species parameters",
            detail,
        };
        if self.z < 1 {
            return Err(fail("nuclear charge must be >= 1".into()));
        }
        if self.orbitals.is_empty() {
            return Err(fail("at least one orbital section is required".into()));
        }
        for (l, o) in self.orbitals.iter().enumerate() {
            if !(o.rc > 0.0) {
                return Err(fail(format!("orbital l={l}: rc must be positive")));
            }
            if !(o.alpha_c >= 0.0) {
                return Err(fail(format!("orbital l={l}: alpha_c must be non-negative")));
            }
        }
        if !(self.mass > 0.0) {
            return Err(fail("mass must be positive".into()));
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> std::result::Result<Self, String> {
        let raw: RawSpecies = toml::from_str(text).map_err(|e| e.to_string())?;
        let mut orbitals: Vec<(u32, ModelPotentialParams)> = raw.orbital.into_iter().map(|o| (o.l, o.params)).collect();
        orbitals.sort_by_key(|o| o.0);
        for (expect, (l, _)) in orbitals.iter().enumerate() {
            if *l as usize != expect {
                return Err(format!(
                    "orbital sections must cover l = 0, 1, 2, ... without gaps (missing l = {expect})"
                ));
            }
        }
        let mut quantum_defects = BTreeMap::new();
        for d in raw.defect {
            let j = HalfInt::from_f64(d.j).map_err(|e| e.to_string())?;
            if (j.twice() - 2 * d.l as i32).abs() != 1 {
                return Err(format!("defect entry l={}, j={}: |j - l| must be 1/2", d.l, d.j));
            }
            if d.series.is_empty() {
                return Err(format!("defect entry l={}, j={}: empty series", d.l, d.j));
            }
            quantum_defects.insert((d.l, j), d.series);
        }
        let species = SpeciesParams {
            name: raw.species.name,
            z: raw.species.z,
            mass: amu_to_au(raw.species.mass_amu),
            orbitals: orbitals.into_iter().map(|o| o.1).collect(),
            quantum_defects,
            spin_orbit: raw.species.spin_orbit,
        };
        species.validate().map_err(|e| e.to_string())?;
        Ok(species)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Species {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?;
        Self::from_toml_str(&text).map_err(|detail| Error::Species {
            path: path.display().to_string(),
            detail,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpecies {
    species: RawHeader,
    #[serde(default)]
    orbital: Vec<RawOrbital>,
    #[serde(default)]
    defect: Vec<RawDefect>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHeader {
    name: String,
    z: u32,
    mass_amu: f64,
    #[serde(default = "yes")]
    spin_orbit: bool,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
struct RawOrbital {
    l: u32,
    #[serde(flatten)]
    params: ModelPotentialParams,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDefect {
    l: u32,
    j: f64,
    series: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
[species]
name = "X"
z = 11
mass_amu = 23.0

[[orbital]]
l = 0
a1 = 1.0
a2 = 2.0
a3 = 3.0
a4 = 4.0
rc = 0.5
alpha_c = 0.9

[[defect]]
l = 0
j = 0.5
series = [1.35, 0.06]
"#;

    #[test]
    fn parses_sample() {
        let s = SpeciesParams::from_toml_str(SAMPLE).unwrap();
        assert_eq!(s.z, 11);
        assert_eq!(s.orbital(5).a4, 4.0);
        assert_eq!(s.quantum_defects[&(0, HalfInt::HALF)], vec![1.35, 0.06]);
        assert!(s.spin_orbit);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(SpeciesParams::from_toml_str("garbage = [").is_err());
        let gap = SAMPLE.replace("l = 0\na1", "l = 1\na1");
        assert!(SpeciesParams::from_toml_str(&gap)
            .unwrap_err()
            .contains("missing l = 0"));
        let bad_j = SAMPLE.replace("j = 0.5", "j = 1.5");
        assert!(SpeciesParams::from_toml_str(&bad_j).is_err());
        let bad_rc = SAMPLE.replace("rc = 0.5", "rc = -1.0");
        assert!(SpeciesParams::from_toml_str(&bad_rc).is_err());
    }

    #[test]
    fn missing_file_names_path() {
        let err = SpeciesParams::load(Path::new("/nonexistent/species.toml")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/species.toml"));
    }
}
