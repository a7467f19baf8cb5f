//! Scenario configuration: TOML with dotted keys (`beam.waist_um = 2.7`).
//! Lengths are given in micrometres and fields in V/m; everything is
//! converted to atomic units here and nowhere else.

use std::path::{Path, PathBuf};

use lgryd::atom::{RadialGrid, SpeciesParams};
use lgryd::beam::BeamSpec;
use lgryd::cm::CMState;
use lgryd::coupling::{ChannelOptions, ElectronicLabel, FineStructure};
use lgryd::units::{amu_to_au, micrometres_to_au, volts_per_metre_to_au};
use lgryd::HalfInt;
use serde::Deserialize;

use crate::error::CliError;

/// The shipped default scenario.
pub const DEFAULT_CONFIG: &str = include_str!("../../../config/default.toml");

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BeamSection {
    pub charge: i32,
    pub waist_um: f64,
    /// Field amplitude E0 in V/m.
    pub field_v_per_m: f64,
    pub sigma: i32,
    pub q_max: u32,
    /// Optical wavelength; absent means resonant with each transition.
    pub wavelength_um: Option<f64>,
}

impl Default for BeamSection {
    fn default() -> Self {
        BeamSection {
            charge: 1,
            waist_um: 2.7,
            field_v_per_m: 2400.0,
            sigma: 1,
            q_max: 1,
            wavelength_um: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AtomSection {
    /// Species file path, or `hydrogen` for the built-in Coulomb model.
    pub species: String,
    pub n: u32,
    pub l: u32,
    pub j: f64,
    pub mj: f64,
    /// Principal quantum number of the final levels; defaults to `n`.
    pub final_n: Option<u32>,
    /// Radial grid inner radius and step in sqrt(r), atomic units.
    pub inner_radius: f64,
    pub step: f64,
}

impl Default for AtomSection {
    fn default() -> Self {
        AtomSection {
            species: "data/rb87.toml".to_string(),
            n: 60,
            l: 0,
            j: 0.5,
            mj: -0.5,
            final_n: None,
            inner_radius: lgryd::atom::DEFAULT_INNER_RADIUS,
            step: lgryd::atom::DEFAULT_STEP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrapSection {
    pub w_r_um: f64,
    pub n: u32,
    pub m: i32,
    pub mass_amu: f64,
}

impl Default for TrapSection {
    fn default() -> Self {
        TrapSection {
            w_r_um: 2.2,
            n: 0,
            m: 0,
            mass_amu: 86.909_180_531,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ComputeSection {
    pub l_sweep: Vec<i32>,
    pub final_l_f_max: u32,
    pub fine_structure: String,
    pub out_dir: String,
    pub log_scale: bool,
}

impl Default for ComputeSection {
    fn default() -> Self {
        ComputeSection {
            l_sweep: vec![1, 2, 3, 4],
            final_l_f_max: 4,
            fine_structure: "orbital".to_string(),
            out_dir: "out".to_string(),
            log_scale: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub beam: BeamSection,
    pub atom: AtomSection,
    pub trap: TrapSection,
    pub compute: ComputeSection,
    /// Directory relative paths are resolved against first.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

fn bad(key: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        key: key.to_string(),
        message: message.into(),
    }
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            let key = e
                .span()
                .and_then(|s| text.get(s))
                .map(|t| t.trim().to_string())
                .filter(|t| !t.is_empty() && !t.contains('\n'))
                .unwrap_or_else(|| "<document>".to_string());
            bad(&key, message)
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad("--config", format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn shipped_default() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("shipped default config is valid")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let b = &self.beam;
        if !(b.waist_um > 0.0) {
            return Err(bad("beam.waist_um", format!("must be positive, got {}", b.waist_um)));
        }
        if !(b.field_v_per_m >= 0.0) {
            return Err(bad(
                "beam.field_v_per_m",
                format!("must be non-negative, got {}", b.field_v_per_m),
            ));
        }
        if !(-1..=1).contains(&b.sigma) {
            return Err(bad("beam.sigma", format!("must be -1, 0 or 1, got {}", b.sigma)));
        }
        if let Some(w) = b.wavelength_um {
            if !(w > 0.0) {
                return Err(bad("beam.wavelength_um", format!("must be positive, got {w}")));
            }
        }
        let a = &self.atom;
        if a.species.trim().is_empty() {
            return Err(bad("atom.species", "empty path"));
        }
        let j = HalfInt::from_f64(a.j).map_err(|_| bad("atom.j", format!("{} is not a half-integer", a.j)))?;
        let mj = HalfInt::from_f64(a.mj).map_err(|_| bad("atom.mj", format!("{} is not a half-integer", a.mj)))?;
        ElectronicLabel::new(a.n, a.l, j, mj).map_err(|e| bad("atom", e.to_string()))?;
        if let Some(nf) = a.final_n {
            if nf == 0 {
                return Err(bad("atom.final_n", "must be positive"));
            }
        }
        if !(a.inner_radius > 0.0) {
            return Err(bad(
                "atom.inner_radius",
                format!("must be positive, got {}", a.inner_radius),
            ));
        }
        if !(a.step > 0.0) {
            return Err(bad("atom.step", format!("must be positive, got {}", a.step)));
        }
        let t = &self.trap;
        if !(t.w_r_um > 0.0) {
            return Err(bad("trap.w_r_um", format!("must be positive, got {}", t.w_r_um)));
        }
        if !(t.mass_amu > 0.0) {
            return Err(bad("trap.mass_amu", format!("must be positive, got {}", t.mass_amu)));
        }
        CMState::new(t.n, t.m, 1.0)
            .map_err(|_| bad("trap.m", format!("N={} M={} needs N >= |M| with N-|M| even", t.n, t.m)))?;
        let c = &self.compute;
        if c.l_sweep.is_empty() {
            return Err(bad("compute.l_sweep", "must not be empty"));
        }
        c.fine_structure
            .parse::<FineStructure>()
            .map_err(|e| bad("compute.fine_structure", e))?;
        Ok(())
    }

    pub fn wavenumber_au(&self) -> f64 {
        self.beam
            .wavelength_um
            .map_or(0.0, |w| 2.0 * std::f64::consts::PI / micrometres_to_au(w))
    }

    pub fn beam_spec(&self, charge: i32, sigma: i32) -> Result<BeamSpec, CliError> {
        BeamSpec::new(
            charge,
            micrometres_to_au(self.beam.waist_um),
            volts_per_metre_to_au(self.beam.field_v_per_m),
            sigma,
            self.wavenumber_au(),
            self.beam.q_max,
        )
        .map_err(|e| bad("beam", e.to_string()))
    }

    pub fn initial_label(&self) -> ElectronicLabel {
        let a = &self.atom;
        ElectronicLabel::new(
            a.n,
            a.l,
            HalfInt::from_f64(a.j).expect("validated"),
            HalfInt::from_f64(a.mj).expect("validated"),
        )
        .expect("validated")
    }

    pub fn cm_initial(&self) -> CMState {
        CMState::new(self.trap.n, self.trap.m, micrometres_to_au(self.trap.w_r_um)).expect("validated")
    }

    pub fn total_mass_au(&self) -> f64 {
        amu_to_au(self.trap.mass_amu)
    }

    pub fn fine_structure(&self) -> FineStructure {
        self.compute.fine_structure.parse().expect("validated")
    }

    pub fn options(&self) -> ChannelOptions {
        ChannelOptions {
            final_n: self.atom.final_n.unwrap_or(self.atom.n),
            final_l_f_max: self.compute.final_l_f_max,
            fine_structure: self.fine_structure(),
        }
    }

    /// Grid large enough for both the initial and final principal numbers.
    pub fn grid(&self) -> Result<RadialGrid, CliError> {
        let n_max = self.atom.n.max(self.options().final_n);
        RadialGrid::for_principal(n_max, self.atom.inner_radius, self.atom.step).map_err(|e| bad("atom", e.to_string()))
    }

    /// Resolves the species path: absolute, next to the config file, then
    /// the working directory.
    pub fn species_path(&self) -> Option<PathBuf> {
        let p = PathBuf::from(&self.atom.species);
        if p.is_absolute() {
            return Some(p);
        }
        let mut candidates = Vec::new();
        if let Some(base) = &self.base_dir {
            candidates.push(base.join(&p));
            if let Some(parent) = base.parent() {
                candidates.push(parent.join(&p));
            }
        }
        candidates.push(p.clone());
        candidates.into_iter().find(|c| c.is_file())
    }

    pub fn load_species(&self) -> Result<SpeciesParams, CliError> {
        if self.atom.species.eq_ignore_ascii_case("hydrogen") {
            return Ok(SpeciesParams::hydrogen());
        }
        let path = self.species_path().ok_or_else(|| {
            CliError::Core(lgryd::Error::Species {
                path: self.atom.species.clone(),
                detail: "file not found".to_string(),
            })
        })?;
        Ok(SpeciesParams::load(&path)?)
    }
}
