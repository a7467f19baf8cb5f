//! Scenario execution shared by the binary and the acceptance tests.

use lgryd::atom::{solve_radial, RadialGrid, RydbergState, SpeciesParams};
use lgryd::coupling::{
    enumerate_channels, evaluate, sweep_topological_charge, Channel, ChannelResult, CouplingSetup, SweepRow,
};
use lgryd::validate::{self, SuiteReport};
use lgryd::HalfInt;
use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::error::CliError;

/// A configuration plus the (l, σ) combinations to evaluate.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub charges: Vec<i32>,
    pub sigmas: Vec<i32>,
}

impl Scenario {
    pub fn new(config: ScenarioConfig) -> Self {
        let charges = vec![config.beam.charge];
        let sigmas = vec![config.beam.sigma];
        Scenario {
            config,
            charges,
            sigmas,
        }
    }

    fn combinations(&self) -> Vec<(i32, i32)> {
        self.charges
            .iter()
            .flat_map(|&l| self.sigmas.iter().map(move |&s| (l, s)))
            .collect()
    }
}

/// Species model and the solved initial state.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub species: SpeciesParams,
    pub initial: RydbergState,
}

pub fn prepare(cfg: &ScenarioConfig) -> Result<Prepared, CliError> {
    let species = cfg.load_species()?;
    let label = cfg.initial_label();
    let grid = cfg.grid()?;
    let initial = solve_radial(&species, label.n, label.l, label.j, &grid)?.with_mj(label.mj)?;
    Ok(Prepared { species, initial })
}

fn setup(cfg: &ScenarioConfig, prepared: &Prepared, charge: i32, sigma: i32) -> Result<CouplingSetup, CliError> {
    Ok(CouplingSetup {
        species: prepared.species.clone(),
        beam: cfg.beam_spec(charge, sigma)?,
        initial: prepared.initial.clone(),
        cm_initial: cfg.cm_initial(),
        options: cfg.options(),
    })
}

pub fn run_channels(s: &Scenario) -> Result<Vec<Channel>, CliError> {
    let cfg = &s.config;
    let mut out = Vec::new();
    for (l, sigma) in s.combinations() {
        out.extend(enumerate_channels(
            &cfg.beam_spec(l, sigma)?,
            &cfg.initial_label(),
            &cfg.cm_initial(),
            &cfg.options(),
        ));
    }
    Ok(out)
}

pub fn run_rabi(s: &Scenario) -> Result<Vec<ChannelResult>, CliError> {
    let prepared = prepare(&s.config)?;
    run_rabi_prepared(s, &prepared)
}

pub fn run_rabi_prepared(s: &Scenario, prepared: &Prepared) -> Result<Vec<ChannelResult>, CliError> {
    let per: Vec<Vec<ChannelResult>> = s
        .combinations()
        .par_iter()
        .map(|&(l, sigma)| Ok(evaluate(&setup(&s.config, prepared, l, sigma)?)?))
        .collect::<Result<_, CliError>>()?;
    Ok(per.into_iter().flatten().collect())
}

pub fn run_sweep(cfg: &ScenarioConfig) -> Result<Vec<SweepRow>, CliError> {
    let prepared = prepare(cfg)?;
    run_sweep_prepared(cfg, &prepared)
}

pub fn run_sweep_prepared(cfg: &ScenarioConfig, prepared: &Prepared) -> Result<Vec<SweepRow>, CliError> {
    let base = setup(cfg, prepared, cfg.beam.charge, cfg.beam.sigma)?;
    Ok(sweep_topological_charge(&cfg.compute.l_sweep, &base)?)
}

/// Radii and R(r) of one state of the configured species.
pub fn run_wavefunction(cfg: &ScenarioConfig, n: u32, l: u32, j: HalfInt) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let species = cfg.load_species()?;
    let grid = RadialGrid::for_principal(n, cfg.atom.inner_radius, cfg.atom.step)?;
    let s = solve_radial(&species, n, l, j, &grid)?;
    Ok((grid.radii().collect(), s.radial.radial_values()))
}

/// Every verification suite. The species suite is isolated: a broken
/// species file fails it alone.
pub fn run_verify(cfg: &ScenarioConfig) -> Vec<SuiteReport> {
    let seed = 20_240_601;
    let mut reports = vec![
        validate::expansion_suite(seed, 100),
        validate::addition_theorem_suite(seed, 50),
        validate::hydrogen_suite(),
        validate::gaunt_suite(seed, 200),
        validate::angular_orthogonality_suite(),
        validate::cm_suite(),
        validate::lambda_audit_suite(),
    ];
    let species = match cfg.load_species() {
        Ok(species) => {
            let label = cfg.initial_label();
            match cfg.grid() {
                Ok(grid) => validate::species_suite(&species, label.n, label.l, label.j, &grid),
                Err(e) => failed_species(e.to_string()),
            }
        }
        Err(e) => failed_species(e.to_string()),
    };
    reports.push(species);
    reports
}

fn failed_species(detail: String) -> SuiteReport {
    SuiteReport {
        name: "species state",
        passed: false,
        residual: f64::INFINITY,
        tolerance: 0.0,
        detail,
    }
}
