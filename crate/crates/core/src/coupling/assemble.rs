use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::atom::{radial_matrix_element, solve_radial, RydbergState, SpeciesParams};
use crate::beam::{g_coeff, BeamSpec};
use crate::cm::{cm_moment, CMState};
use crate::error::{invalid, Result};
use crate::quadrature::GaussLegendre;
use crate::specfun::{gamma, multi_gaunt, spherical_bessel, AngularTriple, HalfInt};
use crate::units::{hartree_to_rabi_khz, SPEED_OF_LIGHT_AU};

use super::channel::{
    c_product, enumerate_channels, fine_structure_weight, Channel, ChannelOptions, ElectronicLabel, FineStructure,
};

/// Literal Γ(α/2) factor against the exact λ integral ∫₀¹ λ^{α-1} j₀(kλr) dλ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaAudit {
    pub literal: f64,
    pub exact: f64,
    /// literal / exact.
    pub ratio: f64,
    pub wavenumber: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelResult {
    pub channel: Channel,
    /// g(l,q) · Γ(α/2) · C-product.
    pub coeff: f64,
    pub radial_e: f64,
    pub radial_cm: f64,
    pub angular: f64,
    /// Spin weight actually applied (1 in orbital mode).
    pub cg_weight: f64,
    /// Spin-spectator Clebsch-Gordan product, applied or not.
    pub fs_clebsch: f64,
    pub field: f64,
    pub matrix_element: Complex64,
    pub rabi_khz: f64,
    pub closed: bool,
    pub audit: LambdaAudit,
}

impl ChannelResult {
    /// Product of the stored factors; equals `matrix_element`.
    pub fn factor_product(&self) -> Complex64 {
        Complex64::new(
            self.field * self.coeff * self.radial_e * self.radial_cm * self.angular * self.cg_weight,
            0.0,
        )
    }
}

/// ∫₀¹ λ^exponent j_p(kλr) dλ by composite Gauss-Legendre.
pub fn lambda_integral_oracle(exponent: u32, p: u32, k: f64, r: f64) -> f64 {
    let c = (k * r).abs();
    let panels = ((c / std::f64::consts::PI).ceil() as usize).clamp(1, 100_000);
    let gl = GaussLegendre::new(24);
    let width = 1.0 / panels as f64;
    (0..panels)
        .map(|i| {
            let a = i as f64 * width;
            gl.integrate(a, a + width, |lam| {
                lam.powi(exponent as i32) * spherical_bessel(p, c * lam)
            })
        })
        .sum()
}

/// Electronic angular factor ⟨l_f m_lf| Y^σ_1 Y^0_0 Y^{m1}_{l1} Y^{m2}_{l2} Y^{m3}_{l3} |l_i m_li⟩.
pub fn electronic_angular(ch: &Channel) -> f64 {
    let factors = [
        AngularTriple { l: 1, m: ch.sigma },
        AngularTriple { l: 0, m: 0 },
        AngularTriple { l: ch.l1, m: ch.m1 },
        AngularTriple { l: ch.l2, m: ch.m2 },
        AngularTriple { l: ch.l3, m: ch.m3 },
    ];
    let bra = AngularTriple {
        l: ch.final_state.l,
        m: ch.m_lf,
    };
    let ket = AngularTriple {
        l: ch.initial.l,
        m: ch.m_li,
    };
    if bra.m.unsigned_abs() > bra.l || ket.m.unsigned_abs() > ket.l {
        return 0.0;
    }
    multi_gaunt(&factors, bra, ket)
}

/// Resonant wavenumber |E_f - E_i| / c.
pub fn resonant_wavenumber(psi_i: &RydbergState, psi_f: &RydbergState) -> f64 {
    (psi_f.energy() - psi_i.energy()).abs() / SPEED_OF_LIGHT_AU
}

/// Assembles one channel into its matrix element and Rabi frequency.
pub fn assemble(
    channel: &Channel,
    beam: &BeamSpec,
    psi_i: &RydbergState,
    psi_f: &RydbergState,
    cm_i: &CMState,
    cm_f: &CMState,
    fine_structure: FineStructure,
) -> Result<ChannelResult> {
    if cm_f.m != channel.m_cm_f || cm_f.n != channel.n_cm_f || cm_i.m != channel.m_cm_i || cm_i.n != channel.n_cm_i {
        return Err(invalid(
            "channel",
            "centre-of-mass states do not match the channel".to_string(),
        ));
    }
    if psi_f.l() != channel.final_state.l || psi_f.j() != channel.final_state.j || psi_f.n() != channel.final_state.n {
        return Err(invalid(
            "channel",
            format!("final state does not match {}", channel.final_state),
        ));
    }
    let w_r = cm_i.w_r;
    let alpha = channel.alpha;
    let literal = gamma(f64::from(alpha) / 2.0)?;
    let coeff = g_coeff(channel.charge, channel.q, w_r, beam.waist)
        * literal
        * c_product(
            channel.charge,
            channel.q,
            channel.l1,
            channel.l2,
            channel.l3,
            channel.m1,
            channel.m2,
            channel.m3,
        );
    let radial_e = radial_matrix_element(psi_f, psi_i, alpha, w_r)?;
    let radial_cm = cm_moment(cm_f, cm_i, channel.beta)?;
    let angular = electronic_angular(channel);
    let fs_clebsch = fine_structure_weight(&channel.initial, &channel.final_state, channel.m_li, channel.m_lf);
    let cg_weight = match fine_structure {
        FineStructure::Orbital => 1.0,
        FineStructure::Resolved => fs_clebsch,
    };
    let field = beam.amplitude;
    let value = field * coeff * radial_e * radial_cm * angular * cg_weight;
    let k = if beam.wavenumber > 0.0 {
        beam.wavenumber
    } else {
        resonant_wavenumber(psi_i, psi_f)
    };
    let r_typ = radial_matrix_element(psi_i, psi_i, 1, w_r)?;
    let exact = lambda_integral_oracle(alpha - 1, 0, k, r_typ);
    Ok(ChannelResult {
        channel: *channel,
        coeff,
        radial_e,
        radial_cm,
        angular,
        cg_weight,
        fs_clebsch,
        field,
        matrix_element: Complex64::new(value, 0.0),
        rabi_khz: hartree_to_rabi_khz(value),
        closed: value == 0.0,
        audit: LambdaAudit {
            literal,
            exact,
            ratio: literal / exact,
            wavenumber: k,
        },
    })
}

/// Everything fixed for one evaluation run.
#[derive(Debug, Clone)]
pub struct CouplingSetup {
    pub species: SpeciesParams,
    pub beam: BeamSpec,
    pub initial: RydbergState,
    pub cm_initial: CMState,
    pub options: ChannelOptions,
}

impl CouplingSetup {
    pub fn initial_label(&self) -> ElectronicLabel {
        ElectronicLabel {
            n: self.initial.n(),
            l: self.initial.l(),
            j: self.initial.j(),
            mj: self.initial.mj,
        }
    }

    pub fn channels(&self) -> Vec<Channel> {
        enumerate_channels(&self.beam, &self.initial_label(), &self.cm_initial, &self.options)
    }
}

/// Enumerates and assembles every channel. Final radial states are solved
/// once per (l, j) on the initial state's grid; assembly runs in parallel and
/// keeps the deterministic channel order.
pub fn evaluate(setup: &CouplingSetup) -> Result<Vec<ChannelResult>> {
    evaluate_channels(setup, &setup.channels())
}

pub fn evaluate_channels(setup: &CouplingSetup, channels: &[Channel]) -> Result<Vec<ChannelResult>> {
    let mut needed: Vec<(u32, u32, HalfInt)> = channels
        .iter()
        .map(|c| (c.final_state.n, c.final_state.l, c.final_state.j))
        .collect();
    needed.sort();
    needed.dedup();
    let grid = &setup.initial.radial.grid;
    let solved: Vec<((u32, u32, HalfInt), RydbergState)> = needed
        .par_iter()
        .map(|&(n, l, j)| solve_radial(&setup.species, n, l, j, grid).map(|s| ((n, l, j), s)))
        .collect::<Result<_>>()?;
    let states: BTreeMap<_, _> = solved.into_iter().collect();
    channels
        .par_iter()
        .map(|ch| {
            let base = &states[&(ch.final_state.n, ch.final_state.l, ch.final_state.j)];
            let psi_f = base.with_mj(ch.final_state.mj)?;
            let cm_f = CMState::new(ch.n_cm_f, ch.m_cm_f, setup.cm_initial.w_r)?;
            assemble(
                ch,
                &setup.beam,
                &setup.initial,
                &psi_f,
                &setup.cm_initial,
                &cm_f,
                setup.options.fine_structure,
            )
        })
        .collect()
}

/// Final composite state: electronic level plus CM oscillator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositeKey {
    pub final_state: ElectronicLabel,
    pub m_cm_f: i32,
    pub n_cm_f: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeTotal {
    pub key: CompositeKey,
    /// Coherent sum over channels feeding this composite state.
    pub matrix_element: Complex64,
    pub rabi_khz: f64,
    pub channels: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateTotal {
    pub final_state: ElectronicLabel,
    /// `Some(M_f)` for per-(electronic, M_f) rows, `None` for per-electronic rows.
    pub m_cm_f: Option<i32>,
    /// Root-sum-square of the coherent composite totals.
    pub rabi_khz: f64,
    pub composites: usize,
}

pub fn composite_totals(results: &[ChannelResult]) -> Vec<CompositeTotal> {
    let mut map: BTreeMap<CompositeKey, (Complex64, usize)> = BTreeMap::new();
    for r in results {
        let key = CompositeKey {
            final_state: r.channel.final_state,
            m_cm_f: r.channel.m_cm_f,
            n_cm_f: r.channel.n_cm_f,
        };
        let e = map.entry(key).or_insert((Complex64::new(0.0, 0.0), 0));
        e.0 += r.matrix_element;
        e.1 += 1;
    }
    map.into_iter()
        .map(|(key, (m, n))| CompositeTotal {
            key,
            matrix_element: m,
            rabi_khz: hartree_to_rabi_khz(m.norm()),
            channels: n,
        })
        .collect()
}

fn rss_by<K: Ord>(composites: &[CompositeTotal], key: impl Fn(&CompositeKey) -> K) -> BTreeMap<K, (f64, usize)> {
    let mut map: BTreeMap<K, (f64, usize)> = BTreeMap::new();
    for c in composites {
        let e = map.entry(key(&c.key)).or_insert((0.0, 0));
        e.0 += c.rabi_khz * c.rabi_khz;
        e.1 += 1;
    }
    map
}

/// Per (electronic level, M_f): root-sum-square over N_f.
pub fn electronic_mf_totals(results: &[ChannelResult]) -> Vec<AggregateTotal> {
    rss_by(&composite_totals(results), |k| (k.final_state, k.m_cm_f))
        .into_iter()
        .map(|((final_state, m), (s, n))| AggregateTotal {
            final_state,
            m_cm_f: Some(m),
            rabi_khz: s.sqrt(),
            composites: n,
        })
        .collect()
}

/// Per electronic level: root-sum-square over all CM final states.
pub fn electronic_totals(results: &[ChannelResult]) -> Vec<AggregateTotal> {
    rss_by(&composite_totals(results), |k| k.final_state)
        .into_iter()
        .map(|(final_state, (s, n))| AggregateTotal {
            final_state,
            m_cm_f: None,
            rabi_khz: s.sqrt(),
            composites: n,
        })
        .collect()
}

/// Root-sum-square over composite states of the coherent sums of `results`.
pub fn aggregate_rabi_khz(results: &[ChannelResult]) -> f64 {
    composite_totals(results)
        .iter()
        .map(|c| c.rabi_khz * c.rabi_khz)
        .sum::<f64>()
        .sqrt()
}
