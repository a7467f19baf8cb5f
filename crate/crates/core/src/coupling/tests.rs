use std::f64::consts::PI;
use std::sync::OnceLock;

use super::*;
use crate::atom::{solve_radial, RadialGrid, SpeciesParams, DEFAULT_INNER_RADIUS, DEFAULT_STEP};
use crate::beam::{g_coeff, solid_harmonic_norm, BeamSpec};
use crate::cm::CMState;
use crate::specfun::HalfInt;
use crate::units::{micrometres_to_au, volts_per_metre_to_au};

fn h(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn s_half() -> ElectronicLabel {
    ElectronicLabel::new(60, 0, h(1), h(-1)).unwrap()
}

fn beam(l: i32, sigma: i32, q_max: u32) -> BeamSpec {
    BeamSpec::new(
        l,
        micrometres_to_au(2.7),
        volts_per_metre_to_au(2400.0),
        sigma,
        0.0,
        q_max,
    )
    .unwrap()
}

fn cm0() -> CMState {
    CMState::ground(micrometres_to_au(2.2)).unwrap()
}

fn options(mode: FineStructure) -> ChannelOptions {
    ChannelOptions {
        final_n: 60,
        final_l_f_max: 4,
        fine_structure: mode,
    }
}

fn channels(l: i32, sigma: i32, q_max: u32) -> Vec<Channel> {
    enumerate_channels(
        &beam(l, sigma, q_max),
        &s_half(),
        &cm0(),
        &options(FineStructure::Orbital),
    )
}

fn find(chs: &[Channel], q: u32, l1: u32, l2: u32, l3: u32) -> Vec<Channel> {
    chs.iter()
        .filter(|c| (c.q, c.l1, c.l2, c.l3) == (q, l1, l2, l3))
        .copied()
        .collect()
}

fn rb_setup(l: i32, sigma: i32, q_max: u32) -> CouplingSetup {
    static INITIAL: OnceLock<(SpeciesParams, crate::atom::RydbergState)> = OnceLock::new();
    let (species, initial) = INITIAL.get_or_init(|| {
        let species = SpeciesParams::from_toml_str(include_str!("../../../../data/rb87.toml")).unwrap();
        let grid = RadialGrid::for_principal(60, DEFAULT_INNER_RADIUS, DEFAULT_STEP).unwrap();
        let psi = solve_radial(&species, 60, 0, h(1), &grid)
            .unwrap()
            .with_mj(h(-1))
            .unwrap();
        (species, psi)
    });
    CouplingSetup {
        species: species.clone(),
        beam: beam(l, sigma, q_max),
        initial: initial.clone(),
        cm_initial: cm0(),
        options: options(FineStructure::Orbital),
    }
}

#[test]
fn table_one_first_pair() {
    let chs = channels(1, 1, 0);
    assert_eq!(chs.len(), 2);
    let p = find(&chs, 0, 0, 0, 0)[0];
    assert_eq!(
        (p.m1, p.m_cm_f, p.final_state.l, p.final_state.j, p.final_state.mj),
        (0, 1, 1, h(3), h(1))
    );
    let d = find(&chs, 0, 1, 0, 0)[0];
    assert_eq!(
        (d.m1, d.m_cm_f, d.final_state.l, d.final_state.j, d.final_state.mj),
        (1, 0, 2, h(5), h(3))
    );
}

#[test]
fn table_one_negative_pair() {
    let chs = channels(-1, -1, 0);
    assert_eq!(chs.len(), 2);
    let p = find(&chs, 0, 0, 0, 0)[0];
    assert_eq!((p.m1, p.m_cm_f, p.final_state.l, p.final_state.mj), (0, -1, 1, h(-3)));
    let d = find(&chs, 0, 1, 0, 0)[0];
    assert_eq!((d.m1, d.m_cm_f, d.final_state.l, d.final_state.mj), (-1, 0, 2, h(-5)));
}

#[test]
fn opposite_signs_give_p_and_d() {
    // m1 = 0 keeps P character with the CM absorbing the charge.
    let chs = channels(1, -1, 0);
    assert_eq!(chs.len(), 2);
    let p = find(&chs, 0, 0, 0, 0)[0];
    assert_eq!((p.final_state.l, p.final_state.mj, p.m_cm_f), (1, h(-3), 1));
    let d = find(&chs, 0, 1, 0, 0)[0];
    assert_eq!((d.final_state.l, d.final_state.mj, d.m_cm_f), (2, h(-1), 0));
    let chs = channels(-1, 1, 0);
    let d = find(&chs, 0, 1, 0, 0)[0];
    assert_eq!((d.m1, d.final_state.l, d.final_state.mj, d.m_cm_f), (-1, 2, h(-1), 0));
}

#[test]
fn table_two_rows_present() {
    let chs = channels(1, 1, 1);
    let gt = find(&chs, 1, 0, 1, 0);
    assert!(gt
        .iter()
        .any(|c| c.final_state.l == 2 && c.final_state.mj == h(3) && c.m_cm_f == 0));
    let dm0 = find(&chs, 1, 0, 0, 1);
    assert!(dm0
        .iter()
        .any(|c| c.m3 == -1 && c.m_cm_f == 2 && c.final_state.l == 2 && c.final_state.mj == h(-1)));
}

#[test]
fn no_vortex_single_dipole_channel() {
    let chs = channels(0, 1, 0);
    assert_eq!(chs.len(), 1);
    assert_eq!(
        (chs[0].m_cm_f, chs[0].final_state.l, chs[0].alpha, chs[0].beta),
        (0, 1, 1, 0)
    );
}

#[test]
fn ordering_is_deterministic() {
    let a = channels(2, 1, 2);
    let b = channels(2, 1, 2);
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0].order_key() <= w[1].order_key()));
}

#[test]
fn every_channel_obeys_the_deltas() {
    for l in -3..=3 {
        for sigma in -1..=1 {
            for mode in [FineStructure::Orbital, FineStructure::Resolved] {
                let chs = enumerate_channels(&beam(l, sigma, 2), &s_half(), &cm0(), &options(mode));
                for c in chs {
                    assert!(c.satisfies_selection_rules(), "{c:?}");
                    let dm = (c.final_state.mj - c.initial.mj).twice() / 2;
                    assert_eq!(dm + c.m_cm_f - c.m_cm_i, l + sigma);
                }
            }
        }
    }
}

#[test]
fn c_product_examples() {
    let c00 = (4.0 * PI).sqrt();
    assert!((c_product(0, 0, 0, 0, 0, 0, 0, 0) - c00.powi(6)).abs() < 1e-9 * c00.powi(6));
    let expected = solid_harmonic_norm(1, 1) * c00.powi(5);
    assert!((c_product(1, 0, 1, 0, 0, 1, 0, 0) - expected).abs() < 1e-12 * expected);
    assert_eq!(c_product(1, 0, 1, 0, 0, 2, 0, 0), 0.0);
    assert_eq!(c_product(1, 1, 0, 2, 0, 0, 2, 0), 0.0);
}

#[test]
fn fine_structure_weights() {
    let i = s_half();
    assert!((fine_structure_weight(&i, &i, 0, 0) - 1.0).abs() < 1e-14);
    let d = ElectronicLabel::new(60, 2, h(5), h(3)).unwrap();
    let w = fine_structure_weight(&i, &d, 0, 2);
    // ⟨2 2; 1/2 -1/2 | 5/2 3/2⟩ = 1/√5
    assert!((w - (1.0f64 / 5.0).sqrt()).abs() < 1e-14);
    let p = ElectronicLabel::new(60, 1, h(3), h(3)).unwrap();
    assert_eq!(fine_structure_weight(&i, &p, 0, 1), 0.0);
}

#[test]
fn label_display() {
    let d = ElectronicLabel::new(60, 2, h(5), h(3)).unwrap();
    assert_eq!(d.to_string(), "60D5/2[3/2]");
    assert!(ElectronicLabel::new(60, 2, h(7), h(3)).is_err());
    assert_eq!("resolved".parse::<FineStructure>().unwrap(), FineStructure::Resolved);
    assert!("both".parse::<FineStructure>().is_err());
}

#[test]
fn lambda_oracle_limits() {
    assert!((lambda_integral_oracle(0, 0, 1e-9, 1.0) - 1.0).abs() < 1e-12);
    assert!((lambda_integral_oracle(1, 0, 1e-9, 1.0) - 0.5).abs() < 1e-12);
    // j1(x) = x/3 - x^3/30 + x^5/840, integrated over λ with x = 0.1 λ
    let x: f64 = 0.1;
    let series = x / 6.0 - x.powi(3) / 120.0 + x.powi(5) / 5040.0;
    assert!((lambda_integral_oracle(0, 1, 0.1, 1.0) - series).abs() < 1e-12);
    // ∫ j0(cλ) dλ = Si(c)/c; Si(π) = 1.851937051982466
    let c = PI;
    assert!((lambda_integral_oracle(0, 0, c, 1.0) - 1.851_937_051_982_466 / c).abs() < 1e-12);
}

#[test]
fn assembled_factors_multiply_out() {
    let setup = rb_setup(1, 1, 1);
    let results = evaluate(&setup).unwrap();
    assert!(!results.is_empty());
    for r in &results {
        let product = r.factor_product();
        let scale = r.matrix_element.norm().max(1e-300);
        assert!((product - r.matrix_element).norm() <= 1e-12 * scale);
        assert!(r.rabi_khz >= 0.0);
        assert_eq!(r.closed, r.rabi_khz == 0.0);
        let g = g_coeff(1, r.channel.q, setup.cm_initial.w_r, setup.beam.waist);
        assert!(r.coeff.signum() == g.signum() || r.coeff == 0.0);
        assert!(r.audit.wavenumber >= 0.0 && r.audit.exact > 0.0);
    }
}

#[test]
fn parity_violations_vanish() {
    let setup = rb_setup(1, 1, 0);
    let mut ch = setup.channels()[0];
    // S initial, α = 1: an even l_f breaks parity.
    ch.final_state = ElectronicLabel::new(60, 2, h(5), ch.final_state.mj).unwrap();
    assert_eq!(electronic_angular(&ch), 0.0);
}

#[test]
fn zero_field_gives_zero_rabi() {
    let mut setup = rb_setup(1, 1, 1);
    setup.beam.amplitude = 0.0;
    let results = evaluate(&setup).unwrap();
    assert!(results.iter().all(|r| r.rabi_khz == 0.0 && r.closed));
}

#[test]
fn mirror_pair_magnitudes_match() {
    let a = evaluate(&rb_setup(-1, 1, 1)).unwrap();
    let b = evaluate(&rb_setup(1, -1, 1)).unwrap();
    let row_a = a
        .iter()
        .find(|r| {
            (r.channel.q, r.channel.l1, r.channel.l2, r.channel.l3) == (1, 0, 1, 0)
                && r.channel.final_state.l == 2
                && r.channel.n_cm_f == 2
        })
        .unwrap();
    let row_b = b
        .iter()
        .find(|r| {
            (r.channel.q, r.channel.l1, r.channel.l2, r.channel.l3) == (1, 0, 0, 1)
                && r.channel.final_state.l == 2
                && r.channel.n_cm_f == 2
        })
        .unwrap();
    assert_eq!(row_a.channel.m_cm_f, -2);
    assert_eq!(row_b.channel.m_cm_f, 2);
    assert_eq!(row_a.channel.final_state.mj, h(3));
    assert_eq!(row_b.channel.final_state.mj, h(-5));
    let (ma, mb) = (row_a.matrix_element.norm(), row_b.matrix_element.norm());
    assert!(ma > 0.0 && ((ma - mb) / ma).abs() < 1e-10, "{ma} vs {mb}");
}

#[test]
fn totals_aggregate_consistently() {
    let results = evaluate(&rb_setup(1, 1, 1)).unwrap();
    let comp = composite_totals(&results);
    let per_mf = electronic_mf_totals(&results);
    let per_e = electronic_totals(&results);
    let sum_sq = |v: &mut dyn Iterator<Item = f64>| v.map(|x| x * x).sum::<f64>();
    let a = sum_sq(&mut comp.iter().map(|c| c.rabi_khz));
    let b = sum_sq(&mut per_mf.iter().map(|c| c.rabi_khz));
    let c = sum_sq(&mut per_e.iter().map(|c| c.rabi_khz));
    assert!((a - b).abs() <= 1e-12 * a && (a - c).abs() <= 1e-12 * a);
    assert_eq!(comp.iter().map(|c| c.channels).sum::<usize>(), results.len());
}

#[test]
fn sweep_single_charge_matches_direct_evaluation() {
    let base = rb_setup(1, 1, 1);
    let rows = sweep_topological_charge(&[1], &base).unwrap();
    let results = evaluate(&base).unwrap();
    for g in ChannelGroup::ALL {
        let row = rows.iter().find(|r| r.group == g).unwrap();
        let (label, direct) = group_rabi(&results, g).unwrap();
        assert_eq!(row.final_state, label);
        assert_eq!(row.rabi_khz, direct);
    }
    assert!(sweep_topological_charge(&[], &base).is_err());
}
