use super::*;
use crate::specfun::HalfInt;
use approx::assert_relative_eq;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

// explicit-sum hydrogen radial function
fn hydrogen_radial(n: u32, l: u32, r: f64) -> f64 {
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

fn hydrogen_grid() -> RadialGrid {
    RadialGrid::for_principal(5, 1e-4, 0.001).unwrap()
}

fn j_of(l: u32) -> HalfInt {
    HalfInt::from_twice(2 * l as i32 + 1)
}

#[test]
fn hydrogen_matches_analytic_functions() {
    let h = SpeciesParams::hydrogen();
    let grid = hydrogen_grid();
    for n in 1..=5 {
        for l in 0..n {
            let s = solve_radial(&h, n, l, j_of(l), &grid).unwrap();
            // overall sign is a convention: Numerov output is positive at large r
            let tail = grid.r(grid.len() / 4);
            let sign = (s.radial.radial(grid.len() / 4) * hydrogen_radial(n, l, tail)).signum();
            let mut worst = 0.0f64;
            for (i, r) in grid.radii().enumerate() {
                worst = worst.max((sign * s.radial.radial(i) - hydrogen_radial(n, l, r)).abs());
            }
            assert!(worst < 1e-6, "n={n} l={l}: {worst:e}");
            assert_eq!(s.radial.nodes, n - l - 1);
        }
    }
}

#[test]
fn hydrogen_dipole_2p_1s() {
    let h = SpeciesParams::hydrogen();
    let grid = hydrogen_grid();
    let s1 = solve_radial(&h, 1, 0, j_of(0), &grid).unwrap();
    let p2 = solve_radial(&h, 2, 1, j_of(1), &grid).unwrap();
    let exact = 128.0 * 6f64.sqrt() / 243.0;
    let a = radial_matrix_element(&p2, &s1, 1, 3.0).unwrap();
    let b = radial_matrix_element(&s1, &p2, 1, 3.0).unwrap();
    assert!((a - exact).abs() < 1e-4, "{a}");
    assert_eq!(a, b);
}

#[test]
fn hydrogen_orthogonality_and_expectations() {
    let h = SpeciesParams::hydrogen();
    let grid = hydrogen_grid();
    let states: Vec<_> = (1..=5)
        .map(|n| solve_radial(&h, n, 0, j_of(0), &grid).unwrap())
        .collect();
    for (a, sa) in states.iter().enumerate() {
        let n = (a + 1) as f64;
        let r = radial_matrix_element(sa, sa, 1, 1.0).unwrap();
        assert_relative_eq!(r, 1.5 * n * n, max_relative = 1e-6);
        for sb in &states[a + 1..] {
            assert!(radial_power(sa, sb, 0).unwrap().abs() < 1e-4);
        }
    }
}

#[test]
fn power_law_in_trap_length() {
    let h = SpeciesParams::hydrogen();
    let grid = hydrogen_grid();
    let a = solve_radial(&h, 3, 1, j_of(1), &grid).unwrap();
    let b = solve_radial(&h, 4, 2, j_of(2), &grid).unwrap();
    let v1 = radial_matrix_element(&a, &b, 2, 10.0).unwrap() * 10.0;
    let v2 = radial_matrix_element(&a, &b, 2, 1e4).unwrap() * 1e4;
    assert_relative_eq!(v1, v2, max_relative = 1e-12);
    assert!(radial_matrix_element(&a, &b, 0, 1.0).is_err());
}

#[test]
fn grid_mismatch_is_an_error() {
    let h = SpeciesParams::hydrogen();
    let a = solve_radial(&h, 2, 0, j_of(0), &hydrogen_grid()).unwrap();
    let other = RadialGrid::for_principal(5, 1e-4, 0.003).unwrap();
    let b = solve_radial(&h, 2, 0, j_of(0), &other).unwrap();
    assert!(matches!(radial_power(&a, &b, 1), Err(crate::Error::GridMismatch(_))));
}

#[test]
fn invalid_inputs() {
    let h = SpeciesParams::hydrogen();
    let grid = hydrogen_grid();
    assert!(solve_radial(&h, 2, 2, j_of(2), &grid).is_err());
    assert!(solve_radial(&h, 3, 1, HalfInt::from_twice(7), &grid).is_err());
    let short = RadialGrid::new(1e-3, 10.0, 0.01).unwrap();
    assert!(solve_radial(&h, 5, 0, j_of(0), &short).is_err());
    assert!(RadialGrid::new(0.0, 10.0, 0.01).is_err());
    assert!(RadialGrid::new(1.0, 0.5, 0.01).is_err());
    let s = solve_radial(&h, 3, 1, j_of(1), &grid).unwrap();
    assert!(s.with_mj(HalfInt::from_twice(-3)).is_ok());
    assert!(s.with_mj(HalfInt::from_twice(5)).is_err());
    assert!(s.with_mj(HalfInt::from_int(1)).is_err());
}

#[test]
fn rubidium_60s() {
    let rb = SpeciesParams::from_toml_str(include_str!("../../../../data/rb87.toml")).unwrap();
    let grid = RadialGrid::for_principal(60, DEFAULT_INNER_RADIUS, DEFAULT_STEP).unwrap();
    let s = solve_radial(&rb, 60, 0, HalfInt::HALF, &grid).unwrap();
    assert_eq!(s.radial.nodes, 59);
    assert!((s.radial.norm() - 1.0).abs() < 1e-8);
    assert!(s.radial.flags.is_empty(), "{:?}", s.radial.flags);
    let r = radial_matrix_element(&s, &s, 1, 1.0).unwrap();
    let nstar = 60.0 - s.radial.energy.defect;
    assert_relative_eq!(r, 1.5 * nstar * nstar, max_relative = 0.01);
}
