use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::functions::ln_factorial;
use super::half::HalfInt;
use super::harmonics::AngularTriple;
use crate::error::Result;

fn lnf(twice: i32) -> f64 {
    debug_assert!(twice >= 0 && twice % 2 == 0);
    ln_factorial((twice / 2) as u32)
}

/// Wigner 3j symbol from the Racah sum, arguments as half-integers.
/// Returns 0 whenever a selection rule fails.
pub fn wigner3j_half(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> f64 {
    let (tj1, tj2, tj3) = (j1.twice(), j2.twice(), j3.twice());
    let (tm1, tm2, tm3) = (m1.twice(), m2.twice(), m3.twice());
    if tj1 < 0 || tj2 < 0 || tj3 < 0 {
        return 0.0;
    }
    if tm1 + tm2 + tm3 != 0 {
        return 0.0;
    }
    if tm1.abs() > tj1 || tm2.abs() > tj2 || tm3.abs() > tj3 {
        return 0.0;
    }
    if (tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0 {
        return 0.0;
    }
    if (tj1 + tj2 + tj3) % 2 != 0 {
        return 0.0;
    }
    if tj3 > tj1 + tj2 || tj3 < (tj1 - tj2).abs() {
        return 0.0;
    }

    let ln_delta =
        0.5 * (lnf(tj1 + tj2 - tj3) + lnf(tj1 - tj2 + tj3) + lnf(-tj1 + tj2 + tj3) - lnf(tj1 + tj2 + tj3 + 2));
    let ln_proj =
        0.5 * (lnf(tj1 + tm1) + lnf(tj1 - tm1) + lnf(tj2 + tm2) + lnf(tj2 - tm2) + lnf(tj3 + tm3) + lnf(tj3 - tm3));

    // all in doubled units
    let kmin = 0.max(tj2 - tj3 - tm1).max(tj1 - tj3 + tm2);
    let kmax = (tj1 + tj2 - tj3).min(tj1 - tm1).min(tj2 + tm2);
    if kmin > kmax {
        return 0.0;
    }
    let mut terms = Vec::new();
    let mut k = kmin;
    while k <= kmax {
        let ln_den = lnf(k)
            + lnf(tj3 - tj2 + k + tm1)
            + lnf(tj3 - tj1 + k - tm2)
            + lnf(tj1 + tj2 - tj3 - k)
            + lnf(tj1 - k - tm1)
            + lnf(tj2 - k + tm2);
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        terms.push((sign, -ln_den));
        k += 2;
    }
    let shift = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|(s, l)| s * (l - shift).exp()).sum();
    let phase_twice = tj1 - tj2 - tm3;
    let phase = if (phase_twice / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    phase * sum * (ln_delta + ln_proj + shift).exp()
}

/// Wigner 3j symbol for real-valued arguments that must be half-integers.
pub fn wigner3j(j1: f64, j2: f64, j3: f64, m1: f64, m2: f64, m3: f64) -> Result<f64> {
    Ok(wigner3j_half(
        HalfInt::from_f64(j1)?,
        HalfInt::from_f64(j2)?,
        HalfInt::from_f64(j3)?,
        HalfInt::from_f64(m1)?,
        HalfInt::from_f64(m2)?,
        HalfInt::from_f64(m3)?,
    ))
}

/// Integer-rank 3j symbol.
pub fn wigner3j_int(l1: u32, l2: u32, l3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    wigner3j_half(
        HalfInt::from_int(l1 as i32),
        HalfInt::from_int(l2 as i32),
        HalfInt::from_int(l3 as i32),
        HalfInt::from_int(m1),
        HalfInt::from_int(m2),
        HalfInt::from_int(m3),
    )
}

/// ⟨j1 m1; j2 m2 | J M⟩.
pub fn clebsch_gordan_half(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    if m1 + m2 != m {
        return 0.0;
    }
    let phase_twice = j1.twice() - j2.twice() + m.twice();
    let phase = if (phase_twice / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    phase * f64::from(j.twice() + 1).sqrt() * wigner3j_half(j1, j2, j, m1, m2, -m)
}

/// ⟨l ml; s ms | j mj⟩ for orbital l coupled with spin s.
pub fn clebsch_gordan(l: i32, s: f64, ml: i32, ms: f64, j: f64, mj: f64) -> Result<f64> {
    Ok(clebsch_gordan_half(
        HalfInt::from_int(l),
        HalfInt::from_int(ml),
        HalfInt::from_f64(s)?,
        HalfInt::from_f64(ms)?,
        HalfInt::from_f64(j)?,
        HalfInt::from_f64(mj)?,
    ))
}

/// ∫ Y^{m1}_{l1} Y^{m2}_{l2} Y^{m3}_{l3} dΩ.
pub fn gaunt(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32, m3: i32) -> f64 {
    if m1 + m2 + m3 != 0 || !(l1 + l2 + l3).is_multiple_of(2) {
        return 0.0;
    }
    let w0 = wigner3j_int(l1, l2, l3, 0, 0, 0);
    if w0 == 0.0 {
        return 0.0;
    }
    let pref = (f64::from((2 * l1 + 1) * (2 * l2 + 1) * (2 * l3 + 1)) / (4.0 * PI)).sqrt();
    pref * w0 * wigner3j_int(l1, l2, l3, m1, m2, m3)
}

/// Expansion coefficients of Y^{m_a}_{l_a} Y^{m_b}_{l_b} = Σ_L c_L Y^{m_a+m_b}_L.
fn couple_pair(a: AngularTriple, b: AngularTriple) -> impl Iterator<Item = (AngularTriple, f64)> {
    let m = a.m + b.m;
    let lo = a.l.abs_diff(b.l).max(m.unsigned_abs());
    (lo..=a.l + b.l).filter_map(move |big_l| {
        if !(a.l + b.l + big_l).is_multiple_of(2) {
            return None;
        }
        // ∫ Y_a Y_b (Y^M_L)* = (-1)^M ∫ Y_a Y_b Y^{-M}_L
        let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let c = sign * gaunt(a.l, a.m, b.l, b.m, big_l, -m);
        (c != 0.0).then_some((AngularTriple { l: big_l, m }, c))
    })
}

/// ∫ (Y^{m}_{l})*_{bra} · Π factors · Y_{ket} dΩ, reducing the product of
/// harmonics pairwise from the left into single-harmonic expansions.
pub fn multi_gaunt(factors: &[AngularTriple], bra: AngularTriple, ket: AngularTriple) -> f64 {
    let mut expansion: BTreeMap<AngularTriple, f64> = BTreeMap::new();
    expansion.insert(ket, 1.0);
    for &f in factors {
        let mut next: BTreeMap<AngularTriple, f64> = BTreeMap::new();
        for (&t, &c) in &expansion {
            for (u, g) in couple_pair(t, f) {
                *next.entry(u).or_insert(0.0) += c * g;
            }
        }
        expansion = next;
        if expansion.is_empty() {
            return 0.0;
        }
    }
    expansion.get(&bra).copied().unwrap_or(0.0)
}
