use std::fmt;

use crate::beam::{ln_solid_harmonic_norm, BeamSpec};
use crate::cm::CMState;
use crate::error::{invalid, Result};
use crate::specfun::{clebsch_gordan_half, HalfInt};

const ORBITAL_LETTERS: &[u8] = b"SPDFGHIKLMNOQRTUV";

/// Electronic fine-structure level |n l j m_j⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElectronicLabel {
    pub n: u32,
    pub l: u32,
    pub j: HalfInt,
    pub mj: HalfInt,
}

impl ElectronicLabel {
    pub fn new(n: u32, l: u32, j: HalfInt, mj: HalfInt) -> Result<Self> {
        if l >= n || (j.twice() - 2 * l as i32).abs() != 1 || mj.abs() > j || (j.twice() - mj.twice()) % 2 != 0 {
            return Err(invalid("electronic state", format!("n={n}, l={l}, j={j}, m_j={mj}")));
        }
        Ok(ElectronicLabel { n, l, j, mj })
    }
}

impl fmt::Display for ElectronicLabel {
    /// `60D5/2[3/2]`: n, orbital letter, j, and m_j in brackets.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = ORBITAL_LETTERS.get(self.l as usize).map_or('?', |c| *c as char);
        write!(f, "{}{}{}[{}]", self.n, letter, self.j, self.mj)
    }
}

/// How the electron spin enters the angular factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FineStructure {
    /// Transitions between orbital states; the spin projection is carried
    /// along and the final level is labelled j = l + 1/2. The Clebsch-Gordan
    /// product is still reported but not applied.
    #[default]
    Orbital,
    /// Both j = l ± 1/2 finals, weighted by the spin-spectator
    /// Clebsch-Gordan product.
    Resolved,
}

impl std::str::FromStr for FineStructure {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "orbital" => Ok(FineStructure::Orbital),
            "resolved" => Ok(FineStructure::Resolved),
            other => Err(format!(
                "unknown fine-structure mode '{other}' (expected 'orbital' or 'resolved')"
            )),
        }
    }
}

impl fmt::Display for FineStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FineStructure::Orbital => "orbital",
            FineStructure::Resolved => "resolved",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelOptions {
    pub final_n: u32,
    pub final_l_f_max: u32,
    pub fine_structure: FineStructure,
}

/// One term of the (σ, q, l1, l2, l3) sum together with the final electronic
/// and centre-of-mass states it feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Channel {
    pub charge: i32,
    pub sigma: i32,
    pub q: u32,
    pub l1: u32,
    pub l2: u32,
    pub l3: u32,
    pub m1: i32,
    pub m2: i32,
    pub m3: i32,
    pub alpha: u32,
    pub beta: u32,
    pub n_cm_i: u32,
    pub m_cm_i: i32,
    pub n_cm_f: u32,
    pub m_cm_f: i32,
    /// Spectator spin projection m_s.
    pub spin: HalfInt,
    pub initial: ElectronicLabel,
    pub m_li: i32,
    pub final_state: ElectronicLabel,
    pub m_lf: i32,
}

impl Channel {
    /// Projections transferred to the electron orbit: σ + m1 + m2 + m3.
    pub fn electron_transfer(&self) -> i32 {
        self.sigma + self.m1 + self.m2 + self.m3
    }

    /// Deterministic ordering key (q, l1, l2, l3, σ, l_f, j_f, N_f, m_s).
    pub fn order_key(&self) -> (u32, u32, u32, u32, i32, u32, i32, u32, i32) {
        (
            self.q,
            self.l1,
            self.l2,
            self.l3,
            self.sigma,
            self.final_state.l,
            self.final_state.j.twice(),
            self.n_cm_f,
            self.spin.twice(),
        )
    }

    /// Checks every selection rule of the channel with integer arithmetic.
    pub fn satisfies_selection_rules(&self) -> bool {
        let l = self.charge;
        let sign = l.signum();
        let la = l.unsigned_abs();
        self.l1 <= la
            && self.l2 <= self.q
            && self.l3 <= self.q
            && self.m1 == sign * self.l1 as i32
            && self.m2 == self.l2 as i32
            && self.m3 == -(self.l3 as i32)
            && self.alpha == self.l1 + self.l2 + self.l3 + 1
            && self.beta + self.l1 + self.l2 + self.l3 == la + 2 * self.q
            && self.m_cm_f == l - self.m1 - self.m2 - self.m3 + self.m_cm_i
            && self.m_lf == self.m_li + self.electron_transfer()
            && HalfInt::from_int(self.m_li) + self.spin == self.initial.mj
            && HalfInt::from_int(self.m_lf) + self.spin == self.final_state.mj
    }
}

/// Product of the six solid-harmonic constants
/// C^{m1}_{l1} C^{l-m1}_{|l|-l1} C^{m2}_{l2} C^{q-m2}_{q-l2} C^{m3}_{l3} C^{-q-m3}_{q-l3};
/// zero when any projection exceeds its rank.
#[allow(clippy::too_many_arguments)]
pub fn c_product(l: i32, q: u32, l1: u32, l2: u32, l3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    let la = l.unsigned_abs();
    if l1 > la || l2 > q || l3 > q {
        return 0.0;
    }
    let qi = q as i32;
    let factors = [
        (l1, m1),
        (la - l1, l - m1),
        (l2, m2),
        (q - l2, qi - m2),
        (l3, m3),
        (q - l3, -qi - m3),
    ];
    let mut ln = 0.0;
    for (rank, m) in factors {
        match ln_solid_harmonic_norm(rank, m) {
            Some(v) => ln += v,
            None => return 0.0,
        }
    }
    ln.exp()
}

/// Spin-spectator reduction ⟨l_f m_lf; 1/2 m_s | j_f m_jf⟩⟨l_i m_li; 1/2 m_s | j_i m_ji⟩
/// with m_s fixed by the initial level; zero when the spin would change.
pub fn fine_structure_weight(initial: &ElectronicLabel, final_state: &ElectronicLabel, m_li: i32, m_lf: i32) -> f64 {
    let m_s = initial.mj - HalfInt::from_int(m_li);
    if final_state.mj - HalfInt::from_int(m_lf) != m_s || m_s.abs() != HalfInt::HALF {
        return 0.0;
    }
    let half = HalfInt::HALF;
    let cg_i = clebsch_gordan_half(
        HalfInt::from_int(initial.l as i32),
        HalfInt::from_int(m_li),
        half,
        m_s,
        initial.j,
        initial.mj,
    );
    let cg_f = clebsch_gordan_half(
        HalfInt::from_int(final_state.l as i32),
        HalfInt::from_int(m_lf),
        half,
        m_s,
        final_state.j,
        final_state.mj,
    );
    cg_f * cg_i
}

/// All channels allowed by the Kronecker deltas for the configured beam and
/// initial state, paired with every reachable final level and CM state.
/// The diagonal term (final composite state equal to the initial one) is
/// not a transition and is left out.
pub fn enumerate_channels(
    beam: &BeamSpec,
    initial: &ElectronicLabel,
    initial_cm: &CMState,
    options: &ChannelOptions,
) -> Vec<Channel> {
    let l = beam.charge;
    let la = l.unsigned_abs();
    let sign = l.signum();
    let sigma = beam.sigma;
    let mut out = Vec::new();
    for q in 0..=beam.q_max {
        for l1 in 0..=la {
            for l2 in 0..=q {
                for l3 in 0..=q {
                    let (m1, m2, m3) = (sign * l1 as i32, l2 as i32, -(l3 as i32));
                    let alpha = l1 + l2 + l3 + 1;
                    let beta = la + 2 * q - l1 - l2 - l3;
                    let m_cm_f = l - m1 - m2 - m3 + initial_cm.m;
                    let transfer = sigma + m1 + m2 + m3;
                    let rank_max = initial.l + alpha;
                    for spin in [HalfInt::from_twice(-1), HalfInt::HALF] {
                        let m_li_h = initial.mj - spin;
                        let m_li = m_li_h.twice() / 2;
                        if m_li.unsigned_abs() > initial.l {
                            continue;
                        }
                        let m_lf = m_li + transfer;
                        for l_f in 0..=options.final_l_f_max.min(rank_max) {
                            if l_f >= options.final_n
                                || m_lf.unsigned_abs() > l_f
                                || !(l_f + initial.l + alpha).is_multiple_of(2)
                                || l_f + alpha < initial.l
                            {
                                continue;
                            }
                            let mj_f = HalfInt::from_int(m_lf) + spin;
                            let j_choices: Vec<HalfInt> = match options.fine_structure {
                                FineStructure::Orbital => vec![HalfInt::from_twice(2 * l_f as i32 + 1)],
                                FineStructure::Resolved => {
                                    let mut v = Vec::new();
                                    if l_f > 0 {
                                        v.push(HalfInt::from_twice(2 * l_f as i32 - 1));
                                    }
                                    v.push(HalfInt::from_twice(2 * l_f as i32 + 1));
                                    v
                                }
                            };
                            for j_f in j_choices {
                                if mj_f.abs() > j_f {
                                    continue;
                                }
                                let final_state = ElectronicLabel {
                                    n: options.final_n,
                                    l: l_f,
                                    j: j_f,
                                    mj: mj_f,
                                };
                                if options.fine_structure == FineStructure::Resolved
                                    && fine_structure_weight(initial, &final_state, m_li, m_lf) == 0.0
                                {
                                    continue;
                                }
                                let n_max = initial_cm.n + beta;
                                let mut n_cm_f = m_cm_f.unsigned_abs();
                                while n_cm_f <= n_max {
                                    if final_state == *initial && n_cm_f == initial_cm.n && m_cm_f == initial_cm.m {
                                        n_cm_f += 2;
                                        continue;
                                    }
                                    out.push(Channel {
                                        charge: l,
                                        sigma,
                                        q,
                                        l1,
                                        l2,
                                        l3,
                                        m1,
                                        m2,
                                        m3,
                                        alpha,
                                        beta,
                                        n_cm_i: initial_cm.n,
                                        m_cm_i: initial_cm.m,
                                        n_cm_f,
                                        m_cm_f,
                                        spin,
                                        initial: *initial,
                                        m_li,
                                        final_state,
                                        m_lf,
                                    });
                                    n_cm_f += 2;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| c.order_key());
    out
}
