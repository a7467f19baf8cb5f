use std::fmt;

use rayon::prelude::*;

use crate::beam::BeamSpec;
use crate::error::{invalid, Result};

use super::assemble::{aggregate_rabi_khz, evaluate, ChannelResult, CouplingSetup};
use super::channel::ElectronicLabel;

/// Channel families plotted against the topological charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChannelGroup {
    /// q = 0, no orbital transfer from the vortex or the envelope.
    SToP,
    /// q = 0, l1 = 1: one unit of vortex charge goes to the electron.
    ViaTc,
    /// q = 1, l1 = 0, (l2, l3) = (1, 0): one unit from the envelope gradient.
    ViaGt,
    /// Every channel reaching the via-TC final level.
    Total,
}

impl ChannelGroup {
    pub const ALL: [ChannelGroup; 4] = [
        ChannelGroup::SToP,
        ChannelGroup::ViaTc,
        ChannelGroup::ViaGt,
        ChannelGroup::Total,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelGroup::SToP => "S->P",
            ChannelGroup::ViaTc => "via TC",
            ChannelGroup::ViaGt => "via GT",
            ChannelGroup::Total => "total",
        }
    }

    fn tuple(self) -> Option<(u32, u32, u32, u32)> {
        match self {
            ChannelGroup::SToP => Some((0, 0, 0, 0)),
            ChannelGroup::ViaTc => Some((0, 1, 0, 0)),
            ChannelGroup::ViaGt => Some((1, 0, 1, 0)),
            ChannelGroup::Total => None,
        }
    }

    fn final_l(self) -> u32 {
        match self {
            ChannelGroup::SToP => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for ChannelGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub charge: i32,
    pub group: ChannelGroup,
    pub final_state: ElectronicLabel,
    pub rabi_khz: f64,
}

fn stretched(l: &ElectronicLabel) -> bool {
    l.j.twice() == 2 * l.l as i32 + 1
}

/// Group value for one evaluated charge. Tuple groups use the channels of
/// that tuple into the stretched-j level; the total uses every channel into
/// the via-TC level. Coherent within composite states, root-sum-square
/// across them.
pub fn group_rabi(results: &[ChannelResult], group: ChannelGroup) -> Option<(ElectronicLabel, f64)> {
    let pick = |g: ChannelGroup| -> Vec<ChannelResult> {
        let (q, l1, l2, l3) = g.tuple().expect("tuple group");
        results
            .iter()
            .filter(|r| {
                let c = &r.channel;
                (c.q, c.l1, c.l2, c.l3) == (q, l1, l2, l3)
                    && c.final_state.l == g.final_l()
                    && stretched(&c.final_state)
            })
            .cloned()
            .collect()
    };
    match group {
        ChannelGroup::Total => {
            let tc = pick(ChannelGroup::ViaTc);
            let label = tc.first()?.channel.final_state;
            let all: Vec<ChannelResult> = results
                .iter()
                .filter(|r| r.channel.final_state == label)
                .cloned()
                .collect();
            Some((label, aggregate_rabi_khz(&all)))
        }
        g => {
            let chosen = pick(g);
            let label = chosen.first()?.channel.final_state;
            if chosen.iter().any(|r| r.channel.final_state != label) {
                let same: Vec<ChannelResult> = chosen
                    .iter()
                    .filter(|r| r.channel.final_state == label)
                    .cloned()
                    .collect();
                return Some((label, aggregate_rabi_khz(&same)));
            }
            Some((label, aggregate_rabi_khz(&chosen)))
        }
    }
}

/// Re-evaluates `base` for each charge and reports every channel group.
pub fn sweep_topological_charge(l_values: &[i32], base: &CouplingSetup) -> Result<Vec<SweepRow>> {
    if l_values.is_empty() {
        return Err(invalid("sweep", "no topological charges given".to_string()));
    }
    let per_l: Vec<Vec<SweepRow>> = l_values
        .par_iter()
        .map(|&l| {
            let beam = BeamSpec {
                charge: l,
                ..base.beam.clone()
            };
            let setup = CouplingSetup { beam, ..base.clone() };
            let results = evaluate(&setup)?;
            Ok(ChannelGroup::ALL
                .iter()
                .filter_map(|&g| {
                    group_rabi(&results, g).map(|(final_state, rabi_khz)| SweepRow {
                        charge: l,
                        group: g,
                        final_state,
                        rabi_khz,
                    })
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_l.into_iter().flatten().collect())
}
