//! Channel enumeration, matrix-element assembly and Rabi frequencies.

mod assemble;
mod channel;
mod sweep;

pub use assemble::{
    aggregate_rabi_khz, assemble, composite_totals, electronic_angular, electronic_mf_totals, electronic_totals,
    evaluate, evaluate_channels, lambda_integral_oracle, resonant_wavenumber, AggregateTotal, ChannelResult,
    CompositeKey, CompositeTotal, CouplingSetup, LambdaAudit,
};
pub use channel::{
    c_product, enumerate_channels, fine_structure_weight, Channel, ChannelOptions, ElectronicLabel, FineStructure,
};
pub use sweep::{group_rabi, sweep_topological_charge, ChannelGroup, SweepRow};

#[cfg(test)]
mod tests;
