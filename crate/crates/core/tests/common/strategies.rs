use fcprofile::PruningType;
use proptest::prelude::*;

pub const PRUNING: [PruningType; 4] = [
    PruningType::Wolfprune,
    PruningType::Width,
    PruningType::VolS,
    PruningType::DevLength,
];

/// Integer heights over a random range, up to 63 samples.
pub fn integer_profile() -> impl Strategy<Value = Vec<f64>> {
    (1u32..12).prop_flat_map(|range| prop::collection::vec((0..=range).prop_map(f64::from), 3..64))
}

pub fn real_profile() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 3..96)
}

pub fn any_profile() -> impl Strategy<Value = Vec<f64>> {
    prop_oneof![integer_profile(), real_profile()]
}

pub fn pruning() -> impl Strategy<Value = PruningType> {
    prop::sample::select(PRUNING.to_vec())
}

pub fn dx() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![0.25, 0.5, 1.0, 2.0])
}

/// Whole or half-integer Wolf threshold.
pub fn wolf_threshold() -> impl Strategy<Value = f64> {
    (0u32..16).prop_map(|t| t as f64 / 2.0)
}
