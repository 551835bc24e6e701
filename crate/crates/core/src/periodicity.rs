//! Threshold search that makes the remaining motifs as equal as possible.

use crate::field::rz;
use crate::math;
use crate::motif::FeatureType;
use crate::profile::Profile;
use crate::segmentation::{build_motifs, detect_extrema, Pruner, PruningType};

/// Initial quality a candidate must exceed.
pub const MIN_QUALITY: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalThreshold {
    pub threshold: f64,
    /// `mean / std` of the attributes at the chosen threshold; NaN when the
    /// default was kept.
    pub quality: f64,
    /// No candidate beat [`MIN_QUALITY`], so the default threshold is used.
    pub used_default: bool,
    /// Fewer than four motifs before pruning.
    pub too_few_motifs: bool,
}

/// Starting threshold: 5 % of Rz for `Wolfprune`, 5 % of the evaluation
/// length for `Width`, zero otherwise.
pub fn default_threshold(profile: &Profile, pruning: PruningType) -> f64 {
    match pruning {
        PruningType::Wolfprune => 0.05 * rz(profile),
        PruningType::Width => 0.05 * profile.evaluation_length(),
        PruningType::VolS | PruningType::DevLength => 0.0,
        PruningType::None => f64::NAN,
    }
}

/// Quality of an attribute vector: mean over sample standard deviation,
/// infinite for identical values.
pub fn quality(attr: &[f64]) -> f64 {
    let std = math::std_dev(attr);
    if std == 0.0 {
        f64::INFINITY
    } else {
        math::mean(attr) / std
    }
}

/// Prunes the unpruned segmentation one motif at a time down to three
/// motifs and keeps the smallest attribute of the state with the best
/// `mean / std` ratio as threshold.
pub fn optimal_periodicity(
    profile: &Profile,
    feature_type: FeatureType,
    pruning: PruningType,
) -> OptimalThreshold {
    let default = default_threshold(profile, pruning);
    let mut out = OptimalThreshold {
        threshold: default,
        quality: f64::NAN,
        used_default: true,
        too_few_motifs: false,
    };
    let set = build_motifs(profile, &detect_extrema(profile, feature_type));
    if set.len() < 4 {
        out.too_few_motifs = true;
        return out;
    }
    let Some(mut pruner) = Pruner::new(profile, set, pruning) else {
        return out;
    };
    let mut best = MIN_QUALITY;
    while pruner.motifs().len() > 3 {
        let attr = pruner.attributes();
        let q = quality(attr);
        if q > best {
            best = q;
            out.threshold = attr.iter().copied().fold(f64::INFINITY, f64::min);
            out.quality = q;
            out.used_default = false;
        }
        pruner.step();
    }
    out
}
