//! Feature parameters: significance, attributes and statistics on top of a
//! segmentation, driven by an [`FcRequest`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::attributes::{curvature_window_fits, feature_attribute, AttributeType};
use crate::fc::{FcParseError, FcRequest, FcSpec, Threshold};
use crate::motif::{FeatureType, MotifSet};
use crate::periodicity::{optimal_periodicity, OptimalThreshold};
use crate::profile::Profile;
use crate::segmentation::{watershed_segmentation, PruningType};
use crate::significance::{select_significant, Significance};
use crate::statistics::{attribute_statistics, Statistic};

pub use crate::statistics::FcValue;

/// Machine-readable notes on degenerate evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Warning {
    /// Segmentation produced no motif.
    EmptyMotifs,
    /// No motif survived the significance selection.
    NoSignificant,
    /// Some pits are too close to a profile end for the curvature window.
    CurvatureWindow,
    /// The threshold search had fewer than four motifs and fell back to
    /// the default threshold.
    OptTooFewMotifs,
}

impl Warning {
    pub fn code(self) -> &'static str {
        match self {
            Warning::EmptyMotifs => "EMPTY_MOTIFS",
            Warning::NoSignificant => "NO_SIGNIFICANT",
            Warning::CurvatureWindow => "CURVATURE_WINDOW",
            Warning::OptTooFewMotifs => "OPT_TOO_FEW_MOTIFS",
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// What was evaluated, with every threshold resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    /// Attribute of each significant motif; `[NaN]` on a degenerate
    /// evaluation.
    pub attr: Vec<f64>,
    pub feature_type: FeatureType,
    pub pruning: PruningType,
    /// NaN without pruning.
    pub threshold: f64,
    pub significance: Significance,
    pub attribute: AttributeType,
    pub statistic: Statistic,
    /// Set when the threshold came from the periodicity search.
    pub optimal: Option<OptimalThreshold>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FcResult {
    pub value: FcValue,
    pub meta: Meta,
    pub warnings: Vec<Warning>,
}

impl FcResult {
    pub fn scalar(&self) -> Option<f64> {
        self.value.scalar()
    }
}

/// Result of a full characterization together with the final motifs.
#[derive(Debug, Clone, PartialEq)]
pub struct Characterization {
    pub result: FcResult,
    pub motifs: MotifSet,
}

/// Steps 4 to 6 on an existing segmentation. The returned motifs carry the
/// significance flags. `meta.pruning` and `meta.threshold` are left at
/// `None`/NaN.
pub fn feature_parameter(
    profile: &Profile,
    motifs: MotifSet,
    significance: Significance,
    attribute: AttributeType,
    statistic: Statistic,
) -> Characterization {
    let mut meta = Meta {
        attr: vec![f64::NAN],
        feature_type: motifs.feature_type,
        pruning: PruningType::None,
        threshold: f64::NAN,
        significance,
        attribute,
        statistic,
        optimal: None,
    };
    let degenerate = |meta: Meta, motifs: MotifSet, warning: Warning| Characterization {
        result: FcResult {
            value: FcValue::nan(),
            meta,
            warnings: vec![warning],
        },
        motifs,
    };
    if motifs.is_empty() {
        return degenerate(meta, motifs, Warning::EmptyMotifs);
    }
    let motifs = select_significant(profile, motifs, significance);
    if motifs.significant_count() == 0 {
        return degenerate(meta, motifs, Warning::NoSignificant);
    }

    let mut warnings = Vec::new();
    if attribute == AttributeType::Curvature
        && motifs
            .iter()
            .any(|m| m.significant && !curvature_window_fits(profile, m.pit))
    {
        warnings.push(Warning::CurvatureWindow);
    }
    meta.attr = feature_attribute(profile, &motifs.motifs, attribute);
    let value = attribute_statistics(&meta.attr, statistic, profile);
    Characterization {
        result: FcResult {
            value,
            meta,
            warnings,
        },
        motifs,
    }
}

/// Segments `profile` and evaluates `request`. An `opt` threshold is
/// replaced by the result of [`optimal_periodicity`].
pub fn characterize(profile: &Profile, request: &FcRequest) -> Characterization {
    let mut optimal = None;
    let threshold = match request.threshold {
        Threshold::Opt if request.pruning != PruningType::None => {
            let opt = optimal_periodicity(profile, request.feature_type, request.pruning);
            optimal = Some(opt);
            opt.threshold
        }
        other => other.value(),
    };
    let motifs = watershed_segmentation(profile, request.feature_type, request.pruning, threshold);
    let mut out = feature_parameter(
        profile,
        motifs,
        request.significance,
        request.attribute,
        request.statistic,
    );
    out.result.meta.pruning = request.pruning;
    out.result.meta.threshold = threshold;
    out.result.meta.optimal = optimal;
    if optimal.is_some_and(|o| o.too_few_motifs) {
        out.result.warnings.insert(0, Warning::OptTooFewMotifs);
    }
    out
}

/// Parses `spec` (case-sensitive) and evaluates it on `profile`.
pub fn feature_characterization(
    profile: &Profile,
    spec: &str,
) -> Result<Characterization, FcParseError> {
    let request = FcSpec::parse(spec)?.resolve(profile);
    Ok(characterize(profile, &request))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine(n: usize, dx: f64, wavelength: f64) -> Profile {
        let z = (0..n)
            .map(|k| libm::sin(2.0 * core::f64::consts::PI * k as f64 * dx / wavelength))
            .collect();
        Profile::new(z, dx).unwrap()
    }

    #[test]
    fn empty_motifs_warn() {
        let p = Profile::new(vec![0.0, 1.0, 2.0, 3.0], 1.0).unwrap();
        let out = feature_characterization(&p, "FC;D;None;All;HDh;Mean").unwrap();
        assert!(out.result.value.is_nan());
        assert_eq!(out.result.warnings, vec![Warning::EmptyMotifs]);
        assert_eq!(out.result.meta.attr.len(), 1);
        assert!(out.result.meta.attr[0].is_nan());
    }

    #[test]
    fn no_significant_warns() {
        let p = sine(2000, 0.5, 100.0);
        let out = feature_characterization(&p, "FC;D;None;Top 0;HDh;Mean").unwrap();
        assert!(out.result.value.is_nan());
        assert_eq!(out.result.warnings, vec![Warning::NoSignificant]);
        assert_eq!(out.motifs.significant_count(), 0);
    }

    #[test]
    fn sine_heights_and_counts() {
        let p = sine(2400, 0.5, 100.0);
        let out = feature_characterization(&p, "FC;D;Wolfprune 5 %;All;HDh;Mean").unwrap();
        assert!((out.result.scalar().unwrap() - 2.0).abs() < 1e-9);
        assert!(out.result.warnings.is_empty());
        assert_eq!(out.result.meta.threshold, 0.05 * crate::field::rz(&p));

        let out = feature_characterization(&p, "FC;P;None;All;Count;Sum").unwrap();
        assert_eq!(out.result.scalar(), Some(out.motifs.len() as f64));
    }

    #[test]
    fn curvature_window_warning() {
        // the pit at sample 3 is too close to the start
        let z = vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 2.0, 3.0, 4.0];
        let p = Profile::new(z, 1.0).unwrap();
        let out = feature_characterization(&p, "FC;D;None;All;Curvature;Max").unwrap();
        assert!(out.result.value.is_nan());
        assert_eq!(out.result.warnings, vec![Warning::CurvatureWindow]);
    }

    #[test]
    fn opt_threshold_is_recorded() {
        let p = sine(240, 0.5, 100.0);
        let out = feature_characterization(&p, "FC;D;Wolfprune opt;All;HDh;Mean").unwrap();
        let opt = out.result.meta.optimal.unwrap();
        assert!(opt.too_few_motifs);
        assert_eq!(out.result.meta.threshold, opt.threshold);
        assert_eq!(out.result.warnings[0], Warning::OptTooFewMotifs);
    }
}
