//! JSON documents shared by the CLI and the HTTP service. Non-finite
//! numbers serialize as `null`.

use fcprofile::{
    characterize, Characterization, FcParseError, FcSpec, FcValue, FeatureType, Motif,
    MotifSet, OptimalThreshold, ParseOptions, Profile, Significance,
};
use serde::Serialize;

/// Canonical motif shape with 1-based interpolated indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MotifJson {
    pub iv: f64,
    pub ilp: f64,
    pub ihp: f64,
    pub ihi: Vec<f64>,
    pub sig: u8,
}

impl From<&Motif> for MotifJson {
    fn from(m: &Motif) -> Self {
        MotifJson {
            iv: m.pit,
            ilp: m.low_peak,
            ihp: m.high_peak,
            ihi: m.intersections.clone(),
            sig: m.significant as u8,
        }
    }
}

pub fn motifs_json(set: &MotifSet) -> Vec<MotifJson> {
    set.iter().map(MotifJson::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ValueJson {
    Scalar(f64),
    Histogram { edges: Vec<f64>, counts: Vec<usize> },
}

impl From<&FcValue> for ValueJson {
    fn from(v: &FcValue) -> Self {
        match v {
            FcValue::Scalar(v) => ValueJson::Scalar(*v),
            FcValue::Histogram(h) => ValueJson::Histogram {
                edges: h.edges.clone(),
                counts: h.counts.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalJson {
    pub threshold: f64,
    pub quality: f64,
    pub used_default: bool,
    pub too_few_motifs: bool,
}

impl From<&OptimalThreshold> for OptimalJson {
    fn from(o: &OptimalThreshold) -> Self {
        OptimalJson {
            threshold: o.threshold,
            quality: o.quality,
            used_default: o.used_default,
            too_few_motifs: o.too_few_motifs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetaJson {
    /// The evaluated specification with every threshold resolved.
    pub fc: String,
    pub attr: Vec<f64>,
    #[serde(rename = "FT")]
    pub feature_type: &'static str,
    #[serde(rename = "PT")]
    pub pruning: &'static str,
    #[serde(rename = "TH")]
    pub threshold: f64,
    #[serde(rename = "Fsig")]
    pub significance: &'static str,
    #[serde(rename = "NIsig")]
    pub nesting_index: f64,
    #[serde(rename = "AT")]
    pub attribute: &'static str,
    #[serde(rename = "Astats")]
    pub statistic: &'static str,
    #[serde(rename = "vstats")]
    pub statistic_limit: f64,
    pub optimal: Option<OptimalJson>,
}

/// Chart geometry of one motif as `[x, z]` points in µm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MotifOverlay {
    pub pit: [f64; 2],
    pub low_peak: [f64; 2],
    pub high_peak: [f64; 2],
    pub intersections: Vec<[f64; 2]>,
    /// Height of the low peak.
    pub level: f64,
    /// Closed polygon of the region between the level and the profile on
    /// the motif side of the level, from the low peak to the last
    /// intersection. Its area is the local volume times the evaluation
    /// length.
    pub water: Vec<[f64; 2]>,
    pub sig: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Overlays {
    pub motifs: Vec<MotifOverlay>,
    /// Height of the Open/Closed significance line; `null` otherwise.
    pub significance_level: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterizeResponse {
    pub value: ValueJson,
    pub warnings: Vec<&'static str>,
    pub motifs: Vec<MotifJson>,
    pub meta: MetaJson,
    pub overlays: Overlays,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorJson {
    pub error: String,
    pub code: &'static str,
    /// Offending FC field, when the error comes from the specification.
    pub field: Option<&'static str>,
}

impl ErrorJson {
    pub fn new(code: &'static str, error: impl ToString) -> Self {
        ErrorJson {
            error: error.to_string(),
            code,
            field: None,
        }
    }
}

impl From<&FcParseError> for ErrorJson {
    fn from(e: &FcParseError) -> Self {
        let code = match e {
            FcParseError::FieldCount { .. } => "FIELD_COUNT",
            FcParseError::UnknownToken { .. } => "UNKNOWN_TOKEN",
            FcParseError::MissingValue { .. } => "MISSING_VALUE",
            FcParseError::UnexpectedValue { .. } => "UNEXPECTED_VALUE",
            FcParseError::InvalidNumber { .. } => "INVALID_NUMBER",
            FcParseError::PercentNotAllowed { .. } => "PERCENT_NOT_ALLOWED",
            FcParseError::OutOfRange { .. } => "OUT_OF_RANGE",
        };
        ErrorJson {
            error: e.to_string(),
            code,
            field: Some(e.field().name()),
        }
    }
}

/// Linear interpolation of the profile at a 1-based fractional index.
fn interpolate(profile: &Profile, index: f64) -> f64 {
    let z = profile.z();
    let lo = (index.floor() as usize).clamp(1, z.len() - 1);
    let t = index - lo as f64;
    if t == 0.0 {
        z[lo - 1]
    } else {
        z[lo - 1] * (1.0 - t) + z[lo] * t
    }
}

fn water_polygon(profile: &Profile, m: &Motif, level: f64, hill: bool) -> Vec<[f64; 2]> {
    let Some(&end) = m.intersections.last() else {
        return Vec::new();
    };
    let (from, to) = if m.low_peak < end { (m.low_peak, end) } else { (end, m.low_peak) };
    let mut knots: Vec<f64> = m.intersections.clone();
    knots.push(m.low_peak);
    let mut k = from.floor() + 1.0;
    while k < to {
        knots.push(k);
        k += 1.0;
    }
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let clip = |z: f64| if hill { z.max(level) } else { z.min(level) };
    let mut polygon: Vec<[f64; 2]> = knots
        .iter()
        .map(|&i| {
            let z = if i == from || i == to || m.intersections.contains(&i) {
                level
            } else {
                clip(interpolate(profile, i))
            };
            [profile.x_at(i), z]
        })
        .collect();
    polygon.push(polygon[0]);
    polygon
}

fn overlay(profile: &Profile, m: &Motif, hill: bool) -> MotifOverlay {
    let point = |i: f64| [profile.x_at(i), profile.height_at(i)];
    let level = profile.height_at(m.low_peak);
    MotifOverlay {
        pit: point(m.pit),
        low_peak: point(m.low_peak),
        high_peak: point(m.high_peak),
        intersections: m.intersections.iter().map(|&i| [profile.x_at(i), level]).collect(),
        level,
        water: water_polygon(profile, m, level, hill),
        sig: m.significant as u8,
    }
}

pub fn overlays(profile: &Profile, out: &Characterization) -> Overlays {
    let hill = matches!(out.motifs.feature_type, FeatureType::Hill | FeatureType::Peak);
    Overlays {
        motifs: out.motifs.iter().map(|m| overlay(profile, m, hill)).collect(),
        significance_level: match out.result.meta.significance {
            Significance::Open(v) | Significance::Closed(v) => v,
            _ => f64::NAN,
        },
    }
}

pub fn response(profile: &Profile, out: &Characterization) -> CharacterizeResponse {
    let meta = &out.result.meta;
    let request = fcprofile::FcRequest {
        feature_type: meta.feature_type,
        pruning: meta.pruning,
        threshold: match meta.pruning {
            fcprofile::PruningType::None => fcprofile::Threshold::None,
            _ => fcprofile::Threshold::Value(meta.threshold),
        },
        significance: meta.significance,
        attribute: meta.attribute,
        statistic: meta.statistic,
    };
    CharacterizeResponse {
        value: ValueJson::from(&out.result.value),
        warnings: out.result.warnings.iter().map(|w| w.code()).collect(),
        motifs: motifs_json(&out.motifs),
        meta: MetaJson {
            fc: request.to_string(),
            attr: meta.attr.clone(),
            feature_type: meta.feature_type.token(),
            pruning: meta.pruning.token(),
            threshold: meta.threshold,
            significance: meta.significance.token(),
            nesting_index: meta.significance.nesting_index(),
            attribute: meta.attribute.token(),
            statistic: meta.statistic.token(),
            statistic_limit: meta.statistic.limit().unwrap_or(f64::NAN),
            optimal: meta.optimal.as_ref().map(OptimalJson::from),
        },
        overlays: overlays(profile, out),
    }
}

/// Parses and evaluates a specification and builds the report.
pub fn evaluate(
    profile: &Profile,
    spec: &str,
    options: ParseOptions,
) -> Result<(Characterization, CharacterizeResponse), FcParseError> {
    let request = FcSpec::parse_with(spec, options)?.resolve(profile);
    let out = characterize(profile, &request);
    let report = response(profile, &out);
    Ok((out, report))
}
