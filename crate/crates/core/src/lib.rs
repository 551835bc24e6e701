//! Watershed segmentation and feature characterization of surface profiles.
//!
//! A [`Profile`] is an equidistantly sampled ordinate vector (µm) with its
//! sampling interval. Segmentation splits it into dales (or hills, by
//! mirroring) and optionally prunes under-threshold motifs. Feature
//! parameters are then derived in three steps: significance selection,
//! attribute evaluation and attribute statistics. The whole pipeline can be
//! driven by a feature characterization string such as
//! `FC;D;Wolfprune 5 %;All;HDh;Mean`:
//!
//! ```
//! use fcprofile::{feature_characterization, Profile};
//!
//! let z: Vec<f64> = (0..8000)
//!     .map(|k| (2.0 * core::f64::consts::PI * k as f64 * 0.5 / 1200.0).sin())
//!     .collect();
//! let profile = Profile::new(z, 0.5).unwrap();
//! let out = feature_characterization(&profile, "FC;D;None;All;HDh;Mean").unwrap();
//! assert!((out.result.scalar().unwrap() - 2.0).abs() < 1e-12);
//! ```
//!
//! All positions stored in motifs are 1-based interpolated sample indices,
//! so `x = (i - 1) * dx`. Plateau extrema and height intersections may fall
//! between samples.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod math;

pub mod attributes;
pub mod characterize;
pub mod fc;
pub mod field;
pub mod motif;
pub mod named;
pub mod periodicity;
pub mod profile;
pub mod segmentation;
pub mod significance;
pub mod statistics;

pub use attributes::{curvature, feature_attribute, hdlf, hdvf, motif_attribute, AttributeType};
pub use characterize::{
    characterize, feature_characterization, feature_parameter, Characterization, FcResult,
    FcValue, Meta, Warning,
};
pub use fc::{
    parse_fc, FcField, FcParseError, FcRequest, FcSpec, ParseOptions, Quantity, SignificanceKind,
    Threshold, ThresholdSpec,
};
pub use field::{rcm, rz};
pub use motif::{FeatureType, Motif, MotifSet};
pub use named::{named_parameter, NamedParameter};
pub use periodicity::{default_threshold, optimal_periodicity, OptimalThreshold};
pub use profile::{Profile, ProfileError};
pub use segmentation::{
    build_motifs, detect_extrema, find, get_ilp_ihp, height_intersections, prune,
    watershed_segmentation, ExtremaIndices, MergeCase, Pruner, PruningType,
};
pub use significance::{select_significant, Significance};
pub use statistics::{attribute_statistics, Histogram, Statistic};
