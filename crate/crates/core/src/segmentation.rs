//! Watershed segmentation of a profile into dales (or hills).
//!
//! Three steps: locate all peaks and pits (plateaus collapse to their
//! center), build one motif per pit enclosed by two peaks, and prune motifs
//! whose attribute is below a threshold by merging each into the neighbor it
//! would overflow into.
//!
//! Hills are segmented as dales of the mirrored profile. Every returned
//! index refers to the original profile, so heights are recovered by
//! reading the un-mirrored ordinates.

use alloc::borrow::Cow;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::attributes::{motif_attribute, AttributeType};
use crate::math;
use crate::motif::{FeatureType, Motif, MotifSet};
use crate::profile::Profile;

/// Attribute used to rank motifs during pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PruningType {
    None,
    /// Dale local depth.
    Wolfprune,
    /// Dale local width.
    Width,
    /// Dale local volume.
    VolS,
    /// Dale local developed length.
    DevLength,
}

impl PruningType {
    pub const ALL: [PruningType; 5] = [
        PruningType::None,
        PruningType::Wolfprune,
        PruningType::Width,
        PruningType::VolS,
        PruningType::DevLength,
    ];

    pub fn token(self) -> &'static str {
        match self {
            PruningType::None => "None",
            PruningType::Wolfprune => "Wolfprune",
            PruningType::Width => "Width",
            PruningType::VolS => "VolS",
            PruningType::DevLength => "DevLength",
        }
    }

    /// The attribute a pruning type ranks by, `None` for no pruning.
    pub fn attribute(self) -> Option<AttributeType> {
        match self {
            PruningType::None => None,
            PruningType::Wolfprune => Some(AttributeType::Hdh),
            PruningType::Width => Some(AttributeType::Hdw),
            PruningType::VolS => Some(AttributeType::Hdv),
            PruningType::DevLength => Some(AttributeType::Hdl),
        }
    }
}

impl fmt::Display for PruningType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for PruningType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        PruningType::ALL
            .into_iter()
            .find(|pt| pt.token() == s)
            .ok_or(())
    }
}

/// Interpolated 1-based indices of all peaks and pits, ascending. Peaks and
/// pits alternate.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremaIndices {
    pub feature_type: FeatureType,
    pub peaks: Vec<f64>,
    pub pits: Vec<f64>,
}

/// 1-based indices of the non-zero entries of `values`; only the first one
/// when `first_only` is set.
pub fn find<T: Default + PartialEq>(values: &[T], first_only: bool) -> Vec<usize> {
    let zero = T::default();
    let hits = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != zero)
        .map(|(i, _)| i + 1);
    if first_only {
        hits.take(1).collect()
    } else {
        hits.collect()
    }
}

pub(crate) fn working_profile(profile: &Profile, feature_type: FeatureType) -> Cow<'_, Profile> {
    if feature_type.is_mirrored() {
        Cow::Owned(profile.mirrored())
    } else {
        Cow::Borrowed(profile)
    }
}

/// Step 1: peaks and pits of the profile (mirrored for `H`/`P`).
pub fn detect_extrema(profile: &Profile, feature_type: FeatureType) -> ExtremaIndices {
    let work = working_profile(profile, feature_type);
    let (peaks, pits) = extrema_of(work.z());
    ExtremaIndices {
        feature_type,
        peaks,
        pits,
    }
}

fn extrema_of(z: &[f64]) -> (Vec<f64>, Vec<f64>) {
    // 1-based start index of every run of equal ordinates
    let mut starts = vec![1usize];
    starts.extend((1..z.len()).filter(|&i| z[i] != z[i - 1]).map(|i| i + 1));
    starts.push(z.len() + 1);

    let runs = starts.len() - 1;
    let mut peaks = Vec::new();
    let mut pits = Vec::new();
    for k in 1..runs.saturating_sub(1) {
        let here = z[starts[k] - 1];
        let rising_in = here > z[starts[k - 1] - 1];
        let rising_out = z[starts[k + 1] - 1] > here;
        let len = starts[k + 1] - starts[k];
        let center = starts[k] as f64 + (len as f64 - 1.0) / 2.0;
        match (rising_in, rising_out) {
            (true, false) => peaks.push(center),
            (false, true) => pits.push(center),
            _ => {}
        }
    }
    (peaks, pits)
}

/// Orders two peak indices as `(low, high)` by their height; on a tie the
/// first argument is the low peak.
pub fn get_ilp_ihp(profile: &Profile, first: f64, second: f64) -> (f64, f64) {
    if profile.height_at(second) < profile.height_at(first) {
        (second, first)
    } else {
        (first, second)
    }
}

/// Crossings of the low-peak height level between the low and the high
/// peak, ordered from the low peak. The scan starts at the first sample past
/// the low-peak plateau so the plateau edge is never reported.
pub fn height_intersections(profile: &Profile, low_peak: f64, high_peak: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let dir: isize = if high_peak > low_peak {
        1
    } else if high_peak < low_peak {
        -1
    } else {
        return out;
    };
    let lp = math::round(low_peak) as isize;
    let hp = math::round(high_peak) as isize;
    let at = |i: isize| profile.sample(i as usize);
    let level = at(lp);

    let mut j = lp;
    while at(j) == level {
        if j == hp {
            return out;
        }
        j += dir;
    }
    while j != hp {
        let here = at(j);
        let next = at(j + dir);
        if (here < level && next >= level) || (here >= level && next < level) {
            out.push(j as f64 + dir as f64 * (level - here) / (next - here));
        }
        j += dir;
    }
    out
}

/// Step 2: one motif for every pit enclosed by two peaks.
pub fn build_motifs(profile: &Profile, extrema: &ExtremaIndices) -> MotifSet {
    let work = working_profile(profile, extrema.feature_type);
    MotifSet::new(extrema.feature_type, motifs_from(&work, extrema))
}

fn motifs_from(work: &Profile, extrema: &ExtremaIndices) -> Vec<Motif> {
    let peaks = &extrema.peaks;
    if peaks.len() < 2 {
        return Vec::new();
    }
    let first = peaks[0];
    let last = peaks[peaks.len() - 1];
    let inner = extrema.pits.iter().filter(|&&v| v > first && v < last);
    inner
        .zip(peaks.windows(2))
        .map(|(&pit, pair)| {
            let (low_peak, high_peak) = get_ilp_ihp(work, pair[0], pair[1]);
            Motif {
                pit,
                low_peak,
                high_peak,
                intersections: height_intersections(work, low_peak, high_peak),
                significant: true,
            }
        })
        .collect()
}

/// How a pruned motif was absorbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeCase {
    /// Overflow toward a profile end; no neighbor is updated.
    EdgeOverflow,
    /// The neighbor shares the low peak; its peaks are re-ranked.
    SharedLowPeak { row: usize },
    /// The neighbor adopts the high peak and the removed pit stays above
    /// its water level.
    AdoptHighPeak { row: usize },
    /// The neighbor adopts the high peak and the removed pit lies below its
    /// water level, so the intersections are refreshed.
    SubmergedPit { row: usize },
}

/// Iterative minimal-motif pruning. Each [`step`](Pruner::step) removes the
/// motif with the smallest attribute (leftmost on ties) and merges it into
/// its overflow neighbor.
pub struct Pruner<'a> {
    work: Cow<'a, Profile>,
    feature_type: FeatureType,
    kind: AttributeType,
    motifs: Vec<Motif>,
    attr: Vec<f64>,
}

impl<'a> Pruner<'a> {
    /// `profile` is the original profile the set was segmented from.
    /// Returns `None` for [`PruningType::None`].
    pub fn new(profile: &'a Profile, set: MotifSet, pruning: PruningType) -> Option<Self> {
        let kind = pruning.attribute()?;
        let work = working_profile(profile, set.feature_type);
        let attr = set
            .motifs
            .iter()
            .map(|m| motif_attribute(&work, m, kind))
            .collect();
        Some(Self {
            work,
            feature_type: set.feature_type,
            kind,
            motifs: set.motifs,
            attr,
        })
    }

    pub fn motifs(&self) -> &[Motif] {
        &self.motifs
    }

    /// Current pruning attribute of every motif, row-aligned with
    /// [`motifs`](Pruner::motifs).
    pub fn attributes(&self) -> &[f64] {
        &self.attr
    }

    /// Row and value of the smallest attribute, leftmost on ties.
    pub fn min(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (row, &value) in self.attr.iter().enumerate() {
            match best {
                Some((_, b)) if !(value < b) => {}
                _ => best = Some((row, value)),
            }
        }
        best
    }

    /// Removes the minimal motif and updates its neighbor.
    pub fn step(&mut self) -> Option<MergeCase> {
        let (row, _) = self.min()?;
        let removed = self.motifs.remove(row);
        self.attr.remove(row);

        let target = if removed.low_peak < removed.pit {
            row.checked_sub(1)
        } else {
            Some(row).filter(|&r| r < self.motifs.len())
        };
        let Some(u) = target else {
            return Some(MergeCase::EdgeOverflow);
        };

        let case = if self.motifs[u].low_peak == removed.low_peak {
            let (a, b) = ordered(self.motifs[u].high_peak, removed.high_peak);
            let (low_peak, high_peak) = get_ilp_ihp(&self.work, a, b);
            self.motifs[u].low_peak = low_peak;
            self.motifs[u].high_peak = high_peak;
            MergeCase::SharedLowPeak { row: u }
        } else {
            self.motifs[u].high_peak = removed.high_peak;
            if self.work.height_at(self.motifs[u].low_peak) <= self.work.height_at(removed.pit) {
                return Some(MergeCase::AdoptHighPeak { row: u });
            }
            MergeCase::SubmergedPit { row: u }
        };

        let merged = &mut self.motifs[u];
        merged.intersections = height_intersections(&self.work, merged.low_peak, merged.high_peak);
        self.attr[u] = motif_attribute(&self.work, merged, self.kind);
        Some(case)
    }

    /// Prunes while the smallest attribute is below `threshold`.
    pub fn run(&mut self, threshold: f64) {
        while matches!(self.min(), Some((_, m)) if m < threshold) {
            self.step();
        }
    }

    pub fn into_motif_set(self) -> MotifSet {
        MotifSet::new(self.feature_type, self.motifs)
    }
}

fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Step 3: prune `set` with threshold `threshold`. Returns the set
/// unchanged for [`PruningType::None`].
pub fn prune(profile: &Profile, set: MotifSet, pruning: PruningType, threshold: f64) -> MotifSet {
    if pruning == PruningType::None {
        return set;
    }
    let mut pruner = Pruner::new(profile, set, pruning).expect("pruning type has an attribute");
    pruner.run(threshold);
    pruner.into_motif_set()
}

/// Steps 1 to 3.
pub fn watershed_segmentation(
    profile: &Profile,
    feature_type: FeatureType,
    pruning: PruningType,
    threshold: f64,
) -> MotifSet {
    let extrema = detect_extrema(profile, feature_type);
    let set = build_motifs(profile, &extrema);
    prune(profile, set, pruning, threshold)
}
