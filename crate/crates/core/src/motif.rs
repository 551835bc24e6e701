use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// What the segmentation looks for. Dales and pits segment the profile as
/// is; hills and peaks segment the mirrored profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureType {
    /// `D`
    Dale,
    /// `V`
    Pit,
    /// `H`
    Hill,
    /// `P`
    Peak,
}

impl FeatureType {
    pub const ALL: [FeatureType; 4] = [
        FeatureType::Dale,
        FeatureType::Pit,
        FeatureType::Hill,
        FeatureType::Peak,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FeatureType::Dale => "D",
            FeatureType::Pit => "V",
            FeatureType::Hill => "H",
            FeatureType::Peak => "P",
        }
    }

    /// True for `H` and `P`, which are evaluated on the mirrored profile.
    pub fn is_mirrored(self) -> bool {
        matches!(self, FeatureType::Hill | FeatureType::Peak)
    }
}

impl fmt::Display for FeatureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FeatureType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        FeatureType::ALL
            .into_iter()
            .find(|ft| ft.token() == s)
            .ok_or(())
    }
}

/// One dale (or hill). All positions are 1-based interpolated indices into
/// the original, un-mirrored profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Motif {
    /// Pit of a dale (peak of a hill).
    pub pit: f64,
    /// Lower of the two bounding peaks.
    pub low_peak: f64,
    /// Higher of the two bounding peaks.
    pub high_peak: f64,
    /// Crossings of the low-peak height level, ordered from the low peak
    /// toward the high peak.
    pub intersections: Vec<f64>,
    pub significant: bool,
}

impl Motif {
    /// +1 when the high peak lies right of the low peak, -1 otherwise.
    pub fn direction(&self) -> f64 {
        if self.high_peak > self.low_peak {
            1.0
        } else {
            -1.0
        }
    }

    /// Bounding peaks ordered left to right.
    pub fn bounds(&self) -> (f64, f64) {
        if self.low_peak < self.high_peak {
            (self.low_peak, self.high_peak)
        } else {
            (self.high_peak, self.low_peak)
        }
    }
}

/// Motifs ordered left to right, with the feature type they were segmented
/// under.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifSet {
    pub feature_type: FeatureType,
    pub motifs: Vec<Motif>,
}

impl MotifSet {
    pub fn new(feature_type: FeatureType, motifs: Vec<Motif>) -> Self {
        Self {
            feature_type,
            motifs,
        }
    }

    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Motif> {
        self.motifs.iter()
    }

    pub fn significant_count(&self) -> usize {
        self.motifs.iter().filter(|m| m.significant).count()
    }
}

impl<'a> IntoIterator for &'a MotifSet {
    type Item = &'a Motif;
    type IntoIter = core::slice::Iter<'a, Motif>;

    fn into_iter(self) -> Self::IntoIter {
        self.motifs.iter()
    }
}
