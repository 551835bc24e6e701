use alloc::vec::Vec;
use core::fmt;

use crate::attributes::{motif_attribute, orientation, AttributeType};
use crate::motif::MotifSet;
use crate::profile::Profile;

/// Resolved significance rule. Heights are absolute (µm); counts are motif
/// counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Significance {
    All,
    /// Dales whose low peak does not rise above the height.
    Open(f64),
    /// Dales whose pit lies at or below the height and whose low peak lies
    /// at or above it.
    Closed(f64),
    /// The motifs with the largest pit depths / peak heights.
    Top(usize),
    Bot(usize),
}

impl Significance {
    pub fn token(&self) -> &'static str {
        match self {
            Significance::All => "All",
            Significance::Open(_) => "Open",
            Significance::Closed(_) => "Closed",
            Significance::Top(_) => "Top",
            Significance::Bot(_) => "Bot",
        }
    }

    /// Nesting index as a number; NaN for `All`.
    pub fn nesting_index(&self) -> f64 {
        match *self {
            Significance::All => f64::NAN,
            Significance::Open(h) | Significance::Closed(h) => h,
            Significance::Top(n) | Significance::Bot(n) => n as f64,
        }
    }
}

impl fmt::Display for Significance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Significance::All => f.write_str("All"),
            Significance::Open(h) | Significance::Closed(h) => write!(f, "{} {h}", self.token()),
            Significance::Top(n) | Significance::Bot(n) => write!(f, "{} {n}", self.token()),
        }
    }
}

/// Step 4: clears the significance flag of every motif the rule rejects.
/// Flags already cleared stay cleared.
pub fn select_significant(profile: &Profile, mut set: MotifSet, rule: Significance) -> MotifSet {
    let Some(first) = set.motifs.first() else {
        return set;
    };
    let fti = orientation(profile, first);
    let rejected: Vec<usize> = match rule {
        Significance::All => Vec::new(),
        Significance::Top(n) | Significance::Bot(n) => {
            let keep = n.min(set.len());
            let heights: Vec<f64> = set
                .motifs
                .iter()
                .map(|m| motif_attribute(profile, m, AttributeType::Pvh))
                .collect();
            let mut order: Vec<usize> = (0..set.len()).collect();
            order.sort_by(|&a, &b| heights[b].total_cmp(&heights[a]));
            order.split_off(keep)
        }
        Significance::Open(level) => set
            .motifs
            .iter()
            .enumerate()
            .filter(|(_, m)| fti * profile.height_at(m.low_peak) > fti * level)
            .map(|(i, _)| i)
            .collect(),
        Significance::Closed(level) => set
            .motifs
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                fti * profile.height_at(m.low_peak) < fti * level
                    || fti * profile.height_at(m.pit) > fti * level
            })
            .map(|(i, _)| i)
            .collect(),
    };
    for i in rejected {
        set.motifs[i].significant = false;
    }
    set
}
