//! Named feature parameters and their FC definitions.

use core::fmt;
use core::str::FromStr;

use crate::characterize::feature_characterization;
use crate::profile::Profile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedParameter {
    /// Density of peaks.
    Rpd,
    /// Density of pits.
    Rvd,
    /// Mean peak curvature.
    Rmpc,
    /// Mean pit curvature.
    Rmvc,
    /// Five-point peak height.
    R5p,
    /// Five-point pit depth.
    R5v,
    /// Ten-point height, `R5p + R5v`.
    R10z,
}

impl NamedParameter {
    pub const ALL: [NamedParameter; 7] = [
        NamedParameter::Rpd,
        NamedParameter::Rvd,
        NamedParameter::Rmpc,
        NamedParameter::Rmvc,
        NamedParameter::R5p,
        NamedParameter::R5v,
        NamedParameter::R10z,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedParameter::Rpd => "Rpd",
            NamedParameter::Rvd => "Rvd",
            NamedParameter::Rmpc => "Rmpc",
            NamedParameter::Rmvc => "Rmvc",
            NamedParameter::R5p => "R5p",
            NamedParameter::R5v => "R5v",
            NamedParameter::R10z => "R10z",
        }
    }

    /// FC definition; `None` for the composite `R10z`.
    pub fn fc(self) -> Option<&'static str> {
        Some(match self {
            NamedParameter::Rpd => "FC;P;Wolfprune 5 %;All;Count;Density",
            NamedParameter::Rvd => "FC;V;Wolfprune 5 %;All;Count;Density",
            NamedParameter::Rmpc => "FC;P;Wolfprune 5 %;All;Curvature;Mean",
            NamedParameter::Rmvc => "FC;V;Wolfprune 5 %;All;Curvature;Mean",
            NamedParameter::R5p => "FC;P;Wolfprune 5 %;Top 5;PVh;Mean",
            NamedParameter::R5v => "FC;V;Wolfprune 5 %;Top 5;PVh;Mean",
            NamedParameter::R10z => return None,
        })
    }
}

impl fmt::Display for NamedParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts the `R` names and their `P`/`W` profile-type aliases.
impl FromStr for NamedParameter {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let rest = s
            .strip_prefix('R')
            .or_else(|| s.strip_prefix('P'))
            .or_else(|| s.strip_prefix('W'))
            .ok_or(())?;
        NamedParameter::ALL
            .into_iter()
            .find(|p| &p.name()[1..] == rest)
            .ok_or(())
    }
}

/// Evaluates a named parameter. NaN on degenerate profiles.
pub fn named_parameter(profile: &Profile, name: NamedParameter) -> f64 {
    match name.fc() {
        Some(spec) => feature_characterization(profile, spec)
            .expect("named definitions parse")
            .result
            .scalar()
            .unwrap_or(f64::NAN),
        None => {
            named_parameter(profile, NamedParameter::R5p)
                + named_parameter(profile, NamedParameter::R5v)
        }
    }
}
