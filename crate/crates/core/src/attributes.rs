//! Feature attributes of motifs.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::math;
use crate::motif::Motif;
use crate::profile::Profile;

/// Attribute evaluated per significant motif.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttributeType {
    /// Local height: low peak to pit (µm).
    Hdh,
    /// Local width: low peak to the farthest intersection (µm).
    Hdw,
    /// Local volume: enclosed area below the low-peak level over the
    /// evaluation length (ml/m², numerically µm).
    Hdv,
    /// Local developed length: path length from the low peak to the last
    /// intersection (µm).
    Hdl,
    /// Pit depth / peak height relative to the reference line (µm).
    Pvh,
    /// Curvature at the pit (1/µm), positive for genuine pits of dales and
    /// genuine peaks of hills.
    Curvature,
    /// One per motif.
    Count,
}

impl AttributeType {
    pub const ALL: [AttributeType; 7] = [
        AttributeType::Hdh,
        AttributeType::Hdw,
        AttributeType::Hdv,
        AttributeType::Hdl,
        AttributeType::Pvh,
        AttributeType::Curvature,
        AttributeType::Count,
    ];

    pub fn token(self) -> &'static str {
        match self {
            AttributeType::Hdh => "HDh",
            AttributeType::Hdw => "HDw",
            AttributeType::Hdv => "HDv",
            AttributeType::Hdl => "HDl",
            AttributeType::Pvh => "PVh",
            AttributeType::Curvature => "Curvature",
            AttributeType::Count => "Count",
        }
    }
}

impl fmt::Display for AttributeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for AttributeType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        AttributeType::ALL
            .into_iter()
            .find(|at| at.token() == s)
            .ok_or(())
    }
}

/// +1 for dales, -1 for hills, read from the heights of a motif.
pub(crate) fn orientation(profile: &Profile, motif: &Motif) -> f64 {
    math::sign(profile.height_at(motif.low_peak) - profile.height_at(motif.pit))
}

/// Attribute values of the significant motifs, in order. The orientation
/// (dale or hill) is taken from the first motif.
pub fn feature_attribute(profile: &Profile, motifs: &[Motif], kind: AttributeType) -> Vec<f64> {
    let Some(first) = motifs.first() else {
        return Vec::new();
    };
    let fti = orientation(profile, first);
    motifs
        .iter()
        .filter(|m| m.significant)
        .map(|m| attribute_value(profile, m, kind, fti))
        .collect()
}

/// Attribute of a single motif regardless of its significance flag.
pub fn motif_attribute(profile: &Profile, motif: &Motif, kind: AttributeType) -> f64 {
    attribute_value(profile, motif, kind, orientation(profile, motif))
}

fn attribute_value(profile: &Profile, motif: &Motif, kind: AttributeType, fti: f64) -> f64 {
    match kind {
        AttributeType::Hdh => {
            math::abs(profile.height_at(motif.low_peak) - profile.height_at(motif.pit))
        }
        AttributeType::Hdw => motif
            .intersections
            .iter()
            .map(|&hi| math::abs(profile.dx() * (hi - motif.low_peak)))
            .reduce(f64::max)
            .unwrap_or(f64::NAN),
        AttributeType::Hdv => hdvf(profile, motif),
        AttributeType::Hdl => hdlf(profile, motif),
        AttributeType::Pvh => -fti * profile.height_at(motif.pit),
        AttributeType::Curvature => fti * curvature(profile, motif.pit),
        AttributeType::Count => 1.0,
    }
}

/// Local volume: the area enclosed below the low-peak level, summed over
/// the partial areas delimited by consecutive intersection pairs and divided
/// by the evaluation length.
pub fn hdvf(profile: &Profile, motif: &Motif) -> f64 {
    let dx = profile.dx();
    let level = profile.height_at(motif.low_peak);
    let dir = motif.direction();

    let mut bounds = Vec::with_capacity(motif.intersections.len() + 1);
    bounds.push(motif.low_peak);
    bounds.extend_from_slice(&motif.intersections);

    let mut area = 0.0;
    for pair in bounds.chunks_exact(2) {
        let (start, end) = (pair[0], pair[1]);
        // integer samples strictly inside the partial area
        let first = math::abs(math::ceil(dir * start)) as isize;
        let last = math::abs(math::floor(dir * end)) as isize;
        let step = dir as isize;

        let mut partial = 0.0;
        let mut prev = (start * dx, 0.0);
        let mut push = |x: f64, y: f64| {
            partial += (x - prev.0) * (prev.1 + y) / 2.0;
            prev = (x, y);
        };
        if (last - first) * step >= 0 {
            let mut i = first;
            loop {
                push(i as f64 * dx, profile.sample(i as usize) - level);
                if i == last {
                    break;
                }
                i += step;
            }
        }
        push(end * dx, 0.0);
        area += math::abs(partial);
    }
    area / profile.evaluation_length()
}

/// Local developed length: polyline length from the low peak to the last
/// intersection. Made of the integer-sample path, the half-sample lead-in of
/// a plateau low peak and the closing segment to the interpolated crossing.
pub fn hdlf(profile: &Profile, motif: &Motif) -> f64 {
    let Some(&end) = motif.intersections.last() else {
        return f64::NAN;
    };
    let dx = profile.dx();
    let level = profile.height_at(motif.low_peak);
    let dir = motif.direction();
    let first = math::abs(math::ceil(dir * motif.low_peak)) as isize;
    let last = math::abs(math::floor(dir * end)) as isize;
    let step = dir as isize;

    let mut length = 0.0;
    if (last - first) * step > 0 {
        let mut i = first;
        while i != last {
            let dz = profile.sample((i + step) as usize) - profile.sample(i as usize);
            length += math::sqrt(dx * dx + dz * dz);
            i += step;
        }
    }
    length += math::frac(motif.low_peak) * dx;
    let run = (end - last as f64) * dx;
    let rise = level - profile.sample(last as usize);
    length + math::sqrt(run * run + rise * rise)
}

const STENCIL: [f64; 7] = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];

/// Second derivative of the degree-6 interpolating polynomial through the
/// seven samples centered on `index`. A plateau center between two samples
/// averages the two neighboring estimates. NaN when the window leaves the
/// profile.
pub fn curvature(profile: &Profile, index: f64) -> f64 {
    let lower = math::floor(index);
    if lower == index {
        stencil_at(profile, lower as usize)
    } else {
        let upper = math::ceil(index);
        (stencil_at(profile, lower as usize) + stencil_at(profile, upper as usize)) / 2.0
    }
}

fn stencil_at(profile: &Profile, i: usize) -> f64 {
    if i < 4 || i + 3 > profile.len() {
        return f64::NAN;
    }
    let dx = profile.dx();
    let window = &profile.z()[i - 4..i + 3];
    let sum: f64 = window.iter().zip(STENCIL).map(|(z, w)| z * w).sum();
    sum / (180.0 * dx * dx)
}

/// True when the curvature window of `index` fits inside the profile.
pub(crate) fn curvature_window_fits(profile: &Profile, index: f64) -> bool {
    let lower = math::floor(index) as usize;
    let upper = math::ceil(index) as usize;
    lower >= 4 && upper + 3 <= profile.len()
}
