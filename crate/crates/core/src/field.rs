//! Field parameters needed to resolve percentage thresholds.

use alloc::vec::Vec;

use crate::math;
use crate::profile::Profile;

/// Maximum height: mean peak-to-valley height of five equal sections. Falls
/// back to the global range when a section would hold fewer than five
/// samples.
pub fn rz(profile: &Profile) -> f64 {
    let z = profile.z();
    let n = z.len();
    if n < 25 {
        return profile.max() - profile.min();
    }
    let range = |s: &[f64]| {
        let hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = s.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    };
    (0..5).map(|k| range(&z[k * n / 5..(k + 1) * n / 5])).sum::<f64>() / 5.0
}

/// Inverse material ratio: the (non-positive) height offset from `max(z)`
/// at which at least the fraction `p` of all samples lies at or above the
/// cutting level. NaN when `p` is outside `[0, 1]`.
pub fn rcm(profile: &Profile, p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    let n = profile.len();
    let count = (math::ceil(p * n as f64 - 1e-9).max(0.0) as usize).min(n);
    if count == 0 {
        return 0.0;
    }
    let mut sorted: Vec<f64> = profile.z().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted[count - 1] - sorted[0]
}
