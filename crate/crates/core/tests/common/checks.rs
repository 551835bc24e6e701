//! Invariants shared by the property tests and the acceptance run. Each
//! check returns a description of the first violation.

use fcprofile::{
    attribute_statistics, build_motifs, detect_extrema, motif_attribute, named_parameter, prune,
    watershed_segmentation, FcValue, FeatureType, MotifSet, NamedParameter, Profile, PruningType,
    Statistic,
};

use super::flooding_wolf;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn profile(z: &[f64], dx: f64) -> Profile {
    Profile::new(z.to_vec(), dx).unwrap()
}

/// Attribute each motif was pruned by, on the profile the set was built on.
fn pruning_attrs(p: &Profile, set: &MotifSet, pruning: PruningType) -> Vec<f64> {
    let work = if set.feature_type.is_mirrored() {
        p.mirrored()
    } else {
        p.clone()
    };
    let kind = pruning.attribute().unwrap();
    set.iter().map(|m| motif_attribute(&work, m, kind)).collect()
}

pub fn duality(z: &[f64], dx: f64, pruning: PruningType, th: f64) -> Check {
    let p = profile(z, dx);
    let hills = watershed_segmentation(&p, FeatureType::Hill, pruning, th);
    let dales = watershed_segmentation(&p.mirrored(), FeatureType::Dale, pruning, th);
    ensure!(
        hills.motifs == dales.motifs,
        "hills {:?} differ from dales of the mirror {:?}",
        hills.motifs,
        dales.motifs
    );
    Ok(())
}

pub fn partition(z: &[f64]) -> Check {
    let p = profile(z, 1.0);
    let extrema = detect_extrema(&p, FeatureType::Dale);
    for pair in extrema.peaks.windows(2) {
        let between = extrema
            .pits
            .iter()
            .filter(|&&v| v > pair[0] && v < pair[1])
            .count();
        ensure!(between == 1, "peaks {pair:?} enclose {between} pits");
    }
    let set = build_motifs(&p, &extrema);
    ensure!(
        set.len() == extrema.peaks.len().saturating_sub(1),
        "{} motifs for {} peaks",
        set.len(),
        extrema.peaks.len()
    );
    for (k, m) in set.iter().enumerate() {
        let (l, r) = m.bounds();
        ensure!(l < m.pit && m.pit < r, "pit {} outside ({l}, {r})", m.pit);
        ensure!(
            (l, r) == (extrema.peaks[k], extrema.peaks[k + 1]),
            "motif {k} bounds ({l}, {r}) are not consecutive peaks"
        );
        ensure!(!m.intersections.is_empty(), "motif {k} has no intersection");
    }
    Ok(())
}

pub fn pruning_postcondition(z: &[f64], dx: f64, ft: FeatureType, pruning: PruningType, th: f64) -> Check {
    let p = profile(z, dx);
    let set = watershed_segmentation(&p, ft, pruning, th);
    for (k, a) in pruning_attrs(&p, &set, pruning).into_iter().enumerate() {
        ensure!(a >= th, "motif {k} has {pruning} attribute {a} < {th}");
    }
    Ok(())
}

pub fn pruning_monotone(z: &[f64], dx: f64, pruning: PruningType, th1: f64, th2: f64) -> Check {
    let (lo, hi) = if th1 <= th2 { (th1, th2) } else { (th2, th1) };
    let p = profile(z, dx);
    let n_lo = watershed_segmentation(&p, FeatureType::Dale, pruning, lo).len();
    let n_hi = watershed_segmentation(&p, FeatureType::Dale, pruning, hi).len();
    ensure!(n_lo >= n_hi, "{n_lo} motifs at {lo} but {n_hi} at {hi}");
    Ok(())
}

pub fn pruning_idempotent(z: &[f64], dx: f64, pruning: PruningType, th: f64) -> Check {
    let p = profile(z, dx);
    let once = watershed_segmentation(&p, FeatureType::Dale, pruning, th);
    let twice = prune(&p, once.clone(), pruning, th);
    ensure!(once == twice, "second pruning changed {:?} into {:?}", once.motifs, twice.motifs);
    Ok(())
}

pub fn length_dominates_width(z: &[f64], dx: f64, pruning: PruningType, th: f64) -> Check {
    let p = profile(z, dx);
    let set = watershed_segmentation(&p, FeatureType::Dale, pruning, th);
    for m in set.iter() {
        let hdl = motif_attribute(&p, m, fcprofile::AttributeType::Hdl);
        let hdw = motif_attribute(&p, m, fcprofile::AttributeType::Hdw);
        ensure!(hdl >= hdw * (1.0 - 1e-12), "HDl {hdl} < HDw {hdw} for {m:?}");
    }
    Ok(())
}

pub fn statistics_sanity(attr: &[f64], dx: f64, n: usize, limit: f64) -> Check {
    let p = profile(&vec![0.0; n], dx);
    let get = |s| match attribute_statistics(attr, s, &p) {
        FcValue::Scalar(v) => v,
        FcValue::Histogram(_) => unreachable!(),
    };
    let (min, mean, max) = (get(Statistic::Min), get(Statistic::Mean), get(Statistic::Max));
    let tol = 1e-12 * max.abs().max(min.abs()).max(1.0);
    ensure!(min <= mean + tol && mean <= max + tol, "min {min}, mean {mean}, max {max}");
    let perc = get(Statistic::Perc(limit));
    ensure!((0.0..=1.0).contains(&perc), "Perc {perc}");
    let sum = get(Statistic::Sum);
    let density = get(Statistic::Density);
    let le = n as f64 * dx;
    ensure!(
        (density * le - sum).abs() <= 1e-12 * sum.abs().max(1.0),
        "Density * l_e = {} but Sum = {sum}",
        density * le
    );
    Ok(())
}

pub fn ten_point_height(z: &[f64], dx: f64) -> Check {
    let p = profile(z, dx);
    let r5p = named_parameter(&p, NamedParameter::R5p);
    let r5v = named_parameter(&p, NamedParameter::R5v);
    let r10z = named_parameter(&p, NamedParameter::R10z);
    let sum = r5p + r5v;
    ensure!(
        r10z == sum || (r10z.is_nan() && sum.is_nan()),
        "R10z {r10z} != R5p {r5p} + R5v {r5v}"
    );
    Ok(())
}

/// Compares Wolf pruning with the rising-water simulation on pit and
/// boundary-peak positions.
pub fn flooding_agreement(z: &[f64], th: f64) -> Check {
    let p = profile(z, 1.0);
    let set = watershed_segmentation(&p, FeatureType::Dale, PruningType::Wolfprune, th);
    let pits: Vec<f64> = set.iter().map(|m| m.pit).collect();
    let mut peaks: Vec<f64> = set
        .iter()
        .flat_map(|m| [m.low_peak, m.high_peak])
        .collect();
    peaks.sort_by(f64::total_cmp);
    peaks.dedup();
    let oracle = flooding_wolf(z, th);
    ensure!(
        pits == oracle.pits && peaks == oracle.peaks,
        "z={z:?} th={th}: pits {pits:?} peaks {peaks:?}, flooding gives pits {:?} peaks {:?}",
        oracle.pits,
        oracle.peaks
    );
    Ok(())
}
