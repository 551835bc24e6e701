//! Statistics over attribute vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::profile::Profile;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statistic {
    Mean,
    Max,
    Min,
    /// Sample standard deviation (n - 1).
    StdDev,
    /// Fraction of attribute values strictly above the limit.
    Perc(f64),
    Hist,
    Sum,
    /// Sum over the evaluation length.
    Density,
}

impl Statistic {
    pub const TOKENS: [&'static str; 8] =
        ["Mean", "Max", "Min", "StdDev", "Perc", "Hist", "Sum", "Density"];

    pub fn token(self) -> &'static str {
        match self {
            Statistic::Mean => "Mean",
            Statistic::Max => "Max",
            Statistic::Min => "Min",
            Statistic::StdDev => "StdDev",
            Statistic::Perc(_) => "Perc",
            Statistic::Hist => "Hist",
            Statistic::Sum => "Sum",
            Statistic::Density => "Density",
        }
    }

    /// The limit value of `Perc`.
    pub fn limit(self) -> Option<f64> {
        match self {
            Statistic::Perc(v) => Some(v),
            _ => None,
        }
    }

    /// Statistic for a token; `Perc` gets the given limit.
    pub fn from_token(token: &str, limit: f64) -> Option<Statistic> {
        Some(match token {
            "Mean" => Statistic::Mean,
            "Max" => Statistic::Max,
            "Min" => Statistic::Min,
            "StdDev" => Statistic::StdDev,
            "Perc" => Statistic::Perc(limit),
            "Hist" => Statistic::Hist,
            "Sum" => Statistic::Sum,
            "Density" => Statistic::Density,
            _ => return None,
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Perc(v) => write!(f, "Perc {v}"),
            other => f.write_str(other.token()),
        }
    }
}

/// Equal-width histogram. `edges` has one more entry than `counts`; the
/// last bin is closed on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    /// Sturges binning, `ceil(log2(n)) + 1` bins spanning the finite values.
    pub fn sturges(values: &[f64]) -> Histogram {
        let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        if finite.is_empty() {
            return Histogram {
                edges: Vec::new(),
                counts: Vec::new(),
            };
        }
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi, bins) = if lo == hi {
            (lo - 0.5, hi + 0.5, 1)
        } else {
            (lo, hi, math::ceil(math::log2(finite.len() as f64)) as usize + 1)
        };
        let width = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..bins).map(|k| lo + k as f64 * width).collect();
        edges.push(hi);
        let mut counts = vec![0usize; bins];
        for v in finite {
            let k = (((v - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
        Histogram { edges, counts }
    }
}

/// A feature parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum FcValue {
    Scalar(f64),
    Histogram(Histogram),
}

impl FcValue {
    pub fn nan() -> FcValue {
        FcValue::Scalar(f64::NAN)
    }

    pub fn scalar(&self) -> Option<f64> {
        match self {
            FcValue::Scalar(v) => Some(*v),
            FcValue::Histogram(_) => None,
        }
    }

    pub fn is_nan(&self) -> bool {
        matches!(self, FcValue::Scalar(v) if v.is_nan())
    }
}

/// Applies `statistic` to `attr`. An empty vector gives NaN; so does any
/// NaN entry, except for histograms which skip it.
pub fn attribute_statistics(attr: &[f64], statistic: Statistic, profile: &Profile) -> FcValue {
    if statistic == Statistic::Hist {
        return FcValue::Histogram(Histogram::sturges(attr));
    }
    if attr.is_empty() || attr.iter().any(|v| v.is_nan()) {
        return FcValue::nan();
    }
    let sum: f64 = attr.iter().sum();
    let value = match statistic {
        Statistic::Mean => math::mean(attr),
        Statistic::Max => attr.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        Statistic::Min => attr.iter().copied().fold(f64::INFINITY, f64::min),
        Statistic::StdDev => math::std_dev(attr),
        Statistic::Perc(limit) => {
            attr.iter().filter(|&&v| v > limit).count() as f64 / attr.len() as f64
        }
        Statistic::Sum => sum,
        Statistic::Density => sum / (profile.dx() * profile.len() as f64),
        Statistic::Hist => unreachable!(),
    };
    FcValue::Scalar(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile() -> Profile {
        Profile::new(vec![0.0; 9600], 0.5).unwrap()
    }

    #[test]
    fn basic_statistics() {
        let p = profile();
        let a = [1.0, 2.0, 3.0];
        assert_eq!(attribute_statistics(&a, Statistic::Mean, &p), FcValue::Scalar(2.0));
        assert_eq!(attribute_statistics(&a, Statistic::Max, &p), FcValue::Scalar(3.0));
        assert_eq!(attribute_statistics(&a, Statistic::Min, &p), FcValue::Scalar(1.0));
        assert_eq!(attribute_statistics(&a, Statistic::StdDev, &p), FcValue::Scalar(1.0));
        assert_eq!(attribute_statistics(&a, Statistic::Sum, &p), FcValue::Scalar(6.0));
        assert_eq!(
            attribute_statistics(&a, Statistic::Perc(1.5), &p),
            FcValue::Scalar(2.0 / 3.0)
        );
        // strict comparison
        assert_eq!(
            attribute_statistics(&a, Statistic::Perc(3.0), &p),
            FcValue::Scalar(0.0)
        );
    }

    #[test]
    fn density_over_evaluation_length() {
        let p = profile();
        let v = attribute_statistics(&[1.0; 4], Statistic::Density, &p);
        assert_eq!(v, FcValue::Scalar(4.0 / 4800.0));
    }

    #[test]
    fn degenerate_inputs() {
        let p = profile();
        assert!(attribute_statistics(&[], Statistic::Mean, &p).is_nan());
        assert!(attribute_statistics(&[1.0, f64::NAN], Statistic::Max, &p).is_nan());
        assert_eq!(attribute_statistics(&[4.0], Statistic::StdDev, &p), FcValue::Scalar(0.0));
    }

    #[test]
    fn sturges_histogram() {
        let p = profile();
        let a = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0];
        let FcValue::Histogram(h) = attribute_statistics(&a, Statistic::Hist, &p) else {
            panic!("expected histogram");
        };
        assert_eq!(h.counts.len(), 4);
        assert_eq!(h.edges, vec![0.0, 2.0, 4.0, 6.0, 8.0]);
        assert_eq!(h.counts, vec![2, 2, 2, 2]);

        let FcValue::Histogram(h) = attribute_statistics(&[2.0, 2.0], Statistic::Hist, &p) else {
            panic!("expected histogram");
        };
        assert_eq!(h.edges, vec![1.5, 2.5]);
        assert_eq!(h.counts, vec![2]);
    }
}
