//! Reference implementations used as test oracles. None of them call into the
//! library's segmentation or attribute code.

#![allow(dead_code)]

pub mod checks;
pub mod strategies;

use std::f64::consts::PI;

use fcprofile::Profile;

/// `A sin(2 pi x / lambda)` sampled at `x = k dx`, `k = 0..n`.
pub fn sine(amplitude: f64, wavelength: f64, dx: f64, n: usize) -> Profile {
    let z = (0..n)
        .map(|k| amplitude * (2.0 * PI * k as f64 * dx / wavelength).sin())
        .collect();
    Profile::new(z, dx).unwrap()
}

/// The reference sine: 1 µm amplitude, 1200 µm wavelength, 0.5 µm spacing
/// over 4000 µm (three whole dales between the four peaks).
pub fn reference_sine() -> Profile {
    sine(1.0, 1200.0, 0.5, 8000)
}

/// Pits and boundary peaks of a Wolf-pruned segmentation, found by raising
/// a water level through the profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Flooding {
    pub pits: Vec<f64>,
    pub peaks: Vec<f64>,
}

struct Run {
    center: f64,
    height: f64,
}

struct Basin {
    /// Height of the lowest point; `-inf` for the two edge sinks.
    birth: f64,
    pit: f64,
    absorbed: bool,
    /// Contains a basin that survived a meeting, so its next meeting point
    /// is a boundary.
    holds: bool,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Rising-water simulation with union-find over plateau runs.
///
/// Everything outside the outermost local maxima drains off the profile and
/// belongs to one of two sinks from the start. A new basin appears at every
/// local minimum. When the water reaches a local maximum the two basins on
/// either side meet; the one with the higher bottom (the left one on equal
/// bottoms) disappears when its depth at this level is below `th`,
/// otherwise the maximum stays as a boundary between two motifs. The two
/// sinks meet at a boundary only if a surviving basin drained into one of
/// them. Levels are
/// swept in ascending order, runs of equal level from left to right.
pub fn flooding_wolf(z: &[f64], th: f64) -> Flooding {
    let mut runs: Vec<Run> = Vec::new();
    let mut start = 0;
    for i in 1..=z.len() {
        if i == z.len() || z[i] != z[start] {
            runs.push(Run {
                center: (start + 1) as f64 + (i - start - 1) as f64 / 2.0,
                height: z[start],
            });
            start = i;
        }
    }
    let is_max = |k: usize| {
        k > 0 && k + 1 < runs.len() && runs[k].height > runs[k - 1].height
            && runs[k].height > runs[k + 1].height
    };
    let maxima: Vec<usize> = (0..runs.len()).filter(|&k| is_max(k)).collect();
    let empty = Flooding {
        pits: Vec::new(),
        peaks: Vec::new(),
    };
    if maxima.len() < 2 {
        return empty;
    }
    let (first, last) = (maxima[0], maxima[maxima.len() - 1]);

    let mut basins = vec![
        Basin {
            birth: f64::NEG_INFINITY,
            pit: f64::NAN,
            absorbed: false,
            holds: false,
        },
        Basin {
            birth: f64::NEG_INFINITY,
            pit: f64::NAN,
            absorbed: false,
            holds: false,
        },
    ];
    // union-find over runs; every root maps to a basin
    let mut parent: Vec<usize> = (0..runs.len()).collect();
    let mut basin_of: Vec<usize> = vec![usize::MAX; runs.len()];
    let mut flooded = vec![false; runs.len()];
    for k in 0..runs.len() {
        if k < first {
            parent[k] = 0;
            flooded[k] = true;
            basin_of[0] = 0;
        } else if k > last {
            parent[k] = last + 1;
            flooded[k] = true;
            basin_of[last + 1] = 1;
        }
    }

    let mut levels: Vec<f64> = (first..=last).map(|k| runs[k].height).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let mut peaks = Vec::new();
    for level in levels {
        for k in first..=last {
            if runs[k].height != level {
                continue;
            }
            flooded[k] = true;
            let left = k > 0 && flooded[k - 1];
            let right = k + 1 < runs.len() && flooded[k + 1];
            match (left, right) {
                (false, false) => {
                    basins.push(Basin {
                        birth: level,
                        pit: runs[k].center,
                        absorbed: false,
                        holds: false,
                    });
                    basin_of[k] = basins.len() - 1;
                }
                (true, false) => parent[k] = find(&mut parent, k - 1),
                (false, true) => parent[k] = find(&mut parent, k + 1),
                (true, true) => {
                    let ra = find(&mut parent, k - 1);
                    let rb = find(&mut parent, k + 1);
                    let (a, b) = (basin_of[ra], basin_of[rb]);
                    let a_younger = basins[a].birth >= basins[b].birth;
                    let (young, old) = if a_younger { (a, b) } else { (b, a) };
                    let sinks = basins[young].birth == f64::NEG_INFINITY;
                    if sinks {
                        if basins[a].holds || basins[b].holds {
                            peaks.push(runs[k].center);
                        }
                    } else if level - basins[young].birth < th {
                        basins[young].absorbed = true;
                    } else {
                        peaks.push(runs[k].center);
                        basins[old].holds = true;
                    }
                    basins[old].holds |= basins[young].holds;
                    parent[ra] = k;
                    parent[rb] = k;
                    basin_of[k] = old;
                }
            }
        }
    }

    let mut pits: Vec<f64> = basins[2..]
        .iter()
        .filter(|b| !b.absorbed)
        .map(|b| b.pit)
        .collect();
    pits.sort_by(f64::total_cmp);
    peaks.sort_by(f64::total_cmp);
    Flooding { pits, peaks }
}

/// Second derivative at offset 0 of the degree-6 polynomial through the
/// seven points `(j dx, y[j + 3])`, `j = -3..=3`, by solving the Vandermonde
/// system with partial pivoting.
pub fn degree6_second_derivative(y: &[f64; 7], dx: f64) -> f64 {
    let mut a = [[0.0f64; 8]; 7];
    for (r, row) in a.iter_mut().enumerate() {
        let t = (r as f64 - 3.0) * dx;
        for c in 0..7 {
            row[c] = t.powi(c as i32);
        }
        row[7] = y[r];
    }
    for col in 0..7 {
        let pivot = (col..7)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        for r in 0..7 {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..8 {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    2.0 * a[2][7] / a[2][2]
}

/// Exact area between the level `level` and the linear interpolant of `z`
/// where the interpolant lies below the level, over the 1-based index range
/// `[from, to]`, in index units.
pub fn submerged_area(z: &[f64], level: f64, from: f64, to: f64) -> f64 {
    let at = |i: f64| {
        let lo = (i.floor() as usize).clamp(1, z.len() - 1);
        let t = i - lo as f64;
        z[lo - 1] * (1.0 - t) + z[lo] * t
    };
    let mut knots = vec![from];
    let mut k = from.floor() + 1.0;
    while k < to {
        knots.push(k);
        k += 1.0;
    }
    knots.push(to);
    let mut area = 0.0;
    for w in knots.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (d0, d1) = (level - at(x0), level - at(x1));
        let len = x1 - x0;
        area += if d0 >= 0.0 && d1 >= 0.0 {
            len * (d0 + d1) / 2.0
        } else if d0 <= 0.0 && d1 <= 0.0 {
            0.0
        } else {
            // only the positive part of the linear segment
            let (pos, neg) = if d0 > 0.0 { (d0, d1) } else { (d1, d0) };
            len * pos / (pos - neg) * pos / 2.0
        };
    }
    area
}

/// Rz computed section by section without shortcuts.
pub fn brute_rz(z: &[f64]) -> f64 {
    let n = z.len();
    if n < 25 {
        let hi = z.iter().cloned().fold(f64::MIN, f64::max);
        let lo = z.iter().cloned().fold(f64::MAX, f64::min);
        return hi - lo;
    }
    let mut total = 0.0;
    for k in 0..5 {
        let (s, e) = (k * n / 5, (k + 1) * n / 5);
        let mut hi = f64::MIN;
        let mut lo = f64::MAX;
        for &v in &z[s..e] {
            hi = hi.max(v);
            lo = lo.min(v);
        }
        total += hi - lo;
    }
    total / 5.0
}

/// Smallest drop `c` from the maximum such that the share of samples with
/// `z >= max - c` reaches `p`, found by trying every candidate level.
pub fn brute_rcm(z: &[f64], p: f64) -> f64 {
    let max = z.iter().cloned().fold(f64::MIN, f64::max);
    let drops: Vec<f64> = z.iter().map(|v| max - v).collect();
    let mut candidates = drops.clone();
    candidates.sort_by(f64::total_cmp);
    for c in candidates {
        let share = drops.iter().filter(|&&d| d <= c).count() as f64 / z.len() as f64;
        if share >= p - 1e-12 {
            return -c;
        }
    }
    unreachable!()
}
