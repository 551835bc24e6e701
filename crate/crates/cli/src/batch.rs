//! Named parameters for single profiles and softgauge directories.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fcprofile::{named_parameter, NamedParameter, Profile};
use rayon::prelude::*;
use serde::Serialize;

use crate::io::{load_profile, LoadOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: &'static str,
    pub value: f64,
}

pub fn named_values(profile: &Profile, names: &[NamedParameter]) -> Vec<NamedValue> {
    names
        .iter()
        .map(|&n| NamedValue {
            name: n.name(),
            value: named_parameter(profile, n),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SoftgaugeRow {
    pub file: String,
    pub values: Vec<NamedValue>,
    /// Load error; `values` is empty when set.
    pub error: Option<String>,
}

/// Files in `dir` with extension `ext` (case-insensitive), sorted by name.
pub fn profile_files(dir: &Path, ext: &str) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| e.eq_ignore_ascii_case(ext))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Evaluates the named parameters on every file in parallel.
pub fn softgauge(
    dir: &Path,
    ext: &str,
    options: LoadOptions,
    names: &[NamedParameter],
) -> std::io::Result<Vec<SoftgaugeRow>> {
    let files = profile_files(dir, ext)?;
    Ok(files
        .par_iter()
        .map(|path| {
            let file = path
                .file_name()
                .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned());
            match load_profile(path, options) {
                Ok(p) => SoftgaugeRow {
                    file,
                    values: named_values(&p, names),
                    error: None,
                },
                Err(e) => SoftgaugeRow {
                    file,
                    values: Vec::new(),
                    error: Some(e.to_string()),
                },
            }
        })
        .collect())
}

/// Plain-text table with one row per file and one column per parameter.
pub fn softgauge_table(rows: &[SoftgaugeRow], names: &[NamedParameter]) -> String {
    let width = rows.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:<width$}", "file");
    for n in names {
        let _ = write!(out, "  {:>14}", n.name());
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{:<width$}", row.file);
        match &row.error {
            Some(e) => {
                let _ = write!(out, "  error: {e}");
            }
            None => {
                for v in &row.values {
                    let _ = write!(out, "  {:>14}", format_number(v.value));
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Shortest form for exact values, six significant digits otherwise.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    let short = format!("{v}");
    if short.len() <= 10 {
        short
    } else {
        format!("{v:.6e}")
    }
}
