//! Profile files: CSV (one or two columns) and the profile subset of the
//! ISO 5436-2 SMD format.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fcprofile::{Profile, ProfileError};
use thiserror::Error;

/// Relative tolerance on the x spacing of two-column CSV files.
pub const SPACING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Unit {
    M,
    Mm,
    #[default]
    Um,
    Nm,
}

impl Unit {
    /// Factor converting this unit to µm.
    pub fn to_um(self) -> f64 {
        match self {
            Unit::M => 1e6,
            Unit::Mm => 1e3,
            Unit::Um => 1.0,
            Unit::Nm => 1e-3,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Unit::M => "m",
            Unit::Mm => "mm",
            Unit::Um => "um",
            Unit::Nm => "nm",
        }
    }
}

impl FromStr for Unit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "m" => Ok(Unit::M),
            "mm" => Ok(Unit::Mm),
            "um" | "µm" | "micron" => Ok(Unit::Um),
            "nm" => Ok(Unit::Nm),
            _ => Err(format!("unknown unit {s:?} (expected m, mm, um or nm)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Smd,
}

impl Format {
    /// `.smd` is SMD, everything else is read as CSV.
    pub fn of(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("smd") => Format::Smd,
            _ => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Sampling interval for one-column CSV, in the file unit.
    pub dx: Option<f64>,
    /// Unit of CSV values; overrides a `# unit =` comment.
    pub unit: Option<Unit>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {token:?} is not a number")]
    NotNumeric {
        line: u64,
        column: usize,
        token: String,
    },
    #[error("line {line}: expected 1 or 2 columns, found {found}")]
    ColumnCount { line: u64, found: usize },
    #[error("line {line}: x step {step} differs from dx {dx} by more than {SPACING_TOLERANCE:e} relative")]
    NotEquidistant { line: u64, step: f64, dx: f64 },
    #[error("one-column data needs a sampling interval (--dx or a `# dx =` comment)")]
    MissingDx,
    #[error("line {line}: {message}")]
    Header { line: u64, message: String },
    #[error("line {line}: {message}")]
    Smd { line: usize, message: String },
    #[error("line {line}: unsupported SMD record {record:?}; only single profiles (PRF) with an incremental x axis are read")]
    UnsupportedSmd { line: usize, record: String },
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

pub fn load_profile(path: &Path, options: LoadOptions) -> Result<Profile, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    match Format::of(path) {
        Format::Csv => read_csv(&text, options),
        Format::Smd => read_smd(&text),
    }
}

pub fn save_profile(path: &Path, profile: &Profile, name: &str) -> Result<(), LoadError> {
    let text = match Format::of(path) {
        Format::Csv => write_csv(profile),
        Format::Smd => write_smd(profile, name),
    };
    fs::write(path, text).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })
}

/// `# key = value` settings in comment lines.
fn comment_setting(text: &str, key: &str) -> Option<(u64, String)> {
    text.lines().enumerate().find_map(|(i, line)| {
        let body = line.trim().strip_prefix('#')?;
        let (k, v) = body.split_once('=')?;
        (k.trim().eq_ignore_ascii_case(key)).then(|| (i as u64 + 1, v.trim().to_owned()))
    })
}

/// Reads `z` or `x,z` rows. `#` starts a comment line, a non-numeric first
/// row is taken as a header.
pub fn read_csv(text: &str, options: LoadOptions) -> Result<Profile, LoadError> {
    let unit = match (options.unit, comment_setting(text, "unit")) {
        (Some(u), _) => u,
        (None, Some((line, v))) => v.parse().map_err(|message| LoadError::Header { line, message })?,
        (None, None) => Unit::Um,
    };
    let declared_dx = match (options.dx, comment_setting(text, "dx")) {
        (Some(dx), _) => Some(dx),
        (None, Some((line, v))) => Some(v.parse::<f64>().map_err(|_| LoadError::Header {
            line,
            message: format!("dx {v:?} is not a number"),
        })?),
        (None, None) => None,
    };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<(u64, Vec<f64>)> = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if !(1..=2).contains(&record.len()) {
            return Err(LoadError::ColumnCount {
                line,
                found: record.len(),
            });
        }
        let parsed: Result<Vec<f64>, usize> = record
            .iter()
            .enumerate()
            .map(|(c, t)| t.parse::<f64>().map_err(|_| c))
            .collect();
        match parsed {
            Ok(values) => rows.push((line, values)),
            Err(_) if k == 0 => continue,
            Err(c) => {
                return Err(LoadError::NotNumeric {
                    line,
                    column: c + 1,
                    token: record[c].to_owned(),
                })
            }
        }
    }
    let columns = rows.first().map_or(1, |r| r.1.len());
    if let Some((line, r)) = rows.iter().find(|r| r.1.len() != columns) {
        return Err(LoadError::ColumnCount {
            line: *line,
            found: r.len(),
        });
    }

    let scale = unit.to_um();
    let z: Vec<f64> = rows.iter().map(|r| r.1[columns - 1] * scale).collect();
    let dx = if columns == 1 {
        declared_dx.ok_or(LoadError::MissingDx)?
    } else {
        let x: Vec<f64> = rows.iter().map(|r| r.1[0]).collect();
        let dx = match declared_dx {
            Some(dx) => dx,
            None if x.len() >= 2 => (x[x.len() - 1] - x[0]) / (x.len() - 1) as f64,
            None => f64::NAN,
        };
        for (k, w) in x.windows(2).enumerate() {
            let step = w[1] - w[0];
            if !((step - dx).abs() <= SPACING_TOLERANCE * dx.abs()) {
                return Err(LoadError::NotEquidistant {
                    line: rows[k + 1].0,
                    step,
                    dx,
                });
            }
        }
        dx
    };
    Ok(Profile::new(z, dx * scale)?)
}

/// Two-column CSV in µm. The exact `dx` goes into a comment so that loading
/// reproduces it bit for bit.
pub fn write_csv(profile: &Profile) -> String {
    let mut out = format!("# dx = {}\n# unit = um\nx,z\n", profile.dx());
    for (k, z) in profile.z().iter().enumerate() {
        let _ = writeln!(out, "{},{}", k as f64 * profile.dx(), z);
    }
    out
}

struct Axis {
    kind: String,
    points: usize,
    unit: Unit,
    scale: f64,
    data_type: String,
    offset: f64,
}

fn smd_unit(token: &str, line: usize) -> Result<Unit, LoadError> {
    token.parse().map_err(|message| LoadError::Smd { line, message })
}

fn smd_number<T: FromStr>(token: Option<&(usize, &str)>, what: &str, line: usize) -> Result<T, LoadError> {
    let (line, t) = token.copied().unwrap_or((line, ""));
    t.parse().map_err(|_| LoadError::Smd {
        line,
        message: format!("{what} {t:?} is not a number"),
    })
}

fn parse_axis(tokens: &[(usize, &str)], line: usize) -> Result<Axis, LoadError> {
    if tokens.len() < 5 {
        return Err(LoadError::Smd {
            line,
            message: format!("axis {} needs type, points, unit, increment and data type", tokens[0].1),
        });
    }
    Ok(Axis {
        kind: tokens[1].1.to_ascii_uppercase(),
        points: smd_number(tokens.get(2), "point count", line)?,
        unit: smd_unit(tokens[3].1, tokens[3].0)?,
        scale: smd_number(tokens.get(4), "increment", line)?,
        data_type: tokens.get(5).map_or("D", |t| t.1).to_ascii_uppercase(),
        offset: match tokens.get(6) {
            Some(_) => smd_number(tokens.get(6), "offset", line)?,
            None => 0.0,
        },
    })
}

/// Reads a single-profile SMD file: header record with `PRF`, an `I`
/// (incremental) x axis and an `A` z axis; a free-form second record; one
/// ordinate per token in the data record. A trailing checksum record is
/// ignored.
pub fn read_smd(text: &str) -> Result<Profile, LoadError> {
    let mut records: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            if token.eq_ignore_ascii_case("EOR") {
                records.push(Vec::new());
            } else {
                records.last_mut().unwrap().push((i + 1, token));
            }
        }
    }
    if records.len() < 4 {
        return Err(LoadError::Smd {
            line: text.lines().count(),
            message: "expected header, parameter and data records each closed by EOR".into(),
        });
    }
    let header = &records[0];
    let Some(&(line, kind)) = header.first() else {
        return Err(LoadError::Smd {
            line: 1,
            message: "empty header record".into(),
        });
    };
    if !kind.eq_ignore_ascii_case("PRF") {
        return Err(LoadError::UnsupportedSmd {
            line,
            record: kind.into(),
        });
    }
    let axis_at = |name: &str| header.iter().position(|t| t.1.eq_ignore_ascii_case(name));
    if let Some(p) = axis_at("CY") {
        return Err(LoadError::UnsupportedSmd {
            line: header[p].0,
            record: "CY".into(),
        });
    }
    let (Some(cx), Some(cz)) = (axis_at("CX"), axis_at("CZ")) else {
        return Err(LoadError::Smd {
            line,
            message: "header needs CX and CZ axis definitions".into(),
        });
    };
    let axis_tokens = |p: usize| {
        let end = header[p + 1..]
            .iter()
            .position(|t| ["CX", "CZ"].iter().any(|a| t.1.eq_ignore_ascii_case(a)))
            .map_or(header.len(), |q| p + 1 + q);
        &header[p..end]
    };
    let x = parse_axis(axis_tokens(cx), header[cx].0)?;
    let z = parse_axis(axis_tokens(cz), header[cz].0)?;
    if x.kind != "I" {
        return Err(LoadError::UnsupportedSmd {
            line: header[cx].0,
            record: format!("CX {}", x.kind),
        });
    }
    if z.kind != "A" {
        return Err(LoadError::UnsupportedSmd {
            line: header[cz].0,
            record: format!("CZ {}", z.kind),
        });
    }
    let integer = match z.data_type.as_str() {
        "I" | "L" => true,
        "F" | "D" => false,
        other => {
            return Err(LoadError::UnsupportedSmd {
                line: header[cz].0,
                record: format!("data type {other}"),
            })
        }
    };

    let data = &records[2];
    if data.len() != x.points {
        return Err(LoadError::Smd {
            line: data.last().map_or(line, |t| t.0),
            message: format!("header declares {} points, data record has {}", x.points, data.len()),
        });
    }
    let factor = z.unit.to_um();
    let mut values = Vec::with_capacity(data.len());
    for &(line, token) in data {
        let v: f64 = token.parse().map_err(|_| LoadError::Smd {
            line,
            message: format!("ordinate {token:?} is not a number"),
        })?;
        if integer && v.fract() != 0.0 {
            return Err(LoadError::Smd {
                line,
                message: format!("ordinate {token:?} is not an integer"),
            });
        }
        values.push((v * z.scale + z.offset) * factor);
    }
    Ok(Profile::new(values, x.scale * x.unit.to_um())?)
}

/// SMD in µm with unit scale, so that reading reproduces `z` exactly.
pub fn write_smd(profile: &Profile, name: &str) -> String {
    let name: String = name
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect();
    let mut out = format!(
        "PRF {} 02 CX I {} UM {} D 0\nCZ A 0 UM 1 D 0\nEOR\nEOR\n",
        if name.is_empty() { "profile" } else { &name },
        profile.len(),
        profile.dx()
    );
    for z in profile.z() {
        let _ = writeln!(out, "{z}");
    }
    out.push_str("EOR\n***\n");
    out
}
