//! The feature characterization (FC) string language.
//!
//! ```text
//! FC;<FT>;<PT>[ <TH>[ %]|opt];<Fsig>[ <NI>[ %]];<AT>;<stats>[ <v>]
//! ```
//!
//! [`FcSpec`] is the syntactic form, with percentages and `opt` still
//! unresolved. [`FcSpec::resolve`] turns it into an [`FcRequest`] against a
//! concrete profile.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::attributes::AttributeType;
use crate::field::{rcm, rz};
use crate::math;
use crate::motif::FeatureType;
use crate::profile::Profile;
use crate::segmentation::PruningType;
use crate::significance::Significance;
use crate::statistics::Statistic;

/// The six fields of an FC string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FcField {
    Prefix,
    FeatureType,
    Pruning,
    Significance,
    Attribute,
    Statistic,
}

impl FcField {
    pub const ALL: [FcField; 6] = [
        FcField::Prefix,
        FcField::FeatureType,
        FcField::Pruning,
        FcField::Significance,
        FcField::Attribute,
        FcField::Statistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FcField::Prefix => "prefix",
            FcField::FeatureType => "feature type",
            FcField::Pruning => "pruning",
            FcField::Significance => "significance",
            FcField::Attribute => "attribute",
            FcField::Statistic => "statistic",
        }
    }
}

impl fmt::Display for FcField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FcParseError {
    /// Not exactly six `;`-separated fields.
    FieldCount { found: usize },
    UnknownToken { field: FcField, token: String },
    /// A required number is absent.
    MissingValue { field: FcField },
    /// A number or `%` where none is allowed, or trailing tokens.
    UnexpectedValue { field: FcField, token: String },
    InvalidNumber { field: FcField, token: String },
    /// `%` on a pruning type or significance rule that has no percentage
    /// reference.
    PercentNotAllowed { field: FcField, token: String },
    /// A number outside its domain (negative threshold, percentage above
    /// 100, fractional count).
    OutOfRange { field: FcField, token: String },
}

impl FcParseError {
    /// The field the error refers to.
    pub fn field(&self) -> FcField {
        match self {
            FcParseError::FieldCount { .. } => FcField::Prefix,
            FcParseError::UnknownToken { field, .. }
            | FcParseError::MissingValue { field }
            | FcParseError::UnexpectedValue { field, .. }
            | FcParseError::InvalidNumber { field, .. }
            | FcParseError::PercentNotAllowed { field, .. }
            | FcParseError::OutOfRange { field, .. } => *field,
        }
    }
}

impl fmt::Display for FcParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FcParseError::FieldCount { found } => {
                write!(f, "expected 6 ';'-separated fields, found {found}")
            }
            FcParseError::UnknownToken { field, token } => {
                write!(f, "{field}: unknown token '{token}'")
            }
            FcParseError::MissingValue { field } => write!(f, "{field}: missing value"),
            FcParseError::UnexpectedValue { field, token } => {
                write!(f, "{field}: unexpected '{token}'")
            }
            FcParseError::InvalidNumber { field, token } => {
                write!(f, "{field}: '{token}' is not a finite number")
            }
            FcParseError::PercentNotAllowed { field, token } => {
                write!(f, "{field}: '{token}' does not accept a percentage")
            }
            FcParseError::OutOfRange { field, token } => {
                write!(f, "{field}: '{token}' is out of range")
            }
        }
    }
}

impl core::error::Error for FcParseError {}

/// Parser options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Match keywords ignoring ASCII case.
    pub case_insensitive: bool,
}

impl ParseOptions {
    pub fn lenient() -> Self {
        Self {
            case_insensitive: true,
        }
    }

    fn matches(self, token: &str, keyword: &str) -> bool {
        if self.case_insensitive {
            token.eq_ignore_ascii_case(keyword)
        } else {
            token == keyword
        }
    }
}

/// A number, optionally followed by `%`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub percent: bool,
}

impl Quantity {
    pub fn absolute(value: f64) -> Self {
        Self {
            value,
            percent: false,
        }
    }

    pub fn percent(value: f64) -> Self {
        Self {
            value,
            percent: true,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.percent {
            write!(f, "{} %", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// Unresolved pruning threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdSpec {
    /// Only with `None` pruning.
    None,
    Quantity(Quantity),
    Opt,
}

/// Resolved pruning threshold (µm or the attribute's unit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    None,
    Value(f64),
    /// Chosen by the optimal periodicity search at evaluation time.
    Opt,
}

impl Threshold {
    /// Numeric threshold; NaN for `None` and `Opt`.
    pub fn value(self) -> f64 {
        match self {
            Threshold::Value(v) => v,
            Threshold::None | Threshold::Opt => f64::NAN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignificanceKind {
    All,
    Open,
    Closed,
    Top,
    Bot,
}

impl SignificanceKind {
    pub const ALL: [SignificanceKind; 5] = [
        SignificanceKind::All,
        SignificanceKind::Open,
        SignificanceKind::Closed,
        SignificanceKind::Top,
        SignificanceKind::Bot,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SignificanceKind::All => "All",
            SignificanceKind::Open => "Open",
            SignificanceKind::Closed => "Closed",
            SignificanceKind::Top => "Top",
            SignificanceKind::Bot => "Bot",
        }
    }

    /// Open and Closed take a height, Top and Bot a count.
    pub fn takes_height(self) -> bool {
        matches!(self, SignificanceKind::Open | SignificanceKind::Closed)
    }
}

impl fmt::Display for SignificanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Syntactic FC specification.
#[derive(Debug, Clone, PartialEq)]
pub struct FcSpec {
    pub feature_type: FeatureType,
    pub pruning: PruningType,
    pub threshold: ThresholdSpec,
    pub significance: SignificanceKind,
    /// Height (Open/Closed, `%` allowed) or count (Top/Bot); `None` for All.
    pub nesting_index: Option<Quantity>,
    pub attribute: AttributeType,
    pub statistic: Statistic,
}

/// Fully resolved evaluation request.
#[derive(Debug, Clone, PartialEq)]
pub struct FcRequest {
    pub feature_type: FeatureType,
    pub pruning: PruningType,
    pub threshold: Threshold,
    pub significance: Significance,
    pub attribute: AttributeType,
    pub statistic: Statistic,
}

fn keyword<T: Copy>(
    token: &str,
    candidates: &[T],
    name: impl Fn(T) -> &'static str,
    field: FcField,
    options: ParseOptions,
) -> Result<T, FcParseError> {
    candidates
        .iter()
        .copied()
        .find(|&c| options.matches(token, name(c)))
        .ok_or_else(|| FcParseError::UnknownToken {
            field,
            token: token.to_string(),
        })
}

fn number(token: &str, field: FcField) -> Result<f64, FcParseError> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| FcParseError::InvalidNumber {
            field,
            token: token.to_string(),
        })
}

/// Splits one field into words, detaching a trailing `%` from its number.
fn words(field: &str) -> Vec<String> {
    field
        .replace('%', " %")
        .split_whitespace()
        .map(String::from)
        .collect()
}

/// Parses `<number>[ %]` from `rest`, which holds everything after the
/// keyword.
fn quantity(rest: &[String], field: FcField) -> Result<Quantity, FcParseError> {
    let Some(first) = rest.first() else {
        return Err(FcParseError::MissingValue { field });
    };
    let value = number(first, field)?;
    match rest {
        [_] => Ok(Quantity::absolute(value)),
        [_, pct] if pct == "%" => Ok(Quantity::percent(value)),
        [_, extra, ..] => Err(FcParseError::UnexpectedValue {
            field,
            token: extra.clone(),
        }),
        [] => unreachable!(),
    }
}

fn no_more(rest: &[String], field: FcField) -> Result<(), FcParseError> {
    match rest.first() {
        None => Ok(()),
        Some(token) => Err(FcParseError::UnexpectedValue {
            field,
            token: token.clone(),
        }),
    }
}

fn check_percentage(q: Quantity, field: FcField, token: &str) -> Result<(), FcParseError> {
    if q.value < 0.0 || (q.percent && q.value > 100.0) {
        return Err(FcParseError::OutOfRange {
            field,
            token: token.to_string(),
        });
    }
    Ok(())
}

impl FcSpec {
    /// Parses with case-sensitive keywords.
    pub fn parse(raw: &str) -> Result<FcSpec, FcParseError> {
        FcSpec::parse_with(raw, ParseOptions::default())
    }

    pub fn parse_with(raw: &str, options: ParseOptions) -> Result<FcSpec, FcParseError> {
        let fields: Vec<&str> = raw.split(';').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(FcParseError::FieldCount {
                found: fields.len(),
            });
        }
        if !options.matches(fields[0], "FC") {
            return Err(FcParseError::UnknownToken {
                field: FcField::Prefix,
                token: fields[0].to_string(),
            });
        }

        let ft = words(fields[1]);
        let Some(ft_token) = ft.first() else {
            return Err(FcParseError::MissingValue {
                field: FcField::FeatureType,
            });
        };
        let feature_type = keyword(
            ft_token,
            &FeatureType::ALL,
            FeatureType::token,
            FcField::FeatureType,
            options,
        )?;
        no_more(&ft[1..], FcField::FeatureType)?;

        let (pruning, threshold) = parse_pruning(&words(fields[2]), options)?;
        let (significance, nesting_index) = parse_significance(&words(fields[3]), options)?;

        let at = words(fields[4]);
        let Some(at_token) = at.first() else {
            return Err(FcParseError::MissingValue {
                field: FcField::Attribute,
            });
        };
        let attribute = keyword(
            at_token,
            &AttributeType::ALL,
            AttributeType::token,
            FcField::Attribute,
            options,
        )?;
        no_more(&at[1..], FcField::Attribute)?;

        let statistic = parse_statistic(&words(fields[5]), options)?;

        Ok(FcSpec {
            feature_type,
            pruning,
            threshold,
            significance,
            nesting_index,
            attribute,
            statistic,
        })
    }

    /// Resolves percentages against `profile`. `Opt` stays unresolved.
    pub fn resolve(&self, profile: &Profile) -> FcRequest {
        let threshold = match self.threshold {
            ThresholdSpec::None => Threshold::None,
            ThresholdSpec::Opt => Threshold::Opt,
            ThresholdSpec::Quantity(q) if q.percent => {
                let reference = match self.pruning {
                    PruningType::Width => profile.evaluation_length(),
                    _ => rz(profile),
                };
                Threshold::Value(0.01 * q.value * reference)
            }
            ThresholdSpec::Quantity(q) => Threshold::Value(q.value),
        };
        let height = |q: Quantity| {
            if q.percent {
                profile.max() + rcm(profile, 0.01 * q.value)
            } else {
                q.value
            }
        };
        let count = |q: Quantity| q.value as usize;
        let significance = match (self.significance, self.nesting_index) {
            (SignificanceKind::Open, Some(q)) => Significance::Open(height(q)),
            (SignificanceKind::Closed, Some(q)) => Significance::Closed(height(q)),
            (SignificanceKind::Top, Some(q)) => Significance::Top(count(q)),
            (SignificanceKind::Bot, Some(q)) => Significance::Bot(count(q)),
            _ => Significance::All,
        };
        FcRequest {
            feature_type: self.feature_type,
            pruning: self.pruning,
            threshold,
            significance,
            attribute: self.attribute,
            statistic: self.statistic,
        }
    }
}

fn parse_pruning(
    w: &[String],
    options: ParseOptions,
) -> Result<(PruningType, ThresholdSpec), FcParseError> {
    let field = FcField::Pruning;
    let Some(first) = w.first() else {
        return Err(FcParseError::MissingValue { field });
    };
    let pruning = keyword(first, &PruningType::ALL, PruningType::token, field, options)?;
    let rest = &w[1..];
    if pruning == PruningType::None {
        no_more(rest, field)?;
        return Ok((pruning, ThresholdSpec::None));
    }
    if let [token] = rest {
        if options.matches(token, "opt") {
            return Ok((pruning, ThresholdSpec::Opt));
        }
    }
    let q = quantity(rest, field)?;
    if q.percent && !matches!(pruning, PruningType::Wolfprune | PruningType::Width) {
        return Err(FcParseError::PercentNotAllowed {
            field,
            token: first.clone(),
        });
    }
    check_percentage(q, field, &rest[0])?;
    Ok((pruning, ThresholdSpec::Quantity(q)))
}

fn parse_significance(
    w: &[String],
    options: ParseOptions,
) -> Result<(SignificanceKind, Option<Quantity>), FcParseError> {
    let field = FcField::Significance;
    let Some(first) = w.first() else {
        return Err(FcParseError::MissingValue { field });
    };
    let kind = keyword(
        first,
        &SignificanceKind::ALL,
        SignificanceKind::token,
        field,
        options,
    )?;
    let rest = &w[1..];
    if kind == SignificanceKind::All {
        no_more(rest, field)?;
        return Ok((kind, None));
    }
    let q = quantity(rest, field)?;
    if kind.takes_height() {
        if q.percent {
            check_percentage(q, field, &rest[0])?;
        }
    } else {
        if q.percent {
            return Err(FcParseError::PercentNotAllowed {
                field,
                token: first.clone(),
            });
        }
        if q.value < 0.0 || math::frac(q.value) != 0.0 {
            return Err(FcParseError::OutOfRange {
                field,
                token: rest[0].clone(),
            });
        }
    }
    Ok((kind, Some(q)))
}

fn parse_statistic(w: &[String], options: ParseOptions) -> Result<Statistic, FcParseError> {
    let field = FcField::Statistic;
    let Some(first) = w.first() else {
        return Err(FcParseError::MissingValue { field });
    };
    let token = keyword(first, &Statistic::TOKENS, |t| t, field, options)?;
    let rest = &w[1..];
    if token == "Perc" {
        let q = quantity(rest, field)?;
        if q.percent {
            return Err(FcParseError::PercentNotAllowed {
                field,
                token: first.clone(),
            });
        }
        return Ok(Statistic::Perc(q.value));
    }
    no_more(rest, field)?;
    Ok(Statistic::from_token(token, f64::NAN).expect("token is a statistic"))
}

impl FromStr for FcSpec {
    type Err = FcParseError;

    fn from_str(s: &str) -> Result<Self, FcParseError> {
        FcSpec::parse(s)
    }
}

impl fmt::Display for FcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FC;{};{}", self.feature_type, self.pruning)?;
        match self.threshold {
            ThresholdSpec::None => {}
            ThresholdSpec::Opt => f.write_str(" opt")?,
            ThresholdSpec::Quantity(q) => write!(f, " {q}")?,
        }
        write!(f, ";{}", self.significance)?;
        if let Some(q) = self.nesting_index {
            write!(f, " {q}")?;
        }
        write!(f, ";{};{}", self.attribute, self.statistic)
    }
}

impl fmt::Display for FcRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FC;{};{}", self.feature_type, self.pruning)?;
        match self.threshold {
            Threshold::None => {}
            Threshold::Opt => f.write_str(" opt")?,
            Threshold::Value(v) => write!(f, " {v}")?,
        }
        write!(
            f,
            ";{};{};{}",
            self.significance, self.attribute, self.statistic
        )
    }
}

impl FcRequest {
    /// The request as an FC specification without percentages.
    pub fn to_spec(&self) -> FcSpec {
        let nesting_index = match self.significance {
            Significance::All => None,
            other => Some(Quantity::absolute(other.nesting_index())),
        };
        FcSpec {
            feature_type: self.feature_type,
            pruning: self.pruning,
            threshold: match self.threshold {
                Threshold::None => ThresholdSpec::None,
                Threshold::Opt => ThresholdSpec::Opt,
                Threshold::Value(v) => ThresholdSpec::Quantity(Quantity::absolute(v)),
            },
            significance: match self.significance {
                Significance::All => SignificanceKind::All,
                Significance::Open(_) => SignificanceKind::Open,
                Significance::Closed(_) => SignificanceKind::Closed,
                Significance::Top(_) => SignificanceKind::Top,
                Significance::Bot(_) => SignificanceKind::Bot,
            },
            nesting_index,
            attribute: self.attribute,
            statistic: self.statistic,
        }
    }
}

/// Parses `raw` and resolves it against `profile`.
pub fn parse_fc(raw: &str, profile: &Profile) -> Result<FcRequest, FcParseError> {
    Ok(FcSpec::parse(raw)?.resolve(profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sine() -> Profile {
        let z = (0..2400)
            .map(|k| libm::sin(2.0 * core::f64::consts::PI * k as f64 * 0.5 / 120.0))
            .collect();
        Profile::new(z, 0.5).unwrap()
    }

    #[test]
    fn parses_the_canonical_form() {
        let spec = FcSpec::parse("FC;D;Wolfprune 5 %;All;HDh;Mean").unwrap();
        assert_eq!(spec.feature_type, FeatureType::Dale);
        assert_eq!(spec.pruning, PruningType::Wolfprune);
        assert_eq!(spec.threshold, ThresholdSpec::Quantity(Quantity::percent(5.0)));
        assert_eq!(spec.significance, SignificanceKind::All);
        assert_eq!(spec.nesting_index, None);
        assert_eq!(spec.attribute, AttributeType::Hdh);
        assert_eq!(spec.statistic, Statistic::Mean);
        assert_eq!(spec.to_string(), "FC;D;Wolfprune 5 %;All;HDh;Mean");
    }

    #[test]
    fn attached_percent_and_double_spaces() {
        let a = FcSpec::parse("FC;V;Wolfprune 5%;Top 5;PVh;Mean").unwrap();
        let b = FcSpec::parse("FC;V;Wolfprune  5  %;Top 5;PVh;Mean").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "FC;V;Wolfprune 5 %;Top 5;PVh;Mean");
    }

    #[test]
    fn none_pruning_and_opt() {
        let spec = FcSpec::parse("FC;D;None;All;HDv;Mean").unwrap();
        assert_eq!(spec.threshold, ThresholdSpec::None);
        let req = spec.resolve(&sine());
        assert!(req.threshold.value().is_nan());

        let spec = FcSpec::parse("FC;H;Width opt;All;HDw;Mean").unwrap();
        assert_eq!(spec.threshold, ThresholdSpec::Opt);
        assert_eq!(spec.resolve(&sine()).threshold, Threshold::Opt);
    }

    #[test]
    fn percentage_resolution() {
        let p = sine();
        let req = parse_fc("FC;D;Wolfprune 5 %;All;HDh;Mean", &p).unwrap();
        assert_eq!(req.threshold, Threshold::Value(0.01 * 5.0 * rz(&p)));
        let req = parse_fc("FC;D;Width 10 %;All;HDh;Mean", &p).unwrap();
        assert_eq!(req.threshold, Threshold::Value(0.01 * 10.0 * 1200.0));
        let req = parse_fc("FC;D;None;Closed 50 %;HDh;Mean", &p).unwrap();
        assert_eq!(req.significance, Significance::Closed(p.max() + rcm(&p, 0.5)));
    }

    #[test]
    fn perc_requires_a_limit() {
        let spec = FcSpec::parse("FC;D;None;All;HDh;Perc 0.5").unwrap();
        assert_eq!(spec.statistic, Statistic::Perc(0.5));
        assert_eq!(
            FcSpec::parse("FC;D;None;All;HDh;Perc"),
            Err(FcParseError::MissingValue {
                field: FcField::Statistic
            })
        );
    }

    #[test]
    fn malformed_strings() {
        let cases = [
            ("FC;D;None;All;HDh", FcField::Prefix),
            ("XX;D;None;All;HDh;Mean", FcField::Prefix),
            ("FC;Q;None;All;HDh;Mean", FcField::FeatureType),
            ("FC;D;Wolf 5;All;HDh;Mean", FcField::Pruning),
            ("FC;D;Wolfprune;All;HDh;Mean", FcField::Pruning),
            ("FC;D;VolS 5 %;All;HDh;Mean", FcField::Pruning),
            ("FC;D;Wolfprune five;All;HDh;Mean", FcField::Pruning),
            ("FC;D;None 3;All;HDh;Mean", FcField::Pruning),
            ("FC;D;Wolfprune -1;All;HDh;Mean", FcField::Pruning),
            ("FC;D;None;Top 2.5;HDh;Mean", FcField::Significance),
            ("FC;D;None;Open;HDh;Mean", FcField::Significance),
            ("FC;D;None;All 3;HDh;Mean", FcField::Significance),
            ("FC;D;None;All;Height;Mean", FcField::Attribute),
            ("FC;D;None;All;HDh;Median", FcField::Statistic),
            ("FC;D;None;All;HDh;Mean 3", FcField::Statistic),
            ("FC;D;Wolfprune inf;All;HDh;Mean", FcField::Pruning),
        ];
        for (raw, field) in cases {
            let err = FcSpec::parse(raw).unwrap_err();
            assert_eq!(err.field(), field, "{raw}: {err}");
        }
    }

    #[test]
    fn case_sensitivity() {
        assert!(FcSpec::parse("fc;d;wolfprune 5 %;all;hdh;mean").is_err());
        let spec = FcSpec::parse_with("fc;d;wolfprune 5 %;all;hdh;mean", ParseOptions::lenient())
            .unwrap();
        assert_eq!(spec, FcSpec::parse("FC;D;Wolfprune 5 %;All;HDh;Mean").unwrap());
    }

    #[test]
    fn request_round_trip() {
        let p = sine();
        for raw in [
            "FC;P;Wolfprune 5 %;All;Count;Density",
            "FC;V;Wolfprune 5 %;Top 5;PVh;Mean",
            "FC;D;None;Closed 0.25;HDl;Perc 1200.5",
            "FC;H;Width opt;Bot 3;HDw;Hist",
            "FC;D;VolS 0.001;Open 80 %;HDv;StdDev",
        ] {
            let req = parse_fc(raw, &p).unwrap();
            let again = parse_fc(&req.to_string(), &p).unwrap();
            assert_eq!(req, again, "{raw}");
            assert_eq!(FcSpec::parse(&req.to_spec().to_string()).unwrap(), req.to_spec());
        }
        let fields = vec!["FC", "D", "None", "All", "HDh", "Mean"].join(";");
        assert_eq!(parse_fc(&fields, &p).unwrap().to_string(), fields);
    }
}
