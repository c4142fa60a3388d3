//! Scala `.scl` export, and import of the files this crate writes.
//!
//! Rational partition points are written as `p/q`, irrational ones as cents
//! with six decimals. Cents literals are read back exactly as `2^(c/1200)`,
//! so a tempered scale survives the round trip without drift.

use std::fmt::Write as _;

use num::rational::BigRational;
use thiserror::Error;

use crate::error::TuningError;
use crate::exact::{parse_rational, ratio_string, Exact};
use crate::pitch::PitchHz;
use crate::tuning::{make_custom, Step, TuningSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SclError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("count line says {declared} pitches but {found} follow")]
    CountMismatch { declared: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SclPitch {
    Ratio(BigRational),
    /// The literal as written, and its exact value.
    Cents(String, Exact),
}

impl SclPitch {
    pub fn value(&self) -> Exact {
        match self {
            SclPitch::Ratio(r) => Exact::from_rational(r.clone()).expect("validated positive"),
            SclPitch::Cents(_, v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scl {
    pub description: String,
    /// Pitches `1..=n` relative to the scale root; the last is the period.
    pub pitches: Vec<SclPitch>,
}

fn pitch_line(value: &Exact) -> String {
    match value.to_rational() {
        Some(r) => ratio_string(&r),
        None => format!("{:.6}", value.cents()),
    }
}

pub fn export_scl(space: &TuningSpace) -> String {
    export_scl_with_description(space, &space.describe())
}

pub fn export_scl_with_description(space: &TuningSpace, description: &str) -> String {
    let n = space.n();
    let mut out = String::new();
    let _ = writeln!(out, "! {}", description.replace('\n', " "));
    let _ = writeln!(out, "!");
    let _ = writeln!(out, "{}", description.replace('\n', " "));
    let _ = writeln!(out, " {n}");
    let _ = writeln!(out, "!");
    for i in 1..=n {
        let _ = writeln!(out, " {}", pitch_line(space.step_set().multiplier(i)));
    }
    out
}

fn syntax(line: usize, message: impl Into<String>) -> SclError {
    SclError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_scl(text: &str) -> Result<Scl, SclError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(index, line)| (index + 1, line))
        .filter(|(_, line)| !line.starts_with('!'));

    let (_, description) = lines.next().ok_or(SclError::Missing("description line"))?;
    let (count_line, count) = lines.next().ok_or(SclError::Missing("pitch count line"))?;
    let declared: usize = count
        .split_whitespace()
        .next()
        .and_then(|token| token.parse().ok())
        .ok_or_else(|| syntax(count_line, format!("expected a pitch count, found {count:?}")))?;

    let mut pitches = Vec::with_capacity(declared);
    for (line, raw) in lines {
        let Some(token) = raw.split_whitespace().next() else {
            continue;
        };
        let pitch = if token.contains('.') {
            let value = Exact::from_cents_str(token).ok_or_else(|| syntax(line, format!("bad cents value {token:?}")))?;
            SclPitch::Cents(token.to_string(), value)
        } else {
            let ratio = parse_rational(token)
                .filter(|r| *r > BigRational::from_integer(0.into()))
                .ok_or_else(|| syntax(line, format!("bad ratio {token:?}")))?;
            SclPitch::Ratio(ratio)
        };
        pitches.push(pitch);
    }
    if pitches.len() != declared {
        return Err(SclError::CountMismatch {
            declared,
            found: pitches.len(),
        });
    }
    Ok(Scl {
        description: description.trim().to_string(),
        pitches,
    })
}

impl Scl {
    /// Partition multipliers `1 = m_0 < m_1 < … < m_n`.
    pub fn multipliers(&self) -> Vec<Exact> {
        std::iter::once(Exact::one())
            .chain(self.pitches.iter().map(SclPitch::value))
            .collect()
    }

    /// Rebuilds a space at `standard_pitch` whose steps are the ratios
    /// between consecutive scale degrees.
    pub fn to_space(&self, standard_pitch: PitchHz) -> Result<TuningSpace, TuningError> {
        let steps = self
            .multipliers()
            .windows(2)
            .map(|w| Step::Ratio(&w[1] / &w[0]))
            .collect();
        make_custom(standard_pitch, steps)
    }
}
