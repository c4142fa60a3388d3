//! Line-oriented tuning definitions and the built-in presets.
//!
//! ```text
//! name: example
//! kind: custom
//! n: 4
//! standard_pitch: 500
//! steps: ratio 5/4; rootoffset 1/5; rootoffset 1/20; rootoffset 1/2
//! ```
//!
//! Several `key: value` pairs may share a line when separated by commas.
//! Lines starting with `#` are comments.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::error::TuningError;
use crate::pitch::PitchHz;
use crate::tuning::{make_custom, make_nedo, make_ntet, Step, TuningKind, TuningSpace};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Tuning(#[from] TuningError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuningDefinition {
    pub name: Option<String>,
    pub kind: TuningKind,
    pub n: u32,
    pub standard_pitch: PitchHz,
    pub steps: Vec<Step>,
}

fn syntax(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Syntax {
        line,
        message: message.into(),
    }
}

impl TuningDefinition {
    pub fn parse(text: &str) -> Result<TuningDefinition, LoadError> {
        let mut name = None;
        let mut kind = None;
        let mut n = None;
        let mut standard_pitch = None;
        let mut steps: Option<(usize, Vec<Step>)> = None;

        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            for pair in trimmed.split(',') {
                let pair = pair.trim();
                if pair.is_empty() {
                    continue;
                }
                let (key, value) = pair
                    .split_once(':')
                    .ok_or_else(|| syntax(line, format!("expected `key: value`, found {pair:?}")))?;
                let (key, value) = (key.trim(), value.trim());
                let duplicate = || syntax(line, format!("duplicate key `{key}`"));
                match key {
                    "name" => {
                        if name.replace(value.to_string()).is_some() {
                            return Err(duplicate());
                        }
                    }
                    "kind" => {
                        let parsed = match value.to_ascii_lowercase().as_str() {
                            "tet" => TuningKind::Tet,
                            "edo" => TuningKind::Edo,
                            "custom" => TuningKind::Custom,
                            other => return Err(syntax(line, format!("unknown kind {other:?}: expected tet, edo or custom"))),
                        };
                        if kind.replace(parsed).is_some() {
                            return Err(duplicate());
                        }
                    }
                    "n" => {
                        let parsed: u32 = value
                            .parse()
                            .ok()
                            .filter(|&v| v > 0)
                            .ok_or_else(|| syntax(line, format!("n must be a positive integer, found {value:?}")))?;
                        if n.replace(parsed).is_some() {
                            return Err(duplicate());
                        }
                    }
                    "standard_pitch" => {
                        let parsed: PitchHz = value.parse().map_err(|e| syntax(line, format!("{e}")))?;
                        if standard_pitch.replace(parsed).is_some() {
                            return Err(duplicate());
                        }
                    }
                    "steps" => {
                        let parsed = value
                            .split(';')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse::<Step>().map_err(|e| syntax(line, e.to_string())))
                            .collect::<Result<Vec<_>, _>>()?;
                        if steps.replace((line, parsed)).is_some() {
                            return Err(duplicate());
                        }
                    }
                    other => return Err(syntax(line, format!("unknown key `{other}`"))),
                }
            }
        }

        let kind = kind.ok_or(LoadError::Missing("kind"))?;
        let n = n.ok_or(LoadError::Missing("n"))?;
        let standard_pitch = standard_pitch.ok_or(LoadError::Missing("standard_pitch"))?;
        let steps = match (kind, steps) {
            (TuningKind::Custom, None) => return Err(LoadError::Missing("steps")),
            (TuningKind::Custom, Some((line, steps))) => {
                if steps.len() != n as usize {
                    return Err(syntax(line, format!("n is {n} but {} steps are listed", steps.len())));
                }
                steps
            }
            (_, Some((line, _))) => return Err(syntax(line, format!("`steps` is only allowed for kind custom, not {kind}"))),
            (_, None) => Vec::new(),
        };
        Ok(TuningDefinition {
            name,
            kind,
            n,
            standard_pitch,
            steps,
        })
    }

    pub fn build(&self) -> Result<TuningSpace, TuningError> {
        let pitch = self.standard_pitch.clone();
        match self.kind {
            TuningKind::Tet => make_ntet(pitch, self.n),
            TuningKind::Edo => make_nedo(pitch, self.n),
            TuningKind::Custom => make_custom(pitch, self.steps.clone()),
        }
    }

    pub fn from_space(space: &TuningSpace, name: Option<String>) -> TuningDefinition {
        let steps = match space.kind() {
            TuningKind::Custom => space.step_set().steps().to_vec(),
            _ => Vec::new(),
        };
        TuningDefinition {
            name,
            kind: space.kind(),
            n: space.n(),
            standard_pitch: space.standard_pitch().clone(),
            steps,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name: {name}");
        }
        let _ = writeln!(out, "kind: {}", self.kind);
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "standard_pitch: {}", self.standard_pitch);
        if !self.steps.is_empty() {
            let steps: Vec<_> = self.steps.iter().map(Step::to_string).collect();
            let _ = writeln!(out, "steps: {}", steps.join("; "));
        }
        out
    }
}

pub fn load_tuning(text: &str) -> Result<TuningSpace, LoadError> {
    Ok(TuningDefinition::parse(text)?.build()?)
}

pub fn load_tuning_file(path: &Path) -> Result<TuningSpace, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_tuning(&text)
}

/// Recognizes `<n>tet@<hz>` and `<n>edo@<hz>`; `None` if `text` is not a
/// preset at all.
pub fn parse_preset(text: &str) -> Option<Result<TuningSpace, TuningError>> {
    let (head, hz) = text.trim().split_once('@')?;
    let head = head.to_ascii_lowercase();
    let (count, kind) = match head.strip_suffix("tet") {
        Some(count) => (count, TuningKind::Tet),
        None => (head.strip_suffix("edo")?, TuningKind::Edo),
    };
    let n: u32 = count.parse().ok()?;
    let pitch: PitchHz = match hz.parse() {
        Ok(p) => p,
        Err(e) => return Some(Err(e.into())),
    };
    Some(match kind {
        TuningKind::Tet => make_ntet(pitch, n),
        _ => make_nedo(pitch, n),
    })
}

/// A preset name or a path to a definition file.
pub fn resolve_tuning(spec: &str) -> Result<TuningSpace, LoadError> {
    match parse_preset(spec) {
        Some(result) => Ok(result?),
        None => load_tuning_file(Path::new(spec)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuning::PitchCoordinate;

    #[test]
    fn loads_tet_on_one_line() {
        let space = load_tuning("kind: tet, n: 12, standard_pitch: 440").unwrap();
        assert_eq!(space, make_ntet(PitchHz::from_integer(440).unwrap(), 12).unwrap());
    }

    #[test]
    fn loads_custom_example() {
        let text = "kind: custom, n: 4, standard_pitch: 500, steps: ratio 5/4; rootoffset 1/5; rootoffset 1/20; rootoffset 1/2";
        let space = load_tuning(text).unwrap();
        assert_eq!(space.pitch_at(PitchCoordinate::new(0, 2)).unwrap(), PitchHz::from_integer(725).unwrap());
    }

    #[test]
    fn closure_violation_surfaces() {
        let err = load_tuning("kind: custom, n: 1, steps: ratio 3/2, standard_pitch: 100").unwrap_err();
        assert!(matches!(err, LoadError::Tuning(TuningError::ClosureViolation { .. })), "{err}");
    }

    #[test]
    fn syntax_errors_have_line_numbers() {
        let err = load_tuning("# header\nkind: tet\nn twelve\n").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 3, .. }), "{err}");
        let err = load_tuning("kind: tet\nn: 12\nstandard_pitch: -3\n").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 3, .. }), "{err}");
        let err = load_tuning("kind: tet\nn: 12\nn: 13\nstandard_pitch: 440").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 3, .. }), "{err}");
        let err = load_tuning("kind: tet\ncolour: blue").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 2, .. }), "{err}");
        let err = load_tuning("kind: flat\n").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 1, .. }), "{err}");
        let err = load_tuning("kind: custom\nn: 2\nstandard_pitch: 1\nsteps: ratio 2/1").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 4, .. }), "{err}");
        let err = load_tuning("kind: tet\nn: 2\nstandard_pitch: 1\nsteps: ratio 2/1; ratio 1/1").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 4, .. }), "{err}");
        let err = load_tuning("kind: custom\nn: 1\nstandard_pitch: 1\nsteps: double 2/1").unwrap_err();
        assert!(matches!(err, LoadError::Syntax { line: 4, .. }), "{err}");
        assert!(matches!(load_tuning("kind: tet\nn: 12").unwrap_err(), LoadError::Missing("standard_pitch")));
        assert!(matches!(load_tuning("n: 0").unwrap_err(), LoadError::Syntax { line: 1, .. }));
    }

    #[test]
    fn text_round_trip() {
        let text = "name: five hundred\nkind: custom\nn: 4\nstandard_pitch: 500\nsteps: ratio 5/4; rootoffset 1/5; rootoffset 1/20; rootoffset 1/2\n";
        let def = TuningDefinition::parse(text).unwrap();
        assert_eq!(def.to_text(), text);
        let space = def.build().unwrap();
        assert_eq!(TuningDefinition::from_space(&space, Some("five hundred".into())), def);
        let fractional = TuningDefinition::parse("kind: edo, n: 7, standard_pitch: 261.626").unwrap();
        assert_eq!(TuningDefinition::parse(&fractional.to_text()).unwrap(), fractional);
    }

    #[test]
    fn presets() {
        let hz = |x| PitchHz::from_integer(x).unwrap();
        assert_eq!(parse_preset("12tet@440").unwrap().unwrap(), make_ntet(hz(440), 12).unwrap());
        assert_eq!(parse_preset("5EDO@100").unwrap().unwrap(), make_nedo(hz(100), 5).unwrap());
        assert_eq!(
            parse_preset("19tet@261.626").unwrap().unwrap().standard_pitch(),
            &"261.626".parse::<PitchHz>().unwrap()
        );
        assert!(parse_preset("0tet@440").unwrap().is_err());
        assert!(parse_preset("12tet@-1").unwrap().is_err());
        assert!(parse_preset("tuning.txt").is_none());
        assert!(parse_preset("xtet@440").is_none());
        assert!(matches!(resolve_tuning("/nonexistent/file").unwrap_err(), LoadError::Io { .. }));
    }
}
