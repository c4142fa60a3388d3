//! Command-line front end. `run` is the whole program minus process exit,
//! so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::harmony::{harmonic_add, harmonic_inverse, verify_pcit, IsomorphismReport, VerifyConfig};
use crate::io::{emit_table, export_scl, resolve_tuning, TableFormat};
use crate::notation::{enharmonic_spellings, parse_note_name, render_note_name, NamingConvention};
use crate::notes::{members_of, note_of, Note};
use crate::pitch::PitchHz;
use crate::tuning::{make_ntet, PitchCoordinate, TuningSpace};

/// Exit status for validation and verification failures.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed command lines.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pitchclass", version, about = "Tuning spaces, notes and harmony groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
            Format::Pretty => TableFormat::Pretty,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Convention {
    A,
    C,
}

impl From<Convention> for NamingConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::A => NamingConvention::ARooted,
            Convention::C => NamingConvention::CRooted,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct OctaveRange(i64, i64);

impl FromStr for OctaveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected <lo>..<hi>, found {s:?}");
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
            None => {
                let k = s.trim().parse().map_err(|_| bad())?;
                (k, k)
            }
        };
        if lo > hi {
            return Err(format!("octave range {lo}..{hi} is empty"));
        }
        Ok(OctaveRange(lo, hi))
    }
}

#[derive(Debug, Clone, Copy)]
struct Coord(PitchCoordinate);

impl FromStr for Coord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected <k>,<i>, found {s:?}");
        let (k, i) = s.split_once(',').ok_or_else(bad)?;
        let k = k.trim().parse().map_err(|_| bad())?;
        let i = i.trim().parse().map_err(|_| bad())?;
        Ok(Coord(PitchCoordinate::new(k, i)))
    }
}

#[derive(Debug, clap::Args)]
#[group(required = true, multiple = false)]
struct PitchSelector {
    /// Pitch coordinate `<k>,<i>`.
    #[arg(long, allow_hyphen_values = true)]
    coord: Option<Coord>,
    /// Note name with octave index, `<name>@<k>` (12-step spaces only).
    #[arg(long, allow_hyphen_values = true)]
    name: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frequency table over a range of octaves.
    Table {
        /// Preset (`12tet@440`, `<n>tet@<hz>`, `<n>edo@<hz>`) or definition file.
        #[arg(long)]
        tuning: String,
        #[arg(long, default_value = "0..0", allow_hyphen_values = true)]
        octaves: OctaveRange,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, default_value_t = 3)]
        precision: usize,
    },
    /// Frequency of a single pitch.
    Freq {
        #[arg(long)]
        tuning: String,
        #[command(flatten)]
        pitch: PitchSelector,
        #[arg(long, default_value_t = 3)]
        precision: usize,
    },
    /// The note (octave-equivalence class) of a pitch and some of its members.
    Note {
        #[arg(long)]
        tuning: String,
        #[command(flatten)]
        pitch: PitchSelector,
        #[arg(long, default_value = "-1..1", allow_hyphen_values = true)]
        octaves: OctaveRange,
        #[arg(long, default_value_t = 3)]
        precision: usize,
    },
    /// Harmonic addition of two notes.
    Add {
        #[arg(long)]
        n: u32,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "a")]
        convention: Convention,
    },
    /// Harmonic inverse of a note.
    Inverse {
        #[arg(long)]
        n: u32,
        a: String,
        #[arg(long, value_enum, default_value = "a")]
        convention: Convention,
    },
    /// Class of a 12-TET note name.
    Parse {
        name: String,
        #[arg(long, value_enum, default_value = "a")]
        convention: Convention,
    },
    /// Check that the harmony group of order n is isomorphic to Z_n.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 64)]
        exhaustive_limit: u32,
        /// Sampled pairs and triples above the exhaustive limit.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write the space as a Scala scale file.
    ExportScl {
        #[arg(long)]
        tuning: String,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { 0 } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_FAILURE
        }
    }
}

/// Exit code for a verification report: 0 iff the isomorphism is confirmed.
pub fn report_exit_code(report: &IsomorphismReport) -> i32 {
    if report.confirmed() {
        0
    } else {
        EXIT_FAILURE
    }
}

fn select(space: &TuningSpace, pitch: &PitchSelector) -> Result<PitchCoordinate, Failure> {
    if let Some(Coord(c)) = pitch.coord {
        return Ok(space.canonical(c)?);
    }
    let text = pitch.name.as_deref().unwrap_or_default();
    if space.n() != 12 {
        return Err(Failure(format!("note names need a 12-step space, this one has {}", space.n())));
    }
    let (name, k) = text
        .rsplit_once('@')
        .ok_or_else(|| Failure(format!("expected <name>@<k>, found {text:?}")))?;
    let k: i64 = k.parse().map_err(|_| Failure(format!("bad octave index in {text:?}")))?;
    let class = parse_note_name(name, NamingConvention::ARooted)?;
    Ok(PitchCoordinate::new(k, class as u32))
}

fn note_arg(text: &str, n: u32, conv: NamingConvention) -> Result<u32, Failure> {
    if let Ok(class) = text.parse::<u32>() {
        if class >= n {
            return Err(Failure(format!("class {class} is outside 0..{n}")));
        }
        return Ok(class);
    }
    if n != 12 {
        return Err(Failure(format!("{text:?} is not a class index; note names need n = 12")));
    }
    Ok(parse_note_name(text, conv)? as u32)
}

fn group_space(n: u32) -> Result<Arc<TuningSpace>, Failure> {
    Ok(Arc::new(make_ntet(PitchHz::from_integer(440)?, n)?))
}

fn label(class: u32, n: u32, conv: NamingConvention) -> String {
    if n == 12 {
        render_note_name(class as u8, conv).map(str::to_string).unwrap_or_else(|_| class.to_string())
    } else {
        class.to_string()
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Table {
            tuning,
            octaves: OctaveRange(lo, hi),
            format,
            precision,
        } => {
            let space = resolve_tuning(&tuning)?;
            write!(out, "{}", emit_table(&space, lo, hi, format.into(), precision)?)?;
            if matches!(format, Format::Json) {
                writeln!(out)?;
            }
        }
        Command::Freq { tuning, pitch, precision } => {
            let space = resolve_tuning(&tuning)?;
            let coord = select(&space, &pitch)?;
            writeln!(out, "{:.precision$} Hz", space.pitch_at(coord)?.hz())?;
        }
        Command::Note {
            tuning,
            pitch,
            octaves: OctaveRange(lo, hi),
            precision,
        } => {
            let space = Arc::new(resolve_tuning(&tuning)?);
            let coord = select(&space, &pitch)?;
            let note = note_of(&space, coord)?;
            writeln!(out, "class {} of {}", note.class_index(), space.describe())?;
            if space.n() == 12 {
                let class = note.class_index() as u8;
                let spellings: Vec<_> = enharmonic_spellings(class, NamingConvention::ARooted)?
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                writeln!(
                    out,
                    "name: {} ({})",
                    render_note_name(class, NamingConvention::ARooted)?,
                    spellings.join(", ")
                )?;
            }
            writeln!(out, "members:")?;
            for member in members_of(&note, lo..=hi) {
                let pitch = space.pitch_at(member)?;
                writeln!(out, "  {member}  {}  {:.precision$} Hz", pitch.exact(), pitch.hz())?;
            }
        }
        Command::Add { n, a, b, convention } => {
            let conv = convention.into();
            let space = group_space(n)?;
            let x = Note::new(space.clone(), note_arg(&a, n, conv)? as u64);
            let y = Note::new(space, note_arg(&b, n, conv)? as u64);
            let sum = harmonic_add(&x, &y)?;
            writeln!(out, "{}", label(sum.class_index(), n, conv))?;
            writeln!(
                out,
                "{} + {} = {} (mod {n})",
                x.class_index(),
                y.class_index(),
                sum.class_index()
            )?;
        }
        Command::Inverse { n, a, convention } => {
            let conv = convention.into();
            let x = Note::new(group_space(n)?, note_arg(&a, n, conv)? as u64);
            let inv = harmonic_inverse(&x);
            writeln!(out, "{}", label(inv.class_index(), n, conv))?;
            writeln!(out, "-{} = {} (mod {n})", x.class_index(), inv.class_index())?;
        }
        Command::Parse { name, convention } => {
            writeln!(out, "{}", parse_note_name(&name, convention.into())?)?;
        }
        Command::Verify {
            n,
            exhaustive_limit,
            samples,
            json,
        } => {
            let config = VerifyConfig {
                exhaustive_limit,
                samples,
                ..VerifyConfig::default()
            };
            let report = verify_pcit(n, &config)?;
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                writeln!(out, "{report}")?;
            }
            return Ok(report_exit_code(&report));
        }
        Command::ExportScl { tuning, out: path } => {
            let space = resolve_tuning(&tuning)?;
            let text = export_scl(&space);
            match path {
                Some(path) => std::fs::write(&path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                None => write!(out, "{text}")?,
            }
        }
    }
    Ok(0)
}
