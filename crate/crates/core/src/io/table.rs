//! Frequency tables over a range of octaves.
//!
//! Each octave contributes `n + 1` rows, both endpoints included. The top row
//! of octave `k` is the same pitch as the first row of octave `k + 1` and is
//! flagged as shared.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{DomainError, TuningError};
use crate::notation::{render_note_name, NamingConvention};
use crate::tuning::{PitchCoordinate, TuningSpace};

pub const DEFAULT_PRECISION: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Pretty,
}

impl FromStr for TableFormat {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "pretty" => Ok(TableFormat::Pretty),
            other => Err(DomainError::new(format!("unknown table format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub k: i64,
    pub i: u32,
    pub exact: String,
    pub hz: f64,
    pub name: Option<String>,
    #[serde(skip)]
    pub hz_text: String,
    /// True for `(k, n)`, which is also `(k + 1, 0)`.
    #[serde(skip)]
    pub shared: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable {
    pub rows: Vec<TableRow>,
    pub precision: usize,
}

pub fn frequency_table(
    space: &TuningSpace,
    k_lo: i64,
    k_hi: i64,
    precision: usize,
) -> Result<FrequencyTable, TuningError> {
    if k_lo > k_hi {
        return Err(DomainError::new(format!("empty octave range {k_lo}..{k_hi}")).into());
    }
    let n = space.n();
    let mut rows = Vec::with_capacity(((k_hi - k_lo + 1) as usize) * (n as usize + 1));
    for k in k_lo..=k_hi {
        for i in 0..=n {
            let pitch = space.pitch_at(PitchCoordinate::new(k, i))?;
            let hz_text = format!("{:.precision$}", pitch.hz());
            let name = (n == 12)
                .then(|| render_note_name((i % 12) as u8, NamingConvention::ARooted).map(str::to_string))
                .transpose()?;
            rows.push(TableRow {
                k,
                i,
                exact: pitch.exact().to_string(),
                hz: hz_text.parse().expect("formatted float"),
                name,
                hz_text,
                shared: i == n,
            });
        }
    }
    Ok(FrequencyTable { rows, precision })
}

impl FrequencyTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,i,exact,hz,name\n");
        for row in &self.rows {
            let name = row.name.as_deref().unwrap_or("");
            let _ = writeln!(out, "{},{},{},{},{}", row.k, row.i, row.exact, row.hz_text, name);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }

    pub fn to_pretty(&self) -> String {
        let exact_width = self.rows.iter().map(|r| r.exact.chars().count()).max().unwrap_or(0).max(5);
        let hz_width = self.rows.iter().map(|r| r.hz_text.len()).max().unwrap_or(0).max(2);
        let mut out = format!("{:>4} {:>4}  {:<exact_width$}  {:>hz_width$}  name\n", "k", "i", "exact", "hz");
        for row in &self.rows {
            let name = row.name.as_deref().unwrap_or("-");
            let _ = write!(
                out,
                "{:>4} {:>4}  {:<exact_width$}  {:>hz_width$}  {name}",
                row.k, row.i, row.exact, row.hz_text
            );
            if row.shared {
                let _ = write!(out, "  = ({}, 0)", row.k + 1);
            }
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => self.to_json(),
            TableFormat::Pretty => self.to_pretty(),
        }
    }
}

pub fn emit_table(
    space: &TuningSpace,
    k_lo: i64,
    k_hi: i64,
    format: TableFormat,
    precision: usize,
) -> Result<String, TuningError> {
    Ok(frequency_table(space, k_lo, k_hi, precision)?.render(format))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitch::PitchHz;
    use crate::tuning::{make_nedo, make_ntet};

    fn hz(x: i64) -> PitchHz {
        PitchHz::from_integer(x).unwrap()
    }

    #[test]
    fn twelve_tet_base_octave() {
        let space = make_ntet(hz(440), 12).unwrap();
        let table = frequency_table(&space, 0, 0, 3).unwrap();
        assert_eq!(table.rows.len(), 13);
        let text: Vec<_> = table.rows.iter().map(|r| r.hz_text.as_str()).collect();
        assert_eq!(
            text,
            [
                "440.000", "466.164", "493.883", "523.251", "554.365", "587.330", "622.254", "659.255", "698.456",
                "739.989", "783.991", "830.609", "880.000"
            ]
        );
        assert_eq!(table.rows[1].exact, "440*2^(1/12)");
        assert_eq!(table.rows[3].name.as_deref(), Some("C"));
        assert_eq!(table.rows[12].name.as_deref(), Some("A"));
        assert!(table.rows[12].shared && !table.rows[11].shared);
    }

    #[test]
    fn edo_two_octaves() {
        let space = make_nedo(hz(100), 5).unwrap();
        let table = frequency_table(&space, 0, 1, 3).unwrap();
        assert_eq!(table.rows.len(), 12);
        let exact: Vec<_> = table.rows.iter().map(|r| r.exact.as_str()).collect();
        assert_eq!(exact, ["100", "120", "140", "160", "180", "200", "200", "240", "280", "320", "360", "400"]);
        assert!(table.rows.iter().all(|r| r.name.is_none()));
        assert!(frequency_table(&space, 1, 0, 3).is_err());
    }

    #[test]
    fn one_octave_has_n_plus_one_rows() {
        for n in [1, 2, 7, 12, 31] {
            let space = make_ntet(hz(440), n).unwrap();
            assert_eq!(frequency_table(&space, -2, -2, 3).unwrap().rows.len(), n as usize + 1);
        }
    }

    #[test]
    fn formats() {
        let space = make_ntet(hz(440), 12).unwrap();
        let csv = emit_table(&space, 0, 0, TableFormat::Csv, 3).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("k,i,exact,hz,name"));
        assert_eq!(lines.next(), Some("0,0,440,440.000,A"));
        assert_eq!(lines.next(), Some("0,1,440*2^(1/12),466.164,A#"));

        let json = emit_table(&space, 0, 0, TableFormat::Json, 3).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(rows.as_array().unwrap().len(), 13);
        assert_eq!(rows[6]["hz"], 622.254);
        assert_eq!(rows[6]["k"], 0);
        assert_eq!(rows[6]["i"], 6);
        assert_eq!(rows[6]["exact"], "440*2^(1/2)");
        assert_eq!(rows[6]["name"], "D#");

        let edo = make_nedo(hz(100), 5).unwrap();
        let json = emit_table(&edo, 0, 0, TableFormat::Json, 1).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(rows[0]["name"].is_null());

        let pretty = emit_table(&space, 0, 1, TableFormat::Pretty, 3).unwrap();
        assert!(pretty.contains("= (1, 0)"));
        assert!(pretty.lines().next().unwrap().contains("exact"));
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<TableFormat>().unwrap(), TableFormat::Csv);
        assert!("xml".parse::<TableFormat>().is_err());
    }
}
