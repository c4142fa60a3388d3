//! Tuning definition files, frequency tables and Scala export.

pub mod definition;
pub mod scl;
pub mod table;

pub use definition::{load_tuning, load_tuning_file, parse_preset, resolve_tuning, LoadError, TuningDefinition};
pub use scl::{export_scl, export_scl_with_description, parse_scl, Scl, SclError, SclPitch};
pub use table::{emit_table, frequency_table, FrequencyTable, TableFormat, TableRow, DEFAULT_PRECISION};
