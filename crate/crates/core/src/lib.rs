//! Tuning spaces built from a standard pitch and a step set, notes as
//! octave-equivalence classes, and the harmony group of a space together
//! with an exhaustive check that it is isomorphic to the integers mod `n`.
//!
//! Pitches are exact: every value is a rational times a rational power of
//! two, so octave equivalence, closure and ordering are decided without
//! floating-point error. Decimal hertz are produced only for display.

pub mod cli;
pub mod error;
pub mod exact;
pub mod harmony;
pub mod io;
pub mod notation;
pub mod notes;
pub mod pitch;
pub mod tuning;

pub use error::{DomainError, TuningError};
pub use exact::Exact;
pub use harmony::{
    harmonic_add, harmonic_inverse, note_from_steps, step_on_note, verify_group, verify_pcit, CayleyTable,
    Counterexample, GroupReport, HarmonyGroup, IsomorphismReport, VerifyConfig,
};
pub use notation::{
    enharmonic_spellings, parse_note_name, render_note_name, Letter, NamingConvention, NoteName, NoteNameError,
};
pub use notes::{
    concert_a, members_of, middle_c, note_of, octave_equivalent, octave_equivalent_by_frequency, Note, NoteSet,
};
pub use pitch::{locate_octave, octave_of, OctaveInterval, PitchHz};
pub use tuning::{make_custom, make_nedo, make_ntet, PitchCoordinate, Step, StepSet, TuningKind, TuningSpace};
