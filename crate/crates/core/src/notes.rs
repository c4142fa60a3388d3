//! Octave equivalence and notes.
//!
//! Two pitches of a space are octave equivalent when they sit at the same
//! step index of their octaves. A [`Note`] is one such class, stored by its
//! index since the class itself is infinite.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use crate::error::TuningError;
use crate::exact::Exact;
use crate::pitch::PitchHz;
use crate::tuning::{make_ntet, PitchCoordinate, TuningSpace};

/// True iff the canonical step indices of `a` and `b` agree.
pub fn octave_equivalent(space: &TuningSpace, a: PitchCoordinate, b: PitchCoordinate) -> Result<bool, TuningError> {
    Ok(space.canonical(a)?.i == space.canonical(b)?.i)
}

/// Decides equivalence from pitches alone: with `a` the lower pitch,
/// `b ~ a` iff `b = 2^(k_b - k_a)·a` exactly.
pub fn octave_equivalent_by_frequency(
    space: &TuningSpace,
    a: PitchCoordinate,
    b: PitchCoordinate,
) -> Result<bool, TuningError> {
    let (mut a, mut b) = (space.canonical(a)?, space.canonical(b)?);
    let (mut fa, mut fb) = (space.pitch_at(a)?, space.pitch_at(b)?);
    if fa > fb {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    Ok(*fb.exact() == fa.exact().scale_pow2(b.k - a.k))
}

/// An octave-equivalence class of a tuning space.
#[derive(Clone, Debug)]
pub struct Note {
    space: Arc<TuningSpace>,
    class_index: u32,
}

impl Note {
    /// The class with index `class_index mod n`.
    pub fn new(space: Arc<TuningSpace>, class_index: u64) -> Note {
        let class_index = (class_index % space.n() as u64) as u32;
        Note { space, class_index }
    }

    /// The tuning note: the class containing the standard pitch.
    pub fn tuning_note(space: Arc<TuningSpace>) -> Note {
        Note::new(space, 0)
    }

    pub fn class_index(&self) -> u32 {
        self.class_index
    }

    pub fn space(&self) -> &Arc<TuningSpace> {
        &self.space
    }

    pub fn n(&self) -> u32 {
        self.space.n()
    }

    pub fn same_space(&self, other: &Note) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    /// Members `ν_{k,i}` for each `k` in `k_range`, ascending.
    pub fn members(&self, k_range: RangeInclusive<i64>) -> Vec<PitchCoordinate> {
        k_range.map(|k| PitchCoordinate::new(k, self.class_index)).collect()
    }
}

impl PartialEq for Note {
    fn eq(&self, other: &Self) -> bool {
        self.class_index == other.class_index && self.same_space(other)
    }
}

impl Eq for Note {}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[ν_k,{}]", self.class_index)
    }
}

pub fn note_of(space: &Arc<TuningSpace>, coord: PitchCoordinate) -> Result<Note, TuningError> {
    let c = space.canonical(coord)?;
    Ok(Note::new(space.clone(), c.i as u64))
}

pub fn members_of(note: &Note, k_range: RangeInclusive<i64>) -> Vec<PitchCoordinate> {
    note.members(k_range)
}

/// All `n` notes of a space, in index order.
#[derive(Clone, Debug)]
pub struct NoteSet {
    space: Arc<TuningSpace>,
    notes: Vec<Note>,
}

impl NoteSet {
    pub fn new(space: Arc<TuningSpace>) -> NoteSet {
        let notes = (0..space.n() as u64).map(|i| Note::new(space.clone(), i)).collect();
        NoteSet { space, notes }
    }

    pub fn space(&self) -> &Arc<TuningSpace> {
        &self.space
    }

    pub fn notes(&self) -> &[Note] {
        &self.notes
    }

    pub fn len(&self) -> usize {
        self.notes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.notes.is_empty()
    }

    pub fn get(&self, class_index: usize) -> Option<&Note> {
        self.notes.get(class_index)
    }
}

fn concert_space() -> TuningSpace {
    make_ntet(PitchHz::new(Exact::from_integer(440).expect("positive")), 12).expect("12-TET is valid")
}

/// 12-TET at 440 Hz with Concert A, `ν_{0,0}`.
pub fn concert_a() -> (TuningSpace, PitchCoordinate) {
    (concert_space(), PitchCoordinate::new(0, 0))
}

/// 12-TET at 440 Hz with middle C, `ν_{-1,3}`.
pub fn middle_c() -> (TuningSpace, PitchCoordinate) {
    (concert_space(), PitchCoordinate::new(-1, 3))
}
