//! Pitches as positive reals and the octave intervals they generate.

use std::fmt;
use std::str::FromStr;

use crate::error::DomainError;
use crate::exact::Exact;

/// A pitch in hertz, held exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PitchHz(Exact);

impl PitchHz {
    pub fn new(value: Exact) -> Self {
        PitchHz(value)
    }

    pub fn from_f64(hz: f64) -> Result<Self, DomainError> {
        Exact::from_f64(hz)
            .map(PitchHz)
            .ok_or_else(|| DomainError::new(format!("pitch must be a positive finite number, got {hz}")))
    }

    pub fn from_integer(hz: i64) -> Result<Self, DomainError> {
        Exact::from_integer(hz)
            .map(PitchHz)
            .ok_or_else(|| DomainError::new(format!("pitch must be positive, got {hz}")))
    }

    pub fn exact(&self) -> &Exact {
        &self.0
    }

    pub fn hz(&self) -> f64 {
        self.0.to_f64()
    }

    /// `2^k · self`.
    pub fn octave_shift(&self, k: i64) -> PitchHz {
        PitchHz(self.0.scale_pow2(k))
    }
}

impl From<Exact> for PitchHz {
    fn from(value: Exact) -> Self {
        PitchHz(value)
    }
}

impl FromStr for PitchHz {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<Exact>()
            .map(PitchHz)
            .map_err(|_| DomainError::new(format!("invalid pitch {s:?}: expected a positive decimal or rational")))
    }
}

impl fmt::Display for PitchHz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The closed interval `[2^k·root, 2^(k+1)·root]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctaveInterval {
    pub root: PitchHz,
    pub k: i64,
    pub lo: PitchHz,
    pub hi: PitchHz,
}

impl OctaveInterval {
    /// Closed membership, as the interval is defined.
    pub fn contains(&self, probe: &PitchHz) -> bool {
        &self.lo <= probe && probe <= &self.hi
    }

    /// Half-open membership `[lo, hi)` used to pick a unique octave.
    pub fn contains_half_open(&self, probe: &PitchHz) -> bool {
        &self.lo <= probe && probe < &self.hi
    }
}

pub fn octave_of(root: &PitchHz, k: i64) -> OctaveInterval {
    OctaveInterval {
        root: root.clone(),
        k,
        lo: root.octave_shift(k),
        hi: root.octave_shift(k + 1),
    }
}

/// The unique `k` with `2^k·root <= probe < 2^(k+1)·root`.
///
/// Boundary pitches belong to the upper octave. The computation is exact,
/// so no log rounding can misplace a boundary.
pub fn locate_octave(root: &PitchHz, probe: &PitchHz) -> i64 {
    (probe.exact() / root.exact()).floor_log2()
}
