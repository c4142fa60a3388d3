//! Step sets and tuning spaces.
//!
//! A step carries partition point `i` of an octave to point `i + 1`. Two rule
//! kinds are supported: a multiplicative [`Step::Ratio`] and a
//! [`Step::RootOffset`] that adds a fixed fraction of the octave root. Both
//! commute with octave doubling, so a space is fully described by the
//! multipliers of one octave relative to its root.

use std::fmt;
use std::str::FromStr;

use num::rational::{BigRational, Rational64};
use num::traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{DomainError, TuningError};
use crate::exact::{parse_rational, Exact};
use crate::pitch::PitchHz;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// `ν ↦ r·ν`.
    Ratio(Exact),
    /// `ν ↦ ν + q·ν_{k,0}`, where `ν_{k,0}` is the root of the current octave.
    RootOffset(BigRational),
}

impl Step {
    pub fn ratio(p: i64, q: i64) -> Result<Step, DomainError> {
        if q == 0 {
            return Err(DomainError::new("ratio denominator is zero"));
        }
        Exact::from_rational(BigRational::new(p.into(), q.into()))
            .map(Step::Ratio)
            .ok_or_else(|| DomainError::new(format!("ratio {p}/{q} is not positive")))
    }

    pub fn root_offset(p: i64, q: i64) -> Result<Step, DomainError> {
        if q == 0 {
            return Err(DomainError::new("offset denominator is zero"));
        }
        Ok(Step::RootOffset(BigRational::new(p.into(), q.into())))
    }

    /// The equal-tempered step `2^(1/n)`.
    pub fn tempered(n: u32) -> Step {
        Step::Ratio(Exact::pow2(Rational64::new(1, n as i64)))
    }

    /// Applies the rule to a pitch given as a multiple of its octave root.
    fn apply(&self, multiplier: &Exact) -> Option<Exact> {
        match self {
            Step::Ratio(r) => Some(multiplier * r),
            Step::RootOffset(q) => {
                let m = multiplier.to_rational()?;
                // A non-positive result is reported as a monotonicity failure.
                Some(Exact::from_rational(m + q).unwrap_or_else(|| multiplier.clone()))
            }
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Ratio(r) => match r.to_rational() {
                Some(r) => write!(f, "ratio {}/{}", r.numer(), r.denom()),
                None => write!(f, "ratio {r}"),
            },
            Step::RootOffset(q) => write!(f, "rootoffset {}/{}", q.numer(), q.denom()),
        }
    }
}

impl FromStr for Step {
    type Err = DomainError;

    /// `ratio p/q` or `rootoffset p/q`; ratios may also be `2^(a/b)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, value) = s
            .split_once(char::is_whitespace)
            .ok_or_else(|| DomainError::new(format!("step {s:?}: expected `ratio p/q` or `rootoffset p/q`")))?;
        let value = value.trim();
        match kind.to_ascii_lowercase().as_str() {
            "ratio" => value
                .parse::<Exact>()
                .map(Step::Ratio)
                .map_err(|_| DomainError::new(format!("step {s:?}: ratio must be a positive rational"))),
            "rootoffset" => parse_rational(value)
                .map(Step::RootOffset)
                .ok_or_else(|| DomainError::new(format!("step {s:?}: offset must be a rational"))),
            other => Err(DomainError::new(format!("unknown step kind {other:?}"))),
        }
    }
}

/// An ordered, validated list of steps closing exactly one octave.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepSet {
    steps: Vec<Step>,
    /// `partition[i] = ν_{k,i} / ν_{k,0}`, for `i` in `0..=n`.
    partition: Vec<Exact>,
}

impl StepSet {
    pub fn new(steps: Vec<Step>) -> Result<StepSet, TuningError> {
        if steps.is_empty() {
            return Err(TuningError::EmptyStepSet);
        }
        let mut partition = Vec::with_capacity(steps.len() + 1);
        partition.push(Exact::one());
        for (index, step) in steps.iter().enumerate() {
            let current = &partition[index];
            let next = step
                .apply(current)
                .ok_or(TuningError::Unrepresentable { index })?;
            if next <= *current {
                return Err(TuningError::MonotonicityViolation {
                    index,
                    from: current.to_string(),
                    to: next.to_string(),
                });
            }
            partition.push(next);
        }
        let product = partition.last().expect("non-empty");
        if *product != Exact::two() {
            return Err(TuningError::ClosureViolation {
                product: product.to_string(),
            });
        }
        Ok(StepSet { steps, partition })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_uniform(&self) -> bool {
        self.steps.windows(2).all(|w| w[0] == w[1])
    }

    /// Multiplier of partition point `i` relative to the octave root.
    pub fn multiplier(&self, i: u32) -> &Exact {
        &self.partition[i as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TuningKind {
    Tet,
    Edo,
    Custom,
}

impl fmt::Display for TuningKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TuningKind::Tet => "tet",
            TuningKind::Edo => "edo",
            TuningKind::Custom => "custom",
        })
    }
}

/// A pitch `ν_{k,i}` named by its octave index and step index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PitchCoordinate {
    pub k: i64,
    pub i: u32,
}

impl PitchCoordinate {
    pub fn new(k: i64, i: u32) -> Self {
        PitchCoordinate { k, i }
    }
}

impl fmt::Display for PitchCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TuningSpace {
    standard_pitch: PitchHz,
    steps: StepSet,
    kind: TuningKind,
}

pub fn make_ntet(standard_pitch: PitchHz, n: u32) -> Result<TuningSpace, TuningError> {
    if n == 0 {
        return Err(DomainError::new("n-TET needs n >= 1").into());
    }
    let steps = StepSet::new(vec![Step::tempered(n); n as usize])?;
    Ok(TuningSpace {
        standard_pitch,
        steps,
        kind: TuningKind::Tet,
    })
}

pub fn make_nedo(standard_pitch: PitchHz, n: u32) -> Result<TuningSpace, TuningError> {
    if n == 0 {
        return Err(DomainError::new("n-EDO needs n >= 1").into());
    }
    let step = Step::root_offset(1, n as i64)?;
    let steps = StepSet::new(vec![step; n as usize])?;
    Ok(TuningSpace {
        standard_pitch,
        steps,
        kind: TuningKind::Edo,
    })
}

pub fn make_custom(standard_pitch: PitchHz, steps: Vec<Step>) -> Result<TuningSpace, TuningError> {
    let steps = StepSet::new(steps)?;
    Ok(TuningSpace {
        standard_pitch,
        steps,
        kind: TuningKind::Custom,
    })
}

impl TuningSpace {
    pub fn n(&self) -> u32 {
        self.steps.len() as u32
    }

    pub fn standard_pitch(&self) -> &PitchHz {
        &self.standard_pitch
    }

    pub fn step_set(&self) -> &StepSet {
        &self.steps
    }

    pub fn kind(&self) -> TuningKind {
        self.kind
    }

    pub fn is_chromatic(&self) -> bool {
        self.steps.is_uniform()
    }

    /// Validates `coord` and folds `(k, n)` onto `(k + 1, 0)`.
    pub fn canonical(&self, coord: PitchCoordinate) -> Result<PitchCoordinate, TuningError> {
        let n = self.n();
        match coord.i {
            i if i < n => Ok(coord),
            i if i == n => Ok(PitchCoordinate::new(coord.k + 1, 0)),
            i => Err(TuningError::CoordinateOutOfRange { k: coord.k, i, n }),
        }
    }

    pub fn coord(&self, k: i64, i: u32) -> Result<PitchCoordinate, TuningError> {
        self.canonical(PitchCoordinate::new(k, i))
    }

    /// Position on the infinite step ladder, `k·n + i`.
    pub fn absolute_index(&self, coord: PitchCoordinate) -> Result<i64, TuningError> {
        let c = self.canonical(coord)?;
        Ok(c.k * self.n() as i64 + c.i as i64)
    }

    /// Exact pitch of `coord`. Equal temperaments use the closed form
    /// `ς·2^(k + j/n)`; other spaces scale the octave multiplier by `2^k`.
    pub fn pitch_at(&self, coord: PitchCoordinate) -> Result<PitchHz, TuningError> {
        let c = self.canonical(coord)?;
        let value = match self.kind {
            TuningKind::Tet => {
                let exponent = Rational64::new(c.k * self.n() as i64 + c.i as i64, self.n() as i64);
                self.standard_pitch.exact() * &Exact::pow2(exponent)
            }
            TuningKind::Edo | TuningKind::Custom => {
                (self.standard_pitch.exact() * self.steps.multiplier(c.i)).scale_pow2(c.k)
            }
        };
        Ok(PitchHz::new(value))
    }

    /// Evaluates `2^k·ς ∗ δ_0 ∗ ⋯ ∗ δ_(i-1)` by applying each step rule in
    /// turn to the actual pitch, without the cached partition.
    pub fn compose_steps(&self, coord: PitchCoordinate) -> Result<PitchHz, TuningError> {
        let n = self.n();
        if coord.i > n {
            return Err(TuningError::CoordinateOutOfRange { k: coord.k, i: coord.i, n });
        }
        let root = self.standard_pitch.exact().scale_pow2(coord.k);
        let mut pitch = root.clone();
        for (index, step) in self.steps.steps()[..coord.i as usize].iter().enumerate() {
            pitch = match step {
                Step::Ratio(r) => &pitch * r,
                Step::RootOffset(q) => {
                    let offset = root.to_rational().map(|root| root * q);
                    offset
                        .and_then(|offset| pitch.to_rational().map(|p| p + offset))
                        .filter(|sum| sum.is_positive())
                        .and_then(Exact::from_rational)
                        .ok_or(TuningError::Unrepresentable { index })?
                }
            };
        }
        Ok(PitchHz::new(pitch))
    }

    /// Signed number of steps from `a` up to `b`.
    pub fn step_between(&self, a: PitchCoordinate, b: PitchCoordinate) -> Result<i64, TuningError> {
        Ok(self.absolute_index(b)? - self.absolute_index(a)?)
    }

    /// A one-line human description, e.g. `12-TET tuned to 440 Hz`.
    pub fn describe(&self) -> String {
        let n = self.n();
        let hz = self.standard_pitch.exact();
        match self.kind {
            TuningKind::Tet => format!("{n}-TET tuned to {hz} Hz"),
            TuningKind::Edo => format!("{n}-EDO tuned to {hz} Hz"),
            TuningKind::Custom => format!("custom {n}-step tuning at {hz} Hz"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use proptest::prelude::*;

    fn hz(x: i64) -> PitchHz {
        PitchHz::from_integer(x).unwrap()
    }

    fn pitch(space: &TuningSpace, k: i64, i: u32) -> Exact {
        space.pitch_at(PitchCoordinate::new(k, i)).unwrap().exact().clone()
    }

    fn ex(s: &str) -> Exact {
        s.parse().unwrap()
    }

    pub(crate) fn example_500() -> TuningSpace {
        make_custom(
            hz(500),
            vec![
                Step::ratio(5, 4).unwrap(),
                Step::root_offset(1, 5).unwrap(),
                Step::root_offset(1, 20).unwrap(),
                Step::root_offset(1, 2).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ntet_construction() {
        let t = make_ntet(hz(440), 12).unwrap();
        assert_eq!(t.n(), 12);
        assert!(t.is_chromatic());
        assert!(t.step_set().steps().iter().all(|s| *s == Step::tempered(12)));

        let one = make_ntet(hz(100), 1).unwrap();
        assert_eq!(one.step_set().steps(), &[Step::Ratio(Exact::two())]);

        assert!(matches!(make_ntet(hz(440), 0), Err(TuningError::Domain(_))));
    }

    #[test]
    fn nineteen_tet_closes_by_repeated_multiplication() {
        let space = make_ntet("261.626".parse().unwrap(), 19).unwrap();
        let ratio = 2f64.powf(1.0 / 19.0);
        let mut f = 261.626;
        for _ in 0..19 {
            f *= ratio;
        }
        assert!((f / (2.0 * 261.626) - 1.0).abs() < 1e-12);
        assert_eq!(space.step_set().multiplier(19), &Exact::two());
        assert!((pitch(&space, 0, 1).to_f64() - 271.346_725_658_279_4).abs() < 1e-9);
    }

    #[test]
    fn nedo_construction() {
        let edo = make_nedo(hz(100), 5).unwrap();
        let base: Vec<_> = (0..=5).map(|i| pitch(&edo, 0, i)).collect();
        let want: Vec<_> = [100, 120, 140, 160, 180, 200].iter().map(|&x| Exact::from_integer(x).unwrap()).collect();
        assert_eq!(base, want);
        let upper: Vec<_> = (0..=5).map(|i| pitch(&edo, 1, i)).collect();
        let want: Vec<_> = [200, 240, 280, 320, 360, 400].iter().map(|&x| Exact::from_integer(x).unwrap()).collect();
        assert_eq!(upper, want);
        assert!(edo.is_chromatic());
        assert!(make_nedo(hz(100), 0).is_err());
    }

    #[test]
    fn one_step_spaces_coincide() {
        let tet = make_ntet(hz(300), 1).unwrap();
        let edo = make_nedo(hz(300), 1).unwrap();
        for k in -4..=4 {
            assert_eq!(pitch(&tet, k, 0), pitch(&edo, k, 0));
            assert_eq!(pitch(&tet, k, 1), pitch(&edo, k, 1));
        }
    }

    #[test]
    fn custom_example_space() {
        let space = example_500();
        assert!(!space.is_chromatic());
        let base: Vec<_> = (0..=4).map(|i| pitch(&space, 0, i)).collect();
        assert_eq!(base, vec![ex("500"), ex("625"), ex("725"), ex("750"), ex("1000")]);
        let lower: Vec<_> = (0..=4).map(|i| pitch(&space, -1, i)).collect();
        assert_eq!(lower, vec![ex("250"), ex("312.5"), ex("725/2"), ex("375"), ex("500")]);
    }

    #[test]
    fn custom_rejections() {
        let err = make_custom(hz(500), vec![Step::ratio(3, 2).unwrap()]).unwrap_err();
        assert!(matches!(err, TuningError::ClosureViolation { .. }), "{err}");

        let err = make_custom(hz(500), vec![Step::root_offset(-1, 2).unwrap(), Step::ratio(4, 1).unwrap()]).unwrap_err();
        assert!(matches!(err, TuningError::MonotonicityViolation { index: 0, .. }), "{err}");

        let err = make_custom(hz(500), vec![Step::ratio(1, 1).unwrap(), Step::ratio(2, 1).unwrap()]).unwrap_err();
        assert!(matches!(err, TuningError::MonotonicityViolation { index: 0, .. }));

        let err = make_custom(hz(500), vec![Step::root_offset(-2, 1).unwrap(), Step::root_offset(3, 1).unwrap()]).unwrap_err();
        assert!(matches!(err, TuningError::MonotonicityViolation { .. }));

        assert_eq!(make_custom(hz(500), vec![]).unwrap_err(), TuningError::EmptyStepSet);

        let err = make_custom(hz(500), vec![Step::tempered(2), Step::root_offset(1, 2).unwrap()]).unwrap_err();
        assert_eq!(err, TuningError::Unrepresentable { index: 1 });
        assert!(Step::ratio(-1, 2).is_err());
    }

    #[test]
    fn pitch_at_examples() {
        let t = make_ntet(hz(440), 12).unwrap();
        assert_eq!(pitch(&t, 0, 6), ex("440*2^(1/2)"));
        assert!((pitch(&t, 0, 6).to_f64() - 622.253_967_444_161_8).abs() < 1e-9);
        assert_eq!(pitch(&t, 0, 0), ex("440"));
        assert!((pitch(&t, -1, 3).to_f64() - 261.626).abs() < 1e-3);
        assert!(matches!(
            t.pitch_at(PitchCoordinate::new(0, 13)),
            Err(TuningError::CoordinateOutOfRange { i: 13, n: 12, .. })
        ));
    }

    #[test]
    fn step_between_examples() {
        let t = make_ntet(hz(440), 12).unwrap();
        let c = PitchCoordinate::new;
        assert_eq!(t.step_between(c(0, 2), c(0, 5)).unwrap(), 3);
        assert_eq!(t.step_between(c(0, 5), c(0, 2)).unwrap(), -3);
        // enumerate partition points from (0, 11) upward until (1, 1)
        let mut ladder = Vec::new();
        for k in 0..=1 {
            for i in 0..12 {
                ladder.push((k, i));
            }
        }
        let from = ladder.iter().position(|&p| p == (0, 11)).unwrap();
        let to = ladder.iter().position(|&p| p == (1, 1)).unwrap();
        assert_eq!(t.step_between(c(0, 11), c(1, 1)).unwrap(), (to - from) as i64);
        assert_eq!(t.step_between(c(0, 12), c(1, 0)).unwrap(), 0);
        assert!(t.step_between(c(0, 13), c(1, 0)).is_err());
    }

    #[test]
    fn canonicalizes_top_of_octave() {
        let t = make_nedo(hz(100), 5).unwrap();
        assert_eq!(t.coord(2, 5).unwrap(), PitchCoordinate::new(3, 0));
        assert_eq!(t.coord(2, 4).unwrap(), PitchCoordinate::new(2, 4));
        assert!(t.coord(2, 6).is_err());
    }

    #[test]
    fn closed_forms_agree_with_composition() {
        for n in [1u32, 5, 12, 19, 31] {
            let tet = make_ntet(hz(440), n).unwrap();
            let edo = make_nedo(hz(440), n).unwrap();
            for k in -8..=8 {
                for j in 0..=n {
                    let c = PitchCoordinate::new(k, j);
                    assert_eq!(tet.pitch_at(c).unwrap(), tet.compose_steps(c).unwrap());
                    assert_eq!(edo.pitch_at(c).unwrap(), edo.compose_steps(c).unwrap());
                    // ν_{k,j} = 2^k·ς·(1 + j/n)
                    let closed = rational(440, 1) * (rational(1, 1) + rational(j as i64, n as i64));
                    let closed = Exact::from_rational(closed).unwrap().scale_pow2(k);
                    assert_eq!(edo.pitch_at(c).unwrap().exact(), &closed);
                }
            }
        }
        let custom = example_500();
        for k in -8..=8 {
            for i in 0..=4 {
                let c = PitchCoordinate::new(k, i);
                assert_eq!(custom.pitch_at(c).unwrap(), custom.compose_steps(c).unwrap());
            }
        }
    }

    #[test]
    fn step_parsing() {
        assert_eq!("ratio 5/4".parse::<Step>().unwrap(), Step::ratio(5, 4).unwrap());
        assert_eq!("rootoffset 1/20".parse::<Step>().unwrap(), Step::root_offset(1, 20).unwrap());
        assert_eq!("ratio 2^(1/12)".parse::<Step>().unwrap(), Step::tempered(12));
        assert!("ratio -5/4".parse::<Step>().is_err());
        assert!("scale 5/4".parse::<Step>().is_err());
        assert!("ratio".parse::<Step>().is_err());
        assert_eq!(Step::ratio(5, 4).unwrap().to_string(), "ratio 5/4");
        assert_eq!(Step::root_offset(1, 5).unwrap().to_string(), "rootoffset 1/5");
    }

    proptest! {
        #[test]
        fn octave_homogeneity(n in 1u32..40, k in -10i64..10, seed in 0u32..1000) {
            let i = seed % (n + 1);
            for space in [make_ntet(hz(440), n).unwrap(), make_nedo(hz(440), n).unwrap()] {
                let lower = pitch(&space, k, i);
                let upper = pitch(&space, k + 1, i);
                prop_assert_eq!(upper, &lower * &Exact::two());
                prop_assert_eq!(pitch(&space, k, n), pitch(&space, k + 1, 0));
            }
        }

        #[test]
        fn step_between_is_antisymmetric(k1 in -20i64..20, i1 in 0u32..12, k2 in -20i64..20, i2 in 0u32..12) {
            let t = make_ntet(hz(440), 12).unwrap();
            let (a, b) = (PitchCoordinate::new(k1, i1), PitchCoordinate::new(k2, i2));
            prop_assert_eq!(t.step_between(a, b).unwrap(), -t.step_between(b, a).unwrap());
        }
    }
}
