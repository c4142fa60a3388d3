//! Harmonic addition on notes, the harmony group of a space, and the
//! exhaustive check that the group is isomorphic to `Z_n` under
//! `φ([ν_{k,x}]) = x`.

use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::DomainError;
use crate::exact::Exact;
use crate::notes::{Note, NoteSet};
use crate::pitch::PitchHz;
use crate::tuning::{make_ntet, TuningSpace};

/// `[ν_{k,x}] + [ν_{k,y}] = [ν_{k,(x+y) mod n}]`.
pub fn harmonic_add(a: &Note, b: &Note) -> Result<Note, DomainError> {
    if !a.same_space(b) {
        return Err(DomainError::new("cannot add notes from different tuning spaces"));
    }
    let sum = a.class_index() as u64 + b.class_index() as u64;
    Ok(Note::new(a.space().clone(), sum))
}

/// `[ν_{k,a}] ↦ [ν_{k,n-a}]`, with the identity its own inverse.
pub fn harmonic_inverse(a: &Note) -> Note {
    let n = a.n() as u64;
    Note::new(a.space().clone(), n - a.class_index() as u64)
}

/// Applies the step leaving the note's index: `[ν_{k,i}] ∗ δ_i = [ν_{k,i+1}]`.
pub fn step_on_note(a: &Note) -> Note {
    Note::new(a.space().clone(), a.class_index() as u64 + 1)
}

/// `[ν_{k,0}] ∗ δ_0 ∗ ⋯ ∗ δ_{x-1}`.
pub fn note_from_steps(space: &Arc<TuningSpace>, x: u64) -> Note {
    let start = Note::tuning_note(space.clone());
    (0..x % space.n() as u64).fold(start, |note, _| step_on_note(&note))
}

/// A binary operation on `0..n` given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: u32,
    entries: Vec<u32>,
}

impl CayleyTable {
    pub fn from_entries(n: u32, entries: Vec<u32>) -> Result<CayleyTable, DomainError> {
        if n == 0 || entries.len() != (n as usize) * (n as usize) {
            return Err(DomainError::new(format!(
                "a table of order {n} needs {} entries, got {}",
                n as usize * n as usize,
                entries.len()
            )));
        }
        Ok(CayleyTable { n, entries })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn get(&self, a: u32, b: u32) -> u32 {
        self.entries[(a * self.n + b) as usize]
    }

    pub fn set(&mut self, a: u32, b: u32, value: u32) {
        self.entries[(a * self.n + b) as usize] = value;
    }
}

/// A note set together with harmonic addition.
#[derive(Clone, Debug)]
pub struct HarmonyGroup {
    note_set: NoteSet,
}

impl HarmonyGroup {
    pub fn new(space: Arc<TuningSpace>) -> HarmonyGroup {
        HarmonyGroup {
            note_set: NoteSet::new(space),
        }
    }

    pub fn n(&self) -> u32 {
        self.note_set.len() as u32
    }

    pub fn note_set(&self) -> &NoteSet {
        &self.note_set
    }

    pub fn identity(&self) -> &Note {
        &self.note_set.notes()[0]
    }

    /// Tabulates harmonic addition over every pair of notes.
    pub fn cayley_table(&self) -> CayleyTable {
        let notes = self.note_set.notes();
        let mut entries = Vec::with_capacity(notes.len() * notes.len());
        for a in notes {
            for b in notes {
                let sum = harmonic_add(a, b).expect("same space");
                entries.push(sum.class_index());
            }
        }
        CayleyTable {
            n: self.n(),
            entries,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Orders up to this use every pair and triple; above it, sampling.
    pub exhaustive_limit: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            exhaustive_limit: 64,
            samples: 10_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Counterexample {
    Closure { a: u32, b: u32, sum: u32 },
    Associativity { a: u32, b: u32, c: u32, left: u32, right: u32 },
    Identity { x: u32, left: u32, right: u32 },
    Inverse { a: u32 },
    Injectivity { a: u32, b: u32, image: u32 },
    Surjectivity { residue: u32 },
    Homomorphism { a: u32, b: u32, image: u32, expected: u32 },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Counterexample::Closure { a, b, sum } => write!(f, "closure: {a} + {b} = {sum} is not a note"),
            Counterexample::Associativity { a, b, c, left, right } => {
                write!(f, "associativity: ({a} + {b}) + {c} = {left} but {a} + ({b} + {c}) = {right}")
            }
            Counterexample::Identity { x, left, right } => {
                write!(f, "identity: 0 + {x} = {left}, {x} + 0 = {right}")
            }
            Counterexample::Inverse { a } => write!(f, "inverse: {a} has no inverse"),
            Counterexample::Injectivity { a, b, image } => write!(f, "injectivity: φ({a}) = φ({b}) = {image}"),
            Counterexample::Surjectivity { residue } => write!(f, "surjectivity: {residue} is not an image"),
            Counterexample::Homomorphism { a, b, image, expected } => {
                write!(f, "homomorphism: φ({a} + {b}) = {image}, expected {expected}")
            }
        }
    }
}

/// Outcome of checking the group axioms on a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub n: u32,
    pub exhaustive: bool,
    pub closure: bool,
    pub associativity: bool,
    pub identity: bool,
    pub inverses: bool,
    pub pair_checks: u64,
    pub triple_checks: u64,
    pub axiom_failures: Vec<Counterexample>,
}

impl GroupReport {
    pub fn is_group(&self) -> bool {
        self.closure && self.associativity && self.identity && self.inverses && self.axiom_failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub n: u32,
    pub injective: bool,
    pub surjective: bool,
    pub homomorphic: bool,
    pub group: GroupReport,
    pub axiom_failures: Vec<Counterexample>,
    pub confirmed: bool,
}

impl IsomorphismReport {
    pub fn confirmed(&self) -> bool {
        self.confirmed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

impl fmt::Display for IsomorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        if self.confirmed {
            writeln!(f, "H_{n} ≅ Z_{n}: confirmed")?;
        } else {
            writeln!(f, "H_{n} ≅ Z_{n}: NOT confirmed ({} counterexamples)", self.axiom_failures.len())?;
        }
        let g = &self.group;
        let mode = if g.exhaustive { "exhaustive" } else { "sampled" };
        writeln!(f, "  closure         {} ({} pairs)", status(g.closure), g.pair_checks)?;
        writeln!(f, "  associativity   {} ({} triples, {mode})", status(g.associativity), g.triple_checks)?;
        writeln!(f, "  identity        {}", status(g.identity))?;
        writeln!(f, "  inverses        {}", status(g.inverses))?;
        writeln!(f, "  φ injective     {}", status(self.injective))?;
        writeln!(f, "  φ surjective    {}", status(self.surjective))?;
        write!(f, "  φ homomorphism  {}", status(self.homomorphic))?;
        for failure in &self.axiom_failures {
            write!(f, "\n  - {failure}")?;
        }
        Ok(())
    }
}

fn pairs(n: u32, config: &VerifyConfig, rng: &mut StdRng) -> Vec<(u32, u32)> {
    if n <= config.exhaustive_limit {
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    } else {
        (0..config.samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
    }
}

/// Checks closure, associativity, identity (class 0) and inverses.
pub fn verify_table(table: &CayleyTable, config: &VerifyConfig) -> GroupReport {
    let n = table.order();
    let exhaustive = n <= config.exhaustive_limit;
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut failures = Vec::new();

    // Closure is checked on the whole table; it is only O(n²).
    let mut closure = true;
    for a in 0..n {
        for b in 0..n {
            let sum = table.get(a, b);
            if sum >= n {
                closure = false;
                failures.push(Counterexample::Closure { a, b, sum });
            }
        }
    }
    let pair_checks = n as u64 * n as u64;

    let mut associativity = true;
    let mut triple_checks = 0u64;
    if closure {
        let mut check = |a: u32, b: u32, c: u32| {
            triple_checks += 1;
            let left = table.get(table.get(a, b), c);
            let right = table.get(a, table.get(b, c));
            if left != right {
                associativity = false;
                failures.push(Counterexample::Associativity { a, b, c, left, right });
            }
        };
        if exhaustive {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c);
                    }
                }
            }
        } else {
            for _ in 0..config.samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                check(a, b, c);
            }
        }
    } else {
        associativity = false;
    }

    let mut identity = true;
    for x in 0..n {
        let (left, right) = (table.get(0, x), table.get(x, 0));
        if left != x || right != x {
            identity = false;
            failures.push(Counterexample::Identity { x, left, right });
        }
    }

    let mut inverses = true;
    if identity {
        for a in 0..n {
            if !(0..n).any(|b| table.get(a, b) == 0 && table.get(b, a) == 0) {
                inverses = false;
                failures.push(Counterexample::Inverse { a });
            }
        }
    } else {
        inverses = false;
    }

    GroupReport {
        n,
        exhaustive,
        closure,
        associativity,
        identity,
        inverses,
        pair_checks,
        triple_checks,
        axiom_failures: failures,
    }
}

/// Checks the group axioms and that `φ(x) = x` is an isomorphism onto
/// `Z_n` for the given table.
pub fn verify_table_isomorphism(table: &CayleyTable, config: &VerifyConfig) -> IsomorphismReport {
    let n = table.order();
    let group = verify_table(table, config);
    let mut failures = group.axiom_failures.clone();
    let phi = |class: u32| class;

    let mut seen = vec![None; n as usize];
    let mut injective = true;
    for a in 0..n {
        let image = phi(a);
        match seen.get(image as usize).copied().flatten() {
            Some(b) => {
                injective = false;
                failures.push(Counterexample::Injectivity { a: b, b: a, image });
            }
            None => seen[image as usize] = Some(a),
        }
    }
    let mut surjective = true;
    for (residue, hit) in seen.iter().enumerate() {
        if hit.is_none() {
            surjective = false;
            failures.push(Counterexample::Surjectivity { residue: residue as u32 });
        }
    }

    let mut homomorphic = true;
    let mut rng = StdRng::seed_from_u64(config.seed.wrapping_add(1));
    for (a, b) in pairs(n, config, &mut rng) {
        let image = phi(table.get(a, b));
        let expected = (phi(a) + phi(b)) % n;
        if image != expected {
            homomorphic = false;
            failures.push(Counterexample::Homomorphism { a, b, image, expected });
        }
    }

    let confirmed = group.is_group() && injective && surjective && homomorphic && failures.is_empty();
    IsomorphismReport {
        n,
        injective,
        surjective,
        homomorphic,
        group,
        axiom_failures: failures,
        confirmed,
    }
}

fn group_of_order(n: u32) -> Result<HarmonyGroup, DomainError> {
    let pitch = PitchHz::new(Exact::from_integer(440).expect("positive"));
    let space = make_ntet(pitch, n).map_err(|e| DomainError::new(e.to_string()))?;
    Ok(HarmonyGroup::new(Arc::new(space)))
}

pub fn verify_group(n: u32, config: &VerifyConfig) -> Result<GroupReport, DomainError> {
    Ok(verify_table(&group_of_order(n)?.cayley_table(), config))
}

pub fn verify_pcit(n: u32, config: &VerifyConfig) -> Result<IsomorphismReport, DomainError> {
    Ok(verify_table_isomorphism(&group_of_order(n)?.cayley_table(), config))
}
