//! Letter names for the twelve notes of 12-TET.
//!
//! Classes are numbered either from A (the standard pitch of 12-TET at
//! 440 Hz is class 0) or from C (the common pitch-class integer model).
//! The two differ by a fixed offset of three.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::DomainError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    C,
    D,
    E,
    F,
    G,
    A,
    B,
}

impl Letter {
    pub const ALL: [Letter; 7] = [Letter::C, Letter::D, Letter::E, Letter::F, Letter::G, Letter::A, Letter::B];

    /// Semitones above C.
    fn c_offset(self) -> i32 {
        match self {
            Letter::C => 0,
            Letter::D => 2,
            Letter::E => 4,
            Letter::F => 5,
            Letter::G => 7,
            Letter::A => 9,
            Letter::B => 11,
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        Some(match c.to_ascii_uppercase() {
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            'A' => Letter::A,
            'B' => Letter::B,
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum NamingConvention {
    /// Class 0 is A, the standard pitch of 12-TET at 440 Hz.
    #[default]
    ARooted,
    /// Integer 0 is C.
    CRooted,
}

impl NamingConvention {
    fn class_of_c(self, c_class: i32) -> u8 {
        match self {
            NamingConvention::CRooted => c_class.rem_euclid(12) as u8,
            NamingConvention::ARooted => (c_class + 3).rem_euclid(12) as u8,
        }
    }

    fn to_c(self, class: u8) -> usize {
        match self {
            NamingConvention::CRooted => class as usize,
            NamingConvention::ARooted => (class as usize + 9) % 12,
        }
    }
}

/// A letter with an accidental between double flat (-2) and double sharp (+2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NoteName {
    pub letter: Letter,
    pub accidental: i8,
}

const fn name(letter: Letter, accidental: i8) -> NoteName {
    NoteName { letter, accidental }
}

use Letter::*;

/// Enharmonic spellings by C-rooted integer, in table order.
const SPELLINGS: [&[NoteName]; 12] = [
    &[name(B, 1), name(C, 0), name(D, -2)],
    &[name(C, 1), name(D, -1)],
    &[name(C, 2), name(D, 0), name(E, -2)],
    &[name(D, 1), name(E, -1)],
    &[name(D, 2), name(E, 0), name(F, -1)],
    &[name(E, 1), name(F, 0), name(G, -2)],
    &[name(F, 1), name(G, -1)],
    &[name(F, 2), name(G, 0), name(A, -2)],
    &[name(G, 1), name(A, -1)],
    &[name(G, 2), name(A, 0), name(B, -2)],
    &[name(A, 1), name(B, -1)],
    &[name(A, 2), name(B, 0), name(C, -1)],
];

/// Canonical ASCII names by C-rooted integer: naturals, otherwise sharps.
const CANONICAL: [&str; 12] = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];

impl NoteName {
    pub fn new(letter: Letter, accidental: i8) -> Result<NoteName, DomainError> {
        if !(-2..=2).contains(&accidental) {
            return Err(DomainError::new(format!("accidental {accidental} is outside -2..=2")));
        }
        Ok(NoteName { letter, accidental })
    }

    pub fn class(&self, conv: NamingConvention) -> u8 {
        conv.class_of_c(self.letter.c_offset() + self.accidental as i32)
    }

    /// ASCII spelling: `#`, `x` for double sharp, `b`, `bb`.
    pub fn ascii(&self) -> String {
        let acc = match self.accidental {
            2 => "x",
            1 => "#",
            -1 => "b",
            -2 => "bb",
            _ => "",
        };
        format!("{}{acc}", self.letter)
    }

    /// Every letter with every accidental: 35 spellings.
    pub fn all() -> impl Iterator<Item = NoteName> {
        Letter::ALL
            .into_iter()
            .flat_map(|letter| (-2..=2).map(move |accidental| NoteName { letter, accidental }))
    }
}

impl fmt::Display for NoteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acc = match self.accidental {
            2 => "𝄪",
            1 => "♯",
            -1 => "♭",
            -2 => "♭♭",
            _ => "",
        };
        write!(f, "{}{acc}", self.letter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse note name {input:?} at position {position}: {message}")]
pub struct NoteNameError {
    pub input: String,
    /// Character offset of the first offending character.
    pub position: usize,
    pub message: String,
}

/// Longest spellings first so that `##` wins over `#`.
const ACCIDENTALS: [(&str, i8); 11] = [
    ("♯♯", 2),
    ("♭♭", -2),
    ("##", 2),
    ("bb", -2),
    ("𝄪", 2),
    ("𝄫", -2),
    ("x", 2),
    ("#", 1),
    ("♯", 1),
    ("b", -1),
    ("♭", -1),
];

pub fn parse_note_spelling(text: &str) -> Result<NoteName, NoteNameError> {
    let error = |position: usize, message: &str| NoteNameError {
        input: text.to_string(),
        position,
        message: message.to_string(),
    };
    let mut chars = text.chars();
    let first = chars.next().ok_or_else(|| error(0, "empty input"))?;
    let letter = Letter::from_char(first).ok_or_else(|| error(0, "expected a letter A-G"))?;
    let rest = chars.as_str();
    let (accidental, consumed) = ACCIDENTALS
        .iter()
        .find(|(spelling, _)| rest.starts_with(spelling))
        .map(|&(spelling, value)| (value, spelling))
        .unwrap_or((0, ""));
    let tail = &rest[consumed.len()..];
    if !tail.is_empty() {
        let position = 1 + consumed.chars().count();
        return Err(error(position, "unexpected trailing characters"));
    }
    Ok(NoteName { letter, accidental })
}

pub fn parse_note_name(text: &str, conv: NamingConvention) -> Result<u8, NoteNameError> {
    parse_note_spelling(text).map(|name| name.class(conv))
}

fn check_class(class: u8) -> Result<(), DomainError> {
    if class < 12 {
        Ok(())
    } else {
        Err(DomainError::new(format!("note class {class} is outside 0..12")))
    }
}

pub fn render_note_name(class: u8, conv: NamingConvention) -> Result<&'static str, DomainError> {
    check_class(class)?;
    Ok(CANONICAL[conv.to_c(class)])
}

pub fn enharmonic_spellings(class: u8, conv: NamingConvention) -> Result<Vec<NoteName>, DomainError> {
    check_class(class)?;
    Ok(SPELLINGS[conv.to_c(class)].to_vec())
}
