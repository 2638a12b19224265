//! Segment alphabets and conversion of raw words into classified segments.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

const DEFAULT_VOWELS: &str = "aeiou";

/// Binary segment class. The constraints only ever consult this split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegmentClass {
    Consonant,
    Vowel,
}

impl SegmentClass {
    pub fn letter(self) -> char {
        match self {
            SegmentClass::Consonant => 'C',
            SegmentClass::Vowel => 'V',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub symbol: char,
    pub class: SegmentClass,
    pub index: usize,
}

impl Segment {
    pub fn is_vowel(&self) -> bool {
        self.class == SegmentClass::Vowel
    }

    pub fn is_consonant(&self) -> bool {
        self.class == SegmentClass::Consonant
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)
    }
}

/// Disjoint, non-empty vowel and consonant inventories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    vowels: BTreeSet<char>,
    consonants: BTreeSet<char>,
}

impl Default for Alphabet {
    /// Five ASCII vowel letters; every other lowercase ASCII letter is a consonant.
    fn default() -> Self {
        let vowels: BTreeSet<char> = DEFAULT_VOWELS.chars().collect();
        let consonants = ('a'..='z').filter(|c| !vowels.contains(c)).collect();
        Alphabet { vowels, consonants }
    }
}

impl Alphabet {
    pub fn new(
        vowels: impl IntoIterator<Item = char>,
        consonants: impl IntoIterator<Item = char>,
    ) -> Result<Self> {
        let vowels: BTreeSet<char> = vowels.into_iter().collect();
        let consonants: BTreeSet<char> = consonants.into_iter().collect();
        if let Some(&c) = vowels.intersection(&consonants).next() {
            return Err(Error::OverlappingClasses(c));
        }
        if vowels.is_empty() {
            return Err(Error::EmptyClass("vowels"));
        }
        if consonants.is_empty() {
            return Err(Error::EmptyClass("consonants"));
        }
        Ok(Alphabet { vowels, consonants })
    }

    /// Parses `vowels: <chars>` / `consonants: <chars>` lines. Blank lines and
    /// lines starting with `#` are ignored; a config with no entries at all
    /// yields the default alphabet. Whitespace inside the character list is
    /// not significant.
    pub fn parse(config_text: &str) -> Result<Self> {
        let mut vowels: Option<Vec<char>> = None;
        let mut consonants: Option<Vec<char>> = None;

        for (lineno, raw) in config_text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |reason: &str| Error::MalformedConfig {
                line: lineno + 1,
                reason: reason.to_string(),
            };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| malformed("expected `key: chars`"))?;
            let chars: Vec<char> = value.chars().filter(|c| !c.is_whitespace()).collect();
            let slot = match key.trim() {
                "vowels" => &mut vowels,
                "consonants" => &mut consonants,
                other => return Err(malformed(&format!("unknown key `{other}`"))),
            };
            if slot.is_some() {
                return Err(malformed(&format!("duplicate key `{}`", key.trim())));
            }
            *slot = Some(chars);
        }

        match (vowels, consonants) {
            (None, None) => Ok(Alphabet::default()),
            (v, c) => Alphabet::new(v.unwrap_or_default(), c.unwrap_or_default()),
        }
    }

    pub fn vowels(&self) -> &BTreeSet<char> {
        &self.vowels
    }

    pub fn consonants(&self) -> &BTreeSet<char> {
        &self.consonants
    }

    pub fn class_of(&self, symbol: char) -> Option<SegmentClass> {
        if self.vowels.contains(&symbol) {
            Some(SegmentClass::Vowel)
        } else if self.consonants.contains(&symbol) {
            Some(SegmentClass::Consonant)
        } else {
            None
        }
    }
}

/// Converts a word into one segment per character.
///
/// In pattern mode only `C` and `V` are accepted and they stand for
/// placeholder consonant and vowel segments.
pub fn classify(word: &str, alphabet: &Alphabet, pattern_mode: bool) -> Result<Vec<Segment>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    word.chars()
        .enumerate()
        .map(|(index, symbol)| {
            let class = if pattern_mode {
                match symbol {
                    'C' => Some(SegmentClass::Consonant),
                    'V' => Some(SegmentClass::Vowel),
                    _ => None,
                }
            } else {
                alphabet.class_of(symbol)
            };
            class
                .map(|class| Segment { symbol, class, index })
                .ok_or(Error::UnknownSymbol { symbol, index })
        })
        .collect()
}

/// Placeholder segments for a class pattern, e.g. `[V, C, C, V]`.
pub fn from_classes(classes: &[SegmentClass]) -> Vec<Segment> {
    classes
        .iter()
        .enumerate()
        .map(|(index, &class)| Segment { symbol: class.letter(), class, index })
        .collect()
}

/// Every C/V pattern of exactly `len` segments, in lexicographic C < V order.
pub fn all_patterns(len: usize) -> Vec<Vec<SegmentClass>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 1 {
                        SegmentClass::Vowel
                    } else {
                        SegmentClass::Consonant
                    }
                })
                .collect()
        })
        .collect()
}
