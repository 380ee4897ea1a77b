//! Bilingual Hindi→English dictionary.
//!
//! Text format, one entry per line, tab separated:
//!
//! ```text
//! surface<TAB>root<TAB>POS<TAB>syn1;syn2;…<TAB>SG|PL|ANY
//! ```
//!
//! `#` starts a comment line; blank lines are ignored. An empty synonym
//! column is a single empty gloss, which renders as nothing in English
//! (used for case markers such as को).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use unicode_normalization::UnicodeNormalization;

use crate::tags::{Number, PosTag};

/// Number feature as stored in the dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LexNumber {
    Sg,
    Pl,
    Any,
}

impl LexNumber {
    pub fn as_str(self) -> &'static str {
        match self {
            LexNumber::Sg => "SG",
            LexNumber::Pl => "PL",
            LexNumber::Any => "ANY",
        }
    }

    pub fn feature(self) -> Option<Number> {
        match self {
            LexNumber::Sg => Some(Number::Sg),
            LexNumber::Pl => Some(Number::Pl),
            LexNumber::Any => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LexiconEntry {
    pub hindi: String,
    pub root: String,
    pub pos: PosTag,
    pub english: Vec<String>,
    pub number: LexNumber,
}

impl LexiconEntry {
    /// True when the entry has a single empty gloss.
    pub fn is_silent(&self) -> bool {
        self.english.iter().all(|s| s.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexiconError {
    Malformed {
        line: usize,
        field: &'static str,
        message: String,
    },
    Duplicate {
        surface: String,
        pos: PosTag,
        first_line: usize,
        second_line: usize,
    },
}

impl fmt::Display for LexiconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexiconError::Malformed {
                line,
                field,
                message,
            } => write!(f, "line {line}: bad {field}: {message}"),
            LexiconError::Duplicate {
                surface,
                pos,
                first_line,
                second_line,
            } => write!(
                f,
                "duplicate entry ({surface}, {pos}) on lines {first_line} and {second_line}"
            ),
        }
    }
}

impl core::error::Error for LexiconError {}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    lines: Vec<usize>,
    by_surface: BTreeMap<String, Vec<usize>>,
    by_root: BTreeMap<String, Vec<usize>>,
    pub source_path: Option<String>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses dictionary text, stopping at the first problem.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let (lex, mut errors) = Self::parse_all(text);
        if errors.is_empty() {
            Ok(lex)
        } else {
            Err(errors.swap_remove(0))
        }
    }

    /// Parses dictionary text, keeping every valid line and collecting every
    /// error. Later duplicates are dropped.
    pub fn parse_all(text: &str) -> (Self, Vec<LexiconError>) {
        let mut lex = Lexicon::new();
        let mut errors = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            match parse_line(line, line_no) {
                Ok(entry) => {
                    if let Err(e) = lex.insert_at(entry, line_no) {
                        errors.push(e);
                    }
                }
                Err(e) => errors.push(e),
            }
        }
        (lex, errors)
    }

    pub fn insert(&mut self, entry: LexiconEntry) -> Result<(), LexiconError> {
        let line = self.lines.last().map_or(1, |l| l + 1);
        self.insert_at(entry, line)
    }

    fn insert_at(&mut self, entry: LexiconEntry, line: usize) -> Result<(), LexiconError> {
        if let Some(ids) = self.by_surface.get(&entry.hindi) {
            if let Some(&dup) = ids.iter().find(|&&i| self.entries[i].pos == entry.pos) {
                return Err(LexiconError::Duplicate {
                    surface: entry.hindi,
                    pos: entry.pos,
                    first_line: self.lines[dup],
                    second_line: line,
                });
            }
        }
        let id = self.entries.len();
        self.by_surface.entry(entry.hindi.clone()).or_default().push(id);
        self.by_root.entry(entry.root.clone()).or_default().push(id);
        self.entries.push(entry);
        self.lines.push(line);
        Ok(())
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every entry whose surface equals `surface`, in file order.
    /// An empty result means the word is out of vocabulary.
    pub fn lookup(&self, surface: &str) -> Vec<&LexiconEntry> {
        self.by_surface
            .get(surface)
            .map(|ids| ids.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    /// Every entry whose root equals `root`, in file order.
    pub fn lookup_root(&self, root: &str) -> Vec<&LexiconEntry> {
        self.by_root
            .get(root)
            .map(|ids| ids.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    /// Renders the dictionary back into its text format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.hindi,
                e.root,
                e.pos,
                e.english.join(";"),
                e.number.as_str()
            ));
        }
        out
    }
}

fn nfc(s: &str) -> String {
    s.trim().nfc().collect()
}

fn parse_line(line: &str, line_no: usize) -> Result<LexiconEntry, LexiconError> {
    let bad = |field: &'static str, message: String| LexiconError::Malformed {
        line: line_no,
        field,
        message,
    };
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 5 {
        return Err(bad(
            "line",
            format!("expected 5 tab-separated columns, found {}", cols.len()),
        ));
    }
    let hindi = nfc(cols[0]);
    if hindi.is_empty() {
        return Err(bad("surface", "empty surface form".to_string()));
    }
    if hindi.chars().any(crate::text::is_delimiter) {
        return Err(bad("surface", format!("{hindi:?} contains a delimiter")));
    }
    let root = nfc(cols[1]);
    if root.is_empty() {
        return Err(bad("root", "empty root".to_string()));
    }
    let pos: PosTag = cols[2]
        .trim()
        .parse()
        .map_err(|_| bad("POS", format!("unknown tag {:?}", cols[2].trim())))?;
    if pos == PosTag::Unk {
        return Err(bad("POS", "UNK is reserved for unknown words".to_string()));
    }
    let english = parse_synonyms(cols[3]).map_err(|m| bad("english", m))?;
    let number = match cols[4].trim() {
        "SG" => LexNumber::Sg,
        "PL" => LexNumber::Pl,
        "ANY" => LexNumber::Any,
        other => return Err(bad("number", format!("expected SG, PL or ANY, found {other:?}"))),
    };
    Ok(LexiconEntry {
        hindi,
        root,
        pos,
        english,
        number,
    })
}

fn parse_synonyms(col: &str) -> Result<Vec<String>, String> {
    let col = col.trim();
    if col.is_empty() {
        return Ok(alloc::vec![String::new()]);
    }
    let mut out: Vec<String> = Vec::new();
    for syn in col.split(';') {
        let syn = syn.split_whitespace().collect::<Vec<_>>().join(" ");
        if syn.is_empty() {
            return Err(format!("empty synonym in {col:?}"));
        }
        if out.contains(&syn) {
            return Err(format!("repeated synonym {syn:?}"));
        }
        out.push(syn);
    }
    Ok(out)
}
