//! Devanagari → Latin transliteration for out-of-vocabulary words.
//!
//! Table file, three tab-separated columns (shown here as spaces), `#`
//! comments:
//!
//! ```text
//! क  C  ka      # consonant, carries the inherent a
//! अ  V  a       # independent vowel
//! ी  M  ee      # dependent vowel sign, replaces the inherent a
//! ं  X  n       # anything else: signs, digits
//! ```
//!
//! The glyph column takes either the character or `U+XXXX`. The virama
//! (U+094D) is built in and must not appear in the table.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use unicode_normalization::UnicodeNormalization;

pub const HALANT: char = '\u{094D}';
pub const NUKTA: char = '\u{093C}';

pub fn is_consonant(c: char) -> bool {
    matches!(c as u32, 0x0915..=0x0939 | 0x0958..=0x095F | 0x0978..=0x097F)
}

pub fn is_vowel(c: char) -> bool {
    matches!(c as u32, 0x0904..=0x0914 | 0x0960..=0x0961)
}

pub fn is_matra(c: char) -> bool {
    matches!(c as u32, 0x093E..=0x094C | 0x0962..=0x0963)
}

/// Code points that form a unit of their own: candrabindu, anusvara,
/// visarga, avagraha, digits, abbreviation sign.
pub fn is_sign(c: char) -> bool {
    matches!(c as u32, 0x0901..=0x0903 | 0x093D | 0x0966..=0x0970)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GlyphClass {
    Consonant,
    Vowel,
    Matra,
    Other,
}

impl GlyphClass {
    fn code(self) -> &'static str {
        match self {
            GlyphClass::Consonant => "C",
            GlyphClass::Vowel => "V",
            GlyphClass::Matra => "M",
            GlyphClass::Other => "X",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslitError {
    /// A code point outside the Devanagari letters and signs.
    NotDevanagari(char),
    /// A matra, nukta or halant with no consonant to attach to.
    Dangling(char),
    /// A unit with no table row.
    NotInTable(String),
    Table { line: usize, message: String },
}

fn code_point(s: &str) -> String {
    s.chars()
        .map(|c| format!("U+{:04X}", c as u32))
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for TranslitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslitError::NotDevanagari(c) => write!(f, "{} {c:?} is not Devanagari", code_point(&c.to_string())),
            TranslitError::Dangling(c) => write!(f, "{} {c:?} has no consonant to attach to", code_point(&c.to_string())),
            TranslitError::NotInTable(s) => write!(f, "{} {s:?} has no transliteration", code_point(s)),
            TranslitError::Table { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl core::error::Error for TranslitError {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TranslitTable {
    rows: BTreeMap<String, (GlyphClass, String)>,
}

impl TranslitTable {
    pub fn parse(text: &str) -> Result<Self, TranslitError> {
        let (table, mut errors) = Self::parse_all(text);
        if errors.is_empty() {
            Ok(table)
        } else {
            Err(errors.swap_remove(0))
        }
    }

    /// Keeps every valid row and collects every error.
    pub fn parse_all(text: &str) -> (Self, Vec<TranslitError>) {
        let mut table = TranslitTable::default();
        let mut errors = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            // '#' may be a glyph only at column start; strip trailing comments
            let line = match line.find("\t#").or_else(|| line.find(" #")) {
                Some(i) => &line[..i],
                None => line,
            };
            if let Err(message) = table.insert_line(line) {
                errors.push(TranslitError::Table { line: i + 1, message });
            }
        }
        (table, errors)
    }

    fn insert_line(&mut self, line: &str) -> Result<(), String> {
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [glyph, class, latin] = cols[..] else {
            return Err(format!("expected 3 tab-separated columns, found {}", cols.len()));
        };
        let glyph = parse_glyph(glyph)?;
        let class = match class {
            "C" => GlyphClass::Consonant,
            "V" => GlyphClass::Vowel,
            "M" => GlyphClass::Matra,
            "X" => GlyphClass::Other,
            other => return Err(format!("unknown class {other:?}")),
        };
        self.insert(&glyph, class, latin)
    }

    /// Adds one row, enforcing the class invariants.
    pub fn insert(&mut self, glyph: &str, class: GlyphClass, latin: &str) -> Result<(), String> {
        let glyph: String = glyph.nfc().collect();
        let mut chars = glyph.chars();
        let first = chars.next().ok_or("empty glyph")?;
        let rest: String = chars.collect();
        let shape_ok = match class {
            GlyphClass::Consonant => is_consonant(first) && (rest.is_empty() || rest == "\u{093C}"),
            GlyphClass::Vowel => is_vowel(first) && rest.is_empty(),
            GlyphClass::Matra => is_matra(first) && rest.is_empty(),
            GlyphClass::Other => is_sign(first) && rest.is_empty(),
        };
        if !shape_ok {
            return Err(format!("{} is not a class {} glyph", code_point(&glyph), class.code()));
        }
        if !latin.is_ascii() {
            return Err(format!("latin {latin:?} for {glyph} is not ASCII"));
        }
        match class {
            GlyphClass::Consonant if !latin.ends_with('a') => {
                return Err(format!("consonant {glyph} must map to a string ending in 'a', got {latin:?}"))
            }
            GlyphClass::Vowel | GlyphClass::Matra if latin.is_empty() => {
                return Err(format!("{glyph} has an empty mapping"))
            }
            _ => {}
        }
        if self.rows.contains_key(&glyph) {
            return Err(format!("duplicate row for {glyph}"));
        }
        self.rows.insert(glyph, (class, latin.to_string()));
        Ok(())
    }

    pub fn get(&self, glyph: &str) -> Option<&str> {
        self.rows.get(glyph).map(|(_, l)| l.as_str())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows of one class, in code point order.
    pub fn glyphs(&self, class: GlyphClass) -> impl Iterator<Item = (&str, &str)> {
        self.rows
            .iter()
            .filter(move |(_, (c, _))| *c == class)
            .map(|(g, (_, l))| (g.as_str(), l.as_str()))
    }

    /// Standard consonants (including the nukta forms) with no row.
    pub fn missing_consonants(&self) -> Vec<String> {
        (0x0915..=0x0939)
            .chain(0x0958..=0x095F)
            .filter_map(char::from_u32)
            .map(|c| c.to_string().nfc().collect::<String>())
            .filter(|g| !self.rows.contains_key(g))
            .collect()
    }
}

fn parse_glyph(col: &str) -> Result<String, String> {
    let Some(hex) = col.strip_prefix("U+").or_else(|| col.strip_prefix("u+")) else {
        return Ok(col.to_string());
    };
    u32::from_str_radix(hex, 16)
        .ok()
        .and_then(char::from_u32)
        .map(|c| c.to_string())
        .ok_or_else(|| format!("bad code point {col:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitKind {
    Consonant,
    Vowel,
    Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyllableUnit {
    /// Consonant (with nukta, if any), independent vowel, or sign.
    pub base: String,
    pub kind: UnitKind,
    pub matra: Option<char>,
    pub halant: bool,
}

impl SyllableUnit {
    pub fn is_bare_consonant(&self) -> bool {
        self.kind == UnitKind::Consonant && self.matra.is_none() && !self.halant
    }
}

impl fmt::Display for SyllableUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if let Some(m) = self.matra {
            write!(f, "{m}")?;
        }
        if self.halant {
            write!(f, "{HALANT}")?;
        }
        Ok(())
    }
}

fn open_consonant(units: &mut [SyllableUnit]) -> Option<&mut SyllableUnit> {
    units
        .last_mut()
        .filter(|u| u.kind == UnitKind::Consonant && u.matra.is_none() && !u.halant)
}

/// Groups each consonant with its nukta and following matra or halant.
pub fn segment(word: &str) -> Result<Vec<SyllableUnit>, TranslitError> {
    let word: String = word.nfc().collect();
    let mut units: Vec<SyllableUnit> = Vec::new();
    for c in word.chars() {
        let kind = if is_consonant(c) {
            UnitKind::Consonant
        } else if is_vowel(c) {
            UnitKind::Vowel
        } else if is_sign(c) {
            UnitKind::Sign
        } else if c == NUKTA {
            let u = open_consonant(&mut units).ok_or(TranslitError::Dangling(c))?;
            if u.base.ends_with(NUKTA) {
                return Err(TranslitError::Dangling(c));
            }
            u.base.push(c);
            continue;
        } else if is_matra(c) {
            open_consonant(&mut units).ok_or(TranslitError::Dangling(c))?.matra = Some(c);
            continue;
        } else if c == HALANT {
            open_consonant(&mut units).ok_or(TranslitError::Dangling(c))?.halant = true;
            continue;
        } else {
            return Err(TranslitError::NotDevanagari(c));
        };
        let base: String = c.to_string().nfc().collect();
        units.push(SyllableUnit {
            base,
            kind,
            matra: None,
            halant: false,
        });
    }
    Ok(units)
}

fn lookup<'a>(table: &'a TranslitTable, glyph: &str) -> Result<&'a str, TranslitError> {
    table
        .get(glyph)
        .ok_or_else(|| TranslitError::NotInTable(glyph.to_string()))
}

/// Romanizes a word unit by unit, then deletes the inherent vowel of a
/// word-final bare consonant.
pub fn romanize(word: &str, table: &TranslitTable) -> Result<String, TranslitError> {
    let units = segment(word)?;
    let mut out = String::new();
    for (i, u) in units.iter().enumerate() {
        let latin = lookup(table, &u.base)?;
        match u.kind {
            UnitKind::Consonant => {
                let stem = latin.strip_suffix('a').unwrap_or(latin);
                if let Some(m) = u.matra {
                    out.push_str(stem);
                    out.push_str(lookup(table, &m.to_string())?);
                } else if u.halant || i + 1 == units.len() {
                    out.push_str(stem);
                } else {
                    out.push_str(latin);
                }
            }
            UnitKind::Vowel | UnitKind::Sign => out.push_str(latin),
        }
    }
    Ok(out)
}
