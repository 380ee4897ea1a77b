//! Input normalization, sentence splitting and tokenization.
//!
//! Sentences end at the danda (।, ॥), the question mark, or a full stop.
//! Inside a sentence, whitespace and punctuation delimit tokens; commas are
//! dropped from the token stream once they have served as delimiters.

use alloc::string::String;
use alloc::vec::Vec;
use unicode_normalization::UnicodeNormalization;

use crate::tags::{Number, PosTag};

const BOM: char = '\u{FEFF}';
const ZWJ: char = '\u{200D}';
const ZWNJ: char = '\u{200C}';

/// How a sentence was terminated in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminator {
    Danda,
    Question,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub text: String,
    pub terminator: Terminator,
    pub index: usize,
}

/// One source-text unit. Analysis fields are filled in by later stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub position: usize,
    pub pos: Option<PosTag>,
    pub root: Option<String>,
    pub number: Option<Number>,
    /// Synonym candidates, in lexicon order. `None` means out of vocabulary.
    pub english: Option<Vec<String>>,
    /// Set when a reduplicated noun pair was collapsed into this token.
    pub replicative: bool,
}

impl Token {
    pub fn new(surface: impl Into<String>, position: usize) -> Self {
        Token {
            surface: surface.into(),
            position,
            pos: None,
            root: None,
            number: None,
            english: None,
            replicative: false,
        }
    }

    /// Test helper style constructor for an already tagged token.
    pub fn tagged(surface: impl Into<String>, position: usize, pos: PosTag) -> Self {
        let mut t = Token::new(surface, position);
        t.pos = Some(pos);
        t
    }

    pub fn tag(&self) -> PosTag {
        self.pos.unwrap_or(PosTag::Unk)
    }
}

fn is_sentence_terminator(c: char) -> bool {
    matches!(c, '।' | '॥' | '?' | '.')
}

/// Characters that separate tokens inside a sentence.
pub fn is_delimiter(c: char) -> bool {
    c.is_whitespace()
        || is_sentence_terminator(c)
        || matches!(c, ',' | '!' | ';' | ':' | '"' | '(' | ')' | '“' | '”')
}

/// Normalizes raw text: strips a BOM, removes zero-width (non-)joiners,
/// applies NFC, isolates commas and collapses whitespace runs.
pub fn preprocess(raw: &str) -> String {
    let raw = raw.strip_prefix(BOM).unwrap_or(raw);
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    // joiners go first so that composition sees adjacent marks
    for c in raw.chars().filter(|&c| c != ZWJ && c != ZWNJ).nfc() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if c == ',' {
            pending_space = true;
        }
        if pending_space && !out.is_empty() {
            out.push(' ');
        }
        pending_space = false;
        out.push(c);
        if c == ',' {
            pending_space = true;
        }
    }
    out
}

/// Splits preprocessed text into sentences. Segments with no token material
/// are dropped; a trailing unterminated segment gets [`Terminator::None`].
pub fn split_sentences(doc: &str) -> Vec<Sentence> {
    let mut sentences = Vec::new();
    let mut current = String::new();
    let push = |text: &mut String, terminator: Terminator, out: &mut Vec<Sentence>| {
        let trimmed = text.trim();
        if trimmed.chars().any(|c| !is_delimiter(c)) {
            out.push(Sentence {
                text: trimmed.into(),
                terminator,
                index: out.len(),
            });
        }
        text.clear();
    };
    for c in doc.chars() {
        if is_sentence_terminator(c) {
            let term = if c == '?' {
                Terminator::Question
            } else {
                Terminator::Danda
            };
            push(&mut current, term, &mut sentences);
        } else {
            current.push(c);
        }
    }
    push(&mut current, Terminator::None, &mut sentences);
    sentences
}

pub fn tokenize(sentence: &Sentence) -> Vec<Token> {
    tokenize_str(&sentence.text)
}

pub fn tokenize_str(text: &str) -> Vec<Token> {
    text.split(is_delimiter)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, s)| Token::new(s, i))
        .collect()
}
