//! Lexicon-driven tagging and the sentence-level feature heuristics
//! (subject number, tense, interrogativity).

use alloc::vec::Vec;

use crate::lexicon::{Lexicon, LexiconEntry};
use crate::tags::{Number, PosTag};
use crate::text::{Terminator, Token};

/// The yes/no interrogative particle.
pub const QUESTION_PARTICLE: &str = "क्या";

/// Subjects treated as plural regardless of form.
pub const PLURAL_PRONOUNS: [&str; 4] = ["मैं", "तुम", "वे", "हम"];

/// Word endings that mark a plural subject.
pub const PLURAL_ENDINGS: [&str; 3] = ["या", "ये", "यो"];

pub const FIRST_PERSON_SINGULAR: &str = "मैं";

const HABITUAL_ENDINGS: [&str; 3] = ["ता", "ती", "ते"];
const PROGRESSIVE_MARKERS: [&str; 3] = ["रहा", "रही", "रहे"];
const PAST_COPULAS: [&str; 3] = ["था", "थी", "थे"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tense {
    PresentIndefinite,
    PresentContinuous,
    PastCopula,
    Unknown,
}

impl Tense {
    pub fn as_str(self) -> &'static str {
        match self {
            Tense::PresentIndefinite => "PRESENT_INDEFINITE",
            Tense::PresentContinuous => "PRESENT_CONTINUOUS",
            Tense::PastCopula => "PAST_COPULA",
            Tense::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    pub tokens: Vec<Token>,
    pub tense: Tense,
    pub interrogative: bool,
    pub subject_number: Number,
}

impl TaggedSentence {
    pub fn analyze(tokens: Vec<Token>, terminator: Terminator) -> Self {
        TaggedSentence {
            tense: detect_tense(&tokens),
            interrogative: detect_interrogative(&tokens, terminator),
            subject_number: detect_number(&tokens),
            tokens,
        }
    }
}

fn is_numeral(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || ('०'..='९').contains(&c))
}

/// Lexicon entries that can analyze `surface`: exact surface matches, or,
/// failing that, entries listed under `surface` as their root.
pub fn candidates<'a>(surface: &str, lex: &'a Lexicon) -> Vec<&'a LexiconEntry> {
    let direct = lex.lookup(surface);
    if direct.is_empty() {
        lex.lookup_root(surface)
    } else {
        direct
    }
}

/// Copies the analysis of `entry` onto `token`.
pub fn apply_entry(token: &mut Token, entry: &LexiconEntry) {
    token.pos = Some(entry.pos);
    token.root = Some(entry.root.clone());
    token.number = entry.number.feature();
    token.english = Some(entry.english.clone());
}

/// Fills POS, root, number and glosses from the lexicon, using the first
/// matching entry. Tokens that already carry a tag are left untouched.
pub fn tag_tokens(tokens: &[Token], lex: &Lexicon) -> Vec<Token> {
    tokens
        .iter()
        .map(|t| {
            let mut t = t.clone();
            if t.pos.is_some() {
                return t;
            }
            match candidates(&t.surface, lex).first() {
                Some(entry) => apply_entry(&mut t, entry),
                None => {
                    t.pos = Some(if is_numeral(&t.surface) {
                        PosTag::Num
                    } else {
                        PosTag::Unk
                    });
                    t.root = Some(t.surface.clone());
                }
            }
            t
        })
        .collect()
}

/// Index of the subject: the first token, or the second when the first is
/// the question particle.
pub fn subject_index(tokens: &[Token]) -> Option<usize> {
    match tokens.first() {
        None => None,
        Some(t) if t.surface == QUESTION_PARTICLE => (tokens.len() > 1).then_some(1),
        Some(_) => Some(0),
    }
}

fn is_coordinated_subject(tokens: &[Token], subject: usize) -> bool {
    let mut seen_conj = false;
    for t in &tokens[subject..] {
        match t.tag() {
            PosTag::Conj => seen_conj = true,
            PosTag::Noun | PosTag::Pron | PosTag::Unk => {
                if seen_conj {
                    return true;
                }
            }
            _ => return false,
        }
    }
    false
}

pub fn detect_number(tokens: &[Token]) -> Number {
    let Some(i) = subject_index(tokens) else {
        return Number::Sg;
    };
    let subject = &tokens[i];
    if PLURAL_PRONOUNS.contains(&subject.surface.as_str()) {
        return Number::Pl;
    }
    if is_coordinated_subject(tokens, i) {
        return Number::Pl;
    }
    if let Some(n) = subject.number {
        return n;
    }
    if PLURAL_ENDINGS.iter().any(|e| subject.surface.ends_with(e)) {
        return Number::Pl;
    }
    Number::Sg
}

pub fn subject_is_first_person_singular(tokens: &[Token]) -> bool {
    subject_index(tokens).is_some_and(|i| tokens[i].surface == FIRST_PERSON_SINGULAR)
}

pub fn detect_tense(tokens: &[Token]) -> Tense {
    let Some(last) = tokens.last() else {
        return Tense::Unknown;
    };
    let ends_in_aux = last.tag() == PosTag::Aux;
    let candidate = if ends_in_aux {
        tokens.len().checked_sub(2).map(|i| &tokens[i])
    } else {
        Some(last)
    };
    if let Some(c) = candidate {
        let verbal = matches!(c.tag(), PosTag::Verb | PosTag::Unk);
        if ends_in_aux && verbal && HABITUAL_ENDINGS.iter().any(|e| c.surface.ends_with(e)) {
            return Tense::PresentIndefinite;
        }
        if PROGRESSIVE_MARKERS.contains(&c.surface.as_str()) {
            return Tense::PresentContinuous;
        }
    }
    if PAST_COPULAS.contains(&last.surface.as_str()) {
        return Tense::PastCopula;
    }
    Tense::Unknown
}

pub fn detect_interrogative(tokens: &[Token], terminator: Terminator) -> bool {
    terminator == Terminator::Question
        || tokens.first().is_some_and(|t| t.surface == QUESTION_PARTICLE)
}
