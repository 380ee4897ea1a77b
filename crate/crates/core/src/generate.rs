//! English surface generation from transfer output: glossing, copula choice,
//! do-support, replicative and coordination rendering, casing, terminator.
//!
//! Glosses are stored inflected in the lexicon and used as-is; there is no
//! agreement repair and no article insertion.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::morph::{self, TaggedSentence, Tense, QUESTION_PARTICLE};
use crate::tags::{Number, PosTag};
use crate::text::Token;
use crate::translit::{self, TranslitTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SynonymPolicy {
    #[default]
    First,
    /// Every synonym, joined with `|`.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationContext {
    pub tense: Tense,
    pub interrogative: bool,
    pub subject_number: Number,
    /// Subject is मैं; selects "am" in the present.
    pub first_person_singular: bool,
    pub synonym_policy: SynonymPolicy,
}

impl GenerationContext {
    pub fn from_sentence(s: &TaggedSentence, synonym_policy: SynonymPolicy) -> Self {
        GenerationContext {
            tense: s.tense,
            interrogative: s.interrogative,
            subject_number: s.subject_number,
            first_person_singular: morph::subject_is_first_person_singular(&s.tokens),
            synonym_policy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Lexicon,
    Transliterated,
    /// Non-Devanagari token copied through.
    Passthrough,
    Numeral,
    Copula,
    /// Empty gloss; contributes no word.
    Silent,
    /// Function word added by do-support.
    Inserted,
    /// Copula gloss removed for a present-indefinite sentence.
    CopulaDropped,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Lexicon => "lexicon",
            Provenance::Transliterated => "transliterated",
            Provenance::Passthrough => "passthrough",
            Provenance::Numeral => "numeral",
            Provenance::Copula => "copula",
            Provenance::Silent => "silent",
            Provenance::Inserted => "inserted",
            Provenance::CopulaDropped => "copula-dropped",
        }
    }

    /// True when the annotation puts a word in the output.
    pub fn is_visible(self) -> bool {
        !matches!(self, Provenance::Silent | Provenance::CopulaDropped)
    }
}

/// One output word and where it came from. Annotations are kept in output
/// order; invisible ones hold their place for provenance only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    /// Index into the transfer output, `None` for inserted words.
    pub token: Option<usize>,
    pub word: String,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnglishSentence {
    pub text: String,
    pub annotations: Vec<Annotation>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gloss {
    pub word: String,
    pub provenance: Provenance,
    pub warning: Option<String>,
}

impl Gloss {
    fn new(word: impl Into<String>, provenance: Provenance) -> Self {
        Gloss {
            word: word.into(),
            provenance,
            warning: None,
        }
    }
}

/// Present tenses include the unknown case.
pub fn select_copula(ctx: &GenerationContext) -> &'static str {
    match (ctx.tense, ctx.subject_number) {
        (Tense::PastCopula, Number::Sg) => "was",
        (Tense::PastCopula, Number::Pl) => "were",
        _ if ctx.first_person_singular => "am",
        (_, Number::Sg) => "is",
        (_, Number::Pl) => "are",
    }
}

fn ascii_digits(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '०'..='९' => char::from(b'0' + (c as u32 - '०' as u32) as u8),
            _ => c,
        })
        .collect()
}

fn has_devanagari(s: &str) -> bool {
    s.chars().any(|c| ('\u{0900}'..='\u{097F}').contains(&c))
}

pub fn gloss_token(t: &Token, table: &TranslitTable, ctx: &GenerationContext) -> Gloss {
    if let Some(english) = &t.english {
        if english.iter().all(String::is_empty) {
            return Gloss::new("", Provenance::Silent);
        }
        if t.tag() == PosTag::Aux {
            return Gloss::new(select_copula(ctx), Provenance::Copula);
        }
        let word = match ctx.synonym_policy {
            SynonymPolicy::First => english[0].clone(),
            SynonymPolicy::All => english.join("|"),
        };
        return Gloss::new(word, Provenance::Lexicon);
    }
    if t.tag() == PosTag::Num {
        return Gloss::new(ascii_digits(&t.surface), Provenance::Numeral);
    }
    if !has_devanagari(&t.surface) {
        return Gloss::new(t.surface.clone(), Provenance::Passthrough);
    }
    match translit::romanize(&t.surface, table) {
        Ok(word) => Gloss::new(word, Provenance::Transliterated),
        Err(e) => Gloss {
            word: t.surface.clone(),
            provenance: Provenance::Passthrough,
            warning: Some(format!("{}: not transliterated ({e})", t.surface)),
        },
    }
}

fn last_copula(words: &[Annotation]) -> Option<usize> {
    words.iter().rposition(|a| a.provenance == Provenance::Copula)
}

/// Interrogative reordering. Present indefinite drops the copula and
/// prepends Does/Do; other tenses front the copula, or prepend Do when
/// there is none. Verb glosses are left alone.
pub fn apply_do_support(words: &mut Vec<Annotation>, ctx: &GenerationContext) {
    if !ctx.interrogative {
        return;
    }
    let inserted = |w: &str| Annotation {
        token: None,
        word: w.to_string(),
        provenance: Provenance::Inserted,
    };
    if ctx.tense == Tense::PresentIndefinite {
        if let Some(i) = last_copula(words) {
            words[i].provenance = Provenance::CopulaDropped;
        }
        let aux = match ctx.subject_number {
            Number::Sg if !ctx.first_person_singular => "Does",
            _ => "Do",
        };
        words.insert(0, inserted(aux));
        return;
    }
    match last_copula(words) {
        Some(i) => {
            let copula = words.remove(i);
            words.insert(0, copula);
        }
        None => words.insert(0, inserted("Do")),
    }
}

/// Marks members of a noun run that directly precedes a conjunction,
/// except the last, for a trailing comma.
fn comma_positions(tokens: &[Token]) -> Vec<bool> {
    let mut marks = vec![false; tokens.len()];
    let mut run_start = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.tag() == PosTag::Noun {
            continue;
        }
        if t.tag() == PosTag::Conj && i - run_start >= 2 {
            for m in &mut marks[run_start..i - 1] {
                *m = true;
            }
        }
        run_start = i + 1;
    }
    marks
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub fn render(tokens: &[Token], ctx: &GenerationContext, table: &TranslitTable) -> EnglishSentence {
    let mut warnings = Vec::new();
    let commas = comma_positions(tokens);
    let mut words: Vec<Annotation> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let mut g = gloss_token(t, table, ctx);
            if let Some(w) = g.warning.take() {
                warnings.push(w);
            }
            if ctx.interrogative && t.position == 0 && t.surface == QUESTION_PARTICLE {
                g = Gloss::new("", Provenance::Silent);
            }
            if t.replicative && g.provenance.is_visible() {
                g.word = format!("every {}", g.word);
            }
            if commas[i] && g.provenance.is_visible() {
                g.word.push(',');
            }
            Annotation {
                token: Some(i),
                word: g.word,
                provenance: g.provenance,
            }
        })
        .collect();
    if ctx.tense == Tense::PresentIndefinite && !ctx.interrogative {
        if let Some(i) = last_copula(&words) {
            words[i].provenance = Provenance::CopulaDropped;
        }
    }
    apply_do_support(&mut words, ctx);
    let body = words
        .iter()
        .filter(|a| a.provenance.is_visible() && !a.word.is_empty())
        .map(|a| a.word.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    let mut text = capitalize(&body);
    text.push(if ctx.interrogative { '?' } else { '.' });
    EnglishSentence {
        text,
        annotations: words,
        warnings,
    }
}
