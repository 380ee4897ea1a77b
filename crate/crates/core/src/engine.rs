//! The full translation pipeline over loaded resources, plus resource lint.
//!
//! Per sentence: tokenize, tag with first lexicon entries, collapse
//! replicative nouns, parse (retrying alternative tags for ambiguous words
//! when the first tagging does not parse), transfer, generate. A sentence
//! that cannot be parsed or transferred by tree rules falls back to the
//! sequence cascade; nothing aborts a batch once resources are loaded.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::cyk::{self, ParseChart, ParseTree};
use crate::generate::{self, Annotation, GenerationContext, Provenance, SynonymPolicy};
use crate::grammar::{CnfGrammar, Grammar, GrammarError, GrammarWarning};
use crate::lexicon::Lexicon;
use crate::morph::{self, TaggedSentence};
use crate::tags::PosTag;
use crate::text::{self, Sentence, Token};
use crate::transfer::{self, Span, TransferResult, TransferRules};
use crate::translit::TranslitTable;

/// Tag assignments tried per sentence, the first-entry tagging included.
pub const MAX_TAGGINGS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    Grammar(GrammarError),
    /// The pipeline grammar must not derive the empty string.
    EpsilonGrammar,
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Grammar(e) => write!(f, "{e}"),
            EngineError::EpsilonGrammar => f.write_str("grammar has empty productions"),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<GrammarError> for EngineError {
    fn from(e: GrammarError) -> Self {
        EngineError::Grammar(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngineOptions {
    pub synonym_policy: SynonymPolicy,
}

#[derive(Debug, Clone)]
pub struct Engine {
    lexicon: Lexicon,
    grammar: Grammar,
    cnf: CnfGrammar,
    rules: TransferRules,
    translit: TranslitTable,
    pub options: EngineOptions,
}

/// Tagging and parsing outcome for one sentence.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub sentence: TaggedSentence,
    pub chart: ParseChart,
    /// Taggings tried after the first-entry one.
    pub retries: usize,
}

impl Analysis {
    pub fn parsed(&self) -> bool {
        self.chart.accepts()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceReport {
    pub index: usize,
    pub source: String,
    pub tokens: Vec<String>,
    pub tags: Vec<PosTag>,
    pub parsed: bool,
    /// Preferred parse after restoration, before transfer.
    pub tree: Option<String>,
    /// Surfaces in transfer-output order.
    pub transferred: Vec<String>,
    pub spans: Vec<Span>,
    pub output: String,
    pub annotations: Vec<Annotation>,
    pub oov: Vec<String>,
    pub retries: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TranslationReport {
    pub sentences: Vec<SentenceReport>,
}

impl TranslationReport {
    pub fn outputs(&self) -> impl Iterator<Item = &str> {
        self.sentences.iter().map(|s| s.output.as_str())
    }
}

impl Engine {
    pub fn new(
        lexicon: Lexicon,
        grammar: Grammar,
        rules: TransferRules,
        translit: TranslitTable,
    ) -> Result<Self, EngineError> {
        if grammar.has_epsilon() {
            return Err(EngineError::EpsilonGrammar);
        }
        let cnf = grammar.to_cnf()?;
        Ok(Engine {
            lexicon,
            grammar,
            cnf,
            rules,
            translit,
            options: EngineOptions::default(),
        })
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn cnf(&self) -> &CnfGrammar {
        &self.cnf
    }

    pub fn rules(&self) -> &TransferRules {
        &self.rules
    }

    pub fn translit(&self) -> &TranslitTable {
        &self.translit
    }

    /// Tags and parses a sentence. When the first-entry tagging does not
    /// parse, alternative entries for ambiguous words are tried in
    /// lexicographic order; the first tagging that parses wins, otherwise
    /// the first-entry tagging is kept.
    pub fn analyze(&self, sentence: &Sentence) -> Option<Analysis> {
        let tokens = text::tokenize(sentence);
        if tokens.is_empty() {
            return None;
        }
        let base = transfer::handle_replicative(&morph::tag_tokens(&tokens, &self.lexicon));
        let choices: Vec<usize> = base
            .iter()
            .map(|t| morph::candidates(&t.surface, &self.lexicon).len().max(1))
            .collect();
        let mut digits = alloc::vec![0usize; base.len()];
        let mut first: Option<ParseChart> = None;
        let mut tried = 0;
        loop {
            let candidate = self.retag(&base, &digits);
            let chart = cyk::cyk_recognize(&candidate, &self.cnf).expect("sentence has tokens");
            tried += 1;
            if chart.accepts() {
                return Some(self.finish(candidate, chart, tried - 1, sentence));
            }
            first.get_or_insert(chart);
            if tried == MAX_TAGGINGS || !next_combination(&mut digits, &choices) {
                break;
            }
        }
        let chart = first.expect("at least one tagging tried");
        Some(self.finish(base, chart, tried - 1, sentence))
    }

    fn retag(&self, base: &[Token], digits: &[usize]) -> Vec<Token> {
        base.iter()
            .zip(digits)
            .map(|(t, &d)| {
                let mut t = t.clone();
                if d > 0 {
                    let entries = morph::candidates(&t.surface, &self.lexicon);
                    morph::apply_entry(&mut t, entries[d]);
                }
                t
            })
            .collect()
    }

    fn finish(&self, tokens: Vec<Token>, chart: ParseChart, retries: usize, s: &Sentence) -> Analysis {
        Analysis {
            sentence: TaggedSentence::analyze(tokens, s.terminator),
            chart,
            retries,
        }
    }

    pub fn translate_sentence(&self, sentence: &Sentence) -> Option<SentenceReport> {
        let analysis = self.analyze(sentence)?;
        let tokens = &analysis.sentence.tokens;
        let tree = cyk::extract_tree(&analysis.chart, &self.cnf);
        let tree_text = tree.as_ref().map(ParseTree::to_string);
        let result = match tree {
            Some(tree) => {
                let (rewritten, count) = transfer::apply_tree_transfer_counted(tree, &self.rules.tree);
                if count > 0 {
                    TransferResult::from_tree(rewritten)
                } else {
                    transfer::apply_sequence_transfer(tokens, &self.rules.sequence)
                }
            }
            None => transfer::apply_sequence_transfer(tokens, &self.rules.sequence),
        };
        let ctx = GenerationContext::from_sentence(&analysis.sentence, self.options.synonym_policy);
        let english = generate::render(&result.tokens, &ctx, &self.translit);
        let mut warnings = english.warnings;
        let oov: Vec<String> = tokens
            .iter()
            .filter(|t| t.english.is_none() && t.tag() == PosTag::Unk)
            .map(|t| t.surface.clone())
            .collect();
        if !oov.is_empty() {
            warnings.push(format!("out of vocabulary: {}", oov.join(" ")));
        }
        if !analysis.parsed() {
            warnings.push("no full parse; used sequence rules".to_string());
        }
        Some(SentenceReport {
            index: sentence.index,
            source: sentence.text.clone(),
            tokens: tokens.iter().map(|t| t.surface.clone()).collect(),
            tags: tokens.iter().map(Token::tag).collect(),
            parsed: analysis.parsed(),
            tree: tree_text,
            transferred: result.tokens.iter().map(|t| t.surface.clone()).collect(),
            spans: result.spans,
            output: english.text,
            annotations: english.annotations,
            oov,
            retries: analysis.retries,
            warnings,
        })
    }

    /// Translates every sentence of a raw document, in input order.
    pub fn translate_document(&self, raw: &str) -> TranslationReport {
        let doc = text::preprocess(raw);
        TranslationReport {
            sentences: text::split_sentences(&doc)
                .iter()
                .filter_map(|s| self.translate_sentence(s))
                .collect(),
        }
    }
}

/// Odometer increment, rightmost digit fastest. False once exhausted.
fn next_combination(digits: &mut [usize], choices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < choices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Lexicon,
    Grammar,
    Rules,
    Translit,
}

impl Resource {
    pub fn as_str(self) -> &'static str {
        match self {
            Resource::Lexicon => "lexicon",
            Resource::Grammar => "grammar",
            Resource::Rules => "rules",
            Resource::Translit => "translit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub resource: Resource,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity.as_str(), self.resource.as_str(), self.message)
    }
}

/// Resource texts to lint; `None` skips that resource.
#[derive(Debug, Clone, Copy, Default)]
pub struct LintInput<'a> {
    pub lexicon: Option<&'a str>,
    pub grammar: Option<&'a str>,
    pub rules: Option<&'a str>,
    pub translit: Option<&'a str>,
}

pub fn lint_resources(input: LintInput<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |severity, resource, message: String| {
        out.push(Diagnostic {
            severity,
            resource,
            message,
        })
    };
    let mut surfaces: BTreeSet<String> = BTreeSet::new();
    if let Some(text) = input.lexicon {
        let (lex, errors) = Lexicon::parse_all(text);
        for e in errors {
            push(Severity::Error, Resource::Lexicon, e.to_string());
        }
        surfaces.extend(lex.entries().iter().map(|e| e.hindi.clone()));
    }
    let mut labels: Option<BTreeSet<String>> = None;
    if let Some(text) = input.grammar {
        match Grammar::parse(text) {
            Err(e) => push(Severity::Error, Resource::Grammar, e.to_string()),
            Ok(g) => {
                for w in g.warnings() {
                    let msg = match w {
                        GrammarWarning::Unreachable(v) => format!("{v} is unreachable from the start symbol"),
                        GrammarWarning::Unproductive(v) => format!("{v} derives no terminal string"),
                    };
                    push(Severity::Warning, Resource::Grammar, msg);
                }
                if g.has_epsilon() {
                    push(Severity::Error, Resource::Grammar, "empty productions are not allowed".into());
                }
                if let Err(e) = g.to_cnf() {
                    push(Severity::Error, Resource::Grammar, format!("cannot convert to CNF: {e}"));
                }
                for t in g.terminals() {
                    let is_tag = t.parse::<PosTag>().is_ok();
                    if !is_tag && input.lexicon.is_some() && !surfaces.contains(t) {
                        push(
                            Severity::Warning,
                            Resource::Grammar,
                            format!("terminal {t} is neither a POS tag nor a lexicon word"),
                        );
                    }
                }
                let mut l: BTreeSet<String> = g.variables().map(str::to_string).collect();
                l.extend(g.terminals().map(str::to_string));
                labels = Some(l);
            }
        }
    }
    if let Some(text) = input.rules {
        let (rules, errors) = TransferRules::parse_all(text);
        for e in errors {
            push(Severity::Error, Resource::Rules, e.to_string());
        }
        if let Some(labels) = &labels {
            for r in &rules.tree {
                let mut unknown = Vec::new();
                pattern_labels(&r.source, &mut unknown);
                unknown.retain(|l| !labels.contains(l.as_str()));
                unknown.dedup();
                for l in unknown {
                    push(
                        Severity::Warning,
                        Resource::Rules,
                        format!("rule {}: label {l} does not occur in the grammar", r.name),
                    );
                }
            }
        }
    }
    if let Some(text) = input.translit {
        let (table, errors) = TranslitTable::parse_all(text);
        for e in errors {
            push(Severity::Error, Resource::Translit, e.to_string());
        }
        let missing = table.missing_consonants();
        if !missing.is_empty() {
            push(
                Severity::Warning,
                Resource::Translit,
                format!("no row for consonants: {}", missing.join(" ")),
            );
        }
    }
    out
}

fn pattern_labels(p: &transfer::Pattern, out: &mut Vec<String>) {
    out.push(p.label().to_string());
    if let transfer::Pattern::Node { children, .. } = p {
        children.iter().for_each(|c| pattern_labels(c, out));
    }
}

/// True when the annotation list renders a visible word for every token
/// of the transfer output except silent and dropped ones.
pub fn annotations_cover(annotations: &[Annotation], tokens: usize) -> bool {
    let mut seen = alloc::vec![0usize; tokens];
    for a in annotations {
        if let Some(i) = a.token {
            if i >= tokens {
                return false;
            }
            seen[i] += 1;
        } else if a.provenance != Provenance::Inserted {
            return false;
        }
    }
    seen.iter().all(|&n| n == 1)
}
