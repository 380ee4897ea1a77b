//! Structural transfer: tree rewriting over parse trees, and the flat
//! sentence → phrase → word-to-word cascade over tag sequences.
//!
//! Rule file, one rule per line, `#` comments:
//!
//! ```text
//! tree aux_raise: VP(ADV:x, Y(ADJ:y, AUX:z)) => VP(AUX:z, Y(ADV:x, ADJ:y))
//! sentence coord: NOUN NOUN CONJ NOUN NOUN AUX => 1 2 3 4 6 5
//! phrase pp_swap: NOUN PREP VERB => 3 2 1
//! ```
//!
//! An alignment lists, for each output slot, the 1-based source index that
//! fills it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::iter::Peekable;
use core::str::CharIndices;

use crate::cyk::ParseTree;
use crate::tags::PosTag;
use crate::text::Token;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferError {
    pub line: usize,
    /// Rule name, when the line got far enough to have one.
    pub rule: Option<String>,
    pub message: String,
}

impl fmt::Display for TransferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Some(r) => write!(f, "line {}: rule {r}: {}", self.line, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl core::error::Error for TransferError {}

/// Node of a tree pattern. Leaves bind a variable; inner nodes match by
/// label and exact arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Slot { label: String, var: String },
    Node { label: String, children: Vec<Pattern> },
}

impl Pattern {
    pub fn label(&self) -> &str {
        match self {
            Pattern::Slot { label, .. } | Pattern::Node { label, .. } => label,
        }
    }

    fn slots<'a>(&'a self, out: &mut Vec<(&'a str, &'a str)>) {
        match self {
            Pattern::Slot { label, var } => out.push((var, label)),
            Pattern::Node { children, .. } => children.iter().for_each(|c| c.slots(out)),
        }
    }

    /// Parses `LABEL(child, child)` / `LABEL:var` notation.
    pub fn parse(text: &str) -> Result<Pattern, String> {
        let mut p = PatternParser {
            src: text,
            it: text.char_indices().peekable(),
        };
        let pat = p.pattern()?;
        p.skip_ws();
        match p.it.peek() {
            None => Ok(pat),
            Some(&(i, _)) => Err(format!("unexpected {:?}", &text[i..])),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Slot { label, var } => write!(f, "{label}:{var}"),
            Pattern::Node { label, children } => {
                write!(f, "{label}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct PatternParser<'a> {
    src: &'a str,
    it: Peekable<CharIndices<'a>>,
}

impl PatternParser<'_> {
    fn skip_ws(&mut self) {
        while self.it.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn ident(&mut self, what: &str) -> Result<String, String> {
        self.skip_ws();
        let start = self.it.peek().map_or(self.src.len(), |&(i, _)| i);
        while self
            .it
            .next_if(|&(_, c)| !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | ':'))
            .is_some()
        {}
        let end = self.it.peek().map_or(self.src.len(), |&(i, _)| i);
        if start == end {
            return Err(format!("expected {what}"));
        }
        Ok(self.src[start..end].to_string())
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        self.it.next_if(|&(_, x)| x == c).is_some()
    }

    fn pattern(&mut self) -> Result<Pattern, String> {
        let label = self.ident("label")?;
        if self.eat(':') {
            let var = self.ident("variable name")?;
            return Ok(Pattern::Slot { label, var });
        }
        if !self.eat('(') {
            return Err(format!("{label} needs a variable (LABEL:var) or children"));
        }
        let mut children = vec![self.pattern()?];
        while self.eat(',') {
            children.push(self.pattern()?);
        }
        if !self.eat(')') {
            return Err(format!("unclosed children of {label}"));
        }
        Ok(Pattern::Node { label, children })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeTransferRule {
    pub name: String,
    pub source: Pattern,
    pub target: Pattern,
}

impl TreeTransferRule {
    /// Builds a rule, checking that both sides use the same variables exactly
    /// once each with the same labels.
    pub fn new(name: &str, source: Pattern, target: Pattern) -> Result<Self, String> {
        let mut src = Vec::new();
        source.slots(&mut src);
        let mut tgt = Vec::new();
        target.slots(&mut tgt);
        let mut labels: BTreeMap<&str, &str> = BTreeMap::new();
        for &(var, label) in &src {
            if labels.insert(var, label).is_some() {
                return Err(format!("variable {var} bound twice in source pattern"));
            }
        }
        let mut used: BTreeMap<&str, ()> = BTreeMap::new();
        for &(var, label) in &tgt {
            match labels.get(var) {
                None => return Err(format!("variable {var} not bound in source pattern")),
                Some(&l) if l != label => {
                    return Err(format!("variable {var} is {l} in source but {label} in target"))
                }
                Some(_) => {}
            }
            if used.insert(var, ()).is_some() {
                return Err(format!("variable {var} used twice in target pattern"));
            }
        }
        if let Some((var, _)) = src.iter().find(|(v, _)| !used.contains_key(v)) {
            return Err(format!("variable {var} dropped by target pattern"));
        }
        Ok(TreeTransferRule {
            name: name.to_string(),
            source,
            target,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceLevel {
    Sentence,
    Phrase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTransferRule {
    pub name: String,
    pub level: SequenceLevel,
    pub source_tags: Vec<PosTag>,
    /// Output slot `i` takes source token `alignment[i] - 1`.
    pub alignment: Vec<usize>,
}

impl SequenceTransferRule {
    pub fn new(
        name: &str,
        level: SequenceLevel,
        source_tags: Vec<PosTag>,
        alignment: Vec<usize>,
    ) -> Result<Self, String> {
        let n = source_tags.len();
        if n == 0 {
            return Err("empty tag pattern".to_string());
        }
        if alignment.len() != n {
            return Err(format!("alignment has {} indices for {n} tags", alignment.len()));
        }
        let mut seen = vec![false; n];
        for &a in &alignment {
            if a == 0 || a > n || core::mem::replace(&mut seen[a - 1], true) {
                return Err(format!("alignment is not a permutation of 1..{n}"));
            }
        }
        Ok(SequenceTransferRule {
            name: name.to_string(),
            level,
            source_tags,
            alignment,
        })
    }

    pub fn matches(&self, tokens: &[Token]) -> bool {
        tokens.len() == self.source_tags.len()
            && tokens.iter().zip(&self.source_tags).all(|(t, &tag)| t.tag() == tag)
    }

    /// Reorders a matched span.
    pub fn permute<T: Clone>(&self, span: &[T]) -> Vec<T> {
        self.alignment.iter().map(|&a| span[a - 1].clone()).collect()
    }

    /// The alignment that undoes this one.
    pub fn inverse_alignment(&self) -> Vec<usize> {
        let mut inv = vec![0; self.alignment.len()];
        for (i, &a) in self.alignment.iter().enumerate() {
            inv[a - 1] = i + 1;
        }
        inv
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransferRules {
    pub tree: Vec<TreeTransferRule>,
    pub sequence: Vec<SequenceTransferRule>,
}

impl TransferRules {
    pub fn parse(text: &str) -> Result<Self, TransferError> {
        let (rules, mut errors) = Self::parse_all(text);
        if errors.is_empty() {
            Ok(rules)
        } else {
            Err(errors.swap_remove(0))
        }
    }

    /// Keeps every valid rule and collects every error.
    pub fn parse_all(text: &str) -> (Self, Vec<TransferError>) {
        let mut rules = TransferRules::default();
        let mut errors = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Err(e) = rules.parse_line(line, i + 1) {
                errors.push(e);
            }
        }
        (rules, errors)
    }

    fn parse_line(&mut self, line: &str, line_no: usize) -> Result<(), TransferError> {
        let err = |rule: Option<&str>, message: String| TransferError {
            line: line_no,
            rule: rule.map(str::to_string),
            message,
        };
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| err(None, "expected `<kind> <name>: <source> => <target>`".into()))?;
        let mut head = head.split_whitespace();
        let (Some(kind), Some(name), None) = (head.next(), head.next(), head.next()) else {
            return Err(err(None, "expected `<kind> <name>` before ':'".into()));
        };
        let (lhs, rhs) = body
            .split_once("=>")
            .ok_or_else(|| err(Some(name), "missing `=>`".into()))?;
        if self.names().any(|n| n == name) {
            return Err(err(Some(name), "duplicate rule name".into()));
        }
        match kind {
            "tree" => {
                let source = Pattern::parse(lhs).map_err(|m| err(Some(name), m))?;
                let target = Pattern::parse(rhs).map_err(|m| err(Some(name), m))?;
                let rule = TreeTransferRule::new(name, source, target).map_err(|m| err(Some(name), m))?;
                self.tree.push(rule);
            }
            "sentence" | "phrase" => {
                let level = if kind == "sentence" {
                    SequenceLevel::Sentence
                } else {
                    SequenceLevel::Phrase
                };
                let tags = lhs
                    .split_whitespace()
                    .map(|t| t.parse::<PosTag>().map_err(|_| err(Some(name), format!("unknown tag {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let alignment = rhs
                    .split_whitespace()
                    .map(|a| a.parse::<usize>().map_err(|_| err(Some(name), format!("bad index {a:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let rule = SequenceTransferRule::new(name, level, tags, alignment)
                    .map_err(|m| err(Some(name), m))?;
                self.sequence.push(rule);
            }
            other => return Err(err(Some(name), format!("unknown rule kind {other:?}"))),
        }
        Ok(())
    }

    fn names(&self) -> impl Iterator<Item = &str> {
        self.tree
            .iter()
            .map(|r| r.name.as_str())
            .chain(self.sequence.iter().map(|r| r.name.as_str()))
    }
}

fn bind(pattern: &Pattern, tree: &ParseTree, env: &mut BTreeMap<String, ParseTree>) -> bool {
    match pattern {
        Pattern::Slot { label, var } => {
            if tree.label != *label {
                return false;
            }
            env.insert(var.clone(), tree.clone());
            true
        }
        Pattern::Node { label, children } => {
            tree.label == *label
                && tree.token.is_none()
                && tree.children.len() == children.len()
                && children.iter().zip(&tree.children).all(|(p, t)| bind(p, t, env))
        }
    }
}

fn instantiate(pattern: &Pattern, env: &mut BTreeMap<String, ParseTree>) -> ParseTree {
    match pattern {
        Pattern::Slot { var, .. } => env.remove(var).expect("validated rule binds every variable"),
        Pattern::Node { label, children } => {
            ParseTree::node(label.clone(), children.iter().map(|c| instantiate(c, env)).collect())
        }
    }
}

fn rewrite(tree: ParseTree, rule: &TreeTransferRule, count: &mut usize) -> ParseTree {
    let mut env = BTreeMap::new();
    if bind(&rule.source, &tree, &mut env) {
        *count += 1;
        // bound subtrees are visited once; the rewritten node itself is not re-matched
        for sub in env.values_mut() {
            *sub = rewrite(core::mem::replace(sub, ParseTree::node("", Vec::new())), rule, count);
        }
        return instantiate(&rule.target, &mut env);
    }
    let ParseTree {
        label,
        children,
        token,
    } = tree;
    ParseTree {
        label,
        children: children.into_iter().map(|c| rewrite(c, rule, count)).collect(),
        token,
    }
}

/// One top-down, leftmost-first pass per rule, rules in file order.
/// Returns the rewritten tree and the number of rewrites made.
pub fn apply_tree_transfer_counted(tree: ParseTree, rules: &[TreeTransferRule]) -> (ParseTree, usize) {
    let mut count = 0;
    let mut tree = tree;
    for rule in rules {
        tree = rewrite(tree, rule, &mut count);
    }
    (tree, count)
}

pub fn apply_tree_transfer(tree: ParseTree, rules: &[TreeTransferRule]) -> ParseTree {
    apply_tree_transfer_counted(tree, rules).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Tree,
    SentenceSeq,
    PhraseSeq,
    WordToWord,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Tree => "TREE",
            Method::SentenceSeq => "SENTENCE_SEQ",
            Method::PhraseSeq => "PHRASE_SEQ",
            Method::WordToWord => "WORD_TO_WORD",
        }
    }
}

/// A half-open range of output positions and how it was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub method: Method,
    /// The rule that produced the span, if any.
    pub rule: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferResult {
    pub tokens: Vec<Token>,
    pub spans: Vec<Span>,
}

impl TransferResult {
    /// Leaf order of a transferred tree as a single span.
    pub fn from_tree(tree: ParseTree) -> Self {
        let tokens = tree.into_leaves();
        let spans = vec![Span {
            start: 0,
            end: tokens.len(),
            method: Method::Tree,
            rule: None,
        }];
        TransferResult { tokens, spans }
    }
}

/// Sentence-level full match, else greedy leftmost-longest phrase cover,
/// else source order word by word.
pub fn apply_sequence_transfer(tokens: &[Token], rules: &[SequenceTransferRule]) -> TransferResult {
    let level = |l| rules.iter().filter(move |r| r.level == l);
    if let Some(r) = level(SequenceLevel::Sentence).find(|r| r.matches(tokens)) {
        return TransferResult {
            tokens: r.permute(tokens),
            spans: vec![Span {
                start: 0,
                end: tokens.len(),
                method: Method::SentenceSeq,
                rule: Some(r.name.clone()),
            }],
        };
    }
    let mut out = Vec::with_capacity(tokens.len());
    let mut spans: Vec<Span> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut best: Option<&SequenceTransferRule> = None;
        for r in level(SequenceLevel::Phrase) {
            let len = r.source_tags.len();
            if i + len <= tokens.len()
                && r.matches(&tokens[i..i + len])
                && best.is_none_or(|b| len > b.source_tags.len())
            {
                best = Some(r);
            }
        }
        match best {
            Some(r) => {
                let len = r.source_tags.len();
                out.extend(r.permute(&tokens[i..i + len]));
                spans.push(Span {
                    start: i,
                    end: i + len,
                    method: Method::PhraseSeq,
                    rule: Some(r.name.clone()),
                });
                i += len;
            }
            None => {
                out.push(tokens[i].clone());
                match spans.last_mut() {
                    Some(s) if s.method == Method::WordToWord && s.end == i => s.end = i + 1,
                    _ => spans.push(Span {
                        start: i,
                        end: i + 1,
                        method: Method::WordToWord,
                        rule: None,
                    }),
                }
                i += 1;
            }
        }
    }
    TransferResult { tokens: out, spans }
}

/// Collapses each adjacent pair of identical nouns into one token flagged
/// replicative. Pairs are taken left to right, so a triple keeps its third
/// member as an ordinary token. Positions are renumbered.
pub fn handle_replicative(tokens: &[Token]) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        let pair = tokens.get(i + 1).is_some_and(|u| {
            t.tag() == PosTag::Noun && u.tag() == PosTag::Noun && u.surface == t.surface
        });
        let mut t = t.clone();
        if pair {
            t.replicative = true;
            i += 2;
        } else {
            i += 1;
        }
        t.position = out.len();
        out.push(t);
    }
    out
}
