//! Randomized checks shared by the per-crate integration tests and the
//! acceptance runner. Each returns the number of cases run, or the first
//! failure with its minimized input.

use std::cell::Cell;
use std::collections::BTreeMap;

use hien_core::cyk;
use hien_core::generate::{select_copula, GenerationContext, SynonymPolicy};
use hien_core::grammar::{Grammar, GrammarError};
use hien_core::morph::Tense;
use hien_core::tags::{Number, PosTag};
use hien_core::text::{self, Token};
use hien_core::cyk::ParseTree;
use hien_core::transfer::{self, SequenceLevel, SequenceTransferRule, TransferRules};
use hien_core::translit::{self, GlyphClass, TranslitTable};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use super::oracle;

pub const TERMINALS: [&str; 3] = ["a", "b", "c"];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<usize, String>
where
    S::Value: std::fmt::Debug,
{
    let count = Cell::new(0usize);
    runner(cases)
        .run(&strategy, |v| {
            count.set(count.get() + 1);
            test(v)
        })
        .map_err(|e| e.to_string())?;
    Ok(count.get())
}

fn nt(i: usize) -> String {
    format!("N{i}")
}

#[derive(Debug, Clone)]
pub enum CnfRule {
    Terminal(usize, usize),
    Binary(usize, usize, usize),
}

/// Random grammars already in CNF shape: up to 6 nonterminals, N0 starts.
pub fn cnf_rules() -> impl Strategy<Value = Vec<CnfRule>> {
    (1..=6usize).prop_flat_map(|k| {
        let rule = prop_oneof![
            (0..k, 0..TERMINALS.len()).prop_map(|(h, t)| CnfRule::Terminal(h, t)),
            (0..k, 0..k, 0..k).prop_map(|(h, b, c)| CnfRule::Binary(h, b, c)),
        ];
        prop::collection::vec(rule, 1..=12).prop_map(|mut rules| {
            match &mut rules[0] {
                CnfRule::Terminal(h, _) | CnfRule::Binary(h, _, _) => *h = 0,
            }
            rules
        })
    })
}

pub fn build_cnf(rules: &[CnfRule]) -> Grammar {
    let owned: Vec<(String, Vec<String>)> = rules
        .iter()
        .map(|r| match *r {
            CnfRule::Terminal(h, t) => (nt(h), vec![TERMINALS[t].to_string()]),
            CnfRule::Binary(h, b, c) => (nt(h), vec![nt(b), nt(c)]),
        })
        .collect();
    from_owned(&owned)
}

fn from_owned(rules: &[(String, Vec<String>)]) -> Grammar {
    let bodies: Vec<Vec<&str>> = rules.iter().map(|(_, b)| b.iter().map(String::as_str).collect()).collect();
    let pairs: Vec<(&str, &[&str])> = rules
        .iter()
        .zip(&bodies)
        .map(|((h, _), b)| (h.as_str(), b.as_slice()))
        .collect();
    Grammar::from_rules("N0", &pairs).expect("N0 heads the first rule")
}

fn cyk_accepts(g: &Grammar, input: &[&str]) -> Result<bool, String> {
    let cnf = match g.to_cnf() {
        Ok(c) => c,
        Err(GrammarError::EmptyLanguage) => return Ok(false),
        Err(e) => return Err(e.to_string()),
    };
    let tokens: Vec<Token> = input.iter().enumerate().map(|(i, w)| Token::new(*w, i)).collect();
    let chart = cyk::cyk_recognize(&tokens, &cnf).map_err(|e| e.to_string())?;
    if !chart.check_invariants(&cnf) {
        return Err("chart back-pointer invariant violated".into());
    }
    if chart.accepts() {
        let tree = cyk::extract_tree(&chart, &cnf).ok_or("accepted input has no tree")?;
        let leaves: Vec<&str> = tree.leaves().iter().map(|t| t.surface.as_str()).collect();
        if leaves != input {
            return Err(format!("tree yield {leaves:?} differs from input"));
        }
    }
    Ok(chart.accepts())
}

/// Members drawn from the grammar itself are at most this long; random
/// inputs go up to 8 symbols.
pub const SAMPLE_LENGTH: usize = 5;

/// CYK membership against exhaustive derivation search. Half the inputs are
/// sampled from the grammar's own language so that both outcomes occur.
pub fn cyk_oracle_equivalence(cases: u32) -> Result<(usize, usize), String> {
    let members = Cell::new(0usize);
    let strategy = (
        cnf_rules(),
        prop::collection::vec(0..TERMINALS.len(), 1..=8),
        any::<bool>(),
        any::<prop::sample::Index>(),
    );
    let n = run(cases, strategy, |(rules, raw, sample, idx)| {
        let g = build_cnf(&rules);
        let mut input: Vec<String> = raw.iter().map(|&t| TERMINALS[t].to_string()).collect();
        if sample {
            let lang: Vec<_> = oracle::language_upto(&g, SAMPLE_LENGTH).into_iter().collect();
            if !lang.is_empty() {
                input = idx.get(&lang).clone();
            }
        }
        let input: Vec<&str> = input.iter().map(String::as_str).collect();
        let expected = oracle::derives(&g, &input);
        let got = cyk_accepts(&g, &input).map_err(TestCaseError::fail)?;
        prop_assert_eq!(got, expected, "grammar {:?} input {:?}", rules, input);
        if expected {
            members.set(members.get() + 1);
        }
        Ok(())
    })?;
    Ok((n, members.get()))
}

/// Arbitrary small grammars: up to 6 nonterminals, 10 rules, bodies of
/// length 0 to 3 over nonterminals and a three-letter alphabet.
pub fn general_rules() -> impl Strategy<Value = Vec<(usize, Vec<usize>)>> {
    (1..=6usize).prop_flat_map(|k| {
        let symbol = 0..k + TERMINALS.len();
        let rule = (0..k, prop::collection::vec(symbol, 0..=3));
        prop::collection::vec(rule, 1..=10).prop_map(move |mut rules| {
            rules[0].0 = 0;
            rules
                .into_iter()
                .map(|(h, body)| (h, body.into_iter().map(|s| s + 100 * k).collect()))
                .collect::<Vec<(usize, Vec<usize>)>>()
        })
    })
}

fn build_general(rules: &[(usize, Vec<usize>)]) -> Grammar {
    // symbols are offset by 100·k so the nonterminal count can be recovered
    let owned: Vec<(String, Vec<String>)> = rules
        .iter()
        .map(|(h, body)| {
            let body = body
                .iter()
                .map(|&s| {
                    let (k, s) = (s / 100, s % 100);
                    if s < k {
                        nt(s)
                    } else {
                        TERMINALS[s - k].to_string()
                    }
                })
                .collect();
            (nt(*h), body)
        })
        .collect();
    from_owned(&owned)
}

pub const LANGUAGE_LENGTH: usize = 6;

/// Strings up to length 6 coincide before and after CNF conversion.
pub fn cnf_language_preservation(cases: u32) -> Result<(usize, usize), String> {
    let nonempty = Cell::new(0usize);
    let n = run(cases, general_rules(), |rules| {
        let g = build_general(&rules);
        let before = oracle::language_upto(&g, LANGUAGE_LENGTH);
        match g.to_cnf() {
            Ok(cnf) => {
                prop_assert!(cnf.is_cnf(), "not in CNF: {:?}", cnf.rule_strings());
                let after = oracle::language_upto(&cnf.to_grammar(), LANGUAGE_LENGTH);
                prop_assert_eq!(&before, &after, "grammar {:?}", rules);
            }
            Err(GrammarError::EmptyLanguage) => {
                prop_assert!(before.is_empty(), "conversion reported an empty language");
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
        if !before.is_empty() {
            nonempty.set(nonempty.get() + 1);
        }
        Ok(())
    })?;
    Ok((n, nonempty.get()))
}

/// Text drawn from Devanagari letters, signs, punctuation, whitespace and
/// joiners.
pub fn raw_text() -> impl Strategy<Value = String> {
    let pieces = prop::sample::select(vec![
        "क", "ख", "ग", "म", "न", "र", "स", "ह", "अ", "आ", "ि", "ी", "ा", "े", "्", "़", "ं", "१", "7",
        " ", "  ", "\t", "\n", ",", "।", "॥", "?", ".", "!", "\u{200D}", "\u{200C}", "x", "\u{095C}",
    ]);
    (any::<bool>(), prop::collection::vec(pieces, 0..40)).prop_map(|(bom, v)| {
        let body: String = v.concat();
        if bom {
            format!("\u{FEFF}{body}")
        } else {
            body
        }
    })
}

/// Preprocessing is idempotent, tokens hold no delimiters, and tokenizing
/// the space-joined tokens gives the same tokens back.
pub fn tokenizer_round_trip(cases: u32) -> Result<usize, String> {
    run(cases, raw_text(), |raw| {
        let once = text::preprocess(&raw);
        prop_assert_eq!(&text::preprocess(&once), &once);
        for s in text::split_sentences(&once) {
            let toks = text::tokenize(&s);
            prop_assert!(!toks.is_empty());
            prop_assert!(toks.iter().all(|t| !t.surface.is_empty() && !t.surface.chars().any(text::is_delimiter)));
            let joined = toks.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
            let again = text::tokenize_str(&joined);
            prop_assert_eq!(again, toks);
        }
        Ok(())
    })
}

fn tags() -> impl Strategy<Value = PosTag> {
    prop::sample::select(vec![PosTag::Noun, PosTag::Verb, PosTag::Prep, PosTag::Aux, PosTag::Conj])
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

fn seq_rule() -> impl Strategy<Value = SequenceTransferRule> {
    (permutation(4), any::<bool>()).prop_flat_map(|(perm, sentence)| {
        prop::collection::vec(tags(), perm.len()).prop_map(move |ts| {
            let level = if sentence { SequenceLevel::Sentence } else { SequenceLevel::Phrase };
            SequenceTransferRule::new("r", level, ts, perm.clone()).expect("permutation")
        })
    })
}

fn tagged_tokens(tags: &[PosTag]) -> Vec<Token> {
    tags.iter()
        .enumerate()
        .map(|(i, &t)| Token::tagged(format!("w{i}"), i, t))
        .collect()
}

fn positions(tokens: &[Token]) -> Vec<usize> {
    let mut p: Vec<usize> = tokens.iter().map(|t| t.position).collect();
    p.sort_unstable();
    p
}

const TREE_RULES: &str = "\
tree r1: X(A:a, B:b) => X(B:b, A:a)
tree r2: X(Y:y, A:a) => X(A:a, Y:y)
tree r3: Y(X:x, C:c, A:a) => Y(A:a, Y(X:x, C:c))
tree r4: Y(B:b) => X(B:b)
";

fn random_tree() -> impl Strategy<Value = ParseTree> {
    let leaf = prop::sample::select(vec!["A", "B", "C"]).prop_map(|l| ParseTree::leaf(l, Token::new("", 0)));
    leaf.prop_recursive(4, 24, 3, |inner| {
        (prop::sample::select(vec!["X", "Y"]), prop::collection::vec(inner, 1..=3))
            .prop_map(|(l, kids)| ParseTree::node(l, kids))
    })
}

fn number_leaves(tree: &mut ParseTree, next: &mut usize) {
    if let Some(t) = &mut tree.token {
        t.position = *next;
        *next += 1;
    }
    for c in &mut tree.children {
        number_leaves(c, next);
    }
}

/// Neither sequence nor tree transfer drops or duplicates tokens, and the
/// sequence cascade's spans tile the output.
pub fn transfer_permutation(cases: u32) -> Result<usize, String> {
    let tree_rules = TransferRules::parse(TREE_RULES).expect("valid rules").tree;
    let strategy = (
        prop::collection::vec(tags(), 0..12),
        prop::collection::vec(seq_rule(), 0..5),
        random_tree(),
    );
    run(cases, strategy, |(ts, rules, mut tree)| {
        let toks = tagged_tokens(&ts);
        let out = transfer::apply_sequence_transfer(&toks, &rules);
        prop_assert_eq!(positions(&out.tokens), (0..toks.len()).collect::<Vec<_>>());
        let mut end = 0;
        for s in &out.spans {
            prop_assert_eq!(s.start, end);
            prop_assert!(s.end > s.start);
            end = s.end;
        }
        prop_assert_eq!(end, toks.len());
        if rules.is_empty() {
            prop_assert_eq!(&out.tokens, &toks);
        }

        let mut n = 0;
        number_leaves(&mut tree, &mut n);
        let leaves_before: Vec<Token> = tree.leaves().into_iter().cloned().collect();
        let out = transfer::apply_tree_transfer(tree, &tree_rules);
        let leaves_after: Vec<Token> = out.leaves().into_iter().cloned().collect();
        prop_assert_eq!(positions(&leaves_after), positions(&leaves_before));
        Ok(())
    })
}

/// Applying a rule and then its inverse alignment restores source order.
pub fn inverse_alignment(cases: u32) -> Result<usize, String> {
    run(cases, permutation(10), |perm| {
        let n = perm.len();
        let r = SequenceTransferRule::new("r", SequenceLevel::Phrase, vec![PosTag::Noun; n], perm)
            .map_err(TestCaseError::fail)?;
        let inv = SequenceTransferRule::new("inv", SequenceLevel::Phrase, vec![PosTag::Noun; n], r.inverse_alignment())
            .map_err(TestCaseError::fail)?;
        let toks = tagged_tokens(&vec![PosTag::Noun; n]);
        let there = transfer::apply_sequence_transfer(&toks, std::slice::from_ref(&r)).tokens;
        let back = transfer::apply_sequence_transfer(&there, std::slice::from_ref(&inv)).tokens;
        prop_assert_eq!(back, toks);
        Ok(())
    })
}

/// Expected copula, written out cell by cell.
fn copula_table(tense: Tense, number: Number, first_person: bool) -> &'static str {
    use Number::*;
    use Tense::*;
    match (tense, number, first_person) {
        (PastCopula, Sg, _) => "was",
        (PastCopula, Pl, _) => "were",
        (PresentIndefinite | PresentContinuous | Unknown, _, true) => "am",
        (PresentIndefinite | PresentContinuous | Unknown, Sg, false) => "is",
        (PresentIndefinite | PresentContinuous | Unknown, Pl, false) => "are",
    }
}

pub fn copula_grid(cases: u32) -> Result<usize, String> {
    let tense = prop::sample::select(vec![
        Tense::PresentIndefinite,
        Tense::PresentContinuous,
        Tense::PastCopula,
        Tense::Unknown,
    ]);
    let number = prop::sample::select(vec![Number::Sg, Number::Pl]);
    run(cases, (tense, number, any::<bool>(), any::<bool>()), |(tense, n, fps, q)| {
        let ctx = GenerationContext {
            tense,
            interrogative: q,
            subject_number: n,
            first_person_singular: fps,
            synonym_policy: SynonymPolicy::First,
        };
        prop_assert_eq!(select_copula(&ctx), copula_table(tense, n, fps));
        Ok(())
    })
}

/// A word ending in a matra keeps that matra's full romanization, and the
/// consonant before it loses only its inherent vowel.
pub fn matra_final_no_schwa_deletion(table: &TranslitTable, cases: u32) -> Result<usize, String> {
    let consonants: Vec<(String, String)> = table
        .glyphs(GlyphClass::Consonant)
        .map(|(g, l)| (g.to_string(), l.to_string()))
        .collect();
    let matras: Vec<(String, String)> = table
        .glyphs(GlyphClass::Matra)
        .map(|(g, l)| (g.to_string(), l.to_string()))
        .collect();
    if consonants.is_empty() || matras.is_empty() {
        return Err("table has no consonants or no matras".into());
    }
    let strategy = (
        prop::collection::vec(prop::sample::select(consonants.clone()), 0..5),
        prop::sample::select(consonants),
        prop::sample::select(matras),
    );
    run(cases, strategy, |(prefix, (c, c_latin), (m, m_latin))| {
        let stem: String = prefix.iter().map(|(g, _)| g.as_str()).collect();
        let word = format!("{stem}{c}{m}");
        let out = translit::romanize(&word, table).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let expected_tail = format!("{}{}", c_latin.strip_suffix('a').unwrap_or(&c_latin), m_latin);
        prop_assert!(out.ends_with(&expected_tail), "{} -> {}", word, out);
        prop_assert!(out.is_ascii() && !out.is_empty());
        // locality: the non-final syllables read the same as in the bare stem
        if !prefix.is_empty() {
            let with_a = translit::romanize(&format!("{stem}{c}ा"), table).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let head: String = prefix.iter().map(|(_, l)| l.as_str()).collect();
            prop_assert!(out.starts_with(&head) && with_a.starts_with(&head));
        }
        Ok(())
    })
}

/// Every matra code point, mapped to a placeholder romanization.
pub fn full_matra_table() -> TranslitTable {
    let mut t = TranslitTable::default();
    let latin: BTreeMap<u32, &str> = [
        (0x093E, "a"), (0x093F, "i"), (0x0940, "ee"), (0x0941, "u"), (0x0942, "oo"), (0x0943, "ri"),
        (0x0944, "rri"), (0x0945, "e"), (0x0946, "e"), (0x0947, "e"), (0x0948, "ai"), (0x0949, "o"),
        (0x094A, "o"), (0x094B, "o"), (0x094C, "au"), (0x0962, "li"), (0x0963, "lli"),
    ]
    .into_iter()
    .collect();
    for (cp, l) in latin {
        let g = char::from_u32(cp).expect("valid").to_string();
        t.insert(&g, GlyphClass::Matra, l).expect("matra row");
    }
    for (g, l) in [("क", "ka"), ("म", "ma"), ("ल", "la"), ("य", "ya"), ("र", "ra")] {
        t.insert(g, GlyphClass::Consonant, l).expect("consonant row");
    }
    t
}
