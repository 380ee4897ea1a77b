//! Reference implementations used to check the parser and the CNF
//! conversion. They work on the plain grammar definition and share no code
//! with the library's algorithms.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use hien_core::grammar::{Grammar, SymbolId};

pub type Word = Vec<String>;

/// Every terminal string of length at most `max_len` derivable from the
/// start symbol, by iterating derivation height until nothing new appears.
pub fn language_upto(g: &Grammar, max_len: usize) -> BTreeSet<Word> {
    let mut lang: BTreeMap<SymbolId, BTreeSet<Vec<SymbolId>>> = BTreeMap::new();
    for p in g.productions() {
        lang.entry(p.head).or_default();
    }
    loop {
        let mut changed = false;
        for p in g.productions() {
            let mut partial: BTreeSet<Vec<SymbolId>> = BTreeSet::from([Vec::new()]);
            for &s in &p.body {
                let options: Vec<Vec<SymbolId>> = if g.is_variable(s) {
                    lang[&s].iter().cloned().collect()
                } else {
                    vec![vec![s]]
                };
                let mut next = BTreeSet::new();
                for prefix in &partial {
                    for w in &options {
                        if prefix.len() + w.len() <= max_len {
                            let mut joined = prefix.clone();
                            joined.extend_from_slice(w);
                            next.insert(joined);
                        }
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            let set = lang.get_mut(&p.head).expect("head registered");
            for w in partial {
                changed |= set.insert(w);
            }
        }
        if !changed {
            break;
        }
    }
    lang[&g.start()]
        .iter()
        .map(|w| w.iter().map(|&s| g.name(s).to_string()).collect())
        .collect()
}

/// Membership by exhaustive leftmost derivation. Assumes no empty
/// productions, so sentential forms never shrink and can be cut off at the
/// input length.
pub fn derives(g: &Grammar, input: &[&str]) -> bool {
    let target: Vec<Option<SymbolId>> = input.iter().map(|w| g.symbols().get(w)).collect();
    if target.iter().any(Option::is_none) {
        return false;
    }
    let target: Vec<SymbolId> = target.into_iter().flatten().collect();
    let mut seen: HashSet<Vec<SymbolId>> = HashSet::new();
    let mut stack = vec![vec![g.start()]];
    while let Some(form) = stack.pop() {
        if form.len() > target.len() || !seen.insert(form.clone()) {
            continue;
        }
        let Some(i) = form.iter().position(|&s| g.is_variable(s)) else {
            if form == target {
                return true;
            }
            continue;
        };
        if form[..i] != target[..i] {
            continue;
        }
        for p in g.productions().iter().filter(|p| p.head == form[i]) {
            let mut next = form[..i].to_vec();
            next.extend_from_slice(&p.body);
            next.extend_from_slice(&form[i + 1..]);
            stack.push(next);
        }
    }
    false
}
