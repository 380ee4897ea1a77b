//! Context-free grammars and conversion to Chomsky normal form.
//!
//! A grammar is the usual four-tuple: variables, terminals, productions and a
//! start symbol. Variables are inferred as the set of production heads; every
//! other symbol appearing in a body is a terminal.
//!
//! Text format, one rule per line:
//!
//! ```text
//! start: S            # optional; defaults to the first head
//! S  -> NP VP
//! NP -> PRON NOUN | NOUN
//! X  -> ε             # explicit empty production
//! ```

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use unicode_normalization::UnicodeNormalization;

/// Marker for an empty production body in grammar text.
pub const EPSILON: &str = "ε";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

impl SymbolId {
    fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Interned symbol names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: BTreeMap<String, SymbolId>,
}

impl SymbolTable {
    pub fn intern(&mut self, name: &str) -> SymbolId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = SymbolId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<SymbolId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.names[id.idx()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// A name derived from `base` that is not yet interned.
    fn fresh(&mut self, base: &str) -> SymbolId {
        let mut name = base.to_string();
        while self.index.contains_key(&name) {
            name.push('\'');
        }
        self.intern(&name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Production {
    pub head: SymbolId,
    /// Empty only for an explicit ε production.
    pub body: Vec<SymbolId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammarError {
    Parse { line: usize, message: String },
    UnknownStart(String),
    EmptyLanguage,
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarError::Parse { line, message } => write!(f, "line {line}: {message}"),
            GrammarError::UnknownStart(s) => {
                write!(f, "start symbol {s:?} is not the head of any production")
            }
            GrammarError::EmptyLanguage => f.write_str("no derivable terminal strings from start"),
        }
    }
}

impl core::error::Error for GrammarError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammarWarning {
    Unreachable(String),
    Unproductive(String),
}

impl fmt::Display for GrammarWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarWarning::Unreachable(s) => write!(f, "nonterminal {s} is unreachable from the start symbol"),
            GrammarWarning::Unproductive(s) => write!(f, "nonterminal {s} derives no terminal string"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    symbols: SymbolTable,
    variables: BTreeSet<SymbolId>,
    productions: Vec<Production>,
    start: SymbolId,
}

impl Grammar {
    /// Builds a grammar from `(head, body)` pairs. An empty body is an ε
    /// production.
    pub fn from_rules(start: &str, rules: &[(&str, &[&str])]) -> Result<Self, GrammarError> {
        let mut symbols = SymbolTable::default();
        let mut productions = Vec::new();
        for (head, body) in rules {
            let head = symbols.intern(head);
            let body = body.iter().map(|s| symbols.intern(s)).collect();
            productions.push(Production { head, body });
        }
        Self::assemble(symbols, productions, start)
    }

    fn assemble(
        mut symbols: SymbolTable,
        productions: Vec<Production>,
        start: &str,
    ) -> Result<Self, GrammarError> {
        let variables: BTreeSet<SymbolId> = productions.iter().map(|p| p.head).collect();
        let start_id = symbols.intern(start);
        if !variables.contains(&start_id) {
            return Err(GrammarError::UnknownStart(start.to_string()));
        }
        let mut seen = BTreeSet::new();
        let productions = productions
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        Ok(Grammar {
            symbols,
            variables,
            productions,
            start: start_id,
        })
    }

    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        let mut symbols = SymbolTable::default();
        let mut productions = Vec::new();
        let mut start: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| GrammarError::Parse {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("start:") {
                let name: String = rest.trim().nfc().collect();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err("start directive needs exactly one symbol".into()));
                }
                if start.replace(name).is_some() {
                    return Err(err("duplicate start directive".into()));
                }
                continue;
            }
            let Some((head, rhs)) = line.split_once("->") else {
                return Err(err(format!("expected `HEAD -> BODY`, found {line:?}")));
            };
            let head: String = head.trim().nfc().collect();
            if head.is_empty() {
                return Err(err("missing production head".into()));
            }
            if head.contains(char::is_whitespace) {
                return Err(err(format!("head {head:?} must be a single symbol")));
            }
            if head == EPSILON {
                return Err(err("ε cannot be a production head".into()));
            }
            let head_id = symbols.intern(&head);
            for alt in rhs.split('|') {
                let syms: Vec<String> = alt.split_whitespace().map(|s| s.nfc().collect()).collect();
                if syms.is_empty() {
                    return Err(err(format!("empty alternative for {head}")));
                }
                if syms.iter().any(|s| s == "->") {
                    return Err(err("more than one `->` on a line".into()));
                }
                let body = if syms.len() == 1 && syms[0] == EPSILON {
                    Vec::new()
                } else if syms.iter().any(|s| s == EPSILON) {
                    return Err(err("ε must stand alone in an alternative".into()));
                } else {
                    syms.iter().map(|s| symbols.intern(s)).collect()
                };
                productions.push(Production {
                    head: head_id,
                    body,
                });
            }
        }
        let Some(first) = productions.first() else {
            return Err(GrammarError::Parse {
                line: 0,
                message: "grammar has no productions".into(),
            });
        };
        let start = start.unwrap_or_else(|| symbols.name(first.head).to_string());
        Self::assemble(symbols, productions, &start)
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn name(&self, id: SymbolId) -> &str {
        self.symbols.name(id)
    }

    pub fn start(&self) -> SymbolId {
        self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn is_variable(&self, id: SymbolId) -> bool {
        self.variables.contains(&id)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> + '_ {
        self.variables.iter().map(|&v| self.name(v))
    }

    /// Symbols used in bodies that are never heads.
    pub fn terminals(&self) -> impl Iterator<Item = &str> + '_ {
        let set: BTreeSet<SymbolId> = self
            .productions
            .iter()
            .flat_map(|p| p.body.iter().copied())
            .filter(|s| !self.variables.contains(s))
            .collect();
        set.into_iter().map(move |t| self.name(t))
    }

    pub fn has_epsilon(&self) -> bool {
        self.productions.iter().any(|p| p.body.is_empty())
    }

    fn productive(&self) -> BTreeSet<SymbolId> {
        let mut productive = BTreeSet::new();
        loop {
            let before = productive.len();
            for p in &self.productions {
                if p
                    .body
                    .iter()
                    .all(|s| !self.variables.contains(s) || productive.contains(s))
                {
                    productive.insert(p.head);
                }
            }
            if productive.len() == before {
                return productive;
            }
        }
    }

    fn reachable(&self) -> BTreeSet<SymbolId> {
        let mut seen = BTreeSet::from([self.start]);
        let mut queue = VecDeque::from([self.start]);
        while let Some(v) = queue.pop_front() {
            for p in self.productions.iter().filter(|p| p.head == v) {
                for &s in &p.body {
                    if self.variables.contains(&s) && seen.insert(s) {
                        queue.push_back(s);
                    }
                }
            }
        }
        seen
    }

    /// Unreachable and unproductive nonterminals. Not fatal.
    pub fn warnings(&self) -> Vec<GrammarWarning> {
        let productive = self.productive();
        let reachable = self.reachable();
        let mut out = Vec::new();
        for &v in &self.variables {
            if !reachable.contains(&v) {
                out.push(GrammarWarning::Unreachable(self.name(v).to_string()));
            }
            if !productive.contains(&v) {
                out.push(GrammarWarning::Unproductive(self.name(v).to_string()));
            }
        }
        out
    }

    /// Converts to Chomsky normal form: fresh start, terminal lifting,
    /// right-associative binarization, ε elimination and unit elimination.
    pub fn to_cnf(&self) -> Result<CnfGrammar, GrammarError> {
        if !self.productive().contains(&self.start) {
            return Err(GrammarError::EmptyLanguage);
        }
        let mut symbols = self.symbols.clone();
        let mut variables = self.variables.clone();
        let mut synthetic: BTreeMap<SymbolId, Synthetic> = BTreeMap::new();

        let start = symbols.fresh(&format!("{}#0", self.name(self.start)));
        variables.insert(start);
        synthetic.insert(start, Synthetic::Start);
        let mut work: Vec<Production> = vec![Production {
            head: start,
            body: vec![self.start],
        }];
        work.extend(self.productions.iter().cloned());
        // index of the original production each working rule descends from
        let mut origin: Vec<Option<usize>> = vec![None];
        origin.extend((0..self.productions.len()).map(Some));

        // TERM
        let mut lifted: BTreeMap<SymbolId, SymbolId> = BTreeMap::new();
        let mut extra = Vec::new();
        for p in &mut work {
            if p.body.len() < 2 {
                continue;
            }
            for s in &mut p.body {
                if variables.contains(s) {
                    continue;
                }
                let t = *s;
                let pre = *lifted.entry(t).or_insert_with(|| {
                    let name = format!("{}#t", symbols.name(t));
                    let pre = symbols.fresh(&name);
                    variables.insert(pre);
                    synthetic.insert(pre, Synthetic::Terminal(t));
                    extra.push(Production {
                        head: pre,
                        body: vec![t],
                    });
                    pre
                });
                *s = pre;
            }
        }
        origin.extend(extra.iter().map(|_| None));
        work.extend(extra);

        // BIN
        let mut counters: BTreeMap<SymbolId, usize> = BTreeMap::new();
        let mut binarized = Vec::with_capacity(work.len());
        for (p, orig) in work.into_iter().zip(origin) {
            if p.body.len() <= 2 {
                binarized.push(p);
                continue;
            }
            let mut head = p.head;
            let base = symbols.name(p.head).to_string();
            let n = p.body.len();
            for &sym in &p.body[..n - 2] {
                let counter = counters.entry(p.head).or_insert(0);
                *counter += 1;
                let next = symbols.fresh(&format!("{base}#{counter}"));
                variables.insert(next);
                synthetic.insert(
                    next,
                    Synthetic::Binarized {
                        production: orig.unwrap_or(usize::MAX),
                    },
                );
                binarized.push(Production {
                    head,
                    body: vec![sym, next],
                });
                head = next;
            }
            binarized.push(Production {
                head,
                body: p.body[n - 2..].to_vec(),
            });
        }

        // DEL
        let nullable = nullable_set(&binarized);
        let mut deleted: Vec<Production> = Vec::new();
        let push_unique = |p: Production, out: &mut Vec<Production>| {
            if !out.contains(&p) {
                out.push(p);
            }
        };
        for p in &binarized {
            let mut variants: Vec<Vec<SymbolId>> = vec![p.body.clone()];
            match p.body.as_slice() {
                [x, y] => {
                    if nullable.contains(x) {
                        variants.push(vec![*y]);
                    }
                    if nullable.contains(y) {
                        variants.push(vec![*x]);
                    }
                }
                [x] if nullable.contains(x) => variants.push(Vec::new()),
                _ => {}
            }
            for body in variants {
                if body.is_empty() && p.head != start {
                    continue;
                }
                push_unique(
                    Production {
                        head: p.head,
                        body,
                    },
                    &mut deleted,
                );
            }
        }

        // UNIT
        let is_unit = |p: &Production| p.body.len() == 1 && variables.contains(&p.body[0]);
        let heads: Vec<SymbolId> = {
            let mut seen = BTreeSet::new();
            deleted
                .iter()
                .map(|p| p.head)
                .filter(|h| seen.insert(*h))
                .collect()
        };
        let mut productions: Vec<CnfProduction> = Vec::new();
        let mut emitted: BTreeSet<(SymbolId, CnfBody)> = BTreeSet::new();
        for &a in &heads {
            // breadth-first over unit edges, remembering the chain to each symbol
            let mut chains: Vec<(SymbolId, Vec<SymbolId>)> = vec![(a, Vec::new())];
            let mut visited = BTreeSet::from([a]);
            let mut qi = 0;
            while qi < chains.len() {
                let (b, chain) = chains[qi].clone();
                qi += 1;
                for p in deleted.iter().filter(|p| p.head == b && is_unit(p)) {
                    let c = p.body[0];
                    if visited.insert(c) {
                        let mut next = chain.clone();
                        next.push(c);
                        chains.push((c, next));
                    }
                }
            }
            for (b, chain) in &chains {
                for p in deleted.iter().filter(|p| p.head == *b && !is_unit(p)) {
                    let body = match p.body.as_slice() {
                        [] => CnfBody::Empty,
                        [t] => CnfBody::Terminal(*t),
                        [x, y] => CnfBody::Binary(*x, *y),
                        _ => unreachable!("bodies are binarized"),
                    };
                    if emitted.insert((a, body)) {
                        productions.push(CnfProduction {
                            head: a,
                            body,
                            unit_chain: chain.clone(),
                        });
                    }
                }
            }
        }

        // variables whose only productions were ε are gone; drop rules using them
        let mut productive: BTreeSet<SymbolId> = BTreeSet::new();
        loop {
            let before = productive.len();
            for p in &productions {
                let ok = match p.body {
                    CnfBody::Binary(x, y) => productive.contains(&x) && productive.contains(&y),
                    _ => true,
                };
                if ok {
                    productive.insert(p.head);
                }
            }
            if productive.len() == before {
                break;
            }
        }
        productions.retain(|p| match p.body {
            CnfBody::Binary(x, y) => productive.contains(&x) && productive.contains(&y),
            _ => true,
        });

        Ok(CnfGrammar::new(
            symbols,
            variables,
            synthetic,
            productions,
            start,
            self.start,
        ))
    }
}

fn nullable_set(productions: &[Production]) -> BTreeSet<SymbolId> {
    let mut nullable = BTreeSet::new();
    loop {
        let before = nullable.len();
        for p in productions {
            if p.body.iter().all(|s| nullable.contains(s)) {
                nullable.insert(p.head);
            }
        }
        if nullable.len() == before {
            return nullable;
        }
    }
}

/// Where a symbol introduced during conversion came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Synthetic {
    /// The fresh start symbol.
    Start,
    /// Preterminal standing in for a terminal inside a long body.
    Terminal(SymbolId),
    /// Right-binarization helper for the given original production.
    Binarized { production: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CnfBody {
    Terminal(SymbolId),
    Binary(SymbolId, SymbolId),
    /// Only ever on the start symbol.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfProduction {
    pub head: SymbolId,
    pub body: CnfBody,
    /// Variables elided by unit elimination: `head → chain[0] → … → body`.
    pub unit_chain: Vec<SymbolId>,
}

#[derive(Debug, Clone)]
pub struct CnfGrammar {
    symbols: SymbolTable,
    variables: BTreeSet<SymbolId>,
    synthetic: BTreeMap<SymbolId, Synthetic>,
    productions: Vec<CnfProduction>,
    start: SymbolId,
    original_start: SymbolId,
    terminal_rules: BTreeMap<SymbolId, Vec<usize>>,
    binary_rules: Vec<usize>,
}

impl CnfGrammar {
    fn new(
        symbols: SymbolTable,
        variables: BTreeSet<SymbolId>,
        synthetic: BTreeMap<SymbolId, Synthetic>,
        productions: Vec<CnfProduction>,
        start: SymbolId,
        original_start: SymbolId,
    ) -> Self {
        let mut terminal_rules: BTreeMap<SymbolId, Vec<usize>> = BTreeMap::new();
        let mut binary_rules = Vec::new();
        for (i, p) in productions.iter().enumerate() {
            match p.body {
                CnfBody::Terminal(t) => terminal_rules.entry(t).or_default().push(i),
                CnfBody::Binary(..) => binary_rules.push(i),
                CnfBody::Empty => {}
            }
        }
        CnfGrammar {
            symbols,
            variables,
            synthetic,
            productions,
            start,
            original_start,
            terminal_rules,
            binary_rules,
        }
    }

    pub fn name(&self, id: SymbolId) -> &str {
        self.symbols.name(id)
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    /// The fresh start symbol introduced by conversion.
    pub fn start(&self) -> SymbolId {
        self.start
    }

    /// The start symbol of the grammar this was converted from.
    pub fn original_start(&self) -> SymbolId {
        self.original_start
    }

    pub fn productions(&self) -> &[CnfProduction] {
        &self.productions
    }

    pub fn is_variable(&self, id: SymbolId) -> bool {
        self.variables.contains(&id)
    }

    pub fn synthetic(&self, id: SymbolId) -> Option<Synthetic> {
        self.synthetic.get(&id).copied()
    }

    pub fn is_synthetic(&self, id: SymbolId) -> bool {
        self.synthetic.contains_key(&id)
    }

    pub fn accepts_empty(&self) -> bool {
        self.productions
            .iter()
            .any(|p| p.head == self.start && p.body == CnfBody::Empty)
    }

    /// Terminal symbols that appear in some `A → b` rule.
    pub fn terminals(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.terminal_rules.keys().copied()
    }

    /// Indices of the `A → b` rules for terminal `b`.
    pub fn rules_for_terminal(&self, terminal: SymbolId) -> &[usize] {
        self.terminal_rules
            .get(&terminal)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Indices of all `A → B C` rules, in conversion order.
    pub fn binary_rules(&self) -> &[usize] {
        &self.binary_rules
    }

    /// True when every production has CNF shape and the start symbol is
    /// absent from every body.
    pub fn is_cnf(&self) -> bool {
        self.productions.iter().all(|p| match p.body {
            CnfBody::Terminal(t) => !self.is_variable(t),
            CnfBody::Binary(b, c) => {
                self.is_variable(b) && self.is_variable(c) && b != self.start && c != self.start
            }
            CnfBody::Empty => p.head == self.start,
        })
    }

    /// Views the converted grammar as an ordinary grammar, with the fresh
    /// start symbol as its start.
    pub fn to_grammar(&self) -> Grammar {
        let productions = self
            .productions
            .iter()
            .map(|p| Production {
                head: p.head,
                body: match p.body {
                    CnfBody::Terminal(t) => vec![t],
                    CnfBody::Binary(b, c) => vec![b, c],
                    CnfBody::Empty => Vec::new(),
                },
            })
            .collect();
        Grammar::assemble(
            self.symbols.clone(),
            productions,
            self.symbols.name(self.start),
        )
        .expect("start symbol heads a production")
    }

    /// Productions rendered as `HEAD -> BODY` lines.
    pub fn rule_strings(&self) -> Vec<String> {
        self.productions
            .iter()
            .map(|p| {
                let body = match p.body {
                    CnfBody::Terminal(t) => self.name(t).to_string(),
                    CnfBody::Binary(b, c) => format!("{} {}", self.name(b), self.name(c)),
                    CnfBody::Empty => EPSILON.to_string(),
                };
                format!("{} -> {}", self.name(p.head), body)
            })
            .collect()
    }
}
