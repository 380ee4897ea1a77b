//! CYK table filling over a CNF grammar, tree extraction and chart rendering.
//!
//! Cells are addressed `(p, q)`: 1-based start and inclusive end word
//! positions. A terminal in the grammar matches a token when it equals the
//! token's POS tag or its surface form.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::grammar::{CnfBody, CnfGrammar, SymbolId};
use crate::text::Token;

/// Symbol printed for a cell with no entries.
pub const EMPTY_CELL: &str = "€";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Back {
    /// `A → b` matched the token at `p`.
    Leaf { production: usize },
    /// `A → B C` with `B` over `(p, k)` and `C` over `(k + 1, q)`.
    Binary { production: usize, k: usize },
}

impl Back {
    pub fn production(self) -> usize {
        match self {
            Back::Leaf { production } | Back::Binary { production, .. } => production,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartEntry {
    pub symbol: SymbolId,
    pub p: usize,
    pub q: usize,
    pub back: Back,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CykError {
    EmptySentence,
}

impl fmt::Display for CykError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("empty sentence")
    }
}

impl core::error::Error for CykError {}

#[derive(Debug, Clone)]
pub struct ParseChart {
    n: usize,
    tokens: Vec<Token>,
    cells: Vec<Vec<ChartEntry>>,
    present: Vec<BTreeSet<SymbolId>>,
    start: SymbolId,
}

impl ParseChart {
    fn slot(&self, p: usize, q: usize) -> usize {
        assert!(1 <= p && p <= q && q <= self.n, "cell ({p},{q}) out of range");
        (p - 1) * self.n + (q - 1)
    }

    /// Sentence length in words.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Every entry of cell `(p, q)` in discovery order.
    pub fn cell(&self, p: usize, q: usize) -> &[ChartEntry] {
        &self.cells[self.slot(p, q)]
    }

    /// Distinct symbols in cell `(p, q)` in discovery order.
    pub fn symbols(&self, p: usize, q: usize) -> Vec<SymbolId> {
        let mut seen = BTreeSet::new();
        self.cell(p, q)
            .iter()
            .map(|e| e.symbol)
            .filter(|s| seen.insert(*s))
            .collect()
    }

    pub fn contains(&self, p: usize, q: usize, symbol: SymbolId) -> bool {
        self.present[self.slot(p, q)].contains(&symbol)
    }

    /// True when the start symbol covers the whole input.
    pub fn accepts(&self) -> bool {
        self.contains(1, self.n, self.start)
    }

    fn first_back(&self, symbol: SymbolId, p: usize, q: usize) -> Back {
        self.cell(p, q)
            .iter()
            .find(|e| e.symbol == symbol)
            .map(|e| e.back)
            .expect("symbol present in cell")
    }

    /// Checks every back-pointer: splits lie inside their span, children
    /// are present in the cells they point to.
    pub fn check_invariants(&self, g: &CnfGrammar) -> bool {
        for p in 1..=self.n {
            for q in p..=self.n {
                for e in self.cell(p, q) {
                    if (e.p, e.q) != (p, q) {
                        return false;
                    }
                    match e.back {
                        Back::Leaf { .. } if p != q => return false,
                        Back::Leaf { .. } => {}
                        Back::Binary { production, k } => {
                            if !(p <= k && k < q) {
                                return false;
                            }
                            let CnfBody::Binary(b, c) = g.productions()[production].body else {
                                return false;
                            };
                            if !self.contains(p, k, b) || !self.contains(k + 1, q, c) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

fn matching_terminals(token: &Token, g: &CnfGrammar) -> Vec<SymbolId> {
    let mut out = Vec::new();
    for name in [token.tag().as_str(), token.surface.as_str()] {
        if let Some(id) = g.symbols().get(name) {
            if !g.is_variable(id) && !out.contains(&id) {
                out.push(id);
            }
        }
    }
    out
}

/// Fills the chart bottom-up by increasing span length.
pub fn cyk_recognize(tokens: &[Token], g: &CnfGrammar) -> Result<ParseChart, CykError> {
    let n = tokens.len();
    if n == 0 {
        return Err(CykError::EmptySentence);
    }
    let mut chart = ParseChart {
        n,
        tokens: tokens.to_vec(),
        cells: vec![Vec::new(); n * n],
        present: vec![BTreeSet::new(); n * n],
        start: g.start(),
    };
    for (i, token) in tokens.iter().enumerate() {
        let p = i + 1;
        let slot = chart.slot(p, p);
        for t in matching_terminals(token, g) {
            for &production in g.rules_for_terminal(t) {
                let symbol = g.productions()[production].head;
                chart.cells[slot].push(ChartEntry {
                    symbol,
                    p,
                    q: p,
                    back: Back::Leaf { production },
                });
                chart.present[slot].insert(symbol);
            }
        }
    }
    for len in 2..=n {
        for p in 1..=n - len + 1 {
            let q = p + len - 1;
            let slot = chart.slot(p, q);
            for k in p..q {
                debug_assert!(k - p + 1 < len && q - k < len);
                let left = chart.slot(p, k);
                let right = chart.slot(k + 1, q);
                for &production in g.binary_rules() {
                    let CnfBody::Binary(b, c) = g.productions()[production].body else {
                        continue;
                    };
                    if chart.present[left].contains(&b) && chart.present[right].contains(&c) {
                        let symbol = g.productions()[production].head;
                        chart.cells[slot].push(ChartEntry {
                            symbol,
                            p,
                            q,
                            back: Back::Binary { production, k },
                        });
                        chart.present[slot].insert(symbol);
                    }
                }
            }
        }
    }
    Ok(chart)
}

/// A parse tree labelled with symbols of the original (non-CNF) grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    pub label: String,
    pub children: Vec<ParseTree>,
    /// Set on leaves: the token the terminal matched.
    pub token: Option<Token>,
}

impl ParseTree {
    pub fn node(label: impl Into<String>, children: Vec<ParseTree>) -> Self {
        ParseTree {
            label: label.into(),
            children,
            token: None,
        }
    }

    pub fn leaf(label: impl Into<String>, token: Token) -> Self {
        ParseTree {
            label: label.into(),
            children: Vec::new(),
            token: Some(token),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Leaf tokens, left to right.
    pub fn leaves(&self) -> Vec<&Token> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Token>) {
        if let Some(t) = &self.token {
            out.push(t);
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    pub fn into_leaves(self) -> Vec<Token> {
        let mut out = Vec::new();
        self.into_leaves_rec(&mut out);
        out
    }

    fn into_leaves_rec(self, out: &mut Vec<Token>) {
        if let Some(t) = self.token {
            out.push(t);
        }
        for c in self.children {
            c.into_leaves_rec(out);
        }
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.token {
            Some(t) if t.surface == self.label => return f.write_str(&self.label),
            Some(t) => return write!(f, "{}[{}]", self.label, t.surface),
            None => {}
        }
        f.write_str(&self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Wraps `kids` in the production head and its elided unit chain, splicing
/// out synthetic symbols.
fn wrap(g: &CnfGrammar, production: usize, kids: Vec<ParseTree>) -> Vec<ParseTree> {
    let prod = &g.productions()[production];
    let mut inner = kids;
    for &sym in prod.unit_chain.iter().rev().chain(core::iter::once(&prod.head)) {
        inner = if g.is_synthetic(sym) {
            inner
        } else {
            vec![ParseTree::node(g.name(sym), inner)]
        };
    }
    inner
}

fn leaf_for(chart: &ParseChart, g: &CnfGrammar, production: usize, p: usize) -> ParseTree {
    let CnfBody::Terminal(t) = g.productions()[production].body else {
        unreachable!("leaf back-pointer on a terminal rule");
    };
    ParseTree::leaf(g.name(t), chart.tokens[p - 1].clone())
}

fn build(chart: &ParseChart, g: &CnfGrammar, symbol: SymbolId, p: usize, q: usize) -> Vec<ParseTree> {
    match chart.first_back(symbol, p, q) {
        Back::Leaf { production } => wrap(g, production, vec![leaf_for(chart, g, production, p)]),
        Back::Binary { production, k } => {
            let CnfBody::Binary(b, c) = g.productions()[production].body else {
                unreachable!("binary back-pointer on a binary rule");
            };
            let mut kids = build(chart, g, b, p, k);
            kids.extend(build(chart, g, c, k + 1, q));
            wrap(g, production, kids)
        }
    }
}

fn single_root(mut forest: Vec<ParseTree>, g: &CnfGrammar) -> ParseTree {
    if forest.len() == 1 {
        forest.pop().expect("one tree")
    } else {
        ParseTree::node(g.name(g.original_start()), forest)
    }
}

/// The preferred parse: at every cell, the first back-pointer found under
/// ascending split and rule order. `None` when the input is not recognized.
pub fn extract_tree(chart: &ParseChart, g: &CnfGrammar) -> Option<ParseTree> {
    if !chart.accepts() {
        return None;
    }
    Some(single_root(build(chart, g, g.start(), 1, chart.n), g))
}

fn enumerate(
    chart: &ParseChart,
    g: &CnfGrammar,
    symbol: SymbolId,
    p: usize,
    q: usize,
    limit: usize,
) -> Vec<Vec<ParseTree>> {
    let mut out: Vec<Vec<ParseTree>> = Vec::new();
    for e in chart.cell(p, q).iter().filter(|e| e.symbol == symbol) {
        if out.len() >= limit {
            break;
        }
        match e.back {
            Back::Leaf { production } => {
                out.push(wrap(g, production, vec![leaf_for(chart, g, production, p)]));
            }
            Back::Binary { production, k } => {
                let CnfBody::Binary(b, c) = g.productions()[production].body else {
                    continue;
                };
                let lefts = enumerate(chart, g, b, p, k, limit);
                let rights = enumerate(chart, g, c, k + 1, q, limit);
                'outer: for l in &lefts {
                    for r in &rights {
                        if out.len() >= limit {
                            break 'outer;
                        }
                        let mut kids = l.clone();
                        kids.extend(r.iter().cloned());
                        out.push(wrap(g, production, kids));
                    }
                }
            }
        }
    }
    out
}

/// Up to `limit` distinct parses, preferred parse first.
pub fn all_trees(chart: &ParseChart, g: &CnfGrammar, limit: usize) -> Vec<ParseTree> {
    if !chart.accepts() || limit == 0 {
        return Vec::new();
    }
    let mut out: Vec<ParseTree> = Vec::new();
    // over-generate: distinct CNF derivations can restore to the same tree
    for forest in enumerate(chart, g, g.start(), 1, chart.n, limit.saturating_mul(4)) {
        let tree = single_root(forest, g);
        if !out.contains(&tree) {
            out.push(tree);
            if out.len() == limit {
                break;
            }
        }
    }
    out
}

fn display_width(s: &str) -> usize {
    s.chars()
        .filter(|&c| {
            !matches!(c as u32,
                0x0900..=0x0903 | 0x093A..=0x093C | 0x093E..=0x094F | 0x0951..=0x0957 | 0x0962..=0x0963)
        })
        .count()
}

/// Triangular rendering: the whole-input cell on top, single words on the
/// bottom row, then the words themselves. Empty cells print as `€`.
pub fn render_chart(chart: &ParseChart, g: &CnfGrammar) -> String {
    let n = chart.n;
    let cell_text = |p: usize, q: usize| -> String {
        let names: Vec<&str> = chart
            .symbols(p, q)
            .into_iter()
            .filter(|&s| s != g.start())
            .map(|s| g.name(s))
            .collect();
        if names.is_empty() {
            EMPTY_CELL.to_string()
        } else {
            names.join(",")
        }
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    for len in (1..=n).rev() {
        rows.push((1..=n - len + 1).map(|p| cell_text(p, p + len - 1)).collect());
    }
    rows.push(chart.tokens.iter().map(|t| t.surface.clone()).collect());
    let mut widths = vec![0usize; n];
    for row in &rows {
        for (i, c) in row.iter().enumerate() {
            widths[i] = widths[i].max(display_width(c));
        }
    }
    let mut out = String::new();
    for row in &rows {
        let mut line = String::new();
        for (i, c) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(c);
            for _ in display_width(c)..widths[i] {
                line.push(' ');
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
