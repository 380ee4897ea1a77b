//! Resource files: reading from disk, falling back to the bundled seed data.

use std::fs;
use std::path::{Path, PathBuf};

use hien_core::engine::{Engine, EngineError};
use hien_core::grammar::{Grammar, GrammarError};
use hien_core::lexicon::{Lexicon, LexiconError};
use hien_core::transfer::{TransferError, TransferRules};
use hien_core::translit::{TranslitError, TranslitTable};

pub const SEED_LEXICON: &str = include_str!("../data/lexicon.tsv");
pub const SEED_GRAMMAR: &str = include_str!("../data/grammar.cfg");
pub const SEED_RULES: &str = include_str!("../data/rules.txt");
pub const SEED_TRANSLIT: &str = include_str!("../data/translit.tsv");

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: {source}")]
    Lexicon {
        origin: String,
        #[source]
        source: LexiconError,
    },
    #[error("{origin}: {source}")]
    Grammar {
        origin: String,
        #[source]
        source: GrammarError,
    },
    #[error("{origin}: {source}")]
    Rules {
        origin: String,
        #[source]
        source: TransferError,
    },
    #[error("{origin}: {source}")]
    Translit {
        origin: String,
        #[source]
        source: TranslitError,
    },
    #[error("{origin}: {source}")]
    Engine {
        origin: String,
        #[source]
        source: EngineError,
    },
}

/// Where each resource comes from; `None` selects the bundled seed file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResourcePaths {
    pub lexicon: Option<PathBuf>,
    pub grammar: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    pub translit_table: Option<PathBuf>,
}

/// A resource's text and a label for messages.
#[derive(Debug, Clone)]
pub struct Source {
    pub origin: String,
    pub text: String,
}

fn read(path: Option<&Path>, seed: &str, name: &str) -> Result<Source, LoadError> {
    match path {
        None => Ok(Source {
            origin: format!("<bundled {name}>"),
            text: seed.to_string(),
        }),
        Some(p) => fs::read_to_string(p)
            .map(|text| Source {
                origin: p.display().to_string(),
                text,
            })
            .map_err(|source| LoadError::Io {
                path: p.to_path_buf(),
                source,
            }),
    }
}

#[derive(Debug, Clone)]
pub struct Sources {
    pub lexicon: Source,
    pub grammar: Source,
    pub rules: Source,
    pub translit: Source,
}

impl ResourcePaths {
    pub fn read(&self) -> Result<Sources, LoadError> {
        Ok(Sources {
            lexicon: read(self.lexicon.as_deref(), SEED_LEXICON, "lexicon")?,
            grammar: read(self.grammar.as_deref(), SEED_GRAMMAR, "grammar")?,
            rules: read(self.rules.as_deref(), SEED_RULES, "rules")?,
            translit: read(self.translit_table.as_deref(), SEED_TRANSLIT, "translit table")?,
        })
    }

    /// Reads, validates and assembles every resource. Fails on the first
    /// problem; `lint` reports all of them instead.
    pub fn load(&self) -> Result<Engine, LoadError> {
        self.read()?.build()
    }
}

impl Sources {
    pub fn build(self) -> Result<Engine, LoadError> {
        let mut lexicon = Lexicon::parse(&self.lexicon.text).map_err(|source| LoadError::Lexicon {
            origin: self.lexicon.origin.clone(),
            source,
        })?;
        lexicon.source_path = Some(self.lexicon.origin);
        let grammar = Grammar::parse(&self.grammar.text).map_err(|source| LoadError::Grammar {
            origin: self.grammar.origin.clone(),
            source,
        })?;
        let rules = TransferRules::parse(&self.rules.text).map_err(|source| LoadError::Rules {
            origin: self.rules.origin,
            source,
        })?;
        let table = TranslitTable::parse(&self.translit.text).map_err(|source| LoadError::Translit {
            origin: self.translit.origin,
            source,
        })?;
        Engine::new(lexicon, grammar, rules, table).map_err(|source| LoadError::Engine {
            origin: self.grammar.origin,
            source,
        })
    }
}

/// The engine over the bundled seed resources.
pub fn seed_engine() -> Engine {
    ResourcePaths::default()
        .load()
        .expect("bundled resources are valid")
}
