//! `key = value` configuration file. Command-line flags override it.
//!
//! ```text
//! # paths are relative to the config file
//! lexicon = lexicon.tsv
//! grammar = grammar.cfg
//! rules = rules.txt
//! translit_table = translit.tsv
//! synonyms = first        # or all
//! trace = false
//! dump_chart = false
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use hien_core::generate::SynonymPolicy;

use crate::resources::ResourcePaths;

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "HIEN_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineConfig {
    pub paths: ResourcePaths,
    pub synonym_policy: SynonymPolicy,
    pub trace: bool,
    pub dump_chart: bool,
}

pub fn parse_synonym_policy(s: &str) -> Option<SynonymPolicy> {
    match s {
        "first" => Some(SynonymPolicy::First),
        "all" => Some(SynonymPolicy::All),
        _ => None,
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

impl EngineConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base).map_err(|(line, message)| ConfigError::Syntax {
            path: path.to_path_buf(),
            line,
            message,
        })
    }

    /// Relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, (usize, String)> {
        let mut cfg = EngineConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| (i + 1, m);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected key = value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let path = || Some(base.join(value));
            match key {
                "lexicon" => cfg.paths.lexicon = path(),
                "grammar" => cfg.paths.grammar = path(),
                "rules" => cfg.paths.rules = path(),
                "translit_table" => cfg.paths.translit_table = path(),
                "synonyms" => {
                    cfg.synonym_policy = parse_synonym_policy(value)
                        .ok_or_else(|| err(format!("synonyms must be first or all, got {value:?}")))?
                }
                "trace" | "dump_chart" => {
                    let b = parse_bool(value).ok_or_else(|| err(format!("{key} must be true or false")))?;
                    if key == "trace" {
                        cfg.trace = b;
                    } else {
                        cfg.dump_chart = b;
                    }
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }
}
