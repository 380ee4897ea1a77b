//! Command-line interface.
//!
//! Exit status: 0 on success, 1 when some input could not be processed
//! (unreadable file, untransliterable word, lint errors), 2 on bad usage,
//! configuration or resource errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hien_core::cyk;
use hien_core::engine::{self, Engine, LintInput, Severity};
use hien_core::generate::SynonymPolicy;
use hien_core::text;
use hien_core::translit;

use crate::config::{EngineConfig, CONFIG_ENV};
use crate::resources::LoadError;
use crate::trace;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_RESOURCE: u8 = 2;

/// Trees printed by `parse --all-parses`.
pub const MAX_PARSES: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "hien", version, about = "Rule-based Hindi to English translation")]
pub struct Cli {
    #[command(flatten)]
    pub resources: ResourceArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct ResourceArgs {
    /// Bilingual dictionary (TSV)
    #[arg(long, global = true, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    /// Context-free grammar
    #[arg(long, global = true, value_name = "PATH")]
    pub grammar: Option<PathBuf>,
    /// Transfer rules
    #[arg(long, global = true, value_name = "PATH")]
    pub rules: Option<PathBuf>,
    /// Transliteration table (TSV)
    #[arg(long, global = true, value_name = "PATH")]
    pub translit_table: Option<PathBuf>,
    /// key = value config file; flags take precedence
    #[arg(long, global = true, value_name = "PATH", env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Synonyms {
    First,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Translate documents, one output line per sentence
    Translate {
        /// Input files; `-` or nothing reads standard input
        files: Vec<PathBuf>,
        #[arg(long, value_enum)]
        synonyms: Option<Synonyms>,
        /// Emit one JSON record per sentence instead of plain text
        #[arg(long)]
        trace: bool,
        /// Print each sentence's parse chart to standard error
        #[arg(long)]
        dump_chart: bool,
    },
    /// Romanize Devanagari words
    Translit {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Tag and parse sentences, printing the preferred tree
    Parse {
        /// Sentences; standard input when absent
        sentences: Vec<String>,
        #[arg(long)]
        dump_chart: bool,
        /// Print every parse, up to 16
        #[arg(long)]
        all_parses: bool,
    },
    /// Check resource files and report every problem found
    Lint,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn resolve(args: &ResourceArgs) -> Result<EngineConfig, String> {
    let mut cfg = match &args.config {
        Some(p) => EngineConfig::load(p).map_err(|e| e.to_string())?,
        None => EngineConfig::default(),
    };
    let over = |flag: &Option<PathBuf>, slot: &mut Option<PathBuf>| {
        if flag.is_some() {
            slot.clone_from(flag);
        }
    };
    over(&args.lexicon, &mut cfg.paths.lexicon);
    over(&args.grammar, &mut cfg.paths.grammar);
    over(&args.rules, &mut cfg.paths.rules);
    over(&args.translit_table, &mut cfg.paths.translit_table);
    Ok(cfg)
}

/// Runs a parsed command line against the given streams; returns the exit
/// status.
pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut io = Io { stdin, out, err };
    match execute(cli, &mut io) {
        Ok(code) => code,
        Err(Failure::Resource(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_RESOURCE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_INPUT
        }
    }
}

enum Failure {
    Resource(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Resource(e.to_string())
    }
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Result<u8, Failure> {
    let mut cfg = resolve(&cli.resources).map_err(Failure::Resource)?;
    match cli.command {
        Command::Translate {
            files,
            synonyms,
            trace,
            dump_chart,
        } => {
            if let Some(s) = synonyms {
                cfg.synonym_policy = match s {
                    Synonyms::First => SynonymPolicy::First,
                    Synonyms::All => SynonymPolicy::All,
                };
            }
            cfg.trace |= trace;
            cfg.dump_chart |= dump_chart;
            let mut engine = cfg.paths.load()?;
            engine.options.synonym_policy = cfg.synonym_policy;
            translate(&engine, &cfg, &files, io)
        }
        Command::Translit { words } => {
            let engine = cfg.paths.load()?;
            let mut code = EXIT_OK;
            for w in words {
                match translit::romanize(&w, engine.translit()) {
                    Ok(latin) => writeln!(io.out, "{latin}")?,
                    Err(e) => {
                        writeln!(io.out, "{w}")?;
                        writeln!(io.err, "warning: {w}: {e}")?;
                        code = EXIT_INPUT;
                    }
                }
            }
            Ok(code)
        }
        Command::Parse {
            sentences,
            dump_chart,
            all_parses,
        } => {
            let engine = cfg.paths.load()?;
            let input = if sentences.is_empty() {
                let mut s = String::new();
                io.stdin.read_to_string(&mut s)?;
                s
            } else {
                sentences.join("\n")
            };
            parse(&engine, &input, dump_chart || cfg.dump_chart, all_parses, io)?;
            Ok(EXIT_OK)
        }
        Command::Lint => {
            let sources = cfg.paths.read()?;
            let diags = engine::lint_resources(LintInput {
                lexicon: Some(&sources.lexicon.text),
                grammar: Some(&sources.grammar.text),
                rules: Some(&sources.rules.text),
                translit: Some(&sources.translit.text),
            });
            let origin = |r: engine::Resource| match r {
                engine::Resource::Lexicon => &sources.lexicon.origin,
                engine::Resource::Grammar => &sources.grammar.origin,
                engine::Resource::Rules => &sources.rules.origin,
                engine::Resource::Translit => &sources.translit.origin,
            };
            for d in &diags {
                writeln!(io.out, "{}: {}: {}", d.severity.as_str(), origin(d.resource), d.message)?;
            }
            let errors = diags.iter().filter(|d| d.severity == Severity::Error).count();
            writeln!(
                io.out,
                "{errors} error(s), {} warning(s)",
                diags.len() - errors
            )?;
            Ok(if errors > 0 { EXIT_INPUT } else { EXIT_OK })
        }
    }
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    }
}

fn translate(engine: &Engine, cfg: &EngineConfig, files: &[PathBuf], io: &mut Io<'_>) -> Result<u8, Failure> {
    let stdin_only = [PathBuf::from("-")];
    let files = if files.is_empty() { &stdin_only[..] } else { files };
    let mut code = EXIT_OK;
    for path in files {
        let doc = match read_input(path, io.stdin) {
            Ok(d) => d,
            Err(e) => {
                writeln!(io.err, "error: {e}")?;
                code = EXIT_INPUT;
                continue;
            }
        };
        let report = engine.translate_document(&doc);
        for s in &report.sentences {
            if cfg.trace {
                writeln!(io.out, "{}", trace::record(s))?;
            } else {
                writeln!(io.out, "{}", s.output)?;
            }
            for w in &s.warnings {
                writeln!(io.err, "warning: {}: sentence {}: {w}", path.display(), s.index + 1)?;
            }
            if cfg.dump_chart {
                let sentence = text::Sentence {
                    text: s.source.clone(),
                    terminator: text::Terminator::None,
                    index: s.index,
                };
                if let Some(a) = engine.analyze(&sentence) {
                    write!(io.err, "{}", cyk::render_chart(&a.chart, engine.cnf()))?;
                }
            }
        }
    }
    Ok(code)
}

fn parse(engine: &Engine, input: &str, dump_chart: bool, all: bool, io: &mut Io<'_>) -> io::Result<()> {
    let doc = text::preprocess(input);
    for s in text::split_sentences(&doc) {
        let Some(a) = engine.analyze(&s) else { continue };
        writeln!(io.out, "# {}", s.text)?;
        let tags: Vec<_> = a.sentence.tokens.iter().map(|t| t.tag().as_str()).collect();
        writeln!(io.out, "tags: {}", tags.join(" "))?;
        if a.retries > 0 {
            writeln!(io.out, "retries: {}", a.retries)?;
        }
        if all {
            let trees = cyk::all_trees(&a.chart, engine.cnf(), MAX_PARSES);
            if trees.is_empty() {
                writeln!(io.out, "no parse")?;
            }
            for (i, t) in trees.iter().enumerate() {
                writeln!(io.out, "tree {}: {t}", i + 1)?;
            }
        } else {
            match cyk::extract_tree(&a.chart, engine.cnf()) {
                Some(t) => writeln!(io.out, "tree: {t}")?,
                None => writeln!(io.out, "no parse")?,
            }
        }
        if dump_chart {
            write!(io.out, "{}", cyk::render_chart(&a.chart, engine.cnf()))?;
        }
    }
    Ok(())
}
