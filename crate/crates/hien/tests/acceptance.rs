//! End-to-end acceptance checks. Prints one `[PASS]` or `[FAIL]` line per
//! criterion and exits non-zero if any fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hien::resources::seed_engine;
use hien_core::cyk::{self, EMPTY_CELL};
use hien_core::grammar::Grammar;
use hien_core::text;
use hien_core::translit;
use support::suites;

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const CYK_BUDGET: Duration = Duration::from_secs(30);
const CNF_BUDGET: Duration = Duration::from_secs(60);
const CYK_CASES: u32 = 600;
const CNF_CASES: u32 = 150;
const PROPERTY_CASES: u32 = 256;

const GOLDEN: &[(&str, &[&str])] = &[
    ("यह किताब बहुत अच्छी है", &["This book is very good"]),
    ("सीता लड़की है", &["Sita is girl"]),
    (
        "जवाहर लाल नेहरु भारत के प्रथम प्रधानमंत्री थे",
        &["Jawahar Lal Nehru was first prime minister of India"],
    ),
    ("वह बुद्धिमान लड़की है", &["She is intelligent girl"]),
    ("मोहन तेज दौड़ता है", &["Mohan runs fast"]),
    ("रिया काफी पी रही है", &["Riya is drinking coffee"]),
    ("बच्चा बच्चा गाँधी जी को जानता है", &["Every child knows Gandhi ji"]),
    ("क्या सीता खाना खाती है", &["Does Sita eats food"]),
    (
        "क्या तुम प्रत्येक मंगलवार फुटबॉल खेलते हो",
        &["Do you play football every Tuesday"],
    ),
    ("क्या तुम पढ़ रहे हो", &["Are you reading"]),
    ("क्या सीता बाज़ार जा रही है", &["Is Sita going to market"]),
    ("कृपया ध्यान दे", &["Please pay attention"]),
    (
        "राम,मोहन और श्याम दोस्त है।राम पुणे में रहता है।मोहन और श्याम मुम्बई में रहते है",
        &[
            "Ram, Mohan and Shyam are friend",
            "Ram lives in Pune",
            "Mohan and Shyam lives in Mumbai",
        ],
    ),
];

/// First character case-folded, terminator dropped, whitespace collapsed.
fn normalize(s: &str) -> String {
    let s = s.trim().trim_end_matches(['.', '?', '!', '।']);
    let joined = s.split_whitespace().collect::<Vec<_>>().join(" ");
    let mut chars = joined.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => joined,
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn golden() -> Outcome {
    let engine = seed_engine();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for (src, expected) in GOLDEN {
        let got: Vec<String> = engine.translate_document(src).outputs().map(normalize).collect();
        let want: Vec<String> = expected.iter().map(|s| normalize(s)).collect();
        count += want.len();
        if got != want {
            failures.push(format!("{src}: got {got:?}, want {want:?}"));
        }
    }
    let elapsed = start.elapsed();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    if elapsed >= GOLDEN_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{count} sentences in {elapsed:?}"))
}

fn transliteration() -> Outcome {
    let engine = seed_engine();
    let mut seen = Vec::new();
    for (word, want) in [("अजय", "ajay"), ("रमा", "rama"), ("मनाली", "manalee")] {
        let got = translit::romanize(word, engine.translit()).map_err(|e| format!("{word}: {e}"))?;
        if got != want {
            return Err(format!("{word}: got {got:?}, want {want:?}"));
        }
        seen.push(got);
    }
    Ok(seen.join(" "))
}

fn chart() -> Outcome {
    let g = Grammar::parse(
        "S -> NP VP\nNP -> PRON NOUN\nVP -> VP AUX\nPRON -> वह\nNOUN -> बाज़ार\nVP -> जाती\nAUX -> है\n",
    )
    .map_err(|e| e.to_string())?
    .to_cnf()
    .map_err(|e| e.to_string())?;
    let chart = cyk::cyk_recognize(&text::tokenize_str("वह बाज़ार जाती है"), &g).map_err(|e| e.to_string())?;
    let has = |p, q, name: &str| chart.symbols(p, q).iter().any(|&s| g.name(s) == name);
    let rendered = cyk::render_chart(&chart, &g);
    let checks = [
        ("NP in (1,2)", has(1, 2, "NP")),
        ("VP in (3,4)", has(3, 4, "VP")),
        ("S in (1,4)", has(1, 4, "S")),
        ("(2,3) empty", chart.cell(2, 3).is_empty()),
        ("rendered empty cell", rendered.contains(EMPTY_CELL)),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((what, _)) => Err(format!("{what} does not hold\n{rendered}")),
        None => Ok("NP(1,2) VP(3,4) S(1,4), (2,3) empty".into()),
    }
}

fn timed<T>(budget: Duration, f: impl FnOnce() -> Result<T, String>) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let v = f()?;
    let elapsed = start.elapsed();
    if elapsed >= budget {
        return Err(format!("took {elapsed:?}, budget {budget:?}"));
    }
    Ok((v, elapsed))
}

fn cyk_oracle() -> Outcome {
    let ((n, members), t) = timed(CYK_BUDGET, || suites::cyk_oracle_equivalence(CYK_CASES))?;
    Ok(format!("{n} pairs agree ({members} members) in {t:?}"))
}

fn cnf_language() -> Outcome {
    let ((n, nonempty), t) = timed(CNF_BUDGET, || suites::cnf_language_preservation(CNF_CASES))?;
    Ok(format!(
        "{n} grammars ({nonempty} nonempty) preserve strings up to length {} in {t:?}",
        suites::LANGUAGE_LENGTH
    ))
}

fn properties() -> Outcome {
    let engine = seed_engine();
    let suites: [(&str, Result<usize, String>); 5] = [
        ("tokenizer", suites::tokenizer_round_trip(PROPERTY_CASES)),
        ("transfer", suites::transfer_permutation(PROPERTY_CASES)),
        ("inverse", suites::inverse_alignment(PROPERTY_CASES)),
        ("copula", suites::copula_grid(PROPERTY_CASES)),
        (
            "matra",
            suites::matra_final_no_schwa_deletion(engine.translit(), PROPERTY_CASES),
        ),
    ];
    let mut parts = Vec::new();
    for (name, r) in suites {
        let n = r.map_err(|e| format!("{name}: {e}"))?;
        if n < 200 {
            return Err(format!("{name}: only {n} cases"));
        }
        parts.push(format!("{name} {n}"));
    }
    Ok(parts.join(", "))
}

fn tagging() -> Outcome {
    let engine = seed_engine();
    let s = text::split_sentences("सीता बहुत अच्छी लड़की है")
        .pop()
        .ok_or("no sentence")?;
    let a = engine.analyze(&s).ok_or("no analysis")?;
    let tags: Vec<&str> = a.sentence.tokens.iter().map(|t| t.tag().as_str()).collect();
    if tags != ["NOUN", "ADV", "ADJ", "NOUN", "AUX"] {
        return Err(format!("tags {tags:?}"));
    }
    let n = text::tokenize_str("अब्दुल कलाम महान वैज्ञानिक है").len();
    if n != 5 {
        return Err(format!("{n} tokens"));
    }
    Ok(format!("{}; 5 tokens", tags.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("golden translation suite", golden),
        ("transliteration", transliteration),
        ("parse chart", chart),
        ("CYK oracle equivalence", cyk_oracle),
        ("CNF language preservation", cnf_language),
        ("property suites", properties),
        ("tagging fidelity", tagging),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
