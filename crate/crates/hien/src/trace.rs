//! JSON-lines trace records, one per sentence.

use hien_core::engine::SentenceReport;
use serde_json::{json, Value};

pub fn record(r: &SentenceReport) -> Value {
    json!({
        "index": r.index,
        "source": r.source,
        "tokens": r.tokens,
        "tags": r.tags.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
        "chart": r.parsed,
        "tree": r.tree,
        "spans": r.spans.iter().map(|s| json!({
            "start": s.start,
            "end": s.end,
            "method": s.method.as_str(),
            "rule": s.rule,
        })).collect::<Vec<_>>(),
        "transferred": r.transferred,
        "output": r.output,
        "annotations": r.annotations.iter().map(|a| json!({
            "token": a.token,
            "word": a.word,
            "provenance": a.provenance.as_str(),
        })).collect::<Vec<_>>(),
        "oov": r.oov,
        "retries": r.retries,
        "warnings": r.warnings,
    })
}
