//! Built-in corpora used by the self test, the examples and the test suites.

use crate::corpus::Corpus;

/// Three nested documents: `a ⊇ ab ⊇ abc`. The word spaces form a strict
/// chain, which exercises every containment code path.
pub const C3_JSONL: &str = r#"{"id": "d1", "text": "a"}
{"id": "d2", "text": "a b"}
{"id": "d3", "text": "a b c"}
"#;

/// The five-document machine-learning dataset, ids "0" through "4".
pub const ML5_JSONL: &str = r#"{"id": "0", "words": ["machine", "learning", "basics"]}
{"id": "1", "words": ["deep", "learning", "neural", "networks"]}
{"id": "2", "words": ["machine", "learning", "advanced"]}
{"id": "3", "words": ["statistics", "data", "analysis"]}
{"id": "4", "words": ["science", "data", "visualization"]}
"#;

/// A synthetic collection whose phrase keywords produce the three-branch
/// containment tree big -> {big data, big movie, big architecture} -> leaves.
pub const BIG_TREE_JSONL: &str = r#"{"id": "b", "words": ["big"]}
{"id": "ba", "words": ["big", "architecture"]}
{"id": "bap", "words": ["big", "architecture", "project"]}
{"id": "bd", "words": ["big", "data"]}
{"id": "bda", "words": ["big", "data", "analytics"]}
{"id": "bm", "words": ["big", "movie"]}
{"id": "bmr", "words": ["big", "movie", "review"]}
"#;

/// Phrase keywords for the [`BIG_TREE_JSONL`] graph example.
pub fn big_tree_nodes() -> Vec<String> {
    [
        "big",
        "big data",
        "big movie",
        "big architecture",
        "big data analytics",
        "big movie review",
        "big architecture project",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

pub fn c3() -> Corpus {
    Corpus::from_jsonl(C3_JSONL.as_bytes()).expect("builtin corpus is valid")
}

pub fn ml5() -> Corpus {
    Corpus::from_jsonl(ML5_JSONL.as_bytes()).expect("builtin corpus is valid")
}

pub fn big_tree() -> Corpus {
    Corpus::from_jsonl(BIG_TREE_JSONL.as_bytes()).expect("builtin corpus is valid")
}
