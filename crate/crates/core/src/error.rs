//! Crate-wide error type.

use thiserror::Error;

/// Errors returned by `searchtopo`.
#[derive(Error, Debug)]
pub enum Error {
    /// The caller attempted to ingest two records with the same id.
    #[error("duplicate document id: {0}")]
    DuplicateDocId(String),

    /// Ingest was called with no records.
    #[error("corpus must contain at least one record")]
    EmptyCorpus,

    /// A record carried both a `text` and a `words` field (or neither).
    #[error("record {id}: expected exactly one of `text` or `words`")]
    MalformedRecord { id: String },

    /// A line of a JSONL corpus file failed to parse.
    #[error("line {line}: {source}")]
    CorpusParse {
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A keyword normalized to zero tokens.
    #[error("keyword {0:?} contains no indexable token")]
    EmptyKeyword(String),

    /// A query string contained no leaves or was syntactically invalid.
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// A word was used against a relation, topology or graph whose ground
    /// set does not contain it.
    #[error("word {0:?} is not in the ground set")]
    UnknownWord(String),

    /// The relation ground set was empty.
    #[error("ground word set must be non-empty")]
    EmptyGround,

    /// A chain length below one was requested.
    #[error("step count must be at least 1, got {0}")]
    InvalidStepCount(usize),

    /// The topology ground set exceeds the configured cap.
    #[error("ground set of {size} words exceeds the topology cap of {cap} (override with SEARCHTOPO_CAP)")]
    GroundExceedsCap { size: usize, cap: usize },

    /// A set complement was requested without a declared working word set.
    #[error("complement requires a declared working word set")]
    ComplementWithoutGround,

    /// A similarity threshold fell outside the open interval (0, 1).
    #[error("delta must satisfy 0 < delta < 1, got {0}")]
    InvalidDelta(f64),

    /// A delta sequence was not strictly ascending.
    #[error("delta sequence must be strictly ascending")]
    NonAscendingDeltas,

    /// The anomaly reference spec violated one of its invariants.
    #[error("invalid reference spec: {0}")]
    InvalidSpec(String),

    /// No reference keywords were supplied.
    #[error("reference keyword set must be non-empty")]
    EmptyKeywords,

    /// A semantic-union closure would exceed the configured cap.
    #[error("vee closure would contain {would_be} keywords, exceeding the cap of {cap}")]
    ClosureExceedsCap { would_be: u64, cap: u64 },

    /// Two primal families built over different corpora were combined.
    #[error("primal families were built over different corpora")]
    CorpusMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
