//! Corpus ingestion and the inverted index.
//!
//! Documents are sets of normalized words. The index maps each vocabulary
//! word to the sorted set of documents containing it, which is exactly the
//! search function realized over the ingested collection: a word's posting
//! list is its search space.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::io::BufRead;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::set::{DocId, DocSet};

/// Lowercases and splits on any non-alphanumeric character, dropping empty
/// fragments. No stemming, no stopword removal: the containment structure is
/// sensitive to exact word membership.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|ch: char| !ch.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect()
}

/// Payload of one ingest record.
#[derive(Debug, Clone)]
pub enum RecordContent {
    /// Raw text, tokenized by [`tokenize`].
    Text(String),
    /// A pre-tokenized word list, taken verbatim after lowercasing only.
    Words(Vec<String>),
}

/// One input record: an id plus text or a word list.
#[derive(Debug, Clone)]
pub struct IngestRecord {
    pub id: String,
    pub content: RecordContent,
}

impl IngestRecord {
    pub fn text(id: impl Into<String>, text: impl Into<String>) -> Self {
        IngestRecord {
            id: id.into(),
            content: RecordContent::Text(text.into()),
        }
    }

    pub fn words<S: Into<String>>(id: impl Into<String>, words: impl IntoIterator<Item = S>) -> Self {
        IngestRecord {
            id: id.into(),
            content: RecordContent::Words(words.into_iter().map(Into::into).collect()),
        }
    }
}

/// A single ingested document.
#[derive(Debug, Clone)]
pub struct Document {
    pub id: String,
    /// Normalized words, duplicates collapsed.
    pub tokens: BTreeSet<String>,
    /// Raw token count before dedup, informational only.
    pub source_len: usize,
}

/// An immutable document collection.
///
/// Documents are stored sorted by id, so the same records produce the same
/// corpus regardless of input order, and document indices are stable.
#[derive(Debug, Clone)]
pub struct Corpus {
    documents: Vec<Document>,
    by_id: HashMap<String, DocId>,
    vocabulary: BTreeSet<String>,
}

impl Corpus {
    /// Builds a corpus from records. Rejects duplicate ids and empty input.
    pub fn ingest(records: impl IntoIterator<Item = IngestRecord>) -> Result<Corpus> {
        let mut documents = Vec::new();
        for record in records {
            let (tokens, source_len) = match record.content {
                RecordContent::Text(text) => {
                    let raw = tokenize(&text);
                    let len = raw.len();
                    (raw.into_iter().collect::<BTreeSet<_>>(), len)
                }
                RecordContent::Words(words) => {
                    let len = words.len();
                    let set = words
                        .into_iter()
                        .map(|w| w.to_lowercase())
                        .filter(|w| !w.is_empty())
                        .collect::<BTreeSet<_>>();
                    (set, len)
                }
            };
            documents.push(Document {
                id: record.id,
                tokens,
                source_len,
            });
        }
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in documents.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateDocId(pair[0].id.clone()));
            }
        }
        let by_id = documents
            .iter()
            .enumerate()
            .map(|(i, d)| (d.id.clone(), i as DocId))
            .collect();
        let vocabulary = documents
            .iter()
            .flat_map(|d| d.tokens.iter().cloned())
            .collect();
        Ok(Corpus {
            documents,
            by_id,
            vocabulary,
        })
    }

    /// Reads JSON Lines input: one object per line, either
    /// `{"id": "...", "text": "..."}` or `{"id": "...", "words": [...]}`.
    /// Blank lines are skipped; both shapes may be mixed in one file.
    pub fn from_jsonl(reader: impl BufRead) -> Result<Corpus> {
        #[derive(Deserialize)]
        struct RawRecord {
            id: String,
            #[serde(default)]
            text: Option<String>,
            #[serde(default)]
            words: Option<Vec<String>>,
        }

        let mut records = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let raw: RawRecord = serde_json::from_str(&line).map_err(|source| Error::CorpusParse {
                line: lineno + 1,
                source,
            })?;
            let content = match (raw.text, raw.words) {
                (Some(text), None) => RecordContent::Text(text),
                (None, Some(words)) => RecordContent::Words(words),
                _ => return Err(Error::MalformedRecord { id: raw.id }),
            };
            records.push(IngestRecord {
                id: raw.id,
                content,
            });
        }
        Corpus::ingest(records)
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn document(&self, id: DocId) -> &Document {
        &self.documents[id as usize]
    }

    pub fn doc_id(&self, id: DocId) -> &str {
        &self.documents[id as usize].id
    }

    pub fn index_of(&self, external_id: &str) -> Option<DocId> {
        self.by_id.get(external_id).copied()
    }

    /// The set of all document indices.
    pub fn universe(&self) -> DocSet {
        DocSet::universe(self.documents.len() as u32)
    }

    pub fn vocabulary(&self) -> &BTreeSet<String> {
        &self.vocabulary
    }

    /// Resolves a set of document indices to their external ids.
    pub fn resolve(&self, docs: &DocSet) -> Vec<String> {
        docs.iter().map(|d| self.doc_id(d).to_string()).collect()
    }

    /// A stable fingerprint of the document id list, used to detect
    /// cross-corpus mixing.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the id list.
        let mut h: u64 = 0xcbf29ce484222325;
        for doc in &self.documents {
            for byte in doc.id.as_bytes() {
                h ^= u64::from(*byte);
                h = h.wrapping_mul(0x100000001b3);
            }
            h ^= 0xff;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }
}

/// Word -> sorted set of documents containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertedIndex {
    postings: std::collections::BTreeMap<String, DocSet>,
}

impl InvertedIndex {
    /// Materializes the posting list of every vocabulary word.
    pub fn build(corpus: &Corpus) -> InvertedIndex {
        let mut postings: std::collections::BTreeMap<String, Vec<DocId>> =
            std::collections::BTreeMap::new();
        for (i, doc) in corpus.documents().iter().enumerate() {
            for token in &doc.tokens {
                postings.entry(token.clone()).or_default().push(i as DocId);
            }
        }
        // Document iteration is in ascending index order, so each list is
        // already sorted and duplicate-free.
        InvertedIndex {
            postings: postings
                .into_iter()
                .map(|(w, ids)| (w, DocSet::from_sorted(ids)))
                .collect(),
        }
    }

    pub fn postings(&self, word: &str) -> Option<&DocSet> {
        self.postings.get(word)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.postings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.postings.is_empty()
    }
}
