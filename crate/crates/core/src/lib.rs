//! Set-theoretic search over a local document collection.
//!
//! An inverted index realizes the search function: a keyword's search space
//! is the set of documents containing it, composite keywords intersect their
//! tokens' spaces. On top of that one primitive the crate builds
//!
//! - the containment preorder between keywords and its fore/after
//!   neighborhoods ([`relation`]),
//! - finite topologies generated from neighborhood subbases, with duality
//!   and open-set structure checks ([`topology`]),
//! - data directed graphs with atoms, cycles, covering-chain distance and
//!   DOT export ([`graph`]),
//! - Jaccard δ-similarity neighborhoods and the iterative threshold
//!   refinement anomaly detector ([`anomaly`]),
//! - ∨-closed keyword sets and primal families of search spaces
//!   ([`primal`]),
//! - and an executable suite that re-verifies each structural law over any
//!   corpus ([`checks`]).
//!
//! Corpora and indexes are immutable after construction and freely shareable
//! across threads; everything downstream is a pure function of them.

pub mod anomaly;
pub mod checks;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod primal;
pub mod relation;
pub mod search;
pub mod set;
pub mod topology;

pub use anomaly::{detect, jaccard, AnomalyReport, PoolMode, ReferenceSpec, Termination};
pub use checks::{run_checks, CheckConfig, CheckReport};
pub use corpus::{Corpus, Document, IngestRecord, InvertedIndex, RecordContent};
pub use error::{Error, Result};
pub use graph::{AtomReport, DataDirectedGraph, DistanceWitness};
pub use primal::{
    check_axioms, primal_of, union_primal, vee_closure, AxiomReport, PrimalFamily,
    VeeClosedWordSet,
};
pub use relation::{ChainMode, ChainWitness, ContainmentRelation};
pub use search::{parse_query, Query, SearchFamily, SearchSpace, Searcher};
pub use set::{DocId, DocSet};
pub use topology::{generate_from_subbase, tau_b, tau_f, FiniteTopology};
