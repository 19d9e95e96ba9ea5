//! Serializable report shapes.
//!
//! Every report starts with the command name and the seed in effect, and all
//! collections are emitted in sorted order, so the same invocation always
//! produces the same bytes.

use serde::Serialize;

use searchtopo::anomaly::AnomalyReport;
use searchtopo::checks::CheckReport;
use searchtopo::primal::AxiomReport;

#[derive(Serialize)]
pub struct IngestReport {
    pub command: &'static str,
    pub seed: u64,
    pub documents: usize,
    pub vocabulary: usize,
    pub postings: usize,
    pub empty_documents: usize,
}

#[derive(Serialize)]
pub struct SearchReport {
    pub command: &'static str,
    pub seed: u64,
    pub query: String,
    pub docs: Vec<String>,
    pub count: usize,
    /// Query words absent from the vocabulary; an empty result through one
    /// of these is expected, not an error.
    pub absent_words: Vec<String>,
}

#[derive(Serialize)]
pub struct NeighborhoodEntry {
    pub word: String,
    pub after: Vec<String>,
    pub fore: Vec<String>,
}

#[derive(Serialize)]
pub struct StepEntry {
    pub word: String,
    pub m_after: Vec<String>,
    pub m_fore: Vec<String>,
}

#[derive(Serialize)]
pub struct WitnessEntry {
    pub from: String,
    pub to: String,
    pub chain: Vec<String>,
}

#[derive(Serialize)]
pub struct RelateReport {
    pub command: &'static str,
    pub seed: u64,
    pub words: Vec<String>,
    pub strict: bool,
    pub serial: bool,
    pub pairs: Vec<(String, String)>,
    pub neighborhoods: Vec<NeighborhoodEntry>,
    pub equal_space_classes: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessEntry>>,
}

#[derive(Serialize)]
pub struct TopologyChecks {
    pub union_identity_holds: bool,
    pub duality_holds: bool,
    pub cover_asserted_hold: bool,
    pub one_sided_counterexamples: Vec<String>,
}

#[derive(Serialize)]
pub struct TopologyReport {
    pub command: &'static str,
    pub seed: u64,
    pub ground: Vec<String>,
    pub side: char,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub strict: bool,
    pub opens: Vec<Vec<String>>,
    pub counts: TopologyCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<TopologyChecks>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub step_union_counterexamples: Vec<String>,
}

#[derive(Serialize)]
pub struct TopologyCounts {
    pub ground: usize,
    pub opens: usize,
}

#[derive(Serialize)]
pub struct DistanceReport {
    pub from: String,
    pub to: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<String>>,
    pub reachable: bool,
}

#[derive(Serialize)]
pub struct GraphReport {
    pub command: &'static str,
    pub seed: u64,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub self_loops: Vec<String>,
    pub loop_directed: bool,
    pub has_cycle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reach_counts: Option<Vec<(String, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub incomparable_pairs: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot_file: Option<String>,
}

#[derive(Serialize)]
pub struct AnomalyEnvelope {
    pub command: &'static str,
    pub seed: u64,
    #[serde(flatten)]
    pub report: AnomalyReport,
}

#[derive(Serialize)]
pub struct PrimalMember {
    pub keyword: String,
    pub docs: Vec<String>,
}

#[derive(Serialize)]
pub struct PrimalUnionSection {
    pub second_seed: Vec<String>,
    pub keywords: Vec<String>,
    pub union_closed: bool,
    pub closure_equality_holds: bool,
    pub missing_from_union: Vec<String>,
    pub axioms: AxiomReport,
}

#[derive(Serialize)]
pub struct PrimalReport {
    pub command: &'static str,
    pub seed: u64,
    pub seed_words: Vec<String>,
    pub token_pool: Vec<String>,
    pub keywords: Vec<String>,
    pub members: Vec<PrimalMember>,
    pub axioms: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub union: Option<PrimalUnionSection>,
}

#[derive(Serialize)]
pub struct CheckEnvelope {
    pub command: &'static str,
    pub seed: u64,
    pub trials: Vec<CheckReport>,
    pub all_passed: bool,
    pub asserted_failures: usize,
}

#[derive(Serialize)]
pub struct SelftestEntry {
    pub corpus: &'static str,
    pub report: CheckReport,
}

#[derive(Serialize)]
pub struct SelftestReport {
    pub command: &'static str,
    pub seed: u64,
    pub golden_trace_passed: bool,
    pub suites: Vec<SelftestEntry>,
    pub all_passed: bool,
}

/// Pretty JSON plus a trailing newline, the one rendering every command uses.
pub fn emit(report: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("reports serialize")
    );
}
