//! Jaccard-similarity anomaly detection over document word sets.
//!
//! Documents near a reference keyword set form the δ-similarity
//! neighborhood; the rest are anomalies. The detector then refines δ
//! iteratively: each round replaces it with the mean similarity of the
//! current anomalies, until the anomaly set empties, δ stops moving, or the
//! iteration budget runs out. The anomaly set at termination is reported as
//! the ultimate anomalies.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::corpus::tokenize;
use crate::error::{Error, Result};
use crate::search::Searcher;
use crate::set::DocSet;

/// |A ∩ B| / |A ∪ B|. Two empty sets are identical, hence 1.
pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    let intersection = a.intersection(b).count();
    intersection as f64 / union as f64
}

/// Which documents are scored against the reference keywords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PoolMode {
    /// The union of the keywords' search spaces.
    Union,
    /// Every document in the corpus.
    All,
}

/// Parameters of one detection run.
#[derive(Debug, Clone)]
pub struct ReferenceSpec {
    pub keywords: BTreeSet<String>,
    pub delta0: f64,
    pub max_iterations: usize,
    pub epsilon: f64,
    pub pool: PoolMode,
}

impl ReferenceSpec {
    pub fn new(keywords: impl IntoIterator<Item = impl AsRef<str>>, delta0: f64) -> Self {
        let keywords = keywords
            .into_iter()
            .flat_map(|k| tokenize(k.as_ref()))
            .collect();
        ReferenceSpec {
            keywords,
            delta0,
            max_iterations: 10,
            epsilon: 1e-12,
            pool: PoolMode::Union,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.keywords.is_empty() {
            return Err(Error::EmptyKeywords);
        }
        if !(self.delta0 > 0.0 && self.delta0 < 1.0) {
            return Err(Error::InvalidDelta(self.delta0));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidSpec("max_iterations must be at least 1".into()));
        }
        // NaN must fail this check too, hence the negated comparison.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidSpec("epsilon must be positive".into()));
        }
        Ok(())
    }
}

/// Why the refinement loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Termination {
    EmptyAnomalies,
    MaxIterations,
    Converged,
}

/// One evaluated threshold.
#[derive(Debug, Clone, Serialize)]
pub struct IterationRecord {
    pub index: usize,
    pub delta: f64,
    pub neighborhood: Vec<String>,
    pub anomalies: Vec<String>,
    /// Mean similarity over the anomalies; absent when there are none.
    pub average_anomaly_similarity: Option<f64>,
}

/// Full trace of a detection run.
#[derive(Debug, Clone, Serialize)]
pub struct AnomalyReport {
    pub keywords: Vec<String>,
    pub pool_mode: PoolMode,
    pub pool: Vec<String>,
    /// Per-document similarity to the reference keywords, pool order.
    pub similarities: Vec<DocSimilarity>,
    pub iterations: Vec<IterationRecord>,
    pub final_delta: f64,
    pub ultimate_anomalies: Vec<String>,
    pub termination: Termination,
}

#[derive(Debug, Clone, Serialize)]
pub struct DocSimilarity {
    pub doc: String,
    pub similarity: f64,
}

fn candidate_pool(searcher: &Searcher, keywords: &BTreeSet<String>, mode: PoolMode) -> DocSet {
    match mode {
        PoolMode::Union => keywords
            .iter()
            .map(|w| searcher.search(w))
            .fold(DocSet::empty(), |acc, s| acc.union(&s)),
        PoolMode::All => searcher.corpus.universe(),
    }
}

fn similarities(searcher: &Searcher, keywords: &BTreeSet<String>, pool: &DocSet) -> Vec<f64> {
    pool.iter()
        .map(|d| jaccard(keywords, &searcher.corpus.document(d).tokens))
        .collect()
}

/// Splits the pool at a threshold: strictly-greater similarities form the
/// neighborhood, the rest are anomalies.
fn partition(pool: &DocSet, sims: &[f64], delta: f64) -> (DocSet, DocSet) {
    let mut neighborhood = Vec::new();
    let mut anomalies = Vec::new();
    for (i, d) in pool.iter().enumerate() {
        if sims[i] > delta {
            neighborhood.push(d);
        } else {
            anomalies.push(d);
        }
    }
    (DocSet::from_sorted(neighborhood), DocSet::from_sorted(anomalies))
}

/// The δ-similarity neighborhood and its complement within the candidate
/// pool.
pub fn delta_neighborhood(
    searcher: &Searcher,
    keywords: impl IntoIterator<Item = impl AsRef<str>>,
    delta: f64,
    mode: PoolMode,
) -> Result<(DocSet, DocSet)> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    let keywords: BTreeSet<String> = keywords
        .into_iter()
        .flat_map(|k| tokenize(k.as_ref()))
        .collect();
    if keywords.is_empty() {
        return Err(Error::EmptyKeywords);
    }
    let pool = candidate_pool(searcher, &keywords, mode);
    let sims = similarities(searcher, &keywords, &pool);
    Ok(partition(&pool, &sims, delta))
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values {
        sum += v;
        count += 1;
    }
    (count > 0).then(|| sum / count as f64)
}

/// Runs the iterative refinement detector and records every round.
pub fn detect(searcher: &Searcher, spec: &ReferenceSpec) -> Result<AnomalyReport> {
    spec.validate()?;
    let pool = candidate_pool(searcher, &spec.keywords, spec.pool);
    let sims = similarities(searcher, &spec.keywords, &pool);
    let resolve = |docs: &DocSet| searcher.corpus.resolve(docs);

    let evaluate = |index: usize, delta: f64| -> (IterationRecord, DocSet, Option<f64>) {
        let (neighborhood, anomalies) = partition(&pool, &sims, delta);
        let avg = mean(
            pool.iter()
                .enumerate()
                .filter(|(_, d)| anomalies.contains(*d))
                .map(|(i, _)| sims[i]),
        );
        let record = IterationRecord {
            index,
            delta,
            neighborhood: resolve(&neighborhood),
            anomalies: resolve(&anomalies),
            average_anomaly_similarity: avg,
        };
        (record, anomalies, avg)
    };

    let (record, mut anomalies, mut avg) = evaluate(0, spec.delta0);
    let mut iterations = vec![record];
    let mut delta = spec.delta0;
    let termination;
    let mut refinements = 0usize;
    loop {
        if anomalies.is_empty() {
            termination = Termination::EmptyAnomalies;
            break;
        }
        if refinements == spec.max_iterations {
            termination = Termination::MaxIterations;
            break;
        }
        let next_delta = avg.expect("non-empty anomalies have a mean similarity");
        if (next_delta - delta).abs() < spec.epsilon {
            delta = next_delta;
            termination = Termination::Converged;
            break;
        }
        refinements += 1;
        delta = next_delta;
        let (record, next_anomalies, next_avg) = evaluate(refinements, delta);
        iterations.push(record);
        anomalies = next_anomalies;
        avg = next_avg;
    }

    Ok(AnomalyReport {
        keywords: spec.keywords.iter().cloned().collect(),
        pool_mode: spec.pool,
        pool: resolve(&pool),
        similarities: pool
            .iter()
            .zip(&sims)
            .map(|(d, &similarity)| DocSimilarity {
                doc: searcher.corpus.doc_id(d).to_string(),
                similarity,
            })
            .collect(),
        iterations,
        final_delta: delta,
        ultimate_anomalies: resolve(&anomalies),
        termination,
    })
}

/// Sizes of the δ-similarity neighborhoods along an ascending threshold
/// sequence, verifying that they shrink as δ grows.
#[derive(Debug, Clone, Serialize)]
pub struct NestedReport {
    pub deltas: Vec<f64>,
    pub sizes: Vec<usize>,
    pub nested: bool,
}

pub fn check_nested(
    searcher: &Searcher,
    keywords: impl IntoIterator<Item = impl AsRef<str>>,
    deltas: &[f64],
    mode: PoolMode,
) -> Result<NestedReport> {
    if deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonAscendingDeltas);
    }
    let keywords: Vec<String> = keywords
        .into_iter()
        .flat_map(|k| tokenize(k.as_ref()))
        .collect();
    let mut sizes = Vec::with_capacity(deltas.len());
    let mut nested = true;
    let mut previous: Option<DocSet> = None;
    for &delta in deltas {
        let (neighborhood, _) = delta_neighborhood(searcher, keywords.iter(), delta, mode)?;
        if let Some(prev) = &previous {
            if !neighborhood.is_subset(prev) {
                nested = false;
            }
        }
        sizes.push(neighborhood.len());
        previous = Some(neighborhood);
    }
    Ok(NestedReport {
        deltas: deltas.to_vec(),
        sizes,
        nested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Corpus, IngestRecord, InvertedIndex};
    use crate::fixtures;

    fn words(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn ml5() -> (Corpus, InvertedIndex) {
        let corpus = fixtures::ml5();
        let index = InvertedIndex::build(&corpus);
        (corpus, index)
    }

    const REFERENCE: [&str; 4] = ["data", "science", "machine", "learning"];

    #[test]
    fn jaccard_examples() {
        let a = words(&["machine", "learning", "basics"]);
        let b = words(&["data", "science", "machine", "learning"]);
        assert_eq!(jaccard(&a, &b), 0.4);
        assert_eq!(jaccard(&a, &a), 1.0);
        assert_eq!(jaccard(&a, &words(&["x", "y"])), 0.0);
        assert_eq!(jaccard(&BTreeSet::new(), &BTreeSet::new()), 1.0);
        assert_eq!(jaccard(&a, &BTreeSet::new()), 0.0);
    }

    #[test]
    fn delta_neighborhood_on_ml5() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        let (nbhd, anomalies) =
            delta_neighborhood(&s, REFERENCE, 0.4, PoolMode::Union).unwrap();
        assert!(nbhd.is_empty());
        assert_eq!(corpus.resolve(&anomalies), vec!["0", "1", "2", "3", "4"]);

        let (nbhd, anomalies) =
            delta_neighborhood(&s, REFERENCE, 0.39, PoolMode::Union).unwrap();
        assert_eq!(corpus.resolve(&nbhd), vec!["0", "2", "4"]);
        assert_eq!(corpus.resolve(&anomalies), vec!["1", "3"]);
    }

    #[test]
    fn disjoint_keywords_give_empty_pool() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        let (nbhd, anomalies) =
            delta_neighborhood(&s, ["zzz"], 0.4, PoolMode::Union).unwrap();
        assert!(nbhd.is_empty() && anomalies.is_empty());
    }

    #[test]
    fn delta_bounds_enforced() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        for bad in [0.0, 1.0, -0.5, 1.5] {
            assert!(matches!(
                delta_neighborhood(&s, REFERENCE, bad, PoolMode::Union),
                Err(Error::InvalidDelta(_))
            ));
        }
        assert!(matches!(
            delta_neighborhood(&s, Vec::<String>::new(), 0.4, PoolMode::Union),
            Err(Error::EmptyKeywords)
        ));
    }

    #[test]
    fn golden_trace() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        let spec = ReferenceSpec::new(REFERENCE, 0.4);
        let report = detect(&s, &spec).unwrap();

        let expected_sims = [0.4, 1.0 / 7.0, 0.4, 1.0 / 6.0, 0.4];
        assert_eq!(report.similarities.len(), 5);
        for (rec, want) in report.similarities.iter().zip(expected_sims) {
            assert!((rec.similarity - want).abs() < 1e-9);
        }

        let deltas: Vec<f64> = report.iterations.iter().map(|it| it.delta).collect();
        let expected_deltas = [0.4, 0.3019047619047619, 0.15476190476190477, 1.0 / 7.0];
        assert_eq!(deltas.len(), expected_deltas.len());
        for (got, want) in deltas.iter().zip(expected_deltas) {
            assert!((got - want).abs() < 1e-9, "delta {got} != {want}");
        }

        assert_eq!(report.ultimate_anomalies, vec!["1"]);
        assert!((report.final_delta - 1.0 / 7.0).abs() < 1e-9);
        assert_eq!(report.termination, Termination::Converged);
    }

    #[test]
    fn empty_anomalies_terminates_round_zero() {
        let corpus = Corpus::ingest(vec![
            IngestRecord::text("d1", "p q"),
            IngestRecord::text("d2", "p q r"),
        ])
        .unwrap();
        let index = InvertedIndex::build(&corpus);
        let s = Searcher::new(&corpus, &index);
        // Both documents score well above 0.1 against {p, q}.
        let spec = ReferenceSpec::new(["p", "q"], 0.1);
        let report = detect(&s, &spec).unwrap();
        assert_eq!(report.termination, Termination::EmptyAnomalies);
        assert!(report.ultimate_anomalies.is_empty());
        assert_eq!(report.iterations.len(), 1);
        assert_eq!(report.final_delta, 0.1);
    }

    #[test]
    fn max_iterations_bounds_refinements() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        let mut spec = ReferenceSpec::new(REFERENCE, 0.4);
        spec.max_iterations = 1;
        let report = detect(&s, &spec).unwrap();
        assert_eq!(report.termination, Termination::MaxIterations);
        assert_eq!(report.iterations.len(), 2);
    }

    #[test]
    fn partition_invariant_every_iteration() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        let report = detect(&s, &ReferenceSpec::new(REFERENCE, 0.4)).unwrap();
        for it in &report.iterations {
            let mut all: Vec<&String> = it.neighborhood.iter().chain(&it.anomalies).collect();
            all.sort();
            assert_eq!(all.len(), report.pool.len());
            let pool: Vec<&String> = report.pool.iter().collect();
            assert_eq!(all, pool);
        }
    }

    #[test]
    fn nested_report_on_ml5() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        let report = check_nested(&s, REFERENCE, &[0.1, 0.39, 0.5], PoolMode::Union).unwrap();
        assert_eq!(report.sizes, vec![5, 3, 0]);
        assert!(report.nested);

        assert!(matches!(
            check_nested(&s, REFERENCE, &[0.5, 0.2], PoolMode::Union),
            Err(Error::NonAscendingDeltas)
        ));
        let single = check_nested(&s, REFERENCE, &[0.3], PoolMode::Union).unwrap();
        assert!(single.nested);
    }

    #[test]
    fn pool_all_scores_every_document() {
        let (corpus, index) = ml5();
        let s = Searcher::new(&corpus, &index);
        let (nbhd, anomalies) =
            delta_neighborhood(&s, ["zzz"], 0.4, PoolMode::All).unwrap();
        assert!(nbhd.is_empty());
        assert_eq!(anomalies.len(), corpus.len());
    }
}
