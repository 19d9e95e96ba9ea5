//! The executable theorem suite.
//!
//! Every structural statement the engine relies on runs here as a concrete
//! check over one corpus: the containment relation is a preorder, generated
//! open sets are neighborhood unions, the two topologies are dual, keyed
//! family algebra matches direct evaluation, m-step neighborhoods chain,
//! δ-neighborhoods nest, primal axioms hold, graph edges are sound.
//!
//! Checks come in two kinds. Asserted checks must pass; a failure is an
//! engine bug and flips the report. Diagnostics evaluate statements that are
//! *not* sound in general (the one-sided open-set equality, graph totality,
//! the closure equality of unioned primal families, strict-mode step
//! identities); their counterexamples are recorded and never fail the run.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::anomaly::{self, PoolMode, ReferenceSpec};
use crate::corpus::{Corpus, IngestRecord, InvertedIndex};
use crate::error::Result;
use crate::graph::DataDirectedGraph;
use crate::primal;
use crate::relation::{ChainMode, ContainmentRelation};
use crate::search::{self, Searcher};
use crate::set::DocSet;
use crate::topology;

/// Tunables for one suite run.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Upper bound on the relation ground size; vocabularies beyond it are
    /// sampled.
    pub max_relation_words: usize,
    /// Ground cap passed to the topology generators.
    pub topology_cap: usize,
    /// Depth for the m-step chain checks.
    pub chain_depth: usize,
    /// Ground size at or below which subset pairs are checked exhaustively.
    pub exhaustive_pair_words: usize,
    /// Random subset pairs when the ground is larger.
    pub random_pairs: usize,
    /// Number of thresholds on the nestedness grid.
    pub delta_grid: usize,
    /// Seed for all sampling in the suite.
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_relation_words: 12,
            topology_cap: topology::DEFAULT_GROUND_CAP,
            chain_depth: 4,
            exhaustive_pair_words: 5,
            random_pairs: 200,
            delta_grid: 99,
            seed: 0,
        }
    }
}

/// One asserted check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// One diagnostic: counterexamples are results, not failures.
#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticOutcome {
    pub name: String,
    pub counterexamples: Vec<String>,
}

/// Everything one suite run produced.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub documents: usize,
    pub vocabulary: usize,
    pub ground: Vec<String>,
    pub asserted: Vec<CheckOutcome>,
    pub diagnostics: Vec<DiagnosticOutcome>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.asserted.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.asserted.iter().filter(|c| !c.passed)
    }
}

struct Suite<'a> {
    searcher: Searcher<'a>,
    cfg: &'a CheckConfig,
    rng: StdRng,
    asserted: Vec<CheckOutcome>,
    diagnostics: Vec<DiagnosticOutcome>,
}

impl<'a> Suite<'a> {
    fn assert_check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.asserted.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn diagnostic(&mut self, name: &str, counterexamples: Vec<String>) {
        self.diagnostics.push(DiagnosticOutcome {
            name: name.to_string(),
            counterexamples,
        });
    }
}

/// Scan oracle: a word's space computed by walking every document, never
/// touching the index.
fn scan_space(corpus: &Corpus, word: &str) -> DocSet {
    corpus
        .documents()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.tokens.contains(word))
        .map(|(i, _)| i as u32)
        .collect()
}

/// Runs the whole suite over one corpus.
pub fn run_checks(searcher: &Searcher, cfg: &CheckConfig) -> Result<CheckReport> {
    let corpus = searcher.corpus;
    let mut suite = Suite {
        searcher: *searcher,
        cfg,
        rng: StdRng::seed_from_u64(cfg.seed),
        asserted: Vec::new(),
        diagnostics: Vec::new(),
    };

    let mut ground: Vec<String> = corpus.vocabulary().iter().cloned().collect();
    if ground.len() > cfg.max_relation_words {
        ground.shuffle(&mut suite.rng);
        ground.truncate(cfg.max_relation_words);
        ground.sort();
    }
    if ground.is_empty() {
        // A corpus of empty documents has nothing to check against.
        return Ok(CheckReport {
            seed: cfg.seed,
            documents: corpus.len(),
            vocabulary: 0,
            ground,
            asserted: suite.asserted,
            diagnostics: suite.diagnostics,
        });
    }

    let rel = ContainmentRelation::build(searcher, &ground)?;

    corpus_checks(&mut suite);
    relation_checks(&mut suite, &rel);
    topology_checks(&mut suite, &rel)?;
    family_checks(&mut suite, &ground);
    chain_checks(&mut suite, &rel)?;
    anomaly_checks(&mut suite, &ground)?;
    primal_checks(&mut suite, &ground)?;
    graph_checks(&mut suite, &rel, &ground)?;

    Ok(CheckReport {
        seed: cfg.seed,
        documents: corpus.len(),
        vocabulary: corpus.vocabulary().len(),
        ground,
        asserted: suite.asserted,
        diagnostics: suite.diagnostics,
    })
}

fn corpus_checks(suite: &mut Suite) {
    let corpus = suite.searcher.corpus;
    let index = suite.searcher.index;

    // Round trip: postings membership iff token membership, both directions.
    let mut ok = true;
    if corpus.len() <= 100 {
        for word in corpus.vocabulary() {
            let posting = index.postings(word).expect("vocabulary word has a posting");
            for (i, doc) in corpus.documents().iter().enumerate() {
                if posting.contains(i as u32) != doc.tokens.contains(word) {
                    ok = false;
                }
            }
        }
    } else {
        for (i, doc) in corpus.documents().iter().enumerate() {
            for word in &doc.tokens {
                if !index.postings(word).is_some_and(|p| p.contains(i as u32)) {
                    ok = false;
                }
            }
        }
    }
    suite.assert_check(
        "index_round_trip",
        ok,
        format!("docs={}, words={}", corpus.len(), corpus.vocabulary().len()),
    );

    // Re-ingesting the documents in reverse order rebuilds the same index.
    let mut records: Vec<IngestRecord> = corpus
        .documents()
        .iter()
        .map(|d| IngestRecord::words(d.id.clone(), d.tokens.iter().cloned()))
        .collect();
    records.reverse();
    let reingested = Corpus::ingest(records).expect("existing corpus re-ingests");
    suite.assert_check(
        "ingest_order_independence",
        InvertedIndex::build(&reingested) == *index,
        "reversed record order",
    );
}

fn relation_checks(suite: &mut Suite, rel: &ContainmentRelation) {
    let n = rel.len();

    let reflexive = (0..n).all(|x| rel.related(x, x));
    let mut transitive = true;
    for x in 0..n {
        for y in 0..n {
            if !rel.related(x, y) {
                continue;
            }
            for z in 0..n {
                if rel.related(y, z) && !rel.related(x, z) {
                    transitive = false;
                }
            }
        }
    }
    suite.assert_check(
        "containment_preorder",
        reflexive && transitive,
        format!("ground={n}"),
    );

    suite.assert_check("relation_serial", rel.is_serial(), format!("ground={n}"));

    // Oracle: pairs re-derived from a raw corpus scan.
    let corpus = suite.searcher.corpus;
    let spaces: Vec<DocSet> = rel
        .ground()
        .iter()
        .map(|w| scan_space(corpus, w))
        .collect();
    let mut oracle_ok = true;
    for x in 0..n {
        for y in 0..n {
            if rel.related(x, y) != spaces[y].is_subset(&spaces[x]) {
                oracle_ok = false;
            }
        }
    }
    suite.assert_check("relation_matches_scan_oracle", oracle_ok, format!("pairs={}", n * n));
}

fn topology_checks(suite: &mut Suite, rel: &ContainmentRelation) -> Result<()> {
    let cap = suite.cfg.topology_cap;
    let tb = topology::tau_b(rel, cap)?;
    let tf = topology::tau_f(rel, cap)?;

    suite.assert_check(
        "topology_axioms",
        tb.satisfies_axioms() && tf.satisfies_axioms(),
        format!("|tau_B|={}, |tau_F|={}", tb.len(), tf.len()),
    );

    let union_identity = topology::check_union_identity(&tb, &tf, rel);
    suite.assert_check(
        "open_sets_are_neighborhood_unions",
        union_identity.holds(),
        format!(
            "violations={}",
            union_identity.after_side.len() + union_identity.fore_side.len()
        ),
    );

    let mut minimal_ok = true;
    for (x, word) in rel.ground().iter().enumerate() {
        let after: Vec<&str> = rel.after(x).iter().map(|&i| rel.word(i)).collect();
        let fore: Vec<&str> = rel.fore(x).iter().map(|&i| rel.word(i)).collect();
        if tb.minimal_open(word)? != after || tf.minimal_open(word)? != fore {
            minimal_ok = false;
        }
    }
    suite.assert_check(
        "minimal_open_equals_neighborhood",
        minimal_ok,
        format!("points={}", rel.len()),
    );

    let duality = topology::check_duality(&tb, &tf);
    suite.assert_check("topology_duality", duality.holds(), "complement bijection");

    let cover = topology::check_cover(&tb, &tf, rel);
    suite.assert_check(
        "two_sided_open_cover",
        cover.asserted_hold(),
        format!(
            "both-sided opens checked={}",
            tb.opens().iter().filter(|&&m| tf.contains(m)).count()
        ),
    );
    suite.diagnostic(
        "one_sided_union_equality",
        cover
            .one_sided_counterexamples
            .iter()
            .map(|v| format!("open {{{}}} -> {{{}}}", v.open.join(", "), v.computed.join(", ")))
            .collect(),
    );
    Ok(())
}

fn family_checks(suite: &mut Suite, ground: &[String]) {
    let searcher = suite.searcher;
    let n = ground.len();
    let ground_set: BTreeSet<String> = ground.iter().cloned().collect();

    let subsets_of = |mask: u64| -> BTreeSet<String> {
        ground
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| w.clone())
            .collect()
    };

    let pairs: Vec<(u64, u64)> = if n <= suite.cfg.exhaustive_pair_words {
        let total = 1u64 << n;
        (0..total)
            .flat_map(|a| (0..total).map(move |b| (a, b)))
            .collect()
    } else {
        let full = 1u64 << n.min(20);
        (0..suite.cfg.random_pairs)
            .map(|_| (suite.rng.gen_range(0..full), suite.rng.gen_range(0..full)))
            .collect()
    };

    let mut union_ok = true;
    let mut intersection_ok = true;
    let mut complement_ok = true;
    let mut de_morgan_ok = true;
    let mut monotone_ok = true;
    for &(am, bm) in &pairs {
        let a = subsets_of(am);
        let b = subsets_of(bm);

        union_ok &= search::family_union(&searcher, &a, &b).identity_held;
        intersection_ok &= search::family_intersection(&searcher, &a, &b).identity_held;
        complement_ok &= search::family_complement(&searcher, &a, Some(&ground_set))
            .expect("ground declared")
            .identity_held;

        // De Morgan over keyed families: S((A∪B)^c) = S(A)^c ∩ S(B)^c.
        let union_words: BTreeSet<String> = a.union(&b).cloned().collect();
        let direct = searcher.family(ground_set.difference(&union_words));
        let whole = searcher.family(&ground_set);
        let composed = searcher
            .family(&a)
            .keyed_complement(&whole)
            .keyed_intersection(&searcher.family(&b).keyed_complement(&whole));
        de_morgan_ok &= direct == composed;

        // Monotonicity along A∩B ⊆ A ⊆ A∪B.
        let inter_words: BTreeSet<String> = a.intersection(&b).cloned().collect();
        let fam_inter = searcher.family(&inter_words);
        let fam_a = searcher.family(&a);
        let fam_union = searcher.family(&union_words);
        monotone_ok &= fam_inter.is_subfamily_of(&fam_a) && fam_a.is_subfamily_of(&fam_union);
    }
    let detail = format!("pairs={}", pairs.len());
    suite.assert_check("family_union_identity", union_ok, detail.clone());
    suite.assert_check("family_intersection_identity", intersection_ok, detail.clone());
    suite.assert_check("family_complement_identity", complement_ok, detail.clone());
    suite.assert_check("family_de_morgan", de_morgan_ok, detail.clone());
    suite.assert_check("family_monotonicity", monotone_ok, detail);

    // Query evaluation against the scan oracle.
    let corpus = suite.searcher.corpus;
    let mut eval_ok = true;
    let mut checked = 0usize;
    for i in 0..n.min(6) {
        for j in 0..n.min(6) {
            let vee = search::Query::vee(vec![
                search::Query::leaf(&ground[i]),
                search::Query::leaf(&ground[j]),
            ]);
            let wedge = search::Query::wedge(vec![
                search::Query::leaf(&ground[i]),
                search::Query::leaf(&ground[j]),
            ]);
            let scan_i = scan_space(corpus, &ground[i]);
            let scan_j = scan_space(corpus, &ground[j]);
            eval_ok &= searcher.eval(&vee) == scan_i.intersect(&scan_j);
            eval_ok &= searcher.eval(&wedge) == scan_i.union(&scan_j);
            checked += 2;
        }
    }
    suite.assert_check(
        "query_eval_matches_scan_oracle",
        eval_ok,
        format!("queries={checked}"),
    );
}

fn chain_checks(suite: &mut Suite, rel: &ContainmentRelation) -> Result<()> {
    let n = rel.len();
    let depth = suite.cfg.chain_depth;

    let mut collapse_ok = true;
    let mut preceq_ok = true;
    let mut succeq_ok = true;
    for x in 0..n {
        for m in 1..=depth {
            let after_m = rel.m_after(x, m, ChainMode::NonStrict)?;
            let fore_m = rel.m_fore(x, m, ChainMode::NonStrict)?;
            collapse_ok &= after_m == rel.after(x) && fore_m == rel.fore(x);
            for mode in [ChainMode::NonStrict, ChainMode::Strict] {
                let a_m = rel.m_after(x, m, mode)?;
                let a_next = rel.m_after(x, m + 1, mode)?;
                preceq_ok &= rel.preceq(&a_m, &a_next);
                let f_m = rel.m_fore(x, m, mode)?;
                let f_next = rel.m_fore(x, m + 1, mode)?;
                succeq_ok &= rel.succeq(&f_m, &f_next);
            }
        }
    }
    suite.assert_check(
        "non_strict_steps_collapse",
        collapse_ok,
        format!("m=1..{depth}"),
    );
    suite.assert_check(
        "after_chain_preceq",
        preceq_ok,
        format!("m=1..{depth}, both modes"),
    );
    suite.assert_check(
        "fore_chain_succeq",
        succeq_ok,
        format!("m=1..{depth}, both modes"),
    );

    // m-step witnesses certify real containment chains.
    let mut witness_ok = true;
    for x in 0..n {
        for y in 0..n {
            for (m, mode) in [(2, ChainMode::Strict), (3, ChainMode::Strict), (2, ChainMode::NonStrict)] {
                let (found, witness) = rel.m_step(x, y, m, mode)?;
                if !found {
                    continue;
                }
                let witness = witness.expect("found chains carry witnesses");
                let mut hops = Vec::with_capacity(m + 1);
                hops.push(x);
                for w in &witness.words {
                    hops.push(rel.index_of(w)?);
                }
                hops.push(y);
                witness_ok &= hops.len() == m + 1;
                for pair in hops.windows(2) {
                    witness_ok &= rel.space(pair[1]).is_subset(rel.space(pair[0]));
                    if mode == ChainMode::Strict {
                        witness_ok &= rel.space(pair[1]) != rel.space(pair[0]);
                    }
                }
            }
        }
    }
    suite.assert_check("chain_witnesses_verify", witness_ok, format!("pairs={}", n * n));

    // The m-step relation composes in both modes and is reflexive in the
    // non-strict one, so the non-strict reading stays a preorder.
    let mut step_preorder_ok = true;
    let m = 2.min(depth);
    for mode in [ChainMode::NonStrict, ChainMode::Strict] {
        let mut step = vec![vec![false; n]; n];
        for (x, row) in step.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = rel.m_step(x, y, m, mode)?.0;
            }
        }
        for (x, row) in step.iter().enumerate() {
            if mode == ChainMode::NonStrict {
                step_preorder_ok &= row[x];
            }
            for (y, &direct) in row.iter().enumerate() {
                if !direct {
                    continue;
                }
                for (z, &onward) in step[y].iter().enumerate() {
                    if onward {
                        step_preorder_ok &= row[z];
                    }
                }
            }
        }
    }
    suite.assert_check(
        "m_step_composition",
        step_preorder_ok,
        format!("m={m}, both modes"),
    );

    // Step-neighborhood topologies: equality with the base topologies is a
    // theorem in non-strict mode, a diagnostic in strict mode.
    let cap = suite.cfg.topology_cap;
    let tb = topology::tau_b(rel, cap)?;
    let tf = topology::tau_f(rel, cap)?;
    let m = 2.min(depth);
    let non_strict = topology::step_topologies(rel, m, ChainMode::NonStrict, cap)?;
    suite.assert_check(
        "step_topologies_match_base",
        non_strict.fore_side == tf
            && non_strict.after_side == tb
            && non_strict.fore_violations.is_empty()
            && non_strict.after_violations.is_empty(),
        format!("m={m}, non-strict"),
    );
    let strict = topology::step_topologies(rel, m, ChainMode::Strict, cap)?;
    suite.diagnostic(
        "strict_step_union_equality",
        strict
            .fore_violations
            .iter()
            .chain(&strict.after_violations)
            .map(|v| format!("open {{{}}} -> {{{}}}", v.open.join(", "), v.computed.join(", ")))
            .collect(),
    );
    Ok(())
}

fn anomaly_checks(suite: &mut Suite, ground: &[String]) -> Result<()> {
    let searcher = suite.searcher;
    let mut keywords: Vec<String> = ground.to_vec();
    keywords.shuffle(&mut suite.rng);
    keywords.truncate(4.min(keywords.len()));

    let grid = suite.cfg.delta_grid;
    let deltas: Vec<f64> = (1..=grid).map(|k| k as f64 / (grid + 1) as f64).collect();
    let nested = anomaly::check_nested(&searcher, keywords.iter(), &deltas, PoolMode::Union)?;
    let monotone = nested.sizes.windows(2).all(|w| w[1] <= w[0]);
    suite.assert_check(
        "delta_neighborhoods_nested",
        nested.nested && monotone,
        format!("grid={grid}, keywords={}", keywords.len()),
    );

    let spec = ReferenceSpec::new(keywords.iter(), 0.4);
    let report = anomaly::detect(&searcher, &spec)?;
    let mut partition_ok = true;
    for it in &report.iterations {
        let mut union: Vec<&String> = it.neighborhood.iter().chain(&it.anomalies).collect();
        union.sort();
        let pool: Vec<&String> = report.pool.iter().collect();
        partition_ok &= union == pool;
        partition_ok &= it.neighborhood.iter().all(|d| !it.anomalies.contains(d));
    }
    suite.assert_check(
        "anomaly_partition_invariant",
        partition_ok,
        format!("iterations={}", report.iterations.len()),
    );

    // Similarity symmetry and identity-of-indiscernibles on document pairs.
    let corpus = searcher.corpus;
    let mut sim_ok = true;
    let sample: Vec<usize> = (0..corpus.len().min(12)).collect();
    for &i in &sample {
        for &j in &sample {
            let a = &corpus.documents()[i].tokens;
            let b = &corpus.documents()[j].tokens;
            let ab = anomaly::jaccard(a, b);
            sim_ok &= (ab - anomaly::jaccard(b, a)).abs() == 0.0;
            sim_ok &= (ab == 1.0) == (a == b);
        }
    }
    suite.assert_check(
        "jaccard_symmetry_and_identity",
        sim_ok,
        format!("docs={}", sample.len()),
    );
    Ok(())
}

fn primal_checks(suite: &mut Suite, ground: &[String]) -> Result<()> {
    let searcher = suite.searcher;
    let universe = searcher.corpus.universe();

    let mut non_universal: Vec<&String> = ground
        .iter()
        .filter(|w| searcher.search(w) != universe)
        .collect();
    non_universal.truncate(4);
    if !non_universal.is_empty() {
        let m = primal::vee_closure(&non_universal, 1 << 16)?;
        let family = primal::primal_of(&searcher, &m);
        let report = primal::check_axioms(&family);
        suite.assert_check(
            "primal_axioms",
            report.all_hold(),
            format!("keywords={}", family.len()),
        );

        // Each member's space re-derived by scanning documents: composite
        // keywords must intersect exactly their tokens' scan spaces.
        let corpus = searcher.corpus;
        let mut member_oracle_ok = true;
        for (keyword, space) in family.members() {
            let scanned = keyword
                .split(' ')
                .map(|token| scan_space(corpus, token))
                .reduce(|acc, s| acc.intersect(&s))
                .expect("keywords have tokens");
            member_oracle_ok &= *space == scanned;
        }
        suite.assert_check(
            "primal_members_match_scan_oracle",
            member_oracle_ok,
            format!("members={}", family.len()),
        );

        // Axiom (i) holds iff no keyword attains the universe; re-derive the
        // right-hand side independently.
        let attained = family.members().values().any(|s| *s == universe);
        suite.assert_check(
            "universe_exclusion_equivalence",
            report.universe_excluded.holds == !attained,
            "independent recomputation",
        );
    }

    if let Some(universal) = ground.iter().find(|w| searcher.search(w) == universe) {
        let m = primal::vee_closure(&[universal], 64)?;
        let report = primal::check_axioms(&primal::primal_of(&searcher, &m));
        suite.assert_check(
            "universal_word_flagged",
            !report.universe_excluded.holds
                && report.universe_excluded.witnesses.contains(universal),
            format!("witness={universal}"),
        );
    }

    // Closure equality for unioned families: expected to fail whenever the
    // plain union is not ∨-closed, so it is recorded, not asserted.
    if non_universal.len() >= 2 {
        let pa = primal::primal_of(&searcher, &primal::vee_closure(&[non_universal[0]], 64)?);
        let pb = primal::primal_of(&searcher, &primal::vee_closure(&[non_universal[1]], 64)?);
        let union = primal::union_primal(&searcher, &pa, &pb)?;
        suite.assert_check(
            "union_primal_axioms",
            union.axioms.all_hold(),
            format!("keywords={}", union.family.len()),
        );
        suite.diagnostic(
            "union_primal_closure_equality",
            if union.closure_equality_holds {
                Vec::new()
            } else {
                union
                    .missing_from_union
                    .iter()
                    .map(|k| format!("missing {k}"))
                    .collect()
            },
        );
    }
    Ok(())
}

fn graph_checks(suite: &mut Suite, rel: &ContainmentRelation, ground: &[String]) -> Result<()> {
    let searcher = suite.searcher;
    let graph = DataDirectedGraph::build(rel, ground)?;

    // Edge soundness against the scan oracle.
    let corpus = searcher.corpus;
    let mut edges_ok = true;
    for (x, y) in graph.edges() {
        let sx = scan_space(corpus, x);
        let sy = scan_space(corpus, y);
        edges_ok &= sy.is_subset(&sx);
    }
    suite.assert_check(
        "graph_edges_sound",
        edges_ok,
        format!("edges={}", graph.edge_count()),
    );

    suite.assert_check(
        "graph_loop_directed",
        graph.is_loop_directed(),
        format!("nodes={}", graph.node_count()),
    );

    // Proper-edge cycles exist exactly when two nodes share a space.
    let has_equal_pair = rel.equal_space_classes().iter().any(|c| c.len() > 1);
    suite.assert_check(
        "cycles_iff_equal_spaces",
        graph.has_cycle() == has_equal_pair,
        format!("equal classes={}", rel.equal_space_classes().len()),
    );

    // Distance witnesses are strict containment chains.
    let atoms = graph.find_atoms();
    let mut distance_ok = true;
    for (word, _) in atoms.reach_counts.iter().take(6) {
        for (other, _) in atoms.reach_counts.iter().take(6) {
            if let Some(witness) = graph.distance(word, other)? {
                distance_ok &= witness.chain.len() == witness.length + 1;
                for pair in witness.chain.windows(2) {
                    let sx = scan_space(corpus, &pair[0]);
                    let sy = scan_space(corpus, &pair[1]);
                    distance_ok &= sy.is_proper_subset(&sx);
                }
            }
        }
    }
    suite.assert_check("graph_distance_witnesses", distance_ok, "sampled pairs");

    suite.diagnostic(
        "graph_totality",
        graph
            .incomparable_pairs()
            .into_iter()
            .map(|(a, b)| format!("{a} ⋈ {b}"))
            .collect(),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::random_corpus;

    #[test]
    fn suite_passes_on_c3() {
        let corpus = fixtures::c3();
        let index = InvertedIndex::build(&corpus);
        let searcher = Searcher::new(&corpus, &index);
        let report = run_checks(&searcher, &CheckConfig::default()).unwrap();
        assert!(report.all_passed(), "failures: {:?}", report.failures().collect::<Vec<_>>());
        // The one-sided equality counterexample {a} must be reported.
        let diag = report
            .diagnostics
            .iter()
            .find(|d| d.name == "one_sided_union_equality")
            .unwrap();
        assert!(diag.counterexamples.iter().any(|c| c.contains("open {a}")));
    }

    #[test]
    fn suite_passes_on_ml5() {
        let corpus = fixtures::ml5();
        let index = InvertedIndex::build(&corpus);
        let searcher = Searcher::new(&corpus, &index);
        let report = run_checks(&searcher, &CheckConfig::default()).unwrap();
        assert!(report.all_passed(), "failures: {:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn suite_passes_on_random_corpora() {
        for seed in 0..5 {
            let corpus = random_corpus(8, 30, seed);
            let index = InvertedIndex::build(&corpus);
            let searcher = Searcher::new(&corpus, &index);
            let cfg = CheckConfig {
                seed,
                ..CheckConfig::default()
            };
            let report = run_checks(&searcher, &cfg).unwrap();
            assert!(
                report.all_passed(),
                "seed {seed} failures: {:?}",
                report.failures().collect::<Vec<_>>()
            );
        }
    }
}
