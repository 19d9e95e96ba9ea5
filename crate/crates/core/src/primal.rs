//! Primal families of search spaces over ∨-closed keyword sets.
//!
//! A composite keyword `x∨y` is canonicalized as its sorted token set, so
//! `∨` is idempotent, commutative and associative on keywords and the
//! closure of a seed is exactly the non-empty subsets of its token pool.
//! The family keyed over such a set pairs each keyword with its search
//! space; the axiom checker verifies, corpus-relatively, that the universe
//! is not attained, that `∨`-refinements stay inside the family, and that
//! intersection membership is prime.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::tokenize;
use crate::error::{Error, Result};
use crate::search::{SearchSpace, Searcher};

/// Canonical keyword: sorted unique tokens joined by single spaces.
fn canonical_keyword(tokens: &BTreeSet<String>) -> String {
    tokens.iter().cloned().collect::<Vec<_>>().join(" ")
}

fn keyword_tokens(keyword: &str) -> BTreeSet<String> {
    tokenize(keyword).into_iter().collect()
}

/// The ∨-composition of two keywords.
pub fn vee(a: &str, b: &str) -> String {
    let mut tokens = keyword_tokens(a);
    tokens.extend(keyword_tokens(b));
    canonical_keyword(&tokens)
}

/// A keyword set closed under pairwise ∨ in both directions: composites of
/// members are members, and every member decomposes inside the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeeClosedWordSet {
    keywords: Vec<String>,
    pool: Vec<String>,
}

impl VeeClosedWordSet {
    pub fn keywords(&self) -> &[String] {
        &self.keywords
    }

    /// The base tokens the closure is built from.
    pub fn pool(&self) -> &[String] {
        &self.pool
    }

    pub fn len(&self) -> usize {
        self.keywords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keywords.is_empty()
    }

    pub fn contains(&self, keyword: &str) -> bool {
        let key = canonical_keyword(&keyword_tokens(keyword));
        self.keywords.binary_search(&key).is_ok()
    }
}

/// Smallest superset of the seed closed under pairwise ∨ and decomposition:
/// all non-empty subsets of the seed's token pool, `2^n - 1` keywords.
pub fn vee_closure(seed: &[impl AsRef<str>], cap: u64) -> Result<VeeClosedWordSet> {
    let mut pool: BTreeSet<String> = BTreeSet::new();
    for keyword in seed {
        let tokens = keyword_tokens(keyword.as_ref());
        if tokens.is_empty() {
            return Err(Error::EmptyKeyword(keyword.as_ref().to_string()));
        }
        pool.extend(tokens);
    }
    if pool.is_empty() {
        return Err(Error::EmptyGround);
    }
    let n = pool.len();
    let would_be = if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    };
    if would_be > cap {
        return Err(Error::ClosureExceedsCap { would_be, cap });
    }
    let pool: Vec<String> = pool.into_iter().collect();
    let mut keywords = Vec::with_capacity(would_be as usize);
    for mask in 1u64..(1u64 << n) {
        let tokens: BTreeSet<String> = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, t)| t.clone())
            .collect();
        keywords.push(canonical_keyword(&tokens));
    }
    keywords.sort();
    Ok(VeeClosedWordSet { keywords, pool })
}

/// The keyed family `keyword -> S(keyword)` over a ∨-closed set, together
/// with the universe it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalFamily {
    members: BTreeMap<String, SearchSpace>,
    universe: SearchSpace,
    corpus_key: u64,
}

impl PrimalFamily {
    pub fn members(&self) -> &BTreeMap<String, SearchSpace> {
        &self.members
    }

    pub fn keywords(&self) -> impl Iterator<Item = &str> {
        self.members.keys().map(String::as_str)
    }

    pub fn get(&self, keyword: &str) -> Option<&SearchSpace> {
        self.members.get(keyword)
    }

    pub fn universe(&self) -> &SearchSpace {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Evaluates each keyword of `m` through the search function: composite
/// keywords intersect their tokens' postings.
pub fn primal_of(searcher: &Searcher, m: &VeeClosedWordSet) -> PrimalFamily {
    primal_over_keywords(searcher, m.keywords().iter().map(String::as_str))
}

fn primal_over_keywords<'a>(
    searcher: &Searcher,
    keywords: impl Iterator<Item = &'a str>,
) -> PrimalFamily {
    let members = keywords
        .map(|k| {
            let key = canonical_keyword(&keyword_tokens(k));
            let space = searcher
                .keyword_space(&key)
                .expect("canonical keyword is non-empty");
            (key, space)
        })
        .collect();
    PrimalFamily {
        members,
        universe: searcher.corpus.universe(),
        corpus_key: searcher.corpus.fingerprint(),
    }
}

/// One axiom's outcome: violations are results, not errors.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witnesses: Vec<String>,
}

impl AxiomCheck {
    fn from_witnesses(witnesses: Vec<String>) -> Self {
        AxiomCheck {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Status of the three primal axioms over one family.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AxiomReport {
    /// The universe is not a member value.
    pub universe_excluded: AxiomCheck,
    /// ∨-refinements of members shrink and stay in the family.
    pub refinement_closed: AxiomCheck,
    /// Intersection membership implies membership of a factor.
    pub intersection_prime: AxiomCheck,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.universe_excluded.holds
            && self.refinement_closed.holds
            && self.intersection_prime.holds
    }
}

/// Verifies the three axioms, quantifying over keyword pairs whose
/// composite is itself in the family.
pub fn check_axioms(family: &PrimalFamily) -> AxiomReport {
    let mut universe_witnesses = Vec::new();
    for (k, space) in &family.members {
        if *space == family.universe {
            universe_witnesses.push(k.clone());
        }
    }

    let keys: Vec<&String> = family.members.keys().collect();
    let mut refinement_witnesses = Vec::new();
    let mut prime_witnesses = Vec::new();
    for x in &keys {
        for y in &keys {
            let composite = vee(x, y);
            let Some(composite_space) = family.members.get(&composite) else {
                continue;
            };
            let sx = &family.members[*x];
            let sy = &family.members[*y];
            // Refinement: S(x∨y) ⊆ S(x), with S(x∨y) present.
            if !composite_space.is_subset(sx) {
                refinement_witnesses.push(format!("{x} ∨ {y}"));
            }
            // Primality: S(x)∩S(y) ∈ P must trace back to a factor; both
            // factors are keyed members, so the check reduces to the
            // composition law S(x∨y) = S(x) ∩ S(y).
            if *composite_space != sx.intersect(sy) {
                prime_witnesses.push(format!("{x} ∨ {y}"));
            }
        }
    }

    AxiomReport {
        universe_excluded: AxiomCheck::from_witnesses(universe_witnesses),
        refinement_closed: AxiomCheck::from_witnesses(refinement_witnesses),
        intersection_prime: AxiomCheck::from_witnesses(prime_witnesses),
    }
}

/// Outcome of a keyed family union.
#[derive(Debug, Clone)]
pub struct UnionPrimalReport {
    pub family: PrimalFamily,
    /// Whether the combined keyword set is itself ∨-closed.
    pub union_closed: bool,
    /// Keyed equality with the family over the ∨-closure of the union.
    pub closure_equality_holds: bool,
    /// Keywords of the closure missing from the plain union.
    pub missing_from_union: Vec<String>,
    pub axioms: AxiomReport,
}

/// Keyed union of two families over the same corpus, compared against the
/// family over the ∨-closure of the combined keywords. The comparison is a
/// recorded diagnostic: it fails exactly when the plain union is not itself
/// ∨-closed.
pub fn union_primal(
    searcher: &Searcher,
    a: &PrimalFamily,
    b: &PrimalFamily,
) -> Result<UnionPrimalReport> {
    if a.corpus_key != b.corpus_key {
        return Err(Error::CorpusMismatch);
    }
    let mut members = a.members.clone();
    for (k, s) in &b.members {
        members.entry(k.clone()).or_insert_with(|| s.clone());
    }
    let family = PrimalFamily {
        members,
        universe: a.universe.clone(),
        corpus_key: a.corpus_key,
    };

    let seed: Vec<&str> = family.members.keys().map(String::as_str).collect();
    let closure = vee_closure(&seed, u64::MAX)?;
    let closed_family = primal_of(searcher, &closure);
    let missing_from_union: Vec<String> = closed_family
        .members
        .keys()
        .filter(|k| !family.members.contains_key(*k))
        .cloned()
        .collect();
    let closure_equality_holds = closed_family.members == family.members;
    let axioms = check_axioms(&family);
    Ok(UnionPrimalReport {
        union_closed: missing_from_union.is_empty(),
        closure_equality_holds,
        missing_from_union,
        axioms,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Corpus, InvertedIndex};
    use crate::fixtures;

    fn c3() -> (Corpus, InvertedIndex) {
        let corpus = fixtures::c3();
        let index = InvertedIndex::build(&corpus);
        (corpus, index)
    }

    #[test]
    fn closure_of_two_tokens() {
        let m = vee_closure(&["big", "data"], 4096).unwrap();
        assert_eq!(m.keywords(), &["big", "big data", "data"]);
        assert!(m.contains("data big"));
        assert!(!m.contains("analytics"));
    }

    #[test]
    fn closure_of_three_tokens_has_seven() {
        let m = vee_closure(&["a", "b", "c"], 4096).unwrap();
        assert_eq!(m.len(), 7);
    }

    #[test]
    fn closure_cap_rejection() {
        let seed: Vec<String> = (0..25).map(|i| format!("t{i:02}")).collect();
        let err = vee_closure(&seed, 1_000_000).unwrap_err();
        assert!(matches!(
            err,
            Error::ClosureExceedsCap {
                would_be: 33_554_431,
                cap: 1_000_000
            }
        ));
    }

    #[test]
    fn composite_seed_pools_tokens() {
        let m = vee_closure(&["big data", "analytics"], 4096).unwrap();
        assert_eq!(m.pool(), &["analytics", "big", "data"]);
        assert_eq!(m.len(), 7);
        assert!(m.contains("big"));
    }

    #[test]
    fn primal_of_c3_pair() {
        let (corpus, index) = c3();
        let s = Searcher::new(&corpus, &index);
        let m = vee_closure(&["a", "b"], 4096).unwrap();
        let p = primal_of(&s, &m);
        assert_eq!(corpus.resolve(p.get("a").unwrap()), vec!["d1", "d2", "d3"]);
        assert_eq!(corpus.resolve(p.get("b").unwrap()), vec!["d2", "d3"]);
        assert_eq!(corpus.resolve(p.get("a b").unwrap()), vec!["d2", "d3"]);
    }

    #[test]
    fn singleton_family() {
        let (corpus, index) = c3();
        let s = Searcher::new(&corpus, &index);
        let m = vee_closure(&["c"], 4096).unwrap();
        let p = primal_of(&s, &m);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn ml5_machine_learning_family() {
        let corpus = fixtures::ml5();
        let index = InvertedIndex::build(&corpus);
        let s = Searcher::new(&corpus, &index);
        let m = vee_closure(&["machine", "learning"], 4096).unwrap();
        let p = primal_of(&s, &m);
        assert_eq!(p.len(), 3);
        assert_eq!(
            corpus.resolve(p.get("learning machine").unwrap()),
            vec!["0", "2"]
        );
    }

    #[test]
    fn axioms_pass_without_universal_word() {
        let (corpus, index) = c3();
        let s = Searcher::new(&corpus, &index);
        let m = vee_closure(&["b", "c"], 4096).unwrap();
        let report = check_axioms(&primal_of(&s, &m));
        assert!(report.all_hold());
    }

    #[test]
    fn universal_word_violates_first_axiom() {
        let (corpus, index) = c3();
        let s = Searcher::new(&corpus, &index);
        let m = vee_closure(&["a"], 4096).unwrap();
        let report = check_axioms(&primal_of(&s, &m));
        assert!(!report.universe_excluded.holds);
        assert_eq!(report.universe_excluded.witnesses, vec!["a"]);
        assert!(report.refinement_closed.holds);
        assert!(report.intersection_prime.holds);
    }

    #[test]
    fn disjoint_postings_give_empty_member() {
        let corpus = Corpus::ingest(vec![
            crate::corpus::IngestRecord::text("d1", "p"),
            crate::corpus::IngestRecord::text("d2", "q"),
        ])
        .unwrap();
        let index = InvertedIndex::build(&corpus);
        let s = Searcher::new(&corpus, &index);
        let m = vee_closure(&["p", "q"], 4096).unwrap();
        let p = primal_of(&s, &m);
        assert!(p.get("p q").unwrap().is_empty());
        let report = check_axioms(&p);
        assert!(report.refinement_closed.holds && report.intersection_prime.holds);
    }

    #[test]
    fn union_of_disjoint_closures() {
        let (corpus, index) = c3();
        let s = Searcher::new(&corpus, &index);
        let pb = primal_of(&s, &vee_closure(&["b"], 4096).unwrap());
        let pc = primal_of(&s, &vee_closure(&["c"], 4096).unwrap());
        let report = union_primal(&s, &pb, &pc).unwrap();
        assert_eq!(report.family.keywords().collect::<Vec<_>>(), vec!["b", "c"]);
        assert!(report.axioms.all_hold());
        // {b, c} is not ∨-closed: "b c" is missing.
        assert!(!report.union_closed);
        assert_eq!(report.missing_from_union, vec!["b c"]);
    }

    #[test]
    fn union_is_idempotent() {
        let (corpus, index) = c3();
        let s = Searcher::new(&corpus, &index);
        let p = primal_of(&s, &vee_closure(&["b", "c"], 4096).unwrap());
        let report = union_primal(&s, &p, &p).unwrap();
        assert_eq!(report.family, p);
        assert!(report.union_closed && report.closure_equality_holds);
    }

    #[test]
    fn closure_equality_fails_for_overlapping_seeds() {
        let (corpus, index) = c3();
        let s = Searcher::new(&corpus, &index);
        let pab = primal_of(&s, &vee_closure(&["a", "b"], 4096).unwrap());
        let pbc = primal_of(&s, &vee_closure(&["b", "c"], 4096).unwrap());
        let report = union_primal(&s, &pab, &pbc).unwrap();
        assert!(!report.closure_equality_holds);
        assert!(report.missing_from_union.contains(&"a c".to_string()));
    }

    #[test]
    fn mismatched_corpora_rejected() {
        let (c3_corpus, c3_index) = c3();
        let ml5_corpus = fixtures::ml5();
        let ml5_index = InvertedIndex::build(&ml5_corpus);
        let s3 = Searcher::new(&c3_corpus, &c3_index);
        let s5 = Searcher::new(&ml5_corpus, &ml5_index);
        let p3 = primal_of(&s3, &vee_closure(&["b"], 64).unwrap());
        let p5 = primal_of(&s5, &vee_closure(&["data"], 64).unwrap());
        assert!(matches!(
            union_primal(&s3, &p3, &p5),
            Err(Error::CorpusMismatch)
        ));
    }
}
