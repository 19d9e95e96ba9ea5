//! The containment preorder over a finite keyword set.
//!
//! For keywords `x, y` the relation holds iff `S(y) ⊆ S(x)`; it is reflexive
//! and transitive by construction. Each keyword may be a multi-token phrase,
//! whose space is the `∨`-composition of its tokens.
//!
//! Chains come in two modes. In the non-strict reading, repeated keywords pad
//! any chain, so the m-step relation coincides with the base relation for
//! every m; the strict reading demands proper containments with pairwise
//! distinct spaces, which is the only reading under which the m-step
//! neighborhoods vary with m. Both are exposed; non-strict is the default.

use std::collections::BTreeSet;

use crate::corpus::tokenize;
use crate::error::{Error, Result};
use crate::search::{SearchSpace, Searcher};

/// Which chain semantics an m-step query uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    /// Containments may repeat; the m-step relation equals the base relation.
    NonStrict,
    /// Proper containments only, all spaces along the chain distinct.
    Strict,
}

/// Intermediate keywords certifying an m-step link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub words: Vec<String>,
}

/// Canonical keyword form: normalized tokens joined by single spaces.
pub fn normalize_keyword(raw: &str) -> Result<String> {
    let tokens = tokenize(raw);
    if tokens.is_empty() {
        return Err(Error::EmptyKeyword(raw.to_string()));
    }
    Ok(tokens.join(" "))
}

/// The containment preorder over an ordered keyword set.
#[derive(Debug, Clone)]
pub struct ContainmentRelation {
    ground: Vec<String>,
    spaces: Vec<SearchSpace>,
    /// after[i] = indices j with S(j) ⊆ S(i), ascending.
    after: Vec<Vec<usize>>,
    /// fore[i] = indices j with S(i) ⊆ S(j), ascending.
    fore: Vec<Vec<usize>>,
}

impl ContainmentRelation {
    /// Computes the relation by pairwise posting containment. Keywords are
    /// normalized, sorted and deduplicated.
    pub fn build<S: AsRef<str>>(
        searcher: &Searcher,
        keywords: impl IntoIterator<Item = S>,
    ) -> Result<ContainmentRelation> {
        let mut ground: Vec<String> = keywords
            .into_iter()
            .map(|k| normalize_keyword(k.as_ref()))
            .collect::<Result<_>>()?;
        ground.sort();
        ground.dedup();
        if ground.is_empty() {
            return Err(Error::EmptyGround);
        }
        let spaces: Vec<SearchSpace> = ground
            .iter()
            .map(|k| searcher.keyword_space(k))
            .collect::<Result<_>>()?;
        let n = ground.len();
        let mut after = vec![Vec::new(); n];
        let mut fore = vec![Vec::new(); n];
        for x in 0..n {
            for y in 0..n {
                if spaces[y].is_subset(&spaces[x]) {
                    after[x].push(y);
                    fore[y].push(x);
                }
            }
        }
        Ok(ContainmentRelation {
            ground,
            spaces,
            after,
            fore,
        })
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn space(&self, index: usize) -> &SearchSpace {
        &self.spaces[index]
    }

    pub fn word(&self, index: usize) -> &str {
        &self.ground[index]
    }

    pub fn index_of(&self, word: &str) -> Result<usize> {
        let key = normalize_keyword(word)?;
        self.ground
            .binary_search(&key)
            .map_err(|_| Error::UnknownWord(word.to_string()))
    }

    /// All related pairs (x, y) with S(y) ⊆ S(x), as indices.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.after
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.spaces[y].is_subset(&self.spaces[x])
    }

    /// Afterneighborhood: indices whose space is contained in S(x).
    pub fn after(&self, x: usize) -> &[usize] {
        &self.after[x]
    }

    /// Forneighborhood: indices whose space contains S(x).
    pub fn fore(&self, x: usize) -> &[usize] {
        &self.fore[x]
    }

    pub fn after_words(&self, word: &str) -> Result<Vec<&str>> {
        let x = self.index_of(word)?;
        Ok(self.after[x].iter().map(|&i| self.word(i)).collect())
    }

    pub fn fore_words(&self, word: &str) -> Result<Vec<&str>> {
        let x = self.index_of(word)?;
        Ok(self.fore[x].iter().map(|&i| self.word(i)).collect())
    }

    /// Serial check: every keyword relates to something. Always true for a
    /// built relation (reflexivity); exists so the hypothesis of the m-step
    /// seriality statement is tested rather than assumed.
    pub fn is_serial(&self) -> bool {
        pairs_are_serial(self.len(), self.pairs())
    }

    /// Strict successors: indices with a properly smaller space.
    fn strict_after(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.after[x]
            .iter()
            .copied()
            .filter(move |&y| self.spaces[y].is_proper_subset(&self.spaces[x]))
    }

    /// Index sets reachable by exactly 1..=m strict steps from x.
    fn strict_layers(&self, x: usize, m: usize) -> Vec<BTreeSet<usize>> {
        let mut layers: Vec<BTreeSet<usize>> = Vec::with_capacity(m);
        let mut current: BTreeSet<usize> = self.strict_after(x).collect();
        layers.push(current.clone());
        for _ in 1..m {
            let next: BTreeSet<usize> = current
                .iter()
                .flat_map(|&z| self.strict_after(z))
                .collect();
            layers.push(next.clone());
            current = next;
        }
        layers
    }

    /// Whether y is reachable from x by a chain of exactly m containments,
    /// together with the intermediate keywords when it is.
    pub fn m_step(
        &self,
        x: usize,
        y: usize,
        m: usize,
        mode: ChainMode,
    ) -> Result<(bool, Option<ChainWitness>)> {
        if m < 1 {
            return Err(Error::InvalidStepCount(m));
        }
        match mode {
            ChainMode::NonStrict => {
                if self.related(x, y) {
                    // Repeating x pads the chain to any length.
                    let words = vec![self.ground[x].clone(); m - 1];
                    Ok((true, Some(ChainWitness { words })))
                } else {
                    Ok((false, None))
                }
            }
            ChainMode::Strict => {
                let layers = self.strict_layers(x, m);
                if !layers[m - 1].contains(&y) {
                    return Ok((false, None));
                }
                // Backtrack the intermediates y_{m-1}, .., y_1, smallest
                // index first at each layer.
                let mut words = Vec::with_capacity(m - 1);
                let mut target = y;
                for k in (0..m - 1).rev() {
                    let prev = layers[k]
                        .iter()
                        .copied()
                        .find(|&z| self.strict_after(z).any(|w| w == target))
                        .expect("layer membership implies a predecessor");
                    words.push(self.ground[prev].clone());
                    target = prev;
                }
                words.reverse();
                Ok((true, Some(ChainWitness { words })))
            }
        }
    }

    /// {y : x relates to y in m steps}.
    pub fn m_after(&self, x: usize, m: usize, mode: ChainMode) -> Result<Vec<usize>> {
        if m < 1 {
            return Err(Error::InvalidStepCount(m));
        }
        match mode {
            ChainMode::NonStrict => Ok(self.after[x].clone()),
            ChainMode::Strict => {
                let layers = self.strict_layers(x, m);
                Ok(layers[m - 1].iter().copied().collect())
            }
        }
    }

    /// {y : y relates to x in m steps}.
    pub fn m_fore(&self, x: usize, m: usize, mode: ChainMode) -> Result<Vec<usize>> {
        if m < 1 {
            return Err(Error::InvalidStepCount(m));
        }
        match mode {
            ChainMode::NonStrict => Ok(self.fore[x].clone()),
            ChainMode::Strict => {
                let mut out = Vec::new();
                for z in 0..self.len() {
                    let layers = self.strict_layers(z, m);
                    if layers[m - 1].contains(&x) {
                        out.push(z);
                    }
                }
                Ok(out)
            }
        }
    }

    /// E ⪯ F: every y ∈ F has some z ∈ E with S(y) ⊆ S(z). Vacuously true
    /// for empty F.
    pub fn preceq(&self, e: &[usize], f: &[usize]) -> bool {
        f.iter()
            .all(|&y| e.iter().any(|&z| self.spaces[y].is_subset(&self.spaces[z])))
    }

    /// E ⪰ F: every y ∈ F has some z ∈ E with S(z) ⊆ S(y).
    pub fn succeq(&self, e: &[usize], f: &[usize]) -> bool {
        f.iter()
            .all(|&y| e.iter().any(|&z| self.spaces[z].is_subset(&self.spaces[y])))
    }

    /// Groups keywords with identical search spaces, for reporting.
    pub fn equal_space_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; self.len()];
        for i in 0..self.len() {
            if assigned[i] {
                continue;
            }
            let mut class = vec![i];
            assigned[i] = true;
            for (j, space) in self.spaces.iter().enumerate().skip(i + 1) {
                if !assigned[j] && self.spaces[i] == *space {
                    class.push(j);
                    assigned[j] = true;
                }
            }
            classes.push(class);
        }
        classes
    }
}

/// Definition-level serial check over an explicit pair set, so hand-built
/// relations can be tested too.
pub fn pairs_are_serial(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut has_successor = vec![false; n];
    for (x, _) in pairs {
        has_successor[x] = true;
    }
    has_successor.into_iter().all(|b| b)
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

    fn c3_relation(corpus: &Corpus, index: &InvertedIndex) -> ContainmentRelation {
        let searcher = Searcher::new(corpus, index);
        ContainmentRelation::build(&searcher, ["a", "b", "c"]).unwrap()
    }

    #[test]
    fn c3_pairs() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        let pairs: Vec<(&str, &str)> = rel
            .pairs()
            .map(|(x, y)| (rel.word(x), rel.word(y)))
            .collect();
        let expected = [
            ("a", "a"),
            ("a", "b"),
            ("a", "c"),
            ("b", "b"),
            ("b", "c"),
            ("c", "c"),
        ];
        assert_eq!(pairs, expected);
    }

    #[test]
    fn singleton_is_reflexive() {
        let (corpus, index) = c3();
        let searcher = Searcher::new(&corpus, &index);
        let rel = ContainmentRelation::build(&searcher, ["a"]).unwrap();
        assert_eq!(rel.pairs().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn equal_spaces_are_mutually_related() {
        let corpus = Corpus::ingest(vec![
            crate::corpus::IngestRecord::text("d1", "p q"),
            crate::corpus::IngestRecord::text("d2", "p q r"),
        ])
        .unwrap();
        let index = InvertedIndex::build(&corpus);
        let searcher = Searcher::new(&corpus, &index);
        let rel = ContainmentRelation::build(&searcher, ["p", "q"]).unwrap();
        let (p, q) = (rel.index_of("p").unwrap(), rel.index_of("q").unwrap());
        assert!(rel.related(p, q) && rel.related(q, p));
        assert_eq!(rel.equal_space_classes(), vec![vec![0, 1]]);
    }

    #[test]
    fn neighborhoods() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        assert_eq!(rel.after_words("a").unwrap(), vec!["a", "b", "c"]);
        assert_eq!(rel.fore_words("c").unwrap(), vec!["a", "b", "c"]);
        assert_eq!(rel.after_words("c").unwrap(), vec!["c"]);
        for w in ["a", "b", "c"] {
            assert!(rel.after_words(w).unwrap().contains(&w));
            assert!(rel.fore_words(w).unwrap().contains(&w));
        }
        assert!(matches!(
            rel.after_words("zzz"),
            Err(Error::UnknownWord(_))
        ));
    }

    #[test]
    fn serial_checks() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        assert!(rel.is_serial());
        // Hand-constructed non-reflexive pair set with an isolated word.
        assert!(!pairs_are_serial(3, vec![(0, 1), (1, 2)]));
        assert!(pairs_are_serial(3, vec![(0, 1), (1, 2), (2, 0)]));
    }

    #[test]
    fn m_step_strict_chains() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        let (a, b, c) = (0, 1, 2);

        let (found, witness) = rel.m_step(a, c, 2, ChainMode::Strict).unwrap();
        assert!(found);
        assert_eq!(witness.unwrap().words, vec!["b"]);

        // A 3-step strict chain needs 4 distinct spaces; only 3 exist.
        let (found, witness) = rel.m_step(a, c, 3, ChainMode::Strict).unwrap();
        assert!(!found);
        assert!(witness.is_none());

        let (found, witness) = rel.m_step(a, b, 1, ChainMode::Strict).unwrap();
        assert!(found);
        assert!(witness.unwrap().words.is_empty());
    }

    #[test]
    fn m_step_non_strict_is_reflexive_padding() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        for x in 0..rel.len() {
            for m in 1..=5 {
                let (found, witness) = rel.m_step(x, x, m, ChainMode::NonStrict).unwrap();
                assert!(found);
                assert_eq!(witness.unwrap().words.len(), m - 1);
            }
        }
    }

    #[test]
    fn m_step_rejects_zero() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        assert!(matches!(
            rel.m_step(0, 0, 0, ChainMode::NonStrict),
            Err(Error::InvalidStepCount(0))
        ));
    }

    #[test]
    fn m_after_examples() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        let a = 0;
        assert_eq!(rel.m_after(a, 2, ChainMode::Strict).unwrap(), vec![2]);
        assert_eq!(rel.m_after(a, 1, ChainMode::Strict).unwrap(), vec![1, 2]);
        for x in 0..rel.len() {
            for m in 1..=4 {
                assert_eq!(
                    rel.m_after(x, m, ChainMode::NonStrict).unwrap(),
                    rel.after(x)
                );
            }
        }
    }

    #[test]
    fn preceq_succeq() {
        let (corpus, index) = c3();
        let rel = c3_relation(&corpus, &index);
        let (a, b, c) = (0, 1, 2);
        assert!(rel.preceq(&[a], &[b, c]));
        assert!(!rel.preceq(&[c], &[a]));
        assert!(rel.preceq(&[c], &[]));
        assert!(rel.succeq(&[c], &[a, b]));
        assert!(!rel.succeq(&[a], &[c]));
    }

    #[test]
    fn phrase_keywords_normalize() {
        let corpus = fixtures::big_tree();
        let index = InvertedIndex::build(&corpus);
        let searcher = Searcher::new(&corpus, &index);
        let rel = ContainmentRelation::build(&searcher, ["Big", "Big  Data!"]).unwrap();
        assert_eq!(rel.ground(), &["big".to_string(), "big data".to_string()]);
        let (big, bd) = (0, 1);
        assert!(rel.related(big, bd));
        assert!(!rel.related(bd, big));
    }
}
