//! Seeded random corpora for the property suites.
//!
//! Uniformly sampled postings almost never produce containments, which would
//! starve every theorem of non-trivial cases. Instead each word draws its
//! document frequency from a power-law and then, usually, takes a prefix of
//! one of two shared document orders: words on the same order are pairwise
//! comparable, words on different orders or with scattered postings are
//! usually not, and equal frequencies on one order give equal search spaces.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::corpus::{Corpus, IngestRecord};

/// Builds a deterministic random corpus with `words` words over `docs`
/// documents. The same arguments always produce the identical corpus.
pub fn random_corpus(words: usize, docs: usize, seed: u64) -> Corpus {
    assert!(words > 0 && docs > 0, "need at least one word and document");
    let mut rng = StdRng::seed_from_u64(seed);

    let mut chain_a: Vec<u32> = (0..docs as u32).collect();
    chain_a.shuffle(&mut rng);
    let mut chain_b: Vec<u32> = (0..docs as u32).collect();
    chain_b.shuffle(&mut rng);

    let mut doc_tokens: Vec<Vec<String>> = vec![Vec::new(); docs];
    for w in 0..words {
        let word = format!("w{w:02}");
        let u: f64 = rng.gen();
        let df = ((docs as f64) * u.powi(3)).round().max(1.0) as usize;
        let df = df.min(docs);
        let style: f64 = rng.gen();
        let posting: Vec<u32> = if style < 0.45 {
            chain_a[..df].to_vec()
        } else if style < 0.75 {
            chain_b[..df].to_vec()
        } else {
            let mut all: Vec<u32> = (0..docs as u32).collect();
            all.shuffle(&mut rng);
            all.truncate(df);
            all
        };
        for d in posting {
            doc_tokens[d as usize].push(word.clone());
        }
    }

    let width = docs.to_string().len();
    let records = doc_tokens
        .into_iter()
        .enumerate()
        .map(|(i, tokens)| IngestRecord::words(format!("d{i:0width$}"), tokens))
        .collect::<Vec<_>>();
    Corpus::ingest(records).expect("generated corpus is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::InvertedIndex;

    #[test]
    fn generation_is_deterministic() {
        let a = random_corpus(8, 40, 7);
        let b = random_corpus(8, 40, 7);
        assert_eq!(InvertedIndex::build(&a), InvertedIndex::build(&b));
        let c = random_corpus(8, 40, 8);
        assert_ne!(InvertedIndex::build(&a), InvertedIndex::build(&c));
    }

    #[test]
    fn produces_comparable_pairs() {
        // Across a handful of seeds there must be proper containments,
        // incomparable pairs, and ideally equal spaces.
        let mut proper = 0usize;
        let mut incomparable = 0usize;
        for seed in 0..10 {
            let corpus = random_corpus(10, 50, seed);
            let index = InvertedIndex::build(&corpus);
            let words: Vec<&String> = corpus.vocabulary().iter().collect();
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    let a = index.postings(words[i]).unwrap();
                    let b = index.postings(words[j]).unwrap();
                    match (a.is_subset(b), b.is_subset(a)) {
                        (false, false) => incomparable += 1,
                        (true, true) => {}
                        _ => proper += 1,
                    }
                }
            }
        }
        assert!(proper > 20, "expected containments, got {proper}");
        assert!(incomparable > 20, "expected incomparable pairs, got {incomparable}");
    }
}
