//! Sorted-vector document sets.
//!
//! Postings lists and search spaces are sets of document indices kept as
//! strictly increasing vectors, so set algebra runs as linear merges and
//! iteration order is deterministic everywhere.

/// Index of a document within its corpus.
pub type DocId = u32;

/// An immutable, sorted, duplicate-free set of document ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DocSet(Vec<DocId>);

impl DocSet {
    pub fn empty() -> Self {
        DocSet(Vec::new())
    }

    /// Builds from arbitrary input, sorting and deduplicating.
    pub fn from_unsorted(mut ids: Vec<DocId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        DocSet(ids)
    }

    /// Builds from input already known to be strictly increasing.
    pub fn from_sorted(ids: Vec<DocId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        DocSet(ids)
    }

    /// The full universe `{0, .., n-1}`.
    pub fn universe(n: u32) -> Self {
        DocSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: DocId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = DocId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[DocId] {
        &self.0
    }

    /// `self ⊆ other`, by a two-pointer sweep.
    pub fn is_subset(&self, other: &DocSet) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut j = 0;
        for &id in &self.0 {
            while j < other.0.len() && other.0[j] < id {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != id {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self ⊊ other`.
    pub fn is_proper_subset(&self, other: &DocSet) -> bool {
        self.0.len() < other.0.len() && self.is_subset(other)
    }

    pub fn intersect(&self, other: &DocSet) -> DocSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.0.len().min(other.0.len()));
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        DocSet(out)
    }

    pub fn union(&self, other: &DocSet) -> DocSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        DocSet(out)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &DocSet) -> DocSet {
        let mut j = 0;
        let mut out = Vec::new();
        for &id in &self.0 {
            while j < other.0.len() && other.0[j] < id {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != id {
                out.push(id);
            }
        }
        DocSet(out)
    }

    /// Complement within the universe `{0, .., n-1}`.
    pub fn complement(&self, n: u32) -> DocSet {
        DocSet::universe(n).difference(self)
    }
}

impl FromIterator<DocId> for DocSet {
    fn from_iter<T: IntoIterator<Item = DocId>>(iter: T) -> Self {
        DocSet::from_unsorted(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_ops() {
        let a = DocSet::from_unsorted(vec![3, 1, 2, 3]);
        let b = DocSet::from_sorted(vec![2, 3, 5]);
        assert_eq!(a.intersect(&b), DocSet::from_sorted(vec![2, 3]));
        assert_eq!(a.union(&b), DocSet::from_sorted(vec![1, 2, 3, 5]));
        assert_eq!(a.difference(&b), DocSet::from_sorted(vec![1]));
        assert_eq!(b.complement(6), DocSet::from_sorted(vec![0, 1, 4]));
    }

    #[test]
    fn subset_relations() {
        let small = DocSet::from_sorted(vec![2, 3]);
        let big = DocSet::from_sorted(vec![1, 2, 3]);
        assert!(small.is_subset(&big));
        assert!(small.is_proper_subset(&big));
        assert!(big.is_subset(&big));
        assert!(!big.is_proper_subset(&big));
        assert!(!big.is_subset(&small));
        assert!(DocSet::empty().is_subset(&small));
    }
}
