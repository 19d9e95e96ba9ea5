//! Data directed graphs over keyword containments.
//!
//! Nodes are keywords; an edge (x, y) means S(y) ⊆ S(x). Every node carries
//! a self-loop by reflexivity, stored apart from the proper edges. An atom
//! is a node that reaches every other node while nothing but itself reaches
//! it.
//!
//! Distance is measured on the covering edges of the strict containment
//! order (proper containments with no strictly intermediate space among the
//! nodes): on the full edge set every transitive shortcut would collapse the
//! chain length to one, and reflexive padding would stretch it arbitrarily.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::relation::ContainmentRelation;
use crate::search::SearchSpace;

/// A containment digraph over a node subset of a relation's ground set.
#[derive(Debug, Clone)]
pub struct DataDirectedGraph {
    nodes: Vec<String>,
    spaces: Vec<SearchSpace>,
    /// Proper edges (x, y), x ≠ y, sorted.
    edges: Vec<(usize, usize)>,
    /// Nodes carrying (x, x); always all nodes for a built graph.
    self_loops: Vec<usize>,
}

/// Atoms plus how many nodes each node reaches.
#[derive(Debug, Clone)]
pub struct AtomReport {
    pub atoms: Vec<String>,
    pub reach_counts: Vec<(String, usize)>,
}

/// A shortest covering chain and its length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceWitness {
    pub length: usize,
    /// Full node path, endpoints included.
    pub chain: Vec<String>,
}

impl DataDirectedGraph {
    /// Restricts the relation to `nodes` and splits self-loops from proper
    /// edges. Nodes must belong to the relation's ground set.
    pub fn build<S: AsRef<str>>(
        rel: &ContainmentRelation,
        nodes: impl IntoIterator<Item = S>,
    ) -> Result<DataDirectedGraph> {
        let mut indices: Vec<usize> = nodes
            .into_iter()
            .map(|w| rel.index_of(w.as_ref()))
            .collect::<Result<_>>()?;
        indices.sort_unstable();
        indices.dedup();

        let nodes: Vec<String> = indices.iter().map(|&i| rel.word(i).to_string()).collect();
        let spaces: Vec<SearchSpace> = indices.iter().map(|&i| rel.space(i).clone()).collect();
        let n = nodes.len();
        let mut edges = Vec::new();
        let mut self_loops = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !spaces[y].is_subset(&spaces[x]) {
                    continue;
                }
                if x == y {
                    self_loops.push(x);
                } else {
                    edges.push((x, y));
                }
            }
        }
        Ok(DataDirectedGraph {
            nodes,
            spaces,
            edges,
            self_loops,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Proper edges as word pairs.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(|&(x, y)| (self.nodes[x].as_str(), self.nodes[y].as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn self_loops(&self) -> impl Iterator<Item = &str> {
        self.self_loops.iter().map(|&x| self.nodes[x].as_str())
    }

    /// Loops present on some node. By reflexivity this is true exactly when
    /// the graph is non-empty.
    pub fn is_loop_directed(&self) -> bool {
        !self.self_loops.is_empty()
    }

    fn node_index(&self, word: &str) -> Result<usize> {
        let key = crate::relation::normalize_keyword(word)?;
        self.nodes
            .iter()
            .position(|w| *w == key)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |&&(from, _)| from == x)
            .map(|&(_, to)| to)
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in self.successors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Atoms: nodes reaching every node, with no proper in-edge. The node's
    /// own loop does not count against it.
    pub fn find_atoms(&self) -> AtomReport {
        let n = self.nodes.len();
        let mut has_proper_in = vec![false; n];
        for &(_, y) in &self.edges {
            has_proper_in[y] = true;
        }
        let mut atoms = Vec::new();
        let mut reach_counts = Vec::with_capacity(n);
        for (x, node) in self.nodes.iter().enumerate() {
            let reached = self.reachable_from(x).iter().filter(|&&b| b).count();
            reach_counts.push((node.clone(), reached));
            if reached == n && !has_proper_in[x] {
                atoms.push(node.clone());
            }
        }
        AtomReport {
            atoms,
            reach_counts,
        }
    }

    /// Detects a directed cycle among the proper edges. Equal search spaces
    /// produce mutual edges, hence 2-cycles; self-loops are not counted.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        let n = self.nodes.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, self.successors(start).collect::<Vec<_>>(), 0usize)];
            state[start] = 1;
            while let Some((x, succs, next)) = stack.last_mut() {
                if *next >= succs.len() {
                    state[*x] = 2;
                    stack.pop();
                    continue;
                }
                let y = succs[*next];
                *next += 1;
                let x = *x;
                if state[y] == 1 {
                    // Walk parents back from x to y, then close the cycle.
                    let mut path = vec![x];
                    let mut cur = x;
                    while cur != y {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    path.push(y);
                    return Some(path.into_iter().map(|i| self.nodes[i].clone()).collect());
                }
                if state[y] == 0 {
                    state[y] = 1;
                    parent[y] = x;
                    stack.push((y, self.successors(y).collect(), 0));
                }
            }
        }
        None
    }

    pub fn has_cycle(&self) -> bool {
        self.find_cycle().is_some()
    }

    /// Covering edges of the strict containment order: (x, y) with
    /// S(y) ⊊ S(x) and no node w with S(y) ⊊ S(w) ⊊ S(x).
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        let strict = |x: usize, y: usize| self.spaces[y].is_proper_subset(&self.spaces[x]);
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !strict(x, y) {
                    continue;
                }
                let shortcut = (0..n).any(|w| strict(x, w) && strict(w, y));
                if !shortcut {
                    covers.push((x, y));
                }
            }
        }
        covers
    }

    /// Shortest covering chain from `z` to `y`; `None` when unreachable.
    pub fn distance(&self, z: &str, y: &str) -> Result<Option<DistanceWitness>> {
        let from = self.node_index(z)?;
        let to = self.node_index(y)?;
        if from == to {
            return Ok(Some(DistanceWitness {
                length: 0,
                chain: vec![self.nodes[from].clone()],
            }));
        }
        let covers = self.cover_edges();
        let n = self.nodes.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(a, b) in &covers {
                if a == x && !seen[b] {
                    seen[b] = true;
                    parent[b] = x;
                    queue.push_back(b);
                }
            }
        }
        if !seen[to] {
            return Ok(None);
        }
        let mut chain = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            chain.push(cur);
        }
        chain.reverse();
        Ok(Some(DistanceWitness {
            length: chain.len() - 1,
            chain: chain.into_iter().map(|i| self.nodes[i].clone()).collect(),
        }))
    }

    /// Node pairs with no edge in either direction, for the totality
    /// diagnostic.
    pub fn incomparable_pairs(&self) -> Vec<(String, String)> {
        let n = self.nodes.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let xy = self.spaces[y].is_subset(&self.spaces[x]);
                let yx = self.spaces[x].is_subset(&self.spaces[y]);
                if !xy && !yx {
                    out.push((self.nodes[x].clone(), self.nodes[y].clone()));
                }
            }
        }
        out
    }

    /// Deterministic DOT rendering. Atoms are double circles; self-loops are
    /// drawn on every node. With `reduce` only covering edges are drawn,
    /// which is the readable tree-like layout for nested keyword families.
    pub fn export_dot(&self, reduce: bool) -> String {
        let atoms = self.find_atoms().atoms;
        let mut out = String::from("digraph ddg {\n");
        for node in &self.nodes {
            if atoms.contains(node) {
                out.push_str(&format!("    \"{}\" [shape=doublecircle];\n", escape(node)));
            } else {
                out.push_str(&format!("    \"{}\";\n", escape(node)));
            }
        }
        for &x in &self.self_loops {
            let w = escape(&self.nodes[x]);
            out.push_str(&format!("    \"{w}\" -> \"{w}\";\n"));
        }
        let edges: Vec<(usize, usize)> = if reduce {
            self.cover_edges()
        } else {
            self.edges.clone()
        };
        for (x, y) in edges {
            out.push_str(&format!(
                "    \"{}\" -> \"{}\";\n",
                escape(&self.nodes[x]),
                escape(&self.nodes[y])
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Corpus, IngestRecord, InvertedIndex};
    use crate::fixtures;
    use crate::search::Searcher;

    fn c3_graph() -> (Corpus, InvertedIndex) {
        let corpus = fixtures::c3();
        let index = InvertedIndex::build(&corpus);
        (corpus, index)
    }

    fn build(corpus: &Corpus, index: &InvertedIndex, words: &[&str]) -> DataDirectedGraph {
        let searcher = Searcher::new(corpus, index);
        let rel = ContainmentRelation::build(&searcher, words).unwrap();
        DataDirectedGraph::build(&rel, words).unwrap()
    }

    #[test]
    fn c3_edges_and_loops() {
        let (corpus, index) = c3_graph();
        let g = build(&corpus, &index, &["a", "b", "c"]);
        let edges: Vec<(&str, &str)> = g.edges().collect();
        assert_eq!(edges, vec![("a", "b"), ("a", "c"), ("b", "c")]);
        assert_eq!(g.self_loops().collect::<Vec<_>>(), vec!["a", "b", "c"]);
        assert!(g.is_loop_directed());
    }

    #[test]
    fn single_node_graph() {
        let (corpus, index) = c3_graph();
        let g = build(&corpus, &index, &["a"]);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.self_loops().collect::<Vec<_>>(), vec!["a"]);
        assert!(g.is_loop_directed());
    }

    #[test]
    fn c3_atoms() {
        let (corpus, index) = c3_graph();
        let g = build(&corpus, &index, &["a", "b", "c"]);
        assert_eq!(g.find_atoms().atoms, vec!["a"]);
    }

    #[test]
    fn equal_spaces_defeat_atoms_and_make_cycles() {
        let corpus = Corpus::ingest(vec![
            IngestRecord::text("d1", "p q"),
            IngestRecord::text("d2", "p q"),
        ])
        .unwrap();
        let index = InvertedIndex::build(&corpus);
        let g = build(&corpus, &index, &["p", "q"]);
        assert!(g.find_atoms().atoms.is_empty());
        let cycle = g.find_cycle().unwrap();
        assert_eq!(cycle.first(), cycle.last());
        assert_eq!(cycle.len(), 3);
    }

    #[test]
    fn c3_chain_is_acyclic() {
        let (corpus, index) = c3_graph();
        let g = build(&corpus, &index, &["a", "b", "c"]);
        assert!(!g.has_cycle());
    }

    #[test]
    fn distance_on_c3() {
        let (corpus, index) = c3_graph();
        let g = build(&corpus, &index, &["a", "b", "c"]);
        let d = g.distance("a", "c").unwrap().unwrap();
        assert_eq!(d.length, 2);
        assert_eq!(d.chain, vec!["a", "b", "c"]);
        assert_eq!(g.distance("c", "a").unwrap(), None);
        let zero = g.distance("b", "b").unwrap().unwrap();
        assert_eq!(zero.length, 0);
        assert!(g.distance("a", "zzz").is_err());
    }

    #[test]
    fn big_tree_structure() {
        let corpus = fixtures::big_tree();
        let index = InvertedIndex::build(&corpus);
        let searcher = Searcher::new(&corpus, &index);
        let nodes = fixtures::big_tree_nodes();
        let rel = ContainmentRelation::build(&searcher, &nodes).unwrap();
        let g = DataDirectedGraph::build(&rel, &nodes).unwrap();

        assert_eq!(g.node_count(), 7);
        let edges: Vec<(String, String)> = g
            .edges()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        let expected = [
            ("big", "big data"),
            ("big", "big movie"),
            ("big", "big architecture"),
            ("big data", "big data analytics"),
            ("big movie", "big movie review"),
            ("big architecture", "big architecture project"),
        ];
        for (x, y) in expected {
            assert!(
                edges.contains(&(x.to_string(), y.to_string())),
                "missing edge ({x}, {y})"
            );
        }
        // Containment is transitive, so the root also points at the leaves.
        assert_eq!(g.edge_count(), 9);

        assert_eq!(g.find_atoms().atoms, vec!["big"]);
        assert!(!g.has_cycle());
        assert!(g.is_loop_directed());

        let d = g.distance("big", "big data analytics").unwrap().unwrap();
        assert_eq!(d.length, 2);
        assert_eq!(d.chain, vec!["big", "big data", "big data analytics"]);

        // The covering edges are exactly the six tree edges, and the reduced
        // DOT rendering draws just those plus the seven loops.
        assert_eq!(g.cover_edges().len(), 6);
        let reduced = g.export_dot(true);
        assert_eq!(reduced.matches("->").count(), 13);
    }

    #[test]
    fn dot_export_is_stable() {
        let (corpus, index) = c3_graph();
        let g = build(&corpus, &index, &["a", "b", "c"]);
        let dot = g.export_dot(false);
        assert_eq!(dot, g.export_dot(false));
        assert_eq!(dot.matches("->").count(), 6); // 3 loops + 3 proper edges
        assert!(dot.contains("\"a\" [shape=doublecircle];"));
        let reduced = g.export_dot(true);
        assert_eq!(reduced.matches("->").count(), 5); // 3 loops + 2 covers
    }

    #[test]
    fn empty_node_set() {
        let (corpus, index) = c3_graph();
        let searcher = Searcher::new(&corpus, &index);
        let rel = ContainmentRelation::build(&searcher, ["a", "b"]).unwrap();
        let g = DataDirectedGraph::build(&rel, Vec::<String>::new()).unwrap();
        assert!(!g.is_loop_directed());
        assert_eq!(g.export_dot(false), "digraph ddg {\n}\n");
    }

    #[test]
    fn unknown_node_rejected() {
        let (corpus, index) = c3_graph();
        let searcher = Searcher::new(&corpus, &index);
        let rel = ContainmentRelation::build(&searcher, ["a", "b"]).unwrap();
        assert!(matches!(
            DataDirectedGraph::build(&rel, ["a", "zzz"]),
            Err(Error::UnknownWord(_))
        ));
    }

    #[test]
    fn incomparable_pairs_listed() {
        let corpus = Corpus::ingest(vec![
            IngestRecord::text("d1", "p"),
            IngestRecord::text("d2", "q"),
        ])
        .unwrap();
        let index = InvertedIndex::build(&corpus);
        let g = build(&corpus, &index, &["p", "q"]);
        assert_eq!(
            g.incomparable_pairs(),
            vec![("p".to_string(), "q".to_string())]
        );
    }
}
