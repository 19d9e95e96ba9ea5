//! The search function and the set algebra of search spaces.
//!
//! A word's search space is its posting list; absent words get the empty
//! space so every downstream structure stays total. Composite queries follow
//! the semantic-union / semantic-intersection laws: `∨` composes keywords and
//! *intersects* result sets, `∧` *unions* them.
//!
//! The search space of a word set `A` is kept as the keyed family
//! `{(x, S(x)) | x ∈ A}` rather than the set of distinct values: two words
//! may share a space, and only the keyed view makes the union, intersection,
//! complement and monotonicity identities hold literally.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{tokenize, Corpus, InvertedIndex};
use crate::error::{Error, Result};
use crate::set::DocSet;

/// The documents returned for a query: a set of document indices.
pub type SearchSpace = DocSet;

/// Read-only handle over a corpus and its index.
#[derive(Clone, Copy)]
pub struct Searcher<'a> {
    pub corpus: &'a Corpus,
    pub index: &'a InvertedIndex,
}

impl<'a> Searcher<'a> {
    pub fn new(corpus: &'a Corpus, index: &'a InvertedIndex) -> Self {
        Searcher { corpus, index }
    }

    /// S(word): the posting list, or the empty space for absent words.
    pub fn search(&self, word: &str) -> SearchSpace {
        let word = word.to_lowercase();
        self.index.postings(&word).cloned().unwrap_or_default()
    }

    /// The space of a (possibly multi-token) keyword: its tokens composed
    /// with `∨`, hence the intersection of their posting lists.
    pub fn keyword_space(&self, keyword: &str) -> Result<SearchSpace> {
        let tokens = tokenize(keyword);
        let mut iter = tokens.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::EmptyKeyword(keyword.to_string()))?;
        let mut space = self.search(first);
        for token in iter {
            space = space.intersect(&self.search(token));
        }
        Ok(space)
    }

    pub fn eval(&self, query: &Query) -> SearchSpace {
        match query {
            Query::Leaf(word) => self.search(word),
            Query::Vee(children) => {
                let mut spaces = children.iter().map(|c| self.eval(c));
                let first = spaces.next().expect("vee node has children");
                spaces.fold(first, |acc, s| acc.intersect(&s))
            }
            Query::Wedge(children) => children
                .iter()
                .map(|c| self.eval(c))
                .fold(SearchSpace::empty(), |acc, s| acc.union(&s)),
        }
    }

    /// The keyed family `{(x, S(x)) | x ∈ words}`.
    pub fn family<S: AsRef<str>>(&self, words: impl IntoIterator<Item = S>) -> SearchFamily {
        let entries = words
            .into_iter()
            .map(|w| {
                let w = w.as_ref().to_lowercase();
                let space = self.search(&w);
                (w, space)
            })
            .collect();
        SearchFamily { entries }
    }
}

/// A query tree: leaves are words, internal nodes compose with `∨` or `∧`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Leaf(String),
    /// Semantic union: result sets are intersected.
    Vee(Vec<Query>),
    /// Semantic intersection: result sets are unioned.
    Wedge(Vec<Query>),
}

impl Query {
    pub fn leaf(word: impl Into<String>) -> Query {
        Query::Leaf(word.into())
    }

    pub fn vee(children: Vec<Query>) -> Query {
        debug_assert!(!children.is_empty());
        Query::Vee(children)
    }

    pub fn wedge(children: Vec<Query>) -> Query {
        debug_assert!(!children.is_empty());
        Query::Wedge(children)
    }

    /// Renders back to the CLI syntax, fully parenthesized.
    pub fn display(&self) -> String {
        match self {
            Query::Leaf(w) => w.clone(),
            Query::Vee(ch) => Self::join(ch, " | "),
            Query::Wedge(ch) => Self::join(ch, " & "),
        }
    }

    fn join(children: &[Query], sep: &str) -> String {
        let parts: Vec<String> = children
            .iter()
            .map(|c| match c {
                Query::Leaf(w) => w.clone(),
                _ => format!("({})", c.display()),
            })
            .collect();
        format!("({})", parts.join(sep))
    }
}

/// Parses the CLI query syntax: infix `|` for `∨`, `&` for `∧`, parentheses
/// allowed. Operators share one precedence level and associate left to
/// right. A bare run of words is the implicit `∨`-composition of its tokens.
pub fn parse_query(input: &str) -> Result<Query> {
    let tokens = lex(input)?;
    let mut pos = 0;
    let query = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::InvalidQuery(format!(
            "unexpected {:?}",
            tokens[pos]
        )));
    }
    Ok(query)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Or,
    And,
    Open,
    Close,
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, tokens: &mut Vec<Tok>| {
        if !word.is_empty() {
            for w in tokenize(word) {
                tokens.push(Tok::Word(w));
            }
            word.clear();
        }
    };
    for ch in input.chars() {
        match ch {
            '|' => {
                flush(&mut word, &mut tokens);
                tokens.push(Tok::Or);
            }
            '&' => {
                flush(&mut word, &mut tokens);
                tokens.push(Tok::And);
            }
            '(' => {
                flush(&mut word, &mut tokens);
                tokens.push(Tok::Open);
            }
            ')' => {
                flush(&mut word, &mut tokens);
                tokens.push(Tok::Close);
            }
            _ => word.push(ch),
        }
    }
    flush(&mut word, &mut tokens);
    if tokens.is_empty() {
        return Err(Error::InvalidQuery("query has no words".into()));
    }
    Ok(tokens)
}

fn parse_expr(tokens: &[Tok], pos: &mut usize) -> Result<Query> {
    let mut lhs = parse_atom(tokens, pos)?;
    while *pos < tokens.len() {
        match tokens[*pos] {
            Tok::Or => {
                *pos += 1;
                let rhs = parse_atom(tokens, pos)?;
                lhs = Query::Vee(vec![lhs, rhs]);
            }
            Tok::And => {
                *pos += 1;
                let rhs = parse_atom(tokens, pos)?;
                lhs = Query::Wedge(vec![lhs, rhs]);
            }
            Tok::Close => break,
            _ => return Err(Error::InvalidQuery("expected `|`, `&` or `)`".into())),
        }
    }
    Ok(lhs)
}

fn parse_atom(tokens: &[Tok], pos: &mut usize) -> Result<Query> {
    match tokens.get(*pos) {
        Some(Tok::Open) => {
            *pos += 1;
            let inner = parse_expr(tokens, pos)?;
            match tokens.get(*pos) {
                Some(Tok::Close) => {
                    *pos += 1;
                    Ok(inner)
                }
                _ => Err(Error::InvalidQuery("unbalanced parenthesis".into())),
            }
        }
        Some(Tok::Word(_)) => {
            let mut words = Vec::new();
            while let Some(Tok::Word(w)) = tokens.get(*pos) {
                words.push(Query::Leaf(w.clone()));
                *pos += 1;
            }
            if words.len() == 1 {
                Ok(words.pop().expect("one word"))
            } else {
                // Adjacent bare words: implicit ∨-composition.
                Ok(Query::Vee(words))
            }
        }
        other => Err(Error::InvalidQuery(format!("expected word, got {other:?}"))),
    }
}

/// The keyed family `word -> S(word)` over a finite word set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchFamily {
    entries: BTreeMap<String, SearchSpace>,
}

impl SearchFamily {
    pub fn entries(&self) -> &BTreeMap<String, SearchSpace> {
        &self.entries
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn get(&self, word: &str) -> Option<&SearchSpace> {
        self.entries.get(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keyed containment: every entry of `self` appears in `other` with the
    /// same space.
    pub fn is_subfamily_of(&self, other: &SearchFamily) -> bool {
        self.entries
            .iter()
            .all(|(w, s)| other.entries.get(w) == Some(s))
    }

    pub fn keyed_union(&self, other: &SearchFamily) -> SearchFamily {
        let mut entries = self.entries.clone();
        for (w, s) in &other.entries {
            entries.entry(w.clone()).or_insert_with(|| s.clone());
        }
        SearchFamily { entries }
    }

    pub fn keyed_intersection(&self, other: &SearchFamily) -> SearchFamily {
        let entries = self
            .entries
            .iter()
            .filter(|(w, _)| other.entries.contains_key(*w))
            .map(|(w, s)| (w.clone(), s.clone()))
            .collect();
        SearchFamily { entries }
    }

    /// Entries of `universe` whose key is absent from `self`.
    pub fn keyed_complement(&self, universe: &SearchFamily) -> SearchFamily {
        let entries = universe
            .entries
            .iter()
            .filter(|(w, _)| !self.entries.contains_key(*w))
            .map(|(w, s)| (w.clone(), s.clone()))
            .collect();
        SearchFamily { entries }
    }

    /// The read-only value-set view: distinct spaces, keys forgotten.
    pub fn value_set(&self) -> BTreeSet<&SearchSpace> {
        self.entries.values().collect()
    }
}

/// Outcome of a family operation: the computed family plus a flag attesting
/// that the corresponding set identity held when re-derived from scratch.
#[derive(Debug, Clone)]
pub struct FamilyOpResult {
    pub family: SearchFamily,
    pub identity_held: bool,
}

fn normalized_set<S: AsRef<str>>(words: impl IntoIterator<Item = S>) -> BTreeSet<String> {
    words
        .into_iter()
        .map(|w| w.as_ref().to_lowercase())
        .collect()
}

/// `S(A ∪ B) = S(A) ∪ S(B)` as keyed families.
pub fn family_union<S: AsRef<str>, T: AsRef<str>>(
    searcher: &Searcher,
    a: impl IntoIterator<Item = S>,
    b: impl IntoIterator<Item = T>,
) -> FamilyOpResult {
    let a = normalized_set(a);
    let b = normalized_set(b);
    let direct = searcher.family(a.union(&b));
    let composed = searcher.family(&a).keyed_union(&searcher.family(&b));
    FamilyOpResult {
        identity_held: composed == direct,
        family: direct,
    }
}

/// `S(A ∩ B) = S(A) ∩ S(B)` as keyed families.
pub fn family_intersection<S: AsRef<str>, T: AsRef<str>>(
    searcher: &Searcher,
    a: impl IntoIterator<Item = S>,
    b: impl IntoIterator<Item = T>,
) -> FamilyOpResult {
    let a = normalized_set(a);
    let b = normalized_set(b);
    let direct = searcher.family(a.intersection(&b));
    let composed = searcher
        .family(&a)
        .keyed_intersection(&searcher.family(&b));
    FamilyOpResult {
        identity_held: composed == direct,
        family: direct,
    }
}

/// `S(A^c) = S(A)^c`, complement taken relative to a declared working word
/// set. Rejects words outside the declared set.
pub fn family_complement<S: AsRef<str>>(
    searcher: &Searcher,
    a: impl IntoIterator<Item = S>,
    ground: Option<&BTreeSet<String>>,
) -> Result<FamilyOpResult> {
    let ground = ground.ok_or(Error::ComplementWithoutGround)?;
    let a = normalized_set(a);
    if let Some(outside) = a.iter().find(|w| !ground.contains(*w)) {
        return Err(Error::UnknownWord(outside.clone()));
    }
    let complement_words: BTreeSet<String> = ground.difference(&a).cloned().collect();
    let direct = searcher.family(&complement_words);
    let composed = searcher
        .family(&a)
        .keyed_complement(&searcher.family(ground));
    Ok(FamilyOpResult {
        identity_held: composed == direct,
        family: direct,
    })
}
