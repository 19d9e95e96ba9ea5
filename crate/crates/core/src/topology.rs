//! Finite topologies generated from subbases.
//!
//! Ground sets are small word sets; opens are bitmasks over the sorted
//! ground. A generated family is all unions of finite intersections of
//! subbase members plus the empty set and the ground, kept in a canonical
//! sorted form so family equality is bit-exact.
//!
//! The after-set and fore-set subbases of a containment relation yield the
//! dual topologies whose opens are exactly the down-sets and up-sets of the
//! preorder; the structural checks below re-derive that instead of assuming
//! it.

use crate::error::{Error, Result};
use crate::relation::{ChainMode, ContainmentRelation};

/// Default bound on the ground-set size. Topologies are exponential objects;
/// this keeps the open family at or below 65,536 subsets.
pub const DEFAULT_GROUND_CAP: usize = 16;

/// Absolute bound: masks are u32 and the membership table is `1 << n`.
const HARD_GROUND_CAP: usize = 26;

type Mask = u32;

/// An explicit finite topology over an ordered word set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    ground: Vec<String>,
    /// Canonical order: by the sorted word-index lists, lexicographically.
    opens: Vec<Mask>,
}

impl FiniteTopology {
    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn contains(&self, open: Mask) -> bool {
        self.opens.binary_search_by(|probe| cmp_masks(*probe, open)).is_ok()
    }

    fn full(&self) -> Mask {
        full_mask(self.ground.len())
    }

    /// Renders a mask as its sorted word list.
    pub fn words_of(&self, mask: Mask) -> Vec<&str> {
        self.ground
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| w.as_str())
            .collect()
    }

    /// All opens as sorted word lists, in canonical order.
    pub fn opens_as_words(&self) -> Vec<Vec<&str>> {
        self.opens.iter().map(|&m| self.words_of(m)).collect()
    }

    /// ∅ and ground present; closed under pairwise union and intersection.
    /// Finite families closed pairwise are closed under arbitrary unions and
    /// intersections, so this is also the Alexandrov check.
    pub fn satisfies_axioms(&self) -> bool {
        if !self.contains(0) || !self.contains(self.full()) {
            return false;
        }
        for &a in &self.opens {
            for &b in &self.opens {
                if !self.contains(a | b) || !self.contains(a & b) {
                    return false;
                }
            }
        }
        true
    }

    /// Intersection of all opens containing `word`: the minimal open
    /// neighborhood.
    pub fn minimal_open(&self, word: &str) -> Result<Vec<&str>> {
        let i = self
            .ground
            .iter()
            .position(|w| w == word)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))?;
        Ok(self.words_of(self.minimal_open_mask(1 << i)))
    }

    fn minimal_open_mask(&self, point: Mask) -> Mask {
        self.opens
            .iter()
            .filter(|&&o| o & point == point)
            .fold(self.full(), |acc, &o| acc & o)
    }

    /// The dual family {complement of D : D open}.
    pub fn complements(&self) -> Vec<Mask> {
        let full = self.full();
        let mut masks: Vec<Mask> = self.opens.iter().map(|&o| full & !o).collect();
        sort_canonical(&mut masks);
        masks
    }
}

fn full_mask(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        (u64::MAX >> (64 - n as u64)) as Mask
    }
}

/// Lexicographic order on the ascending index lists of two masks. With a
/// sorted ground this is the sorted-word-list order.
fn cmp_masks(a: Mask, b: Mask) -> std::cmp::Ordering {
    let mut x = a;
    let mut y = b;
    loop {
        match (x == 0, y == 0) {
            (true, true) => return std::cmp::Ordering::Equal,
            (true, false) => return std::cmp::Ordering::Less,
            (false, true) => return std::cmp::Ordering::Greater,
            (false, false) => {}
        }
        let i = x.trailing_zeros();
        let j = y.trailing_zeros();
        if i != j {
            return i.cmp(&j);
        }
        x &= x - 1;
        y &= y - 1;
    }
}

fn sort_canonical(masks: &mut Vec<Mask>) {
    masks.sort_by(|a, b| cmp_masks(*a, *b));
    masks.dedup();
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_GROUND_CAP);
    if n > cap {
        return Err(Error::GroundExceedsCap { size: n, cap });
    }
    Ok(())
}

/// Closure of the subbase masks: all unions of finite intersections, plus
/// the empty set and the full ground.
fn generate_masks(n: usize, subbase: &[Mask]) -> Vec<Mask> {
    let full = full_mask(n);
    let table_len = 1usize << n;
    let mut seen = vec![false; table_len];

    // Intersection closure via pairwise AND fixpoint.
    let mut base: Vec<Mask> = Vec::new();
    let mut queue: Vec<Mask> = Vec::new();
    for &s in subbase {
        if !seen[s as usize] {
            seen[s as usize] = true;
            base.push(s);
            queue.push(s);
        }
    }
    while let Some(m) = queue.pop() {
        for i in 0..base.len() {
            let meet = m & base[i];
            if !seen[meet as usize] {
                seen[meet as usize] = true;
                base.push(meet);
                queue.push(meet);
            }
        }
    }

    // Union closure via OR fixpoint over the base, seeded with ∅ and ground.
    let mut seen_open = vec![false; table_len];
    let mut opens: Vec<Mask> = Vec::new();
    let mut queue: Vec<Mask> = vec![0, full];
    for &b in &base {
        queue.push(b);
    }
    while let Some(m) = queue.pop() {
        if seen_open[m as usize] {
            continue;
        }
        seen_open[m as usize] = true;
        opens.push(m);
        for &b in &base {
            let join = m | b;
            if !seen_open[join as usize] {
                queue.push(join);
            }
        }
    }
    sort_canonical(&mut opens);
    opens
}

/// Generates the topology whose subbase is the given family of word subsets.
pub fn generate_from_subbase<S: AsRef<str>>(
    ground: &[String],
    subbase: &[Vec<S>],
    cap: usize,
) -> Result<FiniteTopology> {
    let mut ground: Vec<String> = ground.to_vec();
    ground.sort();
    ground.dedup();
    check_cap(ground.len(), cap)?;
    let mut masks = Vec::with_capacity(subbase.len());
    for member in subbase {
        let mut mask: Mask = 0;
        for word in member {
            let i = ground
                .iter()
                .position(|w| w == word.as_ref())
                .ok_or_else(|| Error::UnknownWord(word.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        masks.push(mask);
    }
    let opens = generate_masks(ground.len(), &masks);
    Ok(FiniteTopology { ground, opens })
}

fn indices_to_mask(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |acc, &i| acc | (1 << i))
}

fn neighborhood_masks(
    rel: &ContainmentRelation,
    side: impl Fn(usize) -> Vec<usize>,
) -> Vec<Mask> {
    (0..rel.len())
        .map(|x| indices_to_mask(&side(x)))
        .collect()
}

/// Topology generated by the after-sets as a subbase.
pub fn tau_b(rel: &ContainmentRelation, cap: usize) -> Result<FiniteTopology> {
    check_cap(rel.len(), cap)?;
    let subbase = neighborhood_masks(rel, |x| rel.after(x).to_vec());
    Ok(FiniteTopology {
        ground: rel.ground().to_vec(),
        opens: generate_masks(rel.len(), &subbase),
    })
}

/// Topology generated by the fore-sets as a subbase.
pub fn tau_f(rel: &ContainmentRelation, cap: usize) -> Result<FiniteTopology> {
    check_cap(rel.len(), cap)?;
    let subbase = neighborhood_masks(rel, |x| rel.fore(x).to_vec());
    Ok(FiniteTopology {
        ground: rel.ground().to_vec(),
        opens: generate_masks(rel.len(), &subbase),
    })
}

/// One violating open set, as words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSetViolation {
    pub open: Vec<String>,
    pub computed: Vec<String>,
}

/// Result of the open-set union identity check: every open of the after-set
/// topology equals the union of the after-sets of its members, and dually.
#[derive(Debug, Clone)]
pub struct UnionIdentityReport {
    pub after_side: Vec<OpenSetViolation>,
    pub fore_side: Vec<OpenSetViolation>,
}

impl UnionIdentityReport {
    pub fn holds(&self) -> bool {
        self.after_side.is_empty() && self.fore_side.is_empty()
    }
}

fn union_identity_violations(
    top: &FiniteTopology,
    neighborhood: &[Mask],
) -> Vec<OpenSetViolation> {
    let mut out = Vec::new();
    for &open in top.opens() {
        let mut union: Mask = 0;
        for (i, &mask) in neighborhood.iter().enumerate() {
            if open & (1 << i) != 0 {
                union |= mask;
            }
        }
        if union != open {
            out.push(OpenSetViolation {
                open: top.words_of(open).iter().map(|s| s.to_string()).collect(),
                computed: top.words_of(union).iter().map(|s| s.to_string()).collect(),
            });
        }
    }
    out
}

/// Checks `D = ∪_{x∈D} after(x)` for every open of `tb`, and the fore-set
/// mirror over `tf`.
pub fn check_union_identity(
    tb: &FiniteTopology,
    tf: &FiniteTopology,
    rel: &ContainmentRelation,
) -> UnionIdentityReport {
    let after = neighborhood_masks(rel, |x| rel.after(x).to_vec());
    let fore = neighborhood_masks(rel, |x| rel.fore(x).to_vec());
    UnionIdentityReport {
        after_side: union_identity_violations(tb, &after),
        fore_side: union_identity_violations(tf, &fore),
    }
}

/// Result of the duality check between the two generated topologies.
#[derive(Debug, Clone)]
pub struct DualityReport {
    /// Complements of fore-side opens reproduce the after-side family.
    pub fore_complements_match: bool,
    /// Complements of after-side opens reproduce the fore-side family.
    pub after_complements_match: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.fore_complements_match && self.after_complements_match
    }
}

pub fn check_duality(tb: &FiniteTopology, tf: &FiniteTopology) -> DualityReport {
    DualityReport {
        fore_complements_match: tf.complements() == tb.opens(),
        after_complements_match: tb.complements() == tf.opens(),
    }
}

/// Outcome of the two-sided open-set structure checks.
///
/// For opens in both topologies, the pairwise-intersection cover and the
/// neighborhood-union equality are asserted facts. For opens of exactly one
/// topology the equality frequently fails; those are recorded as diagnostic
/// counterexamples, never as failures.
#[derive(Debug, Clone)]
pub struct CoverReport {
    /// Opens of both families violating `A ⊆ ∪_{x,z∈A} (after(x) ∩ fore(z))`.
    pub cover_violations: Vec<OpenSetViolation>,
    /// Opens of both families violating `A = ∪_{x∈A} (after(x) ∪ fore(x))`.
    pub union_equality_violations: Vec<OpenSetViolation>,
    /// Opens of exactly one family where that same equality fails.
    pub one_sided_counterexamples: Vec<OpenSetViolation>,
}

impl CoverReport {
    pub fn asserted_hold(&self) -> bool {
        self.cover_violations.is_empty() && self.union_equality_violations.is_empty()
    }
}

pub fn check_cover(
    tb: &FiniteTopology,
    tf: &FiniteTopology,
    rel: &ContainmentRelation,
) -> CoverReport {
    let after = neighborhood_masks(rel, |x| rel.after(x).to_vec());
    let fore = neighborhood_masks(rel, |x| rel.fore(x).to_vec());
    let n = rel.len();
    let to_words = |top: &FiniteTopology, m: Mask| -> Vec<String> {
        top.words_of(m).iter().map(|s| s.to_string()).collect()
    };

    let mut report = CoverReport {
        cover_violations: Vec::new(),
        union_equality_violations: Vec::new(),
        one_sided_counterexamples: Vec::new(),
    };

    let both: Vec<Mask> = tb.opens().iter().copied().filter(|&m| tf.contains(m)).collect();
    for &a in &both {
        let mut pair_cover: Mask = 0;
        for (x, &after_x) in after.iter().enumerate() {
            if a & (1 << x) == 0 {
                continue;
            }
            for (z, &fore_z) in fore.iter().enumerate() {
                if a & (1 << z) == 0 {
                    continue;
                }
                pair_cover |= after_x & fore_z;
            }
        }
        if a & !pair_cover != 0 {
            report.cover_violations.push(OpenSetViolation {
                open: to_words(tb, a),
                computed: to_words(tb, pair_cover),
            });
        }
        let union = union_of_neighborhoods(a, &after, &fore, n);
        if union != a {
            report.union_equality_violations.push(OpenSetViolation {
                open: to_words(tb, a),
                computed: to_words(tb, union),
            });
        }
    }

    // Symmetric difference: evaluate the union equality, record only.
    let mut one_sided: Vec<Mask> = tb
        .opens()
        .iter()
        .copied()
        .filter(|&m| !tf.contains(m))
        .chain(tf.opens().iter().copied().filter(|&m| !tb.contains(m)))
        .collect();
    sort_canonical(&mut one_sided);
    for a in one_sided {
        let union = union_of_neighborhoods(a, &after, &fore, n);
        if union != a {
            report.one_sided_counterexamples.push(OpenSetViolation {
                open: to_words(tb, a),
                computed: to_words(tb, union),
            });
        }
    }
    report
}

fn union_of_neighborhoods(a: Mask, after: &[Mask], fore: &[Mask], n: usize) -> Mask {
    let mut union: Mask = 0;
    for x in 0..n {
        if a & (1 << x) != 0 {
            union |= after[x] | fore[x];
        }
    }
    union
}

/// The m-step neighborhood topologies and their union-identity outcome.
#[derive(Debug, Clone)]
pub struct StepTopologies {
    pub fore_side: FiniteTopology,
    pub after_side: FiniteTopology,
    /// Violations of `D = ∪_{x∈D} m_fore(x)` over fore-side opens.
    pub fore_violations: Vec<OpenSetViolation>,
    /// Violations of `E = ∪_{x∈E} m_after(x)` over after-side opens.
    pub after_violations: Vec<OpenSetViolation>,
}

/// Generates the topologies from the m-step neighborhoods as subbases and
/// evaluates the union identity on every open. In non-strict mode the
/// identity is a theorem; in strict mode failures are expected and the
/// caller records them as diagnostics.
pub fn step_topologies(
    rel: &ContainmentRelation,
    m: usize,
    mode: ChainMode,
    cap: usize,
) -> Result<StepTopologies> {
    check_cap(rel.len(), cap)?;
    let n = rel.len();
    let mut fore_masks = Vec::with_capacity(n);
    let mut after_masks = Vec::with_capacity(n);
    for x in 0..n {
        fore_masks.push(indices_to_mask(&rel.m_fore(x, m, mode)?));
        after_masks.push(indices_to_mask(&rel.m_after(x, m, mode)?));
    }
    let fore_side = FiniteTopology {
        ground: rel.ground().to_vec(),
        opens: generate_masks(n, &fore_masks),
    };
    let after_side = FiniteTopology {
        ground: rel.ground().to_vec(),
        opens: generate_masks(n, &after_masks),
    };
    let fore_violations = union_identity_violations(&fore_side, &fore_masks);
    let after_violations = union_identity_violations(&after_side, &after_masks);
    Ok(StepTopologies {
        fore_side,
        after_side,
        fore_violations,
        after_violations,
    })
}
