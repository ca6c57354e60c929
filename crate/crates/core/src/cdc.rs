//! Index-set families, feasibility, minimal infeasible sets and conflict graphs.
//!
//! A family `{S^1, ..., S^d}` of nonempty index sets describes the
//! combinatorial disjunctive constraint "λ lies on the simplex and its
//! support fits inside one of the sets". Everything in this crate is built on
//! top of [`IndexSetFamily`].

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A caller-supplied element index. Indices are reported back verbatim.
pub type Index = u32;

pub type IndexSet = BTreeSet<Index>;

/// Default cap on the number of candidate subsets examined by
/// [`IndexSetFamily::minimal_infeasible_sets`].
pub const DEFAULT_MAX_CANDIDATES: u128 = 1 << 24;

/// An ordered, duplicate-free collection of nonempty index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSetFamily {
    sets: Vec<IndexSet>,
    labels: BTreeMap<Index, String>,
}

/// JSON shape: `{"sets": [[1,2],[2,3]], "labels": {"1": "a"}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub sets: Vec<Vec<Index>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl IndexSetFamily {
    pub fn new<I, S>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Index>,
    {
        let sets: Vec<IndexSet> = sets
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        if sets.is_empty() {
            return Err(Error::InvalidFamily("family has no sets".into()));
        }
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidFamily(format!("set {} is empty", i + 1)));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, s) in sets.iter().enumerate() {
            if let Some(j) = seen.insert(s, i) {
                return Err(Error::InvalidFamily(format!(
                    "sets {} and {} are identical",
                    j + 1,
                    i + 1
                )));
            }
        }
        let family = Self {
            sets,
            labels: BTreeMap::new(),
        };
        if !family.is_irredundant() {
            log::warn!("family is redundant: some set is contained in another");
        }
        Ok(family)
    }

    pub fn with_labels(mut self, labels: BTreeMap<Index, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_str(s)?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            sets: self.sets.iter().map(|s| s.iter().copied().collect()).collect(),
            labels: self
                .labels
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    pub fn set(&self, ordinal: usize) -> &IndexSet {
        &self.sets[ordinal]
    }

    pub fn labels(&self) -> &BTreeMap<Index, String> {
        &self.labels
    }

    /// Number of sets `d`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn ground_set(&self) -> IndexSet {
        self.sets.iter().flatten().copied().collect()
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).sum()
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// No member set is a subset of a different member set.
    pub fn is_irredundant(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(b))
        })
    }

    /// `t` is contained in some member set. The empty set is feasible.
    pub fn is_feasible_set(&self, t: &IndexSet) -> Result<bool> {
        let ground = self.ground_set();
        if let Some(&bad) = t.iter().find(|v| !ground.contains(v)) {
            return Err(Error::IndexOutsideGround(bad));
        }
        Ok(self.contains_subset(t))
    }

    pub(crate) fn contains_subset(&self, t: &IndexSet) -> bool {
        self.sets.iter().any(|s| t.is_subset(s))
    }

    pub fn minimal_infeasible_sets(&self) -> Result<Vec<IndexSet>> {
        self.minimal_infeasible_sets_with_limit(DEFAULT_MAX_CANDIDATES)
    }

    /// All minimal infeasible sets, smallest first.
    ///
    /// Only cardinalities up to `max |S| + 1` can hold a minimal infeasible
    /// set. A candidate containing an already recorded infeasible set is
    /// skipped, so every infeasible candidate that survives is minimal.
    pub fn minimal_infeasible_sets_with_limit(&self, max_candidates: u128) -> Result<Vec<IndexSet>> {
        let ground: Vec<Index> = self.ground_set().into_iter().collect();
        let n = ground.len();
        let top = (self.max_set_size() + 1).min(n);
        let candidates: u128 = (1..=top).map(|c| binomial(n as u128, c as u128)).sum();
        if candidates > max_candidates {
            return Err(Error::size_guard("candidate subsets", candidates, max_candidates));
        }
        if n > 128 {
            return Err(Error::size_guard("ground set", n as u128, 128));
        }
        let pos: BTreeMap<Index, usize> = ground.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mask_of = |s: &IndexSet| s.iter().fold(0u128, |m, v| m | 1u128 << pos[v]);
        let set_masks: Vec<u128> = self.sets.iter().map(mask_of).collect();

        let mut found: Vec<u128> = Vec::new();
        for c in 1..=top {
            for combo in (0..n).combinations(c) {
                let t = combo.iter().fold(0u128, |m, &i| m | 1u128 << i);
                if found.iter().any(|&r| r & !t == 0) {
                    continue;
                }
                if !set_masks.iter().any(|&s| t & s == t) {
                    found.push(t);
                }
            }
        }
        Ok(found
            .into_iter()
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| ground[i]).collect())
            .collect())
    }

    pub fn is_pairwise_ib_representable(&self) -> Result<bool> {
        self.is_pairwise_ib_representable_with_limit(DEFAULT_MAX_CANDIDATES)
    }

    pub fn is_pairwise_ib_representable_with_limit(&self, max_candidates: u128) -> Result<bool> {
        Ok(self
            .minimal_infeasible_sets_with_limit(max_candidates)?
            .iter()
            .all(|t| t.len() <= 2))
    }

    pub fn conflict_graph(&self) -> ConflictGraph {
        let ground = self.ground_set();
        let order: Vec<Index> = ground.iter().copied().collect();
        let m = order.len();
        let mut together = vec![false; m * m];
        for s in &self.sets {
            let pos: Vec<usize> = s.iter().map(|v| order.binary_search(v).expect("in ground set")).collect();
            for (&i, &j) in pos.iter().tuple_combinations() {
                together[i * m + j] = true;
            }
        }
        let edges = (0..m)
            .tuple_combinations()
            .filter(|&(i, j)| !together[i * m + j])
            .map(|(i, j)| (order[i], order[j]))
            .collect();
        ConflictGraph {
            vertices: ground,
            edges,
        }
    }

    /// Stable content hash of the set list, hex encoded.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for s in &self.sets {
            for v in s {
                hasher.update(v.to_le_bytes());
            }
            hasher.update(b";");
        }
        hasher
            .finalize()
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl TryFrom<FamilyJson> for IndexSetFamily {
    type Error = Error;

    fn try_from(raw: FamilyJson) -> Result<Self> {
        let mut labels = BTreeMap::new();
        for (k, v) in raw.labels {
            let idx: Index = k
                .parse()
                .map_err(|_| Error::InvalidFamily(format!("label key {k:?} is not an index")))?;
            labels.insert(idx, v);
        }
        Ok(IndexSetFamily::new(raw.sets)?.with_labels(labels))
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Simple graph on the ground set whose edges are the infeasible pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConflictGraph {
    vertices: IndexSet,
    edges: BTreeSet<(Index, Index)>,
}

impl ConflictGraph {
    /// Builds a graph from explicit edges; endpoints are added as vertices.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = Index>,
        edges: impl IntoIterator<Item = (Index, Index)>,
    ) -> Result<Self> {
        let mut g = ConflictGraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        };
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameters(format!("self-loop at {u}")));
            }
            g.vertices.insert(u);
            g.vertices.insert(v);
            g.edges.insert((u.min(v), u.max(v)));
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &IndexSet {
        &self.vertices
    }

    /// Edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &BTreeSet<(Index, Index)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Index, v: Index) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &IndexSet) -> ConflictGraph {
        ConflictGraph {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(u, v)| keep.contains(u) && keep.contains(v))
                .copied()
                .collect(),
        }
    }
}
