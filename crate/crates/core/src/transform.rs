//! Rewriting an arbitrary family as an equivalent one that admits a junction
//! tree, or whose sets are pairwise disjoint, together with the projection
//! map from new indices back to the original ones.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cdc::{FamilyJson, Index, IndexSet, IndexSetFamily};
use crate::jtree::{intersection_graph, CandidateTree, TreeJson};
use crate::rational::{self, Rational};

/// `α`: new index ↦ original index.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IndexMapping {
    pub forward: BTreeMap<Index, Index>,
}

impl IndexMapping {
    pub fn apply(&self, u: Index) -> Option<Index> {
        self.forward.get(&u).copied()
    }

    /// `α(T)`, or `None` if some element is outside the domain.
    pub fn image(&self, t: &IndexSet) -> Option<IndexSet> {
        t.iter().map(|u| self.apply(*u)).collect()
    }

    pub fn is_injective_on(&self, t: &IndexSet) -> bool {
        self.image(t).is_some_and(|img| img.len() == t.len())
    }

    /// All new indices mapping to `v`.
    pub fn fiber(&self, v: Index) -> impl Iterator<Item = Index> + '_ {
        self.forward.iter().filter(move |(_, &o)| o == v).map(|(&u, _)| u)
    }
}

#[derive(Debug, Clone)]
pub struct TransformResult {
    pub family_prime: IndexSetFamily,
    pub mapping: IndexMapping,
    pub tree: CandidateTree,
    pub extra_continuous: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformJson {
    pub family: FamilyJson,
    /// New index (as a string key) to original index.
    pub alpha: BTreeMap<String, Index>,
    pub tree: TreeJson,
    pub extra_continuous: usize,
}

impl TransformResult {
    pub fn to_json(&self) -> TransformJson {
        TransformJson {
            family: self.family_prime.to_json(),
            alpha: self
                .mapping
                .forward
                .iter()
                .map(|(u, v)| (u.to_string(), *v))
                .collect(),
            tree: self.tree.to_json(),
            extra_continuous: self.extra_continuous,
        }
    }
}

/// Gives every set private copies of its elements, then (unless `disjoint`)
/// re-identifies copies along a maximum spanning tree.
pub fn build_equivalent_family(family: &IndexSetFamily, disjoint: bool) -> TransformResult {
    let mut next: Index = 0;
    let mut alpha = BTreeMap::new();
    let mut sets: Vec<IndexSet> = family
        .sets()
        .iter()
        .map(|s| {
            s.iter()
                .map(|&v| {
                    next += 1;
                    alpha.insert(next, v);
                    next
                })
                .collect()
        })
        .collect();

    let d = family.len();
    let pairs: Vec<(usize, usize)> = if disjoint {
        (1..d).map(|i| (i - 1, i)).collect()
    } else {
        let mst = intersection_graph(family).maximum_spanning_tree();
        let adj = mst.neighbors();
        let mut seen = vec![false; d];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if seen[j] {
                    continue;
                }
                seen[j] = true;
                queue.push_back(j);
                let parent = sets[i].clone();
                for x in parent {
                    let y = sets[j].iter().copied().find(|y| alpha[y] == alpha[&x]);
                    if let Some(y) = y {
                        sets[j].remove(&y);
                        sets[j].insert(x);
                    }
                }
            }
        }
        mst.edges().iter().map(|e| (e.a, e.b)).collect()
    };

    let used: IndexSet = sets.iter().flatten().copied().collect();
    alpha.retain(|u, _| used.contains(u));
    let family_prime = IndexSetFamily::new(sets).expect("copies of distinct nonempty sets stay distinct");
    let tree = CandidateTree::from_pairs(&family_prime, &pairs).expect("pairs form a spanning tree");
    let extra_continuous = used.len() - family.ground_set().len();
    TransformResult {
        family_prime,
        mapping: IndexMapping { forward: alpha },
        tree,
        extra_continuous,
    }
}

/// `λ_v = Σ_{α(u) = v} λ'_u`.
pub fn project(lambda_prime: &BTreeMap<Index, Rational>, mapping: &IndexMapping) -> BTreeMap<Index, Rational> {
    let mut out: BTreeMap<Index, Rational> = BTreeMap::new();
    for (u, val) in lambda_prime {
        if let Some(v) = mapping.apply(*u) {
            *out.entry(v).or_insert_with(|| rational::int(0)) += val;
        }
    }
    out
}

pub const MAX_EQUIVALENCE_GROUND: usize = 16;

/// Exhaustive check that `result` represents `family` by projection:
/// every feasible `T` of the new family maps injectively onto a feasible set
/// of the original, and every feasible `U` of the original is the bijective
/// image of some feasible `T`.
pub fn projection_equivalent(family: &IndexSetFamily, result: &TransformResult) -> crate::Result<bool> {
    let new_ground: Vec<Index> = result.family_prime.ground_set().into_iter().collect();
    let old_ground: Vec<Index> = family.ground_set().into_iter().collect();
    let largest = new_ground.len().max(old_ground.len());
    if largest > MAX_EQUIVALENCE_GROUND {
        return Err(crate::Error::size_guard(
            "ground set",
            largest as u128,
            MAX_EQUIVALENCE_GROUND as u128,
        ));
    }
    let subsets = |ground: &[Index]| -> Vec<IndexSet> {
        (1u32..1 << ground.len())
            .map(|m| {
                ground
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect()
    };
    for t in subsets(&new_ground) {
        if result.family_prime.is_feasible_set(&t)? {
            let Some(img) = result.mapping.image(&t) else {
                return Ok(false);
            };
            if img.len() != t.len() || !family.is_feasible_set(&img)? {
                return Ok(false);
            }
        }
    }
    for u in subsets(&old_ground) {
        if !family.is_feasible_set(&u)? {
            continue;
        }
        let lifted = result.family_prime.sets().iter().any(|s| {
            let t: IndexSet = s.iter().copied().filter(|x| u.contains(&result.mapping.forward[x])).collect();
            t.len() == u.len() && result.mapping.image(&t).as_ref() == Some(&u)
        });
        if !lifted {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VariableAccounting {
    pub extended_jtree_cont: usize,
    pub extended_disjoint_cont: usize,
    pub jtree_binaries_ub: usize,
    pub disjoint_binaries: usize,
}

pub fn variable_accounting(family: &IndexSetFamily) -> VariableAccounting {
    let w = intersection_graph(family).maximum_spanning_tree().weight();
    let j = family.ground_set().len();
    let total = family.total_size();
    VariableAccounting {
        extended_jtree_cont: total - w - j,
        extended_disjoint_cont: total - j,
        jtree_binaries_ub: family.len() - 1,
        disjoint_binaries: crate::formulate::ceil_log2(family.len() as u64) as usize,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jtree::is_junction_tree;
    use crate::rational::frac;

    fn fam(sets: &[&[Index]]) -> IndexSetFamily {
        IndexSetFamily::new(sets.iter().map(|s| s.to_vec())).unwrap()
    }

    fn s(v: &[Index]) -> IndexSet {
        v.iter().copied().collect()
    }

    fn triangle() -> IndexSetFamily {
        fam(&[&[1, 2], &[2, 3], &[1, 3]])
    }

    #[test]
    fn triangle_non_disjoint() {
        let t = build_equivalent_family(&triangle(), false);
        assert_eq!(t.family_prime.sets(), &[s(&[1, 2]), s(&[2, 4]), s(&[1, 6])]);
        assert_eq!(t.family_prime.ground_set().len(), 4);
        assert_eq!(t.extra_continuous, 1);
        assert!(is_junction_tree(&t.family_prime, &t.tree));
        let alpha: Vec<(Index, Index)> = t.mapping.forward.iter().map(|(a, b)| (*a, *b)).collect();
        assert_eq!(alpha, vec![(1, 1), (2, 2), (4, 3), (6, 3)]);
    }

    #[test]
    fn triangle_disjoint() {
        let t = build_equivalent_family(&triangle(), true);
        assert_eq!(t.family_prime.ground_set().len(), 6);
        assert_eq!(t.extra_continuous, 3);
        assert!(is_junction_tree(&t.family_prime, &t.tree));
    }

    #[test]
    fn junction_tree_family_needs_no_copies() {
        let f = fam(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5]]);
        let t = build_equivalent_family(&f, false);
        assert_eq!(t.extra_continuous, 0);
        for (orig, new) in f.sets().iter().zip(t.family_prime.sets()) {
            assert!(t.mapping.is_injective_on(new));
            assert_eq!(&t.mapping.image(new).unwrap(), orig);
        }
    }

    #[test]
    fn projection() {
        let t = build_equivalent_family(&triangle(), false);
        let half = frac(1, 2);
        let lp: BTreeMap<Index, Rational> = [(2, half.clone()), (4, half.clone())].into();
        let l = project(&lp, &t.mapping);
        assert_eq!(l, [(2, half.clone()), (3, half.clone())].into());
        let both: BTreeMap<Index, Rational> = [(4, half.clone()), (6, half)].into();
        assert_eq!(project(&both, &t.mapping), [(3, rational::int(1))].into());
    }

    #[test]
    fn accounting_examples() {
        let a = variable_accounting(&fam(&[&[1, 2, 3], &[2, 3, 4]]));
        assert_eq!(
            (a.extended_jtree_cont, a.extended_disjoint_cont, a.jtree_binaries_ub, a.disjoint_binaries),
            (0, 2, 1, 1)
        );
        let a = variable_accounting(&triangle());
        assert_eq!(
            (a.extended_jtree_cont, a.extended_disjoint_cont, a.jtree_binaries_ub, a.disjoint_binaries),
            (1, 3, 2, 2)
        );
        let a = variable_accounting(&fam(&[&[7, 8]]));
        assert_eq!(
            (a.extended_jtree_cont, a.extended_disjoint_cont, a.jtree_binaries_ub, a.disjoint_binaries),
            (0, 0, 0, 0)
        );
    }

    #[test]
    fn injective_feasible_image_does_not_imply_feasible() {
        // {2, 6} maps injectively onto {2, 3}, which is feasible in the
        // original, but no single new set contains both copies
        let t = build_equivalent_family(&triangle(), false);
        let pair = s(&[2, 6]);
        assert!(t.mapping.is_injective_on(&pair));
        assert!(triangle().is_feasible_set(&t.mapping.image(&pair).unwrap()).unwrap());
        assert!(!t.family_prime.is_feasible_set(&pair).unwrap());
    }

    #[test]
    fn projection_equivalence_holds() {
        for disjoint in [false, true] {
            let t = build_equivalent_family(&triangle(), disjoint);
            assert!(projection_equivalent(&triangle(), &t).unwrap());
        }
        // a broken mapping is caught
        let mut t = build_equivalent_family(&triangle(), false);
        t.mapping.forward.insert(6, 2);
        assert!(!projection_equivalent(&triangle(), &t).unwrap());
    }

    #[test]
    fn json_has_alpha_table() {
        let t = build_equivalent_family(&triangle(), false);
        let j = serde_json::to_value(t.to_json()).unwrap();
        assert_eq!(j["alpha"]["6"], 3);
        assert_eq!(j["extra_continuous"], 1);
    }
}
