//! Biclique covers of conflict graphs: tree separation, greedy merging and
//! validation.
//!
//! For a family with a junction tree, cutting any tree edge `e` splits the
//! sets into two sides, and `(∪ left ∖ mid(e), ∪ right ∖ mid(e))` is a
//! biclique of the conflict graph. [`separation`] cuts recursively, and
//! [`merge_cover`] then folds the resulting list into fewer bicliques.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cdc::{ConflictGraph, Index, IndexSet, IndexSetFamily};
use crate::error::{Error, Result};
use crate::jtree::{admits_junction_tree, is_junction_tree, CandidateTree};

/// A complete bipartite subgraph `A × B`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Biclique {
    pub a: IndexSet,
    pub b: IndexSet,
}

impl Biclique {
    pub fn new(a: impl IntoIterator<Item = Index>, b: impl IntoIterator<Item = Index>) -> Self {
        Biclique {
            a: a.into_iter().collect(),
            b: b.into_iter().collect(),
        }
    }

    pub fn has_empty_side(&self) -> bool {
        self.a.is_empty() || self.b.is_empty()
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Index, Index)> + '_ {
        self.a
            .iter()
            .flat_map(move |&u| self.b.iter().map(move |&v| (u.min(v), u.max(v))))
    }

    /// Sides in canonical order, so `{A, B}` and `{B, A}` compare equal.
    fn unordered_key(&self) -> (&IndexSet, &IndexSet) {
        if self.a <= self.b {
            (&self.a, &self.b)
        } else {
            (&self.b, &self.a)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueCover {
    pub bicliques: Vec<Biclique>,
}

impl BicliqueCover {
    pub fn new(bicliques: Vec<Biclique>) -> Self {
        BicliqueCover { bicliques }
    }

    pub fn len(&self) -> usize {
        self.bicliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bicliques.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Biclique> {
        self.bicliques.iter()
    }

    /// Pairwise IB-scheme `L = J ∖ A`, `R = J ∖ B`.
    pub fn to_ib_scheme(&self, ground: &IndexSet) -> Vec<(IndexSet, IndexSet)> {
        self.bicliques
            .iter()
            .map(|bc| {
                (
                    ground.difference(&bc.a).copied().collect(),
                    ground.difference(&bc.b).copied().collect(),
                )
            })
            .collect()
    }

    pub fn from_ib_scheme(scheme: &[(IndexSet, IndexSet)], ground: &IndexSet) -> Self {
        BicliqueCover::new(
            scheme
                .iter()
                .map(|(l, r)| Biclique {
                    a: ground.difference(l).copied().collect(),
                    b: ground.difference(r).copied().collect(),
                })
                .collect(),
        )
    }
}

impl<'a> IntoIterator for &'a BicliqueCover {
    type Item = &'a Biclique;
    type IntoIter = std::slice::Iter<'a, Biclique>;

    fn into_iter(self) -> Self::IntoIter {
        self.bicliques.iter()
    }
}

/// Disjoint nonempty sides with every cross pair an edge of `g`.
pub fn is_biclique(g: &ConflictGraph, a: &IndexSet, b: &IndexSet) -> bool {
    !a.is_empty()
        && !b.is_empty()
        && a.is_disjoint(b)
        && a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v)))
}

/// Every member is a biclique of `g` and together they cover every edge.
pub fn verify_cover(g: &ConflictGraph, cover: &BicliqueCover) -> bool {
    if !cover.iter().all(|bc| is_biclique(g, &bc.a, &bc.b)) {
        return false;
    }
    let covered: BTreeSet<(Index, Index)> = cover.iter().flat_map(Biclique::edges).collect();
    g.edges().iter().all(|e| covered.contains(e))
}

/// One candidate cut of a (sub)tree during separation.
#[derive(Debug, Clone)]
pub struct Cut {
    /// Tree edge `(a, b)` with `a < b`.
    pub edge: (usize, usize),
    /// Vertices on the side of `edge.0`.
    pub side_a: Vec<usize>,
    /// Vertices on the side of `edge.1`.
    pub side_b: Vec<usize>,
}

/// Chooses which edge to cut at each separation step.
pub trait EdgeSelector {
    /// Returns an index into `cuts`, which is nonempty and sorted by edge.
    fn select(&self, cuts: &[Cut]) -> usize;
}

/// Cut minimizing the difference of side sizes; ties go to the smallest edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct BalancedCut;

impl EdgeSelector for BalancedCut {
    fn select(&self, cuts: &[Cut]) -> usize {
        cuts.iter()
            .enumerate()
            .min_by_key(|(_, c)| (c.side_a.len().abs_diff(c.side_b.len()), c.edge))
            .map(|(i, _)| i)
            .expect("at least one cut")
    }
}

impl<F: Fn(&[Cut]) -> usize> EdgeSelector for F {
    fn select(&self, cuts: &[Cut]) -> usize {
        self(cuts)
    }
}

/// A separation biclique tagged with its recursion depth (root cut = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledBiclique {
    pub biclique: Biclique,
    pub level: usize,
}

/// Recursive tree separation with the balanced-cut rule.
pub fn separation(family: &IndexSetFamily, tree: &CandidateTree) -> Result<Vec<Biclique>> {
    separation_with(family, tree, &BalancedCut)
}

pub fn separation_with(
    family: &IndexSetFamily,
    tree: &CandidateTree,
    selector: &dyn EdgeSelector,
) -> Result<Vec<Biclique>> {
    Ok(separation_levels(family, tree, selector)?
        .into_iter()
        .map(|lb| lb.biclique)
        .collect())
}

/// Separation output in level order, keeping each biclique's depth.
///
/// Bicliques with an empty side carry no edges and are dropped.
pub fn separation_levels(
    family: &IndexSetFamily,
    tree: &CandidateTree,
    selector: &dyn EdgeSelector,
) -> Result<Vec<LeveledBiclique>> {
    if tree.vertex_count() != family.len() {
        return Err(Error::NotATree(format!(
            "tree has {} vertices, family has {} sets",
            tree.vertex_count(),
            family.len()
        )));
    }
    debug_assert!(is_junction_tree(family, tree), "separation needs a junction tree");
    let vertices: Vec<usize> = (0..family.len()).collect();
    let edges: Vec<(usize, usize)> = tree.edges().iter().map(|e| (e.a, e.b)).collect();
    Ok(separate(family, &vertices, &edges, selector, 0))
}

fn separate(
    family: &IndexSetFamily,
    vertices: &[usize],
    edges: &[(usize, usize)],
    selector: &dyn EdgeSelector,
    level: usize,
) -> Vec<LeveledBiclique> {
    if vertices.len() <= 1 {
        return Vec::new();
    }
    let mut sorted_edges = edges.to_vec();
    sorted_edges.sort_unstable();
    let cuts: Vec<Cut> = sorted_edges
        .iter()
        .map(|&(a, b)| {
            let side_a = component(vertices, &sorted_edges, a, (a, b));
            let side_b = vertices
                .iter()
                .copied()
                .filter(|v| side_a.binary_search(v).is_err())
                .collect();
            Cut {
                edge: (a, b),
                side_a,
                side_b,
            }
        })
        .collect();
    let cut = &cuts[selector.select(&cuts)];
    let (ea, eb) = cut.edge;
    let mid: IndexSet = family.set(ea).intersection(family.set(eb)).copied().collect();
    let union_minus_mid = |side: &[usize]| -> IndexSet {
        side.iter()
            .flat_map(|&v| family.set(v))
            .filter(|x| !mid.contains(x))
            .copied()
            .collect()
    };
    let here = Biclique {
        a: union_minus_mid(&cut.side_a),
        b: union_minus_mid(&cut.side_b),
    };

    let edges_within = |side: &[usize]| -> Vec<(usize, usize)> {
        sorted_edges
            .iter()
            .copied()
            .filter(|&(a, b)| side.binary_search(&a).is_ok() && side.binary_search(&b).is_ok())
            .collect()
    };
    let mut first = separate(family, &cut.side_a, &edges_within(&cut.side_a), selector, level + 1);
    let mut second = separate(family, &cut.side_b, &edges_within(&cut.side_b), selector, level + 1);

    // ({A, B}, b1, b2, rest of bc1, rest of bc2)
    let mut out = Vec::with_capacity(1 + first.len() + second.len());
    if !here.has_empty_side() {
        out.push(LeveledBiclique {
            biclique: here,
            level,
        });
    }
    let rest_first = if first.is_empty() { Vec::new() } else { first.split_off(1) };
    let rest_second = if second.is_empty() { Vec::new() } else { second.split_off(1) };
    out.extend(first);
    out.extend(second);
    out.extend(rest_first);
    out.extend(rest_second);
    out
}

fn component(vertices: &[usize], edges: &[(usize, usize)], start: usize, skip: (usize, usize)) -> Vec<usize> {
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            if (a, b) == skip {
                continue;
            }
            let next = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen.contains(&next) && vertices.contains(&next) {
                seen.push(next);
                stack.push(next);
            }
        }
    }
    seen.sort_unstable();
    seen
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeMode {
    /// One ordered pass.
    #[default]
    SinglePass,
    /// Repeat passes until the size stops shrinking.
    Fixpoint,
}

/// Greedy merge: each biclique joins the first accepted one it can be unioned
/// with (same orientation first, then swapped), otherwise it is appended.
pub fn merge_cover(bicliques: &[Biclique], g: &ConflictGraph) -> BicliqueCover {
    let mut merged: Vec<Biclique> = Vec::new();
    for bc in bicliques {
        let mut absorbed = false;
        for acc in merged.iter_mut() {
            let same = Biclique {
                a: acc.a.union(&bc.a).copied().collect(),
                b: acc.b.union(&bc.b).copied().collect(),
            };
            if is_biclique(g, &same.a, &same.b) {
                *acc = same;
                absorbed = true;
                break;
            }
            let swapped = Biclique {
                a: acc.a.union(&bc.b).copied().collect(),
                b: acc.b.union(&bc.a).copied().collect(),
            };
            if is_biclique(g, &swapped.a, &swapped.b) {
                *acc = swapped;
                absorbed = true;
                break;
            }
        }
        if !absorbed {
            merged.push(bc.clone());
        }
    }
    let mut seen = BTreeSet::new();
    merged.retain(|bc| {
        let (x, y) = bc.unordered_key();
        seen.insert((x.clone(), y.clone()))
    });
    BicliqueCover::new(merged)
}

pub fn merge_cover_with(bicliques: &[Biclique], g: &ConflictGraph, mode: MergeMode) -> BicliqueCover {
    let mut cover = merge_cover(bicliques, g);
    if mode == MergeMode::Fixpoint {
        loop {
            let next = merge_cover(&cover.bicliques, g);
            if next.len() >= cover.len() {
                break;
            }
            cover = next;
        }
    }
    cover
}

/// Junction-tree admission, separation, then one merge pass.
pub fn heuristic_cover(family: &IndexSetFamily) -> Result<BicliqueCover> {
    heuristic_cover_with(family, &BalancedCut, MergeMode::SinglePass)
}

pub fn heuristic_cover_with(
    family: &IndexSetFamily,
    selector: &dyn EdgeSelector,
    mode: MergeMode,
) -> Result<BicliqueCover> {
    let tree = admits_junction_tree(family).ok_or(Error::NoJunctionTree)?;
    let parts = separation_with(family, &tree, selector)?;
    Ok(merge_cover_with(&parts, &family.conflict_graph(), mode))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[Index]]) -> IndexSetFamily {
        IndexSetFamily::new(sets.iter().map(|s| s.to_vec())).unwrap()
    }

    fn s(v: &[Index]) -> IndexSet {
        v.iter().copied().collect()
    }

    fn sos2_5() -> IndexSetFamily {
        fam(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5]])
    }

    #[test]
    fn separation_on_three_set_path() {
        let f = fam(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        let parts = separation(&f, &CandidateTree::path(&f)).unwrap();
        assert_eq!(
            parts,
            vec![Biclique::new([1, 2], [4, 5, 6, 7]), Biclique::new([3, 4], [6, 7])]
        );
        let g = f.conflict_graph();
        assert!(parts.iter().all(|b| is_biclique(&g, &b.a, &b.b)));
    }

    #[test]
    fn separation_single_set_is_empty() {
        let f = fam(&[&[1, 2, 3]]);
        let t = CandidateTree::path(&f);
        assert!(separation(&f, &t).unwrap().is_empty());
    }

    #[test]
    fn separation_sos2_matches_interval_formulas() {
        let f = sos2_5();
        let parts = separation(&f, &CandidateTree::path(&f)).unwrap();
        assert_eq!(
            parts,
            vec![
                Biclique::new([1, 2], [4, 5]),
                Biclique::new([1], [3]),
                Biclique::new([3], [5]),
            ]
        );
    }

    #[test]
    fn separation_levels_and_custom_selector() {
        let f = sos2_5();
        let t = CandidateTree::path(&f);
        let levels: Vec<usize> = separation_levels(&f, &t, &BalancedCut)
            .unwrap()
            .iter()
            .map(|l| l.level)
            .collect();
        assert_eq!(levels, vec![0, 1, 1]);
        // always cut the first edge: a caterpillar of single-set cuts
        let first = |_: &[Cut]| 0usize;
        let parts = separation_with(&f, &t, &first).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], Biclique::new([1], [3, 4, 5]));
        assert!(verify_cover(&f.conflict_graph(), &BicliqueCover::new(parts)));
    }

    #[test]
    fn separation_rejects_wrong_tree() {
        let f = sos2_5();
        let other = fam(&[&[1], &[2]]);
        let t = CandidateTree::path(&other);
        assert!(matches!(separation(&f, &t), Err(Error::NotATree(_))));
    }

    #[test]
    fn biclique_checks() {
        let g = sos2_5().conflict_graph();
        assert!(is_biclique(&g, &s(&[1, 2]), &s(&[4, 5])));
        assert!(!is_biclique(&g, &s(&[1, 2]), &s(&[3])));
        assert!(!is_biclique(&g, &s(&[1]), &s(&[1])));
        assert!(!is_biclique(&g, &s(&[]), &s(&[3])));
    }

    #[test]
    fn merging() {
        let f = sos2_5();
        let g = f.conflict_graph();
        let base = separation(&f, &CandidateTree::path(&f)).unwrap();
        let merged = merge_cover(&base, &g);
        assert_eq!(
            merged.bicliques,
            vec![Biclique::new([1, 2], [4, 5]), Biclique::new([1, 5], [3])]
        );
        assert!(verify_cover(&g, &merged));

        let p = fam(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        let parts = vec![Biclique::new([1, 2], [4, 5, 6, 7]), Biclique::new([3, 4], [6, 7])];
        assert_eq!(merge_cover(&parts, &p.conflict_graph()).bicliques, parts);

        assert!(merge_cover(&[], &g).is_empty());
    }

    #[test]
    fn merge_removes_duplicates() {
        let g = sos2_5().conflict_graph();
        let parts = vec![Biclique::new([1], [3]), Biclique::new([3], [1])];
        assert_eq!(merge_cover(&parts, &g).len(), 1);
    }

    #[test]
    fn fixpoint_never_grows() {
        let f = sos2_5();
        let g = f.conflict_graph();
        let base = separation(&f, &CandidateTree::path(&f)).unwrap();
        let once = merge_cover_with(&base, &g, MergeMode::SinglePass);
        let fix = merge_cover_with(&base, &g, MergeMode::Fixpoint);
        assert!(fix.len() <= once.len());
        assert!(verify_cover(&g, &fix));
    }

    #[test]
    fn cover_verification() {
        let f = sos2_5();
        let g = f.conflict_graph();
        let good = BicliqueCover::new(vec![Biclique::new([1, 2], [4, 5]), Biclique::new([1, 5], [3])]);
        assert!(verify_cover(&g, &good));
        let missing = BicliqueCover::new(vec![Biclique::new([1, 2], [4, 5])]);
        assert!(!verify_cover(&g, &missing));
        assert!(verify_cover(&ConflictGraph::default(), &BicliqueCover::default()));
        let with_non_edge = BicliqueCover::new(vec![
            Biclique::new([1, 2], [4, 5]),
            Biclique::new([1, 5], [3]),
            Biclique::new([2], [3]),
        ]);
        assert!(!verify_cover(&g, &with_non_edge));
    }

    #[test]
    fn heuristic_pipeline() {
        assert_eq!(heuristic_cover(&sos2_5()).unwrap().len(), 2);
        let tri = fam(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(matches!(heuristic_cover(&tri), Err(Error::NoJunctionTree)));
        assert!(heuristic_cover(&fam(&[&[4, 5]])).unwrap().is_empty());
    }

    #[test]
    fn ib_scheme_round_trip() {
        let f = sos2_5();
        let ground = f.ground_set();
        let cover = heuristic_cover(&f).unwrap();
        let scheme = cover.to_ib_scheme(&ground);
        assert_eq!(scheme[0], (s(&[3, 4, 5]), s(&[1, 2, 3])));
        assert_eq!(BicliqueCover::from_ib_scheme(&scheme, &ground), cover);
    }

    #[test]
    fn cover_json_shape() {
        let cover = BicliqueCover::new(vec![Biclique::new([1], [3])]);
        let json = serde_json::to_string(&cover).unwrap();
        assert_eq!(json, r#"{"bicliques":[{"a":[1],"b":[3]}]}"#);
        let back: BicliqueCover = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cover);
    }
}
