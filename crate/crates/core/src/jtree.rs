//! Intersection graphs, maximum spanning trees and junction-tree admission.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cdc::{Index, IndexSet, IndexSetFamily};
use crate::error::{Error, Result};

/// An edge between two set ordinals (`a < b`) with its middle set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetEdge {
    pub a: usize,
    pub b: usize,
    pub mid: IndexSet,
}

impl SetEdge {
    fn between(family: &IndexSetFamily, a: usize, b: usize) -> Self {
        let (a, b) = (a.min(b), a.max(b));
        let mid = family.set(a).intersection(family.set(b)).copied().collect();
        SetEdge { a, b, mid }
    }

    pub fn weight(&self) -> usize {
        self.mid.len()
    }
}

/// The complete graph on the sets of a family, weighted by intersection size.
#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    vertices: usize,
    edges: Vec<SetEdge>,
}

impl IntersectionGraph {
    pub fn new(family: &IndexSetFamily) -> Self {
        let d = family.len();
        let mut edges = Vec::with_capacity(d * d.saturating_sub(1) / 2);
        for a in 0..d {
            for b in a + 1..d {
                edges.push(SetEdge::between(family, a, b));
            }
        }
        IntersectionGraph { vertices: d, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Edges in lexicographic `(a, b)` order.
    pub fn edges(&self) -> &[SetEdge] {
        &self.edges
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&SetEdge> {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().find(|e| e.a == a && e.b == b)
    }

    /// Kruskal over edges sorted by weight descending, then `(a, b)` ascending.
    pub fn maximum_spanning_tree(&self) -> CandidateTree {
        let mut order: Vec<&SetEdge> = self.edges.iter().collect();
        order.sort_by(|x, y| {
            y.weight()
                .cmp(&x.weight())
                .then((x.a, x.b).cmp(&(y.a, y.b)))
        });
        let mut dsu = DisjointSets::new(self.vertices);
        let mut chosen = Vec::with_capacity(self.vertices.saturating_sub(1));
        for e in order {
            if dsu.union(e.a, e.b) {
                chosen.push(e.clone());
            }
        }
        CandidateTree::new(self.vertices, chosen).expect("Kruskal output is a spanning tree")
    }
}

pub fn intersection_graph(family: &IndexSetFamily) -> IntersectionGraph {
    IntersectionGraph::new(family)
}

pub fn maximum_spanning_tree(g: &IntersectionGraph) -> CandidateTree {
    g.maximum_spanning_tree()
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A spanning tree over set ordinals `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTree {
    vertices: usize,
    edges: Vec<SetEdge>,
}

/// JSON shape: `{"edges": [[0,1],[1,2]], "mids": [[3],[5]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub edges: Vec<[usize; 2]>,
    pub mids: Vec<Vec<Index>>,
}

impl CandidateTree {
    /// Checks that `edges` form a spanning tree on `vertices` ordinals.
    pub fn new(vertices: usize, edges: Vec<SetEdge>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        if edges.len() != vertices - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                edges.len(),
                vertices
            )));
        }
        let mut dsu = DisjointSets::new(vertices);
        for e in &edges {
            if e.a >= vertices || e.b >= vertices || e.a == e.b {
                return Err(Error::NotATree(format!("bad edge ({}, {})", e.a, e.b)));
            }
            if !dsu.union(e.a, e.b) {
                return Err(Error::NotATree(format!("edge ({}, {}) closes a cycle", e.a, e.b)));
            }
        }
        Ok(CandidateTree { vertices, edges })
    }

    /// Tree on the family's sets with middle sets taken from the family.
    pub fn from_pairs(family: &IndexSetFamily, pairs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| *a >= family.len() || *b >= family.len()) {
            return Err(Error::NotATree(format!("edge ({a}, {b}) out of range")));
        }
        let edges = pairs
            .iter()
            .map(|&(a, b)| SetEdge::between(family, a, b))
            .collect();
        CandidateTree::new(family.len(), edges)
    }

    /// The path `0 - 1 - ... - d-1`.
    pub fn path(family: &IndexSetFamily) -> Self {
        let pairs: Vec<_> = (1..family.len()).map(|i| (i - 1, i)).collect();
        CandidateTree::from_pairs(family, &pairs).expect("a path is a tree")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[SetEdge] {
        &self.edges
    }

    pub fn weight(&self) -> usize {
        self.edges.iter().map(SetEdge::weight).sum()
    }

    pub fn edge_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Vertices reachable from `start` without crossing edge `skip`.
    pub(crate) fn side_of(&self, adj: &[Vec<usize>], start: usize, skip: (usize, usize)) -> Vec<usize> {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![start];
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &adj[v] {
                let crossing = (v.min(w), v.max(w)) == skip;
                if !crossing && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            edges: self.edges.iter().map(|e| [e.a, e.b]).collect(),
            mids: self
                .edges
                .iter()
                .map(|e| e.mid.iter().copied().collect())
                .collect(),
        }
    }

    /// Rebuilds a tree for `family`; stored middle sets must match the family.
    pub fn from_json(family: &IndexSetFamily, json: &TreeJson) -> Result<Self> {
        let pairs: Vec<_> = json.edges.iter().map(|[a, b]| (*a, *b)).collect();
        let tree = CandidateTree::from_pairs(family, &pairs)?;
        if json.mids.len() != json.edges.len() {
            return Err(Error::NotATree("mids and edges differ in length".into()));
        }
        for (e, mid) in tree.edges.iter().zip(&json.mids) {
            if e.mid != mid.iter().copied().collect::<IndexSet>() {
                return Err(Error::NotATree(format!(
                    "middle set of ({}, {}) does not match the family",
                    e.a, e.b
                )));
            }
        }
        Ok(tree)
    }
}

/// Every tree edge separates the sets into two sides whose unions meet only
/// inside the edge's middle set.
pub fn is_junction_tree(family: &IndexSetFamily, tree: &CandidateTree) -> bool {
    if tree.vertex_count() != family.len() {
        return false;
    }
    let adj = tree.neighbors();
    tree.edges().iter().all(|e| {
        let mid: IndexSet = family.set(e.a).intersection(family.set(e.b)).copied().collect();
        let left = tree.side_of(&adj, e.a, (e.a, e.b));
        let mut in_left = vec![false; tree.vertex_count()];
        for &v in &left {
            in_left[v] = true;
        }
        let left_union: IndexSet = left.iter().flat_map(|&v| family.set(v)).copied().collect();
        (0..tree.vertex_count())
            .filter(|&v| !in_left[v])
            .flat_map(|v| family.set(v))
            .all(|x| !left_union.contains(x) || mid.contains(x))
    })
}

/// One maximum spanning tree, returned only if it is a junction tree. Either
/// every maximum spanning tree is a junction tree or none is, so one check
/// decides admission.
pub fn admits_junction_tree(family: &IndexSetFamily) -> Option<CandidateTree> {
    let tree = IntersectionGraph::new(family).maximum_spanning_tree();
    is_junction_tree(family, &tree).then_some(tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[Index]]) -> IndexSetFamily {
        IndexSetFamily::new(sets.iter().map(|s| s.to_vec())).unwrap()
    }

    fn path3() -> IndexSetFamily {
        fam(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]])
    }

    fn triangle() -> IndexSetFamily {
        fam(&[&[1, 2], &[2, 3], &[1, 3]])
    }

    #[test]
    fn intersection_weights() {
        let g = intersection_graph(&path3());
        assert_eq!(g.edges().len(), 3);
        assert_eq!(g.edge(0, 1).unwrap().weight(), 1);
        assert_eq!(g.edge(1, 2).unwrap().weight(), 1);
        assert_eq!(g.edge(0, 2).unwrap().weight(), 0);

        let g = intersection_graph(&fam(&[&[1], &[2]]));
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].weight(), 0);

        let g = intersection_graph(&fam(&[&[1, 2, 3], &[2, 3, 4]]));
        assert_eq!(g.edges()[0].mid, [2, 3].into());
    }

    #[test]
    fn mst_tie_break() {
        let t = maximum_spanning_tree(&intersection_graph(&path3()));
        assert_eq!(t.edge_pairs(), [(0, 1), (1, 2)].into());
        assert_eq!(t.weight(), 2);

        let t = maximum_spanning_tree(&intersection_graph(&fam(&[&[1], &[2]])));
        assert_eq!(t.edge_pairs(), [(0, 1)].into());

        let t = maximum_spanning_tree(&intersection_graph(&triangle()));
        assert_eq!(t.weight(), 2);
        assert_eq!(t.edge_pairs(), [(0, 1), (0, 2)].into());
    }

    #[test]
    fn junction_checks() {
        let f = path3();
        assert!(is_junction_tree(&f, &CandidateTree::path(&f)));
        let t = triangle();
        assert!(!is_junction_tree(&t, &CandidateTree::path(&t)));
        let single = fam(&[&[1, 2]]);
        let empty = CandidateTree::from_pairs(&single, &[]).unwrap();
        assert!(is_junction_tree(&single, &empty));
    }

    #[test]
    fn admission() {
        let f = path3();
        assert_eq!(admits_junction_tree(&f).unwrap().edge_pairs(), [(0, 1), (1, 2)].into());
        assert!(admits_junction_tree(&triangle()).is_none());
        for n in 3..9 {
            for k in 1..n {
                let sets: Vec<Vec<Index>> = (1..=n - k + 1).map(|i| (i..i + k).collect()).collect();
                let f = IndexSetFamily::new(sets).unwrap();
                let t = admits_junction_tree(&f).unwrap();
                let expected: BTreeSet<_> = (1..f.len()).map(|i| (i - 1, i)).collect();
                if k > 1 {
                    assert_eq!(t.edge_pairs(), expected, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn tree_validation() {
        let f = path3();
        assert!(CandidateTree::from_pairs(&f, &[(0, 1)]).is_err());
        assert!(CandidateTree::from_pairs(&f, &[(0, 1), (1, 0)]).is_err());
        assert!(CandidateTree::from_pairs(&f, &[(0, 1), (1, 5)]).is_err());
    }

    #[test]
    fn tree_json() {
        let f = path3();
        let t = CandidateTree::path(&f);
        let json = t.to_json();
        assert_eq!(json.mids, vec![vec![3], vec![5]]);
        assert_eq!(CandidateTree::from_json(&f, &json).unwrap(), t);
        let mut bad = json.clone();
        bad.mids[0] = vec![4];
        assert!(CandidateTree::from_json(&f, &bad).is_err());
    }
}
