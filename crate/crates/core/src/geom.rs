//! Planar partitions into convex polygons: the disjunctive constraint on
//! their extreme points, the dual adjacency graph, and continuous-variable
//! savings of the junction-tree formulation over the disjoint one.

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cdc::{Index, IndexSetFamily};
use crate::error::{Error, Result};
use crate::jtree::{admits_junction_tree, intersection_graph};
use crate::rational::{self, int, Rational};
use crate::transform::variable_accounting;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    fn minus(&self, o: &Point) -> (Rational, Rational) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", rational::to_string(&self.x), rational::to_string(&self.y))
    }
}

/// `(b − a) × (c − a)`; positive when `c` is left of `a → b`.
fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    let (ux, uy) = b.minus(a);
    let (vx, vy) = c.minus(a);
    ux * vy - uy * vx
}

/// Convex polygon with vertices in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidGeometry(format!("polygon with {n} vertices")));
        }
        if vertices.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::InvalidGeometry("polygon repeats a vertex".into()));
        }
        let p = Polygon { vertices };
        for (a, b) in p.edges() {
            if p.vertices.iter().any(|q| orient(a, b, q).is_negative()) {
                return Err(Error::InvalidGeometry(
                    "polygon is not convex with counterclockwise orientation".into(),
                ));
            }
        }
        if !p.doubled_area().is_positive() {
            return Err(Error::InvalidGeometry("polygon vertices are collinear".into()));
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn doubled_area(&self) -> Rational {
        self.edges().map(|(a, b)| &a.x * &b.y - &b.x * &a.y).sum()
    }

    /// Vertices where the boundary actually turns.
    pub fn extreme_points(&self) -> Vec<Point> {
        let n = self.vertices.len();
        (0..n)
            .filter(|&i| {
                let prev = &self.vertices[(i + n - 1) % n];
                let next = &self.vertices[(i + 1) % n];
                orient(prev, &self.vertices[i], next).is_positive()
            })
            .map(|i| self.vertices[i].clone())
            .collect()
    }

    /// Closed membership.
    pub fn contains(&self, q: &Point) -> bool {
        self.edges().all(|(a, b)| !orient(a, b, q).is_negative())
    }

    /// Whether some edge line weakly separates `other` from `self`.
    fn separated_from(&self, other: &Polygon) -> bool {
        self.edges()
            .any(|(a, b)| other.vertices.iter().all(|q| !orient(a, b, q).is_positive()))
    }

    pub fn interiors_disjoint(&self, other: &Polygon) -> bool {
        self.separated_from(other) || other.separated_from(self)
    }

    /// The intersection contains a segment of positive length.
    pub fn shares_segment(&self, other: &Polygon) -> bool {
        self.edges().any(|(a, b)| {
            other.edges().any(|(c, d)| {
                if !orient(a, b, c).is_zero() || !orient(a, b, d).is_zero() {
                    return false;
                }
                let (ux, uy) = b.minus(a);
                let along = |p: &Point| {
                    let (px, py) = p.minus(a);
                    &px * &ux + &py * &uy
                };
                let (tc, td) = (along(c), along(d));
                let lo = tc.clone().min(td.clone()).max(int(0));
                let hi = tc.max(td).min(&ux * &ux + &uy * &uy);
                lo < hi
            })
        })
    }
}

/// Convex polygons with pairwise disjoint interiors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarPartition {
    polygons: Vec<Polygon>,
}

/// JSON shape: `{"polygons": [[["0","0"],["1","0"],["0","1/2"]], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionJson {
    pub polygons: Vec<Vec<[String; 2]>>,
}

impl PlanarPartition {
    pub fn new(polygons: Vec<Polygon>) -> Result<Self> {
        if polygons.is_empty() {
            return Err(Error::InvalidGeometry("partition has no polygons".into()));
        }
        for i in 0..polygons.len() {
            for j in i + 1..polygons.len() {
                if !polygons[i].interiors_disjoint(&polygons[j]) {
                    return Err(Error::InvalidGeometry(format!(
                        "polygons {} and {} overlap",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(PlanarPartition { polygons })
    }

    pub fn from_points(polygons: Vec<Vec<Point>>) -> Result<Self> {
        Self::new(polygons.into_iter().map(Polygon::new).collect::<Result<_>>()?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: PartitionJson = serde_json::from_str(s)?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            polygons: self
                .polygons
                .iter()
                .map(|p| {
                    p.vertices
                        .iter()
                        .map(|q| [rational::to_string(&q.x), rational::to_string(&q.y)])
                        .collect()
                })
                .collect(),
        }
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }
}

impl TryFrom<PartitionJson> for PlanarPartition {
    type Error = Error;

    fn try_from(raw: PartitionJson) -> Result<Self> {
        let polys = raw
            .polygons
            .iter()
            .map(|poly| {
                poly.iter()
                    .map(|[x, y]| {
                        let bad = |e: Error| Error::InvalidGeometry(e.to_string());
                        Ok(Point::new(rational::parse(x).map_err(bad)?, rational::parse(y).map_err(bad)?))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(polys)
    }
}

/// One index per distinct extreme point (in order of first appearance); set
/// `i` holds every such point lying in polygon `i`, boundary included.
pub fn partition_to_cdc(p: &PlanarPartition) -> Result<(IndexSetFamily, BTreeMap<Index, Point>)> {
    let mut points: Vec<Point> = Vec::new();
    let mut seen = BTreeSet::new();
    for poly in &p.polygons {
        for q in poly.extreme_points() {
            if seen.insert(q.clone()) {
                points.push(q);
            }
        }
    }
    let index: BTreeMap<Index, Point> = (1..).zip(points).collect();
    let sets: Vec<Vec<Index>> = p
        .polygons
        .iter()
        .map(|poly| index.iter().filter(|(_, q)| poly.contains(q)).map(|(&i, _)| i).collect())
        .collect();
    let labels = index.iter().map(|(&i, q)| (i, q.to_string())).collect();
    let family = IndexSetFamily::new(sets)?.with_labels(labels);
    Ok((family, index))
}

/// Polygons adjacent when they share a boundary segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertices: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl DualGraph {
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertices];
        let mut count = 0;
        for s in 0..self.vertices {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(a, b) in &self.edges {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}

pub fn dual_graph(p: &PlanarPartition) -> DualGraph {
    let n = p.len();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| p.polygons[i].shares_segment(&p.polygons[j]))
        .collect();
    DualGraph { vertices: n, edges }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SavingsReport {
    pub d: usize,
    pub jtree_found: bool,
    pub mst_weight: usize,
    pub cont_saved: usize,
    /// Continuous variables of the junction-tree formulation, `λ'` included.
    pub jtree_cont: usize,
    /// Continuous variables of the disjoint formulation, `λ''` included.
    pub disjoint_cont: usize,
}

/// Continuous-variable accounting for a connected partition.
pub fn savings_report(p: &PlanarPartition) -> Result<SavingsReport> {
    let dual = dual_graph(p);
    let components = dual.component_count();
    if components > 1 {
        return Err(Error::DisconnectedPartition { components });
    }
    let (family, _) = partition_to_cdc(p)?;
    let d = family.len();
    let acc = variable_accounting(&family);
    let j = family.ground_set().len();
    let mst_weight = intersection_graph(&family).maximum_spanning_tree().weight();
    let report = SavingsReport {
        d,
        jtree_found: admits_junction_tree(&family).is_some(),
        mst_weight,
        cont_saved: acc.extended_disjoint_cont - acc.extended_jtree_cont,
        jtree_cont: j + acc.extended_jtree_cont,
        disjoint_cont: j + acc.extended_disjoint_cont,
    };
    if report.cont_saved != 2 * (d - 1) {
        return Err(Error::InvariantViolation(format!(
            "saved {} continuous variables, expected {}",
            report.cont_saved,
            2 * (d - 1)
        )));
    }
    if family.sets().iter().all(|s| s.len() == 3) && (report.jtree_cont != d + 2 || report.disjoint_cont != 3 * d) {
        return Err(Error::InvariantViolation(format!(
            "triangle partition totals {} and {}, expected {} and {}",
            report.jtree_cont,
            report.disjoint_cont,
            d + 2,
            3 * d
        )));
    }
    Ok(report)
}

/// `d` triangles in a unit-height strip, consecutive ones sharing an edge.
pub fn triangle_strip(d: usize) -> PlanarPartition {
    let p = |t: usize| Point::ints((t / 2) as i64, (t % 2) as i64);
    let polys = (0..d)
        .map(|t| {
            let (a, b, c) = (p(t), p(t + 1), p(t + 2));
            if orient(&a, &b, &c).is_positive() {
                vec![a, b, c]
            } else {
                vec![a, c, b]
            }
        })
        .collect();
    PlanarPartition::from_points(polys).expect("strip triangles are valid and interior-disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::ints(x, y)).collect()
    }

    #[test]
    fn polygon_validation() {
        assert!(Polygon::new(pts(&[(0, 0), (1, 0), (0, 1)])).is_ok());
        assert!(Polygon::new(pts(&[(0, 0), (0, 1), (1, 0)])).is_err());
        assert!(Polygon::new(pts(&[(0, 0), (1, 0), (2, 0)])).is_err());
        assert!(Polygon::new(pts(&[(0, 0), (1, 0)])).is_err());
        assert!(Polygon::new(pts(&[(0, 0), (1, 0), (1, 0), (0, 1)])).is_err());
        // nonconvex dart
        assert!(Polygon::new(pts(&[(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)])).is_err());
        // a straight-angle vertex is allowed but not extreme
        let p = Polygon::new(pts(&[(0, 0), (1, 0), (2, 0), (0, 2)])).unwrap();
        assert_eq!(p.extreme_points().len(), 3);
    }

    #[test]
    fn overlapping_partition_rejected() {
        let a = pts(&[(0, 0), (2, 0), (0, 2)]);
        let b = pts(&[(1, 0), (3, 0), (1, 2)]);
        assert!(matches!(PlanarPartition::from_points(vec![a, b]), Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn two_triangles_sharing_an_edge() {
        let p = PlanarPartition::from_points(vec![pts(&[(0, 0), (1, 0), (0, 1)]), pts(&[(1, 0), (1, 1), (0, 1)])]).unwrap();
        let (f, idx) = partition_to_cdc(&p).unwrap();
        assert_eq!(idx.len(), 4);
        assert_eq!(f.set(0).len(), 3);
        assert_eq!(f.set(1).len(), 3);
        assert_eq!(f.set(0).intersection(f.set(1)).count(), 2);
        assert_eq!(dual_graph(&p).edges, [(0, 1)].into());
    }

    #[test]
    fn single_triangle() {
        let p = PlanarPartition::from_points(vec![pts(&[(0, 0), (1, 0), (0, 1)])]).unwrap();
        let (f, _) = partition_to_cdc(&p).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.set(0).len(), 3);
    }

    #[test]
    fn point_contact_is_not_adjacency() {
        let p = PlanarPartition::from_points(vec![pts(&[(0, 0), (1, 0), (0, 1)]), pts(&[(1, 0), (2, 0), (2, 1)])]).unwrap();
        assert!(dual_graph(&p).edges.is_empty());
        assert!(matches!(savings_report(&p), Err(Error::DisconnectedPartition { components: 2 })));
    }

    #[test]
    fn collinear_overlap_without_shared_vertices() {
        // top edge of the bottom square overlaps part of the triangle's base
        let bottom = pts(&[(0, 0), (4, 0), (4, 1), (0, 1)]);
        let top = pts(&[(1, 1), (5, 1), (3, 3)]);
        let p = PlanarPartition::from_points(vec![bottom, top]).unwrap();
        assert_eq!(dual_graph(&p).edges, [(0, 1)].into());
    }

    #[test]
    fn boundary_points_of_neighbours_join_the_set() {
        let bottom = pts(&[(0, 0), (2, 0), (2, 1), (0, 1)]);
        let left = pts(&[(0, 1), (1, 1), (0, 2)]);
        let right = pts(&[(1, 1), (2, 1), (2, 2)]);
        let p = PlanarPartition::from_points(vec![bottom, left, right]).unwrap();
        let (f, idx) = partition_to_cdc(&p).unwrap();
        let mid = idx.iter().find(|(_, q)| **q == Point::ints(1, 1)).map(|(i, _)| *i).unwrap();
        assert!(f.set(0).contains(&mid));
        assert_eq!(f.set(0).len(), 5);
    }

    #[test]
    fn strips() {
        for d in 2..=12 {
            let r = savings_report(&triangle_strip(d)).unwrap();
            assert_eq!(r.cont_saved, 2 * (d - 1));
            assert_eq!((r.jtree_cont, r.disjoint_cont), (d + 2, 3 * d));
            assert_eq!(r.mst_weight, 2 * (d - 1));
        }
        let r = savings_report(&triangle_strip(5)).unwrap();
        assert_eq!((r.cont_saved, r.jtree_cont, r.disjoint_cont), (8, 7, 15));
        let r = savings_report(&triangle_strip(2)).unwrap();
        assert_eq!((r.cont_saved, r.jtree_cont, r.disjoint_cont), (2, 4, 6));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"polygons": [[["0","0"],["1/2","0"],["0","0.5"]]]}"#;
        let p = PlanarPartition::from_json_str(text).unwrap();
        let back = PlanarPartition::try_from(p.to_json()).unwrap();
        assert_eq!(p, back);
        assert!(PlanarPartition::from_json_str(r#"{"polygons": [[["a","0"],["1","0"],["0","1"]]]}"#).is_err());
    }
}
