use std::path::PathBuf;

use cdc_jtree::geom::{dual_graph, partition_to_cdc, savings_report, triangle_strip, PlanarPartition, Point, Polygon};
use cdc_jtree::jtree::admits_junction_tree;
use cdc_jtree::rational::frac;
use cdc_jtree::Error;

fn load(name: &str) -> PlanarPartition {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name);
    PlanarPartition::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn hole_has_a_three_way_conflict() {
    let p = load("hole.json");
    assert_eq!(p.len(), 8);
    assert!(dual_graph(&p).is_connected());
    let (family, points) = partition_to_cdc(&p).unwrap();
    assert!(admits_junction_tree(&family).is_none());
    assert!(!family.is_pairwise_ib_representable().unwrap());
    let triples: Vec<_> = family
        .minimal_infeasible_sets()
        .unwrap()
        .into_iter()
        .filter(|t| t.len() == 3)
        .collect();
    assert_eq!(triples.len(), 1);
    let corners: Vec<&Point> = triples[0].iter().map(|v| &points[v]).collect();
    assert!(corners.contains(&&Point::ints(2, 2)));
    assert!(corners.contains(&&Point::ints(4, 2)));
    assert!(corners.contains(&&Point::ints(3, 4)));
    let s = savings_report(&p).unwrap();
    assert!(!s.jtree_found);
    assert_eq!(s.cont_saved, 14);
    assert_eq!((s.jtree_cont, s.disjoint_cont), (10, 24));
}

#[test]
fn snake_admits_junction_tree() {
    let p = load("snake9.json");
    let s = savings_report(&p).unwrap();
    assert!(s.jtree_found);
    assert_eq!(s.d, 9);
    assert_eq!(s.cont_saved, 16);
    assert_eq!(dual_graph(&p).edges.len(), 8);
}

#[test]
fn touching_at_a_point_is_disconnected() {
    let p = load("touching.json");
    assert_eq!(dual_graph(&p).component_count(), 2);
    assert!(matches!(savings_report(&p), Err(Error::DisconnectedPartition { components: 2 })));
}

#[test]
fn strips_match_closed_forms() {
    for d in 2..=12 {
        let s = savings_report(&triangle_strip(d)).unwrap();
        assert_eq!(s.cont_saved, 2 * (d - 1));
        assert_eq!((s.jtree_cont, s.disjoint_cont), (d + 2, 3 * d));
    }
}

#[test]
fn invalid_polygons_are_rejected() {
    let cw = vec![Point::ints(0, 0), Point::ints(0, 1), Point::ints(1, 0)];
    assert!(Polygon::new(cw).is_err());
    let flat = vec![Point::ints(0, 0), Point::ints(1, 0), Point::ints(2, 0)];
    assert!(Polygon::new(flat).is_err());
    let overlap = vec![
        vec![Point::ints(0, 0), Point::ints(2, 0), Point::ints(0, 2)],
        vec![Point::ints(1, 0), Point::ints(3, 0), Point::ints(1, 2)],
    ];
    assert!(PlanarPartition::from_points(overlap).is_err());
}

#[test]
fn rational_coordinates() {
    let h = frac(1, 3);
    let tri = |a: (Point, Point, Point)| vec![a.0, a.1, a.2];
    let p0 = Point::new(frac(0, 1), frac(0, 1));
    let p1 = Point::new(frac(1, 1), frac(0, 1));
    let p2 = Point::new(h.clone(), frac(1, 1));
    let p3 = Point::new(frac(4, 3), frac(1, 1));
    let p = PlanarPartition::from_points(vec![
        tri((p0, p1.clone(), p2.clone())),
        tri((p1, p3, p2)),
    ])
    .unwrap();
    let s = savings_report(&p).unwrap();
    assert_eq!(s.cont_saved, 2);
    assert_eq!((s.jtree_cont, s.disjoint_cont), (4, 6));
}
