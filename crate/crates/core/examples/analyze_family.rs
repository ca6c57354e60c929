//! Structural report on a family: feasibility, conflicts, junction tree.
//!
//! cargo run --example analyze_family [path/to/family.json]

use cdc_jtree::jtree::intersection_graph;
use cdc_jtree::{admits_junction_tree, IndexSetFamily};

fn main() -> cdc_jtree::Result<()> {
    let family = match std::env::args().nth(1) {
        Some(path) => IndexSetFamily::from_json_str(&std::fs::read_to_string(path)?)?,
        None => IndexSetFamily::new([vec![1, 2], vec![2, 3], vec![1, 3]])?,
    };
    println!("sets: {:?}", family.sets());
    println!("ground set: {:?}", family.ground_set());
    for t in family.minimal_infeasible_sets()? {
        println!("minimal infeasible: {t:?}");
    }
    println!("pairwise IB: {}", family.is_pairwise_ib_representable()?);
    println!("conflict edges: {:?}", family.conflict_graph().edges());
    let mst = intersection_graph(&family).maximum_spanning_tree();
    println!("maximum spanning tree weight: {}", mst.weight());
    match admits_junction_tree(&family) {
        Some(tree) => println!("junction tree: {:?}", tree.edge_pairs()),
        None => println!("no junction tree"),
    }
    Ok(())
}
