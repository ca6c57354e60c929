//! Separation along a junction tree, then greedy merging, compared with the
//! exact minimum on a small conflict graph.

use cdc_jtree::cover::{merge_cover, separation_levels, BalancedCut};
use cdc_jtree::oracle::min_biclique_cover_exact;
use cdc_jtree::{admits_junction_tree, heuristic_cover, verify_cover, IndexSetFamily};

fn main() -> cdc_jtree::Result<()> {
    let family = IndexSetFamily::new([vec![1, 2, 3], vec![3, 4], vec![4, 5], vec![3, 6]])?;
    let g = family.conflict_graph();
    let tree = admits_junction_tree(&family).expect("family has a junction tree");

    let levels = separation_levels(&family, &tree, &BalancedCut)?;
    for lb in &levels {
        println!("level {}: {:?} x {:?}", lb.level, lb.biclique.a, lb.biclique.b);
    }
    let parts: Vec<_> = levels.into_iter().map(|lb| lb.biclique).collect();
    let merged = merge_cover(&parts, &g);
    println!("separation: {} bicliques, merged: {}", parts.len(), merged.len());

    let cover = heuristic_cover(&family)?;
    assert!(verify_cover(&g, &cover));
    println!("heuristic cover: {}", serde_json::to_string(&cover)?);
    if g.edge_count() <= cdc_jtree::oracle::MAX_COVER_EDGES {
        println!("exact minimum: {}", min_biclique_cover_exact(&g, cover.len())?);
    } else {
        println!("{} conflict edges, too many for the exact search", g.edge_count());
    }
    Ok(())
}
