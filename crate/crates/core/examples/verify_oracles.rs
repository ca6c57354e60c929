//! Brute-force checks of formulations: support validity and idealness.

use cdc_jtree::formulate::{build_ib_from_cover, build_log_embedding, CodeScheme};
use cdc_jtree::oracle::{brute_admits_junction_tree, fractional_vertices, support_mismatch, support_validity};
use cdc_jtree::sosk::sosk_family;
use cdc_jtree::{heuristic_cover, IndexSetFamily};

fn main() -> cdc_jtree::Result<()> {
    let family = sosk_family(4, 2)?;
    let ib = build_ib_from_cover(&family, &heuristic_cover(&family)?)?;
    println!("ib support valid: {}", support_validity(&ib, &family)?);
    println!("ib fractional vertices: {}", fractional_vertices(&ib)?.len());

    let log = build_log_embedding(&family, CodeScheme::Binary);
    println!("log support valid: {}", support_validity(&log, &family)?);
    println!("log fractional vertices: {}", fractional_vertices(&log)?.len());

    // without the first biclique's rows the relaxation admits an infeasible support
    let mut broken = ib.clone();
    broken.constraints.retain(|c| !c.name.ends_with("_1") || !c.name.starts_with("cover"));
    if let Some(m) = support_mismatch(&broken, &family)? {
        println!("broken formulation: {m:?}");
    }

    let triangle = IndexSetFamily::new([vec![1, 2], vec![2, 3], vec![1, 3]])?;
    println!("triangle junction tree by exhaustion: {:?}", brute_admits_junction_tree(&triangle)?);
    Ok(())
}
