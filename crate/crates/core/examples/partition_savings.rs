//! Polygonal partitions as families, and the continuous variables saved by a
//! junction-tree rewrite.
//!
//! cargo run --example partition_savings [path/to/partition.json]

use cdc_jtree::geom::{dual_graph, partition_to_cdc, savings_report, triangle_strip, PlanarPartition};

fn main() -> cdc_jtree::Result<()> {
    let p = match std::env::args().nth(1) {
        Some(path) => PlanarPartition::from_json_str(&std::fs::read_to_string(path)?)?,
        None => triangle_strip(6),
    };
    let (family, points) = partition_to_cdc(&p)?;
    for (i, s) in family.sets().iter().enumerate() {
        let corners: Vec<String> = s.iter().map(|v| points[v].to_string()).collect();
        println!("region {i}: {}", corners.join(" "));
    }
    let dual = dual_graph(&p);
    println!("dual edges: {:?}", dual.edges);
    println!("{}", serde_json::to_string_pretty(&savings_report(&p)?)?);
    Ok(())
}
