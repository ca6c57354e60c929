//! Emits every formulation of one family as LP text.
//!
//! cargo run --example formulate_lp > all.lp

use cdc_jtree::formulate::{
    build_extended_disjoint, build_extended_jtree, build_ib_from_cover, build_jeroslow_lowe, build_log_embedding,
    build_naive, build_sosk, build_sosk_windows, CodeScheme,
};
use cdc_jtree::sosk::sosk_family;
use cdc_jtree::{heuristic_cover, write_lp};

fn main() -> cdc_jtree::Result<()> {
    let family = sosk_family(5, 2)?;
    let cover = heuristic_cover(&family)?;
    let builds = [
        build_naive(&family),
        build_jeroslow_lowe(&family),
        build_log_embedding(&family, CodeScheme::ReflectedGray),
        build_ib_from_cover(&family, &cover)?,
        build_sosk(5, 2)?,
        build_sosk_windows(5, 2)?,
        build_extended_jtree(&family)?,
        build_extended_disjoint(&family)?,
    ];
    for f in &builds {
        eprintln!(
            "{:<18} {:>2} binaries {:>2} continuous {:>2} rows",
            f.metadata.builder,
            f.binary_count(),
            f.continuous_count(),
            f.constraints.len()
        );
        println!("{}", write_lp(f)?);
    }
    Ok(())
}
