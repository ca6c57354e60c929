//! Closed-form covers for SOS-k constraints and how their size compares.
//!
//! cargo run --example sosk_cover [n] [k]

use cdc_jtree::sosk::{compare_bounds, sosk_cover, sosk_family};
use cdc_jtree::verify_cover;

fn main() -> cdc_jtree::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let n = args.next().unwrap_or(12);
    let k = args.next().unwrap_or(3);

    let cover = sosk_cover(n, k)?;
    assert!(verify_cover(&sosk_family(n, k)?.conflict_graph(), &cover));
    println!("SOS{k}({n}): {} bicliques", cover.len());
    for bc in cover.iter() {
        println!("  {:?} | {:?}", bc.a, bc.b);
    }
    let b = compare_bounds(n, k)?;
    println!(
        "binaries: closed form {}, logarithmic windows {}, one per window {}",
        b.ours,
        b.logarithmic,
        n - k + 1
    );
    Ok(())
}
