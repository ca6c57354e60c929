//! A piecewise-linear function as an SOS2 model, written as LP text.

use cdc_jtree::formulate::build_pwl;
use cdc_jtree::rational::{frac, int};
use cdc_jtree::write_lp;

fn main() -> cdc_jtree::Result<()> {
    // falls to 0 at x = 1, then rises with decreasing slope
    let breakpoints = [
        (int(0), int(1)),
        (int(1), int(0)),
        (int(2), frac(1, 2)),
        (int(3), frac(2, 3)),
    ];
    let f = build_pwl(&breakpoints)?;
    println!("{} binaries for {} breakpoints", f.binary_count(), breakpoints.len());
    print!("{}", write_lp(&f)?);
    Ok(())
}
