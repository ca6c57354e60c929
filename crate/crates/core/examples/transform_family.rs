//! Rewrites a family without a junction tree into one that has it.

use std::collections::BTreeMap;

use cdc_jtree::rational::{self, frac};
use cdc_jtree::transform::{project, projection_equivalent, variable_accounting};
use cdc_jtree::{build_equivalent_family, is_junction_tree, IndexSetFamily};

fn main() -> cdc_jtree::Result<()> {
    let triangle = IndexSetFamily::new([vec![1, 2], vec![2, 3], vec![1, 3]])?;
    for disjoint in [false, true] {
        let t = build_equivalent_family(&triangle, disjoint);
        assert!(is_junction_tree(&t.family_prime, &t.tree));
        assert!(projection_equivalent(&triangle, &t)?);
        println!(
            "disjoint={disjoint}: sets {:?}, alpha {:?}, extra continuous {}",
            t.family_prime.sets(),
            t.mapping.forward,
            t.extra_continuous
        );
    }

    let t = build_equivalent_family(&triangle, false);
    let point: BTreeMap<_, _> = [(2, frac(1, 3)), (4, frac(2, 3))].into();
    let lambda = project(&point, &t.mapping);
    let shown: Vec<String> = lambda.iter().map(|(v, x)| format!("{v}={}", rational::to_string(x))).collect();
    println!("projected point: {}", shown.join(" "));
    println!("{:?}", variable_accounting(&triangle));
    Ok(())
}
