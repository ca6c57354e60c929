//! Seeded random families for property tests and benchmarks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdc::{Index, IndexSet, IndexSetFamily};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random labelled tree on `d` vertices as parent links.
fn random_tree<R: Rng>(rng: &mut R, d: usize) -> Vec<(usize, usize)> {
    (1..d).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// A family with a junction tree on `d` sets and at most `max_ground` indices.
///
/// Every shared index occupies a random connected subtree of a random tree,
/// so the running-intersection property holds; sets left empty or equal to
/// another get a private index.
pub fn junction_tree_family<R: Rng>(rng: &mut R, d: usize, max_ground: usize) -> IndexSetFamily {
    assert!(d >= 1 && max_ground >= d, "need 1 <= d <= max_ground");
    let edges = random_tree(rng, d);
    let mut adj = vec![Vec::new(); d];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let shared = rng.gen_range(0..=max_ground - d);
    let mut sets: Vec<IndexSet> = vec![IndexSet::new(); d];
    for e in 1..=shared as Index {
        let target = rng.gen_range(1..=d);
        let start = rng.gen_range(0..d);
        let mut inside = vec![start];
        let mut frontier: Vec<usize> = adj[start].clone();
        while inside.len() < target && !frontier.is_empty() {
            let pick = frontier.swap_remove(rng.gen_range(0..frontier.len()));
            if inside.contains(&pick) {
                continue;
            }
            inside.push(pick);
            frontier.extend(adj[pick].iter().copied().filter(|w| !inside.contains(w)));
        }
        for v in inside {
            sets[v].insert(e);
        }
    }
    let mut next = shared as Index;
    let mut seen = BTreeSet::new();
    for s in sets.iter_mut() {
        if s.is_empty() || seen.contains(s) {
            next += 1;
            s.insert(next);
        }
        seen.insert(s.clone());
    }
    IndexSetFamily::new(sets).expect("sets are nonempty and distinct")
}

/// `d` distinct nonempty random subsets of `⟦n⟧`.
pub fn random_family<R: Rng>(rng: &mut R, d: usize, n: usize) -> IndexSetFamily {
    assert!((1..32).contains(&n) && d >= 1 && (d as u64) < (1u64 << n), "too many sets for the ground size");
    let mut picked: BTreeSet<u32> = BTreeSet::new();
    let mut order = Vec::new();
    while picked.len() < d {
        let size = rng.gen_range(1..=n);
        let mut pool: Vec<Index> = (1..=n as Index).collect();
        pool.shuffle(rng);
        let mask = pool[..size].iter().fold(0u32, |m, &v| m | 1 << (v - 1));
        if picked.insert(mask) {
            order.push(mask);
        }
    }
    IndexSetFamily::new(
        order
            .into_iter()
            .map(|m| (1..=n as Index).filter(move |v| m >> (v - 1) & 1 == 1)),
    )
    .expect("masks are nonempty and distinct")
}
