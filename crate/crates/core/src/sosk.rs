//! Closed-form constructions for generalized special ordered sets `SOS k(n)`:
//! at most `k` consecutive nonzeros among `n` simplex variables.

use num::BigInt;
use serde::Serialize;

use crate::cdc::{Index, IndexSet, IndexSetFamily};
use crate::cover::{Biclique, BicliqueCover};
use crate::error::{Error, Result};
use crate::formulate::ceil_log2;
use crate::jtree::{CandidateTree, SetEdge};
use crate::rational::Rational;

pub use crate::formulate::build_pwl;

/// Parameters of an `SOS k(n)` constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SoskSpec {
    pub n: u32,
    pub k: u32,
}

impl SoskSpec {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        Ok(SoskSpec { n, k })
    }

    /// `⌈log₂(n−k+1)⌉`, the depth of the embedding cover.
    pub fn b(&self) -> u32 {
        ceil_log2(u64::from(self.n - self.k + 1))
    }

    pub fn window_count(&self) -> u32 {
        self.n - self.k + 1
    }
}

fn interval(lo: u64, hi: u64) -> IndexSet {
    (lo..=hi).map(|v| v as Index).collect()
}

/// The `n − k + 1` windows `⟦i, i+k−1⟧`.
pub fn sosk_family(n: u32, k: u32) -> Result<IndexSetFamily> {
    let sos = SoskSpec::new(n, k)?;
    IndexSetFamily::new((1..=sos.window_count()).map(|i| i..i + k))
}

/// The path over consecutive windows.
pub fn sosk_junction_tree(n: u32, k: u32) -> Result<CandidateTree> {
    if n <= k {
        return Err(Error::InvalidParameters(format!("junction tree needs n > k, got n={n}, k={k}")));
    }
    let family = sosk_family(n, k)?;
    let edges = (0..family.len() - 1)
        .map(|i| SetEdge {
            a: i,
            b: i + 1,
            mid: family.set(i).intersection(family.set(i + 1)).copied().collect(),
        })
        .collect();
    CandidateTree::new(family.len(), edges)
}

fn check_bk(b: u32, k: u32) -> Result<()> {
    if b < 1 || k < 2 {
        return Err(Error::InvalidParameters(format!("need b >= 1 and k >= 2, got b={b}, k={k}")));
    }
    if b > 30 {
        return Err(Error::size_guard("b", u128::from(b), 30));
    }
    Ok(())
}

/// `(A^{i,j}, B^{i,j})` on `N = 2^b + k − 1`.
fn base_pair(b: u32, k: u32, i: u32, j: u64) -> Biclique {
    let w = 1u64 << (b - i);
    let half = w / 2;
    let k = u64::from(k);
    Biclique {
        a: interval(1 + j * w, (2 * j + 1) * half),
        b: interval((2 * j + 1) * half + k, (j + 1) * w + k - 1),
    }
}

/// The `2^b − 1` dyadic bicliques, ordered by `i` then `j`.
pub fn sosk_base_cover(b: u32, k: u32) -> Result<BicliqueCover> {
    check_bk(b, k)?;
    let mut out = Vec::with_capacity((1usize << b) - 1);
    for i in 0..b {
        for j in 0..(1u64 << i) {
            out.push(base_pair(b, k, i, j));
        }
    }
    Ok(BicliqueCover::new(out))
}

/// `α^i = ⌈(k − 1 + 2^{b−i−1}) / 2^{b−i}⌉`.
pub fn alpha(b: u32, k: u32, i: u32) -> u64 {
    let w = 1u64 << (b - i);
    (u64::from(k) - 1 + w / 2).div_ceil(w)
}

/// Same-level base bicliques `α^i` apart, unioned with alternating orientation.
pub fn sosk_merged_cover(b: u32, k: u32) -> Result<BicliqueCover> {
    check_bk(b, k)?;
    let mut out = Vec::new();
    for i in 0..b {
        let a = alpha(b, k, i);
        let count = 1u64 << i;
        for p in 0..a.min(count) {
            let mut merged = Biclique::new([], []);
            for (m, j) in (p..count).step_by(a as usize).enumerate() {
                let base = base_pair(b, k, i, j);
                if m % 2 == 0 {
                    merged.a.extend(base.a);
                    merged.b.extend(base.b);
                } else {
                    merged.a.extend(base.b);
                    merged.b.extend(base.a);
                }
            }
            out.push(merged);
        }
    }
    Ok(BicliqueCover::new(out))
}

/// Biclique cover of the `SOS k(n)` conflict graph.
///
/// For `k ≥ 2` this is the merged cover on `2^b + k − 1` indices cut down to
/// `⟦n⟧`; for `k = 1` it is the bitwise cover of the complete graph.
pub fn sosk_cover(n: u32, k: u32) -> Result<BicliqueCover> {
    let sos = SoskSpec::new(n, k)?;
    if n == k {
        return Err(Error::InvalidParameters(format!("cover needs n > k, got n={n}, k={k}")));
    }
    if k == 1 {
        return Ok(bit_cover(n));
    }
    let merged = sosk_merged_cover(sos.b(), k)?;
    let bicliques = merged
        .bicliques
        .into_iter()
        .map(|bc| Biclique {
            a: bc.a.into_iter().filter(|&v| v <= n).collect(),
            b: bc.b.into_iter().filter(|&v| v <= n).collect(),
        })
        .filter(|bc| !bc.has_empty_side())
        .collect();
    Ok(BicliqueCover::new(bicliques))
}

fn bit_cover(n: u32) -> BicliqueCover {
    let bits = ceil_log2(u64::from(n));
    BicliqueCover::new(
        (0..bits)
            .map(|bit| {
                let (ones, zeros): (Vec<Index>, Vec<Index>) = (1..=n).partition(|v| (v - 1) >> bit & 1 == 1);
                Biclique::new(zeros, ones)
            })
            .filter(|bc| !bc.has_empty_side())
            .collect(),
    )
}

/// `(Σ_i min{2^i, α^i}, b + k − 2)`.
pub fn sosk_size_identity(b: u32, k: u32) -> (u64, u64) {
    let lhs = (0..b).map(|i| (1u64 << i).min(alpha(b, k, i))).sum();
    (lhs, u64::from(b) + u64::from(k) - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundComparison {
    pub ours: u64,
    pub logarithmic: u64,
    pub linear: u64,
}

/// Binary-variable counts of three SOS-k formulations.
pub fn compare_bounds(n: u32, k: u32) -> Result<BoundComparison> {
    if !(2 <= k && k < n) {
        return Err(Error::InvalidParameters(format!("need 2 <= k < n, got n={n}, k={k}")));
    }
    let (n, k) = (u64::from(n), u64::from(k));
    Ok(BoundComparison {
        ours: u64::from(ceil_log2(n - k + 1)) + k - 2,
        logarithmic: u64::from(ceil_log2(n.div_ceil(k) - 1)) + 3 * k,
        linear: n,
    })
}

/// `C = k / ⌈log₂ n⌉`, the largest constant with `k ≥ C⌈log₂ n⌉`.
pub fn ratio_constant(n: u32, k: u32) -> Rational {
    Rational::new(BigInt::from(k), BigInt::from(ceil_log2(u64::from(n)).max(1)))
}

/// Checks `ours / logarithmic < (C+1) / (3C)` exactly.
pub fn ratio_below(n: u32, k: u32, c: &Rational) -> Result<bool> {
    let cmp = compare_bounds(n, k)?;
    let lhs = Rational::new(BigInt::from(cmp.ours), BigInt::from(cmp.logarithmic));
    let three = Rational::from_integer(BigInt::from(3));
    let rhs = (c + Rational::from_integer(BigInt::from(1))) / (three * c);
    Ok(lhs < rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::verify_cover;
    use crate::jtree::is_junction_tree;
    use crate::rational::frac;

    fn s(v: &[Index]) -> IndexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn families() {
        let f = sosk_family(5, 2).unwrap();
        assert_eq!(f.sets(), &[s(&[1, 2]), s(&[2, 3]), s(&[3, 4]), s(&[4, 5])]);
        assert_eq!(sosk_family(3, 3).unwrap().sets(), &[s(&[1, 2, 3])]);
        assert_eq!(sosk_family(4, 1).unwrap().len(), 4);
        assert!(sosk_family(2, 3).is_err());
        assert!(sosk_family(2, 0).is_err());
    }

    #[test]
    fn junction_trees() {
        let t = sosk_junction_tree(5, 2).unwrap();
        let mids: Vec<IndexSet> = t.edges().iter().map(|e| e.mid.clone()).collect();
        assert_eq!(mids, vec![s(&[2]), s(&[3]), s(&[4])]);
        assert!(is_junction_tree(&sosk_family(5, 2).unwrap(), &t));
        let t = sosk_junction_tree(4, 3).unwrap();
        assert_eq!(t.edges()[0].mid, s(&[2, 3]));
        let t = sosk_junction_tree(6, 5).unwrap();
        assert_eq!(t.edges()[0].mid, s(&[2, 3, 4, 5]));
        assert!(sosk_junction_tree(3, 3).is_err());
    }

    #[test]
    fn base_covers() {
        let c = sosk_base_cover(2, 2).unwrap();
        assert_eq!(
            c.bicliques,
            vec![Biclique::new([1, 2], [4, 5]), Biclique::new([1], [3]), Biclique::new([3], [5])]
        );
        assert_eq!(sosk_base_cover(1, 2).unwrap().bicliques, vec![Biclique::new([1], [3])]);
        assert_eq!(sosk_base_cover(1, 3).unwrap().bicliques, vec![Biclique::new([1], [4])]);
        assert!(sosk_base_cover(0, 2).is_err());
        assert!(sosk_base_cover(2, 1).is_err());
        for b in 1..=5 {
            for k in 2..=6 {
                let g = sosk_family((1 << b) + k - 1, k).unwrap().conflict_graph();
                assert!(verify_cover(&g, &sosk_base_cover(b, k).unwrap()), "b={b} k={k}");
            }
        }
    }

    #[test]
    fn merged_covers() {
        let c = sosk_merged_cover(2, 2).unwrap();
        assert_eq!(c.bicliques, vec![Biclique::new([1, 2], [4, 5]), Biclique::new([1, 5], [3])]);
        assert_eq!(sosk_merged_cover(2, 3).unwrap().len(), 3);
        assert_eq!((alpha(2, 3, 0), alpha(2, 3, 1)), (1, 2));
        assert_eq!(sosk_merged_cover(1, 2).unwrap().bicliques, vec![Biclique::new([1], [3])]);
    }

    #[test]
    fn covers_for_n() {
        let c = sosk_cover(5, 2).unwrap();
        assert_eq!(c.len(), 2);
        let c = sosk_cover(10, 3).unwrap();
        assert!(verify_cover(&sosk_family(10, 3).unwrap().conflict_graph(), &c));
        assert!(c.len() <= 4);
        let g = sosk_family(6, 5).unwrap().conflict_graph();
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(1, 6)]);
        let c = sosk_cover(6, 5).unwrap();
        assert!(!c.is_empty() && c.len() <= 4);
        assert!(verify_cover(&g, &c));
        assert!(sosk_cover(4, 4).is_err());
    }

    #[test]
    fn singleton_cover_is_logarithmic() {
        for n in 2..=17u32 {
            let c = sosk_cover(n, 1).unwrap();
            assert_eq!(c.len() as u32, ceil_log2(u64::from(n)));
            assert!(verify_cover(&sosk_family(n, 1).unwrap().conflict_graph(), &c));
        }
    }

    #[test]
    fn size_identity_examples() {
        assert_eq!(sosk_size_identity(3, 5), (6, 6));
        assert_eq!(sosk_size_identity(1, 2), (1, 1));
        assert_eq!(sosk_size_identity(10, 2), (10, 10));
    }

    #[test]
    fn bound_examples() {
        let c = compare_bounds(10, 3).unwrap();
        assert_eq!((c.ours, c.logarithmic, c.linear), (4, 11, 10));
        let c = compare_bounds(5, 2).unwrap();
        assert_eq!((c.ours, c.logarithmic, c.linear), (2, 7, 5));
        let c = compare_bounds(100, 20).unwrap();
        assert_eq!((c.ours, c.logarithmic, c.linear), (25, 62, 100));
        let cc = ratio_constant(100, 20);
        assert_eq!(cc, frac(20, 7));
        assert!(ratio_below(100, 20, &cc).unwrap());
        assert!(compare_bounds(3, 3).is_err());
    }
}
