//! Brute-force ground truth at desk scale: exhaustive spanning trees, exact
//! support-level validity of formulations, LP vertex enumeration and exact
//! minimum biclique covers.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cdc::{ConflictGraph, Index, IndexSet, IndexSetFamily};
use crate::error::{Error, Result};
use crate::formulate::{LinearFormulation, Sense, VarKind};
use crate::jtree::{intersection_graph, is_junction_tree, CandidateTree};
use crate::rational::{int, Rational};

pub const MAX_BRUTE_SETS: usize = 7;
pub const MAX_SUPPORT_GROUND: usize = 12;
pub const MAX_SUPPORT_BINARIES: usize = 12;
pub const MAX_VERTEX_VARIABLES: usize = 12;
pub const MAX_BASES: u128 = 5_000_000;
pub const MAX_COVER_EDGES: usize = 12;

/// Every labelled tree on `d` vertices, via Prüfer sequences.
fn all_trees(d: usize) -> Vec<Vec<(usize, usize)>> {
    match d {
        0 | 1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    (0..d - 2)
        .map(|_| 0..d)
        .multi_cartesian_product()
        .map(|seq| prufer_decode(&seq, d))
        .collect()
}

fn prufer_decode(seq: &[usize], d: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; d];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(d - 1);
    for &v in seq {
        let leaf = (0..d).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..d).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort_unstable();
    edges
}

/// Exhaustive junction-tree search over all spanning trees.
///
/// Also checks that every passing tree has maximum weight and that maximum
/// spanning trees pass all together or not at all; a violation is reported
/// as [`Error::InvariantViolation`].
pub fn brute_admits_junction_tree(family: &IndexSetFamily) -> Result<Option<CandidateTree>> {
    let d = family.len();
    if d > MAX_BRUTE_SETS {
        return Err(Error::size_guard("sets", d as u128, MAX_BRUTE_SETS as u128));
    }
    let best = intersection_graph(family).maximum_spanning_tree().weight();
    let mut found = None;
    let mut mst_pass = 0usize;
    let mut mst_total = 0usize;
    for pairs in all_trees(d) {
        let tree = CandidateTree::from_pairs(family, &pairs)?;
        let passes = is_junction_tree(family, &tree);
        let w = tree.weight();
        if passes && w != best {
            return Err(Error::InvariantViolation(format!(
                "junction tree of weight {w} but maximum is {best}"
            )));
        }
        if w == best {
            mst_total += 1;
            mst_pass += usize::from(passes);
        }
        if passes && found.is_none() {
            found = Some(tree);
        }
    }
    if mst_pass != 0 && mst_pass != mst_total {
        return Err(Error::InvariantViolation(format!(
            "{mst_pass} of {mst_total} maximum spanning trees are junction trees"
        )));
    }
    Ok(found)
}

/// Rows `a·x ≤ b` and `a·x = b` over dense rational coefficients.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub vars: usize,
    pub le: Vec<(Vec<Rational>, Rational)>,
    pub eq: Vec<(Vec<Rational>, Rational)>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem {
            vars,
            ..Default::default()
        }
    }

    pub fn push(&mut self, a: Vec<Rational>, sense: Sense, b: Rational) {
        match sense {
            Sense::Le => self.le.push((a, b)),
            Sense::Ge => self.le.push((a.into_iter().map(|x| -x).collect(), -b)),
            Sense::Eq => self.eq.push((a, b)),
        }
    }

    /// Exact feasibility: equalities by substitution, then Fourier–Motzkin.
    pub fn is_feasible(&self) -> bool {
        let mut le = self.le.clone();
        let mut eq = self.eq.clone();
        while let Some((a, b)) = eq.pop() {
            let Some(p) = a.iter().position(|x| !x.is_zero()) else {
                if !b.is_zero() {
                    return false;
                }
                continue;
            };
            let pivot = a[p].clone();
            let substitute = |row: &mut (Vec<Rational>, Rational)| {
                if row.0[p].is_zero() {
                    return;
                }
                let f = &row.0[p] / &pivot;
                for (x, y) in row.0.iter_mut().zip(&a) {
                    *x -= &f * y;
                }
                row.1 -= &f * &b;
            };
            eq.iter_mut().for_each(substitute);
            le.iter_mut().for_each(substitute);
        }
        fourier_motzkin(le, self.vars)
    }
}

fn normalize(a: Vec<Rational>, b: Rational) -> (Vec<Rational>, Rational) {
    match a.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs();
            (a.iter().map(|x| x / &s).collect(), b / s)
        }
        None => (a, b),
    }
}

fn fourier_motzkin(rows: Vec<(Vec<Rational>, Rational)>, vars: usize) -> bool {
    let mut set: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    let add = |set: &mut BTreeMap<Vec<Rational>, Rational>, a: Vec<Rational>, b: Rational| -> bool {
        if a.iter().all(Zero::is_zero) {
            return !b.is_negative();
        }
        let (a, b) = normalize(a, b);
        let slot = set.entry(a).or_insert_with(|| b.clone());
        if b < *slot {
            *slot = b;
        }
        true
    };
    for (a, b) in rows {
        if !add(&mut set, a, b) {
            return false;
        }
    }
    let mut alive: Vec<usize> = (0..vars).collect();
    loop {
        alive.retain(|&j| set.keys().any(|a| !a[j].is_zero()));
        let Some(&j) = alive
            .iter()
            .min_by_key(|&&j| set.keys().filter(|a| !a[j].is_zero()).count())
        else {
            return true;
        };
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = BTreeMap::new();
        for (a, b) in std::mem::take(&mut set) {
            if a[j].is_positive() {
                pos.push((a, b));
            } else if a[j].is_negative() {
                neg.push((a, b));
            } else {
                next.insert(a, b);
            }
        }
        set = next;
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let sp = &pa[j];
                let sn = -&na[j];
                let a: Vec<Rational> = pa.iter().zip(na).map(|(x, y)| x / sp + y / &sn).collect();
                let b = pb / sp + nb / &sn;
                if !add(&mut set, a, b) {
                    return false;
                }
            }
        }
    }
}

/// Details of a support on which a formulation and its family disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportMismatch {
    pub support: IndexSet,
    pub family_feasible: bool,
    pub formulation_feasible: bool,
}

/// True iff, for every nonempty `T ⊆ J`, uniform mass on `T` extends to a
/// feasible point of the formulation exactly when `T` is feasible.
pub fn support_validity(f: &LinearFormulation, family: &IndexSetFamily) -> Result<bool> {
    Ok(support_mismatch(f, family)?.is_none())
}

/// First disagreeing support (in enumeration order), if any.
pub fn support_mismatch(f: &LinearFormulation, family: &IndexSetFamily) -> Result<Option<SupportMismatch>> {
    let ground: Vec<Index> = family.ground_set().into_iter().collect();
    if ground.len() > MAX_SUPPORT_GROUND {
        return Err(Error::size_guard("ground set", ground.len() as u128, MAX_SUPPORT_GROUND as u128));
    }
    let binaries: Vec<usize> = f.binaries().collect();
    if binaries.len() > MAX_SUPPORT_BINARIES {
        return Err(Error::size_guard("binaries", binaries.len() as u128, MAX_SUPPORT_BINARIES as u128));
    }
    if ground.iter().any(|v| !f.metadata.lambda.contains_key(v))
        || f.metadata.lambda.keys().any(|v| !family.ground_set().contains(v))
    {
        return Err(Error::InvalidFormulation("lambda variables do not match the family".into()));
    }
    let shape = Shape::new(f, &binaries);
    let supports: Vec<u32> = (1u32..1 << ground.len()).collect();
    let found = supports
        .par_iter()
        .map(|&mask| -> Result<Option<SupportMismatch>> {
            let support: IndexSet = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let family_feasible = family.is_feasible_set(&support)?;
            let formulation_feasible = shape.support_feasible(f, &support);
            Ok((family_feasible != formulation_feasible).then_some(SupportMismatch {
                support,
                family_feasible,
                formulation_feasible,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

/// Splits variables into λ, binaries and auxiliaries for substitution.
struct Shape {
    binaries: Vec<usize>,
    /// Position among auxiliaries, `None` for fixed variables.
    aux_pos: Vec<Option<usize>>,
    aux: Vec<usize>,
}

impl Shape {
    fn new(f: &LinearFormulation, binaries: &[usize]) -> Self {
        let lam: BTreeSet<usize> = f.metadata.lambda.values().copied().collect();
        let mut aux = Vec::new();
        let aux_pos = f
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.kind == VarKind::Binary || lam.contains(&i) {
                    None
                } else {
                    aux.push(i);
                    Some(aux.len() - 1)
                }
            })
            .collect();
        Shape {
            binaries: binaries.to_vec(),
            aux_pos,
            aux,
        }
    }

    fn support_feasible(&self, f: &LinearFormulation, support: &IndexSet) -> bool {
        let mass = Rational::new(One::one(), (support.len() as i64).into());
        let mut fixed: Vec<Option<Rational>> = vec![None; f.variables.len()];
        for (v, &i) in &f.metadata.lambda {
            fixed[i] = Some(if support.contains(v) { mass.clone() } else { int(0) });
        }
        (0u32..1 << self.binaries.len()).any(|z| {
            for (bit, &i) in self.binaries.iter().enumerate() {
                fixed[i] = Some(int(i64::from(z >> bit & 1)));
            }
            self.system(f, &fixed).is_some_and(|s| s.is_feasible())
        })
    }

    /// System over the auxiliaries, or `None` if fixed values break a bound.
    fn system(&self, f: &LinearFormulation, fixed: &[Option<Rational>]) -> Option<LinearSystem> {
        for (v, val) in f.variables.iter().zip(fixed) {
            if let Some(x) = val {
                if v.lower.as_ref().is_some_and(|l| x < l) || v.upper.as_ref().is_some_and(|u| x > u) {
                    return None;
                }
            }
        }
        let n = self.aux.len();
        let mut sys = LinearSystem::new(n);
        for c in &f.constraints {
            let mut a = vec![int(0); n];
            let mut b = c.rhs.clone();
            for t in &c.terms {
                match (&fixed[t.var], self.aux_pos[t.var]) {
                    (Some(x), _) => b -= &t.coef * x,
                    (None, Some(p)) => a[p] += &t.coef,
                    (None, None) => unreachable!("every variable is fixed or auxiliary"),
                }
            }
            sys.push(a, c.sense, b);
        }
        for (p, &i) in self.aux.iter().enumerate() {
            let v = &f.variables[i];
            let mut unit = vec![int(0); n];
            unit[p] = int(1);
            if let Some(l) = &v.lower {
                sys.push(unit.clone(), Sense::Ge, l.clone());
            }
            if let Some(u) = &v.upper {
                sys.push(unit, Sense::Le, u.clone());
            }
        }
        Some(sys)
    }
}

type Rows = Vec<(Vec<Rational>, Rational)>;

/// Rows of the LP relaxation, bounds included, as `(a, sense, b)`.
fn relaxation_rows(f: &LinearFormulation) -> (Rows, Rows) {
    let n = f.variables.len();
    let mut sys = LinearSystem::new(n);
    for c in &f.constraints {
        let mut a = vec![int(0); n];
        for t in &c.terms {
            a[t.var] += &t.coef;
        }
        sys.push(a, c.sense, c.rhs.clone());
    }
    for (i, v) in f.variables.iter().enumerate() {
        let mut unit = vec![int(0); n];
        unit[i] = int(1);
        if let Some(l) = &v.lower {
            sys.push(unit.clone(), Sense::Ge, l.clone());
        }
        if let Some(u) = &v.upper {
            sys.push(unit, Sense::Le, u.clone());
        }
    }
    (sys.eq, sys.le)
}

/// Row-reduces `rows | rhs` and returns the unique solution if the system is
/// consistent with full column rank.
fn unique_solution(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, n: usize) -> Option<Vec<Rational>> {
    let mut r = 0;
    for c in 0..n {
        let p = (r..rows.len()).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, pivot_rhs) = (rows[r].clone(), rhs[r].clone());
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
                rhs[i] -= &f * pivot_rhs;
            }
        }
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(rhs[..n].to_vec())
}

fn rank(rows: &[Vec<Rational>], n: usize) -> usize {
    let mut rows = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Independent subset of `rows` spanning the same space.
fn independent_rows(rows: &[(Vec<Rational>, Rational)], n: usize) -> Vec<(Vec<Rational>, Rational)> {
    let mut kept: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for row in rows {
        let mut trial: Vec<Vec<Rational>> = kept.iter().map(|r| r.0.clone()).collect();
        trial.push(row.0.clone());
        if rank(&trial, n) == trial.len() {
            kept.push(row.clone());
        }
    }
    kept
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// All vertices of the LP relaxation, sorted.
///
/// Fails with [`Error::Unbounded`] if the relaxation is nonempty and
/// unbounded.
pub fn lp_vertices(f: &LinearFormulation) -> Result<Vec<Vec<Rational>>> {
    let n = f.variables.len();
    if n > MAX_VERTEX_VARIABLES {
        return Err(Error::size_guard("variables", n as u128, MAX_VERTEX_VARIABLES as u128));
    }
    let (eq, le) = relaxation_rows(f);
    let all_eq = eq.clone();
    let eq = independent_rows(&eq, n);
    let free = n.checked_sub(eq.len()).expect("independent rows are at most n");
    let bases = crate::cdc::binomial(le.len() as u128, free as u128);
    if bases > MAX_BASES {
        return Err(Error::size_guard("bases", bases, MAX_BASES));
    }
    let feasible = |x: &[Rational]| {
        all_eq.iter().all(|(a, b)| dot(a, x) == *b) && le.iter().all(|(a, b)| dot(a, x) <= *b)
    };
    let vertices: BTreeSet<Vec<Rational>> = (0..le.len())
        .combinations(free)
        .par_bridge()
        .filter_map(|pick| {
            let mut rows: Vec<Vec<Rational>> = eq.iter().map(|r| r.0.clone()).collect();
            let mut rhs: Vec<Rational> = eq.iter().map(|r| r.1.clone()).collect();
            for &i in &pick {
                rows.push(le[i].0.clone());
                rhs.push(le[i].1.clone());
            }
            unique_solution(rows, rhs, n).filter(|x| feasible(x))
        })
        .collect();
    if !vertices.is_empty() && has_recession_direction(&eq, &le, n) {
        return Err(Error::Unbounded);
    }
    Ok(vertices.into_iter().collect())
}

/// Nonzero `d` with `E d = 0` and `A d ≤ 0`.
fn has_recession_direction(eq: &[(Vec<Rational>, Rational)], le: &[(Vec<Rational>, Rational)], n: usize) -> bool {
    let all: Vec<Vec<Rational>> = eq.iter().chain(le).map(|r| r.0.clone()).collect();
    if rank(&all, n) < n {
        return true;
    }
    if n == 0 {
        return false;
    }
    let need = n - 1 - eq.len().min(n - 1);
    (0..le.len()).combinations(need).any(|pick| {
        let rows: Vec<Vec<Rational>> = eq.iter().map(|r| r.0.clone()).chain(pick.iter().map(|&i| le[i].0.clone())).collect();
        if rank(&rows, n) != n - 1 {
            return false;
        }
        let d = null_vector(&rows, n);
        [d.clone(), d.into_iter().map(|x| -x).collect::<Vec<_>>()]
            .iter()
            .any(|d| le.iter().all(|(a, _)| !dot(a, d).is_positive()))
    })
}

/// A nonzero vector in the nullspace of a rank `n − 1` matrix.
fn null_vector(rows: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    for c in 0..n {
        let mut unit = vec![int(0); n];
        unit[c] = int(1);
        let mut trial = rows.to_vec();
        trial.push(unit.clone());
        let mut rhs = vec![int(0); rows.len()];
        rhs.push(int(1));
        if let Some(x) = unique_solution(trial, rhs, n) {
            return x;
        }
    }
    unreachable!("rank n − 1 leaves a one-dimensional nullspace")
}

/// True iff every relaxation vertex is integral in all binary coordinates.
pub fn is_ideal(f: &LinearFormulation) -> Result<bool> {
    Ok(fractional_vertices(f)?.is_empty())
}

/// Relaxation vertices with some fractional binary coordinate.
pub fn fractional_vertices(f: &LinearFormulation) -> Result<Vec<Vec<Rational>>> {
    let binaries: Vec<usize> = f.binaries().collect();
    Ok(lp_vertices(f)?
        .into_iter()
        .filter(|x| binaries.iter().any(|&i| !x[i].is_integer()))
        .collect())
}

/// Minimum number of bicliques covering `g`, searched exactly.
///
/// Fails if the optimum exceeds `upper`.
pub fn min_biclique_cover_exact(g: &ConflictGraph, upper: usize) -> Result<usize> {
    let edges: Vec<(Index, Index)> = g.edges().iter().copied().collect();
    let m = edges.len();
    if m > MAX_COVER_EDGES {
        return Err(Error::size_guard("edges", m as u128, MAX_COVER_EDGES as u128));
    }
    let full = (1usize << m) - 1;
    let ok: Vec<bool> = (0..=full).map(|mask| group_fits_biclique(g, &edges, mask)).collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let group = sub | low;
            if ok[group] && best[mask ^ group] != usize::MAX {
                best[mask] = best[mask].min(best[mask ^ group] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let answer = best[full];
    if answer > upper {
        return Err(Error::InvalidParameters(format!(
            "minimum biclique cover has size {answer}, above the limit {upper}"
        )));
    }
    Ok(answer)
}

/// Whether the selected edges lie inside a single biclique of `g`.
fn group_fits_biclique(g: &ConflictGraph, edges: &[(Index, Index)], mask: usize) -> bool {
    let chosen: Vec<(Index, Index)> = edges
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    let mut color: BTreeMap<Index, (usize, bool)> = BTreeMap::new();
    let mut components = 0;
    let vertices: BTreeSet<Index> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect();
    for &start in &vertices {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, (components, false));
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let (c, side) = color[&x];
            for &(u, v) in &chosen {
                let y = if u == x {
                    v
                } else if v == x {
                    u
                } else {
                    continue;
                };
                match color.get(&y) {
                    Some(&(_, s)) if s == side => return false,
                    Some(_) => {}
                    None => {
                        color.insert(y, (c, !side));
                        stack.push(y);
                    }
                }
            }
        }
        components += 1;
    }
    if components == 0 {
        return true;
    }
    (0u32..1 << (components - 1)).any(|flip| {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (&x, &(c, side)) in &color {
            let side = side ^ (flip >> c & 1 == 1);
            if side {
                b.push(x);
            } else {
                a.push(x);
            }
        }
        a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::heuristic_cover;
    use crate::formulate::{build_ib_from_cover, build_naive, build_sosk, build_sosk_windows, LinearFormulation};
    use crate::rational::frac;

    fn fam(sets: &[&[Index]]) -> IndexSetFamily {
        IndexSetFamily::new(sets.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn tree_counts_match_cayley() {
        for d in 1..=6usize {
            let expected = if d < 2 { 1 } else { d.pow(d as u32 - 2) };
            let trees = all_trees(d);
            assert_eq!(trees.len(), expected);
            assert_eq!(trees.iter().collect::<BTreeSet<_>>().len(), expected);
        }
    }

    #[test]
    fn brute_force_examples() {
        let path = fam(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        let t = brute_admits_junction_tree(&path).unwrap().unwrap();
        assert_eq!(t.edge_pairs(), [(0, 1), (1, 2)].into());
        assert!(brute_admits_junction_tree(&fam(&[&[1, 2], &[2, 3], &[1, 3]])).unwrap().is_none());
        let single = brute_admits_junction_tree(&fam(&[&[1]])).unwrap().unwrap();
        assert!(single.edges().is_empty());
        let big: Vec<Vec<Index>> = (1..=8).map(|i| vec![i]).collect();
        assert!(matches!(
            brute_admits_junction_tree(&IndexSetFamily::new(big).unwrap()),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn fm_small_systems() {
        // x + y <= 1, x >= 1, y >= 1 is empty
        let mut s = LinearSystem::new(2);
        s.push(vec![int(1), int(1)], Sense::Le, int(1));
        s.push(vec![int(1), int(0)], Sense::Ge, int(1));
        s.push(vec![int(0), int(1)], Sense::Ge, int(1));
        assert!(!s.is_feasible());
        let mut s = LinearSystem::new(2);
        s.push(vec![int(1), int(1)], Sense::Eq, int(1));
        s.push(vec![int(1), int(-1)], Sense::Eq, frac(1, 3));
        s.push(vec![int(0), int(1)], Sense::Ge, int(0));
        assert!(s.is_feasible());
        let mut s = LinearSystem::new(1);
        s.push(vec![int(0)], Sense::Eq, int(1));
        assert!(!s.is_feasible());
    }

    #[test]
    fn support_validity_examples() {
        let fam5 = crate::sosk::sosk_family(5, 2).unwrap();
        assert!(support_validity(&build_sosk(5, 2).unwrap(), &fam5).unwrap());
        let mut f = build_ib_from_cover(&fam5, &heuristic_cover(&fam5).unwrap()).unwrap();
        assert!(support_validity(&f, &fam5).unwrap());
        // drop the second biclique's rows: {1,3} becomes reachable
        f.constraints.retain(|c| !c.name.ends_with("_2"));
        f.variables.pop();
        let m = support_mismatch(&f, &fam5).unwrap().unwrap();
        assert!(!m.family_feasible && m.formulation_feasible);
    }

    #[test]
    fn simplex_vertices() {
        let mut f = LinearFormulation::new("", None);
        let v: Vec<usize> = (0..3).map(|i| f.add_nonneg(format!("x{i}"))).collect();
        f.add_constraint("s", v.iter().map(|&i| (i, int(1))), Sense::Eq, int(1));
        let verts = lp_vertices(&f).unwrap();
        assert_eq!(verts.len(), 3);
        for x in &verts {
            assert_eq!(x.iter().filter(|c| c.is_one()).count(), 1);
        }
    }

    #[test]
    fn unbounded_is_rejected() {
        let mut f = LinearFormulation::new("", None);
        f.add_nonneg("x");
        assert!(matches!(lp_vertices(&f), Err(Error::Unbounded)));
        let mut f = LinearFormulation::new("", None);
        let x = f.add_free("x");
        f.add_constraint("r", [(x, int(1))], Sense::Le, int(3));
        assert!(matches!(lp_vertices(&f), Err(Error::Unbounded)));
    }

    #[test]
    fn empty_relaxation_has_no_vertices() {
        let mut f = LinearFormulation::new("", None);
        let x = f.add_nonneg("x");
        f.add_constraint("r", [(x, int(1))], Sense::Le, int(-1));
        assert!(lp_vertices(&f).unwrap().is_empty());
    }

    #[test]
    fn idealness_examples() {
        assert!(is_ideal(&build_sosk(3, 2).unwrap()).unwrap());
        assert!(is_ideal(&build_sosk(5, 2).unwrap()).unwrap());
        // outcome only recorded
        let _ = is_ideal(&build_sosk_windows(4, 2).unwrap()).unwrap();
        let _ = fractional_vertices(&build_naive(&fam(&[&[1, 2], &[2, 3], &[1, 3]]))).unwrap();
    }

    #[test]
    fn exact_cover_examples() {
        let g = crate::sosk::sosk_family(5, 2).unwrap().conflict_graph();
        assert_eq!(min_biclique_cover_exact(&g, 6).unwrap(), 2);
        assert!(min_biclique_cover_exact(&g, 1).is_err());
        assert_eq!(min_biclique_cover_exact(&ConflictGraph::default(), 0).unwrap(), 0);
        let one = ConflictGraph::from_edges([1, 2], [(1, 2)]).unwrap();
        assert_eq!(min_biclique_cover_exact(&one, 3).unwrap(), 1);
        // a triangle needs two bicliques
        let tri = ConflictGraph::from_edges([1, 2, 3], [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(min_biclique_cover_exact(&tri, 3).unwrap(), 2);
    }
}
