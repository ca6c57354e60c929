//! Exact-rational MIP formulation IR, the formulation builders and a CPLEX LP
//! writer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cdc::{Index, IndexSetFamily};
use crate::cover::{heuristic_cover, merge_cover, separation_levels, verify_cover, BalancedCut, Biclique, BicliqueCover};
use crate::error::{Error, Result};
use crate::jtree::admits_junction_tree;
use crate::rational::{self, int, Rational};
use crate::sosk;
use crate::transform::{build_equivalent_family, TransformResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Continuous,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    /// `None` is −∞.
    #[serde(with = "rational::serde_opt_string")]
    pub lower: Option<Rational>,
    /// `None` is +∞.
    #[serde(with = "rational::serde_opt_string")]
    pub upper: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub var: usize,
    #[serde(with = "rational::serde_string")]
    pub coef: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<Term>,
    pub sense: Sense,
    #[serde(with = "rational::serde_string")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub builder: String,
    pub family_digest: String,
    /// Continuous variables needed beyond one per ground index.
    pub aux_continuous: usize,
    /// Variable position of `λ_v` for each original index `v`.
    pub lambda: BTreeMap<Index, usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LinearFormulation {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub metadata: Metadata,
}

impl LinearFormulation {
    pub fn new(builder: &str, family: Option<&IndexSetFamily>) -> Self {
        LinearFormulation {
            variables: Vec::new(),
            constraints: Vec::new(),
            metadata: Metadata {
                builder: builder.to_string(),
                family_digest: family.map(IndexSetFamily::digest).unwrap_or_default(),
                aux_continuous: 0,
                lambda: BTreeMap::new(),
            },
        }
    }

    /// Continuous variable bounded below by 0.
    pub fn add_nonneg(&mut self, name: impl Into<String>) -> usize {
        self.add_variable(name, VarKind::Continuous, Some(int(0)), None)
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> usize {
        self.add_variable(name, VarKind::Binary, Some(int(0)), Some(int(1)))
    }

    pub fn add_free(&mut self, name: impl Into<String>) -> usize {
        self.add_variable(name, VarKind::Continuous, None, None)
    }

    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        kind: VarKind,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> usize {
        self.variables.push(Variable {
            name: name.into(),
            kind,
            lower,
            upper,
        });
        self.variables.len() - 1
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        sense: Sense,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint {
            name: name.into(),
            terms: terms
                .into_iter()
                .map(|(var, coef)| Term { var, coef })
                .collect(),
            sense,
            rhs,
        });
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn binaries(&self) -> impl Iterator<Item = usize> + '_ {
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VarKind::Binary)
            .map(|(i, _)| i)
    }

    pub fn binary_count(&self) -> usize {
        self.binaries().count()
    }

    pub fn continuous_count(&self) -> usize {
        self.variables.len() - self.binary_count()
    }

    /// Variables whose name starts with `prefix` (e.g. `"gam_"`).
    pub fn count_prefixed(&self, prefix: &str) -> usize {
        self.variables.iter().filter(|v| v.name.starts_with(prefix)).count()
    }

    pub fn inequality_count(&self) -> usize {
        self.constraints.iter().filter(|c| c.sense != Sense::Eq).count()
    }

    /// Checks names, references and binary bounds.
    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for v in &self.variables {
            if !names.insert(v.name.as_str()) {
                return Err(Error::InvalidFormulation(format!("duplicate variable {}", v.name)));
            }
            if v.kind == VarKind::Binary && (v.lower != Some(int(0)) || v.upper != Some(int(1))) {
                return Err(Error::InvalidFormulation(format!("binary {} must have bounds [0,1]", v.name)));
            }
            if let (Some(l), Some(u)) = (&v.lower, &v.upper) {
                if l > u {
                    return Err(Error::InvalidFormulation(format!("empty bounds on {}", v.name)));
                }
            }
        }
        let mut rows = BTreeSet::new();
        for c in &self.constraints {
            if !rows.insert(c.name.as_str()) {
                return Err(Error::InvalidFormulation(format!("duplicate constraint {}", c.name)));
            }
            if let Some(t) = c.terms.iter().find(|t| t.var >= self.variables.len()) {
                return Err(Error::InvalidFormulation(format!(
                    "constraint {} references undeclared variable {}",
                    c.name, t.var
                )));
            }
        }
        for &i in self.metadata.lambda.values() {
            if i >= self.variables.len() {
                return Err(Error::InvalidFormulation("lambda map out of range".into()));
            }
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn add_lambdas(&mut self, family: &IndexSetFamily) {
        for v in family.ground_set() {
            let i = self.add_nonneg(format!("lam_{v}"));
            self.metadata.lambda.insert(v, i);
        }
    }

    fn lam(&self, v: Index) -> usize {
        self.metadata.lambda[&v]
    }

    fn add_simplex(&mut self, vars: impl IntoIterator<Item = usize>) {
        self.add_constraint("simplex", vars.into_iter().map(|i| (i, int(1))), Sense::Eq, int(1));
    }
}

fn ones(vars: impl IntoIterator<Item = usize>) -> Vec<(usize, Rational)> {
    vars.into_iter().map(|i| (i, int(1))).collect()
}

/// Non-extended formulation with one binary per set.
pub fn build_naive(family: &IndexSetFamily) -> LinearFormulation {
    let mut f = LinearFormulation::new("naive", Some(family));
    f.add_lambdas(family);
    let z: Vec<usize> = (1..=family.len()).map(|s| f.add_binary(format!("z_{s}"))).collect();
    for v in family.ground_set() {
        let mut terms = vec![(f.lam(v), int(1))];
        terms.extend(
            family
                .sets()
                .iter()
                .zip(&z)
                .filter(|(s, _)| s.contains(&v))
                .map(|(_, &zs)| (zs, int(-1))),
        );
        f.add_constraint(format!("link_{v}"), terms, Sense::Le, int(0));
    }
    f.add_constraint("one_set", ones(z), Sense::Eq, int(1));
    let lam: Vec<usize> = f.metadata.lambda.values().copied().collect();
    f.add_simplex(lam);
    f
}

/// Disaggregated convex-hull formulation with a copy of `λ` per set.
pub fn build_jeroslow_lowe(family: &IndexSetFamily) -> LinearFormulation {
    let mut f = LinearFormulation::new("jeroslow-lowe", Some(family));
    f.add_lambdas(family);
    let gam = add_gammas(&mut f, family);
    let z: Vec<usize> = (1..=family.len()).map(|s| f.add_binary(format!("z_{s}"))).collect();
    link_lambda_to_gammas(&mut f, family, &gam);
    for (s, set_gam) in gam.iter().enumerate() {
        let mut terms = vec![(z[s], int(1))];
        terms.extend(set_gam.values().map(|&g| (g, int(-1))));
        f.add_constraint(format!("pick_{}", s + 1), terms, Sense::Eq, int(0));
    }
    f.add_constraint("one_set", ones(z), Sense::Eq, int(1));
    f.metadata.aux_continuous = family.total_size();
    f
}

fn add_gammas(f: &mut LinearFormulation, family: &IndexSetFamily) -> Vec<BTreeMap<Index, usize>> {
    family
        .sets()
        .iter()
        .enumerate()
        .map(|(s, set)| {
            set.iter()
                .map(|&v| (v, f.add_nonneg(format!("gam_{}_{v}", s + 1))))
                .collect()
        })
        .collect()
}

fn link_lambda_to_gammas(f: &mut LinearFormulation, family: &IndexSetFamily, gam: &[BTreeMap<Index, usize>]) {
    for v in family.ground_set() {
        let mut terms = vec![(f.lam(v), int(1))];
        terms.extend(gam.iter().filter_map(|g| g.get(&v)).map(|&g| (g, int(-1))));
        f.add_constraint(format!("link_{v}"), terms, Sense::Eq, int(0));
    }
}

/// How set ordinals are turned into distinct binary codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CodeScheme {
    #[default]
    Binary,
    ReflectedGray,
}

impl CodeScheme {
    /// `d` codes of width `⌈log₂ d⌉`.
    pub fn codes(self, d: usize) -> Vec<Vec<bool>> {
        let r = ceil_log2(d as u64) as usize;
        (0..d)
            .map(|i| {
                let c = match self {
                    CodeScheme::Binary => i,
                    CodeScheme::ReflectedGray => i ^ (i >> 1),
                };
                (0..r).map(|bit| (c >> bit) & 1 == 1).collect()
            })
            .collect()
    }
}

/// Logarithmic embedding formulation using the given scheme's codes.
pub fn build_log_embedding(family: &IndexSetFamily, scheme: CodeScheme) -> LinearFormulation {
    build_log_embedding_with_codes(family, &scheme.codes(family.len()))
        .expect("generated codes are distinct and wide enough")
}

/// Logarithmic embedding with caller-supplied codes, one per set.
pub fn build_log_embedding_with_codes(family: &IndexSetFamily, codes: &[Vec<bool>]) -> Result<LinearFormulation> {
    let d = family.len();
    if codes.len() != d {
        return Err(Error::InvalidParameters(format!("{} codes for {} sets", codes.len(), d)));
    }
    let r = codes.first().map_or(0, Vec::len);
    if codes.iter().any(|c| c.len() != r) {
        return Err(Error::InvalidParameters("codes have different lengths".into()));
    }
    if (r as u32) < ceil_log2(d as u64) {
        return Err(Error::InvalidParameters(format!("code length {r} is too short for {d} sets")));
    }
    if codes.iter().collect::<BTreeSet<_>>().len() != d {
        return Err(Error::InvalidParameters("codes are not distinct".into()));
    }
    let mut f = LinearFormulation::new("log-embedding", Some(family));
    f.add_lambdas(family);
    let gam = add_gammas(&mut f, family);
    let z: Vec<usize> = (1..=r).map(|t| f.add_binary(format!("z_{t}"))).collect();
    link_lambda_to_gammas(&mut f, family, &gam);
    f.add_simplex(gam.iter().flat_map(|g| g.values().copied()).collect::<Vec<_>>());
    for (t, &zt) in z.iter().enumerate() {
        let mut terms: Vec<(usize, Rational)> = gam
            .iter()
            .zip(codes)
            .filter(|(_, c)| c[t])
            .flat_map(|(g, _)| g.values().map(|&x| (x, int(1))))
            .collect();
        terms.push((zt, int(-1)));
        f.add_constraint(format!("code_{}", t + 1), terms, Sense::Eq, int(0));
    }
    f.metadata.aux_continuous = family.total_size();
    Ok(f)
}

/// Independent-branching formulation from a verified biclique cover.
///
/// The family must also be pairwise IB-representable, otherwise the cover
/// constraints describe a strictly larger set.
pub fn build_ib_from_cover(family: &IndexSetFamily, cover: &BicliqueCover) -> Result<LinearFormulation> {
    if !verify_cover(&family.conflict_graph(), cover) {
        return Err(Error::InvalidCover("cover does not match the conflict graph".into()));
    }
    if admits_junction_tree(family).is_none() && !family.is_pairwise_ib_representable()? {
        return Err(Error::NotPairwiseIb);
    }
    Ok(ib_rows(family, cover, "ib"))
}

fn ib_rows(family: &IndexSetFamily, cover: &BicliqueCover, builder: &str) -> LinearFormulation {
    let mut f = LinearFormulation::new(builder, Some(family));
    f.add_lambdas(family);
    let z: Vec<usize> = (1..=cover.len()).map(|j| f.add_binary(format!("z_{j}"))).collect();
    let lam = f.metadata.lambda.clone();
    add_cover_rows(&mut f, cover, &z, &lam);
    f.add_simplex(lam.values().copied().collect::<Vec<_>>());
    f
}

fn add_cover_rows(f: &mut LinearFormulation, cover: &BicliqueCover, z: &[usize], vars: &BTreeMap<Index, usize>) {
    for (j, (bc, &zj)) in cover.iter().zip(z).enumerate() {
        let mut left: Vec<(usize, Rational)> = bc.a.iter().map(|v| (vars[v], int(1))).collect();
        left.push((zj, int(-1)));
        f.add_constraint(format!("cover_a_{}", j + 1), left, Sense::Le, int(0));
        let mut right: Vec<(usize, Rational)> = bc.b.iter().map(|v| (vars[v], int(1))).collect();
        right.push((zj, int(1)));
        f.add_constraint(format!("cover_b_{}", j + 1), right, Sense::Le, int(1));
    }
}

/// Ideal SOS-k formulation from the closed-form cover.
pub fn build_sosk(n: u32, k: u32) -> Result<LinearFormulation> {
    let family = sosk::sosk_family(n, k)?;
    let cover = sosk::sosk_cover(n, k)?;
    debug_assert!(verify_cover(&family.conflict_graph(), &cover));
    Ok(ib_rows(&family, &cover, "sosk"))
}

/// Window-indicator SOS-k formulation with `n − k + 1` binaries.
pub fn build_sosk_windows(n: u32, k: u32) -> Result<LinearFormulation> {
    let family = sosk::sosk_family(n, k)?;
    let windows = n - k + 1;
    let mut f = LinearFormulation::new("windows", Some(&family));
    f.add_lambdas(&family);
    let z: Vec<usize> = (1..=windows).map(|i| f.add_binary(format!("z_{i}"))).collect();
    for j in 1..=n {
        let lo = j.saturating_sub(k - 1).max(1);
        let hi = j.min(windows);
        let mut terms = vec![(f.lam(j), int(1))];
        terms.extend((lo..=hi).map(|i| (z[(i - 1) as usize], int(-1))));
        f.add_constraint(format!("window_{j}"), terms, Sense::Le, int(0));
    }
    let lam: Vec<usize> = f.metadata.lambda.values().copied().collect();
    f.add_simplex(lam);
    f.add_constraint("one_window", ones(z), Sense::Eq, int(1));
    Ok(f)
}

fn lifted_rows(
    family: &IndexSetFamily,
    t: &TransformResult,
    cover: &BicliqueCover,
    builder: &str,
    prefix: &str,
) -> LinearFormulation {
    let mut f = LinearFormulation::new(builder, Some(family));
    f.add_lambdas(family);
    let copies: BTreeMap<Index, usize> = t
        .family_prime
        .ground_set()
        .into_iter()
        .map(|u| (u, f.add_nonneg(format!("{prefix}{u}"))))
        .collect();
    let z: Vec<usize> = (1..=cover.len()).map(|j| f.add_binary(format!("z_{j}"))).collect();
    for v in family.ground_set() {
        let mut terms = vec![(f.lam(v), int(1))];
        terms.extend(
            t.mapping
                .forward
                .iter()
                .filter(|&(_, &orig)| orig == v)
                .map(|(u, _)| (copies[u], int(-1))),
        );
        f.add_constraint(format!("link_{v}"), terms, Sense::Eq, int(0));
    }
    add_cover_rows(&mut f, cover, &z, &copies);
    f.add_simplex(copies.values().copied().collect::<Vec<_>>());
    f.metadata.aux_continuous = t.extra_continuous;
    f
}

/// Lifted formulation over a junction-tree-admitting rewrite of the family.
pub fn build_extended_jtree(family: &IndexSetFamily) -> Result<LinearFormulation> {
    let t = build_equivalent_family(family, false);
    let cover = heuristic_cover(&t.family_prime)?;
    Ok(lifted_rows(family, &t, &cover, "extended-jtree", "lamp_"))
}

/// Lifted formulation over pairwise disjoint copies with `⌈log₂ d⌉` binaries.
pub fn build_extended_disjoint(family: &IndexSetFamily) -> Result<LinearFormulation> {
    let t = build_equivalent_family(family, true);
    let cover = level_merged_cover(&t)?;
    Ok(lifted_rows(family, &t, &cover, "extended-disjoint", "lampp_"))
}

/// Separation bicliques unioned level by level.
fn level_merged_cover(t: &TransformResult) -> Result<BicliqueCover> {
    let levels = separation_levels(&t.family_prime, &t.tree, &BalancedCut)?;
    let mut by_level: BTreeMap<usize, Biclique> = BTreeMap::new();
    for lb in levels {
        let slot = by_level.entry(lb.level).or_insert_with(|| Biclique::new([], []));
        slot.a.extend(lb.biclique.a);
        slot.b.extend(lb.biclique.b);
    }
    let merged: Vec<Biclique> = by_level.into_values().collect();
    let g = t.family_prime.conflict_graph();
    if !verify_cover(&g, &BicliqueCover::new(merged.clone())) {
        // never expected for disjoint sets; fall back to greedy merging
        return Ok(merge_cover(&merged, &g));
    }
    Ok(BicliqueCover::new(merged))
}

/// Piecewise-linear `y = f(x)` through the given breakpoints via SOS2.
pub fn build_pwl(breakpoints: &[(Rational, Rational)]) -> Result<LinearFormulation> {
    let n = breakpoints.len();
    if n < 2 {
        return Err(Error::InvalidParameters("need at least two breakpoints".into()));
    }
    if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::InvalidParameters("breakpoint x values must be strictly increasing".into()));
    }
    let n = u32::try_from(n).map_err(|_| Error::InvalidParameters("too many breakpoints".into()))?;
    let family = sosk::sosk_family(n, 2)?;
    let cover = if n > 2 { sosk::sosk_cover(n, 2)? } else { BicliqueCover::default() };
    let mut f = ib_rows(&family, &cover, "pwl");
    let x = f.add_free("x");
    let y = f.add_free("y");
    let mut xs = vec![(x, int(1))];
    let mut ys = vec![(y, int(1))];
    for (v, (bx, by)) in (1..=n).zip(breakpoints) {
        let lam = f.lam(v);
        if !bx.is_zero() {
            xs.push((lam, -bx.clone()));
        }
        if !by.is_zero() {
            ys.push((lam, -by.clone()));
        }
    }
    f.add_constraint("pwl_x", xs, Sense::Eq, int(0));
    f.add_constraint("pwl_y", ys, Sense::Eq, int(0));
    Ok(f)
}

pub(crate) fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

fn sanitize(name: &str) -> String {
    let mut s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '.' { c } else { '_' })
        .collect();
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        s.insert(0, '_');
    }
    s
}

fn number(r: &Rational) -> Result<String> {
    rational::to_decimal(r).ok_or_else(|| Error::Lp(format!("bound {} has no exact decimal form", rational::to_string(r))))
}

/// CPLEX LP text with a zero objective.
///
/// Rows containing a non-terminating coefficient are scaled by the LCM of
/// their denominators so every number is written exactly.
pub fn write_lp(f: &LinearFormulation) -> Result<String> {
    f.validate()?;
    let mut names = Vec::with_capacity(f.variables.len());
    let mut seen = BTreeSet::new();
    for v in &f.variables {
        let s = sanitize(&v.name);
        if !seen.insert(s.clone()) {
            return Err(Error::Lp(format!("variable name collision on {s}")));
        }
        names.push(s);
    }
    let mut row_names = BTreeSet::new();

    let mut out = String::new();
    if !f.metadata.builder.is_empty() {
        let _ = writeln!(out, "\\ builder: {}", f.metadata.builder);
    }
    if !f.metadata.family_digest.is_empty() {
        let _ = writeln!(out, "\\ family: {}", f.metadata.family_digest);
    }
    out.push_str("Minimize\n obj:\nSubject To\n");
    for c in &f.constraints {
        let name = sanitize(&c.name);
        if !row_names.insert(name.clone()) {
            return Err(Error::Lp(format!("constraint name collision on {name}")));
        }
        let terms: Vec<&Term> = c.terms.iter().filter(|t| !t.coef.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::Lp(format!("constraint {name} has no terms")));
        }
        let all_terminating = terms.iter().all(|t| rational::is_terminating(&t.coef)) && rational::is_terminating(&c.rhs);
        let scale = if all_terminating {
            int(1)
        } else {
            Rational::from_integer(rational::lcm_of_denominators(
                terms.iter().map(|t| &t.coef).chain(std::iter::once(&c.rhs)),
            ))
        };
        let _ = write!(out, " {name}:");
        for (i, t) in terms.iter().enumerate() {
            let coef = &t.coef * &scale;
            let sign = if coef.is_negative() { "-" } else if i == 0 { "" } else { "+" };
            let mag = coef.abs();
            let mag = if mag.is_one() { String::new() } else { format!("{} ", number(&mag)?) };
            if sign.is_empty() {
                let _ = write!(out, " {mag}{}", names[t.var]);
            } else {
                let _ = write!(out, " {sign} {mag}{}", names[t.var]);
            }
        }
        let _ = writeln!(out, " {} {}", c.sense.symbol(), number(&(&c.rhs * &scale))?);
    }

    let bounds: Vec<String> = f
        .variables
        .iter()
        .zip(&names)
        .filter(|(v, _)| v.kind == VarKind::Continuous)
        .map(|(v, name)| {
            Ok(match (&v.lower, &v.upper) {
                (None, None) => format!(" {name} free"),
                (Some(l), None) => format!(" {name} >= {}", number(l)?),
                (None, Some(u)) => format!(" -inf <= {name} <= {}", number(u)?),
                (Some(l), Some(u)) if l == u => format!(" {name} = {}", number(l)?),
                (Some(l), Some(u)) => format!(" {} <= {name} <= {}", number(l)?, number(u)?),
            })
        })
        .collect::<Result<_>>()?;
    if !bounds.is_empty() {
        out.push_str("Bounds\n");
        for b in bounds {
            out.push_str(&b);
            out.push('\n');
        }
    }
    let binaries: Vec<&String> = f.binaries().map(|i| &names[i]).collect();
    if !binaries.is_empty() {
        out.push_str("Binaries\n");
        for b in binaries {
            let _ = writeln!(out, " {b}");
        }
    }
    out.push_str("End\n");
    Ok(out)
}
