//! Command-line front end. JSON goes to stdout (or `--out`), diagnostics to
//! stderr. Exit codes: 0 ok, 2 input error, 3 size guard, 4 invariant
//! violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cdc::{IndexSetFamily, DEFAULT_MAX_CANDIDATES};
use crate::cover::heuristic_cover;
use crate::error::{Error, Result};
use crate::formulate::{self, CodeScheme, LinearFormulation};
use crate::geom::{dual_graph, partition_to_cdc, savings_report, PlanarPartition};
use crate::jtree::{admits_junction_tree, intersection_graph};
use crate::transform::{build_equivalent_family, variable_accounting};
use crate::{oracle, random, sosk};

#[derive(Debug, Parser)]
#[command(name = "cdc-jtree", version, about = "Junction trees, biclique covers and MIP formulations for disjunctive constraints")]
pub struct Cli {
    /// Render reports as aligned text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Largest ground set accepted.
    #[arg(long, global = true, default_value_t = 128)]
    pub max_ground: usize,
    /// Largest number of sets accepted.
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_sets: usize,
    /// Worker threads for oracle sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural report on a family.
    Analyze(InputArgs),
    /// Biclique cover of the conflict graph.
    Cover {
        #[command(flatten)]
        input: InputArgs,
        /// Also compute the exact minimum size (tiny graphs only).
        #[arg(long)]
        exact: bool,
    },
    /// Emit a formulation as LP text (or JSON IR with --json).
    Formulate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        formulation: Formulation,
        /// Reflected Gray codes for the log embedding.
        #[arg(long)]
        gray: bool,
        #[arg(long)]
        json: bool,
        /// Run the oracle checks and fail if they do not pass.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a family so that it admits a junction tree.
    Transform {
        #[command(flatten)]
        input: InputArgs,
        /// Use pairwise disjoint copies instead.
        #[arg(long)]
        disjoint: bool,
    },
    /// Closed-form SOS-k cover and bound comparison.
    Sosk {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oracle checks of a formulation against its family.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        formulation: Formulation,
    },
    /// Seeded random family.
    Sample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sets: usize,
        #[arg(long)]
        ground: usize,
        /// Generate a family that admits a junction tree.
        #[arg(long)]
        jtree: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planar partitions.
    #[command(subcommand)]
    Geom(GeomCommand),
}

#[derive(Debug, Subcommand)]
pub enum GeomCommand {
    /// Continuous-variable savings report.
    Savings(GeomArgs),
    /// The disjunctive constraint on extreme points.
    Cdc(GeomArgs),
    /// Dual adjacency graph.
    Dual(GeomArgs),
}

#[derive(Debug, Args)]
pub struct GeomArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Family JSON file (`-` for stdin).
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Family JSON file (`-` for stdin).
    #[arg(long, conflicts_with_all = ["n", "k"])]
    pub input: Option<PathBuf>,
    /// SOS-k size (with --k) instead of a file.
    #[arg(long, requires = "k")]
    pub n: Option<u32>,
    #[arg(long, requires = "n")]
    pub k: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formulation {
    Naive,
    Jl,
    Log,
    Ib,
    Sosk,
    Windows,
    ExtJtree,
    ExtDisjoint,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard { .. } => 3,
        Error::InvariantViolation(_) => 4,
        _ => 2,
    }
}

/// Parses arguments, runs, prints errors, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::NoJunctionTree) {
                eprintln!("hint: use --formulation ext-jtree for families without a junction tree");
            }
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    if cli.jobs > 0 {
        // a second call in the same process keeps the existing pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match &cli.command {
        Command::Analyze(input) => {
            let family = load_family(cli, &input.input)?;
            emit(cli, input.out.as_deref(), &analyze(&family)?)
        }
        Command::Cover { input, exact } => {
            let family = load_family(cli, &input.input)?;
            let cover = heuristic_cover(&family)?;
            let mut report = serde_json::to_value(&cover)?;
            report["size"] = json!(cover.len());
            if *exact {
                let g = family.conflict_graph();
                report["exact_min"] = json!(oracle::min_biclique_cover_exact(&g, cover.len())?);
            }
            emit(cli, input.out.as_deref(), &report)
        }
        Command::Formulate {
            source,
            formulation,
            gray,
            json,
            verify,
            out,
        } => {
            let (family, f) = build(cli, source, *formulation, *gray)?;
            if *verify {
                let v = verify_formulation(&f, &family)?;
                if !v.passed() {
                    return Err(Error::InvariantViolation(format!("verification failed: {}", v.line())));
                }
            }
            let text = if *json { f.to_json_pretty()? + "\n" } else { formulate::write_lp(&f)? };
            write_out(out.as_deref(), &text)
        }
        Command::Transform { input, disjoint } => {
            let family = load_family(cli, &input.input)?;
            let t = build_equivalent_family(&family, *disjoint);
            emit(cli, input.out.as_deref(), &serde_json::to_value(t.to_json())?)
        }
        Command::Sosk { n, k, out } => {
            let cover = sosk::sosk_cover(*n, *k)?;
            let mut report = json!({
                "n": n,
                "k": k,
                "size": cover.len(),
                "bicliques": cover.bicliques,
            });
            if *k >= 2 {
                report["bounds"] = serde_json::to_value(sosk::compare_bounds(*n, *k)?)?;
            }
            emit(cli, out.as_deref(), &report)
        }
        Command::Verify { source, formulation } => {
            let (family, f) = build(cli, source, *formulation, false)?;
            let v = verify_formulation(&f, &family)?;
            println!("{}", v.line());
            if v.passed() {
                Ok(())
            } else {
                Err(Error::InvariantViolation("formulation failed verification".into()))
            }
        }
        Command::Sample {
            seed,
            sets,
            ground,
            jtree,
            out,
        } => {
            let mut rng = random::rng(*seed);
            if *sets == 0 || *ground < *sets || (!*jtree && (*ground >= 32 || (*sets as u64) >= 1u64 << *ground)) {
                return Err(Error::InvalidParameters("unsatisfiable --sets/--ground combination".into()));
            }
            let family = if *jtree {
                random::junction_tree_family(&mut rng, *sets, *ground)
            } else {
                random::random_family(&mut rng, *sets, *ground)
            };
            write_out(out.as_deref(), &(serde_json::to_string(&family.to_json())? + "\n"))
        }
        Command::Geom(g) => {
            let (args, report) = match g {
                GeomCommand::Savings(a) => (a, serde_json::to_value(savings_report(&load_partition(&a.input)?)?)?),
                GeomCommand::Cdc(a) => {
                    let (family, points) = partition_to_cdc(&load_partition(&a.input)?)?;
                    let mut v = serde_json::to_value(family.to_json())?;
                    v["points"] = points
                        .iter()
                        .map(|(i, p)| {
                            (
                                i.to_string(),
                                json!([crate::rational::to_string(&p.x), crate::rational::to_string(&p.y)]),
                            )
                        })
                        .collect::<serde_json::Map<_, _>>()
                        .into();
                    (a, v)
                }
                GeomCommand::Dual(a) => {
                    let dual = dual_graph(&load_partition(&a.input)?);
                    let mut v = serde_json::to_value(&dual)?;
                    v["connected"] = json!(dual.is_connected());
                    (a, v)
                }
            };
            emit(cli, args.out.as_deref(), &report)
        }
    }
}

pub fn analyze(family: &IndexSetFamily) -> Result<Value> {
    let tree = admits_junction_tree(family);
    let pairwise_ib = match tree {
        Some(_) => true,
        None => family.is_pairwise_ib_representable_with_limit(DEFAULT_MAX_CANDIDATES)?,
    };
    let mst = intersection_graph(family).maximum_spanning_tree();
    Ok(json!({
        "sets": family.len(),
        "ground": family.ground_set().len(),
        "irredundant": family.is_irredundant(),
        "pairwise_ib": pairwise_ib,
        "admits_junction_tree": tree.is_some(),
        "mst_weight": mst.weight(),
        "conflict_edges": family.conflict_graph().edge_count(),
        "accounting": serde_json::to_value(variable_accounting(family))?,
    }))
}

fn build(cli: &Cli, source: &SourceArgs, which: Formulation, gray: bool) -> Result<(IndexSetFamily, LinearFormulation)> {
    if let (Some(n), Some(k)) = (source.n, source.k) {
        let family = sosk::sosk_family(n, k)?;
        check_guards(cli, &family)?;
        let f = match which {
            Formulation::Sosk | Formulation::Ib => formulate::build_sosk(n, k)?,
            Formulation::Windows => formulate::build_sosk_windows(n, k)?,
            other => build_for_family(&family, other, gray)?,
        };
        return Ok((family, f));
    }
    let path = source
        .input
        .as_deref()
        .ok_or_else(|| Error::InvalidParameters("give --input or --n/--k".into()))?;
    let family = load_family(cli, path)?;
    let f = build_for_family(&family, which, gray)?;
    Ok((family, f))
}

fn build_for_family(family: &IndexSetFamily, which: Formulation, gray: bool) -> Result<LinearFormulation> {
    let scheme = if gray { CodeScheme::ReflectedGray } else { CodeScheme::Binary };
    Ok(match which {
        Formulation::Naive => formulate::build_naive(family),
        Formulation::Jl => formulate::build_jeroslow_lowe(family),
        Formulation::Log => formulate::build_log_embedding(family, scheme),
        Formulation::Ib => formulate::build_ib_from_cover(family, &heuristic_cover(family)?)?,
        Formulation::ExtJtree => formulate::build_extended_jtree(family)?,
        Formulation::ExtDisjoint => formulate::build_extended_disjoint(family)?,
        Formulation::Sosk | Formulation::Windows => {
            return Err(Error::InvalidParameters("sosk and windows formulations need --n and --k".into()))
        }
    })
}

/// Oracle outcome; idealness is skipped when the relaxation is too large.
pub struct Verification {
    pub support_valid: bool,
    pub ideal: Option<bool>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.support_valid && self.ideal != Some(false)
    }

    pub fn line(&self) -> String {
        let word = |b: bool| if b { "pass" } else { "fail" };
        let ideal = self.ideal.map_or("skipped", word);
        format!("support_validity: {}, ideal: {}", word(self.support_valid), ideal)
    }
}

pub fn verify_formulation(f: &LinearFormulation, family: &IndexSetFamily) -> Result<Verification> {
    let support_valid = oracle::support_validity(f, family)?;
    let ideal = match oracle::is_ideal(f) {
        Ok(b) => Some(b),
        Err(Error::SizeGuard { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Verification { support_valid, ideal })
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn check_guards(cli: &Cli, family: &IndexSetFamily) -> Result<()> {
    let ground = family.ground_set().len();
    if ground > cli.max_ground {
        return Err(Error::size_guard("ground set", ground as u128, cli.max_ground as u128));
    }
    if family.len() > cli.max_sets {
        return Err(Error::size_guard("sets", family.len() as u128, cli.max_sets as u128));
    }
    Ok(())
}

fn load_family(cli: &Cli, path: &Path) -> Result<IndexSetFamily> {
    let family = IndexSetFamily::from_json_str(&read_input(path)?)?;
    check_guards(cli, &family)?;
    Ok(family)
}

fn load_partition(path: &Path) -> Result<PlanarPartition> {
    PlanarPartition::from_json_str(&read_input(path)?)
}

fn emit(cli: &Cli, out: Option<&Path>, value: &Value) -> Result<()> {
    let text = if cli.pretty {
        render_table(value)
    } else {
        serde_json::to_string(value)? + "\n"
    };
    write_out(out, &text)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Two-column `key  value` rendering of a JSON object, flattening nesting
/// with dotted keys.
pub fn render_table(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
