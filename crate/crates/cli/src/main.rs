//! Command-line front end: build the configurations, run the axiom and
//! Miquel checkers, compute symmetry groups two ways, decompose, realize by
//! circles, and export.
//!
//! Exit codes: 0 success / check passed, 1 check or verification failed
//! (the witness goes to stderr), 2 usage or I/O error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use coxcfg::axioms::{
    check_condition, check_miquel, Condition, ConditionOutcome, MiquelVariant,
    DEFAULT_MIQUEL_BUDGET,
};
use coxcfg::builders::{cox, decompose, gras2cox, grassmannian, k_dagger};
use coxcfg::export::{
    incidence_csv, incidence_json, parse_subset_list, structure_from_json, LabelMode,
};
use coxcfg::graph::{hypercube, levi_graph};
use coxcfg::incidence::{IncidenceStructure, Label};
use coxcfg::realization::{
    cross_ratio, extend, json as realization_json, realize_capped, stereographic, to_svg,
    Realization, DEFAULT_SEED,
};
use coxcfg::subset::FiniteSubset;
use coxcfg::symmetry::{
    brute_force_automorphisms, brute_force_correlations, flag_orbit,
    generator_collineation_actions, generator_correlation_actions, stabilizer_of_empty, CoxGroup,
};

/// Environment variable overriding the default seed.
const SEED_ENV: &str = "COXCFG_SEED";

#[derive(Parser)]
#[command(name = "coxcfg", version, about = "Cox configurations: exact builds, checks, groups, and circle realizations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a structure and print its incidence matrix.
    Build {
        #[arg(value_enum)]
        what: BuildWhat,
        #[arg(long)]
        n: u8,
        /// Layer parameter for grassmann/kdagger.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = LabelsArg::Canonical)]
        labels: LabelsArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run decision procedures and report witnesses on failure.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Levi graph as DOT, optionally compared against the hypercube.
    Levi {
        #[command(flatten)]
        st: StructArgs,
        #[arg(long)]
        compare_hypercube: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetry groups: generator description, brute force, orbits, stabilizers.
    Aut {
        #[command(subcommand)]
        what: AutCmd,
    },
    /// Split cox(n) into translated copies over a ground-set partition.
    Decompose {
        #[arg(long)]
        n: u8,
        /// Size of the first part X1 = {1..split}; the rest forms X2.
        #[arg(long)]
        split: u8,
    },
    /// Build an exact circle realization and emit it as JSON.
    Realize {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        seed: Option<u64>,
        /// Upper bound on n; raise it to accept larger (slower) builds.
        #[arg(long, default_value_t = coxcfg::realization::DEFAULT_REALIZE_CAP)]
        cap: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a verified realization by one ground element.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a realization file exactly.
    Verify {
        /// Realization JSON; pass "-" to read stdin.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// File exports: drawings, sphere models, graphs, matrices.
    Export {
        #[command(subcommand)]
        what: ExportCmd,
    },
    /// Exact cross ratio of four realized points on a common circle.
    CrossRatio {
        #[arg(long = "in")]
        input: PathBuf,
        /// Circle label the four points must lie on, e.g. "{1}".
        #[arg(long)]
        circle: String,
        /// Four point labels, e.g. "{},{1,2},{1,3},{1,4}".
        #[arg(long)]
        points: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildWhat {
    Cox,
    Grassmann,
    Kdagger,
    Gras2cox,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelsArg {
    Canonical,
    SteinerMiquel,
}

impl From<LabelsArg> for LabelMode {
    fn from(v: LabelsArg) -> LabelMode {
        match v {
            LabelsArg::Canonical => LabelMode::Canonical,
            LabelsArg::SteinerMiquel => LabelMode::SteinerMiquel,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureKind {
    Cox,
    Grassmann,
    Kdagger,
    Gras2cox,
}

#[derive(Args)]
struct StructArgs {
    #[arg(long, value_enum, default_value_t = StructureKind::Cox)]
    structure: StructureKind,
    #[arg(long)]
    n: u8,
    #[arg(long)]
    k: Option<u32>,
    /// Remove one block (points kept), e.g. --delete-block "{1,2,4}".
    #[arg(long)]
    delete_block: Option<String>,
    /// Remove one flag, e.g. --delete-flag "{}|{1}".
    #[arg(long)]
    delete_flag: Option<String>,
}

impl StructArgs {
    fn build(&self) -> Result<IncidenceStructure> {
        let base = match self.structure {
            StructureKind::Cox => cox(self.n)?,
            StructureKind::Grassmann => {
                grassmannian(self.n, self.k.ok_or_else(|| anyhow!("--k is required"))?)?
            }
            StructureKind::Kdagger => {
                k_dagger(self.n, self.k.ok_or_else(|| anyhow!("--k is required"))?)?
            }
            StructureKind::Gras2cox => gras2cox(self.n)?.structure,
        };
        let mut s = base;
        if let Some(spec) = &self.delete_block {
            let set = FiniteSubset::parse(self.n, spec)?;
            s = s.delete_block(&Label::Set(set))?;
        }
        if let Some(spec) = &self.delete_flag {
            let (p, b) = spec
                .split_once('|')
                .ok_or_else(|| anyhow!("--delete-flag wants \"POINT|BLOCK\""))?;
            let p = FiniteSubset::parse(self.n, p)?;
            let b = FiniteSubset::parse(self.n, b)?;
            let pi = s.set_point_index(&p).ok_or_else(|| anyhow!("{p} is not a point"))?;
            let bi = s.set_block_index(&b).ok_or_else(|| anyhow!("{b} is not a block"))?;
            s = s.delete_flag(pi, bi);
        }
        Ok(s)
    }
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Conditions I..V plus the weak-chain-structure verdict.
    Axioms {
        #[command(flatten)]
        st: StructArgs,
        /// Comma-separated subset of I,II,III,IV,V (default: all).
        #[arg(long)]
        conditions: Option<String>,
    },
    /// The Miquel axiom over every schema instance.
    Miquel {
        #[command(flatten)]
        st: StructArgs,
        #[arg(long, default_value = "strong")]
        variant: String,
        #[arg(long, default_value_t = DEFAULT_MIQUEL_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum AutCmd {
    /// Orders and generators of the semidirect-product description.
    Group {
        #[arg(long)]
        n: u8,
    },
    /// Exhaustive search, with oracle-equality verdicts where applicable.
    Brute {
        #[command(flatten)]
        st: StructArgs,
    },
    /// Orbit of a flag under the collineation group.
    FlagOrbit {
        #[arg(long)]
        n: u8,
        #[arg(long, default_value = "{}")]
        point: String,
        #[arg(long, default_value = "{1}")]
        block: String,
    },
    /// Automorphisms fixing the empty set, against the lifted permutations.
    Stabilizer {
        #[arg(long)]
        n: u8,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Planar drawing of a realization.
    Svg {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Floating-point sphere model of a realization.
    SphereJson {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Sphere radius as an integer or fraction, e.g. "1" or "3/2".
        #[arg(long, default_value = "1")]
        radius: String,
    },
    /// Levi graph in DOT form.
    Dot {
        #[command(flatten)]
        source: ExportSource,
        #[arg(long)]
        out: PathBuf,
    },
    /// Incidence matrix as CSV.
    Csv {
        #[command(flatten)]
        source: ExportSource,
        #[arg(long, value_enum, default_value_t = LabelsArg::Canonical)]
        labels: LabelsArg,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A structure either rebuilt from parameters or loaded from a JSON export.
#[derive(Args)]
struct ExportSource {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    structure: Option<StructureKind>,
    #[arg(long)]
    n: Option<u8>,
    #[arg(long)]
    k: Option<u32>,
}

impl ExportSource {
    fn load(&self) -> Result<IncidenceStructure> {
        match (&self.input, self.structure, self.n) {
            (Some(path), None, _) => {
                let text = read_input(path)?;
                Ok(structure_from_json(&text)?)
            }
            (None, Some(structure), Some(n)) => StructArgs {
                structure,
                n,
                k: self.k,
                delete_block: None,
                delete_flag: None,
            }
            .build(),
            _ => bail!("give either --in FILE or --structure ... --n N"),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
    }
}

fn seed_or_default(cli_seed: Option<u64>) -> Result<u64> {
    if let Some(s) = cli_seed {
        return Ok(s);
    }
    if let Ok(text) = std::env::var(SEED_ENV) {
        return text
            .parse()
            .map_err(|_| anyhow!("{SEED_ENV} must be a 64-bit integer, got {text:?}"));
    }
    Ok(DEFAULT_SEED)
}

fn load_realization(path: &PathBuf) -> Result<Realization> {
    let text = read_input(path)?;
    Ok(realization_json::from_json(&text)?)
}

fn parse_radius(text: &str) -> Result<num::BigRational> {
    let r = match text.split_once('/') {
        None => num::BigRational::from_integer(
            num::BigInt::from_str(text.trim()).map_err(|e| anyhow!("radius: {e}"))?,
        ),
        Some((n, d)) => num::BigRational::new(
            num::BigInt::from_str(n.trim()).map_err(|e| anyhow!("radius: {e}"))?,
            num::BigInt::from_str(d.trim()).map_err(|e| anyhow!("radius: {e}"))?,
        ),
    };
    if r <= num::BigRational::from_integer(0.into()) {
        bail!("radius must be positive");
    }
    Ok(r)
}

/// Returns the process exit code: 0 pass, 1 failed check.
fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Build { what, n, k, format, labels, out } => {
            let st = StructArgs {
                structure: match what {
                    BuildWhat::Cox => StructureKind::Cox,
                    BuildWhat::Grassmann => StructureKind::Grassmann,
                    BuildWhat::Kdagger => StructureKind::Kdagger,
                    BuildWhat::Gras2cox => StructureKind::Gras2cox,
                },
                n,
                k,
                delete_block: None,
                delete_flag: None,
            };
            let s = st.build()?;
            let content = match format {
                Format::Json => incidence_json(&s)?,
                Format::Csv => incidence_csv(&s, labels.into())?,
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Cmd::Check { what } => match what {
            CheckCmd::Axioms { st, conditions } => {
                let s = st.build()?;
                let which: Vec<Condition> = match conditions {
                    None => Condition::ALL.to_vec(),
                    Some(spec) => spec
                        .split(',')
                        .map(|c| {
                            Condition::parse(c).ok_or_else(|| anyhow!("unknown condition {c:?}"))
                        })
                        .collect::<Result<_>>()?,
                };
                let mut failed = false;
                for cond in &which {
                    match check_condition(&s, *cond) {
                        ConditionOutcome::Pass => println!("condition {cond}: PASS"),
                        ConditionOutcome::Violated(v) => {
                            failed = true;
                            println!("condition {cond}: FAIL");
                            eprintln!("witness: {}", v.describe(&s));
                            eprintln!("witness re-validates: {}", v.revalidate(&s));
                        }
                    }
                }
                let weak = coxcfg::axioms::is_weak_chain_structure(&s);
                println!("weak chain structure: {}", if weak.is_weak_chain() { "yes" } else { "no" });
                Ok(if failed { 1 } else { 0 })
            }
            CheckCmd::Miquel { st, variant, budget } => {
                let s = st.build()?;
                let variant = MiquelVariant::parse(&variant)
                    .ok_or_else(|| anyhow!("--variant must be strong or weak"))?;
                let check = check_miquel(&s, variant, budget);
                println!(
                    "instances checked: {}; candidates examined: {}; budget: {budget}",
                    check.instances_checked, check.candidates_examined
                );
                println!(
                    "schema symmetry: dihedral of order 8 (tool convention for deduplication)"
                );
                if check.capped {
                    println!("result: CAP REACHED (inconclusive, not a proof)");
                    return Ok(1);
                }
                if check.counterexamples.is_empty() {
                    println!("result: PASS");
                    Ok(0)
                } else {
                    println!("result: FAIL ({} counterexamples)", check.counterexamples.len());
                    for ce in &check.counterexamples {
                        eprintln!("counterexample: {}", ce.instance.describe(&s));
                        eprintln!("re-validates: {}", ce.revalidate(&s));
                    }
                    Ok(1)
                }
            }
        },
        Cmd::Levi { st, compare_hypercube, out } => {
            let s = st.build()?;
            let levi = levi_graph(&s)?;
            if let Some(path) = &out {
                write_output(&Some(path.clone()), &levi.to_dot("levi"))?;
            }
            println!(
                "levi graph: {} vertices, {} edges",
                levi.num_vertices(),
                levi.num_edges()
            );
            if compare_hypercube {
                let equal = levi.labeled_eq(&hypercube(st.n));
                println!(
                    "equal to the {}-hypercube as labelled graphs: {}",
                    st.n,
                    if equal { "yes" } else { "no" }
                );
                if !equal {
                    eprintln!("labelled graphs differ");
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Cmd::Aut { what } => match what {
            AutCmd::Group { n } => {
                let g = CoxGroup::new(n);
                println!("collineations and correlations: order {}", g.order());
                println!("collineations: order {}", g.collineation_order());
                println!("generators:");
                for gen in g.generators() {
                    println!("  {gen}");
                }
                Ok(0)
            }
            AutCmd::Brute { st } => {
                let s = st.build()?;
                let autos = brute_force_automorphisms(&s)?;
                let cors = brute_force_correlations(&s)?;
                println!("automorphisms: {}", autos.len());
                println!("correlations: {}", cors.len());
                println!("total: {}", autos.len() + cors.len());
                let mut ok = true;
                if matches!(st.structure, StructureKind::Cox | StructureKind::Gras2cox) {
                    let n = st.n;
                    let formula_aut: u128 = (1..=n as u128).product::<u128>() << (n - 1);
                    let formula_all: u128 = (1..=n as u128).product::<u128>() << n;
                    let aut_ok = autos.len() as u128 == formula_aut;
                    let all_ok = (autos.len() + cors.len()) as u128 == formula_all;
                    ok &= aut_ok && all_ok;
                    println!(
                        "matches S_n x C_2^(n-1) semidirect order ({formula_aut}): {}",
                        if aut_ok { "yes" } else { "no" }
                    );
                    println!(
                        "matches S_n x C_2^n semidirect order ({formula_all}): {}",
                        if all_ok { "yes" } else { "no" }
                    );
                    if st.delete_block.is_none() && st.delete_flag.is_none() && n <= 5 {
                        let eq = autos == generator_collineation_actions(n)
                            && cors == generator_correlation_actions(n);
                        ok &= eq;
                        println!(
                            "element-by-element equality with the generator group: {}",
                            if eq { "yes" } else { "no" }
                        );
                    }
                }
                if matches!(st.structure, StructureKind::Kdagger) {
                    if let Some(k) = st.k {
                        if st.n as u32 == 2 * k {
                            let formula: u128 = 2 * (1..=st.n as u128).product::<u128>();
                            let okk = autos.len() as u128 == formula;
                            ok &= okk;
                            println!(
                                "matches C_2 + S_n direct-sum order ({formula}): {}",
                                if okk { "yes" } else { "no" }
                            );
                        }
                    }
                }
                Ok(if ok { 0 } else { 1 })
            }
            AutCmd::FlagOrbit { n, point, block } => {
                let p = FiniteSubset::parse(n, &point)?;
                let b = FiniteSubset::parse(n, &block)?;
                let s = cox(n)?;
                match (s.set_point_index(&p), s.set_block_index(&b)) {
                    (Some(pi), Some(bi)) if s.is_flag(pi, bi) => {}
                    _ => bail!("({p}, {b}) is not a flag of cox({n})"),
                }
                let orbit = flag_orbit(n, (p, b));
                let full = (n as usize) << (n - 1);
                println!("orbit size: {}", orbit.len());
                println!(
                    "flag-transitive (orbit covers all {} flags): {}",
                    full,
                    if orbit.len() == full { "yes" } else { "no" }
                );
                Ok(if orbit.len() == full { 0 } else { 1 })
            }
            AutCmd::Stabilizer { n } => {
                let report = stabilizer_of_empty(n)?;
                println!("stabilizer of {{}}: order {}", report.elements.len());
                println!(
                    "equals the lifted permutations S_{n} as maps: {}",
                    if report.equals_lifted_permutations { "yes" } else { "no" }
                );
                Ok(if report.equals_lifted_permutations { 0 } else { 1 })
            }
        },
        Cmd::Decompose { n, split } => {
            if split == 0 || split >= n {
                bail!("--split must be strictly between 0 and n");
            }
            let x1 = FiniteSubset::from_elems(n, &(1..=split).collect::<Vec<_>>());
            let x2 = x1.complement();
            let d = decompose(n, &x1, &x2)?;
            println!("X1 = {x1}, X2 = {x2}");
            println!(
                "family 1: {} copies of cox({}) shifted by subsets of X2",
                d.family1.len(),
                split
            );
            println!(
                "family 2: {} copies of cox({}) shifted by subsets of X1",
                d.family2.len(),
                n - split
            );
            for m in d.family1.iter().chain(d.family2.iter()) {
                println!("  family {} shift {} ({} labels)", m.family, m.shift, m.labels.len());
            }
            println!(
                "every flag covered exactly once: {}",
                if d.flag_cover_unique { "yes" } else { "no" }
            );
            println!(
                "families mutually transversal: {}",
                if d.transversal { "yes" } else { "no" }
            );
            Ok(if d.flag_cover_unique && d.transversal { 0 } else { 1 })
        }
        Cmd::Realize { n, seed, cap, out } => {
            let seed = seed_or_default(seed)?;
            let r = realize_capped(n, seed, cap)?;
            write_output(&out, &realization_json::to_json(&r))?;
            eprintln!("realized cox({n}) with seed {seed}: verified");
            Ok(0)
        }
        Cmd::Extend { input, seed, out } => {
            let seed = seed_or_default(seed)?;
            let mut r = load_realization(&input)?;
            let report = r.verify();
            if !report.clean() {
                eprintln!("input realization fails verification: {}", report.summary());
                return Ok(1);
            }
            r.set_verified(&report);
            let bigger = extend(&r, seed)?;
            write_output(&out, &realization_json::to_json(&bigger))?;
            eprintln!("extended to cox({}) with seed {seed}: verified", bigger.n());
            Ok(0)
        }
        Cmd::Verify { input } => {
            let r = load_realization(&input)?;
            let report = r.verify();
            println!("{}", report.summary());
            if report.clean() {
                Ok(0)
            } else {
                for (p, c) in &report.flag_violations {
                    eprintln!("flag violation: point {p} not on circle {c}");
                }
                for (p, c) in &report.accidental_incidences {
                    eprintln!("accidental incidence: point {p} on circle {c}");
                }
                for (a, b) in &report.duplicate_points {
                    eprintln!("duplicate points: {a} = {b}");
                }
                for (a, b) in &report.duplicate_circles {
                    eprintln!("duplicate circles: {a} = {b}");
                }
                Ok(1)
            }
        }
        Cmd::Export { what } => match what {
            ExportCmd::Svg { input, out } => {
                let r = load_realization(&input)?;
                write_output(&Some(out), &to_svg(&r))?;
                Ok(0)
            }
            ExportCmd::SphereJson { input, out, radius } => {
                let r = load_realization(&input)?;
                let report = r.verify();
                if !report.clean() {
                    eprintln!("input realization fails verification: {}", report.summary());
                    return Ok(1);
                }
                let radius = parse_radius(&radius)?;
                let model = stereographic(&r, &radius);
                write_output(&Some(out), &model.to_json())?;
                println!("max incidence residual: {:e}", model.max_residual);
                Ok(0)
            }
            ExportCmd::Dot { source, out } => {
                let s = source.load()?;
                let levi = levi_graph(&s)?;
                write_output(&Some(out), &levi.to_dot("levi"))?;
                Ok(0)
            }
            ExportCmd::Csv { source, labels, out } => {
                let s = source.load()?;
                write_output(&Some(out), &incidence_csv(&s, labels.into())?)?;
                Ok(0)
            }
        },
        Cmd::CrossRatio { input, circle, points } => {
            let r = load_realization(&input)?;
            let circle_label = FiniteSubset::parse(r.n(), &circle)?;
            let c = r
                .circle(&circle_label)
                .ok_or_else(|| anyhow!("{circle_label} is not a circle of the realization"))?;
            let labels = parse_subset_list(r.n(), &points)?;
            if labels.len() != 4 {
                bail!("--points wants exactly four labels, got {}", labels.len());
            }
            let mut pts = Vec::new();
            for l in &labels {
                let p = r
                    .point(l)
                    .ok_or_else(|| anyhow!("{l} is not a point of the realization"))?;
                if !c.contains(p) {
                    bail!("point {l} does not lie on circle {circle_label}");
                }
                pts.push(p.clone());
            }
            let value = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3])?;
            println!("{value}");
            Ok(0)
        }
    }
}

/// Die quietly when the downstream pipe closes, like other line tools.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
