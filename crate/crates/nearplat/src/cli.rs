//! Command-line surface: constructors and searches behind a small set of
//! subcommands that speak planar_code on stdin/stdout, DOT text, and JSON
//! report documents.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 when any
//! search cell stopped on its budget (UNKNOWN in the report).

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::counting::{solve_regularity_for_v, Signature};
use crate::families::{generate_family, generate_platonic, FamilyId, PlatonicId};
use crate::io::{export_dot, read_planar_code, write_planar_code};
use crate::planar_map::PlanarMap;
use crate::search::{
    check_conjecture_equal_degrees, desk_scale_bounds, enumerate, verify_theorem_one_disparate,
    Budget, DisparateDegrees, FaceConstraint, SearchTask,
};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_IO: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "nearplat",
    version,
    about = "Constructors, counting checks, and exhaustive searches for spherical regular maps \
             whose faces all share one degree except for a few disparate ones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct BudgetArgs {
    /// Node budget per search cell.
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    budget_nodes: u64,
    /// Time budget per search cell in seconds; 0 disables the limit.
    #[arg(long, default_value_t = Budget::default().max_seconds)]
    budget_secs: u64,
    /// Worker threads for independent cells (default: NEARPLAT_THREADS or
    /// all cores). Reports do not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.budget_nodes, max_seconds: self.budget_secs }
    }

    fn thread_count(&self) -> Option<usize> {
        self.threads.or_else(|| {
            std::env::var("NEARPLAT_THREADS").ok().and_then(|s| s.parse().ok())
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a family member or one of the five single-degree maps as a
    /// planar_code stream.
    Generate {
        /// Family name, e.g. prism, antiprism, tetra-thin-cycle.
        #[arg(long, conflicts_with = "platonic", required_unless_present = "platonic")]
        family: Option<String>,
        /// Number of repeating units for --family.
        #[arg(long, requires = "family")]
        d: Option<usize>,
        /// One of: tetrahedron, cube, octahedron, dodecahedron, icosahedron.
        #[arg(long)]
        platonic: Option<String>,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the face-degree profile of each map in a planar_code stream.
    Classify {
        /// Input file (default: stdin).
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Screen a face-degree profile against the counting identities.
    Feasible {
        /// Vertex regularity.
        #[arg(long)]
        k: usize,
        /// Common face degree.
        #[arg(long)]
        d2: usize,
        /// Number of disparate faces.
        #[arg(long, default_value_t = 0)]
        f1: usize,
        /// Degree shared by the disparate faces (required when f1 > 0).
        #[arg(long)]
        d1: Option<usize>,
    },
    /// Enumerate isomorphism classes under a face constraint and emit a
    /// JSON report with witnesses.
    Search {
        /// Vertex regularity.
        #[arg(long)]
        k: usize,
        /// Common face degree (omit only with --unconstrained).
        #[arg(long)]
        d2: Option<usize>,
        /// Number of disparate faces for the exact mode.
        #[arg(long, default_value_t = 0)]
        f1: usize,
        /// Allowed disparate degree; repeatable. Omitted with --f1 > 0
        /// means any degree other than the common one.
        #[arg(long)]
        d1: Vec<usize>,
        /// Two distinguished faces of any degree instead of an exact
        /// disparate count.
        #[arg(long, conflicts_with_all = ["f1", "d1", "unconstrained"])]
        designated: bool,
        /// No face constraint at all: every spherical k-regular map.
        #[arg(long, conflicts_with_all = ["f1", "d1", "d2"])]
        unconstrained: bool,
        /// Largest vertex count to sweep.
        #[arg(long)]
        vmax: usize,
        /// Cut branches whose single fixed disparate face closes with a
        /// chord (only affects one-disparate-face cells).
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        chord_pruning: Switch,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Output file for the JSON report (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep every single-disparate-face profile per admissible pair and
    /// report the (expected) empty result. Nonexistence evidence is valid
    /// only where every cell is COMPLETE.
    VerifyOneDisparate {
        /// Uniform vertex ceiling for all admissible pairs (default:
        /// per-pair desk-scale ceilings).
        #[arg(long)]
        vmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        chord_pruning: Switch,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all maps with two designated faces and check that the two
    /// deviating faces always share a degree and land in a known family.
    CheckEqualDegrees {
        /// Vertex regularity (with --d2; default: all admissible pairs).
        #[arg(long, requires = "d2")]
        k: Option<usize>,
        /// Common face degree (with --k).
        #[arg(long, requires = "k")]
        d2: Option<usize>,
        /// Largest vertex count to sweep.
        #[arg(long, default_value_t = 10)]
        vmax: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render each map in a planar_code stream as DOT text.
    ExportDot {
        /// Input file (default: stdin).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Annotate each face walk and the face vector as comments.
        #[arg(long)]
        faces: bool,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(e) => {
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_IO
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Generate { family, d, platonic, out } => generate(family, d, platonic, out),
        Command::Classify { input } => classify(input),
        Command::Feasible { k, d2, f1, d1 } => feasible(k, d2, f1, d1),
        Command::Search {
            k,
            d2,
            f1,
            d1,
            designated,
            unconstrained,
            vmax,
            chord_pruning,
            budget,
            out,
        } => search(k, d2, f1, d1, designated, unconstrained, vmax, chord_pruning, &budget, out),
        Command::VerifyOneDisparate { vmax, chord_pruning, budget, out } => {
            verify_one_disparate(vmax, chord_pruning, &budget, out)
        }
        Command::CheckEqualDegrees { k, d2, vmax, budget, out } => {
            check_equal_degrees(k, d2, vmax, &budget, out)
        }
        Command::ExportDot { input, faces } => export_dot_cmd(input, faces),
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn read_maps(input: Option<&Path>) -> Result<Vec<PlanarMap>, CliError> {
    let bytes = match input {
        Some(path) => std::fs::read(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = Vec::new();
            std::io::stdin().lock().read_to_end(&mut buf)?;
            buf
        }
    };
    read_planar_code(&bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn platonic_by_name(name: &str) -> Option<PlatonicId> {
    let lower = name.to_ascii_lowercase();
    PlatonicId::ALL.into_iter().find(|p| p.name() == lower)
}

fn generate(
    family: Option<String>,
    d: Option<usize>,
    platonic: Option<String>,
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let map = if let Some(name) = platonic {
        let id = platonic_by_name(&name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown single-degree map '{name}' (expected one of: {})",
                PlatonicId::ALL.map(|p| p.name()).join(", ")
            ))
        })?;
        generate_platonic(id)
    } else {
        let name = family.expect("clap enforces --family or --platonic");
        let id = FamilyId::from_name(&name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown family '{name}' (expected one of: {})",
                FamilyId::ALL.map(|f| f.name()).join(", ")
            ))
        })?;
        let d = d.ok_or_else(|| {
            CliError::Usage("--family requires --d <units>".to_string())
        })?;
        generate_family(id, d).map_err(|e| CliError::Usage(e.to_string()))?
    };
    let bytes = write_planar_code(std::slice::from_ref(&map))
        .expect("constructors stay under the vertex cap");
    write_output(out.as_deref(), &bytes)?;
    Ok(EXIT_OK)
}

/// Canonical codes of the five single-degree maps, for coincidence notes.
fn platonic_codes() -> Vec<(PlatonicId, crate::planar_map::CanonicalCode)> {
    PlatonicId::ALL
        .into_iter()
        .map(|id| (id, generate_platonic(id).canonical_code()))
        .collect()
}

fn classify(input: Option<PathBuf>) -> Result<i32, CliError> {
    let maps = read_maps(input.as_deref())?;
    let platonics = platonic_codes();
    let mut stdout = std::io::stdout().lock();
    for map in &maps {
        let line = match Signature::of_map(map) {
            Ok(sig) => {
                let code = map.canonical_code();
                let coincidence = platonics
                    .iter()
                    .find(|(_, known)| *known == code)
                    .map(|(id, _)| format!(" — equals the {id}"))
                    .unwrap_or_default();
                format!("{sig}{coincidence}")
            }
            Err(_) => {
                let faces: Vec<String> = map
                    .face_vector()
                    .into_iter()
                    .map(|(degree, count)| format!("{degree}^{count}"))
                    .collect();
                format!("not regular; face vector {}", faces.join(" "))
            }
        };
        writeln!(stdout, "{line}")?;
    }
    Ok(EXIT_OK)
}

fn feasible(k: usize, d2: usize, f1: usize, d1: Option<usize>) -> Result<i32, CliError> {
    if f1 > 0 && d1.is_none() {
        return Err(CliError::Usage("--f1 above 0 requires --d1".to_string()));
    }
    if let Some(d1) = d1 {
        if d1 < 3 {
            return Err(CliError::Usage(format!("face degree {d1} is below 3")));
        }
        if f1 > 0 && d1 == d2 {
            return Err(CliError::Usage(
                "a disparate degree equal to the common degree is not disparate".to_string(),
            ));
        }
    }
    if d2 < 3 {
        return Err(CliError::Usage(format!("face degree {d2} is below 3")));
    }
    let d1 = d1.unwrap_or(0);
    let required = match solve_regularity_for_v(k, d2, f1, d1) {
        Ok(r) => r,
        Err(_) => {
            println!(
                "INFEASIBLE: ({k}, {d2}) admits no positive vertex count \
                 under the regularity identity"
            );
            return Ok(EXIT_OK);
        }
    };
    if !required.is_integer() {
        println!("INFEASIBLE: forced vertex count {required} is not an integer");
        return Ok(EXIT_OK);
    }
    use num::ToPrimitive;
    let v = required.to_integer().to_usize().unwrap_or(0);
    if v == 0 {
        println!("INFEASIBLE: forced vertex count {required} is not positive");
        return Ok(EXIT_OK);
    }
    let e = k * v;
    if e % 2 == 1 {
        println!("INFEASIBLE: forced vertex count {v} makes the degree sum kv odd");
        return Ok(EXIT_OK);
    }
    let e = e / 2;
    let f = match (e + 2).checked_sub(v) {
        Some(f) if f >= f1 && f >= 1 => f,
        _ => {
            println!("INFEASIBLE: forced vertex count {v} leaves no room for {f1} disparate faces");
            return Ok(EXIT_OK);
        }
    };
    let mut entries = vec![(d2, f - f1)];
    if f1 > 0 {
        entries.push((d1, f1));
    }
    if f == f1 {
        entries.remove(0);
    }
    let sig = match Signature::new(k, entries) {
        Ok(sig) => sig,
        Err(e) => {
            println!("INFEASIBLE: {e}");
            return Ok(EXIT_OK);
        }
    };
    match crate::counting::feasibility_check(&sig, v) {
        crate::counting::Feasibility::Feasible => {
            println!("FEASIBLE: {sig} with forced vertex count {v}");
        }
        crate::counting::Feasibility::Infeasible(reason) => {
            println!("INFEASIBLE: {reason}");
        }
    }
    Ok(EXIT_OK)
}

/// Runs `body` on a dedicated rayon pool when a thread count was requested.
fn with_threads<T: Send>(
    threads: Option<usize>,
    body: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(body()),
        Some(n) => {
            if n == 0 {
                return Err(CliError::Usage("--threads must be at least 1".to_string()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(pool.install(body))
        }
    }
}

fn emit_report(
    doc: &crate::io::ReportDocument,
    out: Option<&Path>,
    any_unknown: bool,
) -> Result<i32, CliError> {
    let json = doc.to_json();
    write_output(out, format!("{json}\n").as_bytes())?;
    if any_unknown {
        eprintln!(
            "warning: at least one cell stopped on its budget; \
             the report is not evidence of nonexistence"
        );
        Ok(EXIT_BUDGET)
    } else {
        Ok(EXIT_OK)
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    k: usize,
    d2: Option<usize>,
    f1: usize,
    d1: Vec<usize>,
    designated: bool,
    unconstrained: bool,
    vmax: usize,
    chord_pruning: Switch,
    budget_args: &BudgetArgs,
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let constraint = if unconstrained {
        FaceConstraint::Unconstrained
    } else if designated {
        let d2 = d2.ok_or_else(|| CliError::Usage("--designated requires --d2".to_string()))?;
        FaceConstraint::TwoDesignated { common_degree: d2 }
    } else {
        let d2 = d2.ok_or_else(|| {
            CliError::Usage("--d2 is required unless --unconstrained is given".to_string())
        })?;
        let disparate_degrees = if d1.is_empty() {
            DisparateDegrees::AnyOtherThanCommon
        } else {
            DisparateDegrees::Fixed(d1.clone())
        };
        FaceConstraint::Exact { common_degree: d2, disparate_count: f1, disparate_degrees }
    };
    let task = SearchTask {
        k,
        constraint,
        v_max: vmax,
        budget: budget_args.budget(),
        chord_pruning: chord_pruning == Switch::On,
    };
    let report = with_threads(budget_args.thread_count(), || enumerate(&task))?
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let parameters = serde_json::json!({
        "k": k,
        "d2": d2,
        "f1": f1,
        "d1": d1,
        "designated": designated,
        "unconstrained": unconstrained,
        "vmax": vmax,
        "chord_pruning": chord_pruning == Switch::On,
        "budget_nodes": budget_args.budget_nodes,
        "budget_secs": budget_args.budget_secs,
    });
    let doc = report.to_document("search", parameters);
    emit_report(&doc, out.as_deref(), report.any_unknown())
}

fn verify_one_disparate(
    vmax: Option<usize>,
    chord_pruning: Switch,
    budget_args: &BudgetArgs,
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let bounds: BTreeMap<(usize, usize), usize> = match vmax {
        Some(v) => desk_scale_bounds().into_keys().map(|pair| (pair, v)).collect(),
        None => desk_scale_bounds(),
    };
    let chord = chord_pruning == Switch::On;
    let budget = budget_args.budget();
    let report = with_threads(budget_args.thread_count(), || {
        verify_theorem_one_disparate(&bounds, budget, chord)
    })?
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let bounds_json: serde_json::Map<String, serde_json::Value> = bounds
        .iter()
        .map(|(&(k, d2), &v)| (format!("{k},{d2}"), serde_json::json!(v)))
        .collect();
    let parameters = serde_json::json!({
        "bounds": bounds_json,
        "chord_pruning": chord,
        "budget_nodes": budget_args.budget_nodes,
        "budget_secs": budget_args.budget_secs,
    });
    let searched = report.cells.iter().filter(|c| c.note.is_none()).count();
    let pruned = report.cells.len() - searched;
    eprintln!(
        "swept {} profiles ({} searched, {} settled arithmetically): {} classes found",
        report.cells.len(),
        searched,
        pruned,
        report.total_classes()
    );
    let doc = report.to_document("verify-one-disparate", parameters);
    emit_report(&doc, out.as_deref(), report.any_unknown())
}

fn check_equal_degrees(
    k: Option<usize>,
    d2: Option<usize>,
    vmax: usize,
    budget_args: &BudgetArgs,
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let pairs: Vec<(usize, usize)> = match (k, d2) {
        (Some(k), Some(d2)) => vec![(k, d2)],
        _ => desk_scale_bounds().into_keys().collect(),
    };
    let budget = budget_args.budget();
    let mut cells = Vec::new();
    let mut elapsed = std::time::Duration::ZERO;
    let mut any_unknown = false;
    for &(k, d2) in &pairs {
        let outcome = with_threads(budget_args.thread_count(), || {
            check_conjecture_equal_degrees(k, d2, vmax, budget)
        })?
        .map_err(|e| CliError::Usage(e.to_string()))?;
        eprintln!(
            "pair ({k},{d2}) up to {vmax} vertices: {} single-degree, {} in families, \
             {} equal-degree outside families, {} unequal-degree, {} single-disparate",
            outcome.platonic.len(),
            outcome.family_matched.len(),
            outcome.family_unmatched.len(),
            outcome.unequal_disparate.len(),
            outcome.single_disparate.len(),
        );
        if !outcome.unequal_disparate.is_empty() {
            eprintln!("  counterexample: two deviating faces with different degrees!");
        }
        if !outcome.single_disparate.is_empty() {
            eprintln!("  anomaly: a single deviating face, contradicting the nonexistence sweep!");
        }
        any_unknown |= outcome.report.any_unknown();
        elapsed += outcome.report.elapsed;
        cells.extend(outcome.report.cells);
    }
    let merged = crate::search::SearchReport { cells, elapsed };
    let parameters = serde_json::json!({
        "pairs": pairs.iter().map(|&(k, d2)| format!("{k},{d2}")).collect::<Vec<_>>(),
        "vmax": vmax,
        "budget_nodes": budget_args.budget_nodes,
        "budget_secs": budget_args.budget_secs,
    });
    let doc = merged.to_document("check-equal-degrees", parameters);
    emit_report(&doc, out.as_deref(), any_unknown)
}

fn export_dot_cmd(input: Option<PathBuf>, faces: bool) -> Result<i32, CliError> {
    let maps = read_maps(input.as_deref())?;
    let mut stdout = std::io::stdout().lock();
    for (i, map) in maps.iter().enumerate() {
        if i > 0 {
            writeln!(stdout)?;
        }
        write!(stdout, "{}", export_dot(map, faces))?;
    }
    Ok(EXIT_OK)
}
