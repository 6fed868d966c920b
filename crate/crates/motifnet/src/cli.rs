//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use motifnet_core::ising::{evolve_y, grid, phase_point, IsingParams};
use motifnet_core::{build, get_motif, sample, MotifId};

use crate::drivers::{degree_fit_par, phase_sweep, structure_series, thread_pool, threads_from_env};
use crate::error::{CliError, Result};
use crate::output::{
    csv_bytes, emit, json_bytes, Format, CHECK_HEADER, DEGREE_HEADER, EDGE_HEADER, PHASE_HEADER, STRUCTURE_HEADER,
    TRAJECTORY_HEADER,
};
use crate::schema::{
    edge_rows, trajectory_rows, DegreeDoc, GraphDoc, PhaseDoc, PhaseRow, RealizationDoc, StructureDoc, TrajectoryDoc,
    SCHEMA_VERSION,
};
use crate::verify::{render_table, run_suite};

/// Largest number of points a phase-diagram grid may have.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "motifnet", version, about = "Hierarchical motif-based random graphs and their Ising model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the deterministic graph Λ_k and export its nodes, bonds and slots.
    Build(BuildArgs),
    /// Draw one decoration realization and export it as a tagged edge list.
    Sample(SampleArgs),
    /// Compare the pooled degree histogram of an ensemble with the mixture model.
    DegreeStats(EnsembleArgs),
    /// Clustering, diameter and boundary ratio for levels 1..=k.
    Structure(EnsembleArgs),
    /// Iterate the x map and the local-average recursion.
    IsingIterate(IterateArgs),
    /// Classify one (K, L, p) point.
    IsingPhase(PhaseArgs),
    /// Classify every point of a (L, p, K) grid.
    PhaseDiagram(DiagramArgs),
    /// Run every oracle comparison and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// One of m1..m5.
    #[arg(long, value_parser = parse_motif)]
    pub motif: MotifId,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[allow(non_snake_case)]
pub struct CouplingArgs {
    /// Basic-bond coupling.
    #[arg(long = "K", allow_negative_numbers = true)]
    pub K: f64,
    /// Decoration coupling.
    #[arg(long = "L", allow_negative_numbers = true)]
    pub L: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
}

#[derive(Debug, Args)]
pub struct IterateArgs {
    #[command(flatten)]
    pub couplings: CouplingArgs,
    /// Number of steps of the recursion.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Initial local averages Y_1 as three positive numbers.
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [2.0, 1.0, 1.0])]
    pub y1: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub couplings: CouplingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[allow(non_snake_case)]
pub struct DiagramArgs {
    #[arg(long = "K-min", default_value_t = 0.0, allow_negative_numbers = true)]
    pub K_min: f64,
    #[arg(long = "K-max", default_value_t = 1.0, allow_negative_numbers = true)]
    pub K_max: f64,
    #[arg(long = "K-step", default_value_t = 0.05)]
    pub K_step: f64,
    #[arg(long = "L-min", default_value_t = -1.0, allow_negative_numbers = true)]
    pub L_min: f64,
    #[arg(long = "L-max", default_value_t = 1.0, allow_negative_numbers = true)]
    pub L_max: f64,
    #[arg(long = "L-step", default_value_t = 0.1)]
    pub L_step: f64,
    #[arg(long = "p-min", default_value_t = 0.0)]
    pub p_min: f64,
    #[arg(long = "p-max", default_value_t = 1.0)]
    pub p_max: f64,
    #[arg(long = "p-step", default_value_t = 0.1)]
    pub p_step: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Also write the report document here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn parse_motif(s: &str) -> std::result::Result<MotifId, String> {
    s.parse().map_err(|_| format!("unknown motif {s:?}; expected one of m1, m2, m3, m4, m5"))
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Validation(format!("--{name} must be finite, got {v}")))
    }
}

fn axis(name: &str, min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    let (min, max, step) = (finite(name, min)?, finite(name, max)?, finite(name, step)?);
    if !(step > 0.0) {
        return Err(CliError::Validation(format!("--{name}-step must be positive, got {step}")));
    }
    if max < min {
        return Err(CliError::Validation(format!("--{name}-max ({max}) is below --{name}-min ({min})")));
    }
    if (max - min) / step > MAX_GRID_POINTS as f64 {
        return Err(CliError::Validation(format!("--{name} grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok(grid(min, max, step))
}

fn params(c: &CouplingArgs) -> Result<IsingParams> {
    Ok(IsingParams::new(finite("K", c.K)?, finite("L", c.L)?, c.p)?)
}

fn note(msg: &str) {
    let _ = writeln!(std::io::stderr(), "{msg}");
}

fn render<T: serde::Serialize, R: serde::Serialize>(
    output: &OutputArgs,
    doc: &T,
    rows: &[R],
    header: &[&str],
) -> Result<()> {
    let bytes = match output.format {
        Format::Json => json_bytes(doc)?,
        Format::Csv => csv_bytes(rows, header)?,
    };
    emit(output.out.as_deref(), &bytes)
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build(a) => {
            let g = build(get_motif(a.graph.motif), a.graph.k)?;
            if a.output.format == Format::Csv {
                return Err(CliError::Validation("build writes json only".into()));
            }
            emit(a.output.out.as_deref(), &json_bytes(&GraphDoc::new(&g))?)?;
            note(&format!(
                "{} k={}: {} nodes, {} basic edges, {} slots",
                g.motif(),
                g.k(),
                g.node_count(),
                g.basic_edges().len(),
                g.decoration_slots().len()
            ));
        }
        Command::Sample(a) => {
            let g = build(get_motif(a.graph.motif), a.graph.k)?;
            let real = sample(&g, a.p, a.seed)?;
            render(&a.output, &RealizationDoc::new(&g, &real), &edge_rows(&g, &real), EDGE_HEADER)?;
            note(&format!("{} of {} decorations active", real.active_count(), real.slot_count()));
        }
        Command::DegreeStats(a) => {
            let g = build(get_motif(a.graph.motif), a.graph.k)?;
            let fit = degree_fit_par(&g, a.p, a.samples, a.seed)?;
            let doc = DegreeDoc::new(&fit, a.seed);
            render(&a.output, &doc, &doc.histogram, DEGREE_HEADER)?;
            note(&format!(
                "mean degree {:.6} (se {:.2e}), model {:.6}, total variation {:.4}",
                fit.empirical_mean, fit.mean_standard_error, fit.closed_mean, fit.total_variation
            ));
        }
        Command::Structure(a) => {
            let motif = get_motif(a.graph.motif);
            // Fail on capacity before doing any work.
            build(motif, a.graph.k)?;
            let (series, per_level_clustering) = structure_series(motif, a.graph.k, a.p, a.samples, a.seed)?;
            let doc = StructureDoc {
                schema_version: SCHEMA_VERSION,
                motif: a.graph.motif.to_string(),
                p: a.p,
                seed: a.seed,
                samples: a.samples,
                series,
                per_level_clustering,
            };
            render(&a.output, &doc, &doc.series, STRUCTURE_HEADER)?;
        }
        Command::IsingIterate(a) => {
            let p = params(&a.couplings)?;
            let y1 = [a.y1[0], a.y1[1], a.y1[2]];
            let traj = evolve_y(&p, y1, a.steps)?;
            render(&a.output, &TrajectoryDoc::new(&traj), &trajectory_rows(&traj), TRAJECTORY_HEADER)?;
            note(&format!("verdict: {}", traj.verdict));
        }
        Command::IsingPhase(a) => {
            let pp = phase_point(&params(&a.couplings)?);
            let row = PhaseRow::from(&pp);
            let k_star = pp.k_star.map_or_else(|| "none".to_string(), |k| format!("{k:.10}"));
            let doc = PhaseDoc { schema_version: SCHEMA_VERSION, rows: vec![row] };
            render(&a.output, &doc, &doc.rows, PHASE_HEADER)?;
            note(&format!("verdict: {} K*={k_star}", pp.verdict));
        }
        Command::PhaseDiagram(a) => {
            let ks = axis("K", a.K_min, a.K_max, a.K_step)?;
            let ls = axis("L", a.L_min, a.L_max, a.L_step)?;
            let ps = axis("p", a.p_min, a.p_max, a.p_step)?;
            if ks.len().saturating_mul(ls.len()).saturating_mul(ps.len()) > MAX_GRID_POINTS {
                return Err(CliError::Validation(format!("grid has more than {MAX_GRID_POINTS} points")));
            }
            let rows = phase_sweep(&ls, &ps, &ks)?;
            let doc = PhaseDoc { schema_version: SCHEMA_VERSION, rows };
            render(&a.output, &doc, &doc.rows, PHASE_HEADER)?;
        }
        Command::Verify(a) => {
            let doc = run_suite();
            let table = render_table(&doc);
            std::io::stdout().write_all(table.as_bytes())?;
            if let Some(path) = a.out.as_deref() {
                let bytes = match a.format {
                    Format::Json => json_bytes(&doc)?,
                    Format::Csv => csv_bytes(&doc.checks, CHECK_HEADER)?,
                };
                emit(Some(path), &bytes)?;
            }
            if doc.failed > 0 {
                return Err(CliError::VerifyFailed { failed: doc.failed, total: doc.checks.len() });
            }
        }
    }
    Ok(())
}

/// Parses `args` and runs the command, returning the process exit status.
/// Help and version requests exit with 0, every other parse error with 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let outcome = threads_from_env().and_then(thread_pool).and_then(|pool| pool.install(|| run(cli)));
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            note(&format!("error: {e}"));
            e.exit_code()
        }
    }
}
