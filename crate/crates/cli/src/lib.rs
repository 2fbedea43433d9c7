//! Subcommands of the `cabinet-psa` binary. Each one returns a [`CliError`] whose
//! exit code is 1 for input/validation problems and 2 for invalid configuration.

use std::path::{Path, PathBuf};
use std::time::Instant;

use cabinet_psa::bench::{run_benchmark, BenchmarkPlan, BenchmarkReport};
use cabinet_psa::edit::{apply_edits, parse_replacements};
use cabinet_psa::io::{
    load_document, parse_result_json, render_svg, write_result_json, CabinetDocument, LoadError, ResultDocument,
};
use cabinet_psa::oracle::{enumerate_pareto, DEFAULT_MAX_N};
use cabinet_psa::psa::{run, run_warm, OptimizationResult, PsaConfig};
use cabinet_psa::Error;
use clap::{Args, Parser, Subcommand};

pub const THREADS_ENV: &str = "CABINET_PSA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cabinet-psa", version, about = "Control cabinet layout optimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize a cabinet and write the result JSON (and optionally an SVG).
    Optimize(OptimizeArgs),
    /// Seed sweep over initial temperatures with improvement ratios.
    Bench(BenchArgs),
    /// Apply component replacements and re-optimize from a previous result.
    Reconfigure(ReconfigureArgs),
    /// Exact Pareto front by enumerating every layout (small cabinets only).
    Oracle(OracleArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// csv or json; inferred from the extension when omitted.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    #[arg(long, default_value_t = 1000.0)]
    pub t0: f64,
    #[arg(long, default_value_t = 0.999)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long, default_value_t = 8)]
    pub set_size: usize,
    #[arg(long, default_value_t = 1.05)]
    pub weight_constant: f64,
    #[arg(long, default_value_t = 0.01)]
    pub weight_floor: f64,
    #[arg(long, default_value_t = 0.8)]
    pub swap_probability: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Target number of candidate evaluations; overrides --alpha.
    #[arg(long)]
    pub evaluations: Option<u64>,
}

impl ConfigArgs {
    pub fn config(&self) -> PsaConfig {
        let config = PsaConfig {
            initial_temperature: self.t0,
            cooling_rate: self.alpha,
            steps_per_temperature: self.steps,
            generating_set_size: self.set_size,
            weight_constant: self.weight_constant,
            weight_floor: self.weight_floor,
            swap_probability: self.swap_probability,
            rng_seed: self.seed,
        };
        match self.evaluations {
            Some(n) => config.with_evaluation_budget(n),
            None => config,
        }
    }
}

impl Default for ConfigArgs {
    fn default() -> Self {
        let d = PsaConfig::default();
        Self {
            t0: d.initial_temperature,
            alpha: d.cooling_rate,
            steps: d.steps_per_temperature,
            set_size: d.generating_set_size,
            weight_constant: d.weight_constant,
            weight_floor: d.weight_floor,
            swap_probability: d.swap_probability,
            seed: d.rng_seed,
            evaluations: None,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub t0_list: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, default_value_t = 1)]
    pub seed_base: u64,
    /// Other engine settings; --t0 and --seed are ignored.
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Report JSON destination; printed after the table when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ReconfigureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Result JSON whose recommended layout seeds the warm start.
    #[arg(long)]
    pub previous: PathBuf,
    /// `<index>:<field>=<value>[,...]` with fields width, height, depth, isHot, connectsTo.
    #[arg(long)]
    pub replace: String,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long)]
    pub out: PathBuf,
    /// Defaults to the output path with an `.svg` extension.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = cabinet_psa_server::DEFAULT_PORT)]
    pub port: u16,
    #[arg(long, default_value_t = cabinet_psa_server::DEFAULT_WORKERS)]
    pub workers: usize,
    /// Repository snapshot loaded at start and written on shutdown.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::InvalidConfig(_) | Error::TooLarge { .. }) => 2,
            _ => 1,
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn load(input: &InputArgs) -> Result<CabinetDocument, CliError> {
    Ok(load_document(&input.input, input.format.as_deref())?)
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Optimize(a) => cmd_optimize(&a).map(|r| println!("{}", summary(&r))),
        Command::Bench(a) => cmd_bench(&a).map(|_| ()),
        Command::Reconfigure(a) => cmd_reconfigure(&a).map(|r| {
            println!("{}", summary(&r));
            println!("re-optimization took {:.3} s", r.wall_time.as_secs_f64());
        }),
        Command::Oracle(a) => cmd_oracle(&a).map(|doc| {
            println!(
                "exact front: {} entries over {} layouts; best heat {:.3}, wire {:.1} mm",
                doc.archive.len(),
                doc.iterations,
                doc.recommended.objectives.heat,
                doc.recommended.objectives.wire_mm
            )
        }),
        Command::Serve(a) => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
            eprintln!("listening on port {}", a.port);
            rt.block_on(cabinet_psa_server::serve(a.port, a.workers, a.snapshot))
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn summary(r: &OptimizationResult) -> String {
    format!(
        "heat {:.3} | wire {:.1} mm | {} iterations | fraction {:.3e} | {:.3} s",
        r.recommended.objectives.heat,
        r.recommended.objectives.wire_mm,
        r.iterations,
        r.fraction_of_space,
        r.wall_time.as_secs_f64()
    )
}

fn write_outputs(r: &OptimizationResult, doc: &CabinetDocument, out: &Path, svg: Option<&Path>) -> Result<(), CliError> {
    write(out, &write_result_json(r))?;
    if let Some(svg) = svg {
        write(svg, &render_svg(&r.recommended.placement, &doc.components, &r.recommended.objectives))?;
    }
    Ok(())
}

pub fn cmd_optimize(args: &OptimizeArgs) -> Result<OptimizationResult, CliError> {
    let doc = load(&args.input)?;
    let config = args.config.config();
    config.validate()?;
    let result = run(&config, &doc.components, &doc.cabinet)?;
    write_outputs(&result, &doc, &args.out, args.svg.as_deref())?;
    Ok(result)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<BenchmarkReport, CliError> {
    let doc = load(&args.input)?;
    let plan = BenchmarkPlan {
        initial_temperatures: args.t0_list.clone(),
        runs: args.runs,
        seed_base: args.seed_base,
        base: args.config.config(),
        threads: args.threads,
    };
    let report = run_benchmark(&plan, &doc.cabinet.name, &doc.components, &doc.cabinet)?;
    print!("{}", report.table());
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &args.out {
        Some(path) => write(path, &json)?,
        None => print!("{json}"),
    }
    Ok(report)
}

pub fn cmd_reconfigure(args: &ReconfigureArgs) -> Result<OptimizationResult, CliError> {
    let doc = load(&args.input)?;
    let previous_text = std::fs::read_to_string(&args.previous)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.previous.display())))?;
    let previous: ResultDocument = parse_result_json(&previous_text)?;
    let edits = parse_replacements(&args.replace)?;
    let components = apply_edits(&doc.components, &edits)?;
    let edited = CabinetDocument::new(doc.cabinet.clone(), components);

    let config = args.config.config();
    config.validate()?;
    let result = run_warm(&config, &edited.components, &edited.cabinet, &previous.recommended.order)?;
    let svg = args.svg.clone().unwrap_or_else(|| args.out.with_extension("svg"));
    write_outputs(&result, &edited, &args.out, Some(&svg))?;
    Ok(result)
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<ResultDocument, CliError> {
    let doc = load(&args.input)?;
    let start = Instant::now();
    let front = enumerate_pareto(&doc.components, &doc.cabinet, args.max_n)?;
    let mut result = ResultDocument::from_oracle(&front, &doc.components, &doc.cabinet)?;
    result.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    write(&args.out, &result.to_json())?;
    if let Some(svg) = &args.svg {
        let placement = (&result.recommended.placement).into();
        write(svg, &render_svg(&placement, &doc.components, &result.recommended.objectives))?;
    }
    Ok(result)
}
