//! Command-line front door: discover on CSV data, simulate synthetic
//! datasets, evaluate confusion-matrix experiments.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use pclingam::bench::{run_experiment, ExperimentParams, Step1};
use pclingam::data::Dataset;
use pclingam::discovery::{pclingam, DiscoveryConfig};
use pclingam::graph::{ngdag_pattern, NgPattern};
use pclingam::json::{ModelJson, PatternJson, ReportJson, SimulationJson, FORMAT_VERSION};
use pclingam::scm::{
    default_edge_prob, random_model, DisturbanceFamily, DisturbanceSpec, ScmModel,
};
use pclingam::Error;

#[derive(Parser)]
#[command(
    name = "pclingam",
    version,
    about = "Causal discovery for linear models with mixed Gaussian/non-Gaussian disturbances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the discovery pipeline on a CSV dataset
    Discover(DiscoverArgs),
    /// Sample a synthetic dataset from a random or preset model
    Simulate(SimulateArgs),
    /// Run randomized experiments and report an edge-mark confusion matrix
    Evaluate(EvaluateArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Step1Arg {
    Oracle,
    Pc,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// x -> y -> z with y := 3x + e_y, z := -2y + e_z, uniform e_z
    Chain3,
}

#[derive(Args)]
struct DiscoverArgs {
    /// CSV file: header row of variable names, one sample per row
    data: PathBuf,
    /// Significance level of the conditional-independence tests
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Significance level for rejecting residual normality
    #[arg(long, default_value_t = 0.01)]
    ng_alpha: f64,
    /// Cap on the number of DAGs enumerated from the estimated pattern
    #[arg(long, default_value_t = 10_000)]
    max_class_size: usize,
    /// Write the full report JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 6)]
    nodes: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// RNG seed; falls back to PCLINGAM_SEED, else one is drawn and printed
    #[arg(long, env = "PCLINGAM_SEED")]
    seed: Option<u64>,
    /// Per-pair edge probability (default keeps about `nodes` edges)
    #[arg(long)]
    edge_prob: Option<f64>,
    /// Probability that a node gets a non-Gaussian disturbance
    #[arg(long, default_value_t = 0.5)]
    ng_prob: f64,
    /// Use a fixed model instead of a random one
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Where to write the dataset CSV
    #[arg(long, default_value = "data.csv")]
    out: PathBuf,
    /// Where to write the model JSON (default: CSV path with .model.json)
    #[arg(long)]
    model_out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 6)]
    nodes: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Step 1 source: the true pattern (oracle) or the PC estimate
    #[arg(long, value_enum, default_value_t = Step1Arg::Oracle)]
    step1: Step1Arg,
    #[arg(long, env = "PCLINGAM_SEED")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    #[arg(long, default_value_t = 0.01)]
    ng_alpha: f64,
    #[arg(long, default_value_t = 10_000)]
    max_class_size: usize,
    #[arg(long)]
    edge_prob: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    ng_prob: f64,
    /// Write the confusion-matrix JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write one JSON line per run here
    #[arg(long)]
    runs_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Discover(args) => discover(args),
        Command::Simulate(args) => simulate(args),
        Command::Evaluate(args) => evaluate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 2 for input problems, 3 for computation failures.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Input(_) | Error::Io(_) | Error::InvalidArgument(_) => 2,
        Error::ClassTooLarge { .. }
        | Error::DegenerateData(_)
        | Error::InsufficientData { .. }
        | Error::InconsistentOrientation { .. }
        | Error::NotEquivalent
        | Error::ContractViolation(_) => 3,
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let nanos =
                SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.subsec_nanos()).unwrap_or(0);
            let drawn = u64::from(nanos) ^ u64::from(std::process::id()).rotate_left(32);
            println!("seed: {drawn}");
            drawn
        }
    }
}

fn open_input(path: &Path) -> Result<BufReader<File>, Error> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn create_output(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let mut file = create_output(path)?;
    serde_json::to_writer_pretty(&mut file, value)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    file.write_all(b"\n")?;
    file.flush()?;
    Ok(())
}

/// Pattern summary such as `x — y, y → z; non-Gaussian: {z}`.
fn pattern_summary(pattern: &NgPattern, names: &[String]) -> String {
    let g = pattern.graph();
    let mut rendered = Vec::new();
    for i in 0..g.node_count() {
        for j in (i + 1)..g.node_count() {
            if g.has_undirected(i, j) {
                rendered.push(format!("{} — {}", names[i], names[j]));
            } else if g.has_directed(i, j) {
                rendered.push(format!("{} → {}", names[i], names[j]));
            } else if g.has_directed(j, i) {
                rendered.push(format!("{} → {}", names[j], names[i]));
            }
        }
    }
    let ng_names: Vec<&str> = pattern
        .ng()
        .iter()
        .enumerate()
        .filter(|&(_, &flag)| flag)
        .map(|(i, _)| names[i].as_str())
        .collect();
    let body = if rendered.is_empty() { "(no edges)".to_string() } else { rendered.join(", ") };
    format!("{body}; non-Gaussian: {{{}}}", ng_names.join(", "))
}

fn discover(args: DiscoverArgs) -> Result<(), Error> {
    let config = DiscoveryConfig {
        ci_alpha: args.alpha,
        ng_alpha: args.ng_alpha,
        max_class_size: args.max_class_size,
        max_cond_size: None,
    };
    let data = Dataset::from_csv(open_input(&args.data)?)?;
    let report = pclingam(&data, &config, None)?;
    let doc = ReportJson::from_report(&report, data.names())?;
    if let Some(out) = &args.out {
        write_json(out, &doc)?;
    }
    match args.format {
        OutputFormat::Text => {
            println!("{}", pattern_summary(&report.pattern, data.names()));
            println!(
                "class size: {}; step-1 repairs: {}",
                report.dag_scores.len(),
                report.step1_repairs
            );
            for (i, p) in report.residual_p_values.iter().enumerate() {
                println!("normality p[{}] = {p:.4}", data.names()[i]);
            }
        }
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| Error::Input(format!("serialization failed: {e}")))?;
            println!("{text}");
        }
    }
    Ok(())
}

/// The three-variable chain preset with coefficients 3 and -2 and a uniform
/// sink disturbance.
fn chain3_model() -> ScmModel {
    let mut b = nalgebra::DMatrix::<f64>::zeros(3, 3);
    b[(1, 0)] = 3.0;
    b[(2, 1)] = -2.0;
    ScmModel::new(
        vec![0, 1, 2],
        b,
        vec![0.0; 3],
        vec![
            DisturbanceSpec::gaussian(1.0).expect("positive variance"),
            DisturbanceSpec::gaussian(1.0).expect("positive variance"),
            DisturbanceSpec::new(DisturbanceFamily::Uniform, 1.0).expect("positive variance"),
        ],
    )
    .expect("valid preset")
}

fn simulate(args: SimulateArgs) -> Result<(), Error> {
    let seed = resolve_seed(args.seed);
    let model = match args.preset {
        Some(Preset::Chain3) => chain3_model(),
        None => {
            let edge_prob = args.edge_prob.unwrap_or_else(|| default_edge_prob(args.nodes));
            random_model(args.nodes, edge_prob, args.ng_prob, seed)?
        }
    };
    let data = model.sample(args.samples, seed.wrapping_add(1))?;
    data.to_csv(create_output(&args.out)?)?;

    let model_path = args.model_out.unwrap_or_else(|| {
        let stem = args.out.file_stem().unwrap_or_default().to_string_lossy();
        args.out.with_file_name(format!("{stem}.model.json"))
    });
    let pattern = ngdag_pattern(&model.ngdag());
    let doc = SimulationJson {
        format_version: FORMAT_VERSION,
        model: ModelJson::from_model(&model),
        pattern: PatternJson::from_pattern(&pattern, data.names())?,
    };
    write_json(&model_path, &doc)?;
    println!(
        "wrote {} ({} samples) and {}",
        args.out.display(),
        args.samples,
        model_path.display()
    );
    Ok(())
}

#[derive(serde::Serialize)]
struct RunLine {
    run: usize,
    truth: PatternJson,
    estimate: Option<PatternJson>,
    step1_repairs: Option<usize>,
    best_dag: Option<Vec<[usize; 2]>>,
    error: Option<String>,
}

#[derive(serde::Serialize)]
struct EvaluateDoc {
    format_version: u32,
    runs: usize,
    nodes: usize,
    samples: usize,
    step1: Step1,
    seed: u64,
    counts: [[u64; 4]; 4],
    total: u64,
    diagonal: u64,
    diagonal_fraction: f64,
    failures: usize,
    step1_repairs_total: usize,
}

fn evaluate(args: EvaluateArgs) -> Result<(), Error> {
    let seed = resolve_seed(args.seed);
    let step1 = match args.step1 {
        Step1Arg::Oracle => Step1::Oracle,
        Step1Arg::Pc => Step1::Pc,
    };
    let params = ExperimentParams {
        n_runs: args.runs,
        node_count: args.nodes,
        n_samples: args.samples,
        step1,
        config: DiscoveryConfig {
            ci_alpha: args.alpha,
            ng_alpha: args.ng_alpha,
            max_class_size: args.max_class_size,
            max_cond_size: None,
        },
        edge_prob: args.edge_prob,
        ng_prob: args.ng_prob,
        seed,
    };
    let result = run_experiment(&params)?;
    let names: Vec<String> = (0..args.nodes).map(|i| format!("x{i}")).collect();
    let repairs_total: usize = result
        .runs
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|rep| rep.step1_repairs))
        .sum();

    if let Some(path) = &args.runs_out {
        let mut file = create_output(path)?;
        for record in &result.runs {
            let line = RunLine {
                run: record.run,
                truth: PatternJson::from_pattern(&record.truth, &names)?,
                estimate: match &record.outcome {
                    Ok(rep) => Some(PatternJson::from_pattern(&rep.pattern, &names)?),
                    Err(_) => None,
                },
                step1_repairs: record.outcome.as_ref().ok().map(|r| r.step1_repairs),
                best_dag: record
                    .outcome
                    .as_ref()
                    .ok()
                    .map(|r| r.best_dag.edges().map(|(a, b)| [a, b]).collect()),
                error: record.outcome.as_ref().err().cloned(),
            };
            let text = serde_json::to_string(&line)
                .map_err(|e| Error::Input(format!("serialization failed: {e}")))?;
            writeln!(file, "{text}")?;
        }
        file.flush()?;
    }

    let doc = EvaluateDoc {
        format_version: FORMAT_VERSION,
        runs: args.runs,
        nodes: args.nodes,
        samples: args.samples,
        step1,
        seed,
        counts: result.matrix.counts,
        total: result.matrix.total(),
        diagonal: result.matrix.diagonal(),
        diagonal_fraction: result.matrix.diagonal_fraction(),
        failures: result.failures,
        step1_repairs_total: repairs_total,
    };
    if let Some(path) = &args.out {
        write_json(path, &doc)?;
    }
    match args.format {
        OutputFormat::Text => {
            print!("{}", result.matrix.to_text());
            println!(
                "diagonal: {}/{} ({:.3}); failures: {}; step-1 repairs: {}",
                doc.diagonal, doc.total, doc.diagonal_fraction, doc.failures, repairs_total
            );
        }
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| Error::Input(format!("serialization failed: {e}")))?;
            println!("{text}");
        }
    }
    Ok(())
}
