//! Command-line front end: target selection, synthesis, theta sweeps and the
//! error-budget calculator.

use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tsynth::budget::{qft_budget, ComposeRule, ErrorBudget};
use tsynth::error::Error as CoreError;
use tsynth::library::{crz, givens, load_matrix, qft, theta_grid, QftConvention};
use tsynth::matrix::DenseUnitary;
use tsynth::reconstruct::synthesize;
use tsynth::search::{Mode, SearchConfig};

const EXIT_INTERNAL: i32 = 1;
const EXIT_EPSILON_REGIME: i32 = 3;
const EXIT_BUDGET_EXCEEDED: i32 = 4;
const EXIT_BAD_INPUT: i32 = 5;

#[derive(Parser)]
#[command(name = "tsynth", about = "Optimal T-count / T-depth synthesis over Clifford+T", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize an optimal circuit for one target unitary
    Synth(SynthArgs),
    /// Synthesize every point of the published theta grid and report the
    /// average resource count
    Sweep(SweepArgs),
    /// Compose per-block approximation errors
    Budget(BudgetArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BuiltinName {
    Crz,
    Givens,
    Qft,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Count,
    Depth,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Swap,
    Noswap,
}

#[derive(Args)]
struct TargetArgs {
    /// Built-in target family
    #[arg(long, value_enum, conflicts_with = "matrix")]
    builtin: Option<BuiltinName>,
    /// Matrix file (`qubits <n>` header, then `row col re im` lines)
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Rotation angle for crz / givens
    #[arg(long)]
    theta: Option<f64>,
    /// Qubit count for qft
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Qubit-order convention for qft
    #[arg(long, value_enum, default_value = "swap")]
    convention: ConventionArg,
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Precision under the global-phase-invariant distance
    #[arg(long)]
    epsilon: f64,
    #[arg(long, value_enum, default_value = "count")]
    mode: ModeArg,
    /// Sequence-length budget
    #[arg(long, default_value_t = 8)]
    max_m: usize,
    /// Worker threads; 0 = all available cores
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write the gate list here
    #[arg(long)]
    out_circuit: Option<PathBuf>,
    /// Write the JSON report here (default: stdout)
    #[arg(long)]
    out_json: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Rotation family with a theta parameter
    #[arg(long, value_enum)]
    builtin: BuiltinName,
    #[arg(long)]
    epsilon: f64,
    #[arg(long, value_enum, default_value = "count")]
    mode: ModeArg,
    #[arg(long, default_value_t = 8)]
    max_m: usize,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write the CSV here (default: stdout)
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Qubit count of a QFT circuit split into controlled rotations
    #[arg(long, conflicts_with = "list")]
    qft_n: Option<usize>,
    /// Per-rotation epsilon for --qft-n
    #[arg(long, requires = "qft_n")]
    eps_r: Option<f64>,
    /// Explicit comma-separated epsilon list
    #[arg(long, value_delimiter = ',')]
    list: Option<Vec<f64>>,
    /// Composition rule for --list
    #[arg(long, value_enum, default_value = "sequence")]
    rule: RuleArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Tensor,
    Mult2,
    Sequence,
}

#[derive(Serialize)]
struct Baselines {
    /// Published average T-count of a single-qubit z-rotation at this
    /// epsilon: 3.067 log2(1/eps) - 4.322
    rz_avg_tcount: f64,
    /// Upper bound via Fredkin reduction: 3.067 log2(1/eps) + 2.678
    crz_upper_bound: f64,
}

#[derive(Serialize)]
struct RunReport {
    target: String,
    qubits: usize,
    mode: String,
    epsilon: f64,
    m: usize,
    generator_indices: Vec<usize>,
    achieved_distance: f64,
    t_gates: usize,
    thread_count: usize,
    m_max: usize,
    circuit_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    baselines: Option<Baselines>,
}

fn exit_code_for(err: &CoreError) -> i32 {
    match err {
        CoreError::EpsilonOutOfRange { .. } => EXIT_EPSILON_REGIME,
        CoreError::BudgetExceeded { .. } => EXIT_BUDGET_EXCEEDED,
        CoreError::Parse { .. }
        | CoreError::Io { .. }
        | CoreError::NotUnitary { .. }
        | CoreError::UnsupportedQubitCount { .. }
        | CoreError::BudgetEpsilonRange { .. }
        | CoreError::DimensionMismatch { .. } => EXIT_BAD_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn fail(err: CoreError) -> ! {
    eprintln!("error: {err}");
    std::process::exit(exit_code_for(&err));
}

fn resolve_target(args: &TargetArgs) -> Result<(String, DenseUnitary), CoreError> {
    match (&args.builtin, &args.matrix) {
        (Some(BuiltinName::Crz), None) => {
            let theta = args.theta.unwrap_or_else(|| {
                eprintln!("error: --builtin crz requires --theta");
                std::process::exit(EXIT_BAD_INPUT);
            });
            Ok((format!("crz(theta={theta})"), crz(theta)))
        }
        (Some(BuiltinName::Givens), None) => {
            let theta = args.theta.unwrap_or_else(|| {
                eprintln!("error: --builtin givens requires --theta");
                std::process::exit(EXIT_BAD_INPUT);
            });
            Ok((format!("givens(theta={theta})"), givens(theta)))
        }
        (Some(BuiltinName::Qft), None) => {
            let convention = match args.convention {
                ConventionArg::Swap => QftConvention::Swap,
                ConventionArg::Noswap => QftConvention::NoSwap,
            };
            let name = format!(
                "qft(n={}, convention={})",
                args.n,
                match convention {
                    QftConvention::Swap => "swap",
                    QftConvention::NoSwap => "noswap",
                }
            );
            Ok((name, qft(args.n, convention)?))
        }
        (None, Some(path)) => {
            let spec = load_matrix(path)?;
            Ok((format!("matrix:{}", path.display()), spec.matrix))
        }
        _ => {
            eprintln!("error: choose exactly one of --builtin or --matrix");
            std::process::exit(EXIT_BAD_INPUT);
        }
    }
}

fn build_config(
    n: usize,
    epsilon: f64,
    mode: ModeArg,
    max_m: usize,
    threads: usize,
) -> Result<SearchConfig, CoreError> {
    let cfg = match mode {
        ModeArg::Count => SearchConfig::count(n, epsilon)?,
        ModeArg::Depth => SearchConfig::depth(n, epsilon)?,
    };
    Ok(cfg.with_m_max(max_m).with_threads(threads))
}

fn run_synth(args: SynthArgs) {
    let (target_name, w) = resolve_target(&args.target).unwrap_or_else(|e| fail(e));
    let cfg = build_config(w.qubits(), args.epsilon, args.mode, args.max_m, args.threads)
        .unwrap_or_else(|e| fail(e));
    let started = Instant::now();
    let result = synthesize(&w, &cfg).unwrap_or_else(|e| fail(e));
    let wall = started.elapsed();

    let circuit_path = args.out_circuit.as_ref().map(|p| p.display().to_string());
    if let Some(path) = &args.out_circuit {
        let text = result.circuit.to_text();
        if let Err(source) = std::fs::write(path, text) {
            fail(CoreError::Io {
                path: path.display().to_string(),
                source,
            });
        }
    }
    let baselines = target_name.starts_with("crz").then(|| {
        let log_inv = (1.0 / args.epsilon).log2();
        Baselines {
            rz_avg_tcount: 3.067 * log_inv - 4.322,
            crz_upper_bound: 3.067 * log_inv + 2.678,
        }
    });
    let report = RunReport {
        target: target_name,
        qubits: w.qubits(),
        mode: match result.mode {
            Mode::Count => "count".into(),
            Mode::Depth => "depth".into(),
        },
        epsilon: args.epsilon,
        m: result.m,
        generator_indices: result.generator_indices.clone(),
        achieved_distance: result.achieved_distance,
        t_gates: result.circuit.t_count(),
        thread_count: args.threads,
        m_max: args.max_m,
        circuit_path,
        baselines,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out_json {
        Some(path) => {
            if let Err(source) = std::fs::write(path, json + "\n") {
                fail(CoreError::Io {
                    path: path.display().to_string(),
                    source,
                });
            }
        }
        None => println!("{json}"),
    }
    eprintln!(
        "synthesized m = {} in {:.1} ms (distance {:.3e})",
        report.m,
        wall.as_secs_f64() * 1e3,
        report.achieved_distance
    );
}

fn run_sweep(args: SweepArgs) {
    let make = |theta: f64| match args.builtin {
        BuiltinName::Crz => Ok(crz(theta)),
        BuiltinName::Givens => Ok(givens(theta)),
        BuiltinName::Qft => Err(CoreError::Parse {
            path: "--builtin".into(),
            line: 1,
            what: "sweep needs a family with a theta parameter (crz or givens)".into(),
        }),
    };
    if let Err(e) = make(0.0) {
        fail(e);
    }
    let cfg = build_config(2, args.epsilon, args.mode, args.max_m, args.threads)
        .unwrap_or_else(|e| fail(e));
    let mut csv = String::from("theta,m,wall_ms\n");
    let mut total = 0isize;
    let mut failures = 0usize;
    let grid = theta_grid();
    for &theta in &grid {
        let w = make(theta).unwrap();
        let started = Instant::now();
        let m: isize = match tsynth::search::min_resource(&w, &cfg) {
            Ok(c) => c.indices.len() as isize,
            Err(CoreError::BudgetExceeded { .. }) => -1,
            Err(e) => fail(e),
        };
        let wall_ms = started.elapsed().as_millis();
        csv.push_str(&format!("{theta},{m},{wall_ms}\n"));
        if m < 0 {
            failures += 1;
        } else {
            total += m;
        }
    }
    match &args.out_csv {
        Some(path) => {
            if let Err(source) = std::fs::write(path, &csv) {
                fail(CoreError::Io {
                    path: path.display().to_string(),
                    source,
                });
            }
        }
        None => print!("{csv}"),
    }
    let solved = grid.len() - failures;
    if solved > 0 {
        eprintln!(
            "average m over {solved} solved points: {:.3}{}",
            total as f64 / solved as f64,
            if failures > 0 {
                format!(" ({failures} points exceeded --max-m)")
            } else {
                String::new()
            }
        );
    } else {
        eprintln!("no point solved within --max-m");
    }
}

fn run_budget(args: BudgetArgs) {
    match (args.qft_n, args.list) {
        (Some(n), None) => {
            let eps_r = args.eps_r.unwrap_or_else(|| {
                eprintln!("error: --qft-n requires --eps-r");
                std::process::exit(EXIT_BAD_INPUT);
            });
            let (n_r, eps) = qft_budget(n, eps_r).unwrap_or_else(|e| fail(e));
            let out = serde_json::json!({
                "qft_n": n,
                "eps_r": eps_r,
                "rotations": n_r,
                "composed_epsilon": eps,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        (None, Some(list)) => {
            let rule = match args.rule {
                RuleArg::Tensor => ComposeRule::Tensor,
                RuleArg::Mult2 => ComposeRule::Mult2,
                RuleArg::Sequence => ComposeRule::Sequence,
            };
            let budget = ErrorBudget::compose(rule, &list).unwrap_or_else(|e| fail(e));
            let out = serde_json::json!({
                "rule": match rule {
                    ComposeRule::Tensor => "tensor",
                    ComposeRule::Mult2 => "mult2",
                    ComposeRule::Sequence => "sequence",
                },
                "block_epsilons": budget.block_epsilons,
                "composed_epsilon": budget.composed_epsilon,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        _ => {
            eprintln!("error: choose exactly one of --qft-n or --list");
            std::process::exit(EXIT_BAD_INPUT);
        }
    }
    std::io::stdout().flush().ok();
}

fn main() {
    match Cli::parse().command {
        Command::Synth(args) => run_synth(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Budget(args) => run_budget(args),
    }
}
