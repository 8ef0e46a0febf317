//! `slrc`: structured low-rank completion experiment runner.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use slrc::experiments::{
    run_nonunique, write_nonunique_outputs, ExperimentId, ExperimentSpec, NonUniqueConfig,
    NonUniqueScenario,
};
use slrc::indexsets::triangle_set;
use slrc::relaxation::SolverConfig;

#[derive(Parser)]
#[command(
    name = "slrc",
    version,
    about = "Structured low-rank completion of Hankel and quasi-Hankel matrices: \
             exact canonical completions, a nuclear-norm relaxation solver, and \
             the experiment harness around them."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Grid resolution per axis.
    #[arg(long, default_value_t = 41)]
    grid: usize,
    /// Trial count M.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Splitting penalty μ.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Primal and dual residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Iteration cap of the splitting solver.
    #[arg(long, default_value_t = 50_000)]
    max_iters: usize,
    /// Heatmap black threshold.
    #[arg(long, default_value_t = 1e-6)]
    threshold: f64,
    /// Route the proximal step through the real 2n×2n embedding.
    #[arg(long, default_value_t = false)]
    real_extension: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Geometric-sequence recovery over a complex-λ grid (n = 6).
    Fig2(CommonOpts),
    /// Damped cosine family over (ρ, ω).
    Fig3Cos(CommonOpts),
    /// Damped linear (double-root) family over (ρ, φ).
    Fig3Double(CommonOpts),
    /// Random-root max-error grid over (rank, ρ), n = 9.
    Fig4 {
        #[command(flatten)]
        common: CommonOpts,
        /// Root family: "real" or "complex".
        #[arg(long, default_value = "real")]
        roots: String,
    },
    /// Bivariate rank-3 recovery curves over the point radius ρ.
    Fig5(CommonOpts),
    /// Non-unique symmetric-tensor completion experiment.
    Nonunique {
        #[command(flatten)]
        common: CommonOpts,
        /// Base matrix scenario: "identity-a" or "dense-a".
        #[arg(long, default_value = "identity-a")]
        scenario: String,
    },
    /// Debug facility: print the graded index set T(m,d).
    IndexSetDump {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: u32,
    },
}

fn build_spec(id: ExperimentId, common: &CommonOpts) -> ExperimentSpec {
    let mut spec = ExperimentSpec::new(id, common.out.clone());
    spec.seed = common.seed;
    spec.grid = common.grid;
    spec.trials = common.trials;
    spec.threshold = common.threshold;
    spec.solver = SolverConfig {
        mu: common.mu,
        max_iters: common.max_iters,
        primal_tol: common.tol,
        dual_tol: common.tol,
        use_real_extension: common.real_extension,
        ..SolverConfig::default()
    };
    spec
}

fn run(cli: Cli) -> slrc::Result<()> {
    match cli.command {
        Command::Fig2(c) => slrc::experiments::run_experiment(&build_spec(ExperimentId::Fig2, &c)),
        Command::Fig3Cos(c) => {
            slrc::experiments::run_experiment(&build_spec(ExperimentId::Fig3Cos, &c))
        }
        Command::Fig3Double(c) => {
            slrc::experiments::run_experiment(&build_spec(ExperimentId::Fig3Double, &c))
        }
        Command::Fig4 { common, roots } => {
            let id = match roots.as_str() {
                "real" => ExperimentId::Fig4Real,
                "complex" => ExperimentId::Fig4Complex,
                other => {
                    return Err(slrc::Error::InvalidInput(format!(
                        "unknown root family '{other}' (expected real|complex)"
                    )))
                }
            };
            slrc::experiments::run_experiment(&build_spec(id, &common))
        }
        Command::Fig5(c) => slrc::experiments::run_experiment(&build_spec(ExperimentId::Fig5, &c)),
        Command::Nonunique { common, scenario } => {
            let scenario = match scenario.as_str() {
                "identity-a" => NonUniqueScenario::IdentityA,
                "dense-a" => NonUniqueScenario::DenseA,
                other => {
                    return Err(slrc::Error::InvalidInput(format!(
                        "unknown scenario '{other}' (expected identity-a|dense-a)"
                    )))
                }
            };
            let spec = build_spec(ExperimentId::NonUnique, &common);
            let config = NonUniqueConfig {
                success_threshold: common.threshold.min(1e-4),
                ..NonUniqueConfig::new(scenario, common.seed)
            };
            let result = run_nonunique(&config, spec.trials, &spec.solver)?;
            println!(
                "success {}/{} (scenario {scenario:?})",
                result.success_count,
                result.trials.len()
            );
            write_nonunique_outputs(&spec, &config, &result)?;
            Ok(())
        }
        Command::IndexSetDump { dim, degree } => {
            print!("{}", triangle_set(dim, degree).to_text());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
