use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use maabo::experiments::{load_inputs, run_experiment, write_outputs, Experiment, ExperimentConfig};
use maabo::{DatasetId, Error};

/// Feature-subset tree search and rule mining.
#[derive(Debug, Parser)]
#[command(name = "maabo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search once and write the mined rules.
    Mine {
        #[command(flatten)]
        common: Common,
        /// Dataset to mine, overriding the configuration.
        #[arg(long)]
        dataset: Option<DatasetId>,
    },
    /// Strategy comparison across tree budgets.
    Exp1(Common),
    /// Noise-feature sweep, search against random subsets.
    Exp2(Common),
    /// Half-space search against a single tree on every dataset.
    Exp3(Common),
    /// Noise robustness of grid-searched single trees.
    Appendix1 {
        #[command(flatten)]
        common: Common,
        /// Search min-samples-leaf over every value 1..=100.
        #[arg(long)]
        full_msl_grid: bool,
    },
    /// Run time and rule yield against the candidate sample size.
    Appendix3(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// JSON file overriding the experiment defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory holding titanic.csv, boston.csv and diabetes.csv.
    #[arg(long, env = "MAABO_DATA_DIR", default_value = "data")]
    data_dir: PathBuf,
    /// Output directory [default: results/<command>].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seeds as `a..b`, `a..=b` or a comma list.
    #[arg(long)]
    seeds: Option<String>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_seeds(spec: &str) -> Result<Vec<u64>, Error> {
    let bad = || Error::InvalidConfig(format!("cannot parse seed list {spec:?}"));
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..=") {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        return Ok((a..=b).collect());
    }
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        return Ok((a..b).collect());
    }
    spec.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

fn load_config(exp: Experiment, common: &Common) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::defaults(exp);
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        cfg = cfg.with_overrides(value)?;
    }
    if let Some(spec) = &common.seeds {
        cfg.seeds = parse_seeds(spec)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(exp: Experiment, common: &Common, cfg: ExperimentConfig) -> anyhow::Result<()> {
    let inputs = load_inputs(exp, &cfg, &common.data_dir)?;
    let out_dir = common
        .out
        .clone()
        .unwrap_or_else(|| Path::new("results").join(exp.name()));
    log::info!(
        "{}: {} seed(s), {} noise level(s), writing to {}",
        exp.name(),
        cfg.seeds.len(),
        cfg.noise_levels.len(),
        out_dir.display()
    );
    let out = run_experiment(exp, &cfg, &inputs, common.jobs)?;
    if exp == Experiment::Mine && out.rules.is_empty() {
        log::warn!("no rule passed the filters; writing an empty rule file");
    }
    write_outputs(&out_dir, exp, &out).with_context(|| format!("writing results to {}", out_dir.display()))?;
    println!(
        "{}: {} run(s), {} rule(s) -> {}",
        exp.name(),
        out.runs.len(),
        out.rules.len(),
        out_dir.display()
    );
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Mine { common, dataset } => {
            let mut cfg = load_config(Experiment::Mine, &common)?;
            if let Some(d) = dataset {
                cfg.dataset = d;
            }
            run(Experiment::Mine, &common, cfg)
        }
        Command::Exp1(c) => run(Experiment::Exp1, &c, load_config(Experiment::Exp1, &c)?),
        Command::Exp2(c) => run(Experiment::Exp2, &c, load_config(Experiment::Exp2, &c)?),
        Command::Exp3(c) => run(Experiment::Exp3, &c, load_config(Experiment::Exp3, &c)?),
        Command::Appendix1 { common, full_msl_grid } => {
            let mut cfg = load_config(Experiment::Appendix1, &common)?;
            if full_msl_grid {
                cfg.msl_grid = (1..=100).collect();
            }
            run(Experiment::Appendix1, &common, cfg)
        }
        Command::Appendix3(c) => run(Experiment::Appendix3, &c, load_config(Experiment::Appendix3, &c)?),
    }
}

/// 2 for configuration problems, 3 for unreadable or malformed data.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::InvalidConfig(_) | Error::InvalidArgument(_) | Error::Capacity { .. }) => 2,
        Some(e) if e.is_data_error() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
