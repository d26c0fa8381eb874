//! Seeded experiment protocols, run records and their aggregation.
//!
//! Every protocol builds one `(train, validation)` pair per seed and per
//! noise level, runs one or more tree-building strategies on it, mines rules
//! from the resulting trees and emits a [`RunRecord`] per strategy run.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cart::{best_depth_tree, leaf_nodes, TreeParams, TrainedTree};
use crate::combinatorics::{fcs_size, FeatureSubset};
use crate::data::{add_noise_features, split_train_val, DatasetId, NoiseSpec, SplitSpec};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::mining::{mine_rules, rules_from_trees, MiningParams, Rule};
use crate::search::{
    baseline_strategy, run_maabo_mt, Baseline, SampleSize, ScoredSubset, SearchConfig, Strategy,
};

/// Version of the `runs.csv` / `summary.csv` / `rules.*` layouts.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Mine,
    Exp1,
    Exp2,
    Exp3,
    Appendix1,
    Appendix3,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Mine => "mine",
            Experiment::Exp1 => "exp1",
            Experiment::Exp2 => "exp2",
            Experiment::Exp3 => "exp3",
            Experiment::Appendix1 => "appendix1",
            Experiment::Appendix3 => "appendix3",
        }
    }
}

/// Total tree budget `N_I + N_B` for one search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Budget {
    /// Half of the subset space, rounded down.
    HalfSpace,
    Total(usize),
}

impl Budget {
    pub fn resolve(self, d: usize, dp: usize) -> Result<usize> {
        match self {
            Budget::Total(n) => Ok(n),
            Budget::HalfSpace => Ok((fcs_size(d, dp)? / 2) as usize),
        }
    }
}

/// How many frequent high-pool features narrow the candidate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopFeatures {
    /// Every feature, so no narrowing.
    All,
    /// `floor(D / 5)`, at least one.
    FifthOfD,
    Count(usize),
}

impl TopFeatures {
    pub fn resolve(self, d: usize) -> usize {
        match self {
            TopFeatures::All => d,
            TopFeatures::FifthOfD => (d / 5).max(1),
            TopFeatures::Count(n) => n,
        }
    }
}

/// Hyperparameters shared by all protocols. Each experiment starts from its
/// own defaults; a JSON file may override any subset of the fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: DatasetId,
    /// Datasets visited by the multi-dataset protocol.
    pub datasets: Vec<DatasetId>,
    pub dp: usize,
    pub n_init: usize,
    pub alpha: f64,
    pub p_max: usize,
    pub h: f64,
    pub b: f64,
    pub n_top_features: TopFeatures,
    pub sample_size: SampleSize,
    pub tree: TreeParams,
    pub mining: MiningParams,
    pub seeds: Vec<u64>,
    pub strategies: Vec<Strategy>,
    /// Budget used by single-budget protocols.
    pub budget: Budget,
    /// Budget sweep for the strategy comparison.
    pub budgets: Vec<usize>,
    pub noise_levels: Vec<usize>,
    /// Candidate sample sizes for the timing sweep.
    pub sample_sizes: Vec<SampleSize>,
    /// Minimum-samples-per-leaf grid for the single-tree grid search.
    pub msl_grid: Vec<usize>,
    pub train_fraction: f64,
}

impl ExperimentConfig {
    pub fn defaults(exp: Experiment) -> Self {
        let base = Self {
            dataset: DatasetId::Titanic,
            datasets: DatasetId::ALL.to_vec(),
            dp: 3,
            n_init: 10,
            alpha: 0.25,
            p_max: 5,
            h: 0.5,
            b: 0.5,
            n_top_features: TopFeatures::All,
            sample_size: SampleSize::Unbounded,
            tree: TreeParams::default(),
            mining: MiningParams::default(),
            seeds: (0..50).collect(),
            strategies: vec![Strategy::AllTrees, Strategy::Maabo, Strategy::Randomized, Strategy::SingleTree],
            budget: Budget::HalfSpace,
            budgets: (1..=8).map(|k| 10 * k).collect(),
            noise_levels: vec![0],
            sample_sizes: vec![SampleSize::Unbounded],
            msl_grid: vec![1, 2, 5, 10, 20, 50, 100],
            train_fraction: 0.7,
        };
        match exp {
            Experiment::Mine => Self {
                seeds: vec![0],
                strategies: vec![Strategy::Maabo],
                ..base
            },
            Experiment::Exp1 => base,
            Experiment::Exp2 => Self {
                strategies: vec![Strategy::Maabo, Strategy::Randomized],
                budget: Budget::Total(110),
                noise_levels: (1..=20).collect(),
                ..base
            },
            Experiment::Exp3 => Self {
                strategies: vec![Strategy::Maabo, Strategy::SingleTree],
                ..base
            },
            Experiment::Appendix1 => Self {
                seeds: (0..100).collect(),
                strategies: vec![Strategy::SingleTree],
                noise_levels: (0..=20).collect(),
                ..base
            },
            Experiment::Appendix3 => Self {
                strategies: vec![Strategy::Maabo],
                budget: Budget::Total(110),
                noise_levels: (1..=20).collect(),
                n_top_features: TopFeatures::FifthOfD,
                sample_sizes: vec![
                    SampleSize::Bounded(10),
                    SampleSize::Bounded(100),
                    SampleSize::Bounded(1000),
                    SampleSize::Unbounded,
                ],
                ..base
            },
        }
    }

    /// Applies a JSON object of overrides on top of `self`. Nested objects
    /// merge key by key; anything else replaces the current value.
    pub fn with_overrides(self, overrides: Value) -> Result<Self> {
        let mut current = serde_json::to_value(&self).map_err(|e| Error::config(e.to_string()))?;
        if !overrides.is_object() {
            return Err(Error::config("configuration file must contain a JSON object"));
        }
        merge(&mut current, overrides);
        serde_json::from_value(current).map_err(|e| Error::config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        self.mining.validate()?;
        self.tree.validate()?;
        if self.seeds.is_empty() {
            return Err(Error::config("at least one seed is required"));
        }
        if self.strategies.is_empty() {
            return Err(Error::config("at least one strategy is required"));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::config("train_fraction must lie in (0, 1)"));
        }
        if self.noise_levels.is_empty() || self.sample_sizes.is_empty() {
            return Err(Error::config("noise_levels and sample_sizes must be nonempty"));
        }
        if self.msl_grid.is_empty() || self.msl_grid.contains(&0) {
            return Err(Error::config("msl_grid must be nonempty with positive entries"));
        }
        if self.budgets.iter().any(|&b| b < self.n_init) {
            return Err(Error::config("every budget must be at least n_init"));
        }
        // Probe the search parameters on a space just large enough for n_init.
        let probe = self.search_config(self.dp + self.n_init.max(1), self.n_init, 0)?;
        SearchConfig { n_bayes: 0, ..probe }.validate()
    }

    /// Search parameters for `d` features and a total budget of `budget` trees.
    pub fn search_config(&self, d: usize, budget: usize, seed: u64) -> Result<SearchConfig> {
        let n_bayes = budget.checked_sub(self.n_init).ok_or_else(|| {
            Error::config(format!("budget {budget} is below n_init = {}", self.n_init))
        })?;
        Ok(SearchConfig {
            d,
            dp: self.dp,
            n_init: self.n_init,
            n_bayes,
            alpha: self.alpha,
            p_max: self.p_max,
            h: self.h,
            b: self.b,
            n_top_features: self.n_top_features.resolve(d),
            sample_size: self.sample_size,
            seed,
            tree: self.tree,
            enumeration_cap: crate::combinatorics::DEFAULT_ENUMERATION_CAP,
        })
    }
}

fn merge(into: &mut Value, from: Value) {
    match (into, from) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, v) in b {
                match a.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        a.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// One strategy run on one seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub experiment: String,
    pub dataset: String,
    pub strategy: String,
    pub n_noise: usize,
    /// `N_E`, for searches that sample candidates.
    pub sample_size: String,
    /// Trees requested (`N_I + N_B`, or the whole space, or one).
    pub budget: usize,
    pub seed: u64,
    pub trees_built: usize,
    /// `|L|`: every leaf of every tree.
    pub leaves: usize,
    /// `|L'|`.
    pub rules_extracted: usize,
    pub noise_content_rate: f64,
    /// Thread CPU seconds spent on tree search plus rule mining.
    pub wall_time: f64,
    pub best_val_score: f64,
    pub chosen_depth: Option<usize>,
    pub chosen_msl: Option<usize>,
    pub uses_noise: Option<bool>,
}

impl RunRecord {
    fn sort_key(&self) -> impl Ord + '_ {
        (
            &self.experiment,
            &self.dataset,
            &self.strategy,
            self.n_noise,
            sample_order(&self.sample_size),
            self.budget,
            self.seed,
        )
    }
}

fn sample_order(s: &str) -> (u8, usize) {
    s.parse::<usize>().map_or((1, 0), |n| (0, n))
}

/// One extracted rule, tagged with the run it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub schema_version: u32,
    pub experiment: String,
    pub dataset: String,
    pub strategy: String,
    pub n_noise: usize,
    pub seed: u64,
    pub rule_id: String,
    pub class: String,
    pub sample_size: usize,
    pub gini: f64,
    pub literals: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentOutput {
    pub runs: Vec<RunRecord>,
    pub rules: Vec<RuleRecord>,
}

impl ExperimentOutput {
    fn extend(&mut self, other: ExperimentOutput) {
        self.runs.extend(other.runs);
        self.rules.extend(other.rules);
    }

    fn sort(&mut self) {
        self.runs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        self.rules.sort_by(|a, b| {
            (&a.dataset, &a.strategy, a.n_noise, a.seed)
                .cmp(&(&b.dataset, &b.strategy, b.n_noise, b.seed))
        });
    }
}

/// CPU time consumed by the calling thread, in seconds.
pub fn thread_cpu_seconds() -> f64 {
    let mut ts = libc::timespec {
        tv_sec: 0,
        tv_nsec: 0,
    };
    // SAFETY: `ts` is a valid, writable timespec for the duration of the call.
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    if rc != 0 {
        return 0.0;
    }
    ts.tv_sec as f64 + ts.tv_nsec as f64 * 1e-9
}

/// Train/validation data for one seed and noise level.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub dataset: DatasetId,
    pub n_noise: usize,
    pub seed: u64,
    pub train: Dataset,
    pub val: Dataset,
}

impl Prepared {
    pub fn new(
        dataset: DatasetId,
        base: &Dataset,
        n_noise: usize,
        seed: u64,
        train_fraction: f64,
    ) -> Result<Self> {
        let data = add_noise_features(base, NoiseSpec { count: n_noise, seed })?;
        let (train, val) = split_train_val(&data, SplitSpec { train_fraction, seed })?;
        Ok(Self {
            dataset,
            n_noise,
            seed,
            train,
            val,
        })
    }

    pub fn d(&self) -> usize {
        self.train.n_features()
    }

    fn noise(&self) -> FeatureSubset {
        self.train.noise_features()
    }
}

/// Seed for the search stream, kept apart from the split and noise streams.
fn search_seed(seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2);
    rng.next_u64()
}

/// Trees from one strategy run, along with the rules mined from them.
#[derive(Debug, Clone)]
pub struct StrategyRun {
    pub strategy: Strategy,
    pub budget: usize,
    pub verified: Vec<ScoredSubset>,
    pub leaves: usize,
    pub rules: Vec<Rule>,
    pub wall_time: f64,
}

impl StrategyRun {
    pub fn best_score(&self) -> f64 {
        self.verified.iter().map(|s| s.score).fold(0.0, f64::max)
    }
}

/// Builds trees with `strategy` and mines them. `budget` is ignored by the
/// all-trees and single-tree strategies.
pub fn run_strategy(
    cfg: &ExperimentConfig,
    prepared: &Prepared,
    strategy: Strategy,
    budget: usize,
    sample_size: SampleSize,
) -> Result<StrategyRun> {
    let d = prepared.d();
    let mut scfg = cfg.search_config(d, budget.max(cfg.n_init), search_seed(prepared.seed))?;
    scfg.sample_size = sample_size;
    let mining = MiningParams {
        n_classes: prepared.train.n_classes(),
        ..cfg.mining
    };
    let start = thread_cpu_seconds();
    let verified = match strategy {
        Strategy::Maabo => run_maabo_mt(&scfg, &prepared.train, &prepared.val)?.verified,
        Strategy::Randomized => baseline_strategy(Baseline::Randomized, &scfg, &prepared.train, &prepared.val)?,
        Strategy::AllTrees => baseline_strategy(Baseline::AllTrees, &scfg, &prepared.train, &prepared.val)?,
        Strategy::SingleTree => baseline_strategy(Baseline::SingleTree, &scfg, &prepared.train, &prepared.val)?,
    };
    let leaves = rules_from_trees(verified.iter().map(|s| &s.tree));
    let rules = mine_rules(&leaves, &mining);
    let wall_time = thread_cpu_seconds() - start;
    let budget = match strategy {
        Strategy::Maabo | Strategy::Randomized => scfg.budget(),
        Strategy::AllTrees => fcs_size(d, cfg.dp)? as usize,
        Strategy::SingleTree => 1,
    };
    Ok(StrategyRun {
        strategy,
        budget,
        verified,
        leaves: leaves.len(),
        rules,
        wall_time,
    })
}

/// Share of rules that mention at least one noise feature; zero without rules.
pub fn noise_content_rate(rules: &[Rule], noise: &FeatureSubset) -> f64 {
    if rules.is_empty() {
        return 0.0;
    }
    rules.iter().filter(|r| r.mentions_any(noise)).count() as f64 / rules.len() as f64
}

fn record(exp: Experiment, p: &Prepared, run: &StrategyRun, sample_size: Option<SampleSize>) -> RunRecord {
    RunRecord {
        schema_version: SCHEMA_VERSION,
        experiment: exp.name().into(),
        dataset: p.dataset.name().into(),
        strategy: run.strategy.name().into(),
        n_noise: p.n_noise,
        sample_size: sample_size.map(|s| s.to_string()).unwrap_or_default(),
        budget: run.budget,
        seed: p.seed,
        trees_built: run.verified.len(),
        leaves: run.leaves,
        rules_extracted: run.rules.len(),
        noise_content_rate: noise_content_rate(&run.rules, &p.noise()),
        wall_time: run.wall_time,
        best_val_score: run.best_score(),
        chosen_depth: None,
        chosen_msl: None,
        uses_noise: None,
    }
}

/// Rules rendered with feature names, numbered `P1, P2, ...` in selection order.
pub fn rule_records(exp: Experiment, p: &Prepared, run: &StrategyRun) -> Vec<RuleRecord> {
    let prefix = if run.strategy == Strategy::SingleTree { "S" } else { "P" };
    run.rules
        .iter()
        .enumerate()
        .map(|(i, r)| RuleRecord {
            schema_version: SCHEMA_VERSION,
            experiment: exp.name().into(),
            dataset: p.dataset.name().into(),
            strategy: run.strategy.name().into(),
            n_noise: p.n_noise,
            seed: p.seed,
            rule_id: format!("{prefix}{}", i + 1),
            class: p.train.class_names()[r.class].clone(),
            sample_size: r.n,
            gini: r.gini,
            literals: r.render_literals(&p.train),
        })
        .collect()
}

/// Runs `f` for every item on a pool of `jobs` workers (all cores when zero)
/// and concatenates the outputs in item order.
fn parallel<T, F>(items: Vec<T>, jobs: usize, f: F) -> Result<ExperimentOutput>
where
    T: Send,
    F: Fn(T) -> Result<ExperimentOutput> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    let parts: Vec<Result<ExperimentOutput>> = pool.install(|| items.into_par_iter().map(f).collect());
    let mut out = ExperimentOutput::default();
    for part in parts {
        out.extend(part?);
    }
    out.sort();
    Ok(out)
}

/// Loads the datasets an experiment needs from `data_dir`.
pub fn load_inputs(exp: Experiment, cfg: &ExperimentConfig, data_dir: &Path) -> Result<Vec<(DatasetId, Dataset)>> {
    let ids = if exp == Experiment::Exp3 { cfg.datasets.clone() } else { vec![cfg.dataset] };
    ids.into_iter().map(|id| Ok((id, id.load(data_dir)?))).collect()
}

/// Runs an experiment over already loaded datasets.
pub fn run_experiment(
    exp: Experiment,
    cfg: &ExperimentConfig,
    inputs: &[(DatasetId, Dataset)],
    jobs: usize,
) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let mut units = Vec::new();
    for (id, data) in inputs {
        for &n_noise in &cfg.noise_levels {
            for &seed in &cfg.seeds {
                units.push((*id, data, n_noise, seed));
            }
        }
    }
    parallel(units, jobs, |(id, data, n_noise, seed)| {
        let p = Prepared::new(id, data, n_noise, seed, cfg.train_fraction)?;
        log::debug!("{} {} noise={} seed={}", exp.name(), id, n_noise, seed);
        match exp {
            Experiment::Mine | Experiment::Exp2 | Experiment::Exp3 => single_budget(exp, cfg, &p),
            Experiment::Exp1 => budget_sweep(cfg, &p),
            Experiment::Appendix1 => grid_single_tree(cfg, &p),
            Experiment::Appendix3 => sample_size_sweep(cfg, &p),
        }
    })
}

/// Every configured strategy at the configured budget.
fn single_budget(exp: Experiment, cfg: &ExperimentConfig, p: &Prepared) -> Result<ExperimentOutput> {
    let budget = cfg.budget.resolve(p.d(), cfg.dp)?;
    let mut out = ExperimentOutput::default();
    for &s in &cfg.strategies {
        let run = run_strategy(cfg, p, s, budget, cfg.sample_size)?;
        out.runs.push(record(exp, p, &run, sampled(s, cfg.sample_size)));
        out.rules.extend(rule_records(exp, p, &run));
    }
    Ok(out)
}

fn sampled(s: Strategy, n: SampleSize) -> Option<SampleSize> {
    (s == Strategy::Maabo).then_some(n)
}

/// Budget-independent strategies once, budgeted ones at every budget.
fn budget_sweep(cfg: &ExperimentConfig, p: &Prepared) -> Result<ExperimentOutput> {
    let exp = Experiment::Exp1;
    let mut out = ExperimentOutput::default();
    for &s in &cfg.strategies {
        let budgets: Vec<usize> = match s {
            Strategy::Maabo | Strategy::Randomized => cfg.budgets.clone(),
            Strategy::AllTrees | Strategy::SingleTree => vec![cfg.n_init],
        };
        for b in budgets {
            let run = run_strategy(cfg, p, s, b, cfg.sample_size)?;
            out.runs.push(record(exp, p, &run, sampled(s, cfg.sample_size)));
        }
    }
    Ok(out)
}

fn sample_size_sweep(cfg: &ExperimentConfig, p: &Prepared) -> Result<ExperimentOutput> {
    let exp = Experiment::Appendix3;
    let budget = cfg.budget.resolve(p.d(), cfg.dp)?;
    let mut out = ExperimentOutput::default();
    for &n_e in &cfg.sample_sizes {
        for &s in &cfg.strategies {
            let run = run_strategy(cfg, p, s, budget, n_e)?;
            out.runs.push(record(exp, p, &run, sampled(s, n_e)));
        }
    }
    Ok(out)
}

/// Result of the depth x min-samples-leaf grid for one all-feature tree.
#[derive(Debug, Clone)]
pub struct GridChoice {
    pub tree: TrainedTree,
    pub depth: usize,
    pub msl: usize,
    pub score: f64,
}

/// Maximizes validation macro-F1 over depths `1..=p_max` and the MSL grid.
/// Ties keep the earliest grid entry, then the shallowest depth.
pub fn grid_search_tree(
    train: &Dataset,
    val: &Dataset,
    p_max: usize,
    msl_grid: &[usize],
    base: &TreeParams,
) -> Result<GridChoice> {
    let all = train.all_features();
    let mut best: Option<GridChoice> = None;
    for &msl in msl_grid {
        let params = TreeParams {
            min_samples_leaf: msl,
            ..*base
        };
        let r = best_depth_tree(train, val, &all, p_max, &params)?;
        if best.as_ref().is_none_or(|b| r.score > b.score) {
            best = Some(GridChoice {
                tree: r.tree,
                depth: r.best_depth,
                msl,
                score: r.score,
            });
        }
    }
    best.ok_or_else(|| Error::config("msl_grid is empty"))
}

fn grid_single_tree(cfg: &ExperimentConfig, p: &Prepared) -> Result<ExperimentOutput> {
    let start = thread_cpu_seconds();
    let choice = grid_search_tree(&p.train, &p.val, cfg.p_max, &cfg.msl_grid, &cfg.tree)?;
    let wall_time = thread_cpu_seconds() - start;
    let uses_noise = choice.tree.used_features().intersects(&p.noise());
    let leaves = leaf_nodes(&choice.tree).len();
    Ok(ExperimentOutput {
        runs: vec![RunRecord {
            schema_version: SCHEMA_VERSION,
            experiment: Experiment::Appendix1.name().into(),
            dataset: p.dataset.name().into(),
            strategy: Strategy::SingleTree.name().into(),
            n_noise: p.n_noise,
            sample_size: String::new(),
            budget: cfg.msl_grid.len() * cfg.p_max,
            seed: p.seed,
            trees_built: 1,
            leaves,
            rules_extracted: 0,
            noise_content_rate: 0.0,
            wall_time,
            best_val_score: choice.score,
            chosen_depth: Some(choice.depth),
            chosen_msl: Some(choice.msl),
            uses_noise: Some(uses_noise),
        }],
        rules: Vec::new(),
    })
}

/// Aggregate of one metric over the seeds of one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub schema_version: u32,
    pub experiment: String,
    pub dataset: String,
    pub strategy: String,
    pub n_noise: usize,
    pub sample_size: String,
    pub budget: usize,
    pub metric: String,
    pub n: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub half_std: f64,
}

/// Mean and population standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

type Metric = (&'static str, fn(&RunRecord) -> Option<f64>);

const METRICS: &[Metric] = &[
    ("rules_extracted", |r| Some(r.rules_extracted as f64)),
    ("leaves", |r| Some(r.leaves as f64)),
    ("noise_content_rate", |r| Some(r.noise_content_rate)),
    ("wall_time", |r| Some(r.wall_time)),
    ("best_val_score", |r| Some(r.best_val_score)),
    ("chosen_depth", |r| r.chosen_depth.map(|v| v as f64)),
    ("chosen_msl", |r| r.chosen_msl.map(|v| v as f64)),
    ("noise_inclusion", |r| r.uses_noise.map(|v| f64::from(u8::from(v)))),
];

/// Groups runs by everything except the seed and aggregates each metric.
/// Input order is preserved between groups, so sorted runs give sorted rows.
pub fn summarize(runs: &[RunRecord]) -> Vec<SummaryRow> {
    let mut groups: Vec<(&RunRecord, Vec<&RunRecord>)> = Vec::new();
    for r in runs {
        let same = |g: &RunRecord| {
            g.experiment == r.experiment
                && g.dataset == r.dataset
                && g.strategy == r.strategy
                && g.n_noise == r.n_noise
                && g.sample_size == r.sample_size
                && g.budget == r.budget
        };
        match groups.iter_mut().find(|(head, _)| same(head)) {
            Some((_, members)) => members.push(r),
            None => groups.push((r, vec![r])),
        }
    }
    let mut rows = Vec::new();
    for (head, members) in groups {
        for (name, get) in METRICS {
            let values: Vec<f64> = members.iter().filter_map(|r| get(r)).collect();
            if values.is_empty() {
                continue;
            }
            let (mean, std) = mean_std(&values);
            rows.push(SummaryRow {
                schema_version: SCHEMA_VERSION,
                experiment: head.experiment.clone(),
                dataset: head.dataset.clone(),
                strategy: head.strategy.clone(),
                n_noise: head.n_noise,
                sample_size: head.sample_size.clone(),
                budget: head.budget,
                metric: (*name).into(),
                n: values.len(),
                mean,
                std,
                half_std: 0.5 * std,
            });
        }
    }
    rows
}

/// Seed-mean of `metric` over runs matching `filter`.
pub fn seed_mean(runs: &[RunRecord], filter: impl Fn(&RunRecord) -> bool, metric: &str) -> Option<f64> {
    let (_, get) = METRICS.iter().find(|(n, _)| *n == metric)?;
    let values: Vec<f64> = runs.iter().filter(|r| filter(r)).filter_map(get).collect();
    (!values.is_empty()).then(|| mean_std(&values).0)
}

fn write_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Write {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_write_err(path: &Path, e: csv::Error) -> Error {
    Error::Write {
        path: path.to_path_buf(),
        source: std::io::Error::other(e.to_string()),
    }
}

/// Writes serializable rows with a header, even when there are none.
fn write_csv<T: Serialize>(path: &Path, header: &[&str], rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| csv_write_err(path, e))?;
    w.write_record(header).map_err(|e| csv_write_err(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| csv_write_err(path, e))?;
    }
    w.flush().map_err(write_err(path))
}

const RUN_HEADER: &[&str] = &[
    "schema_version",
    "experiment",
    "dataset",
    "strategy",
    "n_noise",
    "sample_size",
    "budget",
    "seed",
    "trees_built",
    "leaves",
    "rules_extracted",
    "noise_content_rate",
    "wall_time",
    "best_val_score",
    "chosen_depth",
    "chosen_msl",
    "uses_noise",
];

const SUMMARY_HEADER: &[&str] = &[
    "schema_version",
    "experiment",
    "dataset",
    "strategy",
    "n_noise",
    "sample_size",
    "budget",
    "metric",
    "n",
    "mean",
    "std",
    "half_std",
];

pub fn write_runs_csv(path: &Path, runs: &[RunRecord]) -> Result<()> {
    write_csv(path, RUN_HEADER, runs)
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    write_csv(path, SUMMARY_HEADER, rows)
}

/// Table-style rule listing; literals are joined with `", "`.
pub fn write_rules_csv(path: &Path, rules: &[RuleRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_write_err(path, e))?;
    w.write_record([
        "schema_version",
        "experiment",
        "dataset",
        "strategy",
        "n_noise",
        "seed",
        "rule_id",
        "class",
        "sample_size",
        "gini",
        "literals",
    ])
    .map_err(|e| csv_write_err(path, e))?;
    for r in rules {
        w.write_record([
            r.schema_version.to_string(),
            r.experiment.clone(),
            r.dataset.clone(),
            r.strategy.clone(),
            r.n_noise.to_string(),
            r.seed.to_string(),
            r.rule_id.clone(),
            r.class.clone(),
            r.sample_size.to_string(),
            r.gini.to_string(),
            r.literals.join(", "),
        ])
        .map_err(|e| csv_write_err(path, e))?;
    }
    w.flush().map_err(write_err(path))
}

pub fn write_rules_json(path: &Path, rules: &[RuleRecord]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(write_err(path))?;
    serde_json::to_writer_pretty(&mut f, rules).map_err(|e| Error::Write {
        path: path.to_path_buf(),
        source: std::io::Error::other(e.to_string()),
    })?;
    f.write_all(b"\n").map_err(write_err(path))
}

/// Writes `runs.csv`, `summary.csv` and, when the experiment produces rules,
/// `rules.csv` and `rules.json` into `dir`.
pub fn write_outputs(dir: &Path, exp: Experiment, out: &ExperimentOutput) -> Result<()> {
    fs::create_dir_all(dir).map_err(write_err(dir))?;
    write_runs_csv(&dir.join("runs.csv"), &out.runs)?;
    write_summary_csv(&dir.join("summary.csv"), &summarize(&out.runs))?;
    if matches!(exp, Experiment::Mine | Experiment::Exp3) {
        write_rules_csv(&dir.join("rules.csv"), &out.rules)?;
        write_rules_json(&dir.join("rules.json"), &out.rules)?;
    }
    Ok(())
}
