//! Bayesian search over fixed-size feature subsets for high-scoring trees.
//!
//! After `n_init` random subsets are scored, each iteration splits the scored
//! subsets into a high pool and a low pool, narrows the unverified subsets to
//! those containing one of the most frequent high-pool features, and scores
//! the candidate maximizing `p(f | high) / p(f | low)` under the MAA kernel.

use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cart::{best_depth_tree, TrainedTree, TreeParams};
use crate::combinatorics::{enumerate_fcs_capped, fcs_size, FeatureSubset, DEFAULT_ENUMERATION_CAP};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::maa_kernel::{acquisition_ratios, MaaParams, SubsetPool};

/// How many eligible subsets are scored by the acquisition function per iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleSize {
    Bounded(usize),
    #[default]
    Unbounded,
}

impl SampleSize {
    fn take(self, available: usize) -> usize {
        match self {
            SampleSize::Bounded(n) => n.min(available),
            SampleSize::Unbounded => available,
        }
    }
}

impl fmt::Display for SampleSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleSize::Bounded(n) => write!(f, "{n}"),
            SampleSize::Unbounded => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for SampleSize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "unbounded" | "all" => Ok(SampleSize::Unbounded),
            other => other
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .map(SampleSize::Bounded)
                .ok_or_else(|| Error::config(format!("invalid sample size {s:?}"))),
        }
    }
}

impl Serialize for SampleSize {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SampleSize::Bounded(n) => s.serialize_u64(*n as u64),
            SampleSize::Unbounded => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for SampleSize {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(0) => Err(serde::de::Error::custom("sample size must be positive")),
            Raw::Num(n) => Ok(SampleSize::Bounded(n as usize)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Parameters of one search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Total feature count `D`.
    pub d: usize,
    /// Subset size `D'`.
    pub dp: usize,
    pub n_init: usize,
    pub n_bayes: usize,
    /// Fraction of scored subsets placed in the high pool.
    pub alpha: f64,
    pub p_max: usize,
    pub h: f64,
    pub b: f64,
    /// Number of frequent high-pool features used to narrow the candidates (`N_U`).
    pub n_top_features: usize,
    /// Candidates sampled per iteration (`N_E`).
    pub sample_size: SampleSize,
    pub seed: u64,
    #[serde(default)]
    pub tree: TreeParams,
    #[serde(default = "default_cap")]
    pub enumeration_cap: u64,
}

fn default_cap() -> u64 {
    DEFAULT_ENUMERATION_CAP
}

impl SearchConfig {
    /// Defaults used for the Titanic experiments: `N_I = 10`, `alpha = 0.25`,
    /// `p_max = 5`, `h = b = 0.5`, `N_U = D`, unbounded sampling.
    pub fn new(d: usize, dp: usize, n_bayes: usize, seed: u64) -> Self {
        Self {
            d,
            dp,
            n_init: 10,
            n_bayes,
            alpha: 0.25,
            p_max: 5,
            h: 0.5,
            b: 0.5,
            n_top_features: d,
            sample_size: SampleSize::Unbounded,
            seed,
            tree: TreeParams::default(),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    pub fn budget(&self) -> usize {
        self.n_init + self.n_bayes
    }

    pub fn maa_params(&self) -> Result<MaaParams> {
        MaaParams::new(self.h, self.b, self.d, self.dp)
    }

    pub fn validate(&self) -> Result<()> {
        let omega = fcs_size(self.d, self.dp)?;
        if self.n_init < 1 {
            return Err(Error::config("n_init must be at least 1"));
        }
        if self.n_bayes > 0 && self.n_init < 2 {
            return Err(Error::config(
                "n_init must be at least 2 when Bayesian iterations are requested",
            ));
        }
        if self.budget() as u64 > omega {
            return Err(Error::config(format!(
                "budget n_init + n_bayes = {} exceeds the {omega} available subsets",
                self.budget()
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.p_max < 1 {
            return Err(Error::config("p_max must be at least 1"));
        }
        if self.n_top_features < 1 || self.n_top_features > self.d {
            return Err(Error::config(format!(
                "n_top_features must lie in [1, {}], got {}",
                self.d, self.n_top_features
            )));
        }
        if self.tree.min_samples_leaf < 1 {
            return Err(Error::config("min_samples_leaf must be at least 1"));
        }
        self.maa_params()?;
        Ok(())
    }

    fn check_data(&self, train: &Dataset, val: &Dataset) -> Result<()> {
        if train.n_features() != self.d || val.n_features() != self.d {
            return Err(Error::config(format!(
                "configured D = {} but the data has {} training / {} validation features",
                self.d,
                train.n_features(),
                val.n_features()
            )));
        }
        Ok(())
    }
}

/// A subset together with its depth-tuned tree and validation score.
#[derive(Debug, Clone)]
pub struct ScoredSubset {
    pub subset: FeatureSubset,
    pub tree: TrainedTree,
    pub best_depth: usize,
    pub score: f64,
}

/// Depth-tunes a tree on `subset` and scores it on `val`.
pub fn evaluate_subset(
    train: &Dataset,
    val: &Dataset,
    subset: FeatureSubset,
    p_max: usize,
    params: &TreeParams,
) -> Result<ScoredSubset> {
    let r = best_depth_tree(train, val, &subset, p_max, params)?;
    Ok(ScoredSubset {
        subset,
        tree: r.tree,
        best_depth: r.best_depth,
        score: r.score,
    })
}

/// Unverified and verified subsets plus the run's random stream.
#[derive(Debug, Clone)]
pub struct SearchState {
    /// Unverified subsets, kept in canonical order.
    unverified: Vec<FeatureSubset>,
    /// Verified subsets in evaluation order.
    verified: Vec<ScoredSubset>,
    rng: ChaCha8Rng,
}

impl SearchState {
    pub fn new(cfg: &SearchConfig) -> Result<Self> {
        let unverified = enumerate_fcs_capped(cfg.d, cfg.dp, cfg.enumeration_cap)?;
        Ok(Self {
            unverified,
            verified: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        })
    }

    pub fn unverified(&self) -> &[FeatureSubset] {
        &self.unverified
    }

    pub fn verified(&self) -> &[ScoredSubset] {
        &self.verified
    }

    pub fn trees(&self) -> impl Iterator<Item = &TrainedTree> {
        self.verified.iter().map(|s| &s.tree)
    }

    pub fn into_verified(self) -> Vec<ScoredSubset> {
        self.verified
    }

    fn take_unverified(&mut self, f: &FeatureSubset) -> Result<()> {
        let pos = self
            .unverified
            .binary_search(f)
            .map_err(|_| Error::state(format!("subset {f:?} is not unverified")))?;
        self.unverified.remove(pos);
        Ok(())
    }

    fn record(&mut self, scored: ScoredSubset) -> Result<()> {
        self.take_unverified(&scored.subset)?;
        self.verified.push(scored);
        Ok(())
    }
}

/// Scores `n_init` subsets drawn uniformly without replacement.
pub fn init_solutions(
    state: &mut SearchState,
    cfg: &SearchConfig,
    train: &Dataset,
    val: &Dataset,
) -> Result<()> {
    if cfg.n_init > state.unverified.len() {
        return Err(Error::config(format!(
            "n_init = {} exceeds the {} unverified subsets",
            cfg.n_init,
            state.unverified.len()
        )));
    }
    for _ in 0..cfg.n_init {
        let pick = state.rng.gen_range(0..state.unverified.len());
        let f = state.unverified[pick];
        let scored = evaluate_subset(train, val, f, cfg.p_max, &cfg.tree)?;
        state.record(scored)?;
    }
    Ok(())
}

/// Splits scored subsets into the high and low pools.
///
/// Sorting is stable, so equal scores keep evaluation order. The high pool
/// size `floor(alpha * n)` is clamped to `[1, n - 1]` so both pools are nonempty.
pub fn split_pools(verified: &[ScoredSubset], alpha: f64) -> Result<(SubsetPool, SubsetPool)> {
    let scores: Vec<(FeatureSubset, f64)> = verified.iter().map(|s| (s.subset, s.score)).collect();
    split_scored(&scores, alpha)
}

pub fn split_scored(scored: &[(FeatureSubset, f64)], alpha: f64) -> Result<(SubsetPool, SubsetPool)> {
    let n = scored.len();
    if n < 2 {
        return Err(Error::state(format!(
            "need at least two scored subsets to form both pools, have {n}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scored[b].1.total_cmp(&scored[a].1));
    let n_th = ((alpha * n as f64).floor() as usize).clamp(1, n - 1);
    let upper = order[..n_th].iter().map(|&i| scored[i].0).collect();
    let lower = order[n_th..].iter().map(|&i| scored[i].0).collect();
    Ok((upper, lower))
}

/// The `n_top` features occurring most often in the high pool; ties go to
/// the lower feature index.
pub fn top_features(upper: &SubsetPool, d: usize, n_top: usize) -> FeatureSubset {
    let mut counts = vec![0usize; d];
    for u in upper.members() {
        for f in u.iter() {
            if f.0 < d {
                counts[f.0] += 1;
            }
        }
    }
    let mut ranked: Vec<usize> = (0..d).collect();
    ranked.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    FeatureSubset::new(ranked.into_iter().take(n_top)).expect("indices are distinct and < d")
}

/// Narrows the unverified subsets to those sharing a feature with the top
/// `n_top` high-pool features, then samples up to `sample_size` of them.
/// Falls back to all unverified subsets when none qualify. The result is in
/// canonical order.
pub fn candidate_pool<R: Rng + ?Sized>(
    unverified: &[FeatureSubset],
    upper: &SubsetPool,
    d: usize,
    n_top: usize,
    sample_size: SampleSize,
    rng: &mut R,
) -> Vec<FeatureSubset> {
    let top = top_features(upper, d, n_top);
    let mut eligible: Vec<FeatureSubset> =
        unverified.iter().filter(|f| f.intersects(&top)).copied().collect();
    if eligible.is_empty() {
        eligible = unverified.to_vec();
    }
    let take = sample_size.take(eligible.len());
    if take == eligible.len() {
        return eligible;
    }
    let mut picked = index::sample(rng, eligible.len(), take).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| eligible[i]).collect()
}

/// The candidate with the largest acquisition ratio; ties go to the
/// canonically smallest subset.
pub fn select_next(
    candidates: &[FeatureSubset],
    upper: &SubsetPool,
    lower: &SubsetPool,
    maa: &MaaParams,
) -> Result<FeatureSubset> {
    if candidates.is_empty() {
        return Err(Error::state("no candidate subsets to choose from"));
    }
    let ratios = acquisition_ratios(candidates, upper, lower, maa)?;
    let mut best = 0;
    for i in 1..candidates.len() {
        let better = ratios[i] > ratios[best]
            || (ratios[i] == ratios[best] && candidates[i] < candidates[best]);
        if better {
            best = i;
        }
    }
    Ok(candidates[best])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Completed,
    /// Every subset was verified before all iterations ran.
    Exhausted { iterations_run: usize },
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub verified: Vec<ScoredSubset>,
    pub status: SearchStatus,
}

impl SearchOutcome {
    pub fn trees(&self) -> impl Iterator<Item = &TrainedTree> {
        self.verified.iter().map(|s| &s.tree)
    }

    pub fn best_score(&self) -> f64 {
        self.verified.iter().map(|s| s.score).fold(0.0, f64::max)
    }
}

/// One Bayesian iteration. Returns `false` when nothing is left to verify.
pub fn search_step(
    state: &mut SearchState,
    cfg: &SearchConfig,
    maa: &MaaParams,
    train: &Dataset,
    val: &Dataset,
) -> Result<bool> {
    if state.unverified.is_empty() {
        return Ok(false);
    }
    let (upper, lower) = split_pools(&state.verified, cfg.alpha)?;
    let candidates = candidate_pool(
        &state.unverified,
        &upper,
        cfg.d,
        cfg.n_top_features,
        cfg.sample_size,
        &mut state.rng,
    );
    let next = select_next(&candidates, &upper, &lower, maa)?;
    let scored = evaluate_subset(train, val, next, cfg.p_max, &cfg.tree)?;
    state.record(scored)?;
    Ok(true)
}

/// Full search: random initialization followed by `n_bayes` iterations.
pub fn run_maabo_mt(cfg: &SearchConfig, train: &Dataset, val: &Dataset) -> Result<SearchOutcome> {
    cfg.validate()?;
    cfg.check_data(train, val)?;
    let maa = cfg.maa_params()?;
    let mut state = SearchState::new(cfg)?;
    init_solutions(&mut state, cfg, train, val)?;
    let mut status = SearchStatus::Completed;
    for i in 0..cfg.n_bayes {
        if !search_step(&mut state, cfg, &maa, train, val)? {
            log::warn!(
                "all {} subsets verified after {i} of {} iterations",
                state.verified.len(),
                cfg.n_bayes
            );
            status = SearchStatus::Exhausted { iterations_run: i };
            break;
        }
    }
    Ok(SearchOutcome {
        verified: state.into_verified(),
        status,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    AllTrees,
    Maabo,
    Randomized,
    SingleTree,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::AllTrees => "all_trees",
            Strategy::Maabo => "maabo_mt",
            Strategy::Randomized => "randomized",
            Strategy::SingleTree => "single_tree",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-Bayesian comparison strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Baseline {
    /// One tree per subset of the whole space.
    AllTrees,
    /// `n_init + n_bayes` subsets drawn uniformly without replacement.
    Randomized,
    /// One tree over every feature.
    SingleTree,
}

pub fn baseline_strategy(
    kind: Baseline,
    cfg: &SearchConfig,
    train: &Dataset,
    val: &Dataset,
) -> Result<Vec<ScoredSubset>> {
    cfg.check_data(train, val)?;
    match kind {
        Baseline::AllTrees => enumerate_fcs_capped(cfg.d, cfg.dp, cfg.enumeration_cap)?
            .into_iter()
            .map(|f| evaluate_subset(train, val, f, cfg.p_max, &cfg.tree))
            .collect(),
        Baseline::Randomized => {
            cfg.validate()?;
            let omega = enumerate_fcs_capped(cfg.d, cfg.dp, cfg.enumeration_cap)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            index::sample(&mut rng, omega.len(), cfg.budget())
                .into_iter()
                .map(|i| evaluate_subset(train, val, omega[i], cfg.p_max, &cfg.tree))
                .collect()
        }
        Baseline::SingleTree => {
            let all = train.all_features();
            Ok(vec![evaluate_subset(train, val, all, cfg.p_max, &cfg.tree)?])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cart::TreeParams;
    use crate::combinatorics::enumerate_fcs;
    use crate::dataset::FeatureInfo;

    fn subset(v: &[usize]) -> FeatureSubset {
        FeatureSubset::new(v.iter().copied()).unwrap()
    }

    fn scored(f: FeatureSubset, score: f64) -> (FeatureSubset, f64) {
        (f, score)
    }

    /// Synthetic data where label depends on features 0 and 1.
    fn toy(d: usize, n: usize, seed: u64) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let columns: Vec<Vec<f64>> = (0..d).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect();
        let labels = (0..n)
            .map(|i| usize::from(columns[0][i] + 0.5 * columns[1][i] + 0.2 * rng.gen::<f64>() > 0.85))
            .collect();
        let features = (0..d).map(|i| FeatureInfo::new(format!("x{i}"))).collect();
        Dataset::new(features, columns, labels, vec!["a".into(), "b".into()]).unwrap()
    }

    #[test]
    fn sample_size_parsing() {
        assert_eq!("inf".parse::<SampleSize>().unwrap(), SampleSize::Unbounded);
        assert_eq!("100".parse::<SampleSize>().unwrap(), SampleSize::Bounded(100));
        assert!("0".parse::<SampleSize>().is_err());
        let v: SampleSize = serde_json::from_str("1000").unwrap();
        assert_eq!(v, SampleSize::Bounded(1000));
        let v: SampleSize = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(v, SampleSize::Unbounded);
        assert_eq!(serde_json::to_string(&SampleSize::Unbounded).unwrap(), "\"inf\"");
    }

    #[test]
    fn split_sizes() {
        let omega = enumerate_fcs(6, 3).unwrap();
        let ten: Vec<_> = (0..10).map(|i| scored(omega[i], i as f64 / 10.0)).collect();
        let (u, l) = split_scored(&ten, 0.25).unwrap();
        assert_eq!((u.len(), l.len()), (2, 8));
        assert_eq!(u.members(), &[omega[9], omega[8]]);
        let four: Vec<_> = (0..4).map(|i| scored(omega[i], 0.5)).collect();
        let (u, l) = split_scored(&four, 0.1).unwrap();
        assert_eq!((u.len(), l.len()), (1, 3));
        // Equal scores keep insertion order.
        assert_eq!(u.members(), &[omega[0]]);
        assert_eq!(l.members(), &[omega[1], omega[2], omega[3]]);
        assert!(split_scored(&four[..1], 0.25).is_err());
        let (u, _) = split_scored(&four, 0.99).unwrap();
        assert_eq!(u.len(), 3);
    }

    #[test]
    fn candidate_pool_counts() {
        let omega = enumerate_fcs(9, 3).unwrap();
        let upper = SubsetPool::new(vec![subset(&[0, 1, 2]), subset(&[0, 1, 3])]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let all = candidate_pool(&omega, &upper, 9, 9, SampleSize::Unbounded, &mut rng);
        assert_eq!(all.len(), 84);
        let narrowed = candidate_pool(&omega, &upper, 9, 2, SampleSize::Unbounded, &mut rng);
        assert_eq!(narrowed.len(), 49);
        assert!(narrowed.iter().all(|f| f.contains(crate::FeatureId(0)) || f.contains(crate::FeatureId(1))));
        let sampled = candidate_pool(&omega, &upper, 9, 2, SampleSize::Bounded(10), &mut rng);
        assert_eq!(sampled.len(), 10);
        assert!(sampled.windows(2).all(|w| w[0] < w[1]));
        assert!(sampled.iter().all(|f| narrowed.contains(f)));
    }

    #[test]
    fn candidate_pool_falls_back_when_nothing_qualifies() {
        let upper = SubsetPool::new(vec![subset(&[0, 1])]);
        let remaining = vec![subset(&[2, 3]), subset(&[2, 4])];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let got = candidate_pool(&remaining, &upper, 5, 2, SampleSize::Unbounded, &mut rng);
        assert_eq!(got, remaining);
    }

    #[test]
    fn top_feature_ties_prefer_low_index() {
        let upper = SubsetPool::new(vec![subset(&[4, 5, 6]), subset(&[1, 5, 7])]);
        assert_eq!(top_features(&upper, 9, 1).indices(), vec![5]);
        assert_eq!(top_features(&upper, 9, 3).indices(), vec![1, 4, 5]);
    }

    #[test]
    fn select_next_single_and_near_duplicate() {
        let maa = MaaParams::new(0.5, 0.5, 7, 3).unwrap();
        let upper = SubsetPool::new(vec![subset(&[0, 1, 2])]);
        let lower = SubsetPool::new(vec![subset(&[4, 5, 6])]);
        let only = [subset(&[3, 4, 5])];
        assert_eq!(select_next(&only, &upper, &lower, &maa).unwrap(), only[0]);
        let cands = [subset(&[0, 1, 3]), subset(&[3, 4, 5]), subset(&[2, 5, 6])];
        assert_eq!(select_next(&cands, &upper, &lower, &maa).unwrap(), subset(&[0, 1, 3]));
        assert!(select_next(&[], &upper, &lower, &maa).is_err());
    }

    #[test]
    fn full_run_bookkeeping() {
        let data = toy(7, 120, 3);
        let (train, val) = (data.select_rows(&(0..80).collect::<Vec<_>>()), data.select_rows(&(80..120).collect::<Vec<_>>()));
        let mut cfg = SearchConfig::new(7, 3, 15, 11);
        cfg.n_init = 5;
        cfg.p_max = 3;
        cfg.tree = TreeParams::default();
        let out = run_maabo_mt(&cfg, &train, &val).unwrap();
        assert_eq!(out.verified.len(), 20);
        assert_eq!(out.status, SearchStatus::Completed);
        let mut seen: Vec<_> = out.verified.iter().map(|s| s.subset).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 20);
        let again = run_maabo_mt(&cfg, &train, &val).unwrap();
        let a: Vec<_> = out.verified.iter().map(|s| (s.subset, s.score)).collect();
        let b: Vec<_> = again.verified.iter().map(|s| (s.subset, s.score)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn exhausting_the_space() {
        let data = toy(5, 60, 4);
        let (train, val) = (data.select_rows(&(0..40).collect::<Vec<_>>()), data.select_rows(&(40..60).collect::<Vec<_>>()));
        let mut cfg = SearchConfig::new(5, 3, 0, 2);
        cfg.n_init = 10;
        let out = run_maabo_mt(&cfg, &train, &val).unwrap();
        assert_eq!(out.verified.len(), 10);
        // Budget larger than the space is rejected up front.
        cfg.n_bayes = 1;
        assert!(matches!(run_maabo_mt(&cfg, &train, &val), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn early_stop_when_unverified_runs_out() {
        let data = toy(5, 60, 4);
        let (train, val) = (data.select_rows(&(0..40).collect::<Vec<_>>()), data.select_rows(&(40..60).collect::<Vec<_>>()));
        let cfg = SearchConfig {
            n_init: 4,
            n_bayes: 6,
            ..SearchConfig::new(5, 3, 6, 9)
        };
        let maa = cfg.maa_params().unwrap();
        let mut state = SearchState::new(&cfg).unwrap();
        init_solutions(&mut state, &cfg, &train, &val).unwrap();
        for _ in 0..6 {
            assert!(search_step(&mut state, &cfg, &maa, &train, &val).unwrap());
        }
        assert!(state.unverified().is_empty());
        assert!(!search_step(&mut state, &cfg, &maa, &train, &val).unwrap());
        assert_eq!(state.verified().len(), 10);
    }

    #[test]
    fn baselines() {
        let data = toy(6, 90, 5);
        let (train, val) = (data.select_rows(&(0..60).collect::<Vec<_>>()), data.select_rows(&(60..90).collect::<Vec<_>>()));
        let cfg = SearchConfig {
            n_init: 4,
            ..SearchConfig::new(6, 3, 4, 1)
        };
        assert_eq!(baseline_strategy(Baseline::AllTrees, &cfg, &train, &val).unwrap().len(), 20);
        let random = baseline_strategy(Baseline::Randomized, &cfg, &train, &val).unwrap();
        assert_eq!(random.len(), 8);
        let mut subsets: Vec<_> = random.iter().map(|s| s.subset).collect();
        subsets.sort();
        subsets.dedup();
        assert_eq!(subsets.len(), 8);
        let single = baseline_strategy(Baseline::SingleTree, &cfg, &train, &val).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].subset, train.all_features());
    }

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::new(9, 3, 70, 0);
        assert!(cfg.validate().is_ok());
        cfg.alpha = 1.0;
        assert!(cfg.validate().is_err());
        cfg.alpha = 0.25;
        cfg.n_bayes = 75;
        assert!(cfg.validate().is_err());
        cfg.n_bayes = 10;
        cfg.n_init = 1;
        assert!(cfg.validate().is_err());
        cfg.n_init = 10;
        cfg.n_top_features = 0;
        assert!(cfg.validate().is_err());
    }
}
