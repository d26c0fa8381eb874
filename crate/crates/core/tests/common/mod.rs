//! Independent reference implementations shared by the property and
//! acceptance suites. Nothing here calls into the code under test except for
//! constructors and plain accessors.

#![allow(dead_code)]

use std::collections::BTreeSet;

use maabo::mining::{Direction, Literal, RuleSource};
use maabo::{Dataset, FeatureInfo, FeatureSubset, MiningParams, Rule};
use rand::Rng;

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Every `dp`-subset of `0..d` as a bit mask, by brute force over all masks.
pub fn subsets_by_mask(d: usize, dp: usize) -> Vec<u32> {
    (0u32..1 << d).filter(|m| m.count_ones() as usize == dp).collect()
}

pub fn subset_of_mask(mask: u32) -> FeatureSubset {
    FeatureSubset::new((0..32).filter(|i| mask >> i & 1 == 1)).unwrap()
}

/// Number of `dp`-subsets containing at least one of the first `nu` features.
pub fn brute_reduced(d: usize, dp: usize, nu: usize) -> u64 {
    let designated: u32 = if nu == 0 { 0 } else { (1u32 << nu) - 1 };
    subsets_by_mask(d, dp)
        .into_iter()
        .filter(|m| m & designated != 0)
        .count() as u64
}

/// Mismatch histogram of the whole space around `u`.
pub fn brute_histogram(d: usize, dp: usize, u: u32) -> Vec<u64> {
    let mut h = vec![0u64; dp + 1];
    for m in subsets_by_mask(d, dp) {
        h[dp - (m & u).count_ones() as usize] += 1;
    }
    h
}

/// Kernel value written directly from its definition, for mismatch `m`.
pub fn kernel_reference(d: usize, dp: usize, h: f64, b: f64, m: usize) -> f64 {
    if m == 0 {
        return 1.0 - h;
    }
    let norm: f64 = (1..=dp)
        .map(|i| (binom(dp, dp - i) * binom(d - dp, i)) as f64 * b.powi(i as i32 - 1))
        .sum();
    b.powi(m as i32 - 1) * h / norm
}

/// Small random classification problem with integer-valued features, so
/// duplicate values and exact impurity ties are common.
pub fn random_dataset<R: Rng>(rng: &mut R, n: usize, d: usize, classes: usize, levels: u32) -> Dataset {
    let features = (0..d).map(|i| FeatureInfo::new(format!("x{i}"))).collect();
    let columns = (0..d)
        .map(|_| (0..n).map(|_| f64::from(rng.gen_range(0..levels))).collect())
        .collect();
    let labels = (0..n).map(|_| rng.gen_range(0..classes)).collect();
    let names = (0..classes).map(|c| format!("c{c}")).collect();
    Dataset::new(features, columns, labels, names).unwrap()
}

/// Two informative features out of `d`, the rest uniform.
pub fn signal_dataset<R: Rng>(rng: &mut R, n: usize, d: usize) -> Dataset {
    let features = (0..d).map(|i| FeatureInfo::new(format!("x{i}"))).collect();
    let columns: Vec<Vec<f64>> = (0..d)
        .map(|_| (0..n).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let labels = (0..n)
        .map(|r| {
            let clean = usize::from(columns[0][r] + 0.5 * columns[1][r] > 0.75);
            if rng.gen_bool(0.1) {
                1 - clean
            } else {
                clean
            }
        })
        .collect();
    Dataset::new(features, columns, labels, vec!["neg".into(), "pos".into()]).unwrap()
}

fn gini_of(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    1.0 - counts
        .iter()
        .map(|&c| (c as f64 / n as f64).powi(2))
        .sum::<f64>()
}

/// Best root split under uniform class weights, found by trying every
/// feature of `f` and every cut between consecutive distinct values.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSplit {
    pub feature: usize,
    /// Largest value sent left.
    pub left_max: f64,
    pub impurity: f64,
}

pub fn exhaustive_split(data: &Dataset, f: &FeatureSubset, msl: usize) -> Option<OracleSplit> {
    let n = data.n_rows();
    let labels = data.labels();
    let mut parent = vec![0usize; data.n_classes()];
    for &y in labels {
        parent[y] += 1;
    }
    if parent.iter().filter(|&&c| c > 0).count() <= 1 || n < 2 * msl {
        return None;
    }
    let parent_g = gini_of(&parent);
    let mut best: Option<OracleSplit> = None;
    for feat in f.iter() {
        let col = data.column(feat);
        let mut values: Vec<f64> = col.to_vec();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for &cut in &values[..values.len().saturating_sub(1)] {
            let mut left = vec![0usize; data.n_classes()];
            let mut right = vec![0usize; data.n_classes()];
            for r in 0..n {
                if col[r] <= cut {
                    left[labels[r]] += 1;
                } else {
                    right[labels[r]] += 1;
                }
            }
            let (nl, nr): (usize, usize) = (left.iter().sum(), right.iter().sum());
            if nl < msl || nr < msl {
                continue;
            }
            let child = (nl as f64 * gini_of(&left) + nr as f64 * gini_of(&right)) / n as f64;
            let better = match &best {
                None => parent_g - child > 1e-12,
                Some(b) => b.impurity - child > 1e-12,
            };
            if better {
                best = Some(OracleSplit {
                    feature: feat.0,
                    left_max: cut,
                    impurity: child,
                });
            }
        }
    }
    best
}

/// Rule sets with few distinct literals and coarse Gini values, so
/// overlaps and ties between candidates are frequent.
pub fn random_rules<R: Rng>(rng: &mut R, max_len: usize) -> Vec<Rule> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|i| {
            let k = rng.gen_range(0..=3);
            let literals: BTreeSet<Literal> = (0..k)
                .map(|_| {
                    let dir = if rng.gen_bool(0.5) { Direction::Small } else { Direction::Large };
                    Literal::new(rng.gen_range(0..4), dir)
                })
                .collect();
            Rule {
                literals,
                class: rng.gen_range(0..2),
                n: [30, 49, 50, 60, 80][rng.gen_range(0..5)],
                gini: f64::from(rng.gen_range(0..=16u32)) / 100.0,
                source: RuleSource { tree: i / 3, leaf: i % 3 },
            }
        })
        .collect()
}

fn simpson_ref(a: &Rule, b: &Rule) -> f64 {
    let shared = a.literals.iter().filter(|l| b.literals.contains(l)).count();
    shared as f64 / a.literals.len().min(b.literals.len()) as f64
}

/// Direct simulation of the greedy miner: the score of every remaining rule
/// is recomputed from scratch against the selected set on each round.
pub fn brute_force_mining(rules: &[Rule], p: &MiningParams) -> Vec<Rule> {
    let limit = p.gamma * (1.0 - 1.0 / p.n_classes as f64);
    let mut pool: Vec<Rule> = rules
        .iter()
        .filter(|r| r.n >= p.beta && r.gini < limit && !r.literals.is_empty())
        .cloned()
        .collect();
    let mut kept: Vec<Rule> = Vec::new();
    while !pool.is_empty() {
        let sim = |r: &Rule| kept.iter().map(|s| simpson_ref(r, s)).fold(0.0, f64::max);
        let key = |r: &Rule| (r.gini + sim(r), r.gini, std::cmp::Reverse(r.n), r.source);
        let pick = (0..pool.len())
            .min_by(|&a, &b| {
                let (ka, kb) = (key(&pool[a]), key(&pool[b]));
                ka.0.total_cmp(&kb.0)
                    .then(ka.1.total_cmp(&kb.1))
                    .then(ka.2.cmp(&kb.2))
                    .then(ka.3.cmp(&kb.3))
            })
            .unwrap();
        let rule = pool.remove(pick);
        if sim(&rule) < p.delta {
            kept.push(rule);
        }
    }
    kept
}

/// Checks the output guarantees of the miner, returning the first violation.
pub fn mining_violation(out: &[Rule], p: &MiningParams) -> Option<String> {
    let limit = p.gamma * (1.0 - 1.0 / p.n_classes as f64);
    for (i, r) in out.iter().enumerate() {
        if r.n < p.beta {
            return Some(format!("rule {i} has n = {} < beta", r.n));
        }
        if r.gini >= limit {
            return Some(format!("rule {i} has g = {} >= {limit}", r.gini));
        }
        for (j, s) in out[..i].iter().enumerate() {
            let sim = simpson_ref(r, s);
            if sim >= p.delta {
                return Some(format!("rules {j} and {i} overlap with Simpson {sim}"));
            }
        }
    }
    None
}
