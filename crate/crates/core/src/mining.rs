//! Greedy extraction of reliable, mutually dissimilar rules from tree leaves.
//!
//! Each leaf becomes a [`Rule`]: the set of `(feature, small | large)`
//! literals on its path. Leaves that are too small or too impure are dropped,
//! then rules are taken in order of `gini + max similarity to the rules
//! already kept`, and a rule is kept only while that similarity (Simpson
//! overlap of literal sets) stays below `delta`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cart::{leaf_nodes, LeafNode, Side, TrainedTree};
use crate::combinatorics::FeatureId;
use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Small,
    Large,
}

/// One atomic condition: a feature being on the low or high side of a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub feature: FeatureId,
    pub direction: Direction,
}

impl Literal {
    pub fn new(feature: usize, direction: Direction) -> Self {
        Self {
            feature: FeatureId(feature),
            direction,
        }
    }

    /// `Name/label`, using the dataset's direction words for the feature.
    pub fn render(&self, data: &Dataset) -> String {
        let info = data.feature(self.feature);
        let word = match self.direction {
            Direction::Small => &info.small_label,
            Direction::Large => &info.large_label,
        };
        format!("{}/{}", info.name, word)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            Direction::Small => "small",
            Direction::Large => "large",
        };
        write!(f, "{}/{}", self.feature, d)
    }
}

/// Where a rule came from: tree position and left-to-right leaf position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RuleSource {
    pub tree: usize,
    pub leaf: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub literals: BTreeSet<Literal>,
    pub class: usize,
    pub n: usize,
    pub gini: f64,
    pub source: RuleSource,
}

impl Rule {
    pub fn mentions_any(&self, features: &crate::FeatureSubset) -> bool {
        self.literals.iter().any(|l| features.contains(l.feature))
    }

    pub fn render_literals(&self, data: &Dataset) -> Vec<String> {
        self.literals.iter().map(|l| l.render(data)).collect()
    }
}

/// Thresholds for rule extraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiningParams {
    /// Minimum leaf sample size.
    pub beta: usize,
    /// Gini threshold as a fraction of the maximum `1 - 1/C`.
    pub gamma: f64,
    /// Simpson similarity at or above which a rule is rejected.
    pub delta: f64,
    pub n_classes: usize,
}

impl Default for MiningParams {
    fn default() -> Self {
        Self {
            beta: 50,
            gamma: 0.3,
            delta: 0.7,
            n_classes: 2,
        }
    }
}

impl MiningParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::config(format!("gamma must lie in (0, 1], got {}", self.gamma)));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::config(format!("delta must lie in (0, 1], got {}", self.delta)));
        }
        if self.n_classes < 2 {
            return Err(Error::config("n_classes must be at least 2"));
        }
        Ok(())
    }

    pub fn gini_max(&self) -> f64 {
        1.0 - 1.0 / self.n_classes as f64
    }

    pub fn gini_threshold(&self) -> f64 {
        self.gamma * self.gini_max()
    }
}

/// Literal set of a leaf path. A root-only leaf yields an empty set.
pub fn rule_logic(leaf: &LeafNode, source: RuleSource) -> Rule {
    let literals = leaf
        .path
        .iter()
        .map(|p| Literal {
            feature: p.feature,
            direction: match p.side {
                Side::Le => Direction::Small,
                Side::Gt => Direction::Large,
            },
        })
        .collect();
    Rule {
        literals,
        class: leaf.predicted_class,
        n: leaf.n,
        gini: leaf.gini,
        source,
    }
}

/// Every leaf of every tree as a rule, trees numbered in iteration order.
pub fn rules_from_trees<'a, I>(trees: I) -> Vec<Rule>
where
    I: IntoIterator<Item = &'a TrainedTree>,
{
    trees
        .into_iter()
        .enumerate()
        .flat_map(|(t, tree)| {
            leaf_nodes(tree)
                .into_iter()
                .enumerate()
                .map(move |(l, leaf)| rule_logic(&leaf, RuleSource { tree: t, leaf: l }))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Overlap coefficient `|A ∩ B| / min(|A|, |B|)`.
pub fn simpson(a: &Rule, b: &Rule) -> Result<f64> {
    if a.literals.is_empty() || b.literals.is_empty() {
        return Err(Error::arg("similarity of an empty literal set is undefined"));
    }
    Ok(overlap(a, b))
}

fn overlap(a: &Rule, b: &Rule) -> f64 {
    let shared = a.literals.intersection(&b.literals).count();
    shared as f64 / a.literals.len().min(b.literals.len()) as f64
}

/// Drops rules with too few samples, too high an impurity, or no literals.
pub fn filter_leaves(rules: &[Rule], p: &MiningParams) -> Vec<Rule> {
    let limit = p.gini_threshold();
    rules
        .iter()
        .filter(|r| !r.literals.is_empty() && r.n >= p.beta && r.gini < limit)
        .cloned()
        .collect()
}

/// Filters, then greedily selects rules. The output is in selection order.
pub fn mine_rules(rules: &[Rule], p: &MiningParams) -> Vec<Rule> {
    let mut pending = filter_leaves(rules, p);
    // Highest similarity to any selected rule; zero while nothing is selected.
    let mut max_sim = vec![0.0f64; pending.len()];
    let mut selected: Vec<Rule> = Vec::new();

    while !pending.is_empty() {
        let mut best = 0;
        for i in 1..pending.len() {
            if precedes(&pending[i], max_sim[i], &pending[best], max_sim[best]) {
                best = i;
            }
        }
        let rule = pending.swap_remove(best);
        let sim = max_sim.swap_remove(best);
        if sim < p.delta {
            for (other, m) in pending.iter().zip(max_sim.iter_mut()) {
                *m = m.max(overlap(other, &rule));
            }
            selected.push(rule);
        }
    }
    selected
}

/// Order used to pick the next rule: `gini + similarity`, then lower gini,
/// then larger sample, then earlier source.
fn precedes(a: &Rule, sim_a: f64, b: &Rule, sim_b: f64) -> bool {
    let (ka, kb) = (a.gini + sim_a, b.gini + sim_b);
    if ka != kb {
        return ka < kb;
    }
    if a.gini != b.gini {
        return a.gini < b.gini;
    }
    if a.n != b.n {
        return a.n > b.n;
    }
    a.source < b.source
}
