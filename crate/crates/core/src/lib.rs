//! Bayesian search over fixed-size feature subsets with a decision-tree
//! objective, and greedy mining of interpretable rules from the resulting
//! forest.

pub mod cart;
pub mod combinatorics;
pub mod data;
pub mod dataset;
pub mod error;
pub mod experiments;
pub mod maa_kernel;
pub mod mining;
pub mod search;

pub use cart::{best_depth_tree, macro_f1, train_tree, ClassWeighting, TrainedTree, TreeParams};
pub use combinatorics::{FeatureId, FeatureSubset};
pub use data::{DatasetId, NoiseSpec, SplitSpec};
pub use dataset::{Dataset, FeatureInfo};
pub use error::{Error, Result};
pub use maa_kernel::{MaaParams, SubsetPool};
pub use mining::{mine_rules, rules_from_trees, MiningParams, Rule};
pub use search::{run_maabo_mt, SampleSize, SearchConfig, SearchOutcome};
