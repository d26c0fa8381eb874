//! Binary CART classifier with the Gini criterion.
//!
//! Splits are axis-aligned `x <= t` tests where `t` is the midpoint between
//! consecutive distinct values of a feature. Growth is greedy; a node becomes a
//! leaf when it is pure, reaches `max_depth`, holds fewer than
//! `2 * min_samples_leaf` rows, or no split improves impurity.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{FeatureId, FeatureSubset};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Gains below this are treated as zero; distinct split qualities on
/// realistic sample sizes differ by far more.
const GAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassWeighting {
    #[default]
    Uniform,
    /// `w_c = N / (C * N_c)` on the training rows.
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeParams {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub class_weighting: ClassWeighting,
    /// Carried for provenance. Training itself uses no randomness.
    pub seed: u64,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            max_depth: 5,
            min_samples_leaf: 1,
            class_weighting: ClassWeighting::Uniform,
            seed: 0,
        }
    }
}

impl TreeParams {
    pub fn with_depth(self, max_depth: usize) -> Self {
        Self { max_depth, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_depth < 1 {
            return Err(Error::arg("max_depth must be at least 1"));
        }
        if self.min_samples_leaf < 1 {
            return Err(Error::arg("min_samples_leaf must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// `value <= threshold`
    Le,
    /// `value > threshold`
    Gt,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Predicate {
    pub feature: FeatureId,
    pub threshold: f64,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq)]
enum NodeKind {
    Leaf,
    Split {
        feature: FeatureId,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
struct Node {
    counts: Vec<usize>,
    depth: usize,
    kind: NodeKind,
}

/// A fitted tree. Nodes live in an arena; index 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedTree {
    nodes: Vec<Node>,
    used_features: FeatureSubset,
    candidate_features: FeatureSubset,
    params: TreeParams,
    weights: Vec<f64>,
}

/// A leaf with its root-to-leaf path and training statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafNode {
    pub path: Vec<Predicate>,
    pub class_counts: Vec<usize>,
    pub n: usize,
    pub gini: f64,
    pub predicted_class: usize,
}

/// `1 - sum_i (w_i N_i / sum_j w_j N_j)^2`.
pub fn gini(counts: &[usize], weights: &[f64]) -> Result<f64> {
    if counts.len() != weights.len() {
        return Err(Error::arg("class counts and weights differ in length"));
    }
    if counts.iter().all(|&c| c == 0) {
        return Err(Error::arg("gini index of an empty node is undefined"));
    }
    let total: f64 = counts.iter().zip(weights).map(|(&c, &w)| c as f64 * w).sum();
    if total <= 0.0 {
        return Err(Error::arg("weighted node size is zero"));
    }
    Ok(gini_weighted(counts, weights, total))
}

fn gini_weighted(counts: &[usize], weights: &[f64], total: f64) -> f64 {
    let sq: f64 = counts
        .iter()
        .zip(weights)
        .map(|(&c, &w)| {
            let p = c as f64 * w / total;
            p * p
        })
        .sum();
    1.0 - sq
}

pub fn uniform_weights(n_classes: usize) -> Vec<f64> {
    vec![1.0; n_classes]
}

/// Class weights for the given training labels.
pub fn class_weights(data: &Dataset, weighting: ClassWeighting) -> Vec<f64> {
    match weighting {
        ClassWeighting::Uniform => uniform_weights(data.n_classes()),
        ClassWeighting::Balanced => {
            let counts = data.class_counts();
            let n = data.n_rows() as f64;
            let c = data.n_classes() as f64;
            counts
                .iter()
                .map(|&k| if k == 0 { 0.0 } else { n / (c * k as f64) })
                .collect()
        }
    }
}

fn argmax_class(counts: &[usize], weights: &[f64]) -> usize {
    let mut best = 0;
    let mut best_w = f64::NEG_INFINITY;
    for (c, (&k, &w)) in counts.iter().zip(weights).enumerate() {
        let v = k as f64 * w;
        if v > best_w {
            best_w = v;
            best = c;
        }
    }
    best
}

struct Builder<'a> {
    data: &'a Dataset,
    features: Vec<FeatureId>,
    params: TreeParams,
    weights: Vec<f64>,
    nodes: Vec<Node>,
    /// `order[j]` holds every training row sorted by `features[j]`. Each node
    /// owns a contiguous range, kept sorted by stable partitioning.
    order: Vec<Vec<u32>>,
    goes_left: Vec<bool>,
    scratch: Vec<u32>,
}

struct BestSplit {
    feature_slot: usize,
    threshold: f64,
    gain: f64,
}

impl Builder<'_> {
    fn counts_of(&self, rows: &[u32]) -> Vec<usize> {
        let mut counts = vec![0; self.data.n_classes()];
        let labels = self.data.labels();
        for &r in rows {
            counts[labels[r as usize]] += 1;
        }
        counts
    }

    fn weighted_total(&self, counts: &[usize]) -> f64 {
        counts.iter().zip(&self.weights).map(|(&c, &w)| c as f64 * w).sum()
    }

    /// Grows the subtree over rows `lo..hi` of every order buffer.
    fn grow(&mut self, lo: usize, hi: usize, depth: usize) -> usize {
        let counts = self.counts_of(&self.order[0][lo..hi]);
        let id = self.nodes.len();
        self.nodes.push(Node {
            counts: counts.clone(),
            depth,
            kind: NodeKind::Leaf,
        });

        let n = hi - lo;
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        if pure || depth >= self.params.max_depth || n < 2 * self.params.min_samples_leaf {
            return id;
        }
        let Some(best) = self.best_split(lo, hi, &counts) else {
            return id;
        };

        let feature = self.features[best.feature_slot];
        let column = self.data.column(feature);
        for &r in &self.order[0][lo..hi] {
            self.goes_left[r as usize] = column[r as usize] <= best.threshold;
        }
        let mut mid = lo;
        for slot in 0..self.order.len() {
            mid = self.partition(slot, lo, hi);
        }
        let left = self.grow(lo, mid, depth + 1);
        let right = self.grow(mid, hi, depth + 1);
        self.nodes[id].kind = NodeKind::Split {
            feature,
            threshold: best.threshold,
            left,
            right,
        };
        id
    }

    /// Stable in-place partition of `order[slot][lo..hi]` by `goes_left`.
    /// Returns the index of the first right-hand row.
    fn partition(&mut self, slot: usize, lo: usize, hi: usize) -> usize {
        let rows = &mut self.order[slot];
        self.scratch.clear();
        let mut w = lo;
        for i in lo..hi {
            let r = rows[i];
            if self.goes_left[r as usize] {
                rows[w] = r;
                w += 1;
            } else {
                self.scratch.push(r);
            }
        }
        rows[w..hi].copy_from_slice(&self.scratch);
        w
    }

    fn best_split(&self, lo: usize, hi: usize, counts: &[usize]) -> Option<BestSplit> {
        let labels = self.data.labels();
        let msl = self.params.min_samples_leaf;
        let w = &self.weights;
        let total_w = self.weighted_total(counts);
        let parent = gini_weighted(counts, w, total_w);
        let n = hi - lo;
        let mut best: Option<BestSplit> = None;
        // Weighted class masses on each side of the cut.
        let mut left = vec![0.0f64; counts.len()];
        let mut right = vec![0.0f64; counts.len()];

        for (slot, order) in self.order.iter().enumerate() {
            let rows = &order[lo..hi];
            let column = self.data.column(self.features[slot]);
            left.iter_mut().for_each(|c| *c = 0.0);
            for (r, (&c, &wc)) in right.iter_mut().zip(counts.iter().zip(w)) {
                *r = c as f64 * wc;
            }
            let mut wl = 0.0;
            for i in 0..n - 1 {
                let r = rows[i] as usize;
                let c = labels[r];
                left[c] += w[c];
                right[c] -= w[c];
                wl += w[c];
                let lo = column[r];
                let hi = column[rows[i + 1] as usize];
                if lo >= hi || i + 1 < msl || n - (i + 1) < msl {
                    continue;
                }
                let wr = total_w - wl;
                if wl <= 0.0 || wr <= 0.0 {
                    continue;
                }
                // Weighted child impurity: sum over sides of W - sum_c m_c^2 / W.
                let sq_l: f64 = left.iter().map(|m| m * m).sum();
                let sq_r: f64 = right.iter().map(|m| m * m).sum();
                let child = (total_w - sq_l / wl - sq_r / wr) / total_w;
                let gain = parent - child;
                let improves = match &best {
                    None => gain > GAIN_EPS,
                    Some(b) => gain > b.gain + GAIN_EPS,
                };
                if improves {
                    let mut threshold = lo + (hi - lo) / 2.0;
                    if threshold >= hi {
                        threshold = lo;
                    }
                    best = Some(BestSplit {
                        feature_slot: slot,
                        threshold,
                        gain,
                    });
                }
            }
        }
        best
    }
}

/// Fits a tree on `data` using only the features in `f`.
pub fn train_tree(data: &Dataset, f: &FeatureSubset, params: &TreeParams) -> Result<TrainedTree> {
    params.validate()?;
    if data.n_rows() == 0 {
        return Err(Error::arg("cannot train on an empty dataset"));
    }
    if f.is_empty() {
        return Err(Error::arg("feature subset is empty"));
    }
    if !f.is_subset_of(&data.all_features()) {
        return Err(Error::arg(format!(
            "feature subset {f:?} is not contained in the dataset's {} features",
            data.n_features()
        )));
    }
    let features: Vec<FeatureId> = f.iter().collect();
    let weights = class_weights(data, params.class_weighting);
    let order: Vec<Vec<u32>> = features.iter().map(|&feat| data.sorted_rows(feat).to_vec()).collect();

    let mut builder = Builder {
        data,
        features,
        params: *params,
        weights,
        nodes: Vec::new(),
        order,
        goes_left: vec![false; data.n_rows()],
        scratch: Vec::with_capacity(data.n_rows()),
    };
    builder.grow(0, data.n_rows(), 0);
    let Builder { nodes, weights, .. } = builder;
    let mut tree = TrainedTree {
        nodes,
        used_features: FeatureSubset::empty(),
        candidate_features: *f,
        params: *params,
        weights,
    };
    tree.used_features = tree.collect_used();
    Ok(tree)
}

impl TrainedTree {
    pub fn params(&self) -> &TreeParams {
        &self.params
    }

    /// Features referenced by at least one split.
    pub fn used_features(&self) -> &FeatureSubset {
        &self.used_features
    }

    /// The subset the tree was allowed to split on.
    pub fn candidate_features(&self) -> &FeatureSubset {
        &self.candidate_features
    }

    pub fn class_weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Deepest leaf depth; a lone root has depth 0.
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    fn collect_used(&self) -> FeatureSubset {
        let mut used = FeatureSubset::empty();
        for n in &self.nodes {
            if let NodeKind::Split { feature, .. } = n.kind {
                used.insert(feature);
            }
        }
        used
    }

    /// The same tree with every node at `max_depth` turned into a leaf.
    ///
    /// Greedy growth never looks below the current node, so this is exactly
    /// the tree that training with `max_depth` would have produced.
    pub fn truncated(&self, max_depth: usize) -> TrainedTree {
        let mut nodes = Vec::with_capacity(self.nodes.len());
        self.copy_truncated(0, max_depth, &mut nodes);
        let mut tree = TrainedTree {
            nodes,
            used_features: FeatureSubset::empty(),
            candidate_features: self.candidate_features,
            params: self.params.with_depth(max_depth),
            weights: self.weights.clone(),
        };
        tree.used_features = tree.collect_used();
        tree
    }

    fn copy_truncated(&self, id: usize, max_depth: usize, out: &mut Vec<Node>) -> usize {
        let node = &self.nodes[id];
        let new_id = out.len();
        out.push(Node {
            counts: node.counts.clone(),
            depth: node.depth,
            kind: NodeKind::Leaf,
        });
        if let NodeKind::Split {
            feature,
            threshold,
            left,
            right,
        } = node.kind
        {
            if node.depth < max_depth {
                let l = self.copy_truncated(left, max_depth, out);
                let r = self.copy_truncated(right, max_depth, out);
                out[new_id].kind = NodeKind::Split {
                    feature,
                    threshold,
                    left: l,
                    right: r,
                };
            }
        }
        new_id
    }

    fn leaf_for(&self, mut value: impl FnMut(FeatureId) -> f64) -> usize {
        let mut id = 0;
        loop {
            match self.nodes[id].kind {
                NodeKind::Leaf => return id,
                NodeKind::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => id = if value(feature) <= threshold { left } else { right },
            }
        }
    }

    fn class_of(&self, id: usize) -> usize {
        argmax_class(&self.nodes[id].counts, &self.weights)
    }

    /// Class for one row given as values of every dataset feature.
    pub fn predict(&self, row: &[f64]) -> Result<usize> {
        for f in self.used_features.iter() {
            match row.get(f.0) {
                Some(v) if !v.is_nan() => {}
                _ => return Err(Error::arg(format!("row has no value for feature {f}"))),
            }
        }
        Ok(self.class_of(self.leaf_for(|f| row[f.0])))
    }

    /// Predicts row `row` of `data` without copying it out.
    pub fn predict_row(&self, data: &Dataset, row: usize) -> usize {
        self.class_of(self.leaf_for(|f| data.value(row, f)))
    }

    pub fn predict_all(&self, data: &Dataset) -> Vec<usize> {
        (0..data.n_rows()).map(|r| self.predict_row(data, r)).collect()
    }

    /// Position (in [`leaf_nodes`] order) of the leaf that `row` reaches.
    pub fn leaf_index(&self, data: &Dataset, row: usize) -> usize {
        let target = self.leaf_for(|f| data.value(row, f));
        let mut order = Vec::new();
        self.leaf_ids(0, &mut order);
        order.iter().position(|&id| id == target).expect("routing ends at a leaf")
    }

    fn leaf_ids(&self, id: usize, out: &mut Vec<usize>) {
        match self.nodes[id].kind {
            NodeKind::Leaf => out.push(id),
            NodeKind::Split { left, right, .. } => {
                self.leaf_ids(left, out);
                self.leaf_ids(right, out);
            }
        }
    }
}

/// All leaves, left to right.
pub fn leaf_nodes(tree: &TrainedTree) -> Vec<LeafNode> {
    fn walk(tree: &TrainedTree, id: usize, path: &mut Vec<Predicate>, out: &mut Vec<LeafNode>) {
        let node = &tree.nodes[id];
        match node.kind {
            NodeKind::Leaf => {
                let n = node.counts.iter().sum();
                out.push(LeafNode {
                    path: path.clone(),
                    class_counts: node.counts.clone(),
                    n,
                    gini: gini(&node.counts, &tree.weights).unwrap_or(0.0),
                    predicted_class: tree.class_of(id),
                });
            }
            NodeKind::Split {
                feature,
                threshold,
                left,
                right,
            } => {
                path.push(Predicate { feature, threshold, side: Side::Le });
                walk(tree, left, path, out);
                path.pop();
                path.push(Predicate { feature, threshold, side: Side::Gt });
                walk(tree, right, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(tree, 0, &mut Vec::new(), &mut out);
    out
}

/// Macro-averaged F1 from true and predicted labels over `n_classes` classes.
/// A class whose precision or recall is undefined scores 0.
pub fn macro_f1_labels(truth: &[usize], predicted: &[usize], n_classes: usize) -> f64 {
    let mut tp = vec![0usize; n_classes];
    let mut fp = vec![0usize; n_classes];
    let mut fneg = vec![0usize; n_classes];
    for (&t, &p) in truth.iter().zip(predicted) {
        if t == p {
            tp[t] += 1;
        } else {
            fp[p] += 1;
            fneg[t] += 1;
        }
    }
    let total: f64 = (0..n_classes)
        .map(|c| {
            let pd = tp[c] + fp[c];
            let rd = tp[c] + fneg[c];
            if pd == 0 || rd == 0 {
                return 0.0;
            }
            let precision = tp[c] as f64 / pd as f64;
            let recall = tp[c] as f64 / rd as f64;
            if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            }
        })
        .sum();
    total / n_classes as f64
}

pub fn macro_f1(tree: &TrainedTree, data: &Dataset) -> f64 {
    macro_f1_labels(data.labels(), &tree.predict_all(data), data.n_classes())
}

/// A tree tuned over `max_depth in 1..=p_max` on validation macro-F1.
#[derive(Debug, Clone)]
pub struct DepthSearch {
    pub tree: TrainedTree,
    pub best_depth: usize,
    pub score: f64,
}

/// Picks the depth with the highest validation macro-F1, preferring the
/// shallowest depth on ties.
pub fn best_depth_tree(
    train: &Dataset,
    val: &Dataset,
    f: &FeatureSubset,
    p_max: usize,
    params: &TreeParams,
) -> Result<DepthSearch> {
    if p_max < 1 {
        return Err(Error::arg("p_max must be at least 1"));
    }
    let deepest = train_tree(train, f, &params.with_depth(p_max))?;
    let mut best: Option<DepthSearch> = None;
    for p in 1..=p_max {
        let tree = if p == p_max { deepest.clone() } else { deepest.truncated(p) };
        let score = macro_f1(&tree, val);
        if best.as_ref().is_none_or(|b| score > b.score) {
            best = Some(DepthSearch {
                tree,
                best_depth: p,
                score,
            });
        }
    }
    Ok(best.expect("p_max >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::FeatureInfo;

    fn two_class(columns: Vec<Vec<f64>>, labels: Vec<usize>) -> Dataset {
        let features = (0..columns.len())
            .map(|i| FeatureInfo::new(format!("x{i}")))
            .collect();
        Dataset::new(features, columns, labels, vec!["c0".into(), "c1".into()]).unwrap()
    }

    fn params(depth: usize) -> TreeParams {
        TreeParams::default().with_depth(depth)
    }

    #[test]
    fn gini_examples() {
        let w = uniform_weights(2);
        assert_eq!(gini(&[50, 50], &w).unwrap(), 0.5);
        assert_eq!(gini(&[59, 0], &w).unwrap(), 0.0);
        let g = gini(&[97, 6], &w).unwrap();
        let expected = 1.0 - (97.0f64 / 103.0).powi(2) - (6.0f64 / 103.0).powi(2);
        assert!((g - expected).abs() < 1e-15);
        assert!((g - 0.109_718).abs() < 1e-6);
        assert!((g * 100.0).round() / 100.0 == 0.11);
        assert!(gini(&[0, 0], &w).is_err());
    }

    #[test]
    fn balanced_gini_rescales_counts() {
        // 80/20 training split gives weights 0.625 and 2.5.
        let labels: Vec<usize> = (0..100).map(|i| usize::from(i >= 80)).collect();
        let data = two_class(vec![(0..100).map(f64::from).collect()], labels);
        let w = class_weights(&data, ClassWeighting::Balanced);
        assert!((w[0] - 0.625).abs() < 1e-12 && (w[1] - 2.5).abs() < 1e-12);
        // An 80/20 node becomes perfectly mixed once reweighted.
        assert!((gini(&[80, 20], &w).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn separable_depth_one() {
        let data = two_class(vec![vec![1.0, 2.0, 3.0, 4.0]], vec![0, 0, 1, 1]);
        let tree = train_tree(&data, &data.all_features(), &params(1)).unwrap();
        let leaves = leaf_nodes(&tree);
        assert_eq!(leaves.len(), 2);
        assert_eq!(leaves[0].path[0].threshold, 2.5);
        assert_eq!(leaves[0].path[0].side, Side::Le);
        assert_eq!(leaves[1].path[0].side, Side::Gt);
        assert!(leaves.iter().all(|l| l.gini == 0.0));
        assert_eq!(tree.predict(&[2.0]).unwrap(), 0);
        assert_eq!(tree.predict(&[3.0]).unwrap(), 1);
        assert!(tree.predict(&[]).is_err());
        assert!(tree.predict(&[f64::NAN]).is_err());
    }

    #[test]
    fn constant_labels_give_one_leaf() {
        let data = two_class(vec![vec![1.0, 2.0, 3.0]], vec![1, 1, 1]);
        let tree = train_tree(&data, &data.all_features(), &params(3)).unwrap();
        let leaves = leaf_nodes(&tree);
        assert_eq!(leaves.len(), 1);
        assert!(leaves[0].path.is_empty());
        assert_eq!(leaves[0].gini, 0.0);
        assert_eq!(tree.predict(&[100.0]).unwrap(), 1);
        assert_eq!(tree.depth(), 0);
    }

    #[test]
    fn rejects_foreign_features() {
        let data = two_class(vec![vec![1.0, 2.0]], vec![0, 1]);
        let f = FeatureSubset::new([0, 3]).unwrap();
        assert!(train_tree(&data, &f, &params(1)).is_err());
        assert!(train_tree(&data, &data.all_features(), &params(0)).is_err());
    }

    #[test]
    fn min_samples_leaf_is_respected() {
        let data = two_class(vec![vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]], vec![0, 1, 1, 1, 1, 1]);
        let p = TreeParams {
            min_samples_leaf: 2,
            ..params(3)
        };
        let tree = train_tree(&data, &data.all_features(), &p).unwrap();
        assert!(leaf_nodes(&tree).iter().all(|l| l.n >= 2));
    }

    #[test]
    fn zero_gain_node_stays_a_leaf() {
        // The only candidate split leaves both sides at 50/50.
        let flat = two_class(vec![vec![1.0, 1.0, 2.0, 2.0]], vec![0, 1, 0, 1]);
        let tree = train_tree(&flat, &flat.all_features(), &params(3)).unwrap();
        assert_eq!(leaf_nodes(&tree).len(), 1);
    }

    #[test]
    fn macro_f1_examples() {
        assert_eq!(macro_f1_labels(&[0, 1, 1], &[0, 1, 1], 2), 1.0);
        let v = macro_f1_labels(&[0, 0, 1, 1], &[0, 1, 1, 1], 2);
        assert!((v - (2.0 / 3.0 + 0.8) / 2.0).abs() < 1e-12);
        let v = macro_f1_labels(&[0, 0, 1, 1], &[0, 0, 0, 0], 2);
        assert!((v - (2.0 / 3.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn depth_search_prefers_shallow() {
        let data = two_class(vec![vec![1.0, 2.0, 3.0, 4.0]], vec![0, 0, 1, 1]);
        let r = best_depth_tree(&data, &data, &data.all_features(), 5, &params(5)).unwrap();
        assert_eq!(r.best_depth, 1);
        assert_eq!(r.score, 1.0);
        let r = best_depth_tree(&data, &data, &data.all_features(), 1, &params(1)).unwrap();
        assert_eq!(r.best_depth, 1);
    }

    #[test]
    fn leaf_index_matches_routing() {
        let x: Vec<f64> = (0..40).map(|i| ((i * 37) % 40) as f64).collect();
        let y: Vec<usize> = x.iter().map(|&v| usize::from(v > 13.0 && v < 31.0)).collect();
        let data = two_class(vec![x], y);
        let tree = train_tree(&data, &data.all_features(), &params(3)).unwrap();
        let leaves = leaf_nodes(&tree);
        let mut hits = vec![vec![0usize; 2]; leaves.len()];
        for r in 0..data.n_rows() {
            hits[tree.leaf_index(&data, r)][data.labels()[r]] += 1;
        }
        for (leaf, h) in leaves.iter().zip(hits) {
            assert_eq!(leaf.class_counts, h);
        }
    }
}
