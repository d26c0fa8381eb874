use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{FeatureId, FeatureSubset, MAX_FEATURES};
use crate::error::{Error, Result};

/// Column metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureInfo {
    pub name: String,
    /// Injected uniform-noise column.
    pub is_noise: bool,
    /// Word used for the `<=` side of a split when rules are rendered.
    pub small_label: String,
    /// Word used for the `>` side.
    pub large_label: String,
}

impl FeatureInfo {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            is_noise: false,
            small_label: "small".into(),
            large_label: "large".into(),
        }
    }

    pub fn with_labels(mut self, small: &str, large: &str) -> Self {
        self.small_label = small.into();
        self.large_label = large.into();
        self
    }

    pub fn noise(name: impl Into<String>) -> Self {
        Self {
            is_noise: true,
            ..Self::new(name)
        }
    }
}

/// A labelled numeric table, stored column-major.
#[derive(Debug, Clone)]
pub struct Dataset {
    features: Vec<FeatureInfo>,
    columns: Vec<Vec<f64>>,
    labels: Vec<usize>,
    class_names: Vec<String>,
    /// Lazily computed row orders, one per column.
    order: Vec<OnceLock<Vec<u32>>>,
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.features == other.features
            && self.columns == other.columns
            && self.labels == other.labels
            && self.class_names == other.class_names
    }
}

impl Dataset {
    pub fn new(
        features: Vec<FeatureInfo>,
        columns: Vec<Vec<f64>>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if class_names.len() < 2 {
            return Err(Error::arg("a dataset needs at least two classes"));
        }
        if labels.is_empty() {
            return Err(Error::arg("a dataset needs at least one row"));
        }
        if features.len() != columns.len() {
            return Err(Error::arg(format!(
                "{} feature descriptions for {} columns",
                features.len(),
                columns.len()
            )));
        }
        if features.len() > MAX_FEATURES {
            return Err(Error::arg(format!(
                "at most {MAX_FEATURES} features are supported, got {}",
                features.len()
            )));
        }
        for (info, col) in features.iter().zip(&columns) {
            if col.len() != labels.len() {
                return Err(Error::arg(format!(
                    "column {} has {} rows, expected {}",
                    info.name,
                    col.len(),
                    labels.len()
                )));
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::arg(format!("column {} contains missing or non-finite values", info.name)));
            }
        }
        if let Some(&bad) = labels.iter().find(|&&c| c >= class_names.len()) {
            return Err(Error::arg(format!("label {bad} out of range")));
        }
        Ok(Self {
            order: fresh_order(columns.len()),
            features,
            columns,
            labels,
            class_names,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn features(&self) -> &[FeatureInfo] {
        &self.features
    }

    pub fn feature(&self, f: FeatureId) -> &FeatureInfo {
        &self.features[f.0]
    }

    pub fn column(&self, f: FeatureId) -> &[f64] {
        &self.columns[f.0]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    /// Row indices sorted by the values of `f`, ties by row. Computed once.
    pub fn sorted_rows(&self, f: FeatureId) -> &[u32] {
        self.order[f.0].get_or_init(|| {
            let col = &self.columns[f.0];
            let mut rows: Vec<u32> = (0..col.len() as u32).collect();
            rows.sort_unstable_by(|&a, &b| col[a as usize].total_cmp(&col[b as usize]).then(a.cmp(&b)));
            rows
        })
    }

    pub fn value(&self, row: usize, f: FeatureId) -> f64 {
        self.columns[f.0][row]
    }

    /// One row across all features.
    pub fn row(&self, row: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[row]).collect()
    }

    pub fn all_features(&self) -> FeatureSubset {
        FeatureSubset::full(self.n_features()).expect("feature count checked on construction")
    }

    pub fn noise_features(&self) -> FeatureSubset {
        let mut s = FeatureSubset::empty();
        for (i, info) in self.features.iter().enumerate() {
            if info.is_noise {
                s.insert(FeatureId(i));
            }
        }
        s
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes()];
        for &c in &self.labels {
            counts[c] += 1;
        }
        counts
    }

    /// Rows picked by index, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Dataset {
        Dataset {
            features: self.features.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| rows.iter().map(|&r| c[r]).collect())
                .collect(),
            labels: rows.iter().map(|&r| self.labels[r]).collect(),
            class_names: self.class_names.clone(),
            order: fresh_order(self.columns.len()),
        }
    }

    /// Appends a column.
    pub fn push_feature(&mut self, info: FeatureInfo, column: Vec<f64>) -> Result<()> {
        if column.len() != self.n_rows() {
            return Err(Error::arg("new column length differs from the row count"));
        }
        if self.features.len() == MAX_FEATURES {
            return Err(Error::arg(format!("at most {MAX_FEATURES} features are supported")));
        }
        self.features.push(info);
        self.columns.push(column);
        self.order.push(OnceLock::new());
        Ok(())
    }
}

fn fresh_order(n: usize) -> Vec<OnceLock<Vec<u32>>> {
    (0..n).map(|_| OnceLock::new()).collect()
}
