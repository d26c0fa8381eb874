//! Modified Aitchison–Aitken similarity between fixed-size feature subsets.
//!
//! An exact match keeps mass `1 - h`; the remaining `h` is spread over every
//! mismatching subset with weight `b^(m-1)` for `m` mismatches, normalized by
//! the mismatch class sizes so that the similarity to a fixed `u` sums to one
//! over the whole subset space.

use crate::combinatorics::{mismatch_class_size, FeatureSubset};
use crate::error::{Error, Result};

/// Kernel hyperparameters together with the precomputed values `k_0..=k_D'`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaaParams {
    h: f64,
    b: f64,
    d: usize,
    dp: usize,
    table: Vec<f64>,
}

impl MaaParams {
    /// `h` and `b` must both lie in the open interval `(0, 1)`.
    pub fn new(h: f64, b: f64, d: usize, dp: usize) -> Result<Self> {
        if !(h > 0.0 && h < 1.0) {
            return Err(Error::config(format!("h must lie in (0, 1), got {h}")));
        }
        if !(b > 0.0 && b < 1.0) {
            return Err(Error::config(format!("b must lie in (0, 1), got {b}")));
        }
        if dp == 0 || d <= dp {
            return Err(Error::config(format!("need 1 <= D' < D, got D = {d}, D' = {dp}")));
        }
        let mut denom = 0.0;
        let mut damp = 1.0;
        for i in 1..=dp {
            denom += mismatch_class_size(d, dp, i)? as f64 * damp;
            damp *= b;
        }
        let k1 = h / denom;
        let mut table = Vec::with_capacity(dp + 1);
        table.push(1.0 - h);
        let mut damp = 1.0;
        for _ in 1..=dp {
            table.push(damp * k1);
            damp *= b;
        }
        Ok(Self { h, b, d, dp, table })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dp(&self) -> usize {
        self.dp
    }

    /// Kernel value for `m` mismatches.
    pub fn k(&self, m: usize) -> f64 {
        self.table[m]
    }

    /// `k_0, k_1, ..., k_D'`.
    pub fn table(&self) -> &[f64] {
        &self.table
    }
}

/// A conditioning set of already-scored subsets (the high- or low-score pool).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubsetPool {
    members: Vec<FeatureSubset>,
}

impl SubsetPool {
    pub fn new(members: Vec<FeatureSubset>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &[FeatureSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Counts pool members by mismatch distance from `f`.
    fn histogram(&self, f: &FeatureSubset, dp: usize) -> Vec<u32> {
        let mut hist = vec![0u32; dp + 1];
        for u in &self.members {
            hist[dp - f.intersection_len(u)] += 1;
        }
        hist
    }
}

impl FromIterator<FeatureSubset> for SubsetPool {
    fn from_iter<I: IntoIterator<Item = FeatureSubset>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

fn check_size(f: &FeatureSubset, p: &MaaParams) -> Result<()> {
    if f.len() != p.dp {
        return Err(Error::arg(format!(
            "subset has {} members, kernel expects {}",
            f.len(),
            p.dp
        )));
    }
    Ok(())
}

/// `k(f, u, h, b)`.
pub fn maa_similarity(f: &FeatureSubset, u: &FeatureSubset, p: &MaaParams) -> Result<f64> {
    check_size(f, p)?;
    check_size(u, p)?;
    Ok(p.k(p.dp - f.intersection_len(u)))
}

/// `K(f, U, h, b)`: the kernel averaged over the pool.
pub fn maa_distribution(f: &FeatureSubset, pool: &SubsetPool, p: &MaaParams) -> Result<f64> {
    if pool.is_empty() {
        return Err(Error::state("cannot condition on an empty subset pool"));
    }
    check_size(f, p)?;
    if let Some(u) = pool.members.iter().find(|u| u.len() != p.dp) {
        return Err(Error::arg(format!("pool member {u:?} has the wrong size")));
    }
    Ok(pool_mass(&pool.histogram(f, p.dp), pool.len(), p))
}

/// Sums `count_m * k_m` in ascending `m`, then averages. Summing over
/// the mismatch histogram keeps the value independent of pool order.
fn pool_mass(hist: &[u32], pool_len: usize, p: &MaaParams) -> f64 {
    let total: f64 = hist
        .iter()
        .zip(&p.table)
        .map(|(&c, &k)| f64::from(c) * k)
        .sum();
    total / pool_len as f64
}

/// `p(f | U+) / p(f | U-)`.
pub fn acquisition_ratio(
    f: &FeatureSubset,
    upper: &SubsetPool,
    lower: &SubsetPool,
    p: &MaaParams,
) -> Result<f64> {
    let num = maa_distribution(f, upper, p)?;
    let den = maa_distribution(f, lower, p)?;
    Ok(num / den)
}

/// Evaluates the acquisition ratio for every candidate. Pool sizes are checked
/// once up front, so this skips the per-call validation of [`acquisition_ratio`].
pub fn acquisition_ratios(
    candidates: &[FeatureSubset],
    upper: &SubsetPool,
    lower: &SubsetPool,
    p: &MaaParams,
) -> Result<Vec<f64>> {
    if upper.is_empty() || lower.is_empty() {
        return Err(Error::state("cannot condition on an empty subset pool"));
    }
    for f in candidates
        .iter()
        .chain(upper.members.iter())
        .chain(lower.members.iter())
    {
        check_size(f, p)?;
    }
    Ok(candidates
        .iter()
        .map(|f| {
            let num = pool_mass(&upper.histogram(f, p.dp), upper.len(), p);
            let den = pool_mass(&lower.histogram(f, p.dp), lower.len(), p);
            num / den
        })
        .collect())
}
