//! Counting and enumeration over the space of fixed-size feature subsets.
//!
//! A [`FeatureSubset`] is stored as a 128-bit membership mask, so datasets may
//! carry at most [`MAX_FEATURES`] features. Counts are exact `u64` values and
//! every multiplication is checked.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest feature count a [`FeatureSubset`] can address.
pub const MAX_FEATURES: usize = 128;

/// Default ceiling on how many subsets [`enumerate_fcs`] will materialize.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Index of a feature column within a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FeatureId(pub usize);

impl FeatureId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0 + 1)
    }
}

/// An unordered set of distinct features.
///
/// Equality and hashing follow set semantics. The total order is lexicographic
/// on the ascending member list, which is also the order produced by
/// [`enumerate_fcs`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FeatureSubset {
    bits: u128,
}

impl FeatureSubset {
    pub fn empty() -> Self {
        Self { bits: 0 }
    }

    /// Builds a subset from feature indices. Repeated indices are rejected.
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Result<Self> {
        let mut bits = 0u128;
        for m in members {
            if m >= MAX_FEATURES {
                return Err(Error::arg(format!(
                    "feature index {m} exceeds the supported maximum of {}",
                    MAX_FEATURES - 1
                )));
            }
            let bit = 1u128 << m;
            if bits & bit != 0 {
                return Err(Error::arg(format!("duplicate feature index {m}")));
            }
            bits |= bit;
        }
        Ok(Self { bits })
    }

    /// All features `0..d`.
    pub fn full(d: usize) -> Result<Self> {
        Self::new(0..d)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, f: FeatureId) -> bool {
        f.0 < MAX_FEATURES && self.bits & (1u128 << f.0) != 0
    }

    pub fn insert(&mut self, f: FeatureId) {
        assert!(f.0 < MAX_FEATURES, "feature index out of range");
        self.bits |= 1u128 << f.0;
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.bits & other.bits != 0
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = FeatureId> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(FeatureId(i))
            }
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().map(FeatureId::index).collect()
    }

    /// Raw membership mask; bit `i` is set when feature `i` belongs to the subset.
    pub fn mask(&self) -> u128 {
        self.bits
    }
}

impl Ord for FeatureSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for FeatureSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|m| m.0)).finish()
    }
}

impl Serialize for FeatureSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|m| m.0))
    }
}

impl<'de> Deserialize<'de> for FeatureSubset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        FeatureSubset::new(v).map_err(serde::de::Error::custom)
    }
}

/// `C(n, k)`, with `C(n, 0) = 1` and `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is always integral at this point.
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow(format!("C({n}, {k})")));
        }
    }
    Ok(acc as u64)
}

fn check_dims(d: usize, dp: usize) -> Result<()> {
    if dp < 1 || d <= dp {
        return Err(Error::config(format!(
            "subset size must satisfy 1 <= D' < D, got D = {d}, D' = {dp}"
        )));
    }
    Ok(())
}

/// Number of `dp`-subsets of `d` features.
pub fn fcs_size(d: usize, dp: usize) -> Result<u64> {
    check_dims(d, dp)?;
    binomial(d as u64, dp as u64)
}

/// Every `dp`-subset of `0..d` in canonical (lexicographic) order.
pub fn enumerate_fcs(d: usize, dp: usize) -> Result<Vec<FeatureSubset>> {
    enumerate_fcs_capped(d, dp, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_fcs_capped(d: usize, dp: usize, cap: u64) -> Result<Vec<FeatureSubset>> {
    let size = fcs_size(d, dp)?;
    if size > cap {
        return Err(Error::Capacity { size, cap });
    }
    if d > MAX_FEATURES {
        return Err(Error::config(format!(
            "at most {MAX_FEATURES} features are supported, got {d}"
        )));
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut idx: Vec<usize> = (0..dp).collect();
    loop {
        let mut bits = 0u128;
        for &i in &idx {
            bits |= 1u128 << i;
        }
        out.push(FeatureSubset { bits });

        // Advance to the next combination in lexicographic order.
        let mut pos = dp;
        while pos > 0 {
            pos -= 1;
            if idx[pos] != pos + d - dp {
                idx[pos] += 1;
                for j in pos + 1..dp {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return Ok(out);
            }
        }
    }
}

/// `D' - |f ∩ u|`, the number of members of `f` missing from `u`.
pub fn mismatch_count(f: &FeatureSubset, u: &FeatureSubset) -> Result<usize> {
    if f.len() != u.len() {
        return Err(Error::arg(format!(
            "subsets differ in size ({} vs {})",
            f.len(),
            u.len()
        )));
    }
    Ok(f.len() - f.intersection_len(u))
}

/// Number of subsets at mismatch distance `i` from any fixed subset:
/// `C(D', D' - i) * C(D - D', i)`.
pub fn mismatch_class_size(d: usize, dp: usize, i: usize) -> Result<u64> {
    check_dims(d, dp)?;
    if i > dp {
        return Err(Error::arg(format!("mismatch count {i} exceeds D' = {dp}")));
    }
    let kept = binomial(dp as u64, (dp - i) as u64)?;
    let swapped = binomial((d - dp) as u64, i as u64)?;
    kept.checked_mul(swapped)
        .ok_or_else(|| Error::Overflow(format!("a_{i} for D = {d}, D' = {dp}")))
}

/// Size of the candidate space once it is restricted to subsets containing at
/// least one of `nu` designated features: `C(D, D') - C(D - N_U, D')`.
pub fn reduced_space_size(d: usize, dp: usize, nu: usize) -> Result<u64> {
    check_dims(d, dp)?;
    if nu < 1 || nu > d {
        return Err(Error::arg(format!("N_U must lie in [1, {d}], got {nu}")));
    }
    let all = binomial(d as u64, dp as u64)?;
    let excluded = binomial((d - nu) as u64, dp as u64)?;
    Ok(all - excluded)
}
