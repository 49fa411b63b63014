//! Increasing maps, complements, permutation signs and multi-indices.
//!
//! Index sets are small (at most 16 labels), so sets of labels are also
//! handled as `u16` bit masks where that is convenient.

use std::fmt;

use crate::error::{Error, Result};

/// A strictly increasing map from the interval `[start..start+len-1]` into the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncreasingMap {
    start: i64,
    values: Vec<usize>,
}

impl IncreasingMap {
    pub fn new(start: i64, values: Vec<usize>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "{values:?} is not strictly increasing"
            )));
        }
        Ok(IncreasingMap { start, values })
    }

    /// Map with domain starting at 0.
    pub fn from_values(values: &[usize]) -> Result<Self> {
        Self::new(0, values.to_vec())
    }

    pub fn empty(start: i64) -> Self {
        IncreasingMap {
            start,
            values: Vec::new(),
        }
    }

    pub fn from_mask(start: i64, mask: u16) -> Self {
        IncreasingMap {
            start,
            values: mask_labels(mask),
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last domain index, or `start - 1` for the empty map.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn mask(&self) -> u16 {
        labels_mask(&self.values)
    }

    /// Value at domain index `i`.
    pub fn at(&self, i: i64) -> Result<usize> {
        let off = i - self.start;
        if off < 0 || off as usize >= self.values.len() {
            return Err(Error::InvalidInput(format!(
                "index {i} outside domain of {self}"
            )));
        }
        Ok(self.values[off as usize])
    }

    /// `ρ ∖ ρ(i)`: drops the value at domain index `i`, keeping the domain start.
    pub fn remove(&self, i: i64) -> Result<Self> {
        self.at(i)?;
        let mut values = self.values.clone();
        values.remove((i - self.start) as usize);
        Ok(IncreasingMap {
            start: self.start,
            values,
        })
    }

    /// Composition `self ∘ inner`: inner's values must lie in self's domain.
    pub fn compose(&self, inner: &IncreasingMap) -> Result<Self> {
        let values = inner
            .values
            .iter()
            .map(|&v| self.at(v as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(IncreasingMap {
            start: inner.start,
            values,
        })
    }

    /// The complement σ* with range `set ∖ range(σ)`, domain starting at 0.
    pub fn complement(&self, set: &[usize]) -> Result<Self> {
        let set = sorted_set(set);
        if let Some(v) = self.values.iter().find(|v| !set.contains(v)) {
            return Err(Error::InvalidInput(format!("{v} not in {set:?}")));
        }
        let values = set
            .into_iter()
            .filter(|v| !self.values.contains(v))
            .collect();
        Ok(IncreasingMap { start: 0, values })
    }

    /// Parity of the permutation (σ, σ*) of the sorted set.
    pub fn sign(&self, set: &[usize]) -> Result<i32> {
        let comp = self.complement(set)?;
        Ok(concat_sign(&self.values, &comp.values))
    }
}

impl fmt::Display for IncreasingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

fn sorted_set(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// All increasing maps from `[start..end]` into `set`, in lexicographic order.
pub fn enumerate_sigma(start: i64, end: i64, set: &[usize]) -> Vec<IncreasingMap> {
    let len = (end - start + 1).max(0) as usize;
    let set = sorted_set(set);
    subsets_of_size(&set, len)
        .into_iter()
        .map(|values| IncreasingMap { start, values })
        .collect()
}

/// All `size`-element subsets of a sorted slice, lexicographic.
pub fn subsets_of_size(set: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(
        set: &[usize],
        size: usize,
        from: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = size - cur.len();
        for i in from..set.len() {
            if set.len() - i < need {
                break;
            }
            cur.push(set[i]);
            rec(set, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= set.len() {
        rec(set, size, 0, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

/// Sign of the permutation sorting the concatenation `a ++ b` (each increasing, disjoint).
pub fn concat_sign(a: &[usize], b: &[usize]) -> i32 {
    let inversions: usize = a.iter().map(|x| b.iter().filter(|y| *y < x).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of an arbitrary sequence of distinct integers relative to its sorted order.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn labels_mask(labels: &[usize]) -> u16 {
    labels.iter().fold(0u16, |m, &l| m | (1 << l))
}

pub fn mask_labels(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of `(dλ)_a ∧ (dλ)_b = sign · (dλ)_{a ∪ b}` for disjoint masks.
pub fn mask_merge_sign(a: u16, b: u16) -> i32 {
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of labels of `mask` strictly below `label`.
pub fn rank_below(mask: u16, label: usize) -> u32 {
    (mask & ((1u16 << label) - 1)).count_ones()
}

/// Multi-index α over `[0..n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex { exps }
    }
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
    pub fn order(&self) -> u32 {
        self.exps.iter().sum()
    }
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.exps
            .iter()
            .map(|&e| crate::scalar::factorial(e))
            .product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// All α over `[0..n]` with |α| = r, ordered with larger leading exponents first.
pub fn enumerate_multiindices(n: usize, r: u32) -> Vec<MultiIndex> {
    fn rec(slots: usize, r: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            cur.push(r);
            out.push(MultiIndex::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=r).rev() {
            cur.push(e);
            rec(slots - 1, r - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n + 1, r, &mut Vec::new(), &mut out);
    out
}
