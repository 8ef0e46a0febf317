//! Multi-index arithmetic and ordered index sets.
//!
//! Multi-indices are exponent tuples in `N^m`. They are ordered by the
//! graded ordering `≺`: first by total degree, ties broken by recursively
//! comparing the tails `(α_2, …, α_m)`. Index sets are immutable, strictly
//! sorted under `≺`, and their element positions serve as stable matrix
//! row/column indices throughout the crate.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// An exponent tuple `α ∈ N^m`. Entries fit into `u32`; total degrees up
/// to 64 are well within range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "multi-index dimension must be >= 1");
        Self { entries }
    }

    pub fn zero(m: usize) -> Self {
        Self::new(vec![0; m])
    }

    /// Unit index `e_k` (1-based position `k`, 1 <= k <= m).
    pub fn unit(m: usize, k: usize) -> Self {
        let mut e = vec![0; m];
        e[k - 1] = 1;
        Self::new(e)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(MultiIndex::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// The comparison key for `≺`: suffix degree sums
    /// `(|α|, α_2+…+α_m, α_3+…+α_m, …, α_m)` compared lexicographically.
    ///
    /// Degree dominance gives the first component; equal degrees reduce the
    /// recursion on tails to comparing the remaining suffix sums in order.
    fn order_key(&self) -> impl Iterator<Item = u32> + '_ {
        let mut suffix: u32 = self.degree();
        let mut idx = 0;
        std::iter::from_fn(move || {
            if idx >= self.entries.len() {
                return None;
            }
            let cur = suffix;
            suffix -= self.entries[idx];
            idx += 1;
            Some(cur)
        })
    }

    /// `self ≺ other`. Both indices must share a dimension.
    pub fn precedes(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.order_key().cmp(other.order_key()) == Ordering::Less
    }

    pub fn compare(&self, other: &MultiIndex) -> Ordering {
        self.order_key().cmp(other.order_key())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

/// `a ≺ b` with explicit dimension validation.
pub fn order_less(a: &MultiIndex, b: &MultiIndex) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.precedes(b))
}

/// A finite set of multi-indices, strictly sorted under `≺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    dim: usize,
    elems: Vec<MultiIndex>,
}

impl IndexSet {
    /// Builds a set from arbitrary indices: validates dimensions, sorts
    /// under `≺` and removes duplicates.
    pub fn from_indices(dim: usize, indices: Vec<MultiIndex>) -> Result<Self> {
        for idx in &indices {
            if idx.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: idx.dim(),
                });
            }
        }
        let mut elems = indices;
        elems.sort_by(|a, b| a.compare(b));
        elems.dedup();
        Ok(Self { dim, elems })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, elems: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.elems.iter()
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.elems[i]
    }

    pub fn contains(&self, idx: &MultiIndex) -> bool {
        self.position(idx).is_some()
    }

    /// Position of `idx` in `≺` order, if present.
    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.elems.binary_search_by(|e| e.compare(idx)).ok()
    }

    /// One multi-index per line, space-separated integers, in `≺` order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.elems {
            let line: Vec<String> = e.entries().iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `T(m,d) = {α ∈ N^m : |α| <= d}`, sorted under `≺`.
pub fn triangle_set(m: usize, d: u32) -> IndexSet {
    let mut elems = Vec::with_capacity(binomial(m as u64 + d as u64, m as u64) as usize);
    enumerate_degree_at_most(m, d, &mut vec![0; m], 0, &mut elems);
    IndexSet::from_indices(m, elems).expect("generated indices share dimension")
}

/// `D(m,d) = {α ∈ N^m : |α| = d}`, sorted under `≺`.
pub fn degree_set(m: usize, d: u32) -> IndexSet {
    let t = triangle_set(m, d);
    let elems = t.iter().filter(|a| a.degree() == d).cloned().collect();
    IndexSet::from_indices(m, elems).expect("filtered indices share dimension")
}

fn enumerate_degree_at_most(
    m: usize,
    budget: u32,
    current: &mut Vec<u32>,
    pos: usize,
    out: &mut Vec<MultiIndex>,
) {
    if pos == m {
        out.push(MultiIndex::new(current.clone()));
        return;
    }
    for v in 0..=budget {
        current[pos] = v;
        enumerate_degree_at_most(m, budget - v, current, pos + 1, out);
    }
    current[pos] = 0;
}

/// `{α + β : α ∈ a, β ∈ b}`, deduplicated and sorted.
pub fn minkowski_sum(a: &IndexSet, b: &IndexSet) -> Result<IndexSet> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let mut elems = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            elems.push(x.add(y)?);
        }
    }
    IndexSet::from_indices(a.dim(), elems)
}

/// `2A = A + A`.
pub fn double_set(a: &IndexSet) -> IndexSet {
    minkowski_sum(a, a).expect("same set, same dimension")
}

/// `A⁺ = A ∪ (A + e_1) ∪ … ∪ (A + e_m)`.
pub fn extension(a: &IndexSet) -> IndexSet {
    let m = a.dim();
    let mut elems: Vec<MultiIndex> = a.iter().cloned().collect();
    for k in 1..=m {
        let e = MultiIndex::unit(m, k);
        for x in a.iter() {
            elems.push(x.add(&e).expect("unit index has matching dimension"));
        }
    }
    IndexSet::from_indices(m, elems).expect("extension preserves dimension")
}

/// `δA = A⁺ \ A`.
pub fn boundary(a: &IndexSet) -> IndexSet {
    let ext = extension(a);
    let elems = ext.iter().filter(|x| !a.contains(x)).cloned().collect();
    IndexSet::from_indices(a.dim(), elems).expect("boundary preserves dimension")
}

/// `2A \ A`: the missing indices `β_1 ≺ … ≺ β_N`.
pub fn missing_indices(a: &IndexSet) -> IndexSet {
    let full = double_set(a);
    let elems = full.iter().filter(|x| !a.contains(x)).cloned().collect();
    IndexSet::from_indices(a.dim(), elems).expect("difference preserves dimension")
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
