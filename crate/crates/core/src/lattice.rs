use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite set of points of `N^n`, kept sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSet {
    dim: usize,
    points: BTreeSet<Vec<u32>>,
}

impl LatticeSet {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            points: BTreeSet::new(),
        }
    }

    pub fn from_points<I, P>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Vec<u32>>,
    {
        let mut set = Self::new(dim);
        for point in points {
            set.insert(point.into())?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, point: Vec<u32>) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: point.len(),
            });
        }
        Ok(self.points.insert(point))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        self.points.contains(point)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Vec<u32>> + '_ {
        self.points.iter()
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.dim == other.dim && self.points.is_subset(&other.points)
    }

    /// The common coordinate sum, or `None` if the set is empty or two points
    /// disagree.
    pub fn constant_sum(&self) -> Option<u32> {
        let mut sums = self.points.iter().map(|x| x.iter().sum::<u32>());
        let first = sums.next()?;
        sums.all(|s| s == first).then_some(first)
    }

    /// Two points with different coordinate sums, if any.
    pub fn sum_mismatch(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let first = self.points.iter().next()?;
        let target: u32 = first.iter().sum();
        self.points
            .iter()
            .find(|x| x.iter().sum::<u32>() != target)
            .map(|x| (first.clone(), x.clone()))
    }

    /// Per-coordinate minimum and maximum over the set.
    pub fn bounds(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let first = self.points.iter().next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for x in &self.points {
            for k in 0..self.dim {
                lo[k] = lo[k].min(x[k]);
                hi[k] = hi[k].max(x[k]);
            }
        }
        Some((lo, hi))
    }

    /// Pointwise sum set `{x + y}`.
    pub fn minkowski_sum(&self, other: &LatticeSet) -> Result<LatticeSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = LatticeSet::new(self.dim);
        for x in &self.points {
            for y in &other.points {
                out.points
                    .insert(x.iter().zip(y).map(|(a, b)| a + b).collect());
            }
        }
        Ok(out)
    }

    /// Every lattice point `z` with `lo <= z <= hi` coordinatewise and
    /// `Σ z = sum`, in lexicographic order.
    pub fn box_slice(lo: &[u32], hi: &[u32], sum: u32) -> Vec<Vec<u32>> {
        assert_eq!(lo.len(), hi.len());
        let n = lo.len();
        // max_tail[k] / min_tail[k]: reachable sums of coordinates k.. n-1
        let mut max_tail = vec![0u32; n + 1];
        let mut min_tail = vec![0u32; n + 1];
        for k in (0..n).rev() {
            max_tail[k] = max_tail[k + 1] + hi[k];
            min_tail[k] = min_tail[k + 1] + lo[k];
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        #[allow(clippy::too_many_arguments)]
        fn walk(
            k: usize,
            left: u32,
            lo: &[u32],
            hi: &[u32],
            min_tail: &[u32],
            max_tail: &[u32],
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if k == lo.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for v in lo[k]..=hi[k] {
                if v > left {
                    break;
                }
                let rest = left - v;
                if rest < min_tail[k + 1] || rest > max_tail[k + 1] {
                    continue;
                }
                cur[k] = v;
                walk(k + 1, rest, lo, hi, min_tail, max_tail, cur, out);
            }
        }
        if min_tail[0] <= sum && sum <= max_tail[0] {
            walk(0, sum, lo, hi, &min_tail, &max_tail, &mut cur, &mut out);
        }
        out
    }
}

impl<'a> IntoIterator for &'a LatticeSet {
    type Item = &'a Vec<u32>;
    type IntoIter = std::collections::btree_set::Iter<'a, Vec<u32>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}
