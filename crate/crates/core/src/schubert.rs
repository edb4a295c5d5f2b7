//! Double Schubert polynomials.
//!
//! Two independent constructions are provided: the divided-difference recursion
//! down from the longest permutation, and the sum over reduced pipe dreams.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::perm::{all_permutations, Permutation};
use crate::poly::SparsePoly;

/// `∏_{i+j<=p} (t_i - s_j)`, the polynomial of the longest permutation.
pub fn longest_product(p: usize) -> SparsePoly {
    let mut acc = SparsePoly::one(2 * p);
    for i in 1..p {
        for j in 1..=p - i {
            acc = &acc * &(&SparsePoly::t(p, i) - &SparsePoly::s(p, j));
        }
    }
    acc
}

/// Double Schubert polynomial via the canonical descent path.
pub fn double_schubert(perm: &Permutation) -> SparsePoly {
    double_schubert_along(perm, &perm.descent_path())
}

/// Applies `∂_{i_1}, ∂_{i_2}, …` to the longest-permutation polynomial. The
/// caller is responsible for `path` being a valid descent path to `perm`.
pub fn double_schubert_along(perm: &Permutation, path: &[usize]) -> SparsePoly {
    let p = perm.size();
    path.iter().fold(longest_product(p), |f, &i| {
        f.divided_difference(i).expect("descent index within range")
    })
}

/// `𝔖_π(t, 0)`.
pub fn ordinary_schubert(perm: &Permutation) -> SparsePoly {
    double_schubert(perm).substitute_s_zero()
}

/// A set of crosses inside the staircase `{(i, j) : i + j <= p}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PipeDream {
    p: usize,
    crosses: BTreeSet<(usize, usize)>,
}

impl PipeDream {
    pub fn new(p: usize, crosses: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let crosses: BTreeSet<_> = crosses.into_iter().collect();
        for &(i, j) in &crosses {
            assert!(i >= 1 && j >= 1 && i + j <= p, "cell ({i},{j}) outside staircase");
        }
        Self { p, crosses }
    }

    pub fn crosses(&self) -> &BTreeSet<(usize, usize)> {
        &self.crosses
    }

    pub fn len(&self) -> usize {
        self.crosses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crosses.is_empty()
    }

    /// Generator indices `i + j - 1` of the crosses, read row by row from the
    /// top and right to left within a row.
    pub fn reading_word(&self) -> Vec<usize> {
        staircase_reading_order(self.p)
            .filter(|c| self.crosses.contains(c))
            .map(|(i, j)| i + j - 1)
            .collect()
    }

    /// Left-multiplies the reading word onto the identity, `s_{a_k} ⋯ s_{a_1}`.
    /// Returns `None` if some step fails to raise the length.
    pub fn reduced_product(&self) -> Option<Permutation> {
        let mut w = Permutation::identity(self.p);
        for k in self.reading_word() {
            if w.has_left_descent(k) {
                return None;
            }
            w = w.left_multiply_transposition(k).unwrap();
        }
        Some(w)
    }

    /// `∏_{(i,j) ∈ D} (t_i - s_j)`.
    pub fn weight(&self) -> SparsePoly {
        self.crosses.iter().fold(SparsePoly::one(2 * self.p), |acc, &(i, j)| {
            &acc * &(&SparsePoly::t(self.p, i) - &SparsePoly::s(self.p, j))
        })
    }
}

impl fmt::Debug for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.crosses).finish()
    }
}

/// Staircase cells in reading order.
fn staircase_reading_order(p: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..p).flat_map(move |i| (1..=p - i).rev().map(move |j| (i, j)))
}

/// All reduced pipe dreams of `perm`, sorted.
///
/// Depth-first over the staircase cells in reading order; a branch is cut as
/// soon as its partial word stops being reduced or too few cells remain.
pub fn enumerate_pipe_dreams(perm: &Permutation) -> Vec<PipeDream> {
    let p = perm.size();
    let cells: Vec<(usize, usize)> = staircase_reading_order(p).collect();
    let need = perm.length();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(need);

    fn walk(
        k: usize,
        cells: &[(usize, usize)],
        need: usize,
        w: &Permutation,
        target: &Permutation,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<PipeDream>,
    ) {
        if chosen.len() == need {
            if w == target {
                out.push(PipeDream::new(target.size(), chosen.iter().copied()));
            }
            return;
        }
        if cells.len() - k < need - chosen.len() {
            return;
        }
        let (i, j) = cells[k];
        let gen = i + j - 1;
        if !w.has_left_descent(gen) {
            let next = w.left_multiply_transposition(gen).unwrap();
            chosen.push((i, j));
            walk(k + 1, cells, need, &next, target, chosen, out);
            chosen.pop();
        }
        walk(k + 1, cells, need, w, target, chosen, out);
    }

    walk(
        0,
        &cells,
        need,
        &Permutation::identity(p),
        perm,
        &mut chosen,
        &mut out,
    );
    out.sort();
    out
}

/// Sum of pipe-dream weights over the reduced pipe dreams of `perm`.
pub fn pipe_dream_polynomial(perm: &Permutation) -> SparsePoly {
    pipe_dream_sum(perm.size(), &enumerate_pipe_dreams(perm))
}

pub fn pipe_dream_sum(p: usize, dreams: &[PipeDream]) -> SparsePoly {
    dreams
        .iter()
        .fold(SparsePoly::zero(2 * p), |acc, d| &acc + &d.weight())
}

/// Memoized double Schubert polynomials for a whole symmetric group, produced
/// one length level at a time from the top down.
///
/// Each polynomial is derived from a cached parent one level up: for `π` the
/// parent is `s_i·π` with `i` the smallest index raising the length, and
/// `𝔖_π = ∂_i 𝔖_{s_i·π}`. Only two levels are held in memory at once.
pub struct LevelSweep {
    by_length: Vec<Vec<Permutation>>,
    current: HashMap<Permutation, Arc<SparsePoly>>,
    next_length: Option<usize>,
}

impl LevelSweep {
    pub fn new(p: usize) -> Self {
        let top = p * (p - 1) / 2;
        let mut by_length = vec![Vec::new(); top + 1];
        for q in all_permutations(p) {
            by_length[q.length()].push(q);
        }
        Self {
            by_length,
            current: HashMap::new(),
            next_length: Some(top),
        }
    }
}

impl Iterator for LevelSweep {
    /// Permutations of one length, in lexicographic order, with their polynomials.
    type Item = Vec<(Permutation, Arc<SparsePoly>)>;

    fn next(&mut self) -> Option<Self::Item> {
        let len = self.next_length?;
        let perms = std::mem::take(&mut self.by_length[len]);
        let level: Vec<(Permutation, Arc<SparsePoly>)> = if self.current.is_empty() {
            perms
                .into_iter()
                .map(|q| {
                    let f = Arc::new(longest_product(q.size()));
                    (q, f)
                })
                .collect()
        } else {
            let parents = &self.current;
            perms
                .into_par_iter()
                .map(|q| {
                    let i = (1..q.size())
                        .find(|&i| !q.has_left_descent(i))
                        .expect("non-maximal permutation has an ascent");
                    let parent = q.left_multiply_transposition(i).unwrap();
                    let f = parents[&parent].divided_difference(i).unwrap();
                    (q, Arc::new(f))
                })
                .collect()
        };
        self.current = level.iter().cloned().collect();
        self.next_length = len.checked_sub(1);
        Some(level)
    }
}

/// Every double Schubert polynomial of `S_p`, keyed by permutation.
pub fn schubert_table(p: usize) -> HashMap<Permutation, Arc<SparsePoly>> {
    LevelSweep::new(p).flatten().collect()
}
