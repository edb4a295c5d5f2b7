//! Permutations of `[p]` in one-line notation.
//!
//! Values are 1-based throughout, matching the usual notation `π = (π(1), …, π(p))`.
//! The transposition `s_i` acts on the left, so `s_i·π` swaps the *values* `i` and
//! `i + 1` in the one-line word.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `[p]`, stored in one-line notation with its length cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
    length: usize,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let p = word.len();
        if p == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; p + 1];
        for &v in &word {
            if v == 0 || v > p {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={p}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Self::from_word_unchecked(word))
    }

    fn from_word_unchecked(word: Vec<usize>) -> Self {
        let length = inversions(&word);
        Self { word, length }
    }

    pub fn identity(p: usize) -> Self {
        assert!(p >= 1, "permutations need p >= 1");
        Self::from_word_unchecked((1..=p).collect())
    }

    /// The longest element `(p, p-1, …, 1)`.
    pub fn longest(p: usize) -> Self {
        assert!(p >= 1, "permutations need p >= 1");
        Self::from_word_unchecked((1..=p).rev().collect())
    }

    /// Group size `p`.
    pub fn size(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `π(i)` for `1 <= i <= p`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    /// Coxeter length, equal to the number of inversions.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self::from_word_unchecked(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let word = other.word.iter().map(|&v| self.word[v - 1]).collect();
        Ok(Self::from_word_unchecked(word))
    }

    /// `s_i·π`: swaps the values `i` and `i + 1` in the one-line word.
    pub fn left_multiply_transposition(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let word = self
            .word
            .iter()
            .map(|&v| match v {
                v if v == i => i + 1,
                v if v == i + 1 => i,
                v => v,
            })
            .collect();
        Ok(Self::from_word_unchecked(word))
    }

    /// `π·s_i`: swaps the entries in positions `i` and `i + 1`.
    pub fn right_multiply_transposition(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Ok(Self::from_word_unchecked(word))
    }

    /// True when `ℓ(s_i·π) < ℓ(π)`, i.e. the value `i + 1` sits left of `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        if i == 0 || i >= self.size() {
            return false;
        }
        let pos = |v: usize| self.word.iter().position(|&x| x == v).unwrap();
        pos(i + 1) < pos(i)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.size().saturating_sub(1),
            });
        }
        Ok(())
    }

    /// Indices `i` that take `current` one step down towards `target` in left
    /// weak order: `ℓ(s_i·current) = ℓ(current) - 1` and `target` stays reachable.
    pub fn admissible_descents(current: &Permutation, target: &Permutation) -> Vec<usize> {
        let gap = current
            .compose(&target.inverse())
            .expect("permutations of equal size");
        (1..current.size())
            .filter(|&i| gap.has_left_descent(i) && current.has_left_descent(i))
            .collect()
    }

    /// Indices `(i_1, …, i_k)` with `π = s_{i_k} ⋯ s_{i_1}·π0`, each step lowering
    /// the length by one. The smallest admissible index is taken at every step.
    pub fn descent_path(&self) -> Vec<usize> {
        self.descent_path_by(|choices| choices[0])
    }

    /// Like [`Permutation::descent_path`], with `choose` picking among the
    /// admissible indices (it receives them sorted and must return one of them).
    pub fn descent_path_by(&self, mut choose: impl FnMut(&[usize]) -> usize) -> Vec<usize> {
        let p = self.size();
        let mut current = Permutation::longest(p);
        let mut path = Vec::with_capacity(current.length() - self.length());
        while current.length() > self.length() {
            let choices = Permutation::admissible_descents(&current, self);
            assert!(!choices.is_empty(), "no admissible descent from {current}");
            let i = choose(&choices);
            assert!(choices.contains(&i), "chosen index {i} is not admissible");
            let next = current.left_multiply_transposition(i).unwrap();
            assert_eq!(next.length() + 1, current.length());
            path.push(i);
            current = next;
        }
        assert_eq!(&current, self, "descent path did not reach the target");
        path
    }

    pub fn rank_matrix(&self) -> RankMatrix {
        RankMatrix::of(self)
    }
}

fn inversions(word: &[usize]) -> usize {
    word.iter()
        .enumerate()
        .map(|(i, &a)| word[i + 1..].iter().filter(|&&b| a > b).count())
        .sum()
}

/// All permutations of `[p]`, in lexicographic order of their one-line words.
pub fn all_permutations(p: usize) -> impl Iterator<Item = Permutation> {
    (1..=p)
        .permutations(p)
        .map(Permutation::from_word_unchecked)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.word.iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.word.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"2,3,1"`, `"(2,3,1)"`, `"2 3 1"` and, when every value is a
    /// single digit, the compact form `"231"`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if trimmed.is_empty() {
            return Err(Error::InvalidPermutation(format!("cannot parse {s:?}")));
        }
        let bad = || Error::InvalidPermutation(format!("cannot parse {s:?}"));
        let word: Vec<usize> = if trimmed.contains([',', ' ']) {
            trimmed
                .split([',', ' '])
                .filter(|tok| !tok.is_empty())
                .map(|tok| tok.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            if trimmed.len() > 9 {
                return Err(Error::InvalidPermutation(format!(
                    "compact form only supports p <= 9, got {s:?}"
                )));
            }
            trimmed
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

/// `r[m][n] = rank(π_{m×n})`, the number of ones of the permutation matrix
/// (ones at `(i, π(i))`) inside the top-left `m × n` corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMatrix {
    p: usize,
    entries: Vec<usize>,
}

impl RankMatrix {
    pub fn of(perm: &Permutation) -> Self {
        let p = perm.size();
        let mut entries = vec![0; p * p];
        for m in 1..=p {
            for n in 1..=p {
                let above = if m > 1 { entries[(m - 2) * p + (n - 1)] } else { 0 };
                let hit = usize::from(perm.apply(m) <= n);
                entries[(m - 1) * p + (n - 1)] = above + hit;
            }
        }
        Self { p, entries }
    }

    pub fn size(&self) -> usize {
        self.p
    }

    /// Entry for `0 <= m, n <= p`; row and column zero are identically zero.
    pub fn get(&self, m: usize, n: usize) -> usize {
        if m == 0 || n == 0 {
            0
        } else {
            self.entries[(m - 1) * self.p + (n - 1)]
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.p).map(<[usize]>::to_vec).collect()
    }
}
