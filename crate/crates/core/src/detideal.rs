//! Schubert determinantal ideals, the `x ↦ wz` standardization, and the
//! inequality description of double Schubert supports.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::LatticeSet;
use crate::perm::{Permutation, RankMatrix};
use crate::polymatroid::{subset_members, subset_sums, support_minima};
use crate::poly::{SparsePoly, VarNames};
use crate::schubert::double_schubert;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum World {
    /// `x_{i,j}`, `p²` variables, row-major.
    X,
    /// `w_{i,j}` then `z_{i,j}`, `2p²` variables.
    WZ,
}

impl World {
    fn name(self) -> &'static str {
        match self {
            World::X => "x",
            World::WZ => "wz",
        }
    }

    fn names(self) -> VarNames {
        match self {
            World::X => VarNames::Matrix,
            World::WZ => VarNames::Standardized,
        }
    }

    fn nvars(self, p: usize) -> usize {
        match self {
            World::X => p * p,
            World::WZ => 2 * p * p,
        }
    }
}

/// A polynomial in the entries of a generic `p × p` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPoly {
    p: usize,
    world: World,
    poly: SparsePoly,
}

impl MatrixPoly {
    pub fn new(p: usize, world: World, poly: SparsePoly) -> Self {
        assert_eq!(poly.nvars(), world.nvars(p));
        Self { p, world, poly }
    }

    /// The entry `x_{i,j}` (1-based).
    pub fn entry(p: usize, i: usize, j: usize) -> Self {
        Self::new(p, World::X, SparsePoly::var(p * p, (i - 1) * p + (j - 1)))
    }

    pub fn world(&self) -> World {
        self.world
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn to_json(&self) -> Value {
        json!(self.poly.to_json_terms())
    }
}

impl std::fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly.display(self.world.names()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    p: usize,
    world: World,
    generators: Vec<MatrixPoly>,
}

impl IdealPresentation {
    pub fn world(&self) -> World {
        self.world
    }

    pub fn generators(&self) -> &[MatrixPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// JSON list of generators in the term serialization.
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "world": self.world,
            "generators": self.generators.iter().map(MatrixPoly::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Rank conditions defining the ideal of `perm`.
///
/// The matrix has its ones at `(π(j), j)`, so this is the rank matrix of
/// `π⁻¹`. With that orientation the multidegree of the ideal is the double
/// Schubert polynomial produced by the left-acting recursion in this crate.
pub fn ideal_rank_matrix(perm: &Permutation) -> RankMatrix {
    perm.inverse().rank_matrix()
}

/// Determinant of the submatrix of `X` on `rows × cols`, by Leibniz expansion.
pub fn minor(p: usize, rows: &[usize], cols: &[usize]) -> SparsePoly {
    assert_eq!(rows.len(), cols.len());
    let k = rows.len();
    let nvars = p * p;
    let terms = (0..k).permutations(k).map(|sigma| {
        let mut exp = vec![0u8; nvars];
        for (a, &b) in sigma.iter().enumerate() {
            exp[(rows[a] - 1) * p + (cols[b] - 1)] += 1;
        }
        let inversions = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| sigma[a] > sigma[b])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        (exp, BigInt::from(sign))
    });
    SparsePoly::from_terms(nvars, terms)
}

/// All minors of size `1 + rank(π_{m×n})` of every top-left corner `X_{m×n}`,
/// deduplicated, ordered by size and then by row and column sets.
pub fn schubert_determinantal_generators(perm: &Permutation) -> IdealPresentation {
    let p = perm.size();
    let rank = ideal_rank_matrix(perm);
    let mut by_key: BTreeMap<(usize, Vec<usize>, Vec<usize>), SparsePoly> = BTreeMap::new();
    for m in 1..=p {
        for n in 1..=p {
            let k = 1 + rank.get(m, n);
            if k > m.min(n) {
                continue;
            }
            for rows in (1..=m).combinations(k) {
                for cols in (1..=n).combinations(k) {
                    by_key
                        .entry((k, rows.clone(), cols))
                        .or_insert_with_key(|(_, r, c)| minor(p, r, c));
                }
            }
        }
    }
    let mut generators: Vec<MatrixPoly> = Vec::with_capacity(by_key.len());
    for poly in by_key.into_values() {
        if poly.is_zero() || generators.iter().any(|g| g.poly == poly) {
            continue;
        }
        generators.push(MatrixPoly::new(p, World::X, poly));
    }
    IdealPresentation {
        p,
        world: World::X,
        generators,
    }
}

/// `x_{i,j} ↦ w_{i,j} z_{i,j}` on every generator.
pub fn standardize(ideal: &IdealPresentation) -> Result<IdealPresentation> {
    if ideal.world != World::X {
        return Err(Error::WrongWorld {
            expected: World::X.name(),
            found: ideal.world.name(),
        });
    }
    let p = ideal.p;
    let cells = p * p;
    let generators = ideal
        .generators
        .iter()
        .map(|g| {
            let poly = g.poly.map_exponents(2 * cells, |e| {
                let mut out = Vec::with_capacity(2 * cells);
                out.extend_from_slice(e);
                out.extend_from_slice(e);
                out
            });
            MatrixPoly::new(p, World::WZ, poly)
        })
        .collect();
    Ok(IdealPresentation {
        p,
        world: World::WZ,
        generators,
    })
}

/// Whether `x_{i,j}` itself lies in the ideal of `perm`: some corner `(m, n)`
/// dominating `(i, j)` has rank zero, forcing its `1 × 1` minors to vanish.
pub fn contains_variable(perm: &Permutation, i: usize, j: usize) -> bool {
    let p = perm.size();
    let rank = ideal_rank_matrix(perm);
    (i..=p).any(|m| (j..=p).any(|n| rank.get(m, n) == 0))
}

/// Cells `(i, j)` whose variable is a generator of the ideal.
pub fn fixed_variable_cells(perm: &Permutation) -> Vec<(usize, usize)> {
    let p = perm.size();
    (1..=p)
        .flat_map(|i| (1..=p).map(move |j| (i, j)))
        .filter(|&(i, j)| contains_variable(perm, i, j))
        .collect()
}

/// `(t_i + s_j)` divides `negate_s(𝔖_π)` for every variable generator `x_{i,j}`.
/// Returns the first cell where exact division fails.
pub fn check_fixed_variable_factors(perm: &Permutation, f: &SparsePoly) -> std::result::Result<(), (usize, usize)> {
    let p = perm.size();
    let mut g = f.negate_s();
    for (i, j) in fixed_variable_cells(perm) {
        g = g.div_binomial(i - 1, p + j - 1, true).ok_or((i, j))?;
    }
    Ok(())
}

fn subset_mask(p: usize, rows: &[usize], cols: &[usize]) -> Result<u32> {
    let mut mask = 0u32;
    for &j in rows {
        if j == 0 || j > p {
            return Err(Error::IndexOutOfRange { index: j, max: p });
        }
        mask |= 1 << (j - 1);
    }
    for &j in cols {
        if j == 0 || j > p {
            return Err(Error::IndexOutOfRange { index: j, max: p });
        }
        mask |= 1 << (p + j - 1);
    }
    Ok(mask)
}

/// `min_{(r,c) ∈ S} Σ_{j∈J1} r_j + Σ_{j∈J2} c_j`, with `r` the first `p`
/// coordinates of `S ⊂ N^{2p}` and `c` the last `p`.
pub fn contraction_min(set: &LatticeSet, rows: &[usize], cols: &[usize]) -> Result<u32> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let p = set.dim() / 2;
    let mask = subset_mask(p, rows, cols)?;
    Ok(set
        .iter()
        .map(|x| (0..2 * p).filter(|k| mask >> k & 1 == 1).map(|k| x[k]).sum::<u32>())
        .min()
        .expect("nonempty"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IneqVerdict {
    Pass,
    /// A support point violating an inequality (`violated` = `(J1, J2)`), or
    /// a non-support point satisfying all of them (`violated` absent).
    Fail {
        point: Vec<u32>,
        in_support: bool,
        violated: Option<(Vec<usize>, Vec<usize>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IneqReport {
    #[serde(flatten)]
    pub verdict: IneqVerdict,
    pub candidates: usize,
    pub inequalities: usize,
}

impl IneqReport {
    pub fn passed(&self) -> bool {
        self.verdict == IneqVerdict::Pass
    }
}

/// Checks that the support of `𝔖_π` is exactly the set of `(r, c) ∈ N^{2p}`
/// with `Σ r + Σ c = ℓ(π)` and `Σ_{J1} r + Σ_{J2} c >= contraction_min(J1, J2)`
/// for every pair `J1, J2 ⊆ [p]`.
pub fn verify_ineq_description(perm: &Permutation) -> IneqReport {
    verify_ineq_description_of(perm, &double_schubert(perm))
}

/// As [`verify_ineq_description`], for a precomputed `𝔖_π`.
pub fn verify_ineq_description_of(perm: &Permutation, f: &SparsePoly) -> IneqReport {
    let p = perm.size();
    let support = f.support();
    let minima = support_minima(&support).expect("Schubert polynomials are nonzero");
    let split = |mask: u32| {
        let members = subset_members(mask);
        let rows = members.iter().filter(|&&k| k <= p).copied().collect();
        let cols = members.iter().filter(|&&k| k > p).map(|k| k - p).collect();
        (rows, cols)
    };
    // Support points satisfy every inequality since the constants are minima
    // over the support; the full-sum equality pins the degree.
    if let Some(x) = support.iter().find(|x| x.iter().sum::<u32>() as usize != perm.length()) {
        return IneqReport {
            verdict: IneqVerdict::Fail {
                point: x.clone(),
                in_support: true,
                violated: Some(split(((1u64 << (2 * p)) - 1) as u32)),
            },
            candidates: 0,
            inequalities: minima.len(),
        };
    }

    let (lo, hi) = support.bounds().expect("nonempty");
    let candidates = LatticeSet::box_slice(&lo, &hi, perm.length() as u32);
    // recently violated masks first
    let mut hot: Vec<u32> = Vec::new();
    for z in &candidates {
        if support.contains(z) {
            continue;
        }
        let sums = subset_sums(z);
        let cut = |m: u32| sums[m as usize] < minima[m as usize];
        if let Some(k) = hot.iter().position(|&m| cut(m)) {
            hot[..=k].rotate_right(1);
            continue;
        }
        match (0..minima.len() as u32).find(|&m| cut(m)) {
            Some(m) => hot.insert(0, m),
            None => {
                return IneqReport {
                    verdict: IneqVerdict::Fail {
                        point: z.clone(),
                        in_support: false,
                        violated: None,
                    },
                    candidates: candidates.len(),
                    inequalities: minima.len(),
                }
            }
        }
    }
    IneqReport {
        verdict: IneqVerdict::Pass,
        candidates: candidates.len(),
        inequalities: minima.len(),
    }
}
