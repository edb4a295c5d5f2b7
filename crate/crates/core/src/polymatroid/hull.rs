//! Lattice points of a convex hull, decided with exact rational linear programming.
//!
//! Membership of `z` in `conv(S)` is the feasibility problem
//! `Σ λ_k x_k = z, Σ λ_k = 1, λ >= 0`. It is solved by a phase-one simplex
//! over `BigRational` with Bland's rule. Infeasibility yields a Farkas vector,
//! which is scaled to an integer cut `a·x <= b` valid on all of `S` and violated
//! by `z`. Cuts are cached and tried before any new LP is solved.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeSet;
use crate::poly::SparsePoly;

/// An inequality `normal·x <= bound` satisfied by every point of the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub normal: Vec<BigInt>,
    pub bound: BigInt,
}

impl Cut {
    pub fn value(&self, x: &[u32]) -> BigInt {
        self.normal.iter().zip(x).map(|(a, &v)| a * v).sum()
    }

    pub fn separates(&self, z: &[u32]) -> bool {
        self.value(z) > self.bound
    }

    /// True when the cut holds on all of `set` and cuts off `z`.
    pub fn certifies_outside(&self, set: &LatticeSet, z: &[u32]) -> bool {
        self.separates(z) && set.iter().all(|x| self.value(x) <= self.bound)
    }
}

/// Machine-word copy of a cut for the hot loop.
#[derive(Clone, Debug)]
struct SmallCut {
    normal: Vec<i64>,
    bound: i64,
}

impl SmallCut {
    fn from_cut(cut: &Cut) -> Option<Self> {
        Some(SmallCut {
            normal: cut.normal.iter().map(ToPrimitive::to_i64).collect::<Option<_>>()?,
            bound: cut.bound.to_i64()?,
        })
    }

    fn separates(&self, z: &[u32]) -> bool {
        let v: i128 = self
            .normal
            .iter()
            .zip(z)
            .map(|(&a, &x)| a as i128 * x as i128)
            .sum();
        v > self.bound as i128
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullMembership {
    /// Convex combination of set points reproducing the query point.
    Inside { combination: Vec<(Vec<u32>, BigRational)> },
    Outside { cut: Cut },
}

impl HullMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullMembership::Inside { .. })
    }

    /// Exact re-check of the certificate.
    pub fn verify(&self, set: &LatticeSet, z: &[u32]) -> bool {
        match self {
            HullMembership::Outside { cut } => cut.certifies_outside(set, z),
            HullMembership::Inside { combination } => {
                let total: BigRational = combination.iter().map(|(_, l)| l.clone()).sum();
                let mut acc = vec![BigRational::zero(); z.len()];
                for (x, l) in combination {
                    if !set.contains(x) || l.is_negative() {
                        return false;
                    }
                    for (a, &v) in acc.iter_mut().zip(x) {
                        *a += l * BigRational::from_integer(v.into());
                    }
                }
                total.is_one()
                    && acc
                        .iter()
                        .zip(z)
                        .all(|(a, &v)| *a == BigRational::from_integer(v.into()))
            }
        }
    }
}

/// Membership oracle for `conv(S)` with a growing cache of separating cuts.
pub struct HullOracle<'a> {
    set: &'a LatticeSet,
    points: Vec<&'a Vec<u32>>,
    /// coordinates on which some point of the set is nonzero
    active: Vec<usize>,
    cuts: Vec<(Cut, Option<SmallCut>)>,
    lp_solves: usize,
}

impl<'a> HullOracle<'a> {
    pub fn new(set: &'a LatticeSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let points: Vec<&Vec<u32>> = set.iter().collect();
        let active = (0..set.dim())
            .filter(|&k| points.iter().any(|x| x[k] != 0))
            .collect();
        Ok(Self {
            set,
            points,
            active,
            cuts: Vec::new(),
            lp_solves: 0,
        })
    }

    /// Number of simplex runs so far (including column-generation rounds).
    pub fn lp_solves(&self) -> usize {
        self.lp_solves
    }

    pub fn cached_cuts(&self) -> usize {
        self.cuts.len()
    }

    /// Cheap test: `Some(false)` if a cached cut or an inactive coordinate rules
    /// `z` out, `Some(true)` if `z` is a set point, `None` if undecided.
    fn quick(&mut self, z: &[u32]) -> Option<bool> {
        if self.set.contains(z) {
            return Some(true);
        }
        let hit = self.cuts.iter().position(|(cut, small)| match small {
            Some(s) => s.separates(z),
            None => cut.separates(z),
        });
        if let Some(k) = hit {
            self.cuts[..=k].rotate_right(1);
            return Some(false);
        }
        None
    }

    pub fn contains(&mut self, z: &[u32]) -> bool {
        match self.quick(z) {
            Some(answer) => answer,
            None => self.decide(z).is_inside(),
        }
    }

    /// Full decision with a certificate.
    pub fn membership(&mut self, z: &[u32]) -> HullMembership {
        assert_eq!(z.len(), self.set.dim(), "query dimension");
        if self.set.contains(z) {
            return HullMembership::Inside {
                combination: vec![(z.to_vec(), BigRational::one())],
            };
        }
        if let Some((cut, _)) = self
            .cuts
            .iter()
            .find(|(cut, _)| cut.separates(z))
        {
            return HullMembership::Outside { cut: cut.clone() };
        }
        self.decide(z)
    }

    fn decide(&mut self, z: &[u32]) -> HullMembership {
        // a nonzero coordinate where every set point vanishes
        if let Some(k) = (0..z.len()).find(|&k| z[k] != 0 && !self.active.contains(&k)) {
            let mut normal = vec![BigInt::zero(); z.len()];
            normal[k] = BigInt::one();
            return self.record(Cut {
                normal,
                bound: BigInt::zero(),
            });
        }

        let rows = self.active.len() + 1;
        let column = |x: &[u32]| -> Vec<BigRational> {
            self.active
                .iter()
                .map(|&k| BigRational::from_integer(x[k].into()))
                .chain(std::iter::once(BigRational::one()))
                .collect()
        };
        let rhs = column(z);

        // start from the points nearest to z in l1 distance
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        let dist = |x: &[u32]| -> u64 { x.iter().zip(z).map(|(&a, &b)| a.abs_diff(b) as u64).sum() };
        order.sort_by_key(|&k| (dist(self.points[k]), k));
        let batch = 2 * rows;
        let mut chosen: Vec<usize> = order.iter().copied().take(batch).collect();

        loop {
            let cols: Vec<Vec<BigRational>> = chosen.iter().map(|&k| column(self.points[k])).collect();
            self.lp_solves += 1;
            match phase_one(rows, &cols, &rhs) {
                PhaseOne::Feasible(lambda) => {
                    let combination: Vec<(Vec<u32>, BigRational)> = chosen
                        .iter()
                        .zip(lambda)
                        .filter(|(_, l)| !l.is_zero())
                        .map(|(&k, l)| (self.points[k].clone(), l))
                        .collect();
                    let out = HullMembership::Inside { combination };
                    debug_assert!(out.verify(self.set, z));
                    return out;
                }
                PhaseOne::Infeasible(y) => {
                    // y·(x, 1) <= 0 on the chosen columns and y·(z, 1) > 0
                    let violators = self.price(&y);
                    if violators.is_empty() {
                        return self.record(farkas_cut(&self.active, z.len(), &y, &self.points));
                    }
                    chosen.extend(violators.into_iter().take(batch));
                }
            }
        }
    }

    /// Set points with `y·(x, 1) > 0`, most violated first. `y` is scaled to
    /// integers first; the order is unchanged by a positive scale.
    fn price(&self, y: &[BigRational]) -> Vec<usize> {
        let lcm = y.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let scaled: Vec<BigInt> = y.iter().map(|v| (v * &lcm).to_integer()).collect();
        let (offset, weights) = scaled.split_last().expect("at least one row");
        let mut violators: Vec<(BigInt, usize)> = match scaled
            .iter()
            .map(ToPrimitive::to_i64)
            .collect::<Option<Vec<i64>>>()
        {
            Some(small) => {
                let (&offset, weights) = small.split_last().unwrap();
                self.points
                    .iter()
                    .enumerate()
                    .filter_map(|(k, x)| {
                        let v = self
                            .active
                            .iter()
                            .zip(weights)
                            .map(|(&c, &w)| w as i128 * x[c] as i128)
                            .sum::<i128>()
                            + offset as i128;
                        (v > 0).then(|| (BigInt::from(v), k))
                    })
                    .collect()
            }
            None => self
                .points
                .iter()
                .enumerate()
                .filter_map(|(k, x)| {
                    let v: BigInt = self
                        .active
                        .iter()
                        .zip(weights)
                        .map(|(&c, w)| w * x[c])
                        .sum::<BigInt>()
                        + offset;
                    v.is_positive().then_some((v, k))
                })
                .collect(),
        };
        violators.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        violators.into_iter().map(|(_, k)| k).collect()
    }

    fn record(&mut self, cut: Cut) -> HullMembership {
        let small = SmallCut::from_cut(&cut);
        self.cuts.insert(0, (cut.clone(), small));
        HullMembership::Outside { cut }
    }
}

/// Integer cut from a Farkas vector over the active coordinates.
fn farkas_cut(active: &[usize], dim: usize, y: &[BigRational], points: &[&Vec<u32>]) -> Cut {
    let lcm = y[..active.len()]
        .iter()
        .fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut normal = vec![BigInt::zero(); dim];
    for (slot, v) in active.iter().zip(y) {
        normal[*slot] = (v * BigRational::from_integer(lcm.clone())).to_integer();
    }
    let mut cut = Cut {
        normal,
        bound: BigInt::zero(),
    };
    cut.bound = points
        .iter()
        .map(|x| cut.value(x))
        .max()
        .expect("nonempty set");
    cut
}

enum PhaseOne {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

/// Feasibility of `A λ = b, λ >= 0` for `b >= 0` (columns of `A` given).
///
/// Returns a feasible `λ` or a vector `y` with `yᵀA <= 0` and `yᵀb > 0`.
fn phase_one(rows: usize, cols: &[Vec<BigRational>], b: &[BigRational]) -> PhaseOne {
    let n = cols.len();
    let width = n + rows;
    let mut tab: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.extend((0..rows).map(|a| if a == r { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut rhs: Vec<BigRational> = b.to_vec();
    let mut basis: Vec<usize> = (n..width).collect();
    let mut cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if j < n {
                -tab.iter().map(|row| row[j].clone()).sum::<BigRational>()
            } else {
                BigRational::zero()
            }
        })
        .collect();

    while let Some(enter) = cost.iter().position(Signed::is_negative) {
        let leave = (0..rows)
            .filter(|&r| tab[r][enter].is_positive())
            .min_by(|&r, &s| {
                let a = &rhs[r] / &tab[r][enter];
                let c = &rhs[s] / &tab[s][enter];
                match a.cmp(&c) {
                    Ordering::Equal => basis[r].cmp(&basis[s]),
                    other => other,
                }
            })
            .expect("phase one is bounded below");

        let pivot = tab[leave][enter].clone();
        for v in tab[leave].iter_mut() {
            *v /= &pivot;
        }
        rhs[leave] /= &pivot;
        let pivot_row = tab[leave].clone();
        let pivot_rhs = rhs[leave].clone();
        for r in 0..rows {
            if r == leave || tab[r][enter].is_zero() {
                continue;
            }
            let factor = tab[r][enter].clone();
            for (v, p) in tab[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            rhs[r] -= &factor * &pivot_rhs;
        }
        let factor = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
        basis[leave] = enter;
    }

    let residual: BigRational = (0..rows)
        .filter(|&r| basis[r] >= n)
        .map(|r| rhs[r].clone())
        .sum();
    if residual.is_zero() {
        let mut lambda = vec![BigRational::zero(); n];
        for r in 0..rows {
            if basis[r] < n {
                lambda[basis[r]] = rhs[r].clone();
            }
        }
        PhaseOne::Feasible(lambda)
    } else {
        let y = (0..rows).map(|r| BigRational::one() - &cost[n + r]).collect();
        PhaseOne::Infeasible(y)
    }
}

/// Candidate lattice points: the per-coordinate bounding box of the set,
/// sliced to coordinate sums attained by the set.
fn candidates(set: &LatticeSet) -> Vec<Vec<u32>> {
    let (lo, hi) = set.bounds().expect("nonempty");
    let sums: Vec<u32> = set.iter().map(|x| x.iter().sum()).collect();
    let (min, max) = (*sums.iter().min().unwrap(), *sums.iter().max().unwrap());
    (min..=max)
        .flat_map(|s| LatticeSet::box_slice(&lo, &hi, s))
        .collect()
}

/// All lattice points of `conv(S)`.
pub fn newton_lattice_points(set: &LatticeSet) -> Result<LatticeSet> {
    let mut oracle = HullOracle::new(set)?;
    let mut out = LatticeSet::new(set.dim());
    for z in candidates(set) {
        if oracle.contains(&z) {
            out.insert(z)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SnpVerdict {
    Snp,
    /// A hull lattice point outside the support, with a convex combination
    /// (`"num/den"` weights) of support points reproducing it.
    NotSnp {
        point: Vec<u32>,
        combination: Vec<(Vec<u32>, String)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnpReport {
    #[serde(flatten)]
    pub verdict: SnpVerdict,
    pub support_size: usize,
    pub candidates: usize,
    pub lp_solves: usize,
    pub cuts: usize,
}

impl SnpReport {
    pub fn is_snp(&self) -> bool {
        self.verdict == SnpVerdict::Snp
    }
}

/// Decides whether `supp(f)` is the full set of lattice points of `Newton(f)`.
pub fn snp_check(f: &SparsePoly) -> Result<SnpReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support = f.support();
    let mut oracle = HullOracle::new(&support)?;
    let cands = candidates(&support);
    let mut verdict = SnpVerdict::Snp;
    for z in &cands {
        if support.contains(z) || !oracle.contains(z) {
            continue;
        }
        if let HullMembership::Inside { combination } = oracle.membership(z) {
            verdict = SnpVerdict::NotSnp {
                point: z.clone(),
                combination: combination
                    .into_iter()
                    .map(|(x, l)| (x, l.to_string()))
                    .collect(),
            };
            break;
        }
    }
    Ok(SnpReport {
        verdict,
        support_size: support.len(),
        candidates: cands.len(),
        lp_solves: oracle.lp_solves(),
        cuts: oracle.cached_cuts(),
    })
}
