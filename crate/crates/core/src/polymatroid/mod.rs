//! Discrete polymatroid certificates and Newton polytope saturation.
//!
//! Subsets of `[n]` are bitmasks: bit `k` stands for coordinate `k + 1`.

mod hull;

pub use hull::{newton_lattice_points, snp_check, Cut, HullMembership, HullOracle, SnpReport, SnpVerdict};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::LatticeSet;

/// Coordinates (1-based) of a subset bitmask.
pub fn subset_members(mask: u32) -> Vec<usize> {
    (0..32).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

/// A set function on the subsets of `[n]`, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFn {
    n: usize,
    values: Vec<u32>,
}

impl RankFn {
    pub fn from_values(n: usize, values: Vec<u32>) -> Result<Self> {
        if n > 24 {
            return Err(Error::DimensionMismatch { left: 24, right: n });
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: 1 << n,
                right: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Self {
        Self {
            n,
            values: (0..1u32 << n).map(f).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn get(&self, mask: u32) -> u32 {
        self.values[mask as usize]
    }

    /// `r(J)` for a subset given by 1-based coordinates.
    pub fn value_of(&self, subset: &[usize]) -> u32 {
        self.get(subset.iter().fold(0, |m, &k| m | 1 << (k - 1)))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.values
                .iter()
                .enumerate()
                .map(|(mask, v)| json!({"subset": subset_members(mask as u32), "value": v}))
                .collect(),
        )
    }

    /// Whether `x` satisfies `Σ_J x <= r(J)` for every proper `J` and
    /// `Σ x = r([n])`. On failure returns the offending subset.
    pub fn check_point(&self, x: &[u32]) -> std::result::Result<(), u32> {
        let sums = subset_sums(x);
        let full = self.full();
        if sums[full as usize] != self.get(full) {
            return Err(full);
        }
        match (0..full).find(|&m| sums[m as usize] > self.get(m)) {
            Some(m) => Err(m),
            None => Ok(()),
        }
    }
}

/// `Σ_{j∈J} x_j` for every bitmask `J`.
pub fn subset_sums(x: &[u32]) -> Vec<u32> {
    let n = x.len();
    let mut sums = vec![0u32; 1 << n];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + x[low];
    }
    sums
}

/// `r(J) = max_{x ∈ S} Σ_{j∈J} x_j`.
pub fn support_rank(set: &LatticeSet) -> Result<RankFn> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = set.dim();
    let mut values = vec![0u32; 1 << n];
    for x in set {
        for (slot, s) in values.iter_mut().zip(subset_sums(x)) {
            *slot = (*slot).max(s);
        }
    }
    RankFn::from_values(n, values)
}

/// `min_{x ∈ S} Σ_{j∈J} x_j` for every bitmask `J`.
pub fn support_minima(set: &LatticeSet) -> Result<Vec<u32>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut values = vec![u32::MAX; 1 << set.dim()];
    for x in set {
        for (slot, s) in values.iter_mut().zip(subset_sums(x)) {
            *slot = (*slot).min(s);
        }
    }
    Ok(values)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum RankViolation {
    /// `r(∅) != 0`.
    Normalization { value: u32 },
    /// `smaller ⊆ larger` but `r(smaller) > r(larger)`.
    Monotonicity { smaller: Vec<usize>, larger: Vec<usize> },
    /// `r(J1 ∩ J2) + r(J1 ∪ J2) > r(J1) + r(J2)`.
    Submodularity { first: Vec<usize>, second: Vec<usize> },
}

impl RankViolation {
    /// Re-evaluates the witness against `r`.
    pub fn holds_for(&self, r: &RankFn) -> bool {
        let mask = |s: &[usize]| s.iter().fold(0u32, |m, &k| m | 1 << (k - 1));
        match self {
            RankViolation::Normalization { .. } => r.get(0) != 0,
            RankViolation::Monotonicity { smaller, larger } => {
                let (a, b) = (mask(smaller), mask(larger));
                a & b == a && r.get(a) > r.get(b)
            }
            RankViolation::Submodularity { first, second } => {
                let (a, b) = (mask(first), mask(second));
                r.get(a & b) + r.get(a | b) > r.get(a) + r.get(b)
            }
        }
    }
}

/// Checks normalization, monotonicity and submodularity exhaustively and
/// reports the first violation found.
///
/// Monotonicity is checked along single-element extensions, which implies it
/// for every nested pair; submodularity is checked over every unordered pair.
pub fn check_rank_axioms(r: &RankFn) -> std::result::Result<(), RankViolation> {
    if r.get(0) != 0 {
        return Err(RankViolation::Normalization { value: r.get(0) });
    }
    let size = 1u32 << r.n;
    for mask in 0..size {
        for k in 0..r.n {
            let bigger = mask | 1 << k;
            if bigger != mask && r.get(mask) > r.get(bigger) {
                return Err(RankViolation::Monotonicity {
                    smaller: subset_members(mask),
                    larger: subset_members(bigger),
                });
            }
        }
    }
    let v = &r.values;
    for a in 0..size {
        let ra = v[a as usize];
        for b in a + 1..size {
            if v[(a & b) as usize] + v[(a | b) as usize] > ra + v[b as usize] {
                return Err(RankViolation::Submodularity {
                    first: subset_members(a),
                    second: subset_members(b),
                });
            }
        }
    }
    Ok(())
}

/// Lattice points of the base polytope `{x : Σ_J x <= r(J), Σ x = r([n])}`.
///
/// Backtracking over coordinates in order. A partial assignment on the prefix
/// `P` is kept only while `r([n]) - r([n] \ J) <= Σ_J x <= r(J)` for every
/// `J ⊆ P` containing the newest coordinate.
pub fn polymatroid_points(r: &RankFn) -> Result<LatticeSet> {
    check_rank_axioms(r).map_err(|v| Error::RankAxiomsNotVerified(format!("{v:?}")))?;
    let mut out = LatticeSet::new(r.n);
    for_each_base_point(r, |x| {
        out.insert(x.to_vec()).expect("dimension");
        true
    });
    Ok(out)
}

/// Calls `visit` on every base point in lexicographic order until it returns false.
fn for_each_base_point(r: &RankFn, mut visit: impl FnMut(&[u32]) -> bool) {
    let n = r.n;
    if n == 0 {
        visit(&[]);
        return;
    }
    let full = r.full();
    let total = r.get(full);
    let mut x = vec![0u32; n];
    let mut sums = vec![0u32; 1 << n];

    fn walk(
        k: usize,
        r: &RankFn,
        full: u32,
        total: u32,
        x: &mut Vec<u32>,
        sums: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if k == r.n {
            return visit(x);
        }
        let bit = 1u32 << k;
        'values: for v in 0..=r.get(bit) {
            x[k] = v;
            // subsets of {0..k} containing k
            for low in 0..bit {
                let mask = low | bit;
                let s = sums[low as usize] + v;
                if s > r.get(mask) {
                    // larger v only makes this worse
                    break 'values;
                }
                if s + r.get(full & !mask) < total {
                    continue 'values;
                }
                sums[mask as usize] = s;
            }
            if !walk(k + 1, r, full, total, x, sums, visit) {
                return false;
            }
        }
        true
    }

    walk(0, r, full, total, &mut x, &mut sums, &mut visit);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolymatroidWitness {
    EmptySet,
    /// Two points with different coordinate sums.
    SumMismatch { first: Vec<u32>, second: Vec<u32> },
    RankAxiom { violation: RankViolation },
    /// A lattice point satisfying every inequality that is not in the set.
    MissingPoint { point: Vec<u32> },
    /// A set point violating the inequality of `subset`.
    ViolatingPoint { point: Vec<u32>, subset: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolymatroidCertificate {
    Is { rank: RankFn },
    IsNot { rank: Option<RankFn>, witness: PolymatroidWitness },
}

impl PolymatroidCertificate {
    pub fn is_polymatroid(&self) -> bool {
        matches!(self, PolymatroidCertificate::Is { .. })
    }

    pub fn witness(&self) -> Option<&PolymatroidWitness> {
        match self {
            PolymatroidCertificate::Is { .. } => None,
            PolymatroidCertificate::IsNot { witness, .. } => Some(witness),
        }
    }

    pub fn rank(&self) -> Option<&RankFn> {
        match self {
            PolymatroidCertificate::Is { rank } => Some(rank),
            PolymatroidCertificate::IsNot { rank, .. } => rank.as_ref(),
        }
    }

    /// Re-checks the certificate against `set` without trusting how it was produced.
    pub fn verify(&self, set: &LatticeSet) -> bool {
        match self {
            PolymatroidCertificate::Is { rank } => {
                check_rank_axioms(rank).is_ok()
                    && set.iter().all(|x| rank.check_point(x).is_ok())
                    && polymatroid_points(rank).map(|pts| pts == *set).unwrap_or(false)
            }
            PolymatroidCertificate::IsNot { rank, witness } => match witness {
                PolymatroidWitness::EmptySet => set.is_empty(),
                PolymatroidWitness::SumMismatch { first, second } => {
                    set.contains(first)
                        && set.contains(second)
                        && first.iter().sum::<u32>() != second.iter().sum::<u32>()
                }
                PolymatroidWitness::RankAxiom { violation } => rank
                    .as_ref()
                    .is_some_and(|r| *r == support_rank(set).unwrap() && violation.holds_for(r)),
                PolymatroidWitness::MissingPoint { point } => {
                    !set.contains(point)
                        && rank.as_ref().is_some_and(|r| {
                            check_rank_axioms(r).is_ok()
                                && set.iter().all(|x| r.check_point(x).is_ok())
                                && r.check_point(point).is_ok()
                        })
                }
                PolymatroidWitness::ViolatingPoint { point, subset } => {
                    set.contains(point)
                        && rank.as_ref().is_some_and(|r| {
                            let mask = subset.iter().fold(0u32, |m, &k| m | 1 << (k - 1));
                            let s: u32 = subset.iter().map(|&k| point[k - 1]).sum();
                            if mask == r.full() {
                                s != r.get(mask)
                            } else {
                                s > r.get(mask)
                            }
                        })
                }
            },
        }
    }

    /// `{"verdict", "rank", "witness"}`.
    pub fn to_json(&self) -> Value {
        let verdict = if self.is_polymatroid() { "is" } else { "is-not" };
        let mut obj = json!({"verdict": verdict});
        if let Some(r) = self.rank() {
            obj["rank"] = r.to_json();
        }
        if let Some(w) = self.witness() {
            obj["witness"] = serde_json::to_value(w).expect("witness serializes");
        }
        obj
    }
}

/// Decides whether `set` equals the base set of the polymatroid with rank `r`.
pub fn certify_against(set: &LatticeSet, r: &RankFn) -> PolymatroidCertificate {
    if let Err(violation) = check_rank_axioms(r) {
        return PolymatroidCertificate::IsNot {
            rank: Some(r.clone()),
            witness: PolymatroidWitness::RankAxiom { violation },
        };
    }
    for x in set {
        if let Err(mask) = r.check_point(x) {
            return PolymatroidCertificate::IsNot {
                rank: Some(r.clone()),
                witness: PolymatroidWitness::ViolatingPoint {
                    point: x.clone(),
                    subset: subset_members(mask),
                },
            };
        }
    }
    // every set point is a base point, so only a missing base point can differ
    let mut missing = None;
    for_each_base_point(r, |x| {
        if set.contains(x) {
            true
        } else {
            missing = Some(x.to_vec());
            false
        }
    });
    match missing {
        None => PolymatroidCertificate::Is { rank: r.clone() },
        Some(point) => PolymatroidCertificate::IsNot {
            rank: Some(r.clone()),
            witness: PolymatroidWitness::MissingPoint { point },
        },
    }
}

/// Certifies whether `set` is the base set of a discrete polymatroid, using
/// the rank function read off the set itself.
pub fn is_discrete_polymatroid(set: &LatticeSet) -> PolymatroidCertificate {
    if set.is_empty() {
        return PolymatroidCertificate::IsNot {
            rank: None,
            witness: PolymatroidWitness::EmptySet,
        };
    }
    if let Some((first, second)) = set.sum_mismatch() {
        return PolymatroidCertificate::IsNot {
            rank: None,
            witness: PolymatroidWitness::SumMismatch { first, second },
        };
    }
    let r = support_rank(set).expect("nonempty");
    certify_against(set, &r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ExchangeVerdict {
    Is,
    /// No `j` with `x_j < y_j` has `x - e_i + e_j` in the set (`i` is 1-based).
    IsNot { x: Vec<u32>, y: Vec<u32>, i: usize },
    SumMismatch { first: Vec<u32>, second: Vec<u32> },
    Empty,
}

impl ExchangeVerdict {
    pub fn is_polymatroid(&self) -> bool {
        matches!(self, ExchangeVerdict::Is)
    }
}

/// The exchange characterization: for all `x, y` in the set and every `i` with
/// `x_i > y_i` there is `j` with `x_j < y_j` and `x - e_i + e_j` in the set.
pub fn exchange_check(set: &LatticeSet) -> ExchangeVerdict {
    if set.is_empty() {
        return ExchangeVerdict::Empty;
    }
    if let Some((first, second)) = set.sum_mismatch() {
        return ExchangeVerdict::SumMismatch { first, second };
    }
    let n = set.dim();
    let mut probe = vec![0u32; n];
    for x in set.iter().rev() {
        for y in set {
            for i in 0..n {
                if x[i] <= y[i] {
                    continue;
                }
                let found = (0..n).filter(|&j| x[j] < y[j]).any(|j| {
                    probe.copy_from_slice(x);
                    probe[i] -= 1;
                    probe[j] += 1;
                    set.contains(&probe)
                });
                if !found {
                    return ExchangeVerdict::IsNot {
                        x: x.clone(),
                        y: y.clone(),
                        i: i + 1,
                    };
                }
            }
        }
    }
    ExchangeVerdict::Is
}

/// Reads a rank table from JSON of the form produced by [`RankFn::to_json`].
pub fn rank_from_json(n: usize, value: &Value) -> Result<RankFn> {
    let bad = || Error::InvalidConfig("malformed rank table".into());
    let mut values = vec![None; 1 << n];
    for entry in value.as_array().ok_or_else(bad)? {
        let subset = entry["subset"].as_array().ok_or_else(bad)?;
        let mut mask = 0usize;
        for k in subset {
            let k = k.as_u64().filter(|&k| k >= 1 && k as usize <= n).ok_or_else(bad)?;
            mask |= 1 << (k - 1);
        }
        let v = entry["value"].as_u64().ok_or_else(bad)?;
        values[mask] = Some(u32::try_from(v).map_err(|_| bad())?);
    }
    let values = values.into_iter().collect::<Option<Vec<_>>>().ok_or_else(bad)?;
    RankFn::from_values(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, pts: &[&[u32]]) -> LatticeSet {
        LatticeSet::from_points(dim, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    #[test]
    fn support_rank_examples() {
        let r = support_rank(&set(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!((r.get(0b01), r.get(0b10), r.get(0b11)), (1, 1, 1));

        let r = support_rank(&set(3, &[&[2, 0, 0]])).unwrap();
        for mask in 0..8u32 {
            assert_eq!(r.get(mask), if mask & 1 == 1 { 2 } else { 0 });
        }

        // supp((t1 - s1)(t1 - s2)) with p = 3: t1^2, t1 s1, t1 s2, s1 s2
        let s = set(
            6,
            &[&[2, 0, 0, 0, 0, 0], &[1, 0, 0, 1, 0, 0], &[1, 0, 0, 0, 1, 0], &[0, 0, 0, 1, 1, 0]],
        );
        let r = support_rank(&s).unwrap();
        assert_eq!(r.value_of(&[1]), 2);
        assert_eq!(r.value_of(&[4]), 1);
        assert_eq!(r.value_of(&[5]), 1);
        assert_eq!(r.value_of(&[1, 2, 3, 4, 5, 6]), 2);
        assert_eq!(support_rank(&LatticeSet::new(2)), Err(Error::EmptySet));
    }

    #[test]
    fn rank_axiom_examples() {
        assert!(check_rank_axioms(&RankFn::from_fn(3, |_| 0)).is_ok());
        let s = set(3, &[&[1, 2, 0], &[0, 0, 3], &[2, 1, 0]]);
        let r = support_rank(&s).unwrap();
        assert!(!matches!(check_rank_axioms(&r), Err(RankViolation::Monotonicity { .. })));

        let bad = RankFn::from_values(2, vec![0, 0, 0, 1]).unwrap();
        let err = check_rank_axioms(&bad).unwrap_err();
        assert_eq!(
            err,
            RankViolation::Submodularity {
                first: vec![1],
                second: vec![2]
            }
        );
        assert!(err.holds_for(&bad));

        let shifted = RankFn::from_values(1, vec![1, 1]).unwrap();
        assert_eq!(
            check_rank_axioms(&shifted),
            Err(RankViolation::Normalization { value: 1 })
        );
        let dip = RankFn::from_values(2, vec![0, 2, 1, 1]).unwrap();
        assert!(matches!(check_rank_axioms(&dip), Err(RankViolation::Monotonicity { .. })));
    }

    #[test]
    fn polymatroid_points_examples() {
        let r = RankFn::from_values(2, vec![0, 1, 1, 1]).unwrap();
        assert_eq!(polymatroid_points(&r).unwrap(), set(2, &[&[1, 0], &[0, 1]]));

        let r = RankFn::from_values(1, vec![0, 5]).unwrap();
        assert_eq!(polymatroid_points(&r).unwrap(), set(1, &[&[5]]));

        let s = set(
            6,
            &[&[2, 0, 0, 0, 0, 0], &[1, 0, 0, 1, 0, 0], &[1, 0, 0, 0, 1, 0], &[0, 0, 0, 1, 1, 0]],
        );
        assert_eq!(polymatroid_points(&support_rank(&s).unwrap()).unwrap(), s);

        let bad = RankFn::from_values(2, vec![0, 0, 0, 1]).unwrap();
        assert!(matches!(polymatroid_points(&bad), Err(Error::RankAxiomsNotVerified(_))));
    }

    /// Filters the whole box `[0, r({j})]` by the defining inequalities.
    fn brute_force_points(r: &RankFn) -> LatticeSet {
        let n = r.n();
        let mut out = LatticeSet::new(n);
        let bounds: Vec<u32> = (0..n).map(|k| r.get(1 << k)).collect();
        let mut x = vec![0u32; n];
        loop {
            if r.check_point(&x).is_ok() {
                out.insert(x.clone()).unwrap();
            }
            let mut k = 0;
            while k < n && x[k] == bounds[k] {
                x[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            x[k] += 1;
        }
        out
    }

    #[test]
    fn backtracking_matches_box_filter() {
        let rank_fns = [
            RankFn::from_fn(4, |m| m.count_ones().min(2)),
            RankFn::from_fn(3, |m| 2 * m.count_ones()),
            RankFn::from_fn(4, |m| (m & 0b0011).count_ones().min(1) + 2 * (m & 0b1100).count_ones().min(1)),
            RankFn::from_fn(5, |m| [3u32, 1, 2, 2, 1].iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, w)| w).sum::<u32>().min(4)),
        ];
        for r in &rank_fns {
            assert!(check_rank_axioms(r).is_ok());
            assert_eq!(polymatroid_points(r).unwrap(), brute_force_points(r));
        }
    }

    #[test]
    fn decider_examples() {
        let ok = set(2, &[&[1, 0], &[0, 1]]);
        let cert = is_discrete_polymatroid(&ok);
        assert!(cert.is_polymatroid());
        assert!(cert.verify(&ok));

        let gap = set(2, &[&[2, 0], &[0, 2]]);
        let cert = is_discrete_polymatroid(&gap);
        assert_eq!(
            cert.witness(),
            Some(&PolymatroidWitness::MissingPoint { point: vec![1, 1] })
        );
        assert!(cert.verify(&gap));

        let uneven = set(2, &[&[1, 0], &[1, 1]]);
        let cert = is_discrete_polymatroid(&uneven);
        assert!(matches!(cert.witness(), Some(PolymatroidWitness::SumMismatch { .. })));
        assert!(cert.verify(&uneven));

        let empty = LatticeSet::new(2);
        assert_eq!(is_discrete_polymatroid(&empty).witness(), Some(&PolymatroidWitness::EmptySet));
    }

    #[test]
    fn submodularity_failure_is_reported() {
        // maxima: r({1})=r({2})=r({3})=1, r of any pair = 2 except {1,2} = 1 ...
        let s = set(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 1]]);
        let cert = is_discrete_polymatroid(&s);
        assert!(!cert.is_polymatroid());
        assert!(cert.verify(&s));
        assert_eq!(exchange_check(&s).is_polymatroid(), cert.is_polymatroid());
    }

    #[test]
    fn certify_against_reports_violating_point() {
        let s = set(2, &[&[2, 0], &[1, 1]]);
        let r = RankFn::from_values(2, vec![0, 1, 2, 2]).unwrap();
        let cert = certify_against(&s, &r);
        assert_eq!(
            cert.witness(),
            Some(&PolymatroidWitness::ViolatingPoint { point: vec![2, 0], subset: vec![1] })
        );
        assert!(cert.verify(&s));
    }

    #[test]
    fn exchange_examples() {
        assert!(exchange_check(&set(2, &[&[1, 0], &[0, 1]])).is_polymatroid());
        assert_eq!(
            exchange_check(&set(2, &[&[2, 0], &[0, 2]])),
            ExchangeVerdict::IsNot { x: vec![2, 0], y: vec![0, 2], i: 1 }
        );
    }

    #[test]
    fn certificate_json_shape() {
        let cert = is_discrete_polymatroid(&set(2, &[&[2, 0], &[0, 2]]));
        let v = cert.to_json();
        assert_eq!(v["verdict"], "is-not");
        assert_eq!(v["witness"]["kind"], "missing_point");
        assert_eq!(v["witness"]["point"], json!([1, 1]));
        let r = rank_from_json(2, &v["rank"]).unwrap();
        assert_eq!(Some(&r), cert.rank());
    }
}
