//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! A [`SparsePoly`] lives in a fixed number of variables. For Schubert
//! computations the layout is `t_1..t_p` followed by `s_1..s_p` (`2p` variables);
//! other callers (matrix entries, standardized variables) pick their own layout
//! and a [`VarNames`] for rendering.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeSet;

/// Exponent vector of one monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<u8>);

impl Exponent {
    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn from_slice(exps: &[u8]) -> Self {
        Exponent(exps.to_vec())
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

/// How variables are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// `t1..tp, s1..sp`.
    TS,
    /// `x_i_j`, row-major over a `p × p` matrix.
    Matrix,
    /// `w_i_j` (row-major) followed by `z_i_j`.
    Standardized,
}

impl VarNames {
    pub fn name(self, nvars: usize, var: usize) -> String {
        match self {
            VarNames::TS => {
                let p = nvars / 2;
                if var < p {
                    format!("t{}", var + 1)
                } else {
                    format!("s{}", var - p + 1)
                }
            }
            VarNames::Matrix => {
                let p = isqrt(nvars);
                format!("x_{}_{}", var / p + 1, var % p + 1)
            }
            VarNames::Standardized => {
                let p = isqrt(nvars / 2);
                let (prefix, k) = if var < p * p { ("w", var) } else { ("z", var - p * p) };
                format!("{prefix}_{}_{}", k / p + 1, k % p + 1)
            }
        }
    }
}

fn isqrt(n: usize) -> usize {
    let r = (n as f64).sqrt().round() as usize;
    assert_eq!(r * r, n, "{n} is not a perfect square");
    r
}

/// A polynomial in canonical form: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, Exponent::zero(nvars), c)
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: BigInt) -> Self {
        assert_eq!(exp.0.len(), nvars, "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range");
        Self::monomial(nvars, Exponent::unit(nvars, var), BigInt::one())
    }

    /// `t_i` in the `2p`-variable layout (1-based `i`).
    pub fn t(p: usize, i: usize) -> Self {
        assert!((1..=p).contains(&i));
        Self::var(2 * p, i - 1)
    }

    /// `s_j` in the `2p`-variable layout (1-based `j`).
    pub fn s(p: usize, j: usize) -> Self {
        assert!((1..=p).contains(&j));
        Self::var(2 * p, p + j - 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging like terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, BigInt)>,
    {
        let mut out = Self::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars, "exponent length");
            out.add_term(Exponent(exp), c);
        }
        out
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u8]) -> BigInt {
        self.terms
            .get(&Exponent::from_slice(exp))
            .cloned()
            .unwrap_or_default()
    }

    /// Total degree of the leading-degree part; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Exponent::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponent::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sum of all coefficients (evaluation at the all-ones point).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn check_dims(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_dims(other)?;
        let mut out = SparsePoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Applies `f` to every exponent vector, merging terms that collide.
    pub fn map_exponents(&self, nvars: usize, mut f: impl FnMut(&[u8]) -> Vec<u8>) -> SparsePoly {
        SparsePoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| (f(&e.0), c.clone())),
        )
    }

    fn ts_layout(&self, i: usize) -> Result<usize> {
        let p = self.nvars / 2;
        if !self.nvars.is_multiple_of(2) || i == 0 || i >= p {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: p.saturating_sub(1),
            });
        }
        Ok(p)
    }

    /// Exchanges `t_i` and `t_{i+1}`; `s`-variables are untouched.
    pub fn swap_t(&self, i: usize) -> Result<SparsePoly> {
        self.ts_layout(i)?;
        Ok(self.map_exponents(self.nvars, |e| {
            let mut e = e.to_vec();
            e.swap(i - 1, i);
            e
        }))
    }

    /// `(f - s_i f) / (t_i - t_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Result<SparsePoly> {
        self.ts_layout(i)?;
        let numerator = self.checked_sub(&self.swap_t(i)?)?;
        let quotient = numerator
            .div_binomial(i - 1, i, false)
            .expect("divided difference numerator must be divisible by t_i - t_{i+1}");
        Ok(quotient)
    }

    /// Exact division by `x_a - x_b` (or `x_a + x_b` when `plus`), treating the
    /// polynomial as univariate in `x_a` and running synthetic division against
    /// the root `x_a = ±x_b`. Returns `None` if the remainder is nonzero.
    pub fn div_binomial(&self, a: usize, b: usize, plus: bool) -> Option<SparsePoly> {
        assert!(a != b && a < self.nvars && b < self.nvars);
        // root of the divisor, as a multiple of x_b
        let root: BigInt = if plus { -BigInt::one() } else { BigInt::one() };

        // group by the exponent with x_a and x_b cleared
        let mut groups: BTreeMap<Vec<u8>, BTreeMap<u8, BTreeMap<u8, BigInt>>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.0.clone();
            let (da, db) = (rest[a], rest[b]);
            rest[a] = 0;
            rest[b] = 0;
            groups
                .entry(rest)
                .or_default()
                .entry(da)
                .or_default()
                .insert(db, c.clone());
        }

        let mut out = SparsePoly::zero(self.nvars);
        for (rest, by_a) in groups {
            let top = *by_a.keys().next_back().unwrap();
            // carry: current quotient coefficient, a polynomial in x_b (degree -> coeff)
            let mut carry: BTreeMap<u8, BigInt> = BTreeMap::new();
            for da in (0..=top).rev() {
                // next = g_da + root * x_b * carry
                let mut next: BTreeMap<u8, BigInt> = by_a.get(&da).cloned().unwrap_or_default();
                for (&db, c) in &carry {
                    let slot = next.entry(db + 1).or_default();
                    *slot += &root * c;
                }
                next.retain(|_, c| !c.is_zero());
                if da == 0 {
                    if !next.is_empty() {
                        return None;
                    }
                } else {
                    for (&db, c) in &next {
                        let mut e = rest.clone();
                        e[a] = da - 1;
                        e[b] = db;
                        out.add_term(Exponent(e), c.clone());
                    }
                }
                carry = next;
            }
        }
        Some(out)
    }

    /// Drops every term with a positive `s`-exponent.
    pub fn substitute_s_zero(&self) -> SparsePoly {
        let p = self.nvars / 2;
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[p..].iter().all(|&x| x == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces every `s_j` by `-s_j`.
    pub fn negate_s(&self) -> SparsePoly {
        let p = self.nvars / 2;
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let sdeg: usize = e.0[p..].iter().map(|&x| x as usize).sum();
                    let c = if sdeg % 2 == 1 { -c } else { c.clone() };
                    (e.clone(), c)
                })
                .collect(),
        }
    }

    pub fn support(&self) -> LatticeSet {
        LatticeSet::from_points(
            self.nvars,
            self.terms
                .keys()
                .map(|e| e.0.iter().map(|&x| x as u32).collect::<Vec<u32>>()),
        )
        .expect("exponents have the ambient dimension")
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Leading-term-first rendering, e.g. `t1^2 - t1*s1 - t1*s2 + s1*s2`.
    pub fn display(&self, names: VarNames) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(e, c)| JsonTerm {
                exponent: e.0.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(nvars: usize, terms: &[JsonTerm]) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(nvars);
        for t in terms {
            if t.exponent.len() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: t.exponent.len(),
                });
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad coefficient {:?}", t.coeff)))?;
            out.add_term(Exponent(t.exponent.clone()), c);
        }
        Ok(out)
    }
}

/// One term in the JSON serialization; the coefficient is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponent: Vec<u8>,
    pub coeff: String,
}

pub struct PolyDisplay<'a> {
    poly: &'a SparsePoly,
    names: VarNames,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let nvars = self.poly.nvars;
        for (k, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| {
                    let name = self.names.name(nvars, v);
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = if self.nvars.is_multiple_of(2) {
            VarNames::TS
        } else {
            return write!(f, "{:?}", self.terms);
        };
        write!(f, "{}", self.display(names))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("polynomial dimensions")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("polynomial dimensions")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("polynomial dimensions")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: usize = 3;

    fn t(i: usize) -> SparsePoly {
        SparsePoly::t(P, i)
    }

    fn s(j: usize) -> SparsePoly {
        SparsePoly::s(P, j)
    }

    fn int(c: i64) -> SparsePoly {
        SparsePoly::constant(2 * P, BigInt::from(c))
    }

    #[test]
    fn add_examples() {
        let f = &t(1) - &s(1);
        assert_eq!(&f + &SparsePoly::zero(2 * P), f);
        assert!((&t(1) + &(-&t(1))).is_zero());
        let g = &(&t(1) - &s(1)) + &(&t(1) + &s(1));
        assert_eq!(g, &int(2) * &t(1));
        assert_eq!(g.num_terms(), 1);
        assert!(t(1).checked_add(&SparsePoly::t(2, 1)).is_err());
    }

    #[test]
    fn mul_examples() {
        let f = &t(1) - &s(1);
        assert_eq!(&f * &int(1), f);
        let prod = &(&t(1) - &s(1)) * &(&t(1) - &s(2));
        let expanded = &(&(&(&t(1) * &t(1)) - &(&t(1) * &s(1))) - &(&t(1) * &s(2))) + &(&s(1) * &s(2));
        assert_eq!(prod, expanded);
        assert!((&f * &int(0)).is_zero());
        assert!(t(1).checked_mul(&SparsePoly::t(4, 1)).is_err());
    }

    #[test]
    fn swap_examples() {
        assert_eq!(t(1).swap_t(1).unwrap(), t(2));
        assert_eq!(s(1).swap_t(1).unwrap(), s(1));
        let sym = &t(1) * &t(2);
        assert_eq!(sym.swap_t(1).unwrap(), sym);
        assert!(t(1).swap_t(3).is_err());
        assert!(t(1).swap_t(0).is_err());
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(t(1).divided_difference(1).unwrap(), int(1));
        assert!(s(1).divided_difference(1).unwrap().is_zero());
        assert!((&t(1) * &t(2)).divided_difference(1).unwrap().is_zero());
        assert!(t(1).divided_difference(3).is_err());
        // ∂_1(t1^3) = t1^2 + t1 t2 + t2^2
        let cube = &(&t(1) * &t(1)) * &t(1);
        let want = &(&(&t(1) * &t(1)) + &(&t(1) * &t(2))) + &(&t(2) * &t(2));
        assert_eq!(cube.divided_difference(1).unwrap(), want);
    }

    #[test]
    fn div_binomial_detects_remainder() {
        let f = &(&t(1) + &s(2)) * &(&t(2) - &s(1));
        let q = f.div_binomial(0, P + 1, true).unwrap();
        assert_eq!(q, &t(2) - &s(1));
        assert!(t(1).div_binomial(0, P + 1, true).is_none());
    }

    #[test]
    fn substitute_and_negate_examples() {
        assert_eq!((&t(1) - &s(1)).substitute_s_zero(), t(1));
        assert!((&s(1) * &s(2)).substitute_s_zero().is_zero());
        let f = &int(3) * &(&t(1) * &t(1));
        assert_eq!(f.substitute_s_zero(), f);

        assert_eq!((&t(1) - &s(1)).negate_s(), &t(1) + &s(1));
        assert_eq!((&s(1) * &s(2)).negate_s(), &s(1) * &s(2));
    }

    #[test]
    fn support_examples() {
        assert!(SparsePoly::zero(6).support().is_empty());
        let sup = (&t(1) - &s(1)).support();
        assert_eq!(sup.len(), 2);
        assert!(sup.contains(&[1, 0, 0, 0, 0, 0]));
        assert!(sup.contains(&[0, 0, 0, 1, 0, 0]));
        let prod = &(&t(1) - &s(1)) * &(&t(1) - &s(2));
        assert_eq!(prod.support().len(), 4);
    }

    #[test]
    fn rendering() {
        assert_eq!(int(1).to_string(), "1");
        assert_eq!(SparsePoly::zero(4).to_string(), "0");
        assert_eq!((&SparsePoly::t(2, 1) - &SparsePoly::s(2, 1)).to_string(), "t1 - s1");
        let prod = &(&t(1) - &s(1)) * &(&t(1) - &s(2));
        assert_eq!(prod.to_string(), "t1^2 - t1*s1 - t1*s2 + s1*s2");
        assert_eq!((&int(-3) * &s(2)).to_string(), "-3*s2");
        let m = SparsePoly::var(4, 3);
        assert_eq!(m.display(VarNames::Matrix).to_string(), "x_2_2");
        let wz = SparsePoly::var(8, 5);
        assert_eq!(wz.display(VarNames::Standardized).to_string(), "z_1_2");
    }

    #[test]
    fn json_round_trip() {
        let prod = &(&t(1) - &s(1)) * &(&t(1) - &s(2));
        let json = prod.to_json_terms();
        assert_eq!(json[0].exponent, vec![0, 0, 0, 1, 1, 0]);
        assert_eq!(json[0].coeff, "1");
        assert_eq!(SparsePoly::from_json_terms(6, &json).unwrap(), prod);
    }

    #[test]
    fn coefficients_beyond_machine_words() {
        let big = &int(i64::MAX) * &int(i64::MAX);
        let bigger = &big * &big;
        assert_eq!(
            bigger.coefficient(&[0; 6]),
            BigInt::from(i64::MAX).pow(4)
        );
    }

    fn arb_poly(p: usize, max_deg: u8) -> impl Strategy<Value = SparsePoly> {
        let nvars = 2 * p;
        prop::collection::vec(
            (prop::collection::vec(0..=max_deg, nvars), -5i64..=5),
            0..6,
        )
        .prop_map(move |terms| {
            SparsePoly::from_terms(
                nvars,
                terms.into_iter().map(|(e, c)| (e, BigInt::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(2, 3), g in arb_poly(2, 3), h in arb_poly(2, 3)) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn divided_difference_squares_to_zero(f in arb_poly(3, 4), i in 1usize..3) {
            let once = f.divided_difference(i).unwrap();
            prop_assert!(once.divided_difference(i).unwrap().is_zero());
        }

        #[test]
        fn divided_difference_is_exact(f in arb_poly(3, 4), i in 1usize..3) {
            // (t_i - t_{i+1}) ∂_i f = f - s_i f
            let q = f.divided_difference(i).unwrap();
            let lhs = &(&SparsePoly::t(3, i) - &SparsePoly::t(3, i + 1)) * &q;
            prop_assert_eq!(lhs, &f - &f.swap_t(i).unwrap());
        }

        #[test]
        fn braid_and_commutation(f in arb_poly(4, 3)) {
            let d = |g: &SparsePoly, i: usize| g.divided_difference(i).unwrap();
            for i in 1..3 {
                prop_assert_eq!(d(&d(&d(&f, i), i + 1), i), d(&d(&d(&f, i + 1), i), i + 1));
            }
            prop_assert_eq!(d(&d(&f, 1), 3), d(&d(&f, 3), 1));
        }

        #[test]
        fn involutions(f in arb_poly(3, 3), i in 1usize..3) {
            prop_assert_eq!(f.swap_t(i).unwrap().swap_t(i).unwrap(), f.clone());
            prop_assert_eq!(f.negate_s().negate_s(), f);
        }

        #[test]
        fn divided_difference_lowers_degree(exps in prop::collection::vec(prop::collection::vec(0u8..4, 6), 1..5), i in 1usize..3) {
            // homogeneous input of degree 4 built by padding each exponent into the last slot
            let terms = exps.into_iter().filter(|e| e.iter().map(|&x| x as usize).sum::<usize>() <= 4).map(|mut e| {
                let d: u8 = e.iter().sum();
                e[5] += 4 - d;
                (e, BigInt::one())
            });
            let f = SparsePoly::from_terms(6, terms);
            let q = f.divided_difference(i).unwrap();
            prop_assert!(q.is_homogeneous());
            if let Some(d) = q.total_degree() {
                prop_assert_eq!(d + 1, f.total_degree().unwrap());
            }
        }
    }
}
