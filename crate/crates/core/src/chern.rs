//! Chern classes of split bundles on `P(V)`.
//!
//! Every bundle that enters the relation computation is filtered with line
//! bundle graded pieces, so its total Chern class is the product of
//! `1 + c1` over a list of line factors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::chow::{BundleElement, Homogeneity};
use crate::coeffs::{Coefficient, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("principal parts order must be >= 0, got {0}")]
    NegativeOrder(i64),
    #[error("tensor power must be >= 1, got {0}")]
    NonPositivePower(i64),
}

/// `c1(Omega)` of the projection `P(V) -> base` is `-2z`: from the relative
/// Euler sequence `0 -> Omega -> V^*(-1) -> O -> 0` with `c1(V) = 0`.
pub const RELATIVE_COTANGENT_Z: i64 = -2;

/// Sign and cotangent conventions used to build the principal parts factors.
///
/// The default is the subspace convention (`c1(L) = a1 + N z`,
/// `c1(Omega) = -2 z`). The other settings exist to show that the golden
/// relations pin the convention down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    /// `+1` for `z`, `-1` to substitute `z -> -z` throughout.
    pub hyperplane_sign: i64,
    /// `z`-coefficient of `c1(Omega)` before the hyperplane sign is applied.
    pub cotangent_z: i64,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            hyperplane_sign: 1,
            cotangent_z: RELATIVE_COTANGENT_Z,
        }
    }
}

/// First Chern class `u * a1 + v * z` of a line bundle on `P(V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFactor<C> {
    pub a1: C,
    pub z: C,
}

impl<C: Coefficient> LineFactor<C> {
    pub fn new(a1: C, z: C) -> Self {
        LineFactor { a1, z }
    }

    pub fn to_element(&self) -> BundleElement<C> {
        BundleElement::linear(self.a1.clone(), self.z.clone())
    }
}

/// A bundle described by its Chern roots.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleDescriptor<C> {
    pub factors: Vec<LineFactor<C>>,
}

impl<C: Coefficient> BundleDescriptor<C> {
    pub fn new(factors: Vec<LineFactor<C>>) -> Self {
        BundleDescriptor { factors }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Direct sum.
    pub fn concat(&self, other: &BundleDescriptor<C>) -> BundleDescriptor<C> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        BundleDescriptor { factors }
    }

    /// Product of the factors, reduced in `A*(P(V))`.
    pub fn top_chern(&self) -> BundleElement<C> {
        let top = self
            .factors
            .iter()
            .fold(BundleElement::one(), |acc, f| &acc * &f.to_element());
        debug_assert!(matches!(
            top.homogeneity(),
            Homogeneity::Degree(_) | Homogeneity::Zero
        ));
        top
    }
}

/// Chern roots of `P^m(L^k)` for the principal parts along `P(V) -> base`,
/// where `L` has `c1(L) = a1 + N z`.
///
/// The filtration has graded pieces `L^k (x) Omega^j` for `j = 0..=m`.
pub fn principal_parts_factors<C: Coefficient>(
    m: i64,
    k: i64,
    n: &C,
) -> Result<BundleDescriptor<C>, ChernError> {
    principal_parts_factors_with(m, k, n, Conventions::default())
}

pub fn principal_parts_factors_with<C: Coefficient>(
    m: i64,
    k: i64,
    n: &C,
    conventions: Conventions,
) -> Result<BundleDescriptor<C>, ChernError> {
    if m < 0 {
        return Err(ChernError::NegativeOrder(m));
    }
    if k < 1 {
        return Err(ChernError::NonPositivePower(k));
    }
    let sign = C::from_i64(conventions.hyperplane_sign);
    let factors = (0..=m)
        .map(|j| {
            let z = C::from_i64(k) * n.clone() + C::from_i64(j * conventions.cotangent_z);
            LineFactor::new(C::from_i64(k), sign.clone() * z)
        })
        .collect();
    Ok(BundleDescriptor::new(factors))
}

pub fn top_chern<C: Coefficient>(b: &BundleDescriptor<C>) -> BundleElement<C> {
    b.top_chern()
}

/// Polynomial in two Chern roots `r1, r2`.
#[derive(Debug, Clone, PartialEq, Default)]
struct RootPoly(BTreeMap<(u32, u32), Rational>);

impl RootPoly {
    fn root(idx: usize) -> Self {
        let mut p = RootPoly::default();
        p.add_term(if idx == 0 { (1, 0) } else { (0, 1) }, Rational::one());
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        let v = self.0.remove(&e).unwrap_or_default() + c;
        if !v.is_zero() {
            self.0.insert(e, v);
        }
    }

    fn plus(&self, other: &RootPoly) -> RootPoly {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn scale(&self, c: &Rational) -> RootPoly {
        let mut out = RootPoly::default();
        for (e, a) in &self.0 {
            out.add_term(*e, a * c);
        }
        out
    }

    fn times(&self, other: &RootPoly) -> RootPoly {
        let mut out = RootPoly::default();
        for ((a, b), x) in &self.0 {
            for ((c, d), y) in &other.0 {
                out.add_term((a + c, b + d), x * y);
            }
        }
        out
    }

    fn eval(&self, r1: &Rational, r2: &Rational) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, ((a, b), c)| {
            acc + &(c * &r1.pow(*a)) * &r2.pow(*b)
        })
    }
}

struct TwistSides {
    by_roots: RootPoly,
    by_formula: RootPoly,
    reduced: RootPoly,
}

fn twist_sides() -> TwistSides {
    let half = Rational::new(1, 2).expect("nonzero denominator");
    let quarter = Rational::new(1, 4).expect("nonzero denominator");
    let (r1, r2) = (RootPoly::root(0), RootPoly::root(1));
    let c1 = r1.plus(&r2);
    let c2 = r1.times(&r2);
    // First Chern class of a square root of det E.
    let h = c1.scale(&half);

    // Roots of E^dual (x) N are h - r1 and h - r2.
    let minus = Rational::from(-1);
    let by_roots = h.plus(&r1.scale(&minus)).times(&h.plus(&r2.scale(&minus)));

    // c2(F (x) N) = c1(N)^2 + c1(F) c1(N) + c2(F) with F = E^dual.
    let by_formula = h
        .times(&h)
        .plus(&c1.scale(&minus).times(&h))
        .plus(&c2);

    let reduced = c1.times(&c1).scale(&-&quarter).plus(&c2);
    TwistSides {
        by_roots,
        by_formula,
        reduced,
    }
}

/// Checks `c2(E^dual (x) N) = -1/4 c1(E)^2 + c2(E)` for a rank-2 bundle `E`
/// and a line bundle `N` with `N^2 = det E`, as an identity in the Chern
/// roots of `E`.
pub fn twist_c2_identity_check() -> bool {
    let s = twist_sides();
    s.by_roots == s.reduced && s.by_formula == s.reduced
}

/// Both sides of the twist identity at specific Chern roots.
pub fn twist_c2_sides(r1: &Rational, r2: &Rational) -> (Rational, Rational) {
    let s = twist_sides();
    (s.by_roots.eval(r1, r2), s.reduced.eval(r1, r2))
}
