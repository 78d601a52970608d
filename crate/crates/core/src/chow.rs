//! The weighted-graded ring `Q[a1, c2]` and the Chow ring of the universal
//! `P^1`-bundle `P(V)` over it.
//!
//! `deg a1 = 1`, `deg c2 = 2`. On `P(V)` the hyperplane class `z` satisfies
//! `z^2 + c1(V) z + c2(V) = 0`; since `c1(V) = 0` every element reduces to
//! `alpha + beta * z` with `alpha`, `beta` pulled back from the base. The
//! pushforward along the bundle projection sends `1 -> 0`, `z -> 1` and is
//! linear over the base.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use serde::Serialize;

use crate::coeffs::{Coefficient, ParamPoly, Rational};

/// `a1^a1 * c2^c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub a1: u32,
    pub c2: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a1: 0, c2: 0 };

    pub fn new(a1: u32, c2: u32) -> Self {
        Monomial { a1, c2 }
    }

    pub fn degree(&self) -> u32 {
        self.a1 + 2 * self.c2
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.a1 + other.a1, self.c2 + other.c2)
    }

    /// All monomials of weighted degree `d`, highest `a1`-power first.
    pub fn of_degree(d: u32) -> Vec<Monomial> {
        (0..=d / 2)
            .map(|c2| Monomial::new(d - 2 * c2, c2))
            .collect()
    }

    fn render(&self) -> Vec<String> {
        let mut parts = Vec::new();
        match self.c2 {
            0 => {}
            1 => parts.push("c2".to_string()),
            e => parts.push(format!("c2^{e}")),
        }
        match self.a1 {
            0 => {}
            1 => parts.push("a1".to_string()),
            e => parts.push(format!("a1^{e}")),
        }
        parts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Inhomogeneous,
}

/// Sparse element of `Q[a1, c2]` (or of `Q[N][a1, c2]` in symbolic mode).
#[derive(Clone, PartialEq)]
pub struct BasePolynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> BasePolynomial<C> {
    pub fn zero() -> Self {
        BasePolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn a1() -> Self {
        Self::term(Monomial::new(1, 0), C::one())
    }

    pub fn c2() -> Self {
        Self::term(Monomial::new(0, 1), C::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    /// `true` for zero as well.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        match self.homogeneity() {
            Homogeneity::Zero => true,
            Homogeneity::Degree(e) => e == d,
            Homogeneity::Inhomogeneous => false,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())))
    }

    pub fn shift(&self, m: &Monomial) -> Self {
        BasePolynomial {
            terms: self.terms.iter().map(|(k, c)| (k.times(m), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> BasePolynomial<D> {
        BasePolynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Terms in canonical order: `c2`-power descending, then `a1`-power
    /// descending.
    pub fn canonical_terms(&self) -> Vec<(Monomial, C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|(m, _)| std::cmp::Reverse((m.c2, m.a1)));
        v
    }

    /// Canonical text form, e.g. `119439360*N^9*c2^4*a1 - 859963392*N^8*c2^4*a1 + ...`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (m, c) in self.canonical_terms() {
            for (scalar, param) in c.expand_terms() {
                let neg = scalar.is_negative();
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let mut factors = Vec::new();
                if !param.is_empty() {
                    factors.push(param);
                }
                factors.extend(m.render());
                let mag = scalar.abs();
                if factors.is_empty() || !mag.is_one() {
                    factors.insert(0, mag.to_string());
                }
                out.push_str(&factors.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl BasePolynomial<ParamPoly> {
    /// Evaluates every coefficient at `N = n`.
    pub fn specialize(&self, n: i64) -> BasePolynomial<Rational> {
        self.map_coeffs(|c| c.eval_int(n))
    }

    /// Largest power of `N` appearing in any coefficient.
    pub fn param_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(ParamPoly::degree).max()
    }
}

impl<C: Coefficient> fmt::Display for BasePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coefficient> fmt::Debug for BasePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasePolynomial({})", self.render())
    }
}

impl<C: Coefficient> Add for &BasePolynomial<C> {
    type Output = BasePolynomial<C>;
    fn add(self, rhs: &BasePolynomial<C>) -> BasePolynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &BasePolynomial<C> {
    type Output = BasePolynomial<C>;
    fn sub(self, rhs: &BasePolynomial<C>) -> BasePolynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Neg for &BasePolynomial<C> {
    type Output = BasePolynomial<C>;
    fn neg(self) -> BasePolynomial<C> {
        BasePolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<C: Coefficient> Mul for &BasePolynomial<C> {
    type Output = BasePolynomial<C>;
    fn mul(self, rhs: &BasePolynomial<C>) -> BasePolynomial<C> {
        let mut out = BasePolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

/// `alpha + beta * z` in the Chow ring of `P(V)`.
#[derive(Clone, PartialEq)]
pub struct BundleElement<C> {
    alpha: BasePolynomial<C>,
    beta: BasePolynomial<C>,
}

impl<C: Coefficient> BundleElement<C> {
    pub fn new(alpha: BasePolynomial<C>, beta: BasePolynomial<C>) -> Self {
        BundleElement { alpha, beta }
    }

    pub fn zero() -> Self {
        Self::pullback(BasePolynomial::zero())
    }

    pub fn one() -> Self {
        Self::pullback(BasePolynomial::one())
    }

    /// The hyperplane class.
    pub fn z() -> Self {
        BundleElement::new(BasePolynomial::zero(), BasePolynomial::one())
    }

    pub fn pullback(p: BasePolynomial<C>) -> Self {
        BundleElement::new(p, BasePolynomial::zero())
    }

    /// `u * a1 + v * z` with scalar coefficients.
    pub fn linear(a1_coeff: C, z_coeff: C) -> Self {
        BundleElement::new(
            BasePolynomial::term(Monomial::new(1, 0), a1_coeff),
            BasePolynomial::constant(z_coeff),
        )
    }

    pub fn alpha(&self) -> &BasePolynomial<C> {
        &self.alpha
    }

    pub fn beta(&self) -> &BasePolynomial<C> {
        &self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    /// Weighted degree with `deg z = 1`.
    pub fn homogeneity(&self) -> Homogeneity {
        use Homogeneity::*;
        match (self.alpha.homogeneity(), self.beta.homogeneity()) {
            (Zero, Zero) => Zero,
            (Degree(d), Zero) => Degree(d),
            (Zero, Degree(e)) => Degree(e + 1),
            (Degree(d), Degree(e)) if d == e + 1 => Degree(d),
            _ => Inhomogeneous,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        BundleElement::new(self.alpha.scale(c), self.beta.scale(c))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Pushforward along `P(V) -> base`: the `z`-coefficient.
    pub fn pushforward(&self) -> BasePolynomial<C> {
        self.beta.clone()
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> BundleElement<D> {
        BundleElement::new(self.alpha.map_coeffs(&f), self.beta.map_coeffs(&f))
    }
}

impl BundleElement<ParamPoly> {
    pub fn specialize(&self, n: i64) -> BundleElement<Rational> {
        BundleElement::new(self.alpha.specialize(n), self.beta.specialize(n))
    }
}

impl<C: Coefficient> fmt::Debug for BundleElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*z", self.alpha, self.beta)
    }
}

impl<C: Coefficient> Add for &BundleElement<C> {
    type Output = BundleElement<C>;
    fn add(self, rhs: &BundleElement<C>) -> BundleElement<C> {
        BundleElement::new(&self.alpha + &rhs.alpha, &self.beta + &rhs.beta)
    }
}

impl<C: Coefficient> Sub for &BundleElement<C> {
    type Output = BundleElement<C>;
    fn sub(self, rhs: &BundleElement<C>) -> BundleElement<C> {
        BundleElement::new(&self.alpha - &rhs.alpha, &self.beta - &rhs.beta)
    }
}

impl<C: Coefficient> Mul for &BundleElement<C> {
    type Output = BundleElement<C>;

    /// `(a + b z)(a' + b' z) = (a a' - c2 b b') + (a b' + a' b) z`.
    fn mul(self, rhs: &BundleElement<C>) -> BundleElement<C> {
        let bb = &self.beta * &rhs.beta;
        let alpha = &(&self.alpha * &rhs.alpha) - &(&bb * &BasePolynomial::c2());
        let beta = &(&self.alpha * &rhs.beta) + &(&rhs.alpha * &self.beta);
        BundleElement::new(alpha, beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = BasePolynomial<Rational>;
    type E = BundleElement<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn base_mul_examples() {
        let a1 = P::a1();
        let c2 = P::c2();
        assert_eq!(&a1 * &a1, P::term(Monomial::new(2, 0), q(1)));
        let lhs = &(&(&a1 * &a1) + &c2) * &c2;
        let rhs = P::from_terms([(Monomial::new(2, 1), q(1)), (Monomial::new(0, 2), q(1))]);
        assert_eq!(lhs, rhs);
        let m = P::term(Monomial::new(3, 0), q(1));
        let n = P::term(Monomial::new(0, 2), q(1));
        assert_eq!((&m * &n).homogeneity(), Homogeneity::Degree(7));
    }

    #[test]
    fn homogeneity_reports() {
        assert_eq!(P::zero().homogeneity(), Homogeneity::Zero);
        assert_eq!((&P::a1() + &P::c2()).homogeneity(), Homogeneity::Inhomogeneous);
        let a1sq = &P::a1() * &P::a1();
        assert_eq!((&a1sq + &P::c2()).homogeneity(), Homogeneity::Degree(2));
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = &P::a1() - &P::a1();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn bundle_mul_examples() {
        let z = E::z();
        assert_eq!(&z * &z, E::pullback(-&P::c2()));
        let a1 = E::pullback(P::a1());
        let lhs = &(&a1 + &z) * &(&a1 - &z);
        let a1sq = &P::a1() * &P::a1();
        assert_eq!(lhs, E::pullback(&a1sq + &P::c2()));
        assert_eq!(z.pow(3), E::new(P::zero(), -&P::c2()));
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(E::one().pushforward(), P::zero());
        assert_eq!(E::z().pushforward(), P::one());
        let x = E::new(P::c2(), P::a1());
        assert_eq!(x.pushforward(), P::a1());
        assert_eq!(x.homogeneity(), Homogeneity::Degree(2));
    }

    /// Coefficients of `1 / (1 + c2)` as a power series: `(-1)^k c2^k`.
    fn segre_by_series_inversion(max: u32) -> Vec<P> {
        // Invert c(V) = 1 + c2 term by term: s_0 = 1, s_d = -sum_{i>=1} c_i s_{d-i}.
        let chern = |i: u32| match i {
            0 => P::one(),
            2 => P::c2(),
            _ => P::zero(),
        };
        let mut s: Vec<P> = vec![P::one()];
        for d in 1..=max {
            let mut acc = P::zero();
            for i in 1..=d {
                acc = &acc - &(&chern(i) * &s[(d - i) as usize]);
            }
            s.push(acc);
        }
        s
    }

    #[test]
    fn pushforward_of_z_powers_is_the_segre_class() {
        let segre = segre_by_series_inversion(6);
        for k in 1..=6u32 {
            assert_eq!(E::z().pow(k).pushforward(), segre[(k - 1) as usize], "k = {k}");
        }
        assert_eq!(segre[2], -&P::c2());
        assert_eq!(segre[4], &P::c2() * &P::c2());
    }

    #[test]
    fn canonical_render() {
        let p = P::from_terms([
            (Monomial::new(9, 0), q(-3)),
            (Monomial::new(1, 4), q(2)),
            (Monomial::new(0, 0), q(1)),
        ]);
        assert_eq!(p.render(), "2*c2^4*a1 - 3*a1^9 + 1");
        assert_eq!(P::zero().render(), "0");
        assert_eq!((-&P::c2()).render(), "-c2");
        let sym = BasePolynomial::<ParamPoly>::term(
            Monomial::new(1, 4),
            ParamPoly::from_i64s(&[5, 0, -7]),
        );
        assert_eq!(sym.render(), "-7*N^2*c2^4*a1 + 5*c2^4*a1");
    }

    fn homogeneous_base(d: u32) -> impl Strategy<Value = P> {
        let mons = Monomial::of_degree(d);
        prop::collection::vec(-5i64..=5, mons.len()).prop_map(move |cs| {
            P::from_terms(mons.iter().zip(cs).map(|(m, c)| (*m, q(c))))
        })
    }

    fn homogeneous_element() -> impl Strategy<Value = E> {
        (1u32..=12).prop_flat_map(|d| {
            (homogeneous_base(d), homogeneous_base(d - 1)).prop_map(|(a, b)| E::new(a, b))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bundle_mul_commutative_associative(
            x in homogeneous_element(),
            y in homogeneous_element(),
            w in homogeneous_element(),
        ) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
        }

        #[test]
        fn projection_formula(p in homogeneous_base(3), x in homogeneous_element()) {
            let lhs = (&E::pullback(p.clone()) * &x).pushforward();
            let rhs = &p * &x.pushforward();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pushforward_drops_degree_by_one(x in homogeneous_element()) {
            if let (Homogeneity::Degree(d), Homogeneity::Degree(e)) =
                (x.homogeneity(), x.pushforward().homogeneity())
            {
                prop_assert_eq!(e + 1, d);
            }
        }
    }
}
