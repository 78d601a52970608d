//! Codimension-one kappa classes on the moduli of U-polarized K3 surfaces.
//!
//! `kappa_{i,j,k} = pi_*(sigma^i f^j c2(T_pi)^k)` has codimension
//! `i + j + 2k - 2`. Changing the universal line bundles replaces `sigma`
//! and `f` by `sigma + pi^* l'` and `f + pi^* l`; push-pull turns this into
//! a binomial expansion with coefficients in the formal shift variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::Rational;

/// Formal degree-one classes pulled back from the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShiftVar {
    /// Shift of `f`.
    L,
    /// Shift of `sigma`.
    LPrime,
    /// Extra variables, used to compose shifts.
    Aux(u8),
}

impl fmt::Display for ShiftVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftVar::L => write!(f, "l"),
            ShiftVar::LPrime => write!(f, "l'"),
            ShiftVar::Aux(i) => write!(f, "u{i}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShiftMonomial(BTreeMap<ShiftVar, u32>);

impl ShiftMonomial {
    pub fn one() -> Self {
        ShiftMonomial::default()
    }

    pub fn var(v: ShiftVar) -> Self {
        ShiftMonomial(BTreeMap::from([(v, 1)]))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    fn times(&self, other: &ShiftMonomial) -> ShiftMonomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(*v).or_insert(0) += e;
        }
        ShiftMonomial(out)
    }
}

impl fmt::Display for ShiftMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Polynomial in the shift variables with rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShiftPoly(BTreeMap<ShiftMonomial, Rational>);

impl ShiftPoly {
    pub fn zero() -> Self {
        ShiftPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = ShiftPoly::zero();
        p.add_term(ShiftMonomial::one(), c);
        p
    }

    pub fn one() -> Self {
        ShiftPoly::constant(Rational::one())
    }

    pub fn var(v: ShiftVar) -> Self {
        let mut p = ShiftPoly::zero();
        p.add_term(ShiftMonomial::var(v), Rational::one());
        p
    }

    /// `sum c_v v`, the general degree-one shift.
    pub fn linear(terms: &[(ShiftVar, Rational)]) -> Self {
        let mut p = ShiftPoly::zero();
        for (v, c) in terms {
            p.add_term(ShiftMonomial::var(*v), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: ShiftMonomial, c: Rational) {
        let slot = self.0.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ShiftMonomial, &Rational)> {
        self.0.iter()
    }

    pub fn scale(&self, c: &Rational) -> ShiftPoly {
        let mut out = ShiftPoly::zero();
        for (m, v) in &self.0 {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &ShiftPoly) -> ShiftPoly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &ShiftPoly) -> ShiftPoly {
        let mut out = ShiftPoly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ShiftPoly {
        (0..e).fold(ShiftPoly::one(), |acc, _| acc.mul(self))
    }

    /// Degrees of the monomials present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.0.keys().map(ShiftMonomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl fmt::Display for ShiftPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.0 {
            let neg = c.is_negative();
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = c.abs();
            let body = match (m.degree(), mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => m.to_string(),
                _ => format!("{mag}*{m}"),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KappaSymbol {
    /// Codimension-zero part: the coefficient alone.
    Unit,
    Lambda,
    Kappa { i: u32, j: u32, k: u32 },
}

impl KappaSymbol {
    pub fn codimension(&self) -> i64 {
        match *self {
            KappaSymbol::Unit => 0,
            KappaSymbol::Lambda => 1,
            KappaSymbol::Kappa { i, j, k } => kappa_codimension(i, j, k),
        }
    }
}

pub fn kappa_codimension(i: u32, j: u32, k: u32) -> i64 {
    i64::from(i) + i64::from(j) + 2 * i64::from(k) - 2
}

impl fmt::Display for KappaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaSymbol::Unit => write!(f, "1"),
            KappaSymbol::Lambda => write!(f, "lambda"),
            KappaSymbol::Kappa { i, j, k } => write!(f, "kappa_{{{i},{j},{k}}}"),
        }
    }
}

/// Fiberwise values of the codimension-zero kappa symbols.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberConstants {
    /// `sigma^2` on a fiber.
    pub k200: Rational,
    /// `sigma . f`.
    pub k110: Rational,
    /// `f^2`.
    pub k020: Rational,
    /// Euler characteristic of a K3 surface.
    pub k001: Rational,
}

impl Default for FiberConstants {
    fn default() -> Self {
        FiberConstants {
            k200: Rational::from(-2),
            k110: Rational::from(1),
            k020: Rational::from(0),
            k001: Rational::from(24),
        }
    }
}

impl FiberConstants {
    pub fn value(&self, i: u32, j: u32, k: u32) -> Option<&Rational> {
        match (i, j, k) {
            (2, 0, 0) => Some(&self.k200),
            (1, 1, 0) => Some(&self.k110),
            (0, 2, 0) => Some(&self.k020),
            (0, 0, 1) => Some(&self.k001),
            _ => None,
        }
    }
}

/// Sparse combination of kappa symbols with shift-polynomial coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KappaExpr(BTreeMap<KappaSymbol, ShiftPoly>);

impl KappaExpr {
    pub fn zero() -> Self {
        KappaExpr::default()
    }

    /// `kappa_{i,j,k}`, or zero in negative codimension.
    pub fn kappa(i: u32, j: u32, k: u32) -> Self {
        let mut e = KappaExpr::zero();
        e.add_term(KappaSymbol::Kappa { i, j, k }, ShiftPoly::one());
        e
    }

    pub fn lambda() -> Self {
        let mut e = KappaExpr::zero();
        e.add_term(KappaSymbol::Lambda, ShiftPoly::one());
        e
    }

    pub fn constant(c: Rational) -> Self {
        let mut e = KappaExpr::zero();
        e.add_term(KappaSymbol::Unit, ShiftPoly::constant(c));
        e
    }

    pub fn add_term(&mut self, s: KappaSymbol, c: ShiftPoly) {
        if s.codimension() < 0 || c.is_zero() {
            return;
        }
        let slot = self.0.entry(s).or_default();
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.0.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KappaSymbol, &ShiftPoly)> {
        self.0.iter()
    }

    pub fn coeff(&self, s: &KappaSymbol) -> ShiftPoly {
        self.0.get(s).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> KappaExpr {
        self.times(&ShiftPoly::constant(c.clone()))
    }

    pub fn times(&self, p: &ShiftPoly) -> KappaExpr {
        let mut out = KappaExpr::zero();
        for (s, c) in &self.0 {
            out.add_term(*s, c.mul(p));
        }
        out
    }

    pub fn add(&self, other: &KappaExpr) -> KappaExpr {
        let mut out = self.clone();
        for (s, c) in &other.0 {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &KappaExpr) -> KappaExpr {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn has_shift_variables(&self) -> bool {
        self.0.values().any(|c| c.terms().any(|(m, _)| m.degree() > 0))
    }

    /// Total codimensions (symbol plus shift degree) present, ascending.
    pub fn codimensions(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .0
            .iter()
            .flat_map(|(s, c)| c.degrees().into_iter().map(move |d| s.codimension() + i64::from(d)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True for the zero expression.
    pub fn is_homogeneous_of(&self, codim: i64) -> bool {
        self.codimensions().iter().all(|&c| c == codim)
    }

    /// Replaces codimension-zero kappa symbols by their fiber constants.
    pub fn normalize(&self, constants: &FiberConstants) -> KappaExpr {
        let mut out = KappaExpr::zero();
        for (s, c) in &self.0 {
            match *s {
                KappaSymbol::Kappa { i, j, k } if s.codimension() == 0 => {
                    let v = constants
                        .value(i, j, k)
                        .expect("every codimension-zero symbol has a fiber constant");
                    out.add_term(KappaSymbol::Unit, c.scale(v));
                }
                _ => out.add_term(*s, c.clone()),
            }
        }
        out
    }

    /// Values of the symbols on a test curve, for shift-free expressions.
    pub fn evaluate(&self, data: &TestCurveData) -> Result<Rational, KappaError> {
        let mut acc = Rational::zero();
        for (s, c) in &self.0 {
            if c.terms().any(|(m, _)| m.degree() > 0) {
                return Err(KappaError::ShiftVariablesPresent);
            }
            let scalar = c.terms().next().map(|(_, v)| v.clone()).unwrap_or_default();
            let value = match *s {
                KappaSymbol::Unit => Rational::one(),
                KappaSymbol::Lambda => data.lambda_value.clone(),
                KappaSymbol::Kappa { i, j, k } => data
                    .kappa_values
                    .get(&(i, j, k))
                    .cloned()
                    .ok_or(KappaError::MissingValue { i, j, k })?,
            };
            acc += &scalar * &value;
        }
        Ok(acc)
    }
}

impl fmt::Display for KappaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, c)| match (s, c.0.len()) {
                (KappaSymbol::Unit, _) => format!("{c}"),
                (_, 1) if c.0.values().next().is_some_and(|v| v.is_one()) && c.degrees() == [0] => s.to_string(),
                _ => format!("({c})*{s}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error("no test-curve value for kappa_{{{i},{j},{k}}}")]
    MissingValue { i: u32, j: u32, k: u32 },
    #[error("expression still contains shift variables")]
    ShiftVariablesPresent,
}

fn binomial(n: u32, r: u32) -> Rational {
    let mut acc = Rational::one();
    for t in 0..r {
        acc = &acc * &Rational::new(i64::from(n - t), i64::from(t + 1)).expect("nonzero denominator");
    }
    acc
}

/// General substitution `sigma -> sigma + s`, `f -> f + t` with `s`, `t`
/// of degree one in the shift variables.
pub fn shift_expand_by(
    e: &KappaExpr,
    sigma_shift: &ShiftPoly,
    f_shift: &ShiftPoly,
    constants: &FiberConstants,
) -> KappaExpr {
    let mut out = KappaExpr::zero();
    for (s, c) in e.terms() {
        let KappaSymbol::Kappa { i, j, k } = *s else {
            out.add_term(*s, c.clone());
            continue;
        };
        for a in 0..=i {
            for b in 0..=j {
                let sym = KappaSymbol::Kappa { i: i - a, j: j - b, k };
                if sym.codimension() < 0 {
                    continue;
                }
                let coeff = sigma_shift
                    .pow(a)
                    .mul(&f_shift.pow(b))
                    .scale(&(&binomial(i, a) * &binomial(j, b)))
                    .mul(c);
                out.add_term(sym, coeff);
            }
        }
    }
    out.normalize(constants)
}

/// `sigma -> sigma + l'` and/or `f -> f + l`.
pub fn shift_expand(e: &KappaExpr, shift_sigma: bool, shift_f: bool) -> KappaExpr {
    shift_expand_with(e, shift_sigma, shift_f, &FiberConstants::default())
}

pub fn shift_expand_with(e: &KappaExpr, shift_sigma: bool, shift_f: bool, constants: &FiberConstants) -> KappaExpr {
    let pick = |on: bool, v| if on { ShiftPoly::var(v) } else { ShiftPoly::zero() };
    shift_expand_by(e, &pick(shift_sigma, ShiftVar::LPrime), &pick(shift_f, ShiftVar::L), constants)
}

/// `((i, j, k), (numerator, denominator))`.
pub type CombinationTerm = ((u32, u32, u32), (i64, i64));

/// One of the four codimension-one combinations and its value as a
/// multiple of `lambda`.
#[derive(Debug, Clone, Copy)]
pub struct Combination {
    pub name: &'static str,
    pub terms: &'static [CombinationTerm],
    pub lambda_multiple: (i64, i64),
}

pub const COMBINATIONS: [Combination; 4] = [
    Combination {
        name: "kappa_300 + 1/4 kappa_101",
        terms: &[((3, 0, 0), (1, 1)), ((1, 0, 1), (1, 4))],
        lambda_multiple: (7, 2),
    },
    Combination {
        name: "3 kappa_210 - 1/4 kappa_101 + 1/4 kappa_011",
        terms: &[((2, 1, 0), (3, 1)), ((1, 0, 1), (-1, 4)), ((0, 1, 1), (1, 4))],
        lambda_multiple: (1, 2),
    },
    Combination {
        name: "3 kappa_120 - 1/4 kappa_011",
        terms: &[((1, 2, 0), (3, 1)), ((0, 1, 1), (-1, 4))],
        lambda_multiple: (-3, 1),
    },
    Combination {
        name: "kappa_030",
        terms: &[((0, 3, 0), (1, 1))],
        lambda_multiple: (0, 1),
    },
];

fn ratio((p, q): (i64, i64)) -> Rational {
    Rational::new(p, q).expect("nonzero denominator")
}

impl Combination {
    pub fn expr(&self) -> KappaExpr {
        self.terms.iter().fold(KappaExpr::zero(), |acc, &((i, j, k), c)| {
            acc.add(&KappaExpr::kappa(i, j, k).scale(&ratio(c)))
        })
    }

    pub fn lambda_multiple(&self) -> Rational {
        ratio(self.lambda_multiple)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceCheck {
    pub combination: String,
    pub residual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub checks: Vec<InvarianceCheck>,
}

impl InvarianceReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn verify_invariance() -> InvarianceReport {
    verify_invariance_with(&FiberConstants::default())
}

/// Residual of each combination under both shifts at once.
pub fn verify_invariance_with(constants: &FiberConstants) -> InvarianceReport {
    let checks = COMBINATIONS
        .iter()
        .map(|combo| {
            let e = combo.expr();
            let residual = shift_expand_with(&e, true, true, constants).sub(&e.normalize(constants));
            InvarianceCheck {
                combination: combo.name.to_string(),
                residual: residual.to_string(),
                pass: residual.is_zero(),
            }
        })
        .collect();
    InvarianceReport { checks }
}

/// Intersection numbers of the kappa classes and of `lambda` with a test
/// curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestCurveData {
    #[serde(serialize_with = "serialize_kappa_values")]
    pub kappa_values: BTreeMap<(u32, u32, u32), Rational>,
    pub lambda_value: Rational,
}

fn serialize_kappa_values<S: serde::Serializer>(
    m: &BTreeMap<(u32, u32, u32), Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|((i, j, k), v)| (format!("{i}{j}{k}"), v)))
}

impl TestCurveData {
    /// The STU test curve.
    pub fn stu() -> Self {
        let kappa_values = [
            ((3, 0, 0), 16),
            ((1, 0, 1), -8),
            ((2, 1, 0), -4),
            ((0, 1, 1), 48),
            ((1, 2, 0), 0),
            ((0, 3, 0), 0),
        ]
        .into_iter()
        .map(|(key, v)| (key, Rational::from(v)))
        .collect();
        TestCurveData {
            kappa_values,
            lambda_value: Rational::from(4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn verify_stu_identities(d: &TestCurveData) -> Result<IdentityReport, KappaError> {
    let checks = COMBINATIONS
        .iter()
        .map(|combo| {
            let lhs = combo.expr().evaluate(d)?;
            let rhs = &combo.lambda_multiple() * &d.lambda_value;
            Ok(IdentityCheck {
                identity: format!("{} = {} lambda", combo.name, combo.lambda_multiple()),
                pass: lhs == rhs,
                lhs,
                rhs,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(IdentityReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn lp() -> ShiftPoly {
        ShiftPoly::var(ShiftVar::LPrime)
    }

    fn l() -> ShiftPoly {
        ShiftPoly::var(ShiftVar::L)
    }

    #[test]
    fn negative_codimension_is_never_stored() {
        assert!(KappaExpr::kappa(1, 0, 0).is_zero());
        assert!(KappaExpr::kappa(0, 0, 0).is_zero());
        assert!(!KappaExpr::kappa(2, 0, 0).is_zero());
    }

    #[test]
    fn single_shift_examples() {
        let e = shift_expand(&KappaExpr::kappa(0, 3, 0), false, true);
        assert_eq!(e, KappaExpr::kappa(0, 3, 0));

        let e = shift_expand(&KappaExpr::kappa(2, 1, 0), true, false);
        let want = KappaExpr::kappa(2, 1, 0).add(&KappaExpr::constant(q(1)).times(&lp().scale(&q(2))));
        assert_eq!(e, want);

        let e = shift_expand(&KappaExpr::kappa(3, 0, 0), true, false);
        let want = KappaExpr::kappa(3, 0, 0).add(&KappaExpr::constant(q(1)).times(&lp().scale(&q(-6))));
        assert_eq!(e, want);
        assert_eq!(e.to_string(), "-6*l' + kappa_{3,0,0}");

        let e = shift_expand(&KappaExpr::kappa(1, 0, 1), true, false);
        assert_eq!(e.coeff(&KappaSymbol::Unit), lp().scale(&q(24)));
    }

    #[test]
    fn both_shifts_mix() {
        // kappa_{1,1,1}: sigma f c2 -> cross term l l' kappa_{0,0,1} = 24 l l'.
        let e = shift_expand(&KappaExpr::kappa(1, 1, 1), true, true);
        assert_eq!(e.coeff(&KappaSymbol::Unit), l().mul(&lp()).scale(&q(24)));
        assert_eq!(e.coeff(&KappaSymbol::Kappa { i: 0, j: 1, k: 1 }), lp());
        assert_eq!(e.coeff(&KappaSymbol::Kappa { i: 1, j: 0, k: 1 }), l());
        assert!(e.is_homogeneous_of(2));
    }

    #[test]
    fn four_combinations_are_invariant() {
        let r = verify_invariance();
        assert_eq!(r.checks.len(), 4);
        for c in &r.checks {
            assert!(c.pass, "{}: {}", c.combination, c.residual);
            assert_eq!(c.residual, "0");
        }
    }

    #[test]
    fn first_combination_needs_both_terms() {
        let lone = KappaExpr::kappa(3, 0, 0);
        let residual = shift_expand(&lone, true, true).sub(&lone);
        assert_eq!(residual, KappaExpr::constant(q(1)).times(&lp().scale(&q(-6))));
    }

    #[test]
    fn mutated_euler_characteristic_breaks_invariance() {
        let constants = FiberConstants {
            k001: q(23),
            ..FiberConstants::default()
        };
        let r = verify_invariance_with(&constants);
        assert!(!r.checks[0].pass);
        assert_eq!(r.checks[0].residual, "-1/4*l'");
        assert!(!r.all_pass());
        assert!(r.checks[3].pass);
    }

    #[test]
    fn every_fiber_constant_is_pinned() {
        let base = FiberConstants::default();
        let mutations = [
            FiberConstants { k200: q(-1), ..base.clone() },
            FiberConstants { k110: q(2), ..base.clone() },
            FiberConstants { k020: q(1), ..base.clone() },
            FiberConstants { k001: q(25), ..base.clone() },
        ];
        for m in &mutations {
            assert!(!verify_invariance_with(m).all_pass(), "{m:?}");
        }
    }

    #[test]
    fn stu_identities_hold() {
        let r = verify_stu_identities(&TestCurveData::stu()).unwrap();
        let lhs: Vec<Rational> = r.checks.iter().map(|c| c.lhs.clone()).collect();
        assert_eq!(lhs, vec![q(14), q(2), q(-12), q(0)]);
        assert!(r.all_pass());
    }

    #[test]
    fn every_stu_number_is_pinned() {
        let base = TestCurveData::stu();
        for key in base.kappa_values.keys() {
            let mut d = base.clone();
            let v = d.kappa_values.get_mut(key).unwrap();
            *v = &*v + &q(1);
            assert!(!verify_stu_identities(&d).unwrap().all_pass(), "{key:?}");
        }
        let mut d = base.clone();
        d.lambda_value = q(5);
        assert!(!verify_stu_identities(&d).unwrap().all_pass());
    }

    #[test]
    fn missing_value_is_reported() {
        let mut d = TestCurveData::stu();
        d.kappa_values.remove(&(0, 1, 1));
        assert_eq!(
            verify_stu_identities(&d),
            Err(KappaError::MissingValue { i: 0, j: 1, k: 1 })
        );
    }

    fn symbols_up_to(total: u32) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for k in 0..=total / 2 {
            for i in 0..=total - 2 * k {
                for j in 0..=total - 2 * k - i {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    #[test]
    fn shifts_compose_additively() {
        let c = FiberConstants::default();
        let u = ShiftPoly::var(ShiftVar::Aux(0));
        let zero = ShiftPoly::zero();
        for (i, j, k) in symbols_up_to(4) {
            let e = KappaExpr::kappa(i, j, k);
            let twice = shift_expand_by(&shift_expand_by(&e, &lp(), &zero, &c), &u, &zero, &c);
            let once = shift_expand_by(&e, &lp().add(&u), &zero, &c);
            assert_eq!(twice, once, "sigma shift of ({i},{j},{k})");

            let twice = shift_expand_by(&shift_expand_by(&e, &zero, &l(), &c), &zero, &u, &c);
            let once = shift_expand_by(&e, &zero, &l().add(&u), &c);
            assert_eq!(twice, once, "f shift of ({i},{j},{k})");
        }
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..6).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn arb_expr() -> impl Strategy<Value = KappaExpr> {
        let syms = symbols_up_to(5);
        proptest::collection::vec((0..syms.len(), arb_rational()), 0..6).prop_map(move |ts| {
            ts.into_iter().fold(KappaExpr::zero(), |acc, (idx, c)| {
                let (i, j, k) = syms[idx];
                acc.add(&KappaExpr::kappa(i, j, k).scale(&c))
            })
        })
    }

    fn arb_shift() -> impl Strategy<Value = ShiftPoly> {
        (arb_rational(), arb_rational())
            .prop_map(|(a, b)| ShiftPoly::linear(&[(ShiftVar::L, a), (ShiftVar::LPrime, b)]))
    }

    fn arb_homogeneous(codim: i64) -> impl Strategy<Value = KappaExpr> {
        let syms: Vec<_> = symbols_up_to(7)
            .into_iter()
            .filter(|&(i, j, k)| kappa_codimension(i, j, k) == codim)
            .collect();
        proptest::collection::vec((0..syms.len(), arb_rational()), 0..5).prop_map(move |ts| {
            ts.into_iter().fold(KappaExpr::zero(), |acc, (idx, c)| {
                let (i, j, k) = syms[idx];
                acc.add(&KappaExpr::kappa(i, j, k).scale(&c))
            })
        })
    }

    proptest! {
        #[test]
        fn zero_shift_is_identity(e in arb_expr()) {
            let c = FiberConstants::default();
            let z = ShiftPoly::zero();
            prop_assert_eq!(shift_expand_by(&e, &z, &z, &c), e.normalize(&c));
            prop_assert_eq!(shift_expand(&e, false, false), e.normalize(&c));
        }

        #[test]
        fn expansion_is_linear(e1 in arb_expr(), e2 in arb_expr(), s in arb_shift(), t in arb_shift()) {
            let c = FiberConstants::default();
            let lhs = shift_expand_by(&e1.add(&e2), &s, &t, &c);
            let rhs = shift_expand_by(&e1, &s, &t, &c).add(&shift_expand_by(&e2, &s, &t, &c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homogeneity_is_preserved(
            (codim, e) in (1i64..4).prop_flat_map(|c| (Just(c), arb_homogeneous(c))),
            sigma in any::<bool>(),
            f in any::<bool>(),
        ) {
            prop_assert!(e.is_homogeneous_of(codim));
            prop_assert!(shift_expand(&e, sigma, f).is_homogeneous_of(codim));
        }
    }
}
