//! Conditions on Weierstrass data `(A, B)` with `A` a binary form of degree
//! `4N` and `B` of degree `6N`.
//!
//! Forms are stored dehomogenized in the affine coordinate `t`; a form whose
//! polynomial has degree below the form degree vanishes at infinity to the
//! order of the difference. Existence of a common point with prescribed
//! vanishing orders is decided by gcds of derivative chains, so no root is
//! ever computed over an extension of `Q`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{ArithError, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("fundamental invariant must be >= 1, got {0}")]
    InvalidN(i64),
    #[error("{form}: expected {expected} coefficients, got {got}")]
    WrongLength {
        form: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{form}[{index}]: {source}")]
    BadCoefficient {
        form: &'static str,
        index: usize,
        source: ArithError,
    },
    #[error("multiplicity must be >= 1, got {0}")]
    InvalidMultiplicity(u32),
}

/// Weierstrass data over `Q`, coefficients in ascending powers of `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassPair {
    n: u32,
    a: Vec<Rational>,
    b: Vec<Rational>,
}

fn check_n(n: i64) -> Result<u32, WeierstrassError> {
    u32::try_from(n)
        .ok()
        .filter(|&v| v >= 1)
        .ok_or(WeierstrassError::InvalidN(n))
}

impl WeierstrassPair {
    pub fn new(n: i64, a: Vec<Rational>, b: Vec<Rational>) -> Result<Self, WeierstrassError> {
        let n = check_n(n)?;
        let (la, lb) = (4 * n as usize + 1, 6 * n as usize + 1);
        if a.len() != la {
            return Err(WeierstrassError::WrongLength {
                form: "A",
                expected: la,
                got: a.len(),
            });
        }
        if b.len() != lb {
            return Err(WeierstrassError::WrongLength {
                form: "B",
                expected: lb,
                got: b.len(),
            });
        }
        Ok(WeierstrassPair { n, a, b })
    }

    /// Pads the polynomials with zero leading coefficients.
    pub fn from_polys(n: i64, a: &UniPoly, b: &UniPoly) -> Result<Self, WeierstrassError> {
        let nn = check_n(n)? as usize;
        let pad = |p: &UniPoly, len: usize| (0..len.max(p.coeffs().len())).map(|k| p.coeff(k)).collect();
        Self::new(n, pad(a, 4 * nn + 1), pad(b, 6 * nn + 1))
    }

    /// Parses `"p/q"` coefficient strings.
    pub fn from_strings<S: AsRef<str>>(n: i64, a: &[S], b: &[S]) -> Result<Self, WeierstrassError> {
        let parse = |form: &'static str, xs: &[S]| -> Result<Vec<Rational>, WeierstrassError> {
            xs.iter()
                .enumerate()
                .map(|(index, s)| {
                    s.as_ref()
                        .parse::<Rational>()
                        .map_err(|source| WeierstrassError::BadCoefficient { form, index, source })
                })
                .collect()
        };
        Self::new(n, parse("A", a)?, parse("B", b)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a_poly(&self) -> UniPoly {
        UniPoly::new(self.a.clone())
    }

    pub fn b_poly(&self) -> UniPoly {
        UniPoly::new(self.b.clone())
    }

    pub fn a_form_degree(&self) -> u32 {
        4 * self.n
    }

    pub fn b_form_degree(&self) -> u32 {
        6 * self.n
    }

    /// The action `A -> lambda^4 A`, `B -> lambda^6 B`.
    pub fn scaled(&self, lambda: &Rational) -> WeierstrassPair {
        let (l4, l6) = (lambda.pow(4), lambda.pow(6));
        WeierstrassPair {
            n: self.n,
            a: self.a.iter().map(|c| c * &l4).collect(),
            b: self.b.iter().map(|c| c * &l6).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discriminant {
    /// `4 A^3 + 27 B^2` in the affine coordinate.
    pub poly: UniPoly,
    pub form_degree: u32,
    /// `None` when the discriminant vanishes identically.
    pub order_at_infinity: Option<u32>,
}

pub fn discriminant(w: &WeierstrassPair) -> Discriminant {
    let (a, b) = (w.a_poly(), w.b_poly());
    let poly = &a.pow(3).scale(&Rational::from(4)) + &b.pow(2).scale(&Rational::from(27));
    let form_degree = 12 * w.n;
    let order_at_infinity = poly.degree().map(|d| form_degree - d as u32);
    Discriminant {
        poly,
        form_degree,
        order_at_infinity,
    }
}

/// `gcd(P, P', ..., P^(m-1))`, monic: its roots are exactly the points where
/// `P` vanishes to order at least `m`. Zero stays zero.
pub fn multiplicity_locus(p: &UniPoly, m: u32) -> Result<UniPoly, WeierstrassError> {
    if m == 0 {
        return Err(WeierstrassError::InvalidMultiplicity(m));
    }
    let mut g = p.monic();
    let mut d = p.clone();
    for _ in 1..m {
        if g.degree() == Some(0) {
            break;
        }
        d = d.derivative();
        g = g.gcd(&d);
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Valuation {
    Finite(u32),
    /// Known only to meet the threshold that was tested.
    AtLeast(u32),
    /// The form is identically zero.
    Infinite,
}

impl Valuation {
    fn meets(&self, threshold: u32) -> bool {
        match *self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v >= threshold,
            Valuation::Infinite => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Location {
    Infinity,
    Rational { t: Rational },
    /// Roots of a monic factor of positive degree, not split over `Q`.
    Factor { factor: String, degree: usize },
    Everywhere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Discriminant,
    Minimality,
    Stability,
    Semistability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: Condition,
    pub location: Location,
    pub v_a: Valuation,
    pub v_b: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub discriminant_ok: bool,
    pub minimal: bool,
    pub stable: bool,
    pub semistable: bool,
    pub in_delta1: bool,
    pub witnesses: Vec<Witness>,
}

fn valuation_at_infinity(p: &UniPoly, form_degree: u32) -> Valuation {
    match p.degree() {
        None => Valuation::Infinite,
        Some(d) => Valuation::Finite(form_degree - d as u32),
    }
}

fn valuation_at(p: &UniPoly, linear: &UniPoly) -> Valuation {
    match p.multiplicity_of(linear) {
        None => Valuation::Infinite,
        Some(k) => Valuation::Finite(k),
    }
}

/// All witnesses of a point `q` (finite or infinite) with
/// `v_q(A) >= ta` and `v_q(B) >= tb`.
fn common_points(w: &WeierstrassPair, ta: u32, tb: u32, condition: Condition) -> Vec<Witness> {
    let (a, b) = (w.a_poly(), w.b_poly());
    if a.is_zero() && b.is_zero() {
        return vec![Witness {
            condition,
            location: Location::Everywhere,
            v_a: Valuation::Infinite,
            v_b: Valuation::Infinite,
        }];
    }
    let mut out = Vec::new();
    let la = multiplicity_locus(&a, ta).expect("threshold >= 1");
    let lb = multiplicity_locus(&b, tb).expect("threshold >= 1");
    let g = la.gcd(&lb);
    match g.degree() {
        Some(1) => {
            let root = -g.coeff(0);
            out.push(Witness {
                condition,
                location: Location::Rational { t: root },
                v_a: valuation_at(&a, &g),
                v_b: valuation_at(&b, &g),
            });
        }
        Some(d) if d > 1 => {
            let bound = |p: &UniPoly, t: u32| {
                if p.is_zero() {
                    Valuation::Infinite
                } else {
                    Valuation::AtLeast(t)
                }
            };
            out.push(Witness {
                condition,
                location: Location::Factor {
                    factor: g.render("t"),
                    degree: d,
                },
                v_a: bound(&a, ta),
                v_b: bound(&b, tb),
            });
        }
        _ => {}
    }
    let va = valuation_at_infinity(&a, w.a_form_degree());
    let vb = valuation_at_infinity(&b, w.b_form_degree());
    if va.meets(ta) && vb.meets(tb) {
        out.push(Witness {
            condition,
            location: Location::Infinity,
            v_a: va,
            v_b: vb,
        });
    }
    out
}

pub fn check_conditions(w: &WeierstrassPair) -> ConditionReport {
    let n = w.n;
    let mut witnesses = Vec::new();

    let in_delta1 = discriminant(w).poly.is_zero();
    if in_delta1 {
        witnesses.push(Witness {
            condition: Condition::Discriminant,
            location: Location::Everywhere,
            v_a: valuation_at_infinity(&w.a_poly(), w.a_form_degree()),
            v_b: valuation_at_infinity(&w.b_poly(), w.b_form_degree()),
        });
    }

    let non_minimal = common_points(w, 4, 6, Condition::Minimality);
    let unstable = common_points(w, 2 * n, 3 * n, Condition::Stability);
    let not_semistable = common_points(w, 2 * n + 1, 3 * n + 1, Condition::Semistability);

    let report = ConditionReport {
        discriminant_ok: !in_delta1,
        minimal: non_minimal.is_empty(),
        stable: unstable.is_empty(),
        semistable: not_semistable.is_empty(),
        in_delta1,
        witnesses: Vec::new(),
    };
    witnesses.extend(non_minimal);
    witnesses.extend(unstable);
    witnesses.extend(not_semistable);
    ConditionReport { witnesses, ..report }
}

/// For `(A, B) = (a G^2, b G^3)` with `4a^3 + 27b^2 = 0`, recovers `G` up
/// to a scalar as `B / A`. `None` if the discriminant is not identically
/// zero or `A = 0`.
pub fn delta1_root_form(w: &WeierstrassPair) -> Option<UniPoly> {
    if !discriminant(w).poly.is_zero() {
        return None;
    }
    let (a, b) = (w.a_poly(), w.b_poly());
    let (q, r) = b.div_rem(&a).ok()?;
    r.is_zero().then(|| q.monic())
}

/// Codimension of the identically-vanishing-discriminant locus in the
/// space of pairs: `dim(V_4N + V_6N) - dim V_2N = (10N + 2) - (2N + 1)`.
pub fn delta1_codimension(n: i64) -> Result<i64, WeierstrassError> {
    check_n(n)?;
    Ok((10 * n + 2) - (2 * n + 1))
}

/// `t`, for building test data.
pub fn t() -> UniPoly {
    UniPoly::x()
}

/// `t - c`.
pub fn linear_factor(c: &Rational) -> UniPoly {
    UniPoly::new(vec![-c, Rational::one()])
}
