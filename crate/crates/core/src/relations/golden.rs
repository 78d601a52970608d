//! Reference relation polynomials, stored as coefficient tables.
//!
//! Transcribed term by term, in their original order, from the two
//! reference pushforward polynomials and the two simplified generators.
//! These are reference data: never regenerate them from this crate's output.

use serde::{Deserialize, Serialize};

use crate::chow::{BasePolynomial, Monomial};
use crate::coeffs::{ParamPoly, Rational};

/// `coeff * N^n_power * a1^a1 * c2^c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTerm {
    pub coeff: i64,
    pub n_power: u32,
    pub a1: u32,
    pub c2: u32,
}

impl GoldenTerm {
    pub const fn new(coeff: i64, n_power: u32, a1: u32, c2: u32) -> Self {
        GoldenTerm {
            coeff,
            n_power,
            a1,
            c2,
        }
    }
}

/// `(sum_k n_coeffs[k] N^k) * a1^a1 * c2^c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplifiedTerm {
    pub a1: u32,
    pub c2: u32,
    pub n_coeffs: &'static [i64],
}

impl SimplifiedTerm {
    pub const fn new(a1: u32, c2: u32, n_coeffs: &'static [i64]) -> Self {
        SimplifiedTerm { a1, c2, n_coeffs }
    }
}

pub fn poly_from_golden(terms: &[GoldenTerm]) -> BasePolynomial<ParamPoly> {
    BasePolynomial::from_terms(terms.iter().map(|t| {
        (
            Monomial::new(t.a1, t.c2),
            ParamPoly::monomial(Rational::from(t.coeff), t.n_power as usize),
        )
    }))
}

pub fn poly_from_simplified(terms: &[SimplifiedTerm]) -> BasePolynomial<ParamPoly> {
    BasePolynomial::from_terms(
        terms
            .iter()
            .map(|t| (Monomial::new(t.a1, t.c2), ParamPoly::from_i64s(t.n_coeffs))),
    )
}

/// Pushforward of the top Chern class.
pub const R1_TERMS: &[GoldenTerm] = &[
    GoldenTerm::new(119439360, 9, 1, 4),
    GoldenTerm::new(-859963392, 8, 1, 4),
    GoldenTerm::new(-1433272320, 7, 3, 3),
    GoldenTerm::new(2598469632, 7, 1, 4),
    GoldenTerm::new(8026324992, 6, 3, 3),
    GoldenTerm::new(3009871872, 5, 5, 2),
    GoldenTerm::new(-4277919744, 6, 1, 4),
    GoldenTerm::new(-18189287424, 5, 3, 3),
    GoldenTerm::new(-12039487488, 4, 5, 2),
    GoldenTerm::new(-1433272320, 3, 7, 1),
    GoldenTerm::new(4164009984, 5, 1, 4),
    GoldenTerm::new(21389598720, 4, 3, 3),
    GoldenTerm::new(18189287424, 3, 5, 2),
    GoldenTerm::new(3439853568, 2, 7, 1),
    GoldenTerm::new(119439360, 1, 9, 0),
    GoldenTerm::new(-2427125760, 4, 1, 4),
    GoldenTerm::new(-13880033280, 3, 3, 3),
    GoldenTerm::new(-12833759232, 2, 5, 2),
    GoldenTerm::new(-2598469632, 1, 7, 1),
    GoldenTerm::new(-95551488, 0, 9, 0),
    GoldenTerm::new(813809664, 3, 1, 4),
    GoldenTerm::new(4854251520, 2, 3, 3),
    GoldenTerm::new(4164009984, 1, 5, 2),
    GoldenTerm::new(611131392, 0, 7, 1),
    GoldenTerm::new(-139567104, 2, 1, 4),
    GoldenTerm::new(-813809664, 1, 3, 3),
    GoldenTerm::new(-485425152, 0, 5, 2),
    GoldenTerm::new(8847360, 1, 1, 4),
    GoldenTerm::new(46522368, 0, 3, 3),
];

/// Pushforward of the top Chern class times `z`.
pub const R2_TERMS: &[GoldenTerm] = &[
    GoldenTerm::new(-11943936, 10, 0, 5),
    GoldenTerm::new(95551488, 9, 0, 5),
    GoldenTerm::new(537477120, 8, 2, 4),
    GoldenTerm::new(-324808704, 8, 0, 5),
    GoldenTerm::new(-3439853568, 7, 2, 4),
    GoldenTerm::new(-2508226560, 6, 4, 3),
    GoldenTerm::new(611131392, 7, 0, 5),
    GoldenTerm::new(9094643712, 6, 2, 4),
    GoldenTerm::new(12039487488, 5, 4, 3),
    GoldenTerm::new(2508226560, 4, 6, 2),
    GoldenTerm::new(-694001664, 6, 0, 5),
    GoldenTerm::new(-12833759232, 5, 2, 4),
    GoldenTerm::new(-22736609280, 4, 4, 3),
    GoldenTerm::new(-8026324992, 3, 6, 2),
    GoldenTerm::new(-537477120, 2, 8, 1),
    GoldenTerm::new(485425152, 5, 0, 5),
    GoldenTerm::new(10410024960, 4, 2, 4),
    GoldenTerm::new(21389598720, 3, 4, 3),
    GoldenTerm::new(9094643712, 2, 6, 2),
    GoldenTerm::new(859963392, 1, 8, 1),
    GoldenTerm::new(11943936, 0, 10, 0),
    GoldenTerm::new(-203452416, 4, 0, 5),
    GoldenTerm::new(-4854251520, 3, 2, 4),
    GoldenTerm::new(-10410024960, 2, 4, 3),
    GoldenTerm::new(-4277919744, 1, 6, 2),
    GoldenTerm::new(-324808704, 0, 8, 1),
    GoldenTerm::new(46522368, 3, 0, 5),
    GoldenTerm::new(1220714496, 2, 2, 4),
    GoldenTerm::new(2427125760, 1, 4, 3),
    GoldenTerm::new(694001664, 0, 6, 2),
    GoldenTerm::new(-4423680, 2, 0, 5),
    GoldenTerm::new(-139567104, 1, 2, 4),
    GoldenTerm::new(-203452416, 0, 4, 3),
    GoldenTerm::new(4423680, 0, 2, 4),
];

/// Simplified generator of degree 9.
pub const P1_TERMS: &[SimplifiedTerm] = &[
    SimplifiedTerm::new(9, 0, &[-1296, 1620]),
    SimplifiedTerm::new(7, 1, &[8289, -35244, 46656, -19440]),
    SimplifiedTerm::new(5, 2, &[-6584, 56478, -174069, 246708, -163296, 40824]),
    SimplifiedTerm::new(3, 3, &[631, -11038, 65840, -188260, 290115, -246708, 108864, -19440]),
    SimplifiedTerm::new(1, 4, &[0, 120, -1893, 11038, -32920, 56478, -58023, 35244, -11664, 1620]),
];

/// Simplified generator of degree 10.
pub const P2_TERMS: &[SimplifiedTerm] = &[
    SimplifiedTerm::new(10, 0, &[324]),
    SimplifiedTerm::new(8, 1, &[-8811, 23328, -14580]),
    SimplifiedTerm::new(6, 2, &[18826, -116046, 246708, -217728, 68040]),
    SimplifiedTerm::new(4, 3, &[-5519, 65840, -282390, 580230, -616770, 326592, -68040]),
    SimplifiedTerm::new(2, 4, &[120, -3786, 33114, -131680, 282390, -348138, 246708, -93312, 14580]),
    SimplifiedTerm::new(0, 5, &[0, 0, -120, 1262, -5519, 13168, -18826, 16578, -8811, 2592, -324]),
];
