//! The two generators of the relation ideal `I_N`.
//!
//! Pairs `(A, B)` with `v_q(A) >= 4` and `v_q(B) >= 6` at some point `q` are
//! cut out, on `P(V)`, by the vanishing of a section of
//! `P^3(L^4) + P^5(L^6)`. Pushing forward its top Chern class, alone and
//! times `z`, gives the two generators: `r1` in degree 9 and `r2` in
//! degree 10.

pub mod golden;

use std::fmt;

use log::warn;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chern::{principal_parts_factors_with, Conventions};
use crate::chow::{BasePolynomial, BundleElement, Monomial};
use crate::coeffs::{Coefficient, ParamPoly, Rational};
use crate::linalg::rref;
use crate::quotient::degree_span_rows;

pub use golden::{GoldenTerm, SimplifiedTerm};

pub const R1_DEGREE: u32 = 9;
pub const R2_DEGREE: u32 = 10;

/// Default window for [`ideal_equal`]; both quotients vanish above 16.
pub const DEFAULT_MAX_DEGREE: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "n")]
pub enum NMode {
    Symbolic,
    Integer(i64),
}

impl fmt::Display for NMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NMode::Symbolic => f.write_str("symbolic"),
            NMode::Integer(n) => write!(f, "N = {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("relation sets are specialized differently ({0} vs {1})")]
    ModeMismatch(NMode, NMode),
    #[error("relation sets must be specialized to an integer N")]
    NotSpecialized,
    #[error("generator {name} is not homogeneous of degree {degree}")]
    Inhomogeneous { name: &'static str, degree: u32 },
}

#[derive(Clone, PartialEq)]
pub struct RelationSet<C> {
    pub r1: BasePolynomial<C>,
    pub r2: BasePolynomial<C>,
    pub n_mode: NMode,
}

impl<C: Coefficient> RelationSet<C> {
    pub fn new(r1: BasePolynomial<C>, r2: BasePolynomial<C>, n_mode: NMode) -> Self {
        RelationSet { r1, r2, n_mode }
    }

    pub fn generators(&self) -> [&BasePolynomial<C>; 2] {
        [&self.r1, &self.r2]
    }

    pub fn check_homogeneous(&self) -> Result<(), RelationError> {
        if !self.r1.is_homogeneous_of(R1_DEGREE) {
            return Err(RelationError::Inhomogeneous {
                name: "r1",
                degree: R1_DEGREE,
            });
        }
        if !self.r2.is_homogeneous_of(R2_DEGREE) {
            return Err(RelationError::Inhomogeneous {
                name: "r2",
                degree: R2_DEGREE,
            });
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for RelationSet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelationSet")
            .field("r1", &self.r1)
            .field("r2", &self.r2)
            .field("n_mode", &self.n_mode)
            .finish()
    }
}

impl RelationSet<ParamPoly> {
    pub fn specialize(&self, n: i64) -> RelationSet<Rational> {
        RelationSet::new(self.r1.specialize(n), self.r2.specialize(n), NMode::Integer(n))
    }
}

/// The bundle `P^3(L^4) + P^5(L^6)` on `P(V)` whose top Chern class cuts
/// out the high-multiplicity locus.
pub fn excision_top_chern<C: Coefficient>(n: &C, conventions: Conventions) -> BundleElement<C> {
    let p3 = principal_parts_factors_with(3, 4, n, conventions).expect("valid order and power");
    let p5 = principal_parts_factors_with(5, 6, n, conventions).expect("valid order and power");
    p3.concat(&p5).top_chern()
}

pub fn derive_relations_with<C: Coefficient>(
    n: &C,
    n_mode: NMode,
    conventions: Conventions,
) -> RelationSet<C> {
    let top = excision_top_chern(n, conventions);
    let r1 = top.pushforward();
    let r2 = (&top * &BundleElement::z()).pushforward();
    RelationSet::new(r1, r2, n_mode)
}

pub fn derive_relations_symbolic() -> RelationSet<ParamPoly> {
    derive_relations_with(&ParamPoly::x(), NMode::Symbolic, Conventions::default())
}

/// Relations with `N` specialized to `n`. Values below 2 are computed but
/// have no moduli interpretation.
pub fn derive_relations_at(n: i64) -> RelationSet<Rational> {
    if n < 2 {
        warn!("N = {n} is below 2; the relations have no moduli interpretation");
    }
    derive_relations_with(&Rational::from(n), NMode::Integer(n), Conventions::default())
}

/// Derives the relations for every `n`, in parallel, returned in input order.
pub fn derive_relations_sweep(ns: &[i64]) -> Vec<RelationSet<Rational>> {
    ns.par_iter().map(|&n| derive_relations_at(n)).collect()
}

/// The simplified generators `p1, p2` as reference data.
pub fn simplified_generators() -> RelationSet<ParamPoly> {
    RelationSet::new(
        golden::poly_from_simplified(golden::P1_TERMS),
        golden::poly_from_simplified(golden::P2_TERMS),
        NMode::Symbolic,
    )
}

/// Reference tables for the two pushforwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GoldenTables {
    pub r1: Vec<GoldenTerm>,
    pub r2: Vec<GoldenTerm>,
}

impl Default for GoldenTables {
    fn default() -> Self {
        GoldenTables {
            r1: golden::R1_TERMS.to_vec(),
            r2: golden::R2_TERMS.to_vec(),
        }
    }
}

impl GoldenTables {
    pub fn relation_set(&self) -> RelationSet<ParamPoly> {
        RelationSet::new(
            golden::poly_from_golden(&self.r1),
            golden::poly_from_golden(&self.r2),
            NMode::Symbolic,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub monomial: Monomial,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorComparison {
    pub generator: &'static str,
    /// Number of `N^k a1^i c2^j` terms in the reference table.
    pub reference_terms: usize,
    pub mismatches: Vec<Mismatch>,
}

impl GeneratorComparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenReport {
    pub generators: Vec<GeneratorComparison>,
}

impl GoldenReport {
    pub fn agrees(&self) -> bool {
        self.generators.iter().all(GeneratorComparison::agrees)
    }

    pub fn first_mismatch(&self) -> Option<(&'static str, &Mismatch)> {
        self.generators
            .iter()
            .find_map(|g| g.mismatches.first().map(|m| (g.generator, m)))
    }
}

fn compare_poly(
    name: &'static str,
    got: &BasePolynomial<ParamPoly>,
    reference: &[GoldenTerm],
) -> GeneratorComparison {
    let expected = golden::poly_from_golden(reference);
    let mut monomials: Vec<Monomial> = expected
        .terms()
        .map(|(m, _)| *m)
        .chain(got.terms().map(|(m, _)| *m))
        .collect();
    monomials.sort_by_key(|m| std::cmp::Reverse((m.c2, m.a1)));
    monomials.dedup();
    let mismatches = monomials
        .into_iter()
        .filter_map(|m| {
            let (e, g) = (expected.coeff(&m), got.coeff(&m));
            (e != g).then(|| Mismatch {
                monomial: m,
                expected: e.to_string(),
                got: g.to_string(),
            })
        })
        .collect();
    GeneratorComparison {
        generator: name,
        reference_terms: reference.len(),
        mismatches,
    }
}

/// Compares symbolic relations coefficient by coefficient against the
/// embedded reference tables.
pub fn golden_compare(r: &RelationSet<ParamPoly>) -> GoldenReport {
    golden_compare_against(r, &GoldenTables::default())
}

pub fn golden_compare_against(r: &RelationSet<ParamPoly>, tables: &GoldenTables) -> GoldenReport {
    GoldenReport {
        generators: vec![
            compare_poly("r1", &r.r1, &tables.r1),
            compare_poly("r2", &r.r2, &tables.r2),
        ],
    }
}

/// `true` iff the two generating sets span the same subspace in every
/// degree up to `max_degree`.
pub fn ideal_equal(
    ra: &RelationSet<Rational>,
    rb: &RelationSet<Rational>,
    max_degree: u32,
) -> Result<bool, RelationError> {
    if ra.n_mode != rb.n_mode {
        return Err(RelationError::ModeMismatch(ra.n_mode, rb.n_mode));
    }
    if ra.n_mode == NMode::Symbolic {
        return Err(RelationError::NotSpecialized);
    }
    ra.check_homogeneous()?;
    rb.check_homogeneous()?;
    Ok(spans_agree(&ra.generators(), &rb.generators(), max_degree))
}

/// Degree-by-degree comparison of the ideals generated by two lists of
/// homogeneous polynomials.
pub fn spans_agree(
    a: &[&BasePolynomial<Rational>],
    b: &[&BasePolynomial<Rational>],
    max_degree: u32,
) -> bool {
    (0..=max_degree).into_par_iter().all(|d| {
        let order = Monomial::of_degree(d);
        let ea = rref(degree_span_rows(a, d, &order), order.len());
        let eb = rref(degree_span_rows(b, d, &order), order.len());
        ea == eb
    })
}
