//! Graded pieces of `Q[a1, c2] / (r1, r2)` by exact per-degree linear algebra.
//!
//! In degree `d` the ideal is spanned by the monomial multiples `m * r` of
//! each generator with `deg(m * r) = d`. Row-reducing those multiples in the
//! monomial coordinates gives the dimension of the quotient, a basis of it
//! (the non-pivot monomials), and a normal form for any degree-`d` class.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chow::{BasePolynomial, Homogeneity, Monomial};
use crate::coeffs::Rational;
use crate::linalg::{rank, rref, Rref};
use crate::relations::RelationSet;

/// Top degree of the quotient for every `N >= 2`.
pub const SOCLE_DEGREE: u32 = 16;

/// Dimensions of `A^0, ..., A^16`, independent of `N`.
pub const EXPECTED_POINCARE: [usize; 17] = [1, 1, 2, 2, 3, 3, 4, 4, 5, 4, 4, 3, 3, 2, 2, 1, 1];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("the quotient is the zero ring")]
    ZeroRing,
    #[error("top graded piece in degree {degree} has dimension {dim}, expected 1")]
    SocleDimension { degree: u32, dim: usize },
}

/// Rows `m * g` for every generator `g` and monomial `m` with
/// `deg(m * g) = d`, written in the coordinates given by `order`.
pub fn degree_span_rows(
    gens: &[&BasePolynomial<Rational>],
    d: u32,
    order: &[Monomial],
) -> Vec<Vec<Rational>> {
    let index: HashMap<Monomial, usize> = order.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Homogeneity::Degree(dg) = g.homogeneity() else {
            continue;
        };
        if dg > d {
            continue;
        }
        for m in Monomial::of_degree(d - dg) {
            let mut row = vec![Rational::zero(); order.len()];
            for (gm, c) in g.terms() {
                row[index[&gm.times(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// One graded piece of the quotient.
#[derive(Debug, Clone)]
pub struct DegreeSlice {
    pub degree: u32,
    pub monomial_basis: Vec<Monomial>,
    pub relation_subspace: Rref,
    pub quotient_dim: usize,
}

impl DegreeSlice {
    pub fn compute(gens: &[&BasePolynomial<Rational>], degree: u32) -> Self {
        Self::compute_with_order(gens, degree, Monomial::of_degree(degree))
    }

    /// `order` must be a permutation of the degree-`degree` monomials.
    pub fn compute_with_order(
        gens: &[&BasePolynomial<Rational>],
        degree: u32,
        order: Vec<Monomial>,
    ) -> Self {
        let rows = degree_span_rows(gens, degree, &order);
        let relation_subspace = rref(rows, order.len());
        let quotient_dim = order.len() - relation_subspace.rank();
        DegreeSlice {
            degree,
            monomial_basis: order,
            relation_subspace,
            quotient_dim,
        }
    }

    /// Monomials whose classes form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<Monomial> {
        self.relation_subspace
            .non_pivots()
            .into_iter()
            .map(|c| self.monomial_basis[c])
            .collect()
    }

    /// Coordinates of a degree-`degree` class in the quotient basis.
    pub fn normal_form(&self, p: &BasePolynomial<Rational>) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.monomial_basis.len()];
        for (i, m) in self.monomial_basis.iter().enumerate() {
            v[i] = p.coeff(m);
        }
        let reduced = self.relation_subspace.reduce(&v);
        self.relation_subspace
            .non_pivots()
            .into_iter()
            .map(|c| reduced[c].clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub dims: Vec<usize>,
}

impl HilbertData {
    pub fn new(dims: Vec<usize>) -> Self {
        HilbertData { dims }
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }
}

pub fn hilbert_function(r: &RelationSet<Rational>, max_degree: u32) -> HilbertData {
    hilbert_function_of(&r.generators(), max_degree)
}

pub fn hilbert_function_of(gens: &[&BasePolynomial<Rational>], max_degree: u32) -> HilbertData {
    let dims = (0..=max_degree)
        .into_par_iter()
        .map(|d| DegreeSlice::compute(gens, d).quotient_dim)
        .collect();
    HilbertData { dims }
}

/// Largest degree with a nonzero graded piece.
pub fn socle_degree(h: &HilbertData) -> Result<u32, QuotientError> {
    h.dims
        .iter()
        .rposition(|&d| d > 0)
        .map(|d| d as u32)
        .ok_or(QuotientError::ZeroRing)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubvarietyBound {
    pub dimension: u32,
    /// The last computed degree is still nonzero, so the true bound may be
    /// larger than the window.
    pub unbounded_in_window: bool,
}

/// Largest `d` for which a `d`-fold product of a class can survive in the
/// quotient.
pub fn complete_subvariety_bound(h: &HilbertData) -> Result<SubvarietyBound, QuotientError> {
    let dimension = socle_degree(h)?;
    Ok(SubvarietyBound {
        dimension,
        unbounded_in_window: dimension as usize == h.max_degree(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingEntry {
    pub degree: u32,
    pub dim: usize,
    pub dual_dim: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub socle_degree: u32,
    pub socle_generator: Monomial,
    pub per_degree: Vec<PairingEntry>,
    pub verdict: bool,
}

impl PairingReport {
    pub fn ranks(&self) -> Vec<usize> {
        self.per_degree.iter().map(|e| e.rank).collect()
    }
}

/// Checks that `A^i x A^{16-i} -> A^16` is perfect for every `i`.
pub fn gorenstein_check(r: &RelationSet<Rational>) -> Result<PairingReport, QuotientError> {
    pairing_report(&r.generators(), SOCLE_DEGREE, Monomial::of_degree)
}

/// Pairing into the top degree `socle`, with the monomial order of each
/// degree supplied by `order`.
pub fn pairing_report<F>(
    gens: &[&BasePolynomial<Rational>],
    socle: u32,
    order: F,
) -> Result<PairingReport, QuotientError>
where
    F: Fn(u32) -> Vec<Monomial> + Sync,
{
    let slices: Vec<DegreeSlice> = (0..=socle)
        .into_par_iter()
        .map(|d| DegreeSlice::compute_with_order(gens, d, order(d)))
        .collect();
    let top = &slices[socle as usize];
    if top.quotient_dim != 1 {
        return Err(QuotientError::SocleDimension {
            degree: socle,
            dim: top.quotient_dim,
        });
    }
    let socle_generator = top.quotient_basis()[0];
    // The single surviving coordinate; the socle generator itself reads 1.
    let socle_coordinate = |m: Monomial| -> Rational {
        top.normal_form(&BasePolynomial::term(m, Rational::from(1)))[0].clone()
    };

    let per_degree: Vec<PairingEntry> = (0..=socle)
        .into_par_iter()
        .map(|i| {
            let lower = slices[i as usize].quotient_basis();
            let upper = slices[(socle - i) as usize].quotient_basis();
            let matrix: Vec<Vec<Rational>> = lower
                .iter()
                .map(|p| upper.iter().map(|q| socle_coordinate(p.times(q))).collect())
                .collect();
            PairingEntry {
                degree: i,
                dim: lower.len(),
                dual_dim: upper.len(),
                rank: rank(matrix, upper.len()),
            }
        })
        .collect();

    let verdict = per_degree
        .iter()
        .all(|e| e.dim == e.dual_dim && e.rank == e.dim);
    Ok(PairingReport {
        socle_degree: socle,
        socle_generator,
        per_degree,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{derive_relations_at, NMode};

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    /// Power series of (1 - t^9)(1 - t^10) / ((1 - t)(1 - t^2)) up to t^max.
    fn complete_intersection_series(max: usize) -> Vec<i64> {
        let mut num = vec![0i64; max + 1];
        num[0] = 1;
        for deg in [9usize, 10] {
            for k in (deg..=max).rev() {
                num[k] -= num[k - deg];
            }
        }
        // Divide by (1 - t) and (1 - t^2): prefix sums with stride 1 and 2.
        for stride in [1usize, 2] {
            for k in stride..=max {
                num[k] += num[k - stride];
            }
        }
        num
    }

    #[test]
    fn hilbert_function_n2() {
        let h = hilbert_function(&derive_relations_at(2), 20);
        let mut want = EXPECTED_POINCARE.to_vec();
        want.extend([0; 4]);
        assert_eq!(h.dims, want);
        let series: Vec<usize> = complete_intersection_series(20)
            .into_iter()
            .map(|x| x as usize)
            .collect();
        assert_eq!(h.dims, series);
        assert_eq!(socle_degree(&h), Ok(16));
    }

    #[test]
    fn free_ring_counts_monomials() {
        let zero = BasePolynomial::<Rational>::zero();
        let h = hilbert_function_of(&[&zero, &zero], 6);
        assert_eq!(h.dims, vec![1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(socle_degree(&h), Ok(6));
        let b = complete_subvariety_bound(&h).unwrap();
        assert_eq!(b.dimension, 6);
        assert!(b.unbounded_in_window);
    }

    #[test]
    fn socle_edge_cases() {
        assert_eq!(socle_degree(&HilbertData::new(vec![1])), Ok(0));
        assert_eq!(
            complete_subvariety_bound(&HilbertData::new(vec![1])).map(|b| b.dimension),
            Ok(0)
        );
        assert_eq!(
            socle_degree(&HilbertData::new(vec![0, 0])),
            Err(QuotientError::ZeroRing)
        );
        let mut dims = EXPECTED_POINCARE.to_vec();
        dims.extend([0; 4]);
        let b = complete_subvariety_bound(&HilbertData::new(dims)).unwrap();
        assert_eq!(b.dimension, 16);
        assert!(!b.unbounded_in_window);
    }

    /// `Q[x, y]` with `deg x = 1`, `deg y = 2`, modulo `(x^3, y^2)`.
    ///
    /// Surviving monomials by hand: 1 | x | x^2, y | xy | x^2 y. So the
    /// dimensions are 1, 1, 2, 1, 1 and the socle is x^2 y in degree 4.
    #[test]
    fn small_complete_intersection() {
        let x3 = BasePolynomial::term(Monomial::new(3, 0), q(1));
        let y2 = BasePolynomial::term(Monomial::new(0, 2), q(1));
        let h = hilbert_function_of(&[&x3, &y2], 8);
        assert_eq!(h.dims, vec![1, 1, 2, 1, 1, 0, 0, 0, 0]);
        assert_eq!(socle_degree(&h), Ok(4));
        let report = pairing_report(&[&x3, &y2], 4, Monomial::of_degree).unwrap();
        assert!(report.verdict);
        assert_eq!(report.socle_generator, Monomial::new(2, 1));
        assert_eq!(report.ranks(), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn non_gorenstein_quotient_is_rejected() {
        // (x^2, x y, y^2): dims 1, 1, 1 and a 1-dimensional top in degree 2
        // spanned by y, but x * x = 0 so the degree-1 pairing is degenerate.
        let gens = [
            BasePolynomial::term(Monomial::new(2, 0), q(1)),
            BasePolynomial::term(Monomial::new(1, 1), q(1)),
            BasePolynomial::term(Monomial::new(0, 2), q(1)),
        ];
        let refs: Vec<_> = gens.iter().collect();
        let report = pairing_report(&refs, 2, Monomial::of_degree).unwrap();
        assert!(!report.verdict);
        assert_eq!(report.per_degree[1].rank, 0);
        assert_eq!(
            pairing_report(&refs, 3, Monomial::of_degree),
            Err(QuotientError::SocleDimension { degree: 3, dim: 0 })
        );
    }

    #[test]
    fn gorenstein_n2_and_n3() {
        for n in [2, 3] {
            let r = derive_relations_at(n);
            assert_eq!(r.n_mode, NMode::Integer(n));
            let report = gorenstein_check(&r).unwrap();
            assert!(report.verdict, "n = {n}");
            assert_eq!(report.ranks(), EXPECTED_POINCARE.to_vec());
            assert!(report.per_degree[0].rank == 1);
        }
    }

    #[test]
    fn verdict_independent_of_monomial_order() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let r = derive_relations_at(4);
        let baseline = gorenstein_check(&r).unwrap();
        for seed in 0..4u64 {
            let shuffled = |d: u32| {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed * 1000 + d as u64);
                let mut order = Monomial::of_degree(d);
                order.shuffle(&mut rng);
                order
            };
            let report = pairing_report(&r.generators(), SOCLE_DEGREE, shuffled).unwrap();
            assert!(report.verdict);
            assert_eq!(report.ranks(), baseline.ranks());
        }
    }

    #[test]
    fn normal_form_is_zero_on_relations() {
        let r = derive_relations_at(3);
        let slice = DegreeSlice::compute(&r.generators(), 11);
        let a1r2 = &r.r2 * &BasePolynomial::a1();
        assert!(slice.normal_form(&a1r2).iter().all(Zero::is_zero));
        assert_eq!(slice.quotient_dim, 3);
        assert_eq!(slice.quotient_basis().len(), 3);
    }
}
