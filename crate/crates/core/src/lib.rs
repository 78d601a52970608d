//! Exact intersection theory for the Chow rings of moduli of elliptic
//! surfaces over `P^1`.
//!
//! The ring `A*(E_N) = Q[a1, c2] / I_N` is rebuilt from scratch: Chern
//! classes of principal parts bundles on the universal `P^1`-bundle are
//! pushed forward to produce the two generators of `I_N`
//! ([`relations`]), and the quotient is analysed degree by degree
//! ([`quotient`]). [`weierstrass`] decides the conditions on concrete
//! Weierstrass data and [`kappa`] checks the codimension-one kappa class
//! identities on the moduli of U-polarized K3 surfaces.

pub mod chern;
pub mod chow;
pub mod coeffs;
pub mod kappa;
pub mod linalg;
pub mod quotient;
pub mod relations;
pub mod weierstrass;

pub use chow::{BasePolynomial, BundleElement, Monomial};
pub use coeffs::{ArithError, Coefficient, ParamPoly, Rational, UniPoly};
pub use relations::{NMode, RelationSet};
