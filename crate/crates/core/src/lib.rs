//! Relation type of Jacobian ideals of hypersurface germs.
//!
//! Everything is exact: coefficients live in `Q` or a prime field, ideal
//! identities are decided by reduced Gröbner bases, and membership in the
//! local ring at the origin is reduced to ordinary colon computations.

pub mod coeffs;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod jacobian;
mod modular;
pub mod poly;
pub mod rees;

pub use coeffs::{Field, FieldElement, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use error::{Error, ParseError, Result};
pub use groebner::{buchberger, normal_form_with_certificate, Certificate, GroebnerBasis};
pub use ideal::{Ideal, LocalWitness, Semantics};
pub use jacobian::{
    classify, cross_validate, AnalysisOptions, AnalysisReport, CheckResult, DivisorData,
    KnownBounds, TTable, TTest, Verdict,
};
pub use poly::{Bindings, Monomial, MonomialOrder, PolyRing, Polynomial};
pub use rees::{ReesPresentation, RelationType, TopEquation};
