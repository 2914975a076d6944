//! Exact sparse polynomial arithmetic.

pub mod det;
pub mod field;
pub mod groebner;
pub mod localized;
pub mod monomial;
pub mod polynomial;

pub use det::{bareiss_det, cofactor_det, DetRing, PolyRing};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use groebner::{buchberger, normal_form, remainder, CapHit, GroebnerBasis, GroebnerCaps, NormalForm};
pub use localized::{LocalizedElement, LocalizedRecord};
pub use monomial::{Monomial, TermOrder, Variable};
pub use polynomial::{Polynomial, PolynomialRecord};
