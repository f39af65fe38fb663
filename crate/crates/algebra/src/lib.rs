//! Exact polynomial algebra over ℚ and prime fields: Gröbner bases,
//! elimination, saturation, Hilbert invariants, dense linear algebra and
//! absolute factor counting for plane curves.

pub mod bivariate;
pub mod budget;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod univariate;
pub mod zerodim;

pub use bivariate::{absolute_factor_count, absolute_factor_degrees, gcd2, squarefree_part};
pub use budget::Budget;
pub use error::{AlgebraError, BudgetKind, Result};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
pub use groebner::{groebner_basis, GroebnerBasis};
pub use hilbert::{hilbert_invariants, HilbertInvariants};
pub use ideal::{eliminate, intersect, saturate, saturate_by_element, saturate_by_variable, saturate_irrelevant, Ideal};
pub use linalg::Matrix;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{PolyRing, Ring};
pub use univariate::UniPoly;
