//! Exact rational linear algebra and commutative-algebra kernels.

mod groebner;
mod hilbert;
mod ideal;
mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod scalar;
mod univariate;

pub use groebner::{groebner_basis, normal_form};
pub use hilbert::HilbertPolynomial;
pub use ideal::HomogeneousIdeal;
pub use matrix::Matrix;
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use scalar::{format_rational, parse_rational, q, qf, rational_string, rational_vec, Scalar};
pub use univariate::UniPoly;
