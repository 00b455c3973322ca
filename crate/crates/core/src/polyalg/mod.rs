//! Polynomials over a prime field `F_p`, maximal minors of polynomial
//! matrices, and Gröbner bases under degree reverse lexicographic order.

mod field;
mod groebner;
mod minors;
mod monomial;
mod poly;

pub(crate) use field::inv as inverse;
pub use field::{check_modulus, is_prime, DEFAULT_PRIME};
pub use groebner::{groebner_basis, normal_form, Ideal};
pub use minors::{maximal_minors, PolyMatrix};
pub use monomial::{monomials_of_degree, Monomial, MAX_VARS};
pub use poly::{Homogeneity, Poly};
