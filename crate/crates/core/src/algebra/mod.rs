//! Exact arithmetic: prime fields, weighted monomials, sparse polynomials and
//! dense matrices over `F_p`.

mod field;
mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use field::PrimeField;
pub(crate) use matrix::Echelon;
pub use matrix::Matrix;
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use ring::{MonomialOrder, Ring};
