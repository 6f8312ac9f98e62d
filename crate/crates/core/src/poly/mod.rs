//! Prime fields, sparse multivariate polynomials and monomial orders.

mod field;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use field::PrimeField;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, render};
pub use polynomial::Polynomial;
pub use ring::{same_ring, Ring, RingSpec, DEFAULT_MAX_EXPONENT};

pub(crate) use polynomial::{add_scaled, is_power_of, Term};
